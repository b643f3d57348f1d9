#include "sftlab/classify.hpp"

#include <algorithm>

#include "sftlab/error.hpp"

namespace sftlab {

namespace {

std::pair<Rational, Rational> radius_bounds(const intlat::Matrix& A) {
  const std::size_t n = A.rows();
  // (I + A)^(n-1) is positive for irreducible A; further powers of A tighten
  // the Collatz-Wielandt ratios.
  std::vector<Integer> v(n, Integer(1));
  const intlat::Matrix shifted = A + intlat::Matrix::identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) v = shifted * std::span<const Integer>(v);
  for (int i = 0; i < 24; ++i) v = A * std::span<const Integer>(v);
  const std::vector<Integer> av = A * std::span<const Integer>(v);
  Rational lo = Rational(av[0], v[0]);
  Rational hi = lo;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r(av[i], v[i]);
    r.canonicalize();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace

InvariantReport invariants(const PresentationPtr& p) {
  const intlat::Matrix& A = p->adjacency();
  const std::size_t n = A.rows();
  const intlat::Matrix M = intlat::Matrix::identity(n) - A;
  InvariantReport r;
  r.bf_group = intlat::cokernel(M);
  const std::vector<Integer> ones(n, Integer(1));
  r.k0_pointed = intlat::pointed_cokernel(M.transpose(), ones);
  r.det = M.determinant();
  r.det_sign = sgn(r.det);
  if ((r.det_sign == 0) != (r.bf_group.free_rank > 0))
    throw Error(Errc::InvalidResult, "determinant and Bowen-Franks rank disagree");
  std::tie(r.radius_lower, r.radius_upper) = radius_bounds(A);
  return r;
}

FlowVerdict flow_equivalent(const PresentationPtr& a, const PresentationPtr& b) {
  FlowVerdict v{false, invariants(a), invariants(b)};
  v.equivalent = v.a.bf_group == v.b.bf_group && v.a.det_sign == v.b.det_sign;
  return v;
}

CoeVerdict coe_verdict(const PresentationPtr& a, const PresentationPtr& b) {
  CoeVerdict v;
  v.a = invariants(a);
  v.b = invariants(b);
  v.det_signs_equal = v.a.det_sign == v.b.det_sign;
  v.pointed = intlat::pointed_iso(v.a.k0_pointed, v.b.k0_pointed);
  if (v.pointed.verdict == intlat::Verdict::yes &&
      !intlat::verify_pointed_iso(v.a.k0_pointed, v.b.k0_pointed, *v.pointed.isomorphism))
    throw Error(Errc::InvalidResult, "pointed isomorphism failed verification");
  if (!v.det_signs_equal)
    v.verdict = intlat::Verdict::no;
  else
    v.verdict = v.pointed.verdict;
  return v;
}

ConsistencyReport consistency_check(const PresentationPtr& a, const PresentationPtr& b, const Transducer* witness,
                                    const OrbitData* data) {
  ConsistencyReport r;
  r.coe = coe_verdict(a, b);
  if (!witness) return r;
  if (!data) throw Error(Errc::InvalidArgument, "a witness needs orbit data");
  require_same(a, witness->domain(), "witness domain");
  require_same(b, witness->codomain(), "witness codomain");
  r.orbit_check = verify_orbit_relation(*witness, *data);
  if (!r.orbit_check->holds) throw Error(Errc::InvalidArgument, "the witness does not satisfy its orbit relation");
  r.witness_checked = true;
  StrongCoe s = is_strong_coe(*witness, *data);
  r.image_of_one = std::move(s.image_of_one);
  r.strong = s.strong;
  if (r.coe.verdict == intlat::Verdict::no)
    throw Error(Errc::ContradictionDetected, "a verified orbit equivalence contradicts the invariant verdict");
  return r;
}

}  // namespace sftlab
