#include "sftlab/intlat.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sftlab/error.hpp"

namespace sftlab::intlat {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(Errc::InvalidArgument, "ragged matrix rows");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(Errc::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error(Errc::InvalidArgument, "matrix shape mismatch in product");
  Matrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
    }
  return p;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(Errc::InvalidArgument, "matrix shape mismatch in sum");
  Matrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + other.data_[i];
  return s;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(Errc::InvalidArgument, "matrix shape mismatch in difference");
  Matrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - other.data_[i];
  return s;
}

std::vector<Integer> Matrix::operator*(std::span<const Integer> v) const {
  if (v.size() != cols_) throw Error(Errc::InvalidArgument, "vector length mismatch");
  std::vector<Integer> out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

Integer Matrix::determinant() const {
  if (!is_square()) throw Error(Errc::NotSquare, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  Matrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Matrix Matrix::unimodular_inverse() const {
  const Integer det = determinant();
  if (det != 1 && det != -1) throw Error(Errc::InvalidArgument, "matrix is not unimodular");
  const std::size_t n = rows_;
  std::vector<Rational> aug(n * 2 * n);
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return aug[i * 2 * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = Rational((*this)(i, j));
    at(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (at(p, c) == 0) ++p;
    if (p != c)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(p, j), at(c, j));
    const Rational inv = 1 / at(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) at(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || at(i, c) == 0) continue;
      const Rational f = at(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) at(i, j) -= f * at(c, j);
    }
  }
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = at(i, n + j);
      assert(v.get_den() == 1);
      inv(i, j) = v.get_num();
    }
  return inv;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void Matrix::add_row(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void Matrix::add_col(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void Matrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

bool Matrix::is_nonnegative() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v >= 0; });
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  return os;
}

std::string to_inline_string(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << " / ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

namespace {

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

int cmp_abs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

bool divides(const Integer& d, const Integer& x) {
  if (d == 0) return x == 0;
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace

SmithDecomposition smith(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithDecomposition s{Matrix::identity(rows), m, Matrix::identity(cols)};
  Matrix& d = s.D;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    bool done = false;
    while (!done) {
      // Smallest nonzero |entry| in the active block, first in row-major order.
      std::size_t pr = rows;
      std::size_t pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          if (pr == rows || cmp_abs(d(i, j), d(pr, pc)) < 0) {
            pr = i;
            pc = j;
          }
        }
      if (pr == rows) {
        if (!verify_smith(m, s))
          throw Error(Errc::InvalidResult, "Smith decomposition failed verification");
        return s;
      }
      d.swap_rows(t, pr);
      s.U.swap_rows(t, pr);
      d.swap_cols(t, pc);
      s.V.swap_cols(t, pc);

      const Integer pivot = d(t, t);
      bool remainder = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = tdiv(d(i, t), pivot);
        d.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (d(i, t) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = tdiv(d(t, j), pivot);
        d.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (d(t, j) != 0) remainder = true;
      }
      if (remainder) continue;

      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(pivot, d(i, j))) {
            bad = i;
            break;
          }
      if (bad != rows) {
        d.add_row(t, bad, Integer(1));
        s.U.add_row(t, bad, Integer(1));
        continue;
      }
      if (pivot < 0) {
        d.negate_row(t);
        s.U.negate_row(t);
      }
      done = true;
    }
  }
  if (!verify_smith(m, s)) throw Error(Errc::InvalidResult, "Smith decomposition failed verification");
  return s;
}

bool verify_smith(const Matrix& m, const SmithDecomposition& s) {
  if (s.U.rows() != m.rows() || s.V.rows() != m.cols()) return false;
  if (!(s.U * m * s.V == s.D)) return false;
  const Integer du = s.U.determinant();
  const Integer dv = s.V.determinant();
  if ((du != 1 && du != -1) || (dv != 1 && dv != -1)) return false;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) return false;
  const auto diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if (i + 1 < diag.size() && !divides(diag[i], diag[i + 1])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hermite normal form

HermiteDecomposition hermite(const Matrix& m) {
  HermiteDecomposition h{Matrix::identity(m.rows()), m, {}};
  Matrix& a = h.H;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    while (true) {
      std::size_t p = a.rows();
      for (std::size_t i = row; i < a.rows(); ++i)
        if (a(i, col) != 0 && (p == a.rows() || cmp_abs(a(i, col), a(p, col)) < 0)) p = i;
      if (p == a.rows()) break;
      a.swap_rows(row, p);
      h.U.swap_rows(row, p);
      bool clean = true;
      for (std::size_t i = row + 1; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        const Integer q = tdiv(a(i, col), a(row, col));
        a.add_row(i, row, -q);
        h.U.add_row(i, row, -q);
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) {
      a.negate_row(row);
      h.U.negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      const Integer q = fdiv(a(i, col), a(row, col));
      a.add_row(i, row, -q);
      h.U.add_row(i, row, -q);
    }
    h.pivot_cols.push_back(col);
    ++row;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  if (free_rank > 0) {
    if (!first) os << " + ";
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
  }
  return os.str();
}

CokernelCoordinates::CokernelCoordinates(const Matrix& m) {
  const SmithDecomposition s = smith(m);
  u_ = s.U;
  const auto diag = s.diagonal();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Integer d = i < diag.size() ? diag[i] : Integer(0);
    if (d == 1) continue;
    if (d == 0) {
      free_rows_.push_back(i);
    } else {
      torsion_rows_.push_back(i);
      group_.torsion.push_back(d);
    }
  }
  group_.free_rank = free_rows_.size();
}

std::vector<Integer> CokernelCoordinates::coordinates(std::span<const Integer> x) const {
  const std::vector<Integer> y = u_ * x;
  std::vector<Integer> out;
  for (std::size_t k = 0; k < torsion_rows_.size(); ++k)
    out.push_back(mod(y[torsion_rows_[k]], group_.torsion[k]));
  for (std::size_t r : free_rows_) out.push_back(y[r]);
  return out;
}

FgAbelianGroup cokernel(const Matrix& m) { return CokernelCoordinates(m).group(); }

std::string PointedGroup::to_string() const {
  std::ostringstream os;
  os << group.to_string() << " marked (";
  for (std::size_t i = 0; i < marked.size(); ++i) os << (i ? "," : "") << marked[i];
  os << ')';
  return os.str();
}

std::vector<Integer> reduce_element(const FgAbelianGroup& g, std::vector<Integer> x) {
  if (x.size() != g.generator_count())
    throw Error(Errc::MismatchedInput, "element has wrong number of coordinates");
  for (std::size_t i = 0; i < g.torsion.size(); ++i) x[i] = mod(x[i], g.torsion[i]);
  return x;
}

PointedGroup pointed_cokernel(const Matrix& m, std::span<const Integer> x) {
  CokernelCoordinates cc(m);
  return PointedGroup{cc.group(), cc.coordinates(x)};
}

// ---------------------------------------------------------------------------
// Lattice membership

LatticeMembership lattice_member(std::span<const Integer> v,
                                 const std::vector<std::vector<Integer>>& generators) {
  const std::size_t dim = v.size();
  LatticeMembership out;
  if (generators.empty()) {
    const auto nz = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (nz == v.end()) {
      out.member = true;
      return out;
    }
    out.separator.assign(dim, Rational(0));
    out.separator[static_cast<std::size_t>(nz - v.begin())] = Rational(1, 2) / Rational(*nz);
    return out;
  }
  Matrix g(dim, generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != dim) throw Error(Errc::MismatchedInput, "generator dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) g(i, j) = generators[j][i];
  }
  const SmithDecomposition s = smith(g);
  const std::vector<Integer> w = s.U * v;
  const auto diag = s.diagonal();
  std::vector<Integer> y(generators.size(), Integer(0));
  for (std::size_t i = 0; i < dim; ++i) {
    const Integer d = i < diag.size() ? diag[i] : Integer(0);
    const bool ok = divides(d, w[i]);
    if (!ok) {
      // d > 0: row_i(U)/d is integral on the generators, w_i/d is not.
      // d = 0: row_i(U) kills the generators; scale so v lands on 1/2.
      const Rational scale = d != 0 ? Rational(1) / Rational(d) : Rational(1, 2) / Rational(w[i]);
      out.separator.resize(dim);
      for (std::size_t j = 0; j < dim; ++j) out.separator[j] = Rational(s.U(i, j)) * scale;
      return out;
    }
    if (d != 0) y[i] = w[i] / d;
  }
  out.member = true;
  out.coefficients = s.V * std::span<const Integer>(y);
  if (!(g * std::span<const Integer>(out.coefficients) == std::vector<Integer>(v.begin(), v.end())))
    throw Error(Errc::InvalidResult, "lattice coefficients failed verification");
  return out;
}

// ---------------------------------------------------------------------------
// Pointed isomorphism

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

namespace {

struct Split {
  std::vector<Integer> torsion;
  std::vector<Integer> free;
};

Split split(const FgAbelianGroup& g, const std::vector<Integer>& x) {
  Split s;
  s.torsion.assign(x.begin(), x.begin() + static_cast<long>(g.torsion.size()));
  s.free.assign(x.begin() + static_cast<long>(g.torsion.size()), x.end());
  return s;
}

Integer content(const std::vector<Integer>& v) {
  Integer c = 0;
  for (const auto& x : v) c = gcd(c, x);
  return c;
}

// x in nG, with x in canonical coordinates.
bool in_multiple(const FgAbelianGroup& g, const std::vector<Integer>& x, const Integer& n) {
  for (std::size_t j = 0; j < g.torsion.size(); ++j)
    if (!divides(gcd(n, g.torsion[j]), x[j])) return false;
  for (std::size_t j = g.torsion.size(); j < x.size(); ++j)
    if (!divides(n, x[j])) return false;
  return true;
}

std::vector<Integer> scaled(const FgAbelianGroup& g, const std::vector<Integer>& x, const Integer& k) {
  std::vector<Integer> y = x;
  for (auto& v : y) v *= k;
  return reduce_element(g, std::move(y));
}

std::vector<Integer> prime_factors(Integer n) {
  std::vector<Integer> ps;
  if (n < 0) n = -n;
  for (Integer p = 2; p * p <= n; ++p) {
    if (divides(p, n)) {
      ps.push_back(p);
      while (divides(p, n)) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

unsigned valuation(Integer n, const Integer& p) {
  unsigned v = 0;
  if (n == 0) return 0;
  while (divides(p, n)) {
    n /= p;
    ++v;
  }
  return v;
}

// Heights of x, px, p^2x, ... in G, capped. Automorphism invariant.
std::vector<unsigned> height_sequence(const FgAbelianGroup& g, const std::vector<Integer>& x,
                                      const Integer& p, unsigned cap) {
  std::vector<unsigned> seq;
  std::vector<Integer> y = x;
  for (unsigned i = 0; i <= cap; ++i) {
    unsigned h = 0;
    Integer ph = p;
    while (h < cap && in_multiple(g, y, ph)) {
      ++h;
      ph *= p;
    }
    seq.push_back(h);
    y = scaled(g, y, p);
  }
  return seq;
}

bool is_bijective_on_torsion(const std::vector<Integer>& d, const Matrix& alpha) {
  const std::size_t t = d.size();
  if (t == 0) return true;
  Matrix rel(t, 2 * t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) rel(i, j) = alpha(i, j);
    rel(i, t + i) = d[i];
  }
  return cokernel(rel).is_trivial();
}

}  // namespace

PointedIso pointed_iso(const PointedGroup& p, const PointedGroup& q, std::size_t enumeration_cap) {
  const FgAbelianGroup& g = p.group;
  if (p.marked.size() != g.generator_count() || q.marked.size() != q.group.generator_count())
    throw Error(Errc::MismatchedInput, "marked element does not match its group");
  if (!(p.group == q.group)) return {Verdict::no, std::nullopt, "groups are not isomorphic"};

  const std::vector<Integer> a = reduce_element(g, p.marked);
  const std::vector<Integer> b = reduce_element(g, q.marked);
  const Split sa = split(g, a);
  const Split sb = split(g, b);
  const Integer c = content(sa.free);
  if (c != content(sb.free))
    return {Verdict::no, std::nullopt, "free parts of the marked elements have different content"};

  Integer exponent = 1;
  for (const auto& d : g.torsion) exponent = d;
  for (const Integer& prime : prime_factors(exponent * (c == 0 ? Integer(1) : c))) {
    const unsigned cap = valuation(exponent, prime) + valuation(c == 0 ? Integer(1) : c, prime) + 1;
    if (height_sequence(g, a, prime, cap) != height_sequence(g, b, prime, cap))
      return {Verdict::no, std::nullopt, "height sequences at p=" + prime.get_str() + " differ"};
  }

  const std::vector<Integer>& d = g.torsion;
  const std::size_t t = d.size();
  const std::size_t r = g.free_rank;

  // Candidate images of torsion generator i: x with d_i x = 0.
  std::vector<std::vector<std::vector<Integer>>> candidates(t);
  double total = 1;
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<Integer> steps(t);
    std::vector<Integer> counts(t);
    double count = 1;
    for (std::size_t j = 0; j < t; ++j) {
      counts[j] = gcd(d[i], d[j]);
      steps[j] = d[j] / counts[j];
      count *= counts[j].get_d();
    }
    total *= count;
    if (total > static_cast<double>(enumeration_cap))
      return {Verdict::undecided, std::nullopt, "automorphism enumeration exceeds cap"};
    std::vector<Integer> digit(t, Integer(0));
    while (true) {
      std::vector<Integer> x(t);
      for (std::size_t j = 0; j < t; ++j) x[j] = digit[j] * steps[j];
      candidates[i].push_back(std::move(x));
      std::size_t j = 0;
      while (j < t) {
        ++digit[j];
        if (digit[j] < counts[j]) break;
        digit[j] = 0;
        ++j;
      }
      if (j == t) break;
    }
  }

  // Need alpha in Aut(T) and s in T with alpha(ta) + c*s = tb.
  Matrix alpha(t, t);
  std::vector<std::size_t> choice(t, 0);
  std::optional<std::vector<Integer>> shift;
  bool found = false;
  const auto try_current = [&]() -> bool {
    std::vector<Integer> y(t);
    for (std::size_t j = 0; j < t; ++j) {
      Integer img = 0;
      for (std::size_t i = 0; i < t; ++i) img += alpha(j, i) * sa.torsion[i];
      y[j] = mod(sb.torsion[j] - img, d[j]);
    }
    std::vector<Integer> s(t, Integer(0));
    for (std::size_t j = 0; j < t; ++j) {
      const Integer gj = gcd(c, d[j]);
      if (!divides(gj, y[j])) return false;
      if (c != 0) {
        const Integer modulus = d[j] / gj;
        if (modulus > 1) {
          Integer inv;
          const Integer cg = mod(c / gj, modulus);
          mpz_invert(inv.get_mpz_t(), cg.get_mpz_t(), modulus.get_mpz_t());
          s[j] = mod((y[j] / gj) * inv, modulus);
        }
      }
    }
    if (!is_bijective_on_torsion(d, alpha)) return false;
    shift = std::move(s);
    return true;
  };
  // Odometer over the product of candidate lists.
  if (t == 0) {
    found = try_current();
  } else {
    while (!found) {
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) alpha(j, i) = candidates[i][choice[i]][j];
      if (try_current()) {
        found = true;
        break;
      }
      std::size_t i = 0;
      while (i < t) {
        if (++choice[i] < candidates[i].size()) break;
        choice[i] = 0;
        ++i;
      }
      if (i == t) break;
    }
  }
  if (!found) return {Verdict::no, std::nullopt, "no automorphism carries the marked elements"};

  Matrix iso(t + r, t + r);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) iso(i, j) = alpha(i, j);
  if (r > 0) {
    Matrix gamma = Matrix::identity(r);
    if (c != 0) {
      Matrix va(r, 1);
      Matrix vb(r, 1);
      for (std::size_t i = 0; i < r; ++i) {
        va(i, 0) = sa.free[i];
        vb(i, 0) = sb.free[i];
      }
      const Matrix ua = hermite(va).U;
      const Matrix ub = hermite(vb).U;
      gamma = ub.unimodular_inverse() * ua;
      // beta(x) = (first coordinate of ua x) * s, so beta(va) = c s.
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < r; ++j) iso(i, t + j) = mod((*shift)[i] * ua(0, j), d[i]);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) iso(t + i, t + j) = gamma(i, j);
  }
  if (!verify_pointed_iso(p, q, iso))
    throw Error(Errc::InvalidResult, "constructed pointed isomorphism failed verification");
  return {Verdict::yes, iso, "explicit isomorphism found"};
}

bool verify_pointed_iso(const PointedGroup& p, const PointedGroup& q, const Matrix& iso) {
  if (!(p.group == q.group)) return false;
  const FgAbelianGroup& g = p.group;
  const std::size_t t = g.torsion.size();
  const std::size_t n = g.generator_count();
  if (iso.rows() != n || iso.cols() != n) return false;
  for (std::size_t i = t; i < n; ++i)
    for (std::size_t j = 0; j < t; ++j)
      if (iso(i, j) != 0) return false;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      if (!divides(g.torsion[j], g.torsion[i] * iso(j, i))) return false;
  Matrix alpha(t, t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) alpha(i, j) = iso(i, j);
  if (!is_bijective_on_torsion(g.torsion, alpha)) return false;
  if (n > t) {
    Matrix gamma(n - t, n - t);
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < n; ++j) gamma(i - t, j - t) = iso(i, j);
    const Integer det = gamma.determinant();
    if (det != 1 && det != -1) return false;
  }
  const std::vector<Integer> a = reduce_element(g, p.marked);
  return reduce_element(g, iso * std::span<const Integer>(a)) == reduce_element(g, q.marked);
}

}  // namespace sftlab::intlat
