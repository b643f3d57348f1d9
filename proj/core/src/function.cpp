#include "sftlab/function.hpp"

#include <algorithm>

#include "sftlab/error.hpp"

namespace sftlab {

std::string_view ring_name(Ring r) { return r == Ring::integers ? "Z" : "Q"; }

LocallyConstantFunction::LocallyConstantFunction(PresentationPtr p, std::size_t depth,
                                                 std::vector<Rational> table, Ring ring)
    : p_(std::move(p)), depth_(depth), table_(std::move(table)), ring_(ring) {
  if (!p_) throw Error(Errc::InvalidArgument, "function without presentation");
  space_ = std::make_shared<const WordSpace>(p_, depth_);
  if (table_.size() != space_->size())
    throw Error(Errc::InvalidArgument, "table has " + std::to_string(table_.size()) + " entries, expected " +
                                           std::to_string(space_->size()));
  for (auto& v : table_) v.canonicalize();
  if (ring_ == Ring::integers && !is_integer_valued())
    throw Error(Errc::InvalidArgument, "non-integer value in an integer-valued function");
  normalize();
}

LocallyConstantFunction LocallyConstantFunction::constant(PresentationPtr p, const Rational& c, Ring ring) {
  const std::size_t n = p->symbol_count();
  return LocallyConstantFunction(std::move(p), 1, std::vector<Rational>(n, c), ring);
}

LocallyConstantFunction LocallyConstantFunction::indicator(PresentationPtr p, const Word& w) {
  if (w.empty() || !p->is_admissible(w)) throw Error(Errc::Inadmissible, "indicator of an inadmissible word");
  const std::size_t k = w.size();
  return tabulate(std::move(p), k, [&](const Word& u) { return Rational(u == w ? 1 : 0); });
}

LocallyConstantFunction LocallyConstantFunction::tabulate(PresentationPtr p, std::size_t depth,
                                                          const std::function<Rational(const Word&)>& value,
                                                          Ring ring) {
  WordSpace space(p, depth);
  std::vector<Rational> table;
  table.reserve(space.size());
  space.for_each([&](std::size_t, const Word& w) { table.push_back(value(w)); });
  return LocallyConstantFunction(std::move(p), depth, std::move(table), ring);
}

const Rational& LocallyConstantFunction::operator()(std::span<const Symbol> w) const {
  if (w.size() < depth_) throw Error(Errc::InvalidArgument, "word shorter than function depth");
  return table_[space_->rank(w.first(depth_))];
}

Rational LocallyConstantFunction::at(const Point& x) const { return (*this)(x.prefix(depth_)); }

std::vector<Rational> LocallyConstantFunction::table_at_depth(std::size_t d) const {
  if (d < depth_) throw Error(Errc::InvalidArgument, "cannot lower function depth");
  if (d == depth_) return table_;
  WordSpace space(p_, d);
  std::vector<Rational> out;
  out.reserve(space.size());
  space.for_each([&](std::size_t, const Word& w) { out.push_back((*this)(w)); });
  return out;
}

bool LocallyConstantFunction::is_integer_valued() const {
  return std::all_of(table_.begin(), table_.end(), [](const Rational& v) { return v.get_den() == 1; });
}

bool LocallyConstantFunction::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](const Rational& v) { return v == 0; });
}

Rational LocallyConstantFunction::min_value() const { return *std::min_element(table_.begin(), table_.end()); }
Rational LocallyConstantFunction::max_value() const { return *std::max_element(table_.begin(), table_.end()); }

void LocallyConstantFunction::normalize() {
  while (depth_ > 1) {
    // Words sharing a (depth-1)-prefix are contiguous in the frozen order.
    WordSpace shorter(p_, depth_ - 1);
    std::vector<Rational> reduced(shorter.size());
    std::vector<bool> seen(shorter.size(), false);
    bool constant_on_prefixes = true;
    space_->for_each([&](std::size_t r, const Word& w) {
      if (!constant_on_prefixes) return;
      const std::size_t pr = shorter.rank(std::span<const Symbol>(w).first(depth_ - 1));
      if (!seen[pr]) {
        seen[pr] = true;
        reduced[pr] = table_[r];
      } else if (reduced[pr] != table_[r]) {
        constant_on_prefixes = false;
      }
    });
    if (!constant_on_prefixes) return;
    table_ = std::move(reduced);
    --depth_;
    space_ = std::make_shared<const WordSpace>(p_, depth_);
  }
}

template <typename Op>
LocallyConstantFunction& LocallyConstantFunction::combine(const LocallyConstantFunction& g, Op op) {
  require_same(p_, g.p_, "function arithmetic");
  const std::size_t d = std::max(depth_, g.depth_);
  std::vector<Rational> a = table_at_depth(d);
  const std::vector<Rational> b = g.table_at_depth(d);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = op(a[i], b[i]);
  const Ring ring = (ring_ == Ring::rationals || g.ring_ == Ring::rationals) ? Ring::rationals : Ring::integers;
  *this = LocallyConstantFunction(p_, d, std::move(a), ring);
  return *this;
}

LocallyConstantFunction LocallyConstantFunction::operator-() const { return scaled(-1); }

LocallyConstantFunction& LocallyConstantFunction::operator+=(const LocallyConstantFunction& g) {
  return combine(g, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

LocallyConstantFunction& LocallyConstantFunction::operator-=(const LocallyConstantFunction& g) {
  return combine(g, [](const Rational& x, const Rational& y) { return Rational(x - y); });
}

LocallyConstantFunction& LocallyConstantFunction::operator*=(const LocallyConstantFunction& g) {
  return combine(g, [](const Rational& x, const Rational& y) { return Rational(x * y); });
}

LocallyConstantFunction LocallyConstantFunction::scaled(const Rational& c) const {
  std::vector<Rational> t = table_;
  for (auto& v : t) v *= c;
  const Ring ring = (ring_ == Ring::integers && c.get_den() == 1) ? Ring::integers : Ring::rationals;
  return LocallyConstantFunction(p_, depth_, std::move(t), ring);
}

bool LocallyConstantFunction::operator==(const LocallyConstantFunction& g) const {
  return same_presentation(p_, g.p_) && depth_ == g.depth_ && table_ == g.table_;
}

Function operator+(Function f, const Function& g) { return f += g; }
Function operator-(Function f, const Function& g) { return f -= g; }
Function operator*(Function f, const Function& g) { return f *= g; }

}  // namespace sftlab
