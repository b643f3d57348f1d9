#ifndef SFTLAB_FUNCTION_HPP_
#define SFTLAB_FUNCTION_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "sftlab/intlat.hpp"
#include "sftlab/sft.hpp"

namespace sftlab {

enum class Ring { integers, rationals };
std::string_view ring_name(Ring r);

/// An element of C(X_A, Z) or C(X_A, Q): the value on x depends only on the
/// first `depth` symbols. The table is indexed by rank in B_depth. Instances
/// are always normalized (depth minimal), so two functions are equal iff
/// presentation, depth and table agree.
class LocallyConstantFunction {
 public:
  LocallyConstantFunction(PresentationPtr p, std::size_t depth, std::vector<Rational> table,
                          Ring ring = Ring::integers);

  static LocallyConstantFunction constant(PresentationPtr p, const Rational& c,
                                          Ring ring = Ring::integers);
  static LocallyConstantFunction zero(PresentationPtr p) { return constant(std::move(p), 0); }
  static LocallyConstantFunction one(PresentationPtr p) { return constant(std::move(p), 1); }
  /// Characteristic function of the cylinder U_w.
  static LocallyConstantFunction indicator(PresentationPtr p, const Word& w);
  static LocallyConstantFunction tabulate(PresentationPtr p, std::size_t depth,
                                          const std::function<Rational(const Word&)>& value,
                                          Ring ring = Ring::integers);

  const PresentationPtr& presentation() const { return p_; }
  std::size_t depth() const { return depth_; }
  Ring ring() const { return ring_; }
  const std::vector<Rational>& table() const { return table_; }

  /// Value on the cylinder of w; w must have length >= depth.
  const Rational& operator()(std::span<const Symbol> w) const;
  Rational at(const Point& x) const;

  /// Table over B_d for d >= depth (not normalized).
  std::vector<Rational> table_at_depth(std::size_t d) const;

  bool is_integer_valued() const;
  bool is_zero() const;
  Rational min_value() const;
  Rational max_value() const;

  LocallyConstantFunction operator-() const;
  LocallyConstantFunction& operator+=(const LocallyConstantFunction& g);
  LocallyConstantFunction& operator-=(const LocallyConstantFunction& g);
  /// Pointwise product.
  LocallyConstantFunction& operator*=(const LocallyConstantFunction& g);
  LocallyConstantFunction scaled(const Rational& c) const;

  bool operator==(const LocallyConstantFunction& g) const;

 private:
  void normalize();
  template <typename Op>
  LocallyConstantFunction& combine(const LocallyConstantFunction& g, Op op);

  PresentationPtr p_;
  std::size_t depth_;
  std::vector<Rational> table_;
  Ring ring_;
  std::shared_ptr<const WordSpace> space_;
};

using Function = LocallyConstantFunction;

Function operator+(Function f, const Function& g);
Function operator-(Function f, const Function& g);
Function operator*(Function f, const Function& g);

}  // namespace sftlab

#endif  // SFTLAB_FUNCTION_HPP_
