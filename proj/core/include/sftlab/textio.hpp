#ifndef SFTLAB_TEXTIO_HPP_
#define SFTLAB_TEXTIO_HPP_

// Plain-text formats for matrices, functions and transducers. Lines starting
// with '#' and blank lines are ignored everywhere. Errors throw Errc::Parse
// with the offending line number.
//
//   matrix <vertex|edge> <n>          then n rows of n integers
//   matrix <vertex|edge> <r> <c>      rectangular (factor matrices)
//   function <id> depth=<k> ring=<Z|Q>
//                                     then one "<word> <value>" line per word
//                                     of B_k in the frozen order
//   transducer <dom> <cod> states=<m> initial=<q0>
//                                     then lines "q a -> q' w" ("-" = empty)

#include <functional>
#include <string>
#include <string_view>

#include "sftlab/function.hpp"
#include "sftlab/intlat.hpp"
#include "sftlab/sft.hpp"
#include "sftlab/transducer.hpp"

namespace sftlab::textio {

struct MatrixText {
  PresentationKind kind = PresentationKind::vertex;
  intlat::Matrix matrix;
};

MatrixText parse_matrix(std::string_view text);
std::string format_matrix(const intlat::Matrix& m, PresentationKind kind);
/// parse_matrix followed by Presentation::validate.
PresentationPtr parse_presentation(std::string_view text);

/// Looks up a presentation by id; throws Parse for unknown ids.
using Resolver = std::function<PresentationPtr(const std::string& id)>;

struct FunctionText {
  std::string id;
  Function function;
};

FunctionText parse_function(std::string_view text, const Resolver& resolve);
std::string format_function(const Function& f, std::string_view id);

struct TransducerText {
  std::string domain_id;
  std::string codomain_id;
  Transducer transducer;
};

TransducerText parse_transducer(std::string_view text, const Resolver& resolve);
std::string format_transducer(const Transducer& t, std::string_view domain_id, std::string_view codomain_id);

/// "3", "-1/2"; canonical form.
std::string format_rational(const Rational& q);
Rational parse_rational(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace sftlab::textio

#endif  // SFTLAB_TEXTIO_HPP_
