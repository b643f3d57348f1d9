#ifndef SFTLAB_TOOLS_REPORT_HPP_
#define SFTLAB_TOOLS_REPORT_HPP_

// A report is an ordered JSON object. The --json flag prints it as is; the
// default text form is derived from it so the two never drift apart.
//
// Text rendering: scalars print as "key: value" (booleans as yes/no), arrays
// of scalars as an indented block, objects as an indented sub-report, and
// arrays of objects as numbered sub-reports.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sftlab/function.hpp"
#include "sftlab/intlat.hpp"
#include "sftlab/sft.hpp"
#include "sftlab/transducer.hpp"

namespace sftlab::cli {

using Json = nlohmann::ordered_json;

void render_text(const Json& report, std::ostream& out);

// Conversions used by every command.
std::string str(const Integer& z);
std::string str(const Rational& q);
Json matrix_rows(const intlat::Matrix& m);
Json integers(const std::vector<Integer>& v);
/// Function table as "<word> <value>" lines, plus depth and ring.
Json function_json(const Function& f, const std::string& id);
Json transducer_json(const Transducer& t, const std::string& domain_id, const std::string& codomain_id);
Json group_json(const intlat::FgAbelianGroup& g);

}  // namespace sftlab::cli

#endif  // SFTLAB_TOOLS_REPORT_HPP_
