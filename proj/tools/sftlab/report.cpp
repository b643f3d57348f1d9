#include "report.hpp"

#include <sstream>

#include "sftlab/textio.hpp"

namespace sftlab::cli {

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "-";
  return v.dump();
}

bool all_scalar(const Json& arr) {
  for (const auto& e : arr)
    if (e.is_structured()) return false;
  return true;
}

void render(const Json& obj, std::ostream& out, const std::string& indent) {
  for (const auto& [key, value] : obj.items()) {
    if (!value.is_structured()) {
      out << indent << key << ": " << scalar_text(value) << '\n';
    } else if (value.is_object()) {
      out << indent << key << ":\n";
      render(value, out, indent + "  ");
    } else if (all_scalar(value)) {
      if (value.empty()) {
        out << indent << key << ": (none)\n";
        continue;
      }
      out << indent << key << ":\n";
      for (const auto& e : value) out << indent << "  " << scalar_text(e) << '\n';
    } else {
      out << indent << key << ":\n";
      std::size_t i = 0;
      for (const auto& e : value) {
        out << indent << "  [" << i++ << "]\n";
        if (e.is_object()) render(e, out, indent + "    ");
        else out << indent << "    " << scalar_text(e) << '\n';
      }
    }
  }
}

}  // namespace

void render_text(const Json& report, std::ostream& out) { render(report, out, ""); }

std::string str(const Integer& z) { return z.get_str(); }
std::string str(const Rational& q) { return textio::format_rational(q); }

Json matrix_rows(const intlat::Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string row;
    for (std::size_t j = 0; j < m.cols(); ++j) row += (j ? " " : "") + m(i, j).get_str();
    rows.push_back(row);
  }
  return rows;
}

Json integers(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(z.get_str());
  return out;
}

namespace {

// Text block minus its header line.
Json body_lines(const std::string& text) {
  Json lines = Json::array();
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

Json function_json(const Function& f, const std::string& id) {
  Json j;
  j["presentation"] = id;
  j["depth"] = f.depth();
  j["ring"] = std::string(ring_name(f.ring()));
  j["table"] = body_lines(textio::format_function(f, id));
  return j;
}

Json transducer_json(const Transducer& t, const std::string& domain_id, const std::string& codomain_id) {
  Json j;
  j["domain"] = domain_id;
  j["codomain"] = codomain_id;
  j["states"] = t.state_count();
  j["initial"] = t.initial();
  j["transitions"] = body_lines(textio::format_transducer(t, domain_id, codomain_id));
  return j;
}

Json group_json(const intlat::FgAbelianGroup& g) {
  Json j;
  j["group"] = g.to_string();
  j["free_rank"] = g.free_rank;
  j["torsion"] = integers(g.torsion);
  return j;
}

}  // namespace sftlab::cli
