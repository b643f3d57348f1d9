#include "sftlab/textio.hpp"

#include <fstream>
#include <sstream>

#include "sftlab/error.hpp"

namespace sftlab::textio {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Non-empty, non-comment lines split on whitespace.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    std::string tok;
    while (in >> tok) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens[0][0] == '#') continue;
    out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(Errc::Parse, "line " + std::to_string(line) + ": " + what);
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) fail(line, "expected a count, got '" + tok + "'");
  try {
    return std::stoul(tok);
  } catch (const std::exception&) {
    fail(line, "count out of range: '" + tok + "'");
  }
}

Integer parse_integer(const std::string& tok, std::size_t line) {
  Integer z;
  if (tok.empty() || z.set_str(tok, 10) != 0) fail(line, "expected an integer, got '" + tok + "'");
  return z;
}

// key=value
std::string keyword(const std::string& tok, std::string_view key, std::size_t line) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0) fail(line, "expected " + prefix + "...");
  return tok.substr(prefix.size());
}

PresentationKind parse_kind(const std::string& tok, std::size_t line) {
  if (tok == "vertex") return PresentationKind::vertex;
  if (tok == "edge") return PresentationKind::edge;
  fail(line, "unknown presentation kind '" + tok + "'");
}

}  // namespace

MatrixText parse_matrix(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(Errc::Parse, "empty matrix file");
  const Line& head = lines[0];
  if (head.tokens[0] != "matrix" || head.tokens.size() < 3 || head.tokens.size() > 4)
    fail(head.number, "expected 'matrix <kind> <n>' or 'matrix <kind> <rows> <cols>'");
  MatrixText out;
  out.kind = parse_kind(head.tokens[1], head.number);
  const std::size_t rows = parse_count(head.tokens[2], head.number);
  const std::size_t cols = head.tokens.size() == 4 ? parse_count(head.tokens[3], head.number) : rows;
  if (rows == 0 || cols == 0) fail(head.number, "matrix must be nonempty");
  if (lines.size() != rows + 1)
    fail(lines.back().number, "expected " + std::to_string(rows) + " rows, found " + std::to_string(lines.size() - 1));
  out.matrix = intlat::Matrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Line& l = lines[i + 1];
    if (l.tokens.size() != cols) fail(l.number, "expected " + std::to_string(cols) + " entries");
    for (std::size_t j = 0; j < cols; ++j) out.matrix(i, j) = parse_integer(l.tokens[j], l.number);
  }
  return out;
}

std::string format_matrix(const intlat::Matrix& m, PresentationKind kind) {
  std::ostringstream out;
  out << "matrix " << kind_name(kind) << ' ' << m.rows();
  if (!m.is_square()) out << ' ' << m.cols();
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

PresentationPtr parse_presentation(std::string_view text) {
  const MatrixText m = parse_matrix(text);
  return Presentation::validate(m.matrix, m.kind);
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(std::string_view text) {
  Rational q;
  const std::string s(text);
  if (s.empty() || s.find_first_of(" \t") != std::string::npos || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw Error(Errc::Parse, "expected a rational number, got '" + s + "'");
  q.canonicalize();
  return q;
}

FunctionText parse_function(std::string_view text, const Resolver& resolve) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(Errc::Parse, "empty function file");
  const Line& head = lines[0];
  if (head.tokens.size() != 4 || head.tokens[0] != "function")
    fail(head.number, "expected 'function <id> depth=<k> ring=<Z|Q>'");
  const std::string id = head.tokens[1];
  const std::size_t depth = parse_count(keyword(head.tokens[2], "depth", head.number), head.number);
  const std::string ring_text = keyword(head.tokens[3], "ring", head.number);
  if (depth == 0) fail(head.number, "depth must be positive");
  if (ring_text != "Z" && ring_text != "Q") fail(head.number, "ring must be Z or Q");
  const Ring ring = ring_text == "Z" ? Ring::integers : Ring::rationals;
  const PresentationPtr p = resolve(id);
  const WordSpace space(p, depth);
  if (lines.size() - 1 != space.size())
    fail(lines.back().number, "expected " + std::to_string(space.size()) + " table entries, found " +
                                  std::to_string(lines.size() - 1));
  std::vector<Rational> table(space.size());
  for (std::size_t r = 0; r < space.size(); ++r) {
    const Line& l = lines[r + 1];
    const std::string expect = p->format_word(space.unrank(r));
    if (l.tokens.size() != 2) fail(l.number, "expected '<word> <value>'");
    if (l.tokens[0] != expect) fail(l.number, "expected word " + expect + ", found " + l.tokens[0]);
    try {
      table[r] = parse_rational(l.tokens[1]);
    } catch (const Error& e) {
      fail(l.number, e.what());
    }
    if (ring == Ring::integers && table[r].get_den() != 1) fail(l.number, "non-integer value in a Z-valued function");
  }
  return FunctionText{id, Function(p, depth, std::move(table), ring)};
}

std::string format_function(const Function& f, std::string_view id) {
  std::ostringstream out;
  out << "function " << id << " depth=" << f.depth() << " ring=" << ring_name(f.ring()) << '\n';
  const Presentation& p = *f.presentation();
  WordSpace(f.presentation(), f.depth()).for_each([&](std::size_t r, const Word& w) {
    out << p.format_word(w) << ' ' << format_rational(f.table()[r]) << '\n';
  });
  return out.str();
}

TransducerText parse_transducer(std::string_view text, const Resolver& resolve) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(Errc::Parse, "empty transducer file");
  const Line& head = lines[0];
  if (head.tokens.size() != 5 || head.tokens[0] != "transducer")
    fail(head.number, "expected 'transducer <domain> <codomain> states=<m> initial=<q0>'");
  const PresentationPtr dom = resolve(head.tokens[1]);
  const PresentationPtr cod = resolve(head.tokens[2]);
  const std::size_t states = parse_count(keyword(head.tokens[3], "states", head.number), head.number);
  const std::size_t initial = parse_count(keyword(head.tokens[4], "initial", head.number), head.number);
  if (states == 0 || initial >= states) fail(head.number, "bad state count or initial state");
  const std::size_t symbols = dom->symbol_count();
  std::vector<std::optional<Transition>> table(states * symbols);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.size() != 5 || l.tokens[2] != "->") fail(l.number, "expected 'q a -> q' w'");
    const std::size_t q = parse_count(l.tokens[0], l.number);
    const std::size_t next = parse_count(l.tokens[3], l.number);
    if (q >= states || next >= states) fail(l.number, "state out of range");
    const auto a = dom->symbol_of(l.tokens[1]);
    if (!a) fail(l.number, "unknown domain symbol '" + l.tokens[1] + "'");
    Word out;
    try {
      out = cod->parse_word(l.tokens[4]);
    } catch (const Error& e) {
      fail(l.number, e.what());
    }
    auto& slot = table[q * symbols + *a];
    if (slot) fail(l.number, "duplicate transition");
    slot = Transition{static_cast<State>(next), std::move(out)};
  }
  return TransducerText{head.tokens[1], head.tokens[2],
                        Transducer(dom, cod, states, static_cast<State>(initial), std::move(table))};
}

std::string format_transducer(const Transducer& t, std::string_view domain_id, std::string_view codomain_id) {
  std::ostringstream out;
  out << "transducer " << domain_id << ' ' << codomain_id << " states=" << t.state_count()
      << " initial=" << t.initial() << '\n';
  const Presentation& dom = *t.domain();
  const Presentation& cod = *t.codomain();
  for (State q = 0; q < t.state_count(); ++q)
    for (Symbol a = 0; a < dom.symbol_count(); ++a)
      if (const auto& tr = t.transition(q, a))
        out << q << ' ' << dom.label(a) << " -> " << tr->next << ' ' << cod.format_word(tr->output) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace sftlab::textio
