#include "workspace.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>

#include "sftlab/error.hpp"

namespace fs = std::filesystem;

namespace sftlab::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::Parse, what); }

bool valid_id(const std::string& id) {
  return !id.empty() && id.find_first_of(". \t:=") == std::string::npos;
}

// "x", "x3", "b2" style suffix: letter followed by an optional number.
bool numbered_suffix(const std::string& s, char letter, bool number_required, std::size_t& value) {
  if (s.empty() || s[0] != letter) return false;
  const std::string digits = s.substr(1);
  if (digits.empty()) {
    if (number_required) return false;
    value = 1;
    return true;
  }
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) return false;
  value = std::stoul(digits);
  return value > 0;
}

}  // namespace

Workspace::Workspace(const std::vector<std::string>& bindings) {
  dirs_.push_back(".");
  for (const std::string& b : bindings) {
    const auto eq = b.find('=');
    if (eq == std::string::npos) bad("binding '" + b + "' is not of the form id=path");
    const std::string id = b.substr(0, eq);
    if (!valid_id(id)) bad("invalid id '" + id + "' (ids may not contain '.', ':' or '=')");
    register_file(id, b.substr(eq + 1));
  }
}

std::string Workspace::register_file(const std::string& id, const std::string& path) {
  textio::MatrixText m = textio::parse_matrix(textio::read_file(path));
  auto it = matrices_.find(id);
  if (it != matrices_.end()) {
    if (it->second.matrix != m.matrix || it->second.kind != m.kind) bad("id '" + id + "' is bound to two different matrices");
    return id;
  }
  matrices_.emplace(id, std::move(m));
  const std::string dir = fs::path(path).parent_path().string();
  const std::string d = dir.empty() ? "." : dir;
  if (std::find(dirs_.begin(), dirs_.end(), d) == dirs_.end()) dirs_.push_back(d);
  return id;
}

bool Workspace::try_sibling(const std::string& id) {
  if (!valid_id(id)) return false;
  for (const std::string& d : dirs_) {
    const fs::path candidate = fs::path(d) / (id + ".mat");
    if (fs::exists(candidate)) {
      register_file(id, candidate.string());
      return true;
    }
  }
  return false;
}

std::string Workspace::matrix_arg(const std::string& arg) {
  if (matrices_.count(arg) || presentations_.count(arg)) return arg;
  if (fs::exists(arg) && fs::is_regular_file(arg)) {
    const std::string id = fs::path(arg).stem().string();
    if (!valid_id(id)) bad("file name '" + arg + "' does not give a usable id; bind it with -m id=path");
    return register_file(id, arg);
  }
  const fs::path as_path(arg);
  if (as_path.has_parent_path() || as_path.extension() == ".mat") bad("no such matrix file '" + arg + "'");
  if (arg.find('.') != std::string::npos) {
    derived(arg);
    return arg;
  }
  if (try_sibling(arg)) return arg;
  bad("unknown matrix '" + arg + "'");
}

const intlat::Matrix& Workspace::raw_matrix(const std::string& id) {
  auto it = matrices_.find(id);
  if (it == matrices_.end()) {
    if (!try_sibling(id)) bad("unknown matrix '" + id + "'");
    it = matrices_.find(id);
  }
  return it->second.matrix;
}

PresentationPtr Workspace::presentation(const std::string& id) {
  if (auto it = presentations_.find(id); it != presentations_.end()) return it->second;
  PresentationPtr p;
  if (id.find('.') != std::string::npos) {
    p = derived(id);
  } else {
    raw_matrix(id);
    const auto& m = matrices_.at(id);
    p = Presentation::validate(m.matrix, m.kind);
  }
  presentations_.emplace(id, p);
  return p;
}

PresentationPtr Workspace::derived(const std::string& id) {
  if (auto it = presentations_.find(id); it != presentations_.end()) return it->second;
  const auto dot = id.rfind('.');
  const std::string base = id.substr(0, dot);
  const std::string suffix = id.substr(dot + 1);
  std::size_t n = 0;
  PresentationPtr p;
  if (numbered_suffix(suffix, 'x', false, n)) {
    p = expansion(base, n - 1).expanded;
  } else if (numbered_suffix(suffix, 'b', true, n)) {
    p = block(base, n).block.presentation;
  } else if (valid_id(base) && valid_id(suffix)) {
    const intlat::Matrix product = raw_matrix(base) * raw_matrix(suffix);
    p = Presentation::validate(product, PresentationKind::edge);
  } else {
    bad("cannot interpret id '" + id + "'");
  }
  presentations_.emplace(id, p);
  return p;
}

std::string Workspace::expansion_id(const std::string& id, std::size_t vertex) {
  return vertex == 0 ? id + ".x" : id + ".x" + std::to_string(vertex + 1);
}

const Expansion& Workspace::expansion(const std::string& id, std::size_t vertex) {
  const auto key = std::make_pair(id, vertex);
  auto it = expansions_.find(key);
  if (it == expansions_.end()) {
    auto e = std::make_unique<Expansion>(expand(presentation(id), vertex));
    // Register under both spellings so functions may use either.
    presentations_.emplace(expansion_id(id, vertex), e->expanded);
    if (vertex == 0) presentations_.emplace(id + ".x1", e->expanded);
    it = expansions_.emplace(key, std::move(e)).first;
  }
  return *it->second;
}

const BlockConjugacy& Workspace::block(const std::string& id, std::size_t k) {
  const auto key = std::make_pair(id, k);
  auto it = blocks_.find(key);
  if (it == blocks_.end()) {
    auto b = std::make_unique<BlockConjugacy>(block_conjugacy(presentation(id), k));
    presentations_.emplace(id + ".b" + std::to_string(k), b->block.presentation);
    it = blocks_.emplace(key, std::move(b)).first;
  }
  return *it->second;
}

textio::Resolver Workspace::resolver() {
  return [this](const std::string& id) { return presentation(id); };
}

Workspace::LoadedFunction Workspace::function_file(const std::string& path) {
  const std::string dir = fs::path(path).parent_path().string();
  const std::string d = dir.empty() ? "." : dir;
  if (std::find(dirs_.begin(), dirs_.end(), d) == dirs_.end()) dirs_.push_back(d);
  textio::FunctionText ft = textio::parse_function(textio::read_file(path), resolver());
  return {ft.id, std::move(ft.function)};
}

textio::TransducerText Workspace::transducer_file(const std::string& path) {
  const std::string dir = fs::path(path).parent_path().string();
  const std::string d = dir.empty() ? "." : dir;
  if (std::find(dirs_.begin(), dirs_.end(), d) == dirs_.end()) dirs_.push_back(d);
  return textio::parse_transducer(textio::read_file(path), resolver());
}

}  // namespace sftlab::cli
