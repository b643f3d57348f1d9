#ifndef SFTLAB_TOOLS_WORKSPACE_HPP_
#define SFTLAB_TOOLS_WORKSPACE_HPP_

// Named objects for one command invocation.
//
// A matrix argument is either an id or a path. A path registers its file stem
// as the id (fib.mat -> fib); `-m id=path` binds an id explicitly. Ids never
// contain '.', which is reserved for derived presentations:
//
//   <id>.x, <id>.x<v>   Parry-Sullivan expansion at vertex v (1-based, default 1)
//   <id>.b<k>           k-block presentation (edge form)
//   <X>.<Y>             edge presentation of the product X Y of two loaded
//                       matrices, e.g. the A = CD and B = DC of an elementary
//                       equivalence
//
// Function and transducer headers name their presentations by id. Unknown
// plain ids are looked up as <id>.mat next to any file loaded so far.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sftlab/moves.hpp"
#include "sftlab/textio.hpp"
#include "sftlab/transducer.hpp"

namespace sftlab::cli {

class Workspace {
 public:
  explicit Workspace(const std::vector<std::string>& bindings = {});

  /// Registers a matrix argument (id or path) and returns its id.
  std::string matrix_arg(const std::string& arg);
  const intlat::Matrix& raw_matrix(const std::string& id);
  PresentationPtr presentation(const std::string& id);

  struct LoadedFunction {
    std::string id;
    Function function;
  };
  LoadedFunction function_file(const std::string& path);
  textio::TransducerText transducer_file(const std::string& path);

  const Expansion& expansion(const std::string& id, std::size_t vertex);
  /// The id under which an expansion's presentation is reachable.
  static std::string expansion_id(const std::string& id, std::size_t vertex);
  const BlockConjugacy& block(const std::string& id, std::size_t k);

  textio::Resolver resolver();

 private:
  std::string register_file(const std::string& id, const std::string& path);
  bool try_sibling(const std::string& id);
  PresentationPtr derived(const std::string& id);

  std::map<std::string, textio::MatrixText> matrices_;
  std::map<std::string, PresentationPtr> presentations_;
  std::map<std::pair<std::string, std::size_t>, std::unique_ptr<Expansion>> expansions_;
  std::map<std::pair<std::string, std::size_t>, std::unique_ptr<BlockConjugacy>> blocks_;
  std::vector<std::string> dirs_;
};

}  // namespace sftlab::cli

#endif  // SFTLAB_TOOLS_WORKSPACE_HPP_
