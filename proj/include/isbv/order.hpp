#pragma once

#include <string>
#include <vector>

#include "isbv/variables.hpp"

namespace isbv {

/// Total multiplicative monomial order: optional integer weight rows
/// compared first, then a sequence of variable blocks, each ordered
/// lexicographically or by graded reverse lex.
class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex };
  struct Block {
    std::vector<std::size_t> vars;  // priority order inside the block
    Kind kind;
  };

  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::size_t nvars);
  /// Variables of `first` dominate; each block ordered by its kind.
  /// Variables not listed in any block are appended as a final grevlex block.
  static MonomialOrder block(std::size_t nvars, std::vector<Block> blocks);
  /// Elimination order with `drop` dominant (both blocks grevlex).
  static MonomialOrder elimination(std::size_t nvars, const std::vector<std::size_t>& drop);
  /// Prepends weight rows (compared first, larger weight = larger monomial).
  MonomialOrder with_weights(std::vector<std::vector<int>> rows) const;

  /// <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  /// Canonical description, used as a cache key.
  std::string key() const;

  bool operator==(const MonomialOrder& o) const { return key() == o.key(); }

 private:
  std::size_t nvars_ = 0;
  std::vector<std::vector<int>> weights_;
  std::vector<Block> blocks_;
};

}  // namespace isbv
