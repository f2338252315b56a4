#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isbv/groebner.hpp"

namespace isbv {

/// Content-addressed on-disk store of reduced Groebner bases over Q. The key
/// is the SHA-256 of the canonical generator text, variable set, order and
/// domain. Entries are written atomically under an advisory lock; a corrupt
/// or mismatching entry is reported on stderr and ignored. Safe to delete.
class GroebnerCache {
 public:
  explicit GroebnerCache(std::string dir);

  /// $ISBV_CACHE, else $XDG_CACHE_HOME/isbv, else $HOME/.cache/isbv; empty if none is set.
  static std::string default_dir();

  const std::string& dir() const { return dir_; }

  static std::string key(const std::vector<QPoly>& gens, const MonomialOrder& order);

  std::optional<std::vector<QPoly>> load(const std::vector<QPoly>& gens, const MonomialOrder& order) const;
  void store(const std::vector<QPoly>& gens, const MonomialOrder& order, const std::vector<QPoly>& basis) const;

  /// When set (or ISBV_CACHE_AUDIT=1), every hit is recomputed and compared.
  bool audit = false;

 private:
  std::string path_for(const std::string& key) const;
  std::string dir_;
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

/// Groebner basis through the cache when one is given.
std::vector<QPoly> cached_groebner(const std::vector<QPoly>& gens, const MonomialOrder& order,
                                   const GroebnerOptions& opts, const GroebnerCache* cache);

}  // namespace isbv
