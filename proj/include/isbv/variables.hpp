#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace isbv {

inline constexpr std::size_t kMaxVars = 32;

/// Ordered list of distinct variable names, each carrying a group tag
/// ("base", "P0", "P1", "param", ...) for multidegree bookkeeping.
class VariableSet {
 public:
  VariableSet(std::vector<std::string> names, std::vector<std::string> groups);

  static std::shared_ptr<const VariableSet> make(std::vector<std::string> names,
                                                 std::vector<std::string> groups = {});

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::string& group(std::size_t i) const { return groups_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& groups() const { return groups_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t require(const std::string& name) const;
  std::vector<std::size_t> group_members(const std::string& tag) const;
  bool has_group(const std::string& tag) const { return !group_members(tag).empty(); }

  bool operator==(const VariableSet& o) const {
    return names_ == o.names_ && groups_ == o.groups_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> groups_;
};

using VarsPtr = std::shared_ptr<const VariableSet>;

bool same_vars(const VarsPtr& a, const VarsPtr& b);

/// Exponent vector. Only the first `VariableSet::size()` slots are meaningful;
/// the rest stay zero so that equality and hashing are slot-wise.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  static Monomial variable(std::size_t i, Exponent e = 1);

  Exponent operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, Exponent e);
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Precondition: divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }
  std::size_t hash() const;

  std::string to_string(const VariableSet& vars) const;

 private:
  std::array<Exponent, kMaxVars> e_{};
  std::uint32_t deg_ = 0;
};

/// Storage order: total degree descending, then lexicographic with
/// variable 0 largest. Used for canonical printing and term maps.
bool storage_less(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// All monomials of the given total degree in the listed variables,
/// in storage order.
std::vector<Monomial> monomials_of_degree(const std::vector<std::size_t>& vars, unsigned d);

}  // namespace isbv
