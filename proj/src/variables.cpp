#include "isbv/variables.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace isbv {

VariableSet::VariableSet(std::vector<std::string> names, std::vector<std::string> groups)
    : names_(std::move(names)), groups_(std::move(groups)) {
  if (names_.size() > kMaxVars)
    throw std::invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
  if (groups_.empty()) groups_.assign(names_.size(), "");
  if (groups_.size() != names_.size())
    throw std::invalid_argument("group tag count does not match variable count");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name: " + n);
  }
}

std::shared_ptr<const VariableSet> VariableSet::make(std::vector<std::string> names,
                                                     std::vector<std::string> groups) {
  return std::make_shared<const VariableSet>(std::move(names), std::move(groups));
}

std::optional<std::size_t> VariableSet::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t VariableSet::require(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw std::invalid_argument("unknown variable: " + name);
  return *i;
}

std::vector<std::size_t> VariableSet::group_members(const std::string& tag) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < groups_.size(); ++i)
    if (groups_[i] == tag) out.push_back(i);
  return out;
}

bool same_vars(const VarsPtr& a, const VarsPtr& b) {
  return a == b || (a && b && *a == *b);
}

Monomial Monomial::variable(std::size_t i, Exponent e) {
  Monomial m;
  m.set(i, e);
  return m;
}

void Monomial::set(std::size_t i, Exponent e) {
  deg_ = deg_ - e_[i] + e;
  e_[i] = e;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned{e_[i]} + o.e_[i];
    if (s > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
    r.e_[i] = static_cast<Exponent>(s);
  }
  r.deg_ = deg_ + o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<Exponent>(o.e_[i] - e_[i]);
  r.deg_ = o.deg_ - deg_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::max(e_[i], o.e_[i]);
    d += r.e_[i];
  }
  r.deg_ = d;
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::min(e_[i], o.e_[i]);
    d += r.e_[i];
  }
  r.deg_ = d;
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e_[i] && o.e_[i]) return false;
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : e_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Monomial::to_string(const VariableSet& vars) const {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!e_[i]) continue;
    if (!out.empty()) out += '*';
    out += vars.name(i);
    if (e_[i] > 1) out += '^' + std::to_string(e_[i]);
  }
  return out.empty() ? "1" : out;
}

bool storage_less(const Monomial& a, const Monomial& b) {
  // "less" places a after b in the printed order.
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

namespace {
void fill_degree(const std::vector<std::size_t>& vars, std::size_t pos, unsigned left,
                 Monomial& cur, std::vector<Monomial>& out) {
  if (pos + 1 == vars.size()) {
    cur.set(vars[pos], static_cast<Monomial::Exponent>(left));
    out.push_back(cur);
    cur.set(vars[pos], 0);
    return;
  }
  for (int e = static_cast<int>(left); e >= 0; --e) {
    cur.set(vars[pos], static_cast<Monomial::Exponent>(e));
    fill_degree(vars, pos + 1, left - static_cast<unsigned>(e), cur, out);
  }
  cur.set(vars[pos], 0);
}
}  // namespace

std::vector<Monomial> monomials_of_degree(const std::vector<std::size_t>& vars, unsigned d) {
  std::vector<Monomial> out;
  if (vars.empty()) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur;
  fill_degree(vars, 0, d, cur, out);
  return out;
}

}  // namespace isbv
