#include "isbv/order.hpp"

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace isbv {

namespace {
std::vector<std::size_t> iota_vars(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}
}  // namespace

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  return block(nvars, {{iota_vars(nvars), Kind::Lex}});
}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  return block(nvars, {{iota_vars(nvars), Kind::GrevLex}});
}

MonomialOrder MonomialOrder::block(std::size_t nvars, std::vector<Block> blocks) {
  if (nvars > kMaxVars) throw std::invalid_argument("too many variables for a monomial order");
  MonomialOrder o;
  o.nvars_ = nvars;
  std::set<std::size_t> seen;
  for (auto& b : blocks) {
    if (b.vars.empty()) continue;
    for (auto v : b.vars) {
      if (v >= nvars) throw std::invalid_argument("order block refers to a missing variable");
      if (!seen.insert(v).second) throw std::invalid_argument("variable listed in two order blocks");
    }
    o.blocks_.push_back(std::move(b));
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < nvars; ++i)
    if (!seen.count(i)) rest.push_back(i);
  if (!rest.empty()) o.blocks_.push_back({rest, Kind::GrevLex});
  return o;
}

MonomialOrder MonomialOrder::elimination(std::size_t nvars, const std::vector<std::size_t>& drop) {
  std::set<std::size_t> d(drop.begin(), drop.end());
  std::vector<std::size_t> first(d.begin(), d.end()), second;
  for (std::size_t i = 0; i < nvars; ++i)
    if (!d.count(i)) second.push_back(i);
  return block(nvars, {{first, Kind::GrevLex}, {second, Kind::GrevLex}});
}

MonomialOrder MonomialOrder::with_weights(std::vector<std::vector<int>> rows) const {
  MonomialOrder o = *this;
  for (const auto& r : rows)
    if (r.size() != nvars_) throw std::invalid_argument("weight row has wrong length");
  rows.insert(rows.end(), weights_.begin(), weights_.end());
  o.weights_ = std::move(rows);
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& w : weights_) {
    long wa = 0, wb = 0;
    for (std::size_t i = 0; i < nvars_; ++i) {
      wa += static_cast<long>(w[i]) * a[i];
      wb += static_cast<long>(w[i]) * b[i];
    }
    if (wa != wb) return wa < wb ? -1 : 1;
  }
  for (const auto& blk : blocks_) {
    if (blk.kind == Kind::Lex) {
      for (auto v : blk.vars)
        if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
    } else {
      unsigned da = 0, db = 0;
      for (auto v : blk.vars) {
        da += a[v];
        db += b[v];
      }
      if (da != db) return da < db ? -1 : 1;
      for (auto it = blk.vars.rbegin(); it != blk.vars.rend(); ++it)
        if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
    }
  }
  return 0;
}

std::string MonomialOrder::key() const {
  std::ostringstream os;
  os << "n" << nvars_;
  for (const auto& w : weights_) {
    os << "|w";
    for (auto x : w) os << ',' << x;
  }
  for (const auto& b : blocks_) {
    os << '|' << (b.kind == Kind::Lex ? "lex" : "grevlex");
    for (auto v : b.vars) os << ',' << v;
  }
  return os.str();
}

}  // namespace isbv
