#include "isbv/ffenum.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "isbv/groebner.hpp"
#include "isbv/parser.hpp"

namespace isbv {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t projective_count(std::size_t n, std::uint32_t p) { return (ipow(p, static_cast<unsigned>(n)) - 1) / (p - 1); }

// Polynomial with residues and sparse exponent lists, for fast evaluation.
struct Compiled {
  struct Term {
    std::uint64_t coeff;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;  // (variable, exponent)
  };
  std::vector<Term> terms;

  std::uint64_t eval(const std::vector<std::uint32_t>& val, std::uint32_t p) const {
    std::uint64_t acc = 0;
    for (const auto& t : terms) {
      std::uint64_t m = t.coeff;
      for (const auto& [v, e] : t.powers) {
        for (std::uint32_t k = 0; k < e && m; ++k) m = m * val[v] % p;
        if (!m) break;
      }
      acc += m;
    }
    return acc % p;
  }
};

Compiled compile(const FpPoly& f) {
  Compiled c;
  const std::size_t n = f.vars()->size();
  for (const auto& t : f.terms()) {
    Compiled::Term ct{t.coeff.value(), {}};
    for (std::size_t i = 0; i < n; ++i)
      if (t.mono[i]) ct.powers.emplace_back(static_cast<std::uint32_t>(i), t.mono[i]);
    c.terms.push_back(std::move(ct));
  }
  return c;
}

std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> a, std::uint32_t p) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = Fp(static_cast<std::int64_t>(a[r][c]), p).inverse().value();
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (!a[i][c]) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
    }
    ++r;
  }
  return r;
}

class Enumerator {
 public:
  Enumerator(const std::vector<QPoly>& equations, const Ambient& ambient, std::uint32_t p, const EnumerateOptions& opts)
      : p_(p), opts_(opts) {
    if (!is_odd_prime(p)) throw DomainError("enumeration needs an odd prime, got " + std::to_string(p));
    if (equations.empty()) throw std::invalid_argument("enumerate_points: no equations");
    vars_ = equations.front().vars();
    const std::size_t n = vars_->size();
    std::vector<bool> in_ambient(n, false);
    for (auto [v, x] : opts.fixed) {
      if (std::find(ambient.affine.begin(), ambient.affine.end(), v) == ambient.affine.end())
        throw std::invalid_argument("only affine coordinates can be fixed");
      (void)x;
    }
    for (auto v : ambient.affine) {
      in_ambient[v] = true;
      if (!opts.fixed.count(v)) slots_.push_back({v, -1, 0, 0});
    }
    for (std::size_t b = 0; b < ambient.blocks.size(); ++b)
      for (std::size_t j = 0; j < ambient.blocks[b].size(); ++j) {
        in_ambient[ambient.blocks[b][j]] = true;
        slots_.push_back({ambient.blocks[b][j], static_cast<int>(b), j, ambient.blocks[b].size()});
      }
    for (std::size_t i = 0; i < n; ++i)
      if (!in_ambient[i])
        for (const auto& e : equations)
          if (e.involves(i)) throw std::invalid_argument("equation uses " + vars_->name(i) + ", which is not an ambient coordinate");

    std::vector<int> slot_of(n, -1);
    for (std::size_t k = 0; k < slots_.size(); ++k) slot_of[slots_[k].var] = static_cast<int>(k);
    checks_.assign(slots_.size(), {});
    for (const auto& e : equations) {
      FpPoly r = reduce_mod(e, p);
      int depth = -1;
      for (std::size_t i = 0; i < n; ++i)
        if (r.involves(i)) depth = std::max(depth, slot_of[i]);
      Compiled c = compile(r);
      if (depth < 0)
        initial_.push_back(c);
      else
        checks_[static_cast<std::size_t>(depth)].push_back(c);
      if (opts.smooth_rank) {
        std::vector<Compiled> row;
        for (std::size_t i = 0; i < n; ++i)
          if (in_ambient[i]) row.push_back(compile(r.derivative(i)));
        jac_.push_back(std::move(row));
      }
    }
    val_.assign(n, 0);
    for (auto [v, x] : opts.fixed) val_[v] = x % p;

    // Completions of slots k.. when slot k starts a block or continues one.
    tail_.assign(slots_.size() + 1, 1);
    for (std::size_t k = slots_.size(); k-- > 0;) {
      const auto& s = slots_[k];
      if (s.block < 0)
        tail_[k] = p * tail_[k + 1];
      else if (s.offset == 0)
        tail_[k] = projective_count(s.size, p) * tail_[k + s.size];
      else
        tail_[k] = 0;  // not a block start; use rest_count
    }
  }

  std::uint64_t total() const { return tail_[0]; }

  ScanResult run() {
    ScanResult res;
    res.prime = p_;
    for (const auto& c : initial_)
      if (c.eval(val_, p_)) {
        res.examined = total();
        return res;
      }
    if (opts_.threads <= 1 || slots_.empty()) {
      dfs(0, false, res);
      return res;
    }
    // Split on the values of the first slot; merge in value order.
    std::vector<std::uint32_t> firsts = choices(0, false);
    std::vector<ScanResult> parts(firsts.size());
    std::vector<std::thread> pool;
    const unsigned nt = std::min<unsigned>(opts_.threads, static_cast<unsigned>(firsts.size()));
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        Enumerator local = *this;
        for (std::size_t i = t; i < firsts.size(); i += nt) local.branch(0, false, firsts[i], parts[i]);
      });
    for (auto& th : pool) th.join();
    for (auto& part : parts) {
      res.examined += part.examined;
      res.on_variety += part.on_variety;
      for (auto& s : part.singular) res.singular.push_back(std::move(s));
      for (auto& s : part.points) res.points.push_back(std::move(s));
    }
    return res;
  }

 private:
  struct Slot {
    std::size_t var;
    int block;  // -1 for affine
    std::size_t offset, size;
  };

  std::vector<std::uint32_t> choices(std::size_t k, bool seen) const {
    const auto& s = slots_[k];
    std::vector<std::uint32_t> out;
    if (s.block < 0 || seen) {
      for (std::uint32_t x = 0; x < p_; ++x) out.push_back(x);
    } else {
      if (s.offset + 1 < s.size) out.push_back(0);
      out.push_back(1);
    }
    return out;
  }

  // Points over slots k.. given the normalization state of the current block.
  std::uint64_t rest_count(std::size_t k, bool seen) const {
    if (k >= slots_.size()) return 1;
    const auto& s = slots_[k];
    if (s.block < 0 || s.offset == 0) return tail_[k];
    const std::size_t r = s.size - s.offset;
    const std::uint64_t here = seen ? ipow(p_, static_cast<unsigned>(r)) : projective_count(r, p_);
    return here * tail_[k + r];
  }

  void branch(std::size_t k, bool seen, std::uint32_t x, ScanResult& res) {
    const auto& s = slots_[k];
    val_[s.var] = x;
    bool now_seen = s.block >= 0 && (seen || x != 0);
    // the next slot's state: same block continues, otherwise a fresh block
    bool next_seen = (k + 1 < slots_.size() && slots_[k + 1].block == s.block && s.block >= 0) ? now_seen : false;
    for (const auto& c : checks_[k])
      if (c.eval(val_, p_)) {
        res.examined += rest_count(k + 1, next_seen);
        return;
      }
    dfs(k + 1, next_seen, res);
  }

  void dfs(std::size_t k, bool seen, ScanResult& res) {
    if (k == slots_.size()) {
      ++res.examined;
      ++res.on_variety;
      ScanPoint pt{val_, 0};
      if (opts_.smooth_rank) {
        std::vector<std::vector<std::uint64_t>> j;
        for (const auto& row : jac_) {
          std::vector<std::uint64_t> r;
          for (const auto& d : row) r.push_back(d.eval(val_, p_));
          j.push_back(std::move(r));
        }
        pt.jacobian_rank = rank_mod(std::move(j), p_);
        if (pt.jacobian_rank < *opts_.smooth_rank) res.singular.push_back(pt);
      }
      if (opts_.collect_points) res.points.push_back(std::move(pt));
      return;
    }
    for (auto x : choices(k, seen)) branch(k, seen, x, res);
  }

  std::uint32_t p_;
  EnumerateOptions opts_;
  VarsPtr vars_;
  std::vector<Slot> slots_;
  std::vector<Compiled> initial_;
  std::vector<std::vector<Compiled>> checks_;
  std::vector<std::vector<Compiled>> jac_;
  std::vector<std::uint32_t> val_;
  std::vector<std::uint64_t> tail_;
};

}  // namespace

std::uint64_t ambient_count(const Ambient& a, std::uint32_t p) {
  std::uint64_t n = ipow(p, static_cast<unsigned>(a.affine.size()));
  for (const auto& b : a.blocks) n *= projective_count(b.size(), p);
  return n;
}

ScanResult enumerate_points(const std::vector<QPoly>& equations, const Ambient& ambient, std::uint32_t p,
                            const EnumerateOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Enumerator e(equations, ambient, p, opts);
  ScanResult r = e.run();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::size_t jacobian_rank_mod(const std::vector<QPoly>& equations, const std::vector<std::uint32_t>& point,
                              std::uint32_t p) {
  std::vector<std::vector<std::uint64_t>> j;
  for (const auto& e : equations) {
    FpPoly r = reduce_mod(e, p);
    std::vector<std::uint64_t> row;
    for (std::size_t i = 0; i < r.vars()->size(); ++i) row.push_back(compile(r.derivative(i)).eval(point, p));
    j.push_back(std::move(row));
  }
  return rank_mod(std::move(j), p);
}

Ambient model_ambient(const LocalModel& m) { return {m.descended_base_indices(), m.descended_block_indices()}; }

ScanResult smoothness_scan(const LocalModel& m, std::uint32_t p, unsigned threads) {
  EnumerateOptions opts;
  opts.smooth_rank = m.spec().codim;
  opts.threads = threads;
  return enumerate_points(m.descended(), model_ambient(m), p, opts);
}

ScanResult fiber_scan(const LocalModel& m, const std::map<std::string, std::uint32_t>& base_point, std::uint32_t p) {
  EnumerateOptions opts;
  for (const auto& [name, v] : base_point) opts.fixed[m.descended_vars()->require(name)] = v;
  return enumerate_points(m.descended(), model_ambient(m), p, opts);
}

SpecializationScan specialization_scan(const LocalModel& m, const FreenessClaim& claim, std::uint32_t p,
                                       std::optional<std::size_t> samples, std::uint64_t seed, std::uint64_t budget) {
  if (!is_odd_prime(p)) throw DomainError("specialization scan needs an odd prime");
  FreenessRing fr = freeness_ring(m, claim);
  std::vector<FpPoly> eqs;
  for (const auto& e : fr.equations) eqs.push_back(reduce_mod(e, p));
  const std::size_t n = fr.sub.size();
  const std::uint64_t space = ipow(p, static_cast<unsigned>(n));

  SpecializationScan out;
  out.prime = p;
  out.seed = seed;
  std::vector<std::vector<std::uint32_t>> points;
  if (!samples || *samples >= space) {
    for (std::uint64_t code = 0; code < space; ++code) {
      std::vector<std::uint32_t> pt(n);
      std::uint64_t c = code;
      for (std::size_t i = n; i-- > 0;) {
        pt[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      points.push_back(std::move(pt));
    }
  } else {
    out.sampled = true;
    std::mt19937_64 rng(seed);
    std::set<std::vector<std::uint32_t>> seen;
    while (seen.size() < *samples) {
      std::vector<std::uint32_t> pt(n);
      for (auto& x : pt) x = static_cast<std::uint32_t>(rng() % p);
      if (seen.insert(pt).second) points.push_back(pt);
    }
  }

  GroebnerOptions gopts;
  gopts.max_reductions = budget;
  const MonomialOrder order = MonomialOrder::grevlex(fr.vars->size());
  for (const auto& pt : points) {
    std::map<std::size_t, Fp> at;
    for (std::size_t i = 0; i < n; ++i) at[fr.sub[i]] = Fp(pt[i], p);
    std::vector<FpPoly> spec;
    for (const auto& e : eqs) {
      FpPoly s = e.specialize(at);
      if (!s.is_zero()) spec.push_back(std::move(s));
    }
    std::optional<std::size_t> dim;
    try {
      std::vector<Monomial> leads;
      if (spec.empty()) {
        dim = std::nullopt;
      } else {
        for (const auto& g : groebner_basis(spec, order, gopts)) leads.push_back(leading_monomial(g, order));
        if (auto st = standard_monomials(leads, fr.fiber)) dim = st->size();
      }
    } catch (const BudgetExceeded&) {
      dim = std::nullopt;
      out.skipped.insert(pt);
    }
    out.dims[pt] = dim;
  }
  return out;
}

int quadratic_character(std::int64_t a, std::uint32_t p) {
  Fp x(a, p);
  if (x.value() == 0) return 0;
  return x.pow((p - 1) / 2).value() == 1 ? 1 : -1;
}

std::uint64_t diagonal_conic_count(std::int64_t a, std::int64_t b, std::int64_t c, std::uint32_t p) {
  if (!is_odd_prime(p)) throw DomainError("conic count needs an odd prime");
  std::vector<std::int64_t> nz;
  for (auto x : {a, b, c})
    if (Fp(x, p).value() != 0) nz.push_back(x);
  const std::uint64_t P = p;
  switch (nz.size()) {
    case 3: return P + 1;
    case 2: return quadratic_character(-nz[0] * nz[1], p) == 1 ? 2 * P + 1 : 1;
    case 1: return P + 1;
    default: return P * P + P + 1;
  }
}

std::optional<std::uint64_t> diagonal_fiber_count(const LocalModel& m,
                                                  const std::map<std::string, std::uint32_t>& base_point,
                                                  std::uint32_t p) {
  const auto& vars = m.descended_vars();
  const auto blocks = m.descended_block_indices();
  std::map<std::size_t, Rational> at;
  for (const auto& [name, v] : base_point) at[vars->require(name)] = v;
  for (auto b : m.descended_base_indices())
    if (!at.count(b)) return std::nullopt;
  std::vector<int> used(blocks.size(), 0);
  std::uint64_t total = 1;
  for (const auto& e : m.descended()) {
    QPoly f = e.specialize(at);
    std::optional<std::size_t> which;
    for (std::size_t k = 0; k < blocks.size(); ++k)
      for (auto v : blocks[k])
        if (f.involves(v)) {
          if (which && *which != k) return std::nullopt;
          which = k;
        }
    if (!which || blocks[*which].size() != 3 || used[*which]++) return std::nullopt;
    std::int64_t coeff[3] = {0, 0, 0};
    for (const auto& t : f.terms()) {
      std::optional<std::size_t> sq;
      for (std::size_t j = 0; j < 3; ++j)
        if (t.mono[blocks[*which][j]] == 2 && t.mono.degree() == 2) sq = j;
      if (!sq) return std::nullopt;
      coeff[*sq] = static_cast<std::int64_t>(reduce_mod(t.coeff, p).value());
    }
    total *= diagonal_conic_count(coeff[0], coeff[1], coeff[2], p);
  }
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (!used[k]) total *= projective_count(blocks[k].size(), p);
  return total;
}

}  // namespace isbv
