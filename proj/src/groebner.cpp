#include "isbv/groebner.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

namespace isbv {

BudgetExceeded::BudgetExceeded(std::uint64_t steps, std::uint64_t budget)
    : std::runtime_error("Groebner budget exceeded: " + std::to_string(steps) + " S-pair reductions (budget " +
                         std::to_string(budget) + ")"),
      steps_(steps),
      budget_(budget) {}

namespace {

template <class K>
struct OTerm {
  Monomial m;
  K c;
};

template <class K>
using OTerms = std::vector<OTerm<K>>;

std::uint64_t support_mask(const Monomial& m) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (m[i]) mask |= (std::uint64_t{1} << i);
  return mask;
}

template <class K>
OTerms<K> to_ordered(const Poly<K>& f, const MonomialOrder& order) {
  OTerms<K> ts;
  ts.reserve(f.size());
  for (const auto& t : f.terms()) ts.push_back({t.mono, t.coeff});
  std::sort(ts.begin(), ts.end(), [&](const OTerm<K>& a, const OTerm<K>& b) { return order.greater(a.m, b.m); });
  return ts;
}

template <class K>
Poly<K> from_ordered(const VarsPtr& vars, Domain dom, const OTerms<K>& ts) {
  std::vector<typename Poly<K>::Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back({t.m, t.c});
  return Poly<K>::from_terms(vars, dom, std::move(out));
}

// a[from_a..] - c * m * b[from_b..], both sorted descending.
template <class K>
OTerms<K> sub_mul(const OTerms<K>& a, std::size_t from_a, const K& c, const Monomial& m, const OTerms<K>& b,
                  std::size_t from_b, const MonomialOrder& order) {
  OTerms<K> r;
  r.reserve(a.size() - from_a + b.size() - from_b);
  std::size_t i = from_a, j = from_b;
  bool have_bm = j < b.size();
  Monomial bm;
  if (have_bm) bm = b[j].m * m;
  while (i < a.size() && have_bm) {
    int cmp = order.compare(a[i].m, bm);
    if (cmp > 0) {
      r.push_back(a[i++]);
    } else if (cmp < 0) {
      r.push_back({bm, -(c * b[j].c)});
      ++j;
      have_bm = j < b.size();
      if (have_bm) bm = b[j].m * m;
    } else {
      K v = a[i].c - c * b[j].c;
      if (!is_zero(v)) r.push_back({a[i].m, v});
      ++i;
      ++j;
      have_bm = j < b.size();
      if (have_bm) bm = b[j].m * m;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  while (have_bm) {
    r.push_back({bm, -(c * b[j].c)});
    ++j;
    have_bm = j < b.size();
    if (have_bm) bm = b[j].m * m;
  }
  return r;
}

template <class K>
struct Entry {
  OTerms<K> t;
  Monomial lm;
  std::uint64_t mask = 0;
  unsigned sugar = 0;
  bool active = true;
  std::vector<Poly<K>> cof;  // only when tracking
};

template <class K>
class Engine {
 public:
  Engine(const VarsPtr& vars, Domain dom, const MonomialOrder& order, const GroebnerOptions& opts,
         GroebnerStats* stats, std::size_t ngens, bool track)
      : vars_(vars), dom_(dom), order_(order), opts_(opts), stats_(stats), ngens_(ngens), track_(track) {}

  void add_generator(const Poly<K>& g, std::size_t index) {
    Entry<K> e;
    e.t = to_ordered(g, order_);
    e.sugar = g.is_zero() ? 0 : static_cast<unsigned>(g.total_degree());
    if (track_) {
      e.cof.assign(ngens_, Poly<K>(vars_, dom_));
      e.cof[index] = Poly<K>::from_int(vars_, dom_, 1);
    }
    reduce(e, true);
    if (e.t.empty()) return;
    insert(std::move(e));
  }

  void run() {
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (pair_less(pairs_[k], pairs_[best])) best = k;
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (stats_) ++stats_->pairs_considered;
      if (++steps_ > opts_.max_reductions) throw BudgetExceeded(steps_, opts_.max_reductions);
      Entry<K> s = spoly(entries_[pr.i], entries_[pr.j]);
      s.sugar = pr.sugar;
      reduce(s, true);
      if (stats_) ++stats_->reductions;
      if (s.t.empty()) {
        if (stats_) ++stats_->zero_reductions;
        continue;
      }
      insert(std::move(s));
    }
  }

  // Reduced, monic, ascending by leading monomial.
  std::vector<std::size_t> finish() {
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (entries_[k].active) act.push_back(k);
    for (auto k : act) {
      Entry<K>& e = entries_[k];
      // tail-reduce against the other active elements
      std::vector<std::size_t> others;
      for (auto o : act)
        if (o != k) others.push_back(o);
      tail_reduce(e, others);
      make_monic(e);
    }
    std::sort(act.begin(), act.end(),
              [&](std::size_t a, std::size_t b) { return order_.less(entries_[a].lm, entries_[b].lm); });
    return act;
  }

  Poly<K> poly(std::size_t k) const { return from_ordered(vars_, dom_, entries_[k].t); }
  const std::vector<Poly<K>>& cofactors(std::size_t k) const { return entries_[k].cof; }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };

  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = order_.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  void make_monic(Entry<K>& e) {
    if (e.t.empty() || is_one(e.t.front().c)) return;
    K inv = inverse(e.t.front().c);
    for (auto& t : e.t) t.c *= inv;
    if (track_)
      for (auto& c : e.cof) c = c.scaled(inv);
  }

  void set_lead(Entry<K>& e) {
    e.lm = e.t.front().m;
    e.mask = support_mask(e.lm);
  }

  const Entry<K>* find_reducer(const Monomial& m, std::uint64_t mask, const std::vector<std::size_t>* among) const {
    if (among) {
      for (auto k : *among) {
        const auto& g = entries_[k];
        if ((g.mask & ~mask) == 0 && g.lm.divides(m)) return &g;
      }
      return nullptr;
    }
    for (const auto& g : entries_) {
      if (!g.active) continue;
      if ((g.mask & ~mask) == 0 && g.lm.divides(m)) return &g;
    }
    return nullptr;
  }

  void apply(Entry<K>& e, std::size_t pos, const Entry<K>& g, OTerms<K>& prefix) {
    // Cancels e.t[pos] using g; terms before pos are moved into prefix.
    const auto& t = e.t[pos];
    Monomial q = g.lm.quotient_of(t.m);
    K c = t.c / g.t.front().c;
    if (track_)
      for (std::size_t k = 0; k < e.cof.size(); ++k)
        if (!g.cof[k].is_zero()) e.cof[k] = e.cof[k] - g.cof[k].times_monomial(q, c);
    e.sugar = std::max(e.sugar, g.sugar + q.degree());
    (void)prefix;
    e.t = sub_mul(e.t, pos + 1, c, q, g.t, 1, order_);
  }

  // Top-reduces, then (if full) reduces the tail too.
  void reduce(Entry<K>& e, bool full, const std::vector<std::size_t>* among = nullptr) {
    OTerms<K> done;
    while (!e.t.empty()) {
      const auto& lead = e.t.front();
      const Entry<K>* g = find_reducer(lead.m, support_mask(lead.m), among);
      if (g) {
        OTerms<K> dummy;
        apply(e, 0, *g, dummy);
        continue;
      }
      if (!full) break;
      done.push_back(e.t.front());
      e.t.erase(e.t.begin());
    }
    if (full) {
      done.insert(done.end(), e.t.begin(), e.t.end());
      e.t = std::move(done);
    }
    if (!e.t.empty()) {
      set_lead(e);
      make_monic(e);
    }
  }

  void tail_reduce(Entry<K>& e, const std::vector<std::size_t>& among) {
    OTerms<K> head{e.t.front()};
    Entry<K> rest;
    rest.t.assign(e.t.begin() + 1, e.t.end());
    rest.sugar = e.sugar;
    if (track_) rest.cof = e.cof;
    // Reduce the tail; cofactors follow because e = head + rest.
    OTerms<K> done;
    while (!rest.t.empty()) {
      const auto& lead = rest.t.front();
      const Entry<K>* g = find_reducer(lead.m, support_mask(lead.m), &among);
      if (g) {
        OTerms<K> dummy;
        apply(rest, 0, *g, dummy);
        continue;
      }
      done.push_back(rest.t.front());
      rest.t.erase(rest.t.begin());
    }
    head.insert(head.end(), done.begin(), done.end());
    e.t = std::move(head);
    if (track_) e.cof = std::move(rest.cof);
  }

  Entry<K> spoly(const Entry<K>& a, const Entry<K>& b) const {
    Monomial l = a.lm.lcm(b.lm);
    Monomial qa = a.lm.quotient_of(l), qb = b.lm.quotient_of(l);
    K ca = inverse(a.t.front().c), cb = inverse(b.t.front().c);
    Entry<K> s;
    // ca*qa*a - cb*qb*b, leading terms cancel.
    OTerms<K> left;
    left.reserve(a.t.size());
    for (std::size_t k = 1; k < a.t.size(); ++k) left.push_back({a.t[k].m * qa, a.t[k].c * ca});
    s.t = sub_mul(left, 0, cb, qb, b.t, 1, order_);
    if (track_) {
      s.cof.resize(ngens_, Poly<K>(vars_, dom_));
      for (std::size_t k = 0; k < ngens_; ++k)
        s.cof[k] = a.cof[k].times_monomial(qa, ca) - b.cof[k].times_monomial(qb, cb);
    }
    return s;
  }

  void insert(Entry<K> e) {
    set_lead(e);
    entries_.push_back(std::move(e));
    update(entries_.size() - 1);
  }

  void update(std::size_t h) {
    const Monomial hl = entries_[h].lm;
    std::vector<std::size_t> cand;
    for (std::size_t k = 0; k + 1 < entries_.size(); ++k)
      if (entries_[k].active) cand.push_back(k);
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const Monomial l1 = hl.lcm(entries_[cand[a]].lm);
      bool keep = hl.coprime(entries_[cand[a]].lm);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cand.size() && keep; ++b)
          if (hl.lcm(entries_[cand[b]].lm).divides(l1)) keep = false;
        for (std::size_t k : kept)
          if (keep && hl.lcm(entries_[k].lm).divides(l1)) keep = false;
      }
      if (keep) kept.push_back(cand[a]);
    }
    std::vector<Pair> next;
    next.reserve(pairs_.size() + kept.size());
    for (const auto& p : pairs_) {
      if (hl.divides(p.lcm) && hl.lcm(entries_[p.i].lm) != p.lcm && hl.lcm(entries_[p.j].lm) != p.lcm) continue;
      next.push_back(p);
    }
    for (auto g : kept) {
      if (hl.coprime(entries_[g].lm)) continue;
      Monomial l = hl.lcm(entries_[g].lm);
      unsigned sg = std::max(entries_[g].sugar + l.degree() - entries_[g].lm.degree(),
                             entries_[h].sugar + l.degree() - hl.degree());
      next.push_back({g, h, l, sg});
    }
    pairs_ = std::move(next);
    for (std::size_t k = 0; k + 1 < entries_.size(); ++k)
      if (entries_[k].active && hl.divides(entries_[k].lm)) entries_[k].active = false;
  }

  VarsPtr vars_;
  Domain dom_;
  const MonomialOrder& order_;
  GroebnerOptions opts_;
  GroebnerStats* stats_;
  std::size_t ngens_;
  bool track_;
  std::vector<Entry<K>> entries_;
  std::vector<Pair> pairs_;
  std::uint64_t steps_ = 0;
};

template <class K>
void require_nonempty(const std::vector<Poly<K>>& gens) {
  if (gens.empty()) throw std::invalid_argument("Groebner basis of an empty generator list");
  for (const auto& g : gens)
    if (!same_vars(g.vars(), gens[0].vars()) || !(g.domain() == gens[0].domain()))
      throw DomainError("generators over different rings");
}

}  // namespace

template <class K>
Monomial leading_monomial(const Poly<K>& f, const MonomialOrder& order) {
  if (f.is_zero()) throw std::invalid_argument("leading monomial of zero");
  const Monomial* best = &f.terms().front().mono;
  for (const auto& t : f.terms())
    if (order.greater(t.mono, *best)) best = &t.mono;
  return *best;
}

template <class K>
K leading_coefficient(const Poly<K>& f, const MonomialOrder& order) {
  return f.coeff(leading_monomial(f, order));
}

template <class K>
Poly<K> normal_form(const Poly<K>& f, const std::vector<Poly<K>>& basis, const MonomialOrder& order) {
  std::vector<OTerms<K>> bs;
  std::vector<std::uint64_t> masks;
  for (const auto& b : basis) {
    if (b.is_zero()) throw std::invalid_argument("zero polynomial in division basis");
    if (!same_vars(b.vars(), f.vars())) throw DomainError("division basis over a different variable set");
    bs.push_back(to_ordered(b, order));
    masks.push_back(support_mask(bs.back().front().m));
  }
  OTerms<K> p = to_ordered(f, order), done;
  while (!p.empty()) {
    const auto lead = p.front();
    std::uint64_t mk = support_mask(lead.m);
    bool reduced = false;
    for (std::size_t k = 0; k < bs.size(); ++k) {
      const auto& g = bs[k];
      if ((masks[k] & ~mk) != 0 || !g.front().m.divides(lead.m)) continue;
      Monomial q = g.front().m.quotient_of(lead.m);
      p = sub_mul(p, 1, K(lead.c / g.front().c), q, g, 1, order);
      reduced = true;
      break;
    }
    if (!reduced) {
      done.push_back(lead);
      p.erase(p.begin());
    }
  }
  return from_ordered(f.vars(), f.domain(), done);
}

template <class K>
std::vector<Poly<K>> groebner_basis(const std::vector<Poly<K>>& gens, const MonomialOrder& order,
                                    const GroebnerOptions& opts, GroebnerStats* stats) {
  require_nonempty(gens);
  const VarsPtr& vars = gens[0].vars();
  Domain dom = gens[0].domain();
  if (order.nvars() != vars->size()) throw std::invalid_argument("monomial order has the wrong variable count");
  Engine<K> eng(vars, dom, order, opts, stats, gens.size(), false);
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!gens[k].is_zero()) eng.add_generator(gens[k], k);
  eng.run();
  std::vector<Poly<K>> out;
  for (auto k : eng.finish()) out.push_back(eng.poly(k));
  return out;
}

template <class K>
LiftedBasis<K> groebner_basis_lifted(const std::vector<Poly<K>>& gens, const MonomialOrder& order,
                                     const GroebnerOptions& opts) {
  require_nonempty(gens);
  Engine<K> eng(gens[0].vars(), gens[0].domain(), order, opts, nullptr, gens.size(), true);
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!gens[k].is_zero()) eng.add_generator(gens[k], k);
  eng.run();
  LiftedBasis<K> out;
  for (auto k : eng.finish()) {
    out.basis.push_back(eng.poly(k));
    out.cofactors.push_back(eng.cofactors(k));
  }
  return out;
}

template <class K>
Poly<K> s_polynomial(const Poly<K>& f, const Poly<K>& g, const MonomialOrder& order) {
  Monomial lf = leading_monomial(f, order), lg = leading_monomial(g, order);
  Monomial l = lf.lcm(lg);
  return f.times_monomial(lf.quotient_of(l), inverse(f.coeff(lf))) -
         g.times_monomial(lg.quotient_of(l), inverse(g.coeff(lg)));
}

template <class K>
bool is_groebner_basis(const std::vector<Poly<K>>& basis, const MonomialOrder& order) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero()) return false;
  return true;
}

template <class K>
Ideal<K>::Ideal(std::vector<Poly<K>> gens) : gens_(std::move(gens)) {
  if (gens_.empty()) throw std::invalid_argument("ideal needs at least one generator");
  for (const auto& g : gens_)
    if (!same_vars(g.vars(), gens_[0].vars()) || !(g.domain() == gens_[0].domain()))
      throw DomainError("ideal generators over different rings");
}

template <class K>
Ideal<K>::Ideal(const Ideal& o) : gens_(o.gens_) {
  std::shared_lock lock(o.mu_);
  cache_ = o.cache_;
}

template <class K>
Ideal<K>& Ideal<K>::operator=(const Ideal& o) {
  if (this == &o) return *this;
  std::map<std::string, std::shared_ptr<const std::vector<Poly<K>>>> c;
  {
    std::shared_lock lock(o.mu_);
    c = o.cache_;
  }
  std::unique_lock lock(mu_);
  gens_ = o.gens_;
  cache_ = std::move(c);
  return *this;
}

template <class K>
const VarsPtr& Ideal<K>::vars() const {
  return gens_.at(0).vars();
}

template <class K>
Domain Ideal<K>::domain() const {
  return gens_.at(0).domain();
}

template <class K>
const std::vector<Poly<K>>& Ideal<K>::groebner(const MonomialOrder& order, const GroebnerOptions& opts) const {
  const std::string key = order.key();
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  auto basis = std::make_shared<const std::vector<Poly<K>>>(groebner_basis(gens_, order, opts));
  std::unique_lock lock(mu_);
  auto [it, inserted] = cache_.emplace(key, basis);
  return *it->second;
}

template <class K>
void Ideal<K>::seed_cache(const MonomialOrder& order, std::vector<Poly<K>> basis) const {
  std::unique_lock lock(mu_);
  cache_[order.key()] = std::make_shared<const std::vector<Poly<K>>>(std::move(basis));
}

template <class K>
bool Ideal<K>::cached(const MonomialOrder& order) const {
  std::shared_lock lock(mu_);
  return cache_.count(order.key()) > 0;
}

template <class K>
bool ideal_member(const Poly<K>& f, const Ideal<K>& ideal, const MonomialOrder& order, const GroebnerOptions& opts) {
  if (f.is_zero()) return true;
  return normal_form(f, ideal.groebner(order, opts), order).is_zero();
}

template <class K>
Ideal<K> eliminate(const Ideal<K>& ideal, const std::vector<std::size_t>& drop, const GroebnerOptions& opts) {
  const auto n = ideal.vars()->size();
  for (auto d : drop)
    if (d >= n) throw std::invalid_argument("elimination variable out of range");
  MonomialOrder order = MonomialOrder::elimination(n, drop);
  std::vector<Poly<K>> kept;
  for (const auto& g : ideal.groebner(order, opts)) {
    bool clean = std::none_of(drop.begin(), drop.end(), [&](std::size_t v) { return g.involves(v); });
    if (clean) kept.push_back(g);
  }
  if (kept.empty()) kept.push_back(Poly<K>(ideal.vars(), ideal.domain()));
  return Ideal<K>(std::move(kept));
}

template <class K>
Ideal<K> saturate(const Ideal<K>& ideal, const Poly<K>& f, const GroebnerOptions& opts) {
  if (f.is_zero()) throw std::invalid_argument("saturation by the zero polynomial");
  const VarsPtr& vars = ideal.vars();
  std::vector<std::string> names = vars->names(), groups = vars->groups();
  std::string w = "_w";
  while (vars->index_of(w)) w += "_";
  names.push_back(w);
  groups.push_back("aux");
  VarsPtr ext = VariableSet::make(names, groups);
  Domain dom = ideal.domain();
  std::vector<Poly<K>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.rebase(ext));
  Poly<K> wv = Poly<K>::var(ext, dom, names.size() - 1);
  gens.push_back(wv * f.rebase(ext) - Poly<K>::from_int(ext, dom, 1));
  Ideal<K> big(std::move(gens));
  Ideal<K> elim = eliminate(big, {names.size() - 1}, opts);
  std::vector<Poly<K>> back;
  for (const auto& g : elim.generators()) back.push_back(g.rebase(vars));
  return Ideal<K>(std::move(back));
}

template <class K>
bool ideals_equal(const Ideal<K>& a, const Ideal<K>& b, const GroebnerOptions& opts) {
  MonomialOrder order = MonomialOrder::grevlex(a.vars()->size());
  for (const auto& g : b.generators())
    if (!ideal_member(g, a, order, opts)) return false;
  for (const auto& g : a.generators())
    if (!ideal_member(g, b, order, opts)) return false;
  return true;
}

template <class K>
std::vector<Poly<K>> translate_to_origin(const std::vector<Poly<K>>& gens, const Chart& chart,
                                         const ChartPoint<K>& point) {
  if (gens.empty()) return {};
  const VarsPtr& vars = gens[0].vars();
  Domain dom = gens[0].domain();
  PolyMap<K> m = PolyMap<K>::identity(vars, dom);
  for (const auto& c : chart.unit_vars) m.images[vars->require(c)] = Poly<K>::from_int(vars, dom, 1);
  for (const auto& [name, value] : point.coords) {
    std::size_t i = vars->require(name);
    if (std::find(chart.unit_vars.begin(), chart.unit_vars.end(), name) != chart.unit_vars.end())
      throw std::invalid_argument("point assigns chart variable " + name);
    m.images[i] = Poly<K>::var(vars, dom, i) + value.rebase(vars);
  }
  std::vector<Poly<K>> out;
  for (const auto& g : gens) out.push_back(substitute(g, m));
  return out;
}

namespace {
template <class K>
std::vector<std::size_t> local_vars_of(const VarsPtr& vars) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars->size(); ++i)
    if (vars->group(i) != "param") out.push_back(i);
  return out;
}
}  // namespace

template <class K>
std::vector<Poly<K>> tangent_cone_at_origin(const std::vector<Poly<K>>& gens, const GroebnerOptions& opts) {
  std::vector<Poly<K>> nz;
  for (const auto& g : gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) return {};
  const VarsPtr& vars = nz[0].vars();
  Domain dom = nz[0].domain();
  std::vector<std::size_t> local = local_vars_of<K>(vars);
  for (const auto& g : nz)
    if (*g.min_degree(local) == 0) throw std::invalid_argument("point is not on the variety: " + g.to_string());

  std::vector<std::string> names = vars->names(), groups = vars->groups();
  std::string hname = "_h";
  while (vars->index_of(hname)) hname += "_";
  names.push_back(hname);
  groups.push_back("aux");
  VarsPtr ext = VariableSet::make(names, groups);
  const std::size_t h = names.size() - 1;
  const std::size_t n = names.size();

  std::vector<Poly<K>> homog;
  for (const auto& g : nz) {
    unsigned top = 0;
    for (const auto& t : g.terms()) {
      unsigned d = 0;
      for (auto v : local) d += t.mono[v];
      top = std::max(top, d);
    }
    std::vector<typename Poly<K>::Term> ts;
    for (const auto& t : g.terms()) {
      unsigned d = 0;
      for (auto v : local) d += t.mono[v];
      Monomial m = t.mono;
      m.set(h, static_cast<Monomial::Exponent>(top - d));
      ts.push_back({m, t.coeff});
    }
    homog.push_back(Poly<K>::from_terms(ext, dom, std::move(ts)).rebase(ext));
  }
  std::vector<std::size_t> params;
  for (std::size_t i = 0; i < vars->size(); ++i)
    if (vars->group(i) == "param") params.push_back(i);
  std::vector<std::size_t> local_h = local;
  local_h.push_back(h);

  // Saturate by h: grevlex with h last inside the graded block.
  MonomialOrder sat = MonomialOrder::block(n, {{local_h, MonomialOrder::Kind::GrevLex},
                                               {params, MonomialOrder::Kind::GrevLex}});
  std::vector<Poly<K>> saturated;
  for (const auto& g : groebner_basis(homog, sat, opts)) {
    unsigned hp = std::numeric_limits<unsigned>::max();
    for (const auto& t : g.terms()) hp = std::min<unsigned>(hp, t.mono[h]);
    Monomial div = Monomial::variable(h, static_cast<Monomial::Exponent>(hp));
    std::vector<typename Poly<K>::Term> ts;
    for (const auto& t : g.terms()) ts.push_back({div.quotient_of(t.mono), t.coeff});
    saturated.push_back(Poly<K>::from_terms(ext, dom, std::move(ts)));
  }

  std::vector<int> deg_row(n, 0), h_row(n, 0);
  for (auto v : local_h) deg_row[v] = 1;
  h_row[h] = 1;
  MonomialOrder cone = MonomialOrder::block(n, {{local, MonomialOrder::Kind::GrevLex},
                                                {{h}, MonomialOrder::Kind::GrevLex},
                                                {params, MonomialOrder::Kind::GrevLex}})
                           .with_weights({deg_row, h_row});
  std::vector<Poly<K>> out;
  for (const auto& g : groebner_basis(saturated, cone, opts)) {
    Poly<K> deh = g.specialize({{h, FieldTraits<K>::from_int(dom, 1)}}).rebase(vars);
    if (deh.is_zero()) continue;
    Poly<K> low = deh.homogeneous_part(local, *deh.min_degree(local));
    if (std::find(out.begin(), out.end(), low) == out.end()) out.push_back(low);
  }
  return out;
}

template <class K>
std::vector<Poly<K>> tangent_cone(const Ideal<K>& ideal, const Chart& chart, const ChartPoint<K>& point,
                                  const GroebnerOptions& opts) {
  return tangent_cone_at_origin(translate_to_origin(ideal.generators(), chart, point), opts);
}

template <class K>
LocalPresentation<K> local_eliminate_at_origin(const std::vector<Poly<K>>& translated) {
  LocalPresentation<K> lp;
  lp.translated = translated;
  if (translated.empty()) return lp;
  const VarsPtr& vars = translated[0].vars();
  Domain dom = translated[0].domain();
  std::vector<std::size_t> local = local_vars_of<K>(vars);

  struct Eq {
    Poly<K> f;
    std::size_t source;
  };
  std::vector<Eq> eqs;
  for (std::size_t k = 0; k < translated.size(); ++k)
    if (!translated[k].is_zero()) eqs.push_back({translated[k], k});

  std::set<std::size_t> gone;
  for (;;) {
    bool progress = false;
    for (std::size_t e = 0; e < eqs.size() && !progress; ++e) {
      const Poly<K>& f = eqs[e].f;
      for (auto v : local) {
        if (gone.count(v) || !f.involves(v)) continue;
        // v must occur only in the single term c*v with c a nonzero constant.
        const typename Poly<K>::Term* lin = nullptr;
        bool ok = true;
        for (const auto& t : f.terms()) {
          if (!t.mono[v]) continue;
          if (t.mono == Monomial::variable(v) && !lin)
            lin = &t;
          else
            ok = false;
        }
        if (!ok || !lin) continue;
        K c = lin->coeff;
        Poly<K> value = (Poly<K>::monomial(vars, dom, lin->mono, c) - f).scaled(inverse(c));
        std::size_t src = eqs[e].source;
        eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(e));
        std::vector<Eq> next;
        for (auto& q : eqs) {
          Poly<K> s = substitute_var(q.f, v, value);
          if (!s.is_zero()) next.push_back({std::move(s), q.source});
        }
        eqs = std::move(next);
        lp.trail.push_back({v, value, src});
        gone.insert(v);
        progress = true;
        break;
      }
    }
    if (!progress) break;
  }
  for (auto& q : eqs) lp.reduced.push_back(q.f);
  for (auto v : local)
    if (!gone.count(v)) lp.remaining_vars.push_back(v);
  return lp;
}

template <class K>
LocalPresentation<K> local_eliminate(const std::vector<Poly<K>>& gens, const Chart& chart,
                                     const ChartPoint<K>& point) {
  auto translated = translate_to_origin(gens, chart, point);
  for (const auto& g : translated) {
    const VarsPtr& vars = g.vars();
    if (!g.is_zero() && *g.min_degree(local_vars_of<K>(vars)) == 0)
      throw std::invalid_argument("point is not on the variety: " + g.to_string());
  }
  LocalPresentation<K> lp = local_eliminate_at_origin(translated);
  lp.chart = chart;
  lp.point = point;
  // chart variables are fixed to 1 and are not local coordinates
  if (!gens.empty()) {
    std::vector<std::size_t> rem;
    for (auto v : lp.remaining_vars) {
      const auto& nm = gens[0].vars()->name(v);
      if (std::find(chart.unit_vars.begin(), chart.unit_vars.end(), nm) == chart.unit_vars.end()) rem.push_back(v);
    }
    lp.remaining_vars = std::move(rem);
  }
  return lp;
}

std::optional<std::vector<Monomial>> standard_monomials(const std::vector<Monomial>& leads,
                                                        const std::vector<std::size_t>& vars, std::size_t limit) {
  for (auto v : vars) {
    bool pure = false;
    for (const auto& m : leads)
      pure = pure || (m[v] > 0 && m.degree() == m[v]);
    if (!pure) return std::nullopt;
  }
  auto standard = [&](const Monomial& m) {
    return std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  std::vector<Monomial> out;
  if (!standard(Monomial{})) return out;
  std::unordered_set<Monomial, MonomialHash> seen{Monomial{}};
  std::vector<Monomial> frontier{Monomial{}};
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
      out.push_back(m);
      if (out.size() > limit) return std::nullopt;
      for (auto v : vars) {
        Monomial q = m * Monomial::variable(v);
        if (standard(q) && seen.insert(q).second) next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return storage_less(b, a); });
  return out;
}

#define ISBV_INSTANTIATE(K)                                                                                    \
  template Monomial leading_monomial(const Poly<K>&, const MonomialOrder&);                                    \
  template K leading_coefficient(const Poly<K>&, const MonomialOrder&);                                        \
  template Poly<K> normal_form(const Poly<K>&, const std::vector<Poly<K>>&, const MonomialOrder&);             \
  template std::vector<Poly<K>> groebner_basis(const std::vector<Poly<K>>&, const MonomialOrder&,              \
                                               const GroebnerOptions&, GroebnerStats*);                        \
  template LiftedBasis<K> groebner_basis_lifted(const std::vector<Poly<K>>&, const MonomialOrder&,             \
                                                const GroebnerOptions&);                                       \
  template Poly<K> s_polynomial(const Poly<K>&, const Poly<K>&, const MonomialOrder&);                         \
  template bool is_groebner_basis(const std::vector<Poly<K>>&, const MonomialOrder&);                          \
  template class Ideal<K>;                                                                                     \
  template bool ideal_member(const Poly<K>&, const Ideal<K>&, const MonomialOrder&, const GroebnerOptions&);   \
  template Ideal<K> eliminate(const Ideal<K>&, const std::vector<std::size_t>&, const GroebnerOptions&);       \
  template Ideal<K> saturate(const Ideal<K>&, const Poly<K>&, const GroebnerOptions&);                         \
  template bool ideals_equal(const Ideal<K>&, const Ideal<K>&, const GroebnerOptions&);                        \
  template std::vector<Poly<K>> translate_to_origin(const std::vector<Poly<K>>&, const Chart&,                 \
                                                    const ChartPoint<K>&);                                     \
  template std::vector<Poly<K>> tangent_cone_at_origin(const std::vector<Poly<K>>&, const GroebnerOptions&);   \
  template std::vector<Poly<K>> tangent_cone(const Ideal<K>&, const Chart&, const ChartPoint<K>&,              \
                                             const GroebnerOptions&);                                          \
  template LocalPresentation<K> local_eliminate_at_origin(const std::vector<Poly<K>>&);                        \
  template LocalPresentation<K> local_eliminate(const std::vector<Poly<K>>&, const Chart&, const ChartPoint<K>&);

ISBV_INSTANTIATE(Rational)
ISBV_INSTANTIATE(Fp)

}  // namespace isbv
