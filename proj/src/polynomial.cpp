#include "isbv/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace isbv {

namespace {

template <class K>
void sort_and_combine(std::vector<typename Poly<K>::Term>& ts) {
  std::sort(ts.begin(), ts.end(),
            [](const auto& a, const auto& b) { return storage_less(b.mono, a.mono); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < ts.size();) {
    auto acc = ts[i];
    std::size_t j = i + 1;
    while (j < ts.size() && ts[j].mono == acc.mono) {
      acc.coeff += ts[j].coeff;
      ++j;
    }
    if (!is_zero(acc.coeff)) ts[out++] = std::move(acc);
    i = j;
  }
  ts.resize(out);
}

std::string coeff_abs_string(const Rational& c) { return Rational(abs(c)).get_str(); }
std::string coeff_abs_string(const Fp& c) { return std::to_string(c.value()); }

}  // namespace

template <class K>
Poly<K> Poly<K>::constant(VarsPtr vars, Domain dom, const K& c) {
  Poly p(std::move(vars), dom);
  if (!isbv::is_zero(c)) p.terms_.push_back({Monomial{}, c});
  return p;
}

template <class K>
Poly<K> Poly<K>::from_int(VarsPtr vars, Domain dom, long c) {
  return constant(std::move(vars), dom, FieldTraits<K>::from_int(dom, c));
}

template <class K>
Poly<K> Poly<K>::var(VarsPtr vars, Domain dom, std::size_t i) {
  if (i >= vars->size()) throw std::out_of_range("variable index out of range");
  Poly p(std::move(vars), dom);
  p.terms_.push_back({Monomial::variable(i), FieldTraits<K>::from_int(dom, 1)});
  return p;
}

template <class K>
Poly<K> Poly<K>::var(VarsPtr vars, Domain dom, const std::string& name) {
  std::size_t i = vars->require(name);
  return var(std::move(vars), dom, i);
}

template <class K>
Poly<K> Poly<K>::monomial(VarsPtr vars, Domain dom, const Monomial& m, const K& c) {
  Poly p(std::move(vars), dom);
  if (!isbv::is_zero(c)) p.terms_.push_back({m, c});
  return p;
}

template <class K>
Poly<K> Poly<K>::from_terms(VarsPtr vars, Domain dom, std::vector<Term> terms) {
  Poly p(std::move(vars), dom);
  sort_and_combine<K>(terms);
  p.terms_ = std::move(terms);
  return p;
}

template <class K>
K Poly<K>::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return storage_less(x, t.mono);
  });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return zero_coeff();
}

template <class K>
void Poly<K>::require_compatible(const Poly& o) const {
  if (!same_vars(vars_, o.vars_)) throw DomainError("polynomials over different variable sets");
  if (!(dom_ == o.dom_))
    throw DomainError("polynomials over different domains: " + dom_.to_string() + " vs " +
                      o.dom_.to_string());
}

template <class K>
Poly<K> Poly<K>::operator+(const Poly& o) const {
  require_compatible(o);
  Poly r(vars_, dom_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    const auto& a = terms_[i];
    const auto& b = o.terms_[j];
    if (a.mono == b.mono) {
      K c = a.coeff + b.coeff;
      if (!isbv::is_zero(c)) r.terms_.push_back({a.mono, c});
      ++i;
      ++j;
    } else if (storage_less(b.mono, a.mono)) {
      r.terms_.push_back(a);
      ++i;
    } else {
      r.terms_.push_back(b);
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

template <class K>
Poly<K> Poly<K>::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

template <class K>
Poly<K> Poly<K>::operator-(const Poly& o) const {
  return *this + (-o);
}

template <class K>
Poly<K> Poly<K>::operator*(const Poly& o) const {
  require_compatible(o);
  Poly r(vars_, dom_);
  if (is_zero() || o.is_zero()) return r;
  std::unordered_map<Monomial, K, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Monomial m = a.mono * b.mono;
      auto it = acc.find(m);
      if (it == acc.end())
        acc.emplace(m, a.coeff * b.coeff);
      else
        it->second += a.coeff * b.coeff;
    }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!isbv::is_zero(c)) ts.push_back({m, std::move(c)});
  std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return storage_less(y.mono, x.mono); });
  r.terms_ = std::move(ts);
  return r;
}

template <class K>
Poly<K> Poly<K>::scaled(const K& c) const {
  Poly r(vars_, dom_);
  if (isbv::is_zero(c)) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, t.coeff * c});
  return r;
}

template <class K>
Poly<K> Poly<K>::times_monomial(const Monomial& m, const K& c) const {
  Poly r(vars_, dom_);
  if (isbv::is_zero(c)) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the storage order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

template <class K>
Poly<K> Poly<K>::pow(unsigned e) const {
  Poly acc = from_int(vars_, dom_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return acc;
}

template <class K>
bool Poly<K>::operator==(const Poly& o) const {
  if (!same_vars(vars_, o.vars_) || !(dom_ == o.dom_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

template <class K>
Poly<K> Poly<K>::derivative(std::size_t var) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    auto e = t.mono[var];
    if (!e) continue;
    Monomial m = t.mono;
    m.set(var, static_cast<Monomial::Exponent>(e - 1));
    ts.push_back({m, t.coeff * FieldTraits<K>::from_int(dom_, e)});
  }
  return from_terms(vars_, dom_, std::move(ts));
}

template <class K>
K Poly<K>::evaluate(const std::vector<K>& point) const {
  if (point.size() != vars_->size()) throw std::invalid_argument("evaluation point has wrong length");
  K acc = zero_coeff();
  for (const auto& t : terms_) {
    K v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= point[i];
    acc += v;
  }
  return acc;
}

template <class K>
Poly<K> Poly<K>::specialize(const std::map<std::size_t, K>& values) const {
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    K c = t.coeff;
    for (const auto& [i, v] : values) {
      for (unsigned k = 0; k < m[i]; ++k) c *= v;
      m.set(i, 0);
    }
    ts.push_back({m, c});
  }
  return from_terms(vars_, dom_, std::move(ts));
}

template <class K>
bool Poly<K>::involves(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var]) return true;
  return false;
}

namespace {
unsigned degree_in(const Monomial& m, const std::vector<std::size_t>& block) {
  unsigned d = 0;
  for (auto i : block) d += m[i];
  return d;
}
}  // namespace

template <class K>
std::optional<unsigned> Poly<K>::block_degree(const std::vector<std::size_t>& block) const {
  if (terms_.empty()) return 0u;
  unsigned d = degree_in(terms_.front().mono, block);
  for (const auto& t : terms_)
    if (degree_in(t.mono, block) != d) return std::nullopt;
  return d;
}

template <class K>
std::optional<unsigned> Poly<K>::block_degree(const std::string& group_tag) const {
  return block_degree(vars_->group_members(group_tag));
}

template <class K>
Poly<K> Poly<K>::homogeneous_part(const std::vector<std::size_t>& block, unsigned d) const {
  Poly r(vars_, dom_);
  for (const auto& t : terms_)
    if (degree_in(t.mono, block) == d) r.terms_.push_back(t);
  return r;
}

template <class K>
std::optional<unsigned> Poly<K>::min_degree(const std::vector<std::size_t>& block) const {
  std::optional<unsigned> best;
  for (const auto& t : terms_) {
    unsigned d = degree_in(t.mono, block);
    if (!best || d < *best) best = d;
  }
  return best;
}

template <class K>
Poly<K> Poly<K>::rebase(const VarsPtr& target) const {
  if (same_vars(vars_, target)) {
    Poly r = *this;
    r.vars_ = target;
    return r;
  }
  std::vector<std::size_t> where(vars_->size());
  std::vector<bool> used(vars_->size(), false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < vars_->size(); ++i)
      if (t.mono[i]) used[i] = true;
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto j = target->index_of(vars_->name(i));
    if (!j) {
      if (used[i]) throw DomainError("variable " + vars_->name(i) + " missing from target variable set");
      continue;
    }
    where[i] = *j;
  }
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < vars_->size(); ++i)
      if (t.mono[i]) m.set(where[i], t.mono[i]);
    ts.push_back({m, t.coeff});
  }
  return from_terms(target, dom_, std::move(ts));
}

template <class K>
Poly<K> Poly<K>::monic() const {
  if (terms_.empty()) return *this;
  return scaled(inverse(terms_.front().coeff));
}

template <class K>
std::string Poly<K>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = is_negative(t.coeff);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string c = coeff_abs_string(t.coeff);
    if (t.mono.is_one()) {
      os << c;
    } else {
      if (c != "1") os << c << '*';
      os << t.mono.to_string(*vars_);
    }
  }
  return os.str();
}

template <class K>
PolyMap<K> PolyMap<K>::identity(const VarsPtr& vars, Domain dom) {
  PolyMap m{vars, vars, {}};
  for (std::size_t i = 0; i < vars->size(); ++i) m.images.push_back(Poly<K>::var(vars, dom, i));
  return m;
}

template <class K>
Poly<K> substitute(const Poly<K>& f, const PolyMap<K>& m) {
  if (!same_vars(f.vars(), m.source))
    throw DomainError("substitution source variables do not match the polynomial");
  if (m.images.size() != m.source->size()) throw DomainError("substitution map has wrong length");
  Poly<K> result(m.target, f.domain());
  if (f.is_zero()) return result;
  // powers[i][k] = images[i]^k, filled lazily
  std::vector<std::vector<Poly<K>>> powers(m.source->size());
  auto power = [&](std::size_t i, unsigned k) -> const Poly<K>& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(Poly<K>::from_int(m.target, f.domain(), 1));
    while (pw.size() <= k) pw.push_back(pw.back() * m.images[i]);
    return pw[k];
  };
  for (const auto& t : f.terms()) {
    Poly<K> term = Poly<K>::constant(m.target, f.domain(), t.coeff);
    for (std::size_t i = 0; i < m.source->size() && !term.is_zero(); ++i)
      if (t.mono[i]) term = term * power(i, t.mono[i]);
    result += term;
  }
  return result;
}

template <class K>
Poly<K> substitute_var(const Poly<K>& f, std::size_t var, const Poly<K>& g) {
  if (!f.involves(var)) return f;
  PolyMap<K> m = PolyMap<K>::identity(f.vars(), f.domain());
  m.images[var] = g;
  return substitute(f, m);
}

FpPoly reduce_mod(const QPoly& f, std::uint32_t p) {
  Domain d = Domain::prime_field(p);
  std::vector<FpPoly::Term> ts;
  ts.reserve(f.size());
  for (const auto& t : f.terms()) ts.push_back({t.mono, reduce_mod(t.coeff, p)});
  return FpPoly::from_terms(f.vars(), d, std::move(ts));
}

QPoly lift(const FpPoly& f) {
  std::vector<QPoly::Term> ts;
  for (const auto& t : f.terms()) ts.push_back({t.mono, Rational(t.coeff.value())});
  return QPoly::from_terms(f.vars(), Domain::rationals(), std::move(ts));
}

QPoly primitive_part(const QPoly& f) {
  if (f.is_zero()) return f;
  Integer den = 1;
  for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  Integer g = 0;
  for (const auto& t : f.terms()) {
    Integer n = t.coeff.get_num() * (den / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(den, g);
  scale.canonicalize();
  if (sgn(f.terms().front().coeff) < 0) scale = -scale;
  return f.scaled(scale);
}

template class Poly<Rational>;
template class Poly<Fp>;
template struct PolyMap<Rational>;
template struct PolyMap<Fp>;
template Poly<Rational> substitute(const Poly<Rational>&, const PolyMap<Rational>&);
template Poly<Fp> substitute(const Poly<Fp>&, const PolyMap<Fp>&);
template Poly<Rational> substitute_var(const Poly<Rational>&, std::size_t, const Poly<Rational>&);
template Poly<Fp> substitute_var(const Poly<Fp>&, std::size_t, const Poly<Fp>&);

}  // namespace isbv
