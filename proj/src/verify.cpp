#include "isbv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "isbv/cache.hpp"
#include "isbv/ffenum.hpp"
#include "isbv/groebner.hpp"
#include "isbv/parser.hpp"

namespace isbv {

namespace {

const Domain kQ = Domain::rationals();
constexpr std::size_t kWitnessLimit = 8;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

template <class F>
CheckResult timed(const std::string& name, const LocalModel& m, F&& body) {
  CheckResult r;
  r.name = name;
  r.model = m.name();
  auto t0 = Clock::now();
  try {
    body(r);
  } catch (const BudgetExceeded& e) {
    r.status = CheckStatus::Skipped;
    r.witness["reason"] = "budget";
    r.witness["steps"] = e.steps();
    r.witness["budget"] = e.budget();
  }
  r.millis = since(t0);
  return r;
}

void not_applicable(CheckResult& r, const std::string& why) {
  r.status = CheckStatus::Skipped;
  r.witness["reason"] = "not applicable";
  r.witness["detail"] = why;
}

std::string str(const Rational& q) { return q.get_str(); }

std::vector<std::size_t> flatten(const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

Monomial restrict(const Monomial& m, const std::vector<std::size_t>& vars) {
  Monomial out;
  for (auto v : vars)
    if (m[v]) out.set(v, m[v]);
  return out;
}

std::string point_text(const VarsPtr& v, const std::vector<std::size_t>& base,
                       const std::vector<std::vector<std::size_t>>& blocks, const std::vector<std::uint32_t>& c) {
  std::ostringstream out;
  for (auto b : base) out << v->name(b) << '=' << c[b] << ' ';
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    out << '(';
    for (std::size_t j = 0; j < blocks[k].size(); ++j) out << (j ? ":" : "") << c[blocks[k][j]];
    out << ')';
  }
  return out.str();
}

Rational constant_value(const std::string& text, const VarsPtr& v, const std::string& what) {
  QPoly p = parse_poly(text, v);
  if (!p.is_constant()) throw std::invalid_argument(what + " '" + text + "' is not a constant");
  return p.constant_term();
}

std::uint32_t residue(const Rational& q, std::uint32_t p) { return static_cast<std::uint32_t>(reduce_mod(q, p).value()); }

QPoly determinant(const Matrix<QPoly>& a, const VarsPtr& v) {
  const std::size_t n = a.rows();
  if (n == 0) return QPoly::from_int(v, kQ, 1);
  if (n > 20) throw std::invalid_argument("determinant: matrix too large");
  std::vector<QPoly> dp(std::size_t{1} << n, QPoly(v, kQ));
  dp[0] = QPoly::from_int(v, kQ, 1);
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask].is_zero()) continue;
    const std::size_t r = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (r >= n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1 || a.at(r, j).is_zero()) continue;
      const bool odd = __builtin_popcountll(mask >> j) & 1;
      QPoly term = dp[mask] * a.at(r, j);
      dp[mask | (std::size_t{1} << j)] += odd ? -term : term;
    }
  }
  return dp.back();
}

Matrix<QPoly> jacobian(const std::vector<QPoly>& eqs, const std::vector<std::size_t>& cols,
                       const PolyMap<Rational>* at) {
  const VarsPtr& v = eqs.at(0).vars();
  Matrix<QPoly> j(eqs.size(), cols.size(), QPoly(at ? at->target : v, kQ));
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      QPoly d = eqs[i].derivative(cols[c]);
      j.at(i, c) = at ? substitute(d, *at) : d;
    }
  return j;
}

VarsPtr with_param(const VarsPtr& v, const std::string& param) {
  std::vector<std::string> groups = v->groups();
  if (!param.empty()) groups[v->require(param)] = "param";
  return VariableSet::make(v->names(), groups);
}

/// Chart point as a ring map: chart variables -> 1, listed coordinates ->
/// their expressions, parameters -> themselves, everything else -> 0.
PolyMap<Rational> point_map(const VarsPtr& v, const Chart& chart, const ChartPoint<Rational>& pt,
                            const std::string& param) {
  PolyMap<Rational> m{v, v, {}};
  for (std::size_t i = 0; i < v->size(); ++i) {
    const std::string& n = v->name(i);
    if (std::find(chart.unit_vars.begin(), chart.unit_vars.end(), n) != chart.unit_vars.end())
      m.images.push_back(QPoly::from_int(v, kQ, 1));
    else if (pt.coords.count(n))
      m.images.push_back(pt.coords.at(n));
    else if (n == param)
      m.images.push_back(QPoly::var(v, kQ, i));
    else
      m.images.push_back(QPoly(v, kQ));
  }
  return m;
}

Json poly_list(const std::vector<QPoly>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::vector<std::size_t> non_chart(const VarsPtr& v, const Chart& chart) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v->size(); ++i)
    if (std::find(chart.unit_vars.begin(), chart.unit_vars.end(), v->name(i)) == chart.unit_vars.end()) out.push_back(i);
  return out;
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"relations", "span",       "freeness", "flatness",
                                              "singular",  "identities", "fibers"};
  return names;
}

bool is_check_name(const std::string& name) {
  const auto& n = check_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<std::string> applicable_checks(const LocalModel& m) {
  std::vector<std::string> out;
  const auto& c = m.claims();
  if (m.has_parametrization()) {
    out.push_back("relations");
    out.push_back("span");
  }
  if (c.freeness) out.push_back("freeness");
  if (!m.spec().blocks.empty() && !m.equations().empty()) out.push_back("flatness");
  if (!c.singularities.empty()) out.push_back("singular");
  if (!c.identities.empty()) out.push_back("identities");
  for (const auto& f : c.fibers)
    if (!f.count.empty() && !f.generic()) {
      out.push_back("fibers");
      break;
    }
  return out;
}

// ---------------------------------------------------------------- relations

CheckResult check_relations(const LocalModel& m) {
  return timed("relations", m, [&](CheckResult& r) {
    if (!m.has_parametrization()) return not_applicable(r, "model has no sections");
    const auto& rows = m.spec().row_numbers;
    std::size_t vanish = 0;
    Json bad = Json::array();
    for (std::size_t i = 0; i < m.equations().size(); ++i) {
      QPoly rem = substitute(m.equations()[i], m.parametrization());
      if (rem.is_zero()) {
        ++vanish;
        continue;
      }
      if (!r.witness.contains("first_failure")) r.witness["first_failure"] = {{"row", rows[i]}, {"remainder", rem.to_string()}};
      bad.push_back(rows[i]);
    }
    r.witness["rows"] = m.equations().size();
    r.witness["vanishing"] = vanish;
    if (!bad.empty()) r.witness["nonvanishing_rows"] = bad;
    r.status = bad.empty() ? CheckStatus::Pass : CheckStatus::Fail;
  });
}

// ----------------------------------------------------------- relation space

RelationSpace relation_space(const LocalModel& m, unsigned degree) {
  if (!m.has_parametrization()) throw std::invalid_argument("model " + m.name() + " has no sections");
  const auto& P = m.parametrization();
  const VarsPtr& mv = m.vars();
  const VarsPtr& sv = P.target;
  RelationSpace rs;
  rs.degree = degree;
  rs.monomials = monomials_of_degree(flatten(m.block_indices()), degree);

  const auto& descent = m.spec().descent;
  const auto base = mv->group_members("base");
  const std::size_t nbits = descent.empty() ? base.size() : descent.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << nbits); ++mask) {
    Monomial b;
    for (std::size_t j = 0; j < nbits; ++j)
      if (mask >> j & 1) {
        if (descent.empty())
          b.set(base[j], 1);
        else
          b.set(mv->require(descent[j].from), static_cast<Monomial::Exponent>(descent[j].power));
      }
    rs.base_monomials.push_back(b);
  }
  const std::size_t nb = rs.base_monomials.size();

  auto to_sring = [&](const Monomial& b) {
    Monomial out;
    for (auto i : base)
      if (b[i]) out.set(sv->require(mv->name(i)), b[i]);
    return out;
  };

  std::vector<QPoly> images;
  for (const auto& q : rs.monomials)
    images.push_back(substitute(QPoly::monomial(mv, kQ, q, Rational(1)), P));

  // Linear conditions over Q.
  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(rs.unknowns());
  for (std::size_t qi = 0; qi < images.size(); ++qi)
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const Monomial bs = to_sring(rs.base_monomials[bi]);
      for (const auto& t : images[qi].terms()) {
        const Monomial key = t.mono * bs;
        auto it = row_of.try_emplace(key, row_of.size()).first;
        cols[qi * nb + bi].emplace_back(it->second, t.coeff);
      }
    }
  rs.system = Matrix<Rational>(row_of.size(), rs.unknowns(), Rational(0));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [row, val] : cols[c]) rs.system.at(row, c) += val;
  rs.nullspace = nullspace(rs.system);

  // Rank over Q(base) of the images in the fiber monomial basis.
  const auto sbase = sv->group_members("base");
  std::vector<std::size_t> sfiber;
  for (std::size_t i = 0; i < sv->size(); ++i)
    if (sv->group(i) != "base") sfiber.push_back(i);
  std::map<std::pair<std::size_t, std::size_t>, QPoly> entries;
  std::unordered_map<Monomial, std::size_t, MonomialHash> frow;
  for (std::size_t qi = 0; qi < images.size(); ++qi)
    for (const auto& t : images[qi].terms()) {
      const std::size_t row = frow.try_emplace(restrict(t.mono, sfiber), frow.size()).first->second;
      auto [it, fresh] = entries.try_emplace({row, qi}, QPoly(sv, kQ));
      it->second += QPoly::monomial(sv, kQ, restrict(t.mono, sbase), t.coeff);
    }
  Matrix<QPoly> g(frow.size(), images.size(), QPoly(sv, kQ));
  for (auto& [rc, p] : entries) g.at(rc.first, rc.second) = p;
  rs.image_dim = generic_rank(g);
  rs.generic_dim = rs.monomials.size() - rs.image_dim;
  return rs;
}

std::optional<std::vector<Rational>> relation_vector(const LocalModel& m, const RelationSpace& rs, const QPoly& f) {
  const auto base = m.vars()->group_members("base");
  const auto coords = flatten(m.block_indices());
  const std::size_t nb = rs.base_monomials.size();
  std::vector<Rational> v(rs.unknowns(), Rational(0));
  for (const auto& t : f.terms()) {
    const Monomial q = restrict(t.mono, coords), b = restrict(t.mono, base);
    auto qi = std::find(rs.monomials.begin(), rs.monomials.end(), q);
    auto bi = std::find(rs.base_monomials.begin(), rs.base_monomials.end(), b);
    if (qi == rs.monomials.end() || bi == rs.base_monomials.end()) return std::nullopt;
    v[static_cast<std::size_t>(qi - rs.monomials.begin()) * nb + static_cast<std::size_t>(bi - rs.base_monomials.begin())] +=
        t.coeff;
  }
  return v;
}

QPoly relation_poly(const LocalModel& m, const RelationSpace& rs, const std::vector<Rational>& v) {
  const std::size_t nb = rs.base_monomials.size();
  std::vector<QPoly::Term> terms;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) terms.push_back({rs.monomials[k / nb] * rs.base_monomials[k % nb], v[k]});
  return QPoly::from_terms(m.vars(), kQ, std::move(terms));
}

std::size_t generic_relation_rank(const LocalModel& m, const RelationSpace& rs,
                                  const std::vector<std::vector<Rational>>& vectors) {
  const std::size_t nb = rs.base_monomials.size();
  Matrix<QPoly> g(vectors.size(), rs.monomials.size(), QPoly(m.vars(), kQ));
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t k = 0; k < vectors[i].size(); ++k)
      if (vectors[i][k] != 0) g.at(i, k / nb) += QPoly::monomial(m.vars(), kQ, rs.base_monomials[k % nb], vectors[i][k]);
  return generic_rank(g);
}

CheckResult check_relation_space(const LocalModel& m) {
  return timed("span", m, [&](CheckResult& r) {
    if (!m.has_parametrization()) return not_applicable(r, "model has no sections");
    RelationSpace rs = relation_space(m, 2);
    const auto& labels = m.spec().row_numbers;
    std::vector<std::vector<Rational>> vecs;
    Json outside = Json::array(), not_null = Json::array();
    for (std::size_t i = 0; i < m.equations().size(); ++i) {
      auto v = relation_vector(m, rs, m.equations()[i]);
      if (!v) {
        outside.push_back(labels[i]);
        continue;
      }
      bool zero = true;
      for (std::size_t row = 0; row < rs.system.rows() && zero; ++row) {
        Rational acc = 0;
        for (std::size_t c = 0; c < rs.system.cols(); ++c)
          if ((*v)[c] != 0) acc += rs.system.at(row, c) * (*v)[c];
        zero = acc == 0;
      }
      if (!zero) not_null.push_back(labels[i]);
      vecs.push_back(std::move(*v));
    }
    Matrix<Rational> t(vecs.size(), rs.unknowns(), Rational(0));
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t c = 0; c < rs.unknowns(); ++c) t.at(i, c) = vecs[i][c];
    const std::size_t qrank = rank(t);
    const std::size_t grank = generic_relation_rank(m, rs, vecs);
    const std::size_t n = m.equations().size();

    Json bases = Json::array();
    for (const auto& b : rs.base_monomials) bases.push_back(b.to_string(*m.vars()));
    r.witness["monomials"] = rs.monomials.size();
    r.witness["coefficient_monomials"] = bases;
    r.witness["unknowns"] = rs.unknowns();
    r.witness["conditions"] = rs.system.rows();
    r.witness["rational_nullspace_dim"] = rs.nullspace.size();
    r.witness["section_image_dim"] = rs.image_dim;
    r.witness["generic_dim"] = rs.generic_dim;
    r.witness["table_rows"] = n;
    r.witness["table_rank"] = qrank;
    r.witness["table_generic_rank"] = grank;
    if (!outside.empty()) r.witness["rows_outside_search_space"] = outside;
    if (!not_null.empty()) r.witness["rows_not_in_nullspace"] = not_null;
    if (grank < rs.generic_dim) {
      std::set<std::size_t> have(labels.begin(), labels.end());
      Json missing = Json::array();
      for (std::size_t k = 1; k <= rs.generic_dim; ++k)
        if (!have.count(k)) missing.push_back(k);
      r.witness["missing_rows"] = missing;
    }
    const bool ok = outside.empty() && not_null.empty() && qrank == n && grank == n && rs.generic_dim == n;
    r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  });
}

Derivation derive_relations(const LocalModel& m, unsigned degree) {
  Derivation d{relation_space(m, degree), {}, {}, {}};
  const auto& ns = d.space.nullspace;
  std::vector<std::vector<Rational>> chosen;
  std::size_t have = 0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (have == d.space.generic_dim) {
      d.dependent.push_back(k);
      continue;
    }
    chosen.push_back(ns[k]);
    const std::size_t rk = generic_relation_rank(m, d.space, chosen);
    if (rk > have) {
      have = rk;
      d.independent.push_back(k);
    } else {
      chosen.pop_back();
      d.dependent.push_back(k);
    }
  }
  if (!ns.empty()) {
    Matrix<Rational> basis(d.space.unknowns(), ns.size(), Rational(0));
    for (std::size_t k = 0; k < ns.size(); ++k)
      for (std::size_t c = 0; c < d.space.unknowns(); ++c) basis.at(c, k) = ns[k][c];
    for (const auto& eq : m.equations()) {
      auto v = relation_vector(m, d.space, eq);
      d.table.push_back(v ? solve(basis, *v) : std::nullopt);
    }
  } else {
    d.table.assign(m.equations().size(), std::nullopt);
  }
  return d;
}

std::string format_derivation(const LocalModel& m, const Derivation& d) {
  const auto& rs = d.space;
  std::ostringstream out;
  std::vector<std::string> label(rs.nullspace.size());
  for (std::size_t i = 0; i < d.independent.size(); ++i) label[d.independent[i]] = "R" + std::to_string(i + 1);
  for (std::size_t i = 0; i < d.dependent.size(); ++i) label[d.dependent[i]] = "D" + std::to_string(i + 1);

  out << "model " << m.name() << ", degree " << rs.degree << '\n';
  out << "unknowns: " << rs.unknowns() << " (" << rs.monomials.size() << " monomials x " << rs.base_monomials.size()
      << " coefficient monomials:";
  for (const auto& b : rs.base_monomials) out << ' ' << (b.is_one() ? std::string("1") : b.to_string(*m.vars()));
  out << ")\n";
  out << "constrained relation space over Q: " << rs.nullspace.size() << '\n';
  out << "generic dimension: " << rs.generic_dim << " (" << rs.monomials.size() << " - " << rs.image_dim << ")\n";
  out << "relations (" << d.independent.size() << "):\n";
  for (auto k : d.independent) out << "  " << label[k] << ": " << relation_poly(m, rs, rs.nullspace[k]).to_string() << '\n';
  if (!d.dependent.empty()) {
    out << "generically dependent (" << d.dependent.size() << "):\n";
    for (auto k : d.dependent) out << "  " << label[k] << ": " << relation_poly(m, rs, rs.nullspace[k]).to_string() << '\n';
  }
  out << "table rows:\n";
  const auto& rows = m.spec().row_numbers;
  const auto fiber = flatten(m.block_indices());
  for (std::size_t i = 0; i < d.table.size(); ++i) {
    out << "  row " << rows[i] << " = ";
    if (!d.table[i]) {
      const auto deg = m.equations()[i].block_degree(fiber);
      if (deg && *deg != rs.degree)
        out << "degree " << *deg << ", not compared\n";
      else
        out << "not in the constrained relation space\n";
      continue;
    }
    bool first = true;
    for (std::size_t k = 0; k < d.table[i]->size(); ++k) {
      const Rational& c = (*d.table[i])[k];
      if (c == 0) continue;
      out << (first ? "" : " + ") << "(" << c.get_str() << ")*" << label[k];
      first = false;
    }
    out << (first ? "0" : "") << '\n';
  }
  return out.str();
}

// ----------------------------------------------------------------- freeness

CheckResult check_freeness(const LocalModel& m, const CheckConfig& cfg) {
  return timed("freeness", m, [&](CheckResult& r) {
    if (!m.claims().freeness) return not_applicable(r, "model has no freeness claim");
    const FreenessClaim& claim = *m.claims().freeness;
    const std::size_t rank = claim.expected_rank;
    FreenessRing fr = freeness_ring(m, claim);
    const VarsPtr& v = fr.vars;
    GroebnerOptions gopts;
    gopts.max_reductions = cfg.budget;

    Json replaced = Json::object();
    for (const auto& [coord, name] : fr.replaced) replaced[coord] = name;
    r.witness["replaced"] = replaced;

    // (a) structure over the subring.
    Json closure;
    CheckStatus closure_status = CheckStatus::Fail;
    try {
      const MonomialOrder order = MonomialOrder::block(
          v->size(), {{fr.fiber, MonomialOrder::Kind::GrevLex}, {fr.sub, MonomialOrder::Kind::GrevLex}});
      const auto G = cached_groebner(fr.equations, order, gopts, cfg.cache);
      closure["groebner_size"] = G.size();
      std::vector<Monomial> leads;
      Json bad_lc = Json::array();
      for (const auto& g : G) {
        const Monomial lm = leading_monomial(g, order);
        const Monomial fm = restrict(lm, fr.fiber);
        QPoly lc(v, kQ);
        for (const auto& t : g.terms())
          if (restrict(t.mono, fr.fiber) == fm) lc += QPoly::monomial(v, kQ, restrict(t.mono, fr.sub), t.coeff);
        if (!lc.is_constant() && bad_lc.size() < kWitnessLimit) bad_lc.push_back(lc.to_string());
        leads.push_back(fm);
      }
      auto st = standard_monomials(leads, fr.fiber);
      Json stj = Json::array();
      if (st)
        for (const auto& s : *st) stj.push_back(s.is_one() ? std::string("1") : s.to_string(*v));
      closure["staircase"] = stj;
      if (!bad_lc.empty()) closure["nonconstant_leading_coefficients"] = bad_lc;
      bool ok = bad_lc.empty() && st && st->size() == rank;
      if (ok) {
        auto coords_of = [&](const QPoly& f) {
          std::vector<QPoly> row(rank, QPoly(v, kQ));
          const QPoly nf = normal_form(f, G, order);
          for (const auto& t : nf.terms()) {
            auto it = std::find(st->begin(), st->end(), restrict(t.mono, fr.fiber));
            if (it == st->end())
              throw std::logic_error("normal form leaves the staircase");
            row[static_cast<std::size_t>(it - st->begin())] +=
                QPoly::monomial(v, kQ, restrict(t.mono, fr.sub), t.coeff);
          }
          return row;
        };
        Matrix<QPoly> c(rank, rank, QPoly(v, kQ));
        for (std::size_t i = 0; i < rank; ++i) {
          auto row = coords_of(fr.basis[i]);
          for (std::size_t j = 0; j < rank; ++j) c.at(i, j) = row[j];
        }
        const QPoly det = determinant(c, v);
        closure["determinant"] = det.to_string();
        ok = det.is_constant() && !det.is_zero();
        if (ok) {
          const Rational inv = Rational(1) / det.constant_term();
          std::size_t checked = 0;
          Json fails = Json::array();
          for (auto var : fr.fiber)
            for (std::size_t i = 0; i < rank; ++i) {
              const QPoly prod = QPoly::var(v, kQ, var) * fr.basis[i];
              const auto w = coords_of(prod);
              QPoly combo = -prod;
              for (std::size_t k = 0; k < rank; ++k) {
                Matrix<QPoly> ck = c;
                for (std::size_t j = 0; j < rank; ++j) ck.at(k, j) = w[j];
                combo += determinant(ck, v).scaled(inv) * fr.basis[k];
              }
              ++checked;
              if (!normal_form(combo, G, order).is_zero() && fails.size() < kWitnessLimit)
                fails.push_back(v->name(var) + "*(" + fr.basis[i].to_string() + ")");
            }
          closure["products_checked"] = checked;
          if (!fails.empty()) closure["not_in_span"] = fails;
          ok = fails.empty();
        }
      }
      closure_status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const BudgetExceeded& e) {
      closure_status = CheckStatus::Skipped;
      closure["reason"] = "budget";
      closure["steps"] = e.steps();
      closure["budget"] = e.budget();
    }
    closure["status"] = to_string(closure_status);
    r.witness["closure"] = closure;

    // (b) constant fiber dimension over F_p.
    bool rank_ok = true, any_skipped = false;
    Json scans = Json::array();
    for (auto p : cfg.primes) {
      std::optional<std::size_t> samples;
      if (p != 3) samples = cfg.samples;
      auto scan = specialization_scan(m, claim, p, samples, cfg.seed, cfg.budget);
      Json bad = Json::array();
      std::size_t nbad = 0;
      for (const auto& [pt, dim] : scan.dims) {
        if (dim == std::optional<std::size_t>(rank) || scan.skipped.count(pt)) continue;
        ++nbad;
        if (bad.size() < kWitnessLimit) {
          Json e{{"point", pt}};
          e["dimension"] = dim ? Json(*dim) : Json("infinite");
          bad.push_back(e);
        }
      }
      Json s{{"prime", p}, {"points", scan.dims.size()}, {"mode", scan.sampled ? "sampled" : "exhaustive"}};
      if (scan.sampled) s["seed"] = scan.seed;
      s["defects"] = nbad;
      if (nbad) s["first_defects"] = bad;
      if (!scan.skipped.empty()) s["budget_skipped"] = scan.skipped.size();
      scans.push_back(s);
      rank_ok = rank_ok && nbad == 0;
      any_skipped = any_skipped || !scan.skipped.empty();
    }
    Json subring = Json::array();
    for (auto i : fr.sub) subring.push_back(v->name(i));
    r.witness["subring"] = subring;
    r.witness["expected_rank"] = rank;
    r.witness["specialization"] = scans;
    if (!rank_ok || closure_status == CheckStatus::Fail)
      r.status = CheckStatus::Fail;
    else if (any_skipped || closure_status == CheckStatus::Skipped) {
      r.status = CheckStatus::Skipped;
      r.witness["reason"] = "budget";
    } else
      r.status = CheckStatus::Pass;
  });
}

// ------------------------------------------------------------- singularities

namespace {

struct ClaimOutcome {
  CheckStatus status = CheckStatus::Fail;
  Json witness = Json::object();
};

ClaimOutcome a1_claim(const LocalModel& m, const SingularityClaim& c, const GroebnerOptions& gopts) {
  ClaimOutcome o;
  const VarsPtr pv = with_param(m.descended_vars(), c.parameter);
  std::vector<QPoly> eqs;
  for (const auto& e : m.descended()) eqs.push_back(e.rebase(pv));
  Chart chart{c.chart};
  ChartPoint<Rational> pt;
  for (const auto& [n, e] : c.point) pt.coords[n] = parse_poly(e, pv);
  const auto at = point_map(pv, chart, pt, c.parameter);
  for (const auto& e : eqs)
    if (!substitute(e, at).is_zero()) {
      o.witness["error"] = "the claimed curve is not on the variety";
      return o;
    }
  const std::size_t jr = generic_rank(jacobian(eqs, non_chart(pv, chart), &at));
  o.witness["jacobian_rank"] = jr;
  o.witness["codim"] = m.spec().codim;

  auto lp = local_eliminate(eqs, chart, pt);
  o.witness["local_equations"] = poly_list(lp.reduced);
  auto cone = tangent_cone_at_origin(lp.reduced, gopts);
  o.witness["tangent_cone"] = poly_list(cone);
  std::vector<std::size_t> local;
  for (auto i : lp.remaining_vars)
    if (pv->group(i) != "param") local.push_back(i);
  std::optional<std::size_t> qrank;
  if (cone.size() == 1 && cone[0].block_degree(local) == 2u) qrank = quadratic_rank(cone[0], local);
  o.witness["quadratic_rank"] = qrank ? Json(*qrank) : Json(nullptr);
  const bool ok = jr + 1 == m.spec().codim && qrank && qrank == c.expected_rank;
  o.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return o;
}

ClaimOutcome dinf_claim(const LocalModel& m, const SingularityClaim& c, const GroebnerOptions& gopts) {
  ClaimOutcome o;
  const VarsPtr& dv = m.descended_vars();
  Chart chart{c.chart};
  // Rank drop along the whole line.
  {
    const VarsPtr pv = with_param(dv, c.parameter);
    std::vector<QPoly> eqs;
    for (const auto& e : m.descended()) eqs.push_back(e.rebase(pv));
    ChartPoint<Rational> pt;
    for (const auto& [n, e] : c.point) pt.coords[n] = parse_poly(e, pv);
    const auto at = point_map(pv, chart, pt, c.parameter);
    for (const auto& e : eqs)
      if (!substitute(e, at).is_zero()) {
        o.witness["error"] = "the claimed line is not on the variety";
        return o;
      }
    o.witness["jacobian_rank_on_line"] = generic_rank(jacobian(eqs, non_chart(pv, chart), &at));
    o.witness["codim"] = m.spec().codim;
  }
  // Local equation at the special point of the line.
  ChartPoint<Rational> pt0;
  const std::size_t param = dv->require(c.parameter);
  for (const auto& [n, e] : c.point) pt0.coords[n] = parse_poly(e, dv).specialize({{param, Rational(0)}});
  auto lp = local_eliminate(m.descended(), chart, pt0);
  o.witness["local_equations"] = poly_list(lp.reduced);
  const bool rank_drop = o.witness["jacobian_rank_on_line"].get<std::size_t>() < m.spec().codim;
  if (lp.reduced.empty()) {
    o.witness["error"] = "local elimination leaves no equation";
    return o;
  }
  // Several leftover equations are accepted when they generate a principal
  // ideal; the generator is the smallest of them.
  QPoly f = *std::min_element(lp.reduced.begin(), lp.reduced.end(), [](const QPoly& a, const QPoly& b) {
    return std::pair(a.total_degree(), a.size()) < std::pair(b.total_degree(), b.size());
  });
  if (lp.reduced.size() > 1) {
    if (!ideals_equal(Ideal<Rational>(lp.reduced), Ideal<Rational>({f}), gopts)) {
      o.witness["error"] = "local elimination leaves a non-principal ideal";
      return o;
    }
    o.witness["principal_generator"] = f.to_string();
  }
  const auto& local = lp.remaining_vars;
  const QPoly q2 = f.homogeneous_part(local, 2), c3 = f.homogeneous_part(local, 3);
  o.witness["quadratic_part"] = q2.to_string();
  o.witness["cubic_part"] = c3.to_string();
  if (f.min_degree(local) != 2u) {
    o.witness["error"] = "the local equation does not start in degree 2";
    return o;
  }
  const std::size_t qrank = quadratic_rank(q2, local);
  o.witness["quadratic_rank"] = qrank;

  auto qf = quadratic_form(q2, local);
  Matrix<Rational> gram(local.size(), local.size(), Rational(0));
  for (std::size_t i = 0; i < local.size(); ++i)
    for (std::size_t j = 0; j < local.size(); ++j) {
      if (!qf.gram.at(i, j).is_constant()) {
        o.witness["error"] = "non-constant quadratic part";
        return o;
      }
      gram.at(i, j) = qf.gram.at(i, j).constant_term();
    }
  const auto kernel = nullspace(gram);
  o.witness["kernel_dim"] = kernel.size();
  auto pos = std::find(local.begin(), local.end(), param);
  std::optional<std::size_t> base_dir;
  if (pos != local.end()) {
    const std::size_t pi = static_cast<std::size_t>(pos - local.begin());
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      bool unit = true;
      for (std::size_t i = 0; i < local.size(); ++i) unit = unit && kernel[k][i] == (i == pi ? 1 : 0);
      if (unit) base_dir = k;
    }
  }
  std::optional<std::string> mixed;
  if (base_dir) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < kernel.size(); ++k) names.push_back("k" + std::to_string(k));
    VarsPtr kv = VariableSet::make(names);
    PolyMap<Rational> restrict_map{dv, kv, {}};
    for (std::size_t i = 0; i < dv->size(); ++i) {
      QPoly img(kv, kQ);
      auto it = std::find(local.begin(), local.end(), i);
      if (it != local.end()) {
        const std::size_t li = static_cast<std::size_t>(it - local.begin());
        for (std::size_t k = 0; k < kernel.size(); ++k)
          if (kernel[k][li] != 0) img += QPoly::var(kv, kQ, k).scaled(kernel[k][li]);
      }
      restrict_map.images.push_back(img);
    }
    const QPoly restricted = substitute(c3, restrict_map);
    for (const auto& t : restricted.terms())
      for (std::size_t k = 0; k < kernel.size(); ++k)
        if (k != *base_dir && t.mono[*base_dir] == 1 && t.mono[k] == 2 && t.mono.degree() == 3) {
          Json dir = Json::object();
          for (std::size_t i = 0; i < local.size(); ++i)
            if (kernel[k][i] != 0) dir[dv->name(local[i])] = str(kernel[k][i]);
          o.witness["kernel_direction"] = dir;
          mixed = QPoly::monomial(kv, kQ, t.mono, t.coeff).to_string();
        }
  }
  o.witness["mixed_cubic_term"] = mixed ? Json(*mixed) : Json(nullptr);
  const bool ok = rank_drop && qrank == c.expected_rank && mixed.has_value();
  o.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return o;
}

ClaimOutcome toric_claim(const LocalModel& m, const SingularityClaim& c, const GroebnerOptions& gopts) {
  ClaimOutcome o;
  const VarsPtr& dv = m.descended_vars();
  ChartPoint<Rational> pt;
  for (const auto& [n, e] : c.point) pt.coords[n] = parse_poly(e, dv);
  auto lp = local_eliminate(m.descended(), Chart{c.chart}, pt);
  const QPoly target = parse_poly(c.chart_equation, dv);
  o.witness["local_equations"] = poly_list(lp.reduced);
  o.witness["chart_equation"] = target.to_string();
  const bool eq = !lp.reduced.empty() && ideals_equal(Ideal<Rational>(lp.reduced), Ideal<Rational>({target}), gopts);
  o.witness["ideals_equal"] = eq;
  o.status = eq ? CheckStatus::Pass : CheckStatus::Fail;
  return o;
}

ClaimOutcome smooth_claim(const LocalModel& m, const SingularityClaim& c) {
  ClaimOutcome o;
  const VarsPtr& dv = m.descended_vars();
  const auto& eqs = m.descended();
  std::vector<std::size_t> all(dv->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const std::size_t generic = generic_rank(jacobian(eqs, all, nullptr));
  o.witness["generic_jacobian_rank"] = generic;
  o.witness["codim"] = m.spec().codim;
  std::vector<Rational> point(dv->size(), Rational(0));
  for (const auto& [n, e] : c.witness) point[dv->require(n)] = constant_value(e, dv, "witness coordinate");
  bool on = true;
  for (const auto& e : eqs) on = on && e.evaluate(point) == 0;
  Matrix<Rational> j(eqs.size(), all.size(), Rational(0));
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (auto k : all) j.at(i, k) = eqs[i].derivative(k).evaluate(point);
  const std::size_t wr = rank(j);
  o.witness["witness_on_variety"] = on;
  o.witness["witness_jacobian_rank"] = wr;
  const bool ok = generic == m.spec().codim && on && wr == m.spec().codim;
  o.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return o;
}

}  // namespace

CheckResult check_singularities(const LocalModel& m, const CheckConfig& cfg) {
  return timed("singular", m, [&](CheckResult& r) {
    const auto& claims = m.claims().singularities;
    if (claims.empty()) return not_applicable(r, "model has no singularity claims");
    GroebnerOptions gopts;
    gopts.max_reductions = cfg.budget;
    bool all_pass = true, any_skip = false;
    Json cj = Json::array();
    for (const auto& c : claims) {
      ClaimOutcome o;
      try {
        switch (c.kind) {
          case SingularityKind::A1Transverse: o = a1_claim(m, c, gopts); break;
          case SingularityKind::DInfinity: o = dinf_claim(m, c, gopts); break;
          case SingularityKind::ToricChartIdentity: o = toric_claim(m, c, gopts); break;
          case SingularityKind::SmoothTotalSpace: o = smooth_claim(m, c); break;
        }
      } catch (const BudgetExceeded& e) {
        o.status = CheckStatus::Skipped;
        o.witness = {{"reason", "budget"}, {"steps", e.steps()}, {"budget", e.budget()}};
      }
      Json entry{{"label", c.label}, {"kind", to_string(c.kind)}, {"status", to_string(o.status)}};
      for (auto& [k, val] : o.witness.items()) entry[k] = val;
      cj.push_back(entry);
      all_pass = all_pass && o.status == CheckStatus::Pass;
      any_skip = any_skip || o.status == CheckStatus::Skipped;
    }
    r.witness["claims"] = cj;

    // Every singular F_p-point lies on a claimed locus and every point of a
    // claimed locus is singular.
    const VarsPtr& dv = m.descended_vars();
    const Ambient amb = model_ambient(m);
    bool scans_ok = true;
    Json sj = Json::array();
    for (auto p : cfg.primes) {
      std::vector<std::vector<FpPoly>> loci;
      for (const auto& c : claims) {
        if (c.locus.empty()) continue;
        std::vector<FpPoly> gens;
        for (const auto& g : c.locus) gens.push_back(reduce_mod(parse_poly(g, dv), p));
        loci.push_back(std::move(gens));
      }
      EnumerateOptions eo;
      eo.smooth_rank = m.spec().codim;
      eo.collect_points = true;
      eo.threads = cfg.threads;
      auto scan = enumerate_points(m.descended(), amb, p, eo);
      auto on_locus = [&](const std::vector<std::uint32_t>& c) {
        std::vector<Fp> x;
        for (auto a : c) x.emplace_back(a, p);
        for (const auto& gens : loci) {
          bool all = true;
          for (const auto& g : gens) all = all && g.evaluate(x).value() == 0;
          if (all) return true;
        }
        return false;
      };
      Json off = Json::array(), missed = Json::array();
      std::size_t noff = 0, nmissed = 0;
      for (const auto& s : scan.singular)
        if (!on_locus(s.coords) && noff++ < kWitnessLimit)
          off.push_back(point_text(dv, amb.affine, amb.blocks, s.coords) + " rank " + std::to_string(s.jacobian_rank));
      for (const auto& s : scan.points)
        if (s.jacobian_rank >= m.spec().codim && on_locus(s.coords) && nmissed++ < kWitnessLimit)
          missed.push_back(point_text(dv, amb.affine, amb.blocks, s.coords));
      Json e{{"prime", p},
             {"examined", scan.examined},
             {"ambient", ambient_count(amb, p)},
             {"on_variety", scan.on_variety},
             {"singular", scan.singular.size()},
             {"singular_off_claimed_loci", noff},
             {"smooth_on_claimed_loci", nmissed}};
      if (noff) e["first_off_locus"] = off;
      if (nmissed) e["first_smooth_on_locus"] = missed;
      sj.push_back(e);
      scans_ok = scans_ok && noff == 0 && nmissed == 0 && scan.examined == ambient_count(amb, p);
    }
    r.witness["scans"] = sj;
    if (!scans_ok || (!all_pass && !any_skip))
      r.status = CheckStatus::Fail;
    else
      r.status = all_pass ? CheckStatus::Pass : CheckStatus::Skipped;
    if (!scans_ok) r.status = CheckStatus::Fail;
    for (const auto& c : cj)
      if (c["status"] == "fail") r.status = CheckStatus::Fail;
  });
}

// ----------------------------------------------------------------- flatness

CheckResult check_flatness(const LocalModel& m, const CheckConfig& cfg) {
  return timed("flatness", m, [&](CheckResult& r) {
    if (m.spec().blocks.empty() || m.equations().empty()) return not_applicable(r, "model has no fibers");
    const VarsPtr& dv = m.descended_vars();
    const auto& eqs = m.descended();
    const auto blocks = m.descended_block_indices();
    const auto base = m.descended_base_indices();
    auto values = [&](auto&& piece) {
      std::vector<std::size_t> out;
      for (unsigned d = 1; d <= cfg.dmax; ++d) out.push_back(piece(d));
      return out;
    };
    const auto generic = values([&](unsigned d) { return graded_piece_dim<Rational>(eqs, blocks, d, {}); });
    r.witness["dmax"] = cfg.dmax;
    r.witness["generic"] = generic;
    bool ok = true;

    auto prefix_matches = [&](const std::vector<std::size_t>& claimed, const std::vector<std::size_t>& got) {
      for (std::size_t i = 0; i < claimed.size() && i < got.size(); ++i)
        if (claimed[i] != got[i]) return false;
      return true;
    };
    Json claimed = Json::array();
    for (const auto& fc : m.claims().fibers) {
      if (fc.hilbert.empty()) continue;
      Json e{{"claimed", fc.hilbert}};
      std::vector<std::size_t> got = generic;
      if (!fc.generic()) {
        std::map<std::size_t, Rational> at;
        Json pt = Json::object();
        for (const auto& [n, val] : fc.point) {
          at[dv->require(n)] = constant_value(val, dv, "fiber point coordinate");
          pt[n] = val;
        }
        e["point"] = pt;
        got = values([&](unsigned d) { return graded_piece_dim<Rational>(eqs, blocks, d, at); });
      } else {
        e["point"] = "generic";
      }
      e["computed"] = got;
      const bool good = prefix_matches(fc.hilbert, got) && got == generic;
      e["matches"] = good;
      ok = ok && good;
      claimed.push_back(e);
    }
    r.witness["claims"] = claimed;

    Json scans = Json::array();
    for (auto p : cfg.primes) {
      std::vector<FpPoly> eqp;
      for (const auto& e : eqs) eqp.push_back(reduce_mod(e, p));
      std::uint64_t points = 1;
      for (std::size_t i = 0; i < base.size(); ++i) points *= p;
      std::size_t jumps = 0;
      Json first = Json::array();
      for (std::uint64_t code = 0; code < points; ++code) {
        std::map<std::size_t, Fp> at;
        std::uint64_t c = code;
        Json pt = Json::array();
        for (std::size_t i = base.size(); i-- > 0;) {
          at[base[i]] = Fp(static_cast<std::int64_t>(c % p), p);
          c /= p;
        }
        for (auto b : base) pt.push_back(at.at(b).value());
        const auto got = values([&](unsigned d) { return graded_piece_dim<Fp>(eqp, blocks, d, at); });
        if (got != generic) {
          ++jumps;
          if (first.size() < kWitnessLimit) first.push_back({{"point", pt}, {"values", got}});
        }
      }
      Json e{{"prime", p}, {"base_points", points}, {"jumps", jumps}};
      if (jumps) e["first_jumps"] = first;
      scans.push_back(e);
      ok = ok && jumps == 0;
    }
    r.witness["scans"] = scans;
    r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  });
}

// --------------------------------------------------------------- identities

namespace {

/// q with a == q * b when q is a single term, else nullopt.
std::optional<QPoly> term_ratio(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  const auto& ta = a.terms().front();
  const auto& tb = b.terms().front();
  if (!tb.mono.divides(ta.mono)) return std::nullopt;
  QPoly q = QPoly::monomial(a.vars(), kQ, tb.mono.quotient_of(ta.mono), ta.coeff / tb.coeff);
  if (q * b != a) return std::nullopt;
  return q;
}

}  // namespace

CheckResult check_identities(const LocalModel& m) {
  return timed("identities", m, [&](CheckResult& r) {
    const auto& ids = m.claims().identities;
    if (ids.empty()) return not_applicable(r, "model has no identity claims");
    bool ok = true;
    Json out = Json::array();
    for (const auto& id : ids) {
      std::vector<std::string> names;
      auto add = [&](const std::string& n) {
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
      };
      for (const auto& n : id.domain) add(n);
      for (const auto& mp : id.chain)
        for (const auto& n : mp.source) add(n);
      VarsPtr v = VariableSet::make(names);
      std::vector<PolyMap<Rational>> maps;
      for (const auto& mp : id.chain) {
        PolyMap<Rational> pm = PolyMap<Rational>::identity(v, kQ);
        for (std::size_t i = 0; i < mp.source.size(); ++i) pm.images[v->require(mp.source[i])] = parse_poly(mp.images[i], v);
        maps.push_back(std::move(pm));
      }
      const QPoly scale = parse_poly(id.scale, v);
      std::size_t agree = 0;
      Json mism = Json::array();
      for (std::size_t k = 0; k < id.rhs.size(); ++k) {
        QPoly lhs = parse_poly(id.chain.front().images[k], v);
        for (std::size_t j = 1; j < maps.size(); ++j) lhs = substitute(lhs, maps[j]);
        const QPoly expected = scale * parse_poly(id.rhs[k], v);
        if (lhs == expected) {
          ++agree;
          continue;
        }
        if (mism.size() < kWitnessLimit) {
          Json e{{"component", k}, {"lhs", lhs.to_string()}, {"expected", expected.to_string()}};
          if (auto f = term_ratio(expected, lhs)) e["residual_factor"] = f->to_string();
          mism.push_back(e);
        }
      }
      Json ann = Json::array();
      bool ann_ok = true;
      for (const auto& a : id.annihilated) {
        const QPoly pulled = substitute(parse_poly(a, v), maps.back());
        ann.push_back({{"polynomial", a}, {"pullback", pulled.to_string()}});
        ann_ok = ann_ok && pulled.is_zero();
      }
      Json e{{"label", id.label}, {"components", id.rhs.size()}, {"agree", agree}, {"scale", id.scale}};
      if (!mism.empty()) e["mismatches"] = mism;
      e["annihilated"] = ann;
      out.push_back(e);
      ok = ok && agree == id.rhs.size() && ann_ok;
    }
    r.witness["identities"] = out;
    r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  });
}

// -------------------------------------------------------------- fiber counts

CheckResult check_fiber_counts(const LocalModel& m, const CheckConfig& cfg) {
  return timed("fibers", m, [&](CheckResult& r) {
    const VarsPtr& dv = m.descended_vars();
    const VarsPtr pvar = VariableSet::make({"p"});
    bool ok = true, any = false;
    Json claims = Json::array();
    for (const auto& fc : m.claims().fibers) {
      if (fc.count.empty() || fc.generic()) continue;
      any = true;
      const QPoly form = parse_poly(fc.count, pvar);
      Json pt = Json::object();
      for (const auto& [n, val] : fc.point) pt[n] = val;
      Json per = Json::array();
      for (auto p : cfg.primes) {
        std::map<std::string, std::uint32_t> bp;
        for (const auto& [n, val] : fc.point) bp[n] = residue(constant_value(val, dv, "fiber point coordinate"), p);
        const auto scan = fiber_scan(m, bp, p);
        const Rational expected = form.evaluate({Rational(p)});
        Json e{{"prime", p}, {"enumerated", scan.on_variety}, {"closed_form", str(expected)}};
        bool good = Rational(scan.on_variety) == expected;
        if (auto d = diagonal_fiber_count(m, bp, p)) {
          e["conic_formula"] = *d;
          good = good && *d == scan.on_variety;
        }
        e["matches"] = good;
        ok = ok && good;
        per.push_back(e);
      }
      claims.push_back({{"point", pt}, {"count", fc.count}, {"primes", per}});
    }
    if (!any) return not_applicable(r, "model has no fiber-count claims");
    r.witness["claims"] = claims;

    // Enumeration against the conic formula over every base point.
    const auto base = m.descended_base_indices();
    std::map<std::string, std::uint32_t> origin;
    for (auto b : base) origin[dv->name(b)] = 0;
    if (!base.empty() && cfg.primes.size() && diagonal_fiber_count(m, origin, cfg.primes.front())) {
      Json sweeps = Json::array();
      for (auto p : cfg.primes) {
        std::uint64_t points = 1;
        for (std::size_t i = 0; i < base.size(); ++i) points *= p;
        std::size_t bad = 0;
        Json first = Json::array();
        for (std::uint64_t code = 0; code < points; ++code) {
          std::map<std::string, std::uint32_t> bp;
          std::uint64_t c = code;
          for (std::size_t i = base.size(); i-- > 0;) {
            bp[dv->name(base[i])] = static_cast<std::uint32_t>(c % p);
            c /= p;
          }
          const auto n = fiber_scan(m, bp, p).on_variety;
          const auto d = diagonal_fiber_count(m, bp, p);
          if (!d || *d != n) {
            if (bad++ < kWitnessLimit) {
              Json e{{"point", bp}, {"enumerated", n}};
              e["conic_formula"] = d ? Json(*d) : Json(nullptr);
              first.push_back(e);
            }
          }
        }
        Json e{{"prime", p}, {"base_points", points}, {"mismatches", bad}};
        if (bad) e["first_mismatches"] = first;
        sweeps.push_back(e);
        ok = ok && bad == 0;
      }
      r.witness["base_sweep"] = sweeps;
    }
    r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  });
}

CheckResult run_check(const std::string& name, const LocalModel& m, const CheckConfig& cfg) {
  if (name == "relations") return check_relations(m);
  if (name == "span") return check_relation_space(m);
  if (name == "freeness") return check_freeness(m, cfg);
  if (name == "flatness") return check_flatness(m, cfg);
  if (name == "singular") return check_singularities(m, cfg);
  if (name == "identities") return check_identities(m);
  if (name == "fibers") return check_fiber_counts(m, cfg);
  throw std::invalid_argument("unknown check '" + name + "'");
}

// ---------------------------------------------------------------- mutations

ModelSpec apply_mutation(ModelSpec spec, const std::string& mutation) {
  const auto colon = mutation.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("mutation '" + mutation + "' has no ':'");
  const std::string kind = mutation.substr(0, colon), arg = mutation.substr(colon + 1);
  auto split_eq = [&](const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("mutation '" + mutation + "' needs '='");
    return std::pair{s.substr(0, eq), s.substr(eq + 1)};
  };
  auto to_index = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw std::invalid_argument("mutation '" + mutation + "': bad number '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  if (spec.row_numbers.empty())
    for (std::size_t i = 0; i < spec.equations.size(); ++i) spec.row_numbers.push_back(i + 1);
  auto row_index = [&](std::size_t label) {
    auto it = std::find(spec.row_numbers.begin(), spec.row_numbers.end(), label);
    if (it == spec.row_numbers.end()) throw std::invalid_argument("mutation '" + mutation + "': no row " + std::to_string(label));
    return static_cast<std::size_t>(it - spec.row_numbers.begin());
  };
  if (kind == "drop-row") {
    const std::size_t i = row_index(to_index(arg));
    spec.equations.erase(spec.equations.begin() + static_cast<std::ptrdiff_t>(i));
    spec.row_numbers.erase(spec.row_numbers.begin() + static_cast<std::ptrdiff_t>(i));
  } else if (kind == "equation") {
    auto [n, e] = split_eq(arg);
    spec.equations[row_index(to_index(n))] = e;
  } else if (kind == "swap-sections") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("mutation '" + mutation + "' needs i,j");
    const std::size_t i = to_index(arg.substr(0, comma)), j = to_index(arg.substr(comma + 1));
    if (i >= spec.sections.size() || j >= spec.sections.size() || i == j)
      throw std::invalid_argument("mutation '" + mutation + "': bad section indices");
    std::swap(spec.sections[i], spec.sections[j]);
  } else if (kind == "basis") {
    auto [n, e] = split_eq(arg);
    if (!spec.claims.freeness) throw std::invalid_argument("mutation '" + mutation + "': no freeness claim");
    const std::size_t i = to_index(n);
    if (i >= spec.claims.freeness->basis.size()) throw std::invalid_argument("mutation '" + mutation + "': bad basis index");
    spec.claims.freeness->basis[i] = e;
  } else if (kind == "defined") {
    auto [n, e] = split_eq(arg);
    if (!spec.claims.freeness || !spec.claims.freeness->defined_vars.count(n))
      throw std::invalid_argument("mutation '" + mutation + "': no defined variable " + n);
    spec.claims.freeness->defined_vars[n] = e;
  } else if (kind == "scale") {
    if (spec.claims.identities.empty()) throw std::invalid_argument("mutation '" + mutation + "': no identity claim");
    for (auto& id : spec.claims.identities) id.scale = arg;
  } else {
    throw std::invalid_argument("unknown mutation kind '" + kind + "'");
  }
  return spec;
}

LocalModel mutated_model(const LocalModel& m, const std::vector<std::string>& mutations) {
  ModelSpec s = m.spec();
  for (const auto& mu : mutations) s = apply_mutation(std::move(s), mu);
  return LocalModel(std::move(s), false);
}

}  // namespace isbv
