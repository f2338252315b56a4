#include "isbv/models.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "isbv/parser.hpp"

namespace isbv {

using json = nlohmann::ordered_json;

std::string to_string(DegenerationType t) {
  switch (t) {
    case DegenerationType::I: return "I";
    case DegenerationType::II: return "II";
    case DegenerationType::III: return "III";
    case DegenerationType::IV: return "IV";
  }
  return "?";
}

DegenerationType degeneration_from_string(const std::string& s) {
  if (s == "I") return DegenerationType::I;
  if (s == "II") return DegenerationType::II;
  if (s == "III") return DegenerationType::III;
  if (s == "IV") return DegenerationType::IV;
  throw ModelError("unknown degeneration type '" + s + "'");
}

std::string describe(DegenerationType t) {
  switch (t) {
    case DegenerationType::I: return "quadric surface with an A1-singularity";
    case DegenerationType::II: return "self-product of a reduced singular conic";
    case DegenerationType::III: return "two Hirzebruch F2 surfaces glued along a section";
    case DegenerationType::IV: return "product of a reduced singular conic and P1";
  }
  return "";
}

std::string to_string(SingularityKind k) {
  switch (k) {
    case SingularityKind::A1Transverse: return "A1-transverse";
    case SingularityKind::DInfinity: return "D-infinity";
    case SingularityKind::ToricChartIdentity: return "toric-chart-identity";
    case SingularityKind::SmoothTotalSpace: return "smooth-total-space";
  }
  return "?";
}

SingularityKind singularity_kind_from_string(const std::string& s) {
  if (s == "A1-transverse") return SingularityKind::A1Transverse;
  if (s == "D-infinity") return SingularityKind::DInfinity;
  if (s == "toric-chart-identity") return SingularityKind::ToricChartIdentity;
  if (s == "smooth-total-space") return SingularityKind::SmoothTotalSpace;
  throw ModelError("unknown singularity kind '" + s + "'");
}

namespace {

VarsPtr make_ring(const std::vector<std::string>& base, const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::string> names, groups;
  for (const auto& b : base) {
    names.push_back(b);
    groups.push_back("base");
  }
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (const auto& v : blocks[k]) {
      names.push_back(v);
      groups.push_back("P" + std::to_string(k));
    }
  try {
    return VariableSet::make(names, groups);
  } catch (const std::exception& e) {
    throw ModelError(std::string("bad variable list: ") + e.what());
  }
}

QPoly parse_in(const std::string& text, const VarsPtr& vars, const std::string& what) {
  try {
    ParseOptions opts;
    opts.allow_rational_literals = true;
    return parse_poly(text, vars, opts);
  } catch (const ParseError& e) {
    throw ModelParseError(what + ": " + e.what());
  }
}

// Applies from^power -> to on every term; fails if an exponent of `from`
// is not a multiple of power.
QPoly descend(const QPoly& f, const VarsPtr& target, const std::vector<Descent>& descent, std::size_t row) {
  std::vector<QPoly::Term> ts;
  const auto& src = *f.vars();
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < src.size(); ++i) {
      unsigned e = t.mono[i];
      if (!e) continue;
      std::string name = src.name(i);
      for (const auto& d : descent)
        if (d.from == name) {
          if (e % d.power)
            throw ModelError("equation " + std::to_string(row) + " does not descend: " + name + "^" +
                                 std::to_string(e) + " is not a power of " + name + "^" + std::to_string(d.power),
                             row);
          e /= d.power;
          name = d.to;
        }
      m.set(target->require(name), static_cast<Monomial::Exponent>(e));
    }
    ts.push_back({m, t.coeff});
  }
  return QPoly::from_terms(target, f.domain(), std::move(ts));
}

bool allowed_pair(DegenerationType a, DegenerationType b) {
  using D = DegenerationType;
  if (a > b) std::swap(a, b);
  return (a == D::I && b == D::II) || (a == D::II && b == D::II) || (a == D::II && b == D::III) ||
         (a == D::II && b == D::IV) || (a == D::IV && b == D::IV);
}

}  // namespace

LocalModel::LocalModel(ModelSpec spec, bool require_vanishing) : spec_(std::move(spec)) {
  if (spec_.name.empty()) throw ModelError("model has no name");
  for (const auto& b : spec_.blocks)
    if (b.size() < 2) throw ModelError("projective block needs at least two coordinates");
  vars_ = make_ring(spec_.base_vars, spec_.blocks);

  if (spec_.row_numbers.empty())
    for (std::size_t i = 0; i < spec_.equations.size(); ++i) spec_.row_numbers.push_back(i + 1);
  if (spec_.row_numbers.size() != spec_.equations.size())
    throw ModelError("row_numbers must have one entry per equation");

  const auto blocks = block_indices();
  for (std::size_t i = 0; i < spec_.equations.size(); ++i) {
    const std::size_t row = spec_.row_numbers[i];
    QPoly f = parse_in(spec_.equations[i], vars_, "equation " + std::to_string(row));
    for (const auto& b : blocks)
      if (!f.block_degree(b)) throw ModelError("equation " + std::to_string(row) + " is not homogeneous in a projective block", row);
    equations_.push_back(std::move(f));
  }

  // Descended ring.
  std::vector<std::string> dbase;
  for (const auto& b : spec_.base_vars) {
    std::string name = b;
    for (const auto& d : spec_.descent) {
      if (d.power == 0) throw ModelError("descent power must be positive");
      if (d.from == name) name = d.to;
    }
    dbase.push_back(name);
  }
  for (const auto& d : spec_.descent)
    if (std::find(spec_.base_vars.begin(), spec_.base_vars.end(), d.from) == spec_.base_vars.end())
      throw ModelError("descent source '" + d.from + "' is not a base variable");
  dvars_ = spec_.descent.empty() ? vars_ : make_ring(dbase, spec_.blocks);
  for (std::size_t i = 0; i < equations_.size(); ++i)
    descended_.push_back(spec_.descent.empty() ? equations_[i]
                                               : descend(equations_[i], dvars_, spec_.descent, spec_.row_numbers[i]));

  // Divisors: distinct coordinates and an allowed pairing of types.
  std::set<std::string> coords;
  std::vector<DegenerationType> types;
  for (const auto& [label, d] : spec_.divisors) {
    if (!dvars_->index_of(d.coordinate) || dvars_->group(*dvars_->index_of(d.coordinate)) != "base")
      throw ModelError("divisor " + label + " uses unknown base coordinate '" + d.coordinate + "'");
    if (!coords.insert(d.coordinate).second)
      throw ModelError("divisors share the base coordinate '" + d.coordinate + "'");
    types.push_back(d.type);
  }
  if (types.size() > 2) throw ModelError("a codimension-2 model has at most two divisors");
  if (types.size() == 2 && !allowed_pair(types[0], types[1]))
    throw ModelError("divisor types " + to_string(types[0]) + " and " + to_string(types[1]) +
                     " do not occur together");

  // Parametrization.
  if (!spec_.sections.empty()) {
    std::size_t ncoords = 0;
    for (const auto& b : spec_.blocks) ncoords += b.size();
    if (spec_.sections.size() != ncoords)
      throw ModelError("expected " + std::to_string(ncoords) + " sections, got " +
                       std::to_string(spec_.sections.size()));
    VarsPtr sring = make_ring(spec_.base_vars, spec_.section_blocks);
    if (sring->size() != spec_.base_vars.size() + spec_.section_vars.size())
      throw ModelError("section_blocks must cover section_vars exactly");
    for (const auto& v : spec_.section_vars)
      if (!sring->index_of(v)) throw ModelError("section variable '" + v + "' is not in a section block");
    PolyMap<Rational> m{vars_, sring, {}};
    for (const auto& b : spec_.base_vars) m.images.push_back(QPoly::var(sring, Domain::rationals(), b));
    std::vector<std::vector<std::size_t>> sblocks;
    for (std::size_t k = 0; k < spec_.section_blocks.size(); ++k) sblocks.push_back(sring->group_members("P" + std::to_string(k)));
    std::optional<std::vector<unsigned>> degs;
    for (std::size_t i = 0; i < spec_.sections.size(); ++i) {
      QPoly s = parse_in(spec_.sections[i], sring, "section " + std::to_string(i));
      std::vector<unsigned> d;
      for (const auto& b : sblocks) {
        auto bd = s.block_degree(b);
        if (!bd || s.is_zero()) throw ModelError("section " + std::to_string(i) + " is not multihomogeneous");
        d.push_back(*bd);
      }
      if (degs && *degs != d) throw ModelError("sections have different multidegrees");
      degs = d;
      m.images.push_back(std::move(s));
    }
    parametrization_ = std::move(m);
    auto bad = require_vanishing ? nonvanishing_rows() : std::vector<std::size_t>{};
    if (!bad.empty()) {
      std::size_t row = spec_.row_numbers[bad.front()];
      throw ModelError("equation " + std::to_string(row) + " does not vanish on the sections", row);
    }
  }

  // Claims must at least parse.
  const auto& c = spec_.claims;
  if (c.freeness) {
    const auto& f = *c.freeness;
    if (f.expected_rank != f.basis.size()) throw ModelError("freeness: expected rank differs from basis length");
    std::vector<std::string> names = vars_->names(), groups = vars_->groups();
    for (const auto& [n, e] : f.defined_vars) {
      parse_in(e, vars_, "defined variable " + n);
      names.push_back(n);
      groups.push_back("defined");
    }
    VarsPtr ext = VariableSet::make(names, groups);
    for (const auto& s : f.subring) ext->require(s);
    for (const auto& b : f.basis) parse_in(b, vars_, "basis element");
  }
  for (const auto& s : c.singularities) {
    for (const auto& v : s.chart) dvars_->require(v);
    for (const auto& [v, e] : s.point) {
      dvars_->require(v);
      parse_in(e, dvars_, "point coordinate " + v);
    }
    if (!s.parameter.empty()) dvars_->require(s.parameter);
    for (const auto& g : s.locus) parse_in(g, dvars_, "locus generator");
    if (s.kind == SingularityKind::ToricChartIdentity) parse_in(s.chart_equation, dvars_, "chart equation");
    for (const auto& [v, e] : s.witness) {
      dvars_->require(v);
      parse_in(e, dvars_, "witness coordinate " + v);
    }
  }
  for (const auto& fc : c.fibers)
    for (const auto& [v, e] : fc.point) {
      dvars_->require(v);
      parse_in(e, dvars_, "fiber point coordinate " + v);
    }
  for (const auto& id : c.identities) {
    if (id.chain.empty()) throw ModelError("identity " + id.label + " has an empty chain");
    if (id.chain.front().images.size() != id.rhs.size())
      throw ModelError("identity " + id.label + ": lhs and rhs lengths differ");
    for (const auto& m : id.chain)
      if (m.images.size() != m.source.size()) throw ModelError("identity " + id.label + ": map length mismatch");
  }
}

std::vector<std::vector<std::size_t>> LocalModel::block_indices() const {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < spec_.blocks.size(); ++k) out.push_back(vars_->group_members("P" + std::to_string(k)));
  return out;
}

std::vector<std::vector<std::size_t>> LocalModel::descended_block_indices() const {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < spec_.blocks.size(); ++k) out.push_back(dvars_->group_members("P" + std::to_string(k)));
  return out;
}

std::vector<std::size_t> LocalModel::descended_base_indices() const { return dvars_->group_members("base"); }

std::vector<std::size_t> LocalModel::nonvanishing_rows() const {
  std::vector<std::size_t> out;
  if (!parametrization_) return out;
  for (std::size_t i = 0; i < equations_.size(); ++i)
    if (!substitute(equations_[i], *parametrization_).is_zero()) out.push_back(i);
  return out;
}

FreenessRing freeness_ring(const LocalModel& m, const FreenessClaim& claim) {
  const VarsPtr& mv = m.vars();
  const Domain Q = Domain::rationals();
  std::vector<QPoly> basis;
  std::set<std::size_t> basis_vars;
  for (const auto& b : claim.basis) {
    basis.push_back(parse_in(b, mv, "basis element"));
    for (std::size_t i = 0; i < mv->size(); ++i)
      if (basis.back().involves(i)) basis_vars.insert(i);
  }

  // Pick the coordinate each defined variable replaces.
  struct Def {
    std::string name;
    QPoly expr;
    std::size_t var;
    Rational coeff;
  };
  std::vector<Def> defs;
  std::set<std::size_t> taken;
  for (const auto& [name, text] : claim.defined_vars) {
    if (mv->index_of(name)) throw ModelError("defined variable '" + name + "' clashes with a model variable");
    QPoly e = parse_in(text, mv, "defined variable " + name);
    std::optional<std::size_t> pick;
    Rational c;
    for (std::size_t i = 0; i < mv->size() && !pick; ++i) {
      if (!e.involves(i) || basis_vars.count(i) || taken.count(i)) continue;
      if (std::find(claim.subring.begin(), claim.subring.end(), mv->name(i)) != claim.subring.end()) continue;
      bool linear_only = true;
      for (const auto& t : e.terms())
        if (t.mono[i] && t.mono != Monomial::variable(i)) linear_only = false;
      if (!linear_only) continue;
      pick = i;
      c = e.coeff(Monomial::variable(i));
    }
    if (!pick) throw ModelError("defined variable '" + name + "' has no coordinate it can replace");
    taken.insert(*pick);
    defs.push_back({name, e, *pick, c});
  }

  std::vector<std::string> names, groups;
  for (const auto& s : claim.subring) {
    bool known = mv->index_of(s).has_value() ||
                 std::any_of(defs.begin(), defs.end(), [&](const Def& d) { return d.name == s; });
    if (!known) throw ModelError("subring variable '" + s + "' is neither a model variable nor defined");
    names.push_back(s);
    groups.push_back("sub");
  }
  for (std::size_t i = 0; i < mv->size(); ++i) {
    if (taken.count(i)) continue;
    if (std::find(names.begin(), names.end(), mv->name(i)) != names.end()) continue;
    names.push_back(mv->name(i));
    groups.push_back("fiber");
  }
  FreenessRing fr;
  try {
    fr.vars = VariableSet::make(names, groups);
  } catch (const std::exception& e) {
    throw ModelError(std::string("freeness ring: ") + e.what());
  }
  fr.sub = fr.vars->group_members("sub");
  fr.fiber = fr.vars->group_members("fiber");

  PolyMap<Rational> to{mv, fr.vars, {}};
  for (std::size_t i = 0; i < mv->size(); ++i)
    to.images.push_back(taken.count(i) ? QPoly(fr.vars, Q) : QPoly::var(fr.vars, Q, mv->name(i)));
  for (const auto& d : defs) {
    // d.name = c*v + rest  =>  v = (d.name - rest) / c
    QPoly rest = d.expr - QPoly::monomial(mv, Q, Monomial::variable(d.var), d.coeff);
    QPoly value = QPoly::var(fr.vars, Q, d.name) - substitute(rest, to);
    to.images[d.var] = value.scaled(1 / d.coeff);
    fr.replaced[mv->name(d.var)] = d.name;
  }
  for (const auto& e : m.equations()) fr.equations.push_back(substitute(e, to));
  for (const auto& b : basis) fr.basis.push_back(substitute(b, to));
  return fr;
}

// ---------------------------------------------------------------------------
// Built-in data.

namespace {

std::vector<std::string> coords(const std::string& stem, int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

ModelSpec i_ii() {
  ModelSpec m;
  m.name = "i-ii";
  m.description = "Type I along x=0 meeting Type II along y=0; x=s^2, y=t^2";
  m.base_vars = {"s", "t"};
  m.descent = {{"s", 2, "x"}, {"t", 2, "y"}};
  m.divisors = {{"D1", {DegenerationType::I, "x"}}, {"D2", {DegenerationType::II, "y"}}};
  m.blocks = {coords("x", 9)};
  m.equations = {
      "x0*x5 - x1*x2",
      "x0*x6 - x1*x4",
      "t^2*x0*x2 - x1*x8",
      "x0*x6 - x2*x3",
      "t^2*x0*x1 - x2*x7",
      "s^2*x1^2 + 4*x0*x7 - x3^2",
      "4*t^2*x0^2 + s^2*x1*x2 - x3*x4",
      "x1*x6 - x3*x5",
      "4*t^2*x0*x1 + s^2*x1*x5 - x3*x6",
      "t^2*x0*x4 - x3*x8",
      "s^2*x2^2 + 4*x0*x8 - x4^2",
      "x2*x6 - x4*x5",
      "4*t^2*x0*x2 + s^2*x2*x5 - x4*x6",
      "t^2*x0*x3 - x4*x7",
      "t^2*x1^2 - x5*x7",
      "t^2*x2^2 - x5*x8",
      "4*t^2*x0*x5 + s^2*x5^2 - x6^2",
      "t^2*x1*x3 - x6*x7",
      "t^2*x2*x4 - x6*x8",
      "s^2*t^2*x0*x5 - t^2*x3*x4 + 4*x7*x8",
  };
  m.section_vars = {"u", "v", "u'", "v'"};
  m.section_blocks = {{"u", "v"}, {"u'", "v'"}};
  m.sections = {
      "s^2*u*v*u'*v'",
      "s*t*u*u'*(u*v' - u'*v)",
      "s*t*v*v'*(u*v' - u'*v)",
      "s^2*t*u*u'*(u*v' + u'*v)",
      "s^2*t*v*v'*(u*v' + u'*v)",
      "t^2*(u*v' - u'*v)^2",
      "s*t^2*(u^2*v'^2 - u'^2*v^2)",
      "s^2*t^2*u^2*u'^2",
      "s^2*t^2*v^2*v'^2",
  };
  m.codim = 6;
  FreenessClaim f;
  f.subring = {"s", "t", "x0", "xt1", "xt5"};
  f.defined_vars = {{"xt1", "x1 + x2"}, {"xt5", "x5 + x7 + x8"}};
  f.basis = {"1", "x2", "x3", "x4", "x6", "x7", "x8", "x3*x7"};
  f.expected_rank = 8;
  m.claims.freeness = f;
  SingularityClaim a1;
  a1.kind = SingularityKind::A1Transverse;
  a1.label = "A1 curve over D2 at (1:0:...:0)";
  a1.chart = {"x0"};
  a1.parameter = "x";
  a1.locus = {"y", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"};
  a1.expected_rank = 4;
  m.claims.singularities = {a1};
  m.claims.fibers = {{{}, {9, 25, 49}, ""}, {{{"x", "0"}, {"y", "0"}}, {9, 25, 49}, ""}};
  return m;
}

ModelSpec iii_ii() {
  ModelSpec m;
  m.name = "iii-ii";
  m.description = "Type III along x=0 meeting Type II along y=0; x=r^4, y=t^2";
  m.base_vars = {"r", "t"};
  m.descent = {{"r", 4, "x"}, {"t", 2, "y"}};
  m.divisors = {{"D2", {DegenerationType::II, "y"}}, {"D3", {DegenerationType::III, "x"}}};
  m.blocks = {coords("x", 9)};
  m.equations = {
      "4*x0*x4 + t^2*x1^2 - x2^2",
      "x0*x5 - 2*x1*x4 + x2*x3",
      "x0*x6 + t^2*x1*x3 - 2*x2*x4",
      "2*x0*x8 + x1*x6 + x2*x5",
      "2*r^4*x0^2 - 2*t^2*x0*x7 + t^2*x1*x5 + x2*x6",
      "x0*x7 - x1*x5 - x3^2",
      "x0*x8 + x2*x5 + 2*x3*x4",
      "x1*x8 + x2*x7 + x3*x5",
      "2*r^4*x0*x1 - t^2*x1*x7 - x2*x8 + x3*x6",
      "r^4*x0^2 - t^2*x3^2 + 4*x4^2",
      "r^4*x0*x1 + x3*x6 + 2*x4*x5",
      "r^4*x0*x2 + t^2*x3*x5 + 2*x4*x6",
      "r^4*x1^2 - x3*x8 + 2*x4*x7",
      "r^4*x0*x3 - r^4*x1*x2 - t^2*x3*x7 + 2*x4*x8",
      "x3*x8 + 2*x4*x7 - x5^2",
      "r^4*x1*x2 - 4*x4*x8 - x5*x6",
      "r^4*x2^2 + 4*t^2*x4*x7 - 2*t^2*x5^2 + x6^2",
      "r^4*x1*x3 + x5*x8 + x6*x7",
      "4*r^4*x1*x4 - r^4*x2*x3 - t^2*x5*x7 - x6*x8",
      "2*r^4*x1*x5 + r^4*x3^2 - t^2*x7^2 + x8^2",
  };
  m.section_vars = {"u", "v", "u'", "v'"};
  m.section_blocks = {{"u", "v"}, {"u'", "v'"}};
  m.sections = {
      "t^2*(-u^2*v'^2 + v^2*u'^2)",
      "r*t*(u*u'*(u*v' + u'*v) + v*v'*(u*v' - u'*v))",
      "r*t^2*(u*u'*(u*v' + u'*v) - v*v'*(u*v' - u'*v))",
      "r^2*t*(u^2*v'^2 + v^2*u'^2)",
      "r^2*t^2*u*u'*v*v'",
      "r^3*t*(u*u'*(u*v' - u'*v) - v*v'*(u*v' + u'*v))",
      "r^3*t^2*(u*u'*(u*v' - u'*v) + v*v'*(u*v' + u'*v))",
      "r^4*(-u^2 + v^2)*(u'^2 + v'^2)",
      "r^4*t*(u^2*u'^2 + v^2*v'^2)",
  };
  m.codim = 6;
  FreenessClaim f;
  f.subring = {"r", "t", "x0", "x1", "x7"};
  f.basis = {"1", "x2", "x3", "x4", "x5", "x6", "x8", "x4*x5"};
  f.expected_rank = 8;
  m.claims.freeness = f;
  SingularityClaim d;
  d.kind = SingularityKind::DInfinity;
  d.label = "D-infinity at (0:0:0:0:0:0:0:1:0) over D2";
  d.chart = {"x7"};
  d.parameter = "x";
  d.locus = {"y", "x0", "x1", "x2", "x3", "x4", "x5", "x6", "x8"};
  d.expected_rank = 3;
  m.claims.singularities = {d};
  m.claims.fibers = {{{}, {9, 25, 49}, ""}, {{{"x", "0"}, {"y", "0"}}, {9, 25, 49}, ""}};
  return m;
}

const std::vector<std::string> kZ = {"z0", "z1", "z2"};
const std::vector<std::string> kZp = {"z'0", "z'1", "z'2"};

ModelSpec ii_ii() {
  ModelSpec m;
  m.name = "ii-ii";
  m.description = "Type II along xy=0: the self-product of x*z0^2 + y*z1^2 - z2^2";
  m.base_vars = {"x", "y"};
  m.divisors = {{"D2", {DegenerationType::II, "x"}}, {"D2'", {DegenerationType::II, "y"}}};
  m.blocks = {kZ, kZp};
  m.equations = {"x*z0^2 + y*z1^2 - z2^2", "x*z'0^2 + y*z'1^2 - z'2^2"};
  m.codim = 2;
  auto curve = [](std::string label, std::vector<std::string> chart, std::string param,
                  std::map<std::string, std::string> point, std::vector<std::string> locus) {
    SingularityClaim c;
    c.kind = SingularityKind::A1Transverse;
    c.label = std::move(label);
    c.chart = std::move(chart);
    c.parameter = std::move(param);
    c.point = std::move(point);
    c.locus = std::move(locus);
    c.expected_rank = 4;
    return c;
  };
  m.claims.singularities = {
      curve("x=z1=z2=z'1=z'2=0", {"z0", "z'0"}, "y", {}, {"x", "z1", "z2", "z'1", "z'2"}),
      curve("y=z0=z2=z'0=z'2=0", {"z1", "z'1"}, "x", {}, {"y", "z0", "z2", "z'0", "z'2"}),
      curve("x=y=z2=z'2=0, [z0:z1]=[z'0:z'1]", {"z0", "z'0"}, "z1", {{"z'1", "z1"}},
            {"x", "y", "z2", "z'2", "z0*z'1 - z1*z'0"}),
      curve("x=y=z2=z'2=0, [z0:z1]=[-z'0:z'1]", {"z0", "z'0"}, "z1", {{"z'1", "-z1"}},
            {"x", "y", "z2", "z'2", "z0*z'1 + z1*z'0"}),
  };
  SingularityClaim t1, t2;
  t1.kind = t2.kind = SingularityKind::ToricChartIdentity;
  t1.label = "toric point on the chart z0=z'0=1";
  t1.chart = {"z0", "z'0"};
  t1.chart_equation = "y*(z1 + z'1)*(z1 - z'1) - (z2 + z'2)*(z2 - z'2)";
  t2.label = "toric point on the chart z1=z'1=1";
  t2.chart = {"z1", "z'1"};
  t2.chart_equation = "x*(z0 + z'0)*(z0 - z'0) - (z2 + z'2)*(z2 - z'2)";
  m.claims.singularities.push_back(t1);
  m.claims.singularities.push_back(t2);
  m.claims.fibers = {{{}, {9, 25, 49}, ""},
                     {{{"x", "1"}, {"y", "1"}}, {}, "(p + 1)^2"},
                     {{{"x", "1"}, {"y", "0"}}, {}, "(2*p + 1)^2"}};
  return m;
}

ModelSpec iv_ii() {
  ModelSpec m;
  m.name = "iv-ii";
  m.description = "Type IV along x=0 meeting Type II along y=0";
  m.base_vars = {"x", "y"};
  m.divisors = {{"D2", {DegenerationType::II, "y"}}, {"D4", {DegenerationType::IV, "x"}}};
  m.blocks = {kZ, kZp};
  m.equations = {"x*z0^2 + y*z1^2 - z2^2", "z'0^2 + y*z'1^2 - z'2^2"};
  m.codim = 2;
  SingularityClaim d;
  d.kind = SingularityKind::DInfinity;
  d.label = "D-infinity at (0:1:0, 0:1:0) over D2";
  d.chart = {"z1", "z'1"};
  d.parameter = "x";
  d.locus = {"y", "z0", "z2", "z'0", "z'2"};
  d.expected_rank = 3;
  m.claims.singularities = {d};
  m.claims.fibers = {{{}, {9, 25, 49}, ""}, {{{"x", "1"}, {"y", "1"}}, {}, "(p + 1)^2"}};
  return m;
}

ModelSpec iv_iv_meet() {
  ModelSpec m;
  m.name = "iv-iv-meet";
  m.description = "Type IV along xy=0, marked divisors meeting: P1 x C0";
  m.base_vars = {"x", "y"};
  m.divisors = {{"D4", {DegenerationType::IV, "x"}}, {"D4'", {DegenerationType::IV, "y"}}};
  m.blocks = {{"w0", "w1"}, kZ};
  m.equations = {"x*z0^2 + y*z1^2 - z2^2"};
  m.codim = 1;
  SingularityClaim s;
  s.kind = SingularityKind::SmoothTotalSpace;
  s.label = "total space smooth";
  s.witness = {{"x", "1"}, {"y", "0"}, {"w0", "1"}, {"w1", "0"}, {"z0", "1"}, {"z1", "0"}, {"z2", "1"}};
  m.claims.singularities = {s};
  m.claims.fibers = {{{}, {6, 15, 28}, ""}, {{{"x", "1"}, {"y", "1"}}, {}, "(p + 1)^2"}};
  return m;
}

ModelSpec iv_iv_disjoint() {
  ModelSpec m;
  m.name = "iv-iv-disjoint";
  m.description = "Type IV along xy=0, marked divisors disjoint";
  m.base_vars = {"x", "y"};
  m.divisors = {{"D4", {DegenerationType::IV, "x"}}, {"D4'", {DegenerationType::IV, "y"}}};
  m.blocks = {kZ, kZp};
  m.equations = {"x*z0^2 + z1^2 - z2^2", "z'0^2 + y*z'1^2 - z'2^2"};
  m.codim = 2;
  SingularityClaim s;
  s.kind = SingularityKind::SmoothTotalSpace;
  s.label = "total space smooth";
  s.witness = {{"x", "0"}, {"y", "0"}, {"z0", "0"}, {"z1", "1"}, {"z2", "1"},
               {"z'0", "1"}, {"z'1", "0"}, {"z'2", "1"}};
  m.claims.singularities = {s};
  m.claims.fibers = {{{}, {9, 25, 49}, ""}, {{{"x", "1"}, {"y", "1"}}, {}, "(p + 1)^2"}};
  return m;
}

ModelSpec segre_d2() {
  ModelSpec m;
  m.name = "segre-d2";
  m.description = "Conic bundle z0*z2 - f*z1^2 over D2 and its Segre image, with f = t^2";
  IdentityClaim id;
  id.label = "Segre o (left x left) = top map";
  id.domain = {"t", "u", "v", "u'", "v'"};
  MapSpec segre{coords("x", 9), {}};
  for (const auto& a : kZ)
    for (const auto& b : kZp) segre.images.push_back(a + "*" + b);
  MapSpec left{{"z0", "z1", "z2", "z'0", "z'1", "z'2"}, {"t*u^2", "u*v", "t*v^2", "t*u'^2", "u'*v'", "t*v'^2"}};
  id.chain = {segre, left};
  id.rhs = {"t^2*u^2*u'^2", "t*u^2*u'*v'", "t^2*u^2*v'^2", "t*u*v*u'^2", "u*v*u'*v'",
            "t*u*v*v'^2",   "t^2*v^2*u'^2", "t*v^2*u'*v'", "t^2*v^2*v'^2"};
  id.scale = "1";
  id.annihilated = {"z0*z2 - t^2*z1^2", "z'0*z'2 - t^2*z'1^2"};
  m.claims.identities = {id};
  return m;
}

}  // namespace

std::vector<ModelSpec> builtin_specs() {
  return {i_ii(), ii_ii(), iii_ii(), iv_ii(), iv_iv_meet(), iv_iv_disjoint(), segre_d2()};
}

Registry Registry::builtin() {
  Registry r;
  for (auto& s : builtin_specs()) r.add(LocalModel(std::move(s)));
  return r;
}

void Registry::add(LocalModel m) {
  if (find(m.name())) throw ModelError("duplicate model name '" + m.name() + "'");
  models_.push_back(std::move(m));
}

const LocalModel* Registry::find(const std::string& name) const {
  for (const auto& m : models_)
    if (m.name() == name) return &m;
  return nullptr;
}

const LocalModel& Registry::get(const std::string& name) const {
  if (auto* m = find(name)) return *m;
  throw ModelError("unknown model '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON.

namespace {

template <class T>
T field(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ModelError(std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw ModelError(std::string("missing field '") + key + "'");
  return field<T>(j, key, T{});
}

using StrMap = std::map<std::string, std::string>;
using StrList = std::vector<std::string>;

}  // namespace

namespace {

ModelSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ModelError("model file must hold a JSON object");
  static const std::set<std::string> known = {"name",     "description",    "base_vars", "descent",
                                              "divisors", "blocks",         "equations", "row_numbers",
                                              "section_vars", "section_blocks", "sections", "codim", "claims"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ModelError("unknown field '" + k + "'");

  ModelSpec m;
  m.name = required<std::string>(j, "name");
  m.description = field<std::string>(j, "description", "");
  m.base_vars = field<StrList>(j, "base_vars", {});
  for (const auto& d : field<json>(j, "descent", json::array()))
    m.descent.push_back({required<std::string>(d, "from"), required<unsigned>(d, "power"), required<std::string>(d, "to")});
  const json divisors = field<json>(j, "divisors", json::object());
  for (const auto& [label, d] : divisors.items())
    m.divisors[label] = {degeneration_from_string(required<std::string>(d, "type")), required<std::string>(d, "coordinate")};
  m.blocks = field<std::vector<StrList>>(j, "blocks", {});
  m.equations = field<StrList>(j, "equations", {});
  m.row_numbers = field<std::vector<std::size_t>>(j, "row_numbers", {});
  m.section_vars = field<StrList>(j, "section_vars", {});
  m.section_blocks = field<std::vector<StrList>>(j, "section_blocks", {});
  m.sections = field<StrList>(j, "sections", {});
  m.codim = field<unsigned>(j, "codim", 0);

  json c = field<json>(j, "claims", json::object());
  if (c.contains("freeness")) {
    const json& f = c.at("freeness");
    FreenessClaim fc;
    fc.subring = required<StrList>(f, "subring");
    fc.defined_vars = field<StrMap>(f, "defined_vars", {});
    fc.basis = required<StrList>(f, "basis");
    fc.expected_rank = field<std::size_t>(f, "expected_rank", fc.basis.size());
    m.claims.freeness = fc;
  }
  for (const auto& s : field<json>(c, "singularities", json::array())) {
    SingularityClaim sc;
    sc.kind = singularity_kind_from_string(required<std::string>(s, "kind"));
    sc.label = field<std::string>(s, "label", "");
    sc.chart = field<StrList>(s, "chart", {});
    sc.point = field<StrMap>(s, "point", {});
    sc.parameter = field<std::string>(s, "parameter", "");
    sc.locus = field<StrList>(s, "locus", {});
    if (s.contains("expected_rank")) sc.expected_rank = s.at("expected_rank").get<std::size_t>();
    sc.chart_equation = field<std::string>(s, "chart_equation", "");
    sc.witness = field<StrMap>(s, "witness", {});
    m.claims.singularities.push_back(std::move(sc));
  }
  for (const auto& f : field<json>(c, "fibers", json::array())) {
    FiberClaim fc;
    fc.point = field<StrMap>(f, "point", {});
    fc.hilbert = field<std::vector<std::size_t>>(f, "hilbert", {});
    fc.count = field<std::string>(f, "count", "");
    m.claims.fibers.push_back(std::move(fc));
  }
  for (const auto& i : field<json>(c, "identities", json::array())) {
    IdentityClaim ic;
    ic.label = field<std::string>(i, "label", "");
    ic.domain = required<StrList>(i, "domain");
    for (const auto& mp : required<json>(i, "lhs"))
      ic.chain.push_back({required<StrList>(mp, "source"), required<StrList>(mp, "images")});
    ic.rhs = required<StrList>(i, "rhs");
    ic.scale = field<std::string>(i, "scale", "1");
    ic.annihilated = field<StrList>(i, "annihilated", {});
    m.claims.identities.push_back(std::move(ic));
  }
  return m;
}

}  // namespace

ModelSpec spec_from_json(const std::string& text) {
  try {
    return parse_spec(text);
  } catch (const SchemaError&) {
    throw;
  } catch (const ModelError& e) {
    throw SchemaError(e.what());
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  }
}

std::string spec_to_json(const ModelSpec& m) {
  json j;
  j["name"] = m.name;
  if (!m.description.empty()) j["description"] = m.description;
  j["base_vars"] = m.base_vars;
  if (!m.descent.empty()) {
    json d = json::array();
    for (const auto& x : m.descent) d.push_back({{"from", x.from}, {"power", x.power}, {"to", x.to}});
    j["descent"] = d;
  }
  json divs = json::object();
  for (const auto& [label, d] : m.divisors) divs[label] = {{"type", to_string(d.type)}, {"coordinate", d.coordinate}};
  j["divisors"] = divs;
  j["blocks"] = m.blocks;
  j["equations"] = m.equations;
  bool default_rows = true;
  for (std::size_t i = 0; i < m.row_numbers.size(); ++i) default_rows = default_rows && m.row_numbers[i] == i + 1;
  if (!default_rows) j["row_numbers"] = m.row_numbers;
  if (!m.sections.empty()) {
    j["section_vars"] = m.section_vars;
    j["section_blocks"] = m.section_blocks;
    j["sections"] = m.sections;
  }
  j["codim"] = m.codim;
  json c = json::object();
  if (m.claims.freeness) {
    const auto& f = *m.claims.freeness;
    json fj;
    fj["subring"] = f.subring;
    if (!f.defined_vars.empty()) fj["defined_vars"] = f.defined_vars;
    fj["basis"] = f.basis;
    fj["expected_rank"] = f.expected_rank;
    c["freeness"] = fj;
  }
  if (!m.claims.singularities.empty()) {
    json arr = json::array();
    for (const auto& s : m.claims.singularities) {
      json sj;
      sj["kind"] = to_string(s.kind);
      if (!s.label.empty()) sj["label"] = s.label;
      if (!s.chart.empty()) sj["chart"] = s.chart;
      if (!s.point.empty()) sj["point"] = s.point;
      if (!s.parameter.empty()) sj["parameter"] = s.parameter;
      if (!s.locus.empty()) sj["locus"] = s.locus;
      if (s.expected_rank) sj["expected_rank"] = *s.expected_rank;
      if (!s.chart_equation.empty()) sj["chart_equation"] = s.chart_equation;
      if (!s.witness.empty()) sj["witness"] = s.witness;
      arr.push_back(sj);
    }
    c["singularities"] = arr;
  }
  if (!m.claims.fibers.empty()) {
    json arr = json::array();
    for (const auto& f : m.claims.fibers) {
      json fj;
      fj["point"] = f.point.empty() ? json::object() : json(f.point);
      if (!f.hilbert.empty()) fj["hilbert"] = f.hilbert;
      if (!f.count.empty()) fj["count"] = f.count;
      arr.push_back(fj);
    }
    c["fibers"] = arr;
  }
  if (!m.claims.identities.empty()) {
    json arr = json::array();
    for (const auto& i : m.claims.identities) {
      json ij;
      if (!i.label.empty()) ij["label"] = i.label;
      ij["domain"] = i.domain;
      json lhs = json::array();
      for (const auto& mp : i.chain) lhs.push_back({{"source", mp.source}, {"images", mp.images}});
      ij["lhs"] = lhs;
      ij["rhs"] = i.rhs;
      ij["scale"] = i.scale;
      if (!i.annihilated.empty()) ij["annihilated"] = i.annihilated;
      arr.push_back(ij);
    }
    c["identities"] = arr;
  }
  if (!c.empty()) j["claims"] = c;
  return j.dump(2) + "\n";
}

LocalModel load_model(const std::string& text) { return LocalModel(spec_from_json(text)); }

LocalModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

}  // namespace isbv
