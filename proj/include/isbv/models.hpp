#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isbv/polynomial.hpp"

namespace isbv {

enum class DegenerationType { I, II, III, IV };

std::string to_string(DegenerationType t);
DegenerationType degeneration_from_string(const std::string& s);
/// Short description of the degenerate fiber of each type.
std::string describe(DegenerationType t);

/// A degeneracy divisor of the base, cut out by one base coordinate.
struct Divisor {
  DegenerationType type;
  std::string coordinate;
};

/// Base change of the stored coordinates: `from`^power becomes `to`.
struct Descent {
  std::string from;
  unsigned power = 1;
  std::string to;
};

struct FreenessClaim {
  std::vector<std::string> subring;
  std::map<std::string, std::string> defined_vars;  // name -> expression in model variables
  std::vector<std::string> basis;
  std::size_t expected_rank = 0;
};

enum class SingularityKind { A1Transverse, DInfinity, ToricChartIdentity, SmoothTotalSpace };

std::string to_string(SingularityKind k);
SingularityKind singularity_kind_from_string(const std::string& s);

/// All names refer to the descended ring.
struct SingularityClaim {
  SingularityKind kind;
  std::string label;
  std::vector<std::string> chart;              // variables set to 1
  std::map<std::string, std::string> point;    // nonzero coordinates, in terms of `parameter`
  std::string parameter;                       // curve/line parameter, kept generic; may be empty
  std::vector<std::string> locus;              // ideal of the claimed singular set
  std::optional<std::size_t> expected_rank;    // quadratic rank of the tangent cone
  std::string chart_equation;                  // toric-chart-identity only
  std::map<std::string, std::string> witness;  // smooth-total-space: a rational point
};

/// Hilbert values and optional point count at a base point (descended
/// coordinates). An empty point means the generic point.
struct FiberClaim {
  std::map<std::string, std::string> point;
  std::vector<std::size_t> hilbert;
  std::string count;  // closed form in p, empty if none
  bool generic() const { return point.empty(); }
};

/// Ring map given by images of `source` variables. Variables of the claim's
/// domain ring map to themselves.
struct MapSpec {
  std::vector<std::string> source;
  std::vector<std::string> images;
};

/// lhs = chain[0] o chain[1] o ... must equal scale * rhs componentwise, and
/// every `annihilated` polynomial must pull back to zero under the innermost map.
struct IdentityClaim {
  std::string label;
  std::vector<std::string> domain;
  std::vector<MapSpec> chain;
  std::vector<std::string> rhs;
  std::string scale = "1";
  std::vector<std::string> annihilated;
};

struct Claims {
  std::optional<FreenessClaim> freeness;
  std::vector<SingularityClaim> singularities;
  std::vector<FiberClaim> fibers;
  std::vector<IdentityClaim> identities;
  bool empty() const { return !freeness && singularities.empty() && fibers.empty() && identities.empty(); }
};

class ModelError : public std::runtime_error {
 public:
  ModelError(const std::string& msg, std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(msg), row_(row) {}
  /// 1-based equation row, when the problem is tied to one.
  std::optional<std::size_t> row() const { return row_; }

 private:
  std::optional<std::size_t> row_;
};

/// Malformed model file: invalid JSON, unknown or missing fields, wrong types.
class SchemaError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Malformed polynomial text inside a model.
class ModelParseError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Textual description of a model, as stored in model files.
struct ModelSpec {
  std::string name;
  std::string description;
  std::vector<std::string> base_vars;
  std::vector<Descent> descent;
  std::map<std::string, Divisor> divisors;  // label (D1, D2, D2', ...) -> divisor
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::string> equations;
  std::vector<std::size_t> row_numbers;  // 1-based table row of each equation; defaults to position
  std::vector<std::string> section_vars;
  std::vector<std::vector<std::string>> section_blocks;  // projective blocks among section_vars
  std::vector<std::string> sections;
  unsigned codim = 0;  // of the total space inside base x product of fiber charts
  Claims claims;
};

/// Validated, compiled model.
class LocalModel {
 public:
  /// Parses and validates; throws ModelError (with row for vanishing failures).
  /// With require_vanishing off, equations that do not vanish on the sections
  /// are accepted so that the relations check can report them.
  explicit LocalModel(ModelSpec spec, bool require_vanishing = true);

  const ModelSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  const Claims& claims() const { return spec_.claims; }

  /// Ring of base_vars + blocks, and the stored equations over Q.
  const VarsPtr& vars() const { return vars_; }
  const std::vector<QPoly>& equations() const { return equations_; }
  /// Equations after applying the descent; same as equations() without descent.
  const VarsPtr& descended_vars() const { return dvars_; }
  const std::vector<QPoly>& descended() const { return descended_; }
  std::vector<std::vector<std::size_t>> block_indices() const;           // in vars()
  std::vector<std::vector<std::size_t>> descended_block_indices() const;  // in descended_vars()
  std::vector<std::size_t> descended_base_indices() const;

  bool has_parametrization() const { return parametrization_.has_value(); }
  /// base vars -> themselves, coordinates -> sections.
  const PolyMap<Rational>& parametrization() const { return *parametrization_; }
  /// Equation rows (0-based) whose substitution is nonzero.
  std::vector<std::size_t> nonvanishing_rows() const;

 private:
  ModelSpec spec_;
  VarsPtr vars_, dvars_;
  std::vector<QPoly> equations_, descended_;
  std::optional<PolyMap<Rational>> parametrization_;
};

/// The coordinate ring rewritten over a claimed subring: subring variables
/// (group "sub") followed by the remaining coordinates (group "fiber").
/// Each defined variable replaces one model coordinate that occurs in its
/// expression with a constant coefficient and is not a basis variable.
struct FreenessRing {
  VarsPtr vars;
  std::vector<std::size_t> sub, fiber;
  std::vector<QPoly> equations;
  std::vector<QPoly> basis;
  std::map<std::string, std::string> replaced;  // model coordinate -> defined variable that absorbed it
};

FreenessRing freeness_ring(const LocalModel& m, const FreenessClaim& claim);

/// The seven built-in models, in registry order.
std::vector<ModelSpec> builtin_specs();

class Registry {
 public:
  /// Built-in models.
  static Registry builtin();
  void add(LocalModel m);
  const LocalModel& get(const std::string& name) const;
  const LocalModel* find(const std::string& name) const;
  const std::vector<LocalModel>& models() const { return models_; }
  std::size_t size() const { return models_.size(); }

 private:
  std::vector<LocalModel> models_;
};

/// Model-file round trip (JSON text, one field per line when pretty-printed).
/// spec_from_json throws SchemaError.
ModelSpec spec_from_json(const std::string& text);
std::string spec_to_json(const ModelSpec& spec);
LocalModel load_model(const std::string& text);
LocalModel load_model_file(const std::string& path);

}  // namespace isbv
