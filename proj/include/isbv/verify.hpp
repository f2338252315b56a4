#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "isbv/linalg.hpp"
#include "isbv/models.hpp"

namespace isbv {

using Json = nlohmann::ordered_json;

class GroebnerCache;

enum class CheckStatus { Pass, Fail, Skipped };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  std::string model;
  CheckStatus status = CheckStatus::Skipped;
  Json witness = Json::object();  // always set on fail and skip
  double millis = 0;
};

struct CheckConfig {
  std::vector<std::uint32_t> primes{3, 5, 7};
  unsigned dmax = 3;
  std::uint64_t budget = 1'000'000;  // S-pair reductions per Groebner computation
  std::uint64_t seed = 0;
  std::size_t samples = 500;  // specialization points for primes above 3
  unsigned threads = 1;       // threads inside one point scan
  const GroebnerCache* cache = nullptr;
};

/// Check names in canonical order.
const std::vector<std::string>& check_names();
/// Checks whose preconditions the model meets, in canonical order.
std::vector<std::string> applicable_checks(const LocalModel& m);
bool is_check_name(const std::string& name);

CheckResult check_relations(const LocalModel& m);
CheckResult check_relation_space(const LocalModel& m);
CheckResult check_freeness(const LocalModel& m, const CheckConfig& cfg);
CheckResult check_singularities(const LocalModel& m, const CheckConfig& cfg);
CheckResult check_flatness(const LocalModel& m, const CheckConfig& cfg);
CheckResult check_identities(const LocalModel& m);
CheckResult check_fiber_counts(const LocalModel& m, const CheckConfig& cfg);

/// Dispatch by name; throws std::invalid_argument for unknown names.
CheckResult run_check(const std::string& name, const LocalModel& m, const CheckConfig& cfg);

/// The linear system whose unknowns are the coefficients of
/// (degree-d monomial in the fiber coordinates) x (allowed base monomial),
/// and whose equations say the relation vanishes on the sections.
struct RelationSpace {
  unsigned degree = 0;
  std::vector<Monomial> monomials;       // fiber monomials of degree d (model ring)
  std::vector<Monomial> base_monomials;  // allowed coefficient monomials (model ring)
  Matrix<Rational> system;               // conditions x unknowns; unknown = monomial * nb + base
  std::vector<std::vector<Rational>> nullspace;  // rational basis
  std::size_t image_dim = 0;                     // generic rank of the section images
  std::size_t generic_dim = 0;                   // monomials - image_dim
  std::size_t unknowns() const { return monomials.size() * base_monomials.size(); }
};

/// Throws std::invalid_argument if the model has no sections.
RelationSpace relation_space(const LocalModel& m, unsigned degree);

/// Vector of an equation in the unknowns of `rs`, or nullopt if some term
/// lies outside the search space.
std::optional<std::vector<Rational>> relation_vector(const LocalModel& m, const RelationSpace& rs, const QPoly& f);
/// Relation with the given unknown vector, as a polynomial of the model ring.
QPoly relation_poly(const LocalModel& m, const RelationSpace& rs, const std::vector<Rational>& v);
/// Rank over Q(base) of unknown vectors viewed as fiber-monomial coefficient vectors.
std::size_t generic_relation_rank(const LocalModel& m, const RelationSpace& rs,
                                  const std::vector<std::vector<Rational>>& vectors);

/// Relation-space derivation from the sections alone.
struct Derivation {
  RelationSpace space;
  std::vector<std::size_t> independent;  // nullspace indices, generically independent, greedy
  std::vector<std::size_t> dependent;    // the other nullspace indices
  /// Per table row: rational coordinates in the nullspace basis, or nullopt.
  std::vector<std::optional<std::vector<Rational>>> table;
};
Derivation derive_relations(const LocalModel& m, unsigned degree);
std::string format_derivation(const LocalModel& m, const Derivation& d);

/// Test-only model mutations:
///   drop-row:N           remove the equation labelled N
///   swap-sections:i,j    exchange sections i and j (0-based)
///   basis:i=expr         replace freeness basis element i (0-based)
///   defined:name=expr    redefine a freeness variable
///   scale:expr           change the scale of every identity claim
///   equation:N=expr      replace the equation labelled N
/// Throws std::invalid_argument for malformed or inapplicable mutations.
ModelSpec apply_mutation(ModelSpec spec, const std::string& mutation);
/// Builds the mutated model without demanding that equations vanish.
LocalModel mutated_model(const LocalModel& m, const std::vector<std::string>& mutations);

}  // namespace isbv
