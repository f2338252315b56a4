#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "isbv/order.hpp"
#include "isbv/polynomial.hpp"

namespace isbv {

/// The S-pair reduction cap was hit. Callers either report the check as
/// skipped or switch to the finite-field enumeration oracle.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t steps, std::uint64_t budget);
  std::uint64_t steps() const { return steps_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t steps_;
  std::uint64_t budget_;
};

struct GroebnerOptions {
  std::uint64_t max_reductions = 1'000'000;
};

struct GroebnerStats {
  std::uint64_t pairs_considered = 0;
  std::uint64_t reductions = 0;
  std::uint64_t zero_reductions = 0;
};

template <class K>
Monomial leading_monomial(const Poly<K>& f, const MonomialOrder& order);
template <class K>
K leading_coefficient(const Poly<K>& f, const MonomialOrder& order);

/// Multivariate division remainder: no term of the result is divisible by a
/// leading monomial of `basis`, and f - result lies in the ideal of `basis`.
template <class K>
Poly<K> normal_form(const Poly<K>& f, const std::vector<Poly<K>>& basis, const MonomialOrder& order);

/// Reduced, monic Groebner basis (sorted by ascending leading monomial).
/// Buchberger with the sugar selection strategy and Gebauer-Moeller pair
/// criteria. Throws BudgetExceeded when more than `max_reductions` S-pairs
/// would be reduced.
template <class K>
std::vector<Poly<K>> groebner_basis(const std::vector<Poly<K>>& gens, const MonomialOrder& order,
                                    const GroebnerOptions& opts = {}, GroebnerStats* stats = nullptr);

/// Monomials in `vars` divisible by no element of `leads` (a staircase).
/// Returns nullopt if the staircase is infinite, i.e. some variable has no
/// pure power among the leads, or if it exceeds `limit` elements.
std::optional<std::vector<Monomial>> standard_monomials(const std::vector<Monomial>& leads,
                                                        const std::vector<std::size_t>& vars,
                                                        std::size_t limit = 100000);

/// Groebner basis together with cofactors: basis[i] == sum_j cofactors[i][j] * gens[j].
template <class K>
struct LiftedBasis {
  std::vector<Poly<K>> basis;
  std::vector<std::vector<Poly<K>>> cofactors;
};

template <class K>
LiftedBasis<K> groebner_basis_lifted(const std::vector<Poly<K>>& gens, const MonomialOrder& order,
                                     const GroebnerOptions& opts = {});

template <class K>
Poly<K> s_polynomial(const Poly<K>& f, const Poly<K>& g, const MonomialOrder& order);

/// True iff every S-polynomial of `basis` reduces to zero.
template <class K>
bool is_groebner_basis(const std::vector<Poly<K>>& basis, const MonomialOrder& order);

/// Generator list with a cache of reduced bases keyed by monomial order.
/// The cache is guarded for single-writer / multi-reader use.
template <class K>
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(std::vector<Poly<K>> gens);
  Ideal(const Ideal& o);
  Ideal& operator=(const Ideal& o);

  const std::vector<Poly<K>>& generators() const { return gens_; }
  const VarsPtr& vars() const;
  Domain domain() const;

  const std::vector<Poly<K>>& groebner(const MonomialOrder& order, const GroebnerOptions& opts = {}) const;
  /// Installs a basis computed elsewhere (e.g. read from the disk cache).
  void seed_cache(const MonomialOrder& order, std::vector<Poly<K>> basis) const;
  bool cached(const MonomialOrder& order) const;

 private:
  std::vector<Poly<K>> gens_;
  mutable std::shared_mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const std::vector<Poly<K>>>> cache_;
};

template <class K>
bool ideal_member(const Poly<K>& f, const Ideal<K>& ideal, const MonomialOrder& order,
                  const GroebnerOptions& opts = {});

/// Generators of I intersected with k[remaining variables]. The result keeps
/// the original variable set; no generator involves a dropped variable.
template <class K>
Ideal<K> eliminate(const Ideal<K>& ideal, const std::vector<std::size_t>& drop,
                   const GroebnerOptions& opts = {});

/// (I : f^infinity) via an auxiliary variable w and elimination of w from I + (w f - 1).
template <class K>
Ideal<K> saturate(const Ideal<K>& ideal, const Poly<K>& f, const GroebnerOptions& opts = {});

/// True iff two ideals over the same ring coincide (both inclusions).
template <class K>
bool ideals_equal(const Ideal<K>& a, const Ideal<K>& b, const GroebnerOptions& opts = {});

/// Dehomogenizing chart: each listed variable is set to 1.
struct Chart {
  std::vector<std::string> unit_vars;
};

/// A point of the chart with coordinates given as polynomials in the
/// parameter variables of the ring ("param" group); unlisted coordinates are 0.
template <class K>
struct ChartPoint {
  std::map<std::string, Poly<K>> coords;
};

/// Moves the point to the origin of the chart: sets chart variables to 1
/// and substitutes v -> v + value(v) for every coordinate.
template <class K>
std::vector<Poly<K>> translate_to_origin(const std::vector<Poly<K>>& gens, const Chart& chart,
                                         const ChartPoint<K>& point);

/// Ideal of lowest-degree forms at the origin of the local variables
/// (every variable not in the "param" group). Computed by homogenizing with
/// an auxiliary variable, saturating, and taking a Groebner basis under a
/// degree-compatible order that prefers high powers of the auxiliary
/// variable. Parameters are treated as elements of the coefficient field.
/// Throws std::invalid_argument if some generator does not vanish at the origin.
template <class K>
std::vector<Poly<K>> tangent_cone_at_origin(const std::vector<Poly<K>>& gens,
                                            const GroebnerOptions& opts = {});

template <class K>
std::vector<Poly<K>> tangent_cone(const Ideal<K>& ideal, const Chart& chart, const ChartPoint<K>& point,
                                  const GroebnerOptions& opts = {});

/// Result of repeatedly solving v = g (constant unit coefficient on v, v not
/// in g) and substituting.
template <class K>
struct LocalPresentation {
  Chart chart;
  ChartPoint<K> point;
  std::vector<Poly<K>> translated;  // chart equations with the point at the origin
  std::vector<Poly<K>> reduced;     // equations left after substitution
  struct Step {
    std::size_t var;
    Poly<K> value;  // var = value
    std::size_t source_equation;
  };
  std::vector<Step> trail;
  std::vector<std::size_t> remaining_vars;  // local variables not eliminated
};

template <class K>
LocalPresentation<K> local_eliminate(const std::vector<Poly<K>>& gens, const Chart& chart,
                                     const ChartPoint<K>& point);

/// Same procedure starting from equations already centered at the origin.
template <class K>
LocalPresentation<K> local_eliminate_at_origin(const std::vector<Poly<K>>& translated);

}  // namespace isbv
