#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "isbv/models.hpp"
#include "isbv/polynomial.hpp"

namespace isbv {

/// Affine coordinates times a product of projective spaces, as variable
/// indices of one ring. Projective points are normalized so that the first
/// nonzero coordinate of each block is 1.
struct Ambient {
  std::vector<std::size_t> affine;
  std::vector<std::vector<std::size_t>> blocks;
};

/// Number of F_p-points of the ambient space.
std::uint64_t ambient_count(const Ambient& a, std::uint32_t p);

struct ScanPoint {
  std::vector<std::uint32_t> coords;  // indexed like the ring's variables
  std::size_t jacobian_rank = 0;
};

struct ScanResult {
  std::uint32_t prime = 0;
  std::uint64_t examined = 0;  // always equals the ambient count of the searched region
  std::uint64_t on_variety = 0;
  std::vector<ScanPoint> singular;  // points with Jacobian rank below smooth_rank
  std::vector<ScanPoint> points;    // only filled when collect_points is set
  double millis = 0;
};

struct EnumerateOptions {
  /// Affine coordinates held fixed (e.g. a base point); the others range over F_p.
  std::map<std::size_t, std::uint32_t> fixed;
  /// When set, the Jacobian rank of every point on the variety is computed and
  /// points of smaller rank are reported as singular.
  std::optional<std::size_t> smooth_rank;
  bool collect_points = false;
  unsigned threads = 1;
};

/// Exhaustive count of the common zeros of `equations` (reduced mod p) in the
/// ambient space. Throws DomainError for p = 2, composite p, or a coefficient
/// whose denominator p divides.
ScanResult enumerate_points(const std::vector<QPoly>& equations, const Ambient& ambient, std::uint32_t p,
                            const EnumerateOptions& opts = {});

/// Jacobian rank mod p at a point (all variables, projective ones included).
std::size_t jacobian_rank_mod(const std::vector<QPoly>& equations, const std::vector<std::uint32_t>& point,
                              std::uint32_t p);

/// Ambient of the descended model: base coordinates times its blocks.
Ambient model_ambient(const LocalModel& m);

/// All F_p-points of the descended model with their Jacobian ranks; points of
/// rank below the model's codimension are singular.
ScanResult smoothness_scan(const LocalModel& m, std::uint32_t p, unsigned threads = 1);

/// Points of one fiber of the descended model.
ScanResult fiber_scan(const LocalModel& m, const std::map<std::string, std::uint32_t>& base_point, std::uint32_t p);

struct SpecializationScan {
  std::uint32_t prime = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  /// Subring point -> dimension of the specialized quotient; nullopt when the
  /// quotient is not finite-dimensional or the Groebner budget ran out.
  std::map<std::vector<std::uint32_t>, std::optional<std::size_t>> dims;
  /// Points whose Groebner computation ran out of budget (dims holds nullopt).
  std::set<std::vector<std::uint32_t>> skipped;
};

/// Vector-space dimension of the quotient after specializing the subring
/// variables of `claim` at every point of F_p^n (exhaustive) or at `samples`
/// seeded random points.
SpecializationScan specialization_scan(const LocalModel& m, const FreenessClaim& claim, std::uint32_t p,
                                       std::optional<std::size_t> samples = std::nullopt, std::uint64_t seed = 0,
                                       std::uint64_t budget = 1'000'000);

/// Legendre symbol (a/p) in {-1, 0, 1}.
int quadratic_character(std::int64_t a, std::uint32_t p);

/// Number of points of a*z0^2 + b*z1^2 + c*z2^2 = 0 in P^2(F_p), by closed form.
std::uint64_t diagonal_conic_count(std::int64_t a, std::int64_t b, std::int64_t c, std::uint32_t p);

/// Closed-form point count of a fiber when every equation is a diagonal conic
/// in its own 3-coordinate block (other blocks contribute |P^n(F_p)|).
/// nullopt if the model's fibers are not of that shape.
std::optional<std::uint64_t> diagonal_fiber_count(const LocalModel& m,
                                                  const std::map<std::string, std::uint32_t>& base_point,
                                                  std::uint32_t p);

}  // namespace isbv
