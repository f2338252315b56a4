#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "isbv/verify.hpp"

namespace isbv {

inline constexpr const char* kVersion = "0.1.0";

class UnknownModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownCheckError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything that determines a verification run; serialized into every report.
struct RunConfig {
  std::vector<std::string> models;  // ignored when all is set
  bool all = false;
  std::vector<std::string> checks;  // empty: every applicable check
  std::string field = "Q";          // "Q" or "p:<prime>[,<prime>...]"
  unsigned dmax = 3;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  std::size_t samples = 500;
  std::string format = "json";  // json | markdown
  bool use_cache = true;
  std::string cache_dir;  // empty: GroebnerCache::default_dir()
  bool allow_skip = false;
  std::vector<std::string> mutations;  // test-only
  bool stable = false;                 // zero wall-times and start stamp for byte-identical reports
};

/// Scan primes selected by a field string; "Q" keeps the defaults {3,5,7}.
/// Throws std::invalid_argument for malformed strings or non-odd-primes.
std::vector<std::uint32_t> parse_field(const std::string& field);

Json config_to_json(const RunConfig& cfg);
/// Throws std::invalid_argument for unknown keys or wrong types.
RunConfig config_from_json(const Json& j);

struct VerificationReport {
  RunConfig config;
  std::string started;  // ISO-8601 UTC
  std::vector<CheckResult> checks;
  std::size_t pass = 0, fail = 0, skipped = 0;
  /// True iff every check passed (skipped checks count only with allow_skip).
  bool ok() const;
};

/// Runs the selected (model, check) tasks on a pool of cfg.jobs workers.
/// Results keep registry order, then canonical check order. Explicitly
/// requested checks that do not apply to a model are reported as skipped.
VerificationReport run_verification(const Registry& reg, const RunConfig& cfg);

Json report_to_json(const VerificationReport& r);
std::string format_report(const VerificationReport& r);  // in r.config.format

}  // namespace isbv
