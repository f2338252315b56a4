#include "isbv/report.hpp"

#include <gmp.h>
#include <openssl/crypto.h>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <chrono>
#include <ctime>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "isbv/cache.hpp"

namespace isbv {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <class T>
void take(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

std::vector<std::uint32_t> parse_field(const std::string& field) {
  if (field == "Q") return CheckConfig{}.primes;
  if (field.rfind("p:", 0) != 0) throw std::invalid_argument("field must be Q or p:<prime>[,<prime>...], got '" + field + "'");
  std::vector<std::uint32_t> primes;
  const std::string list = field.substr(2);
  if (!list.empty() && list.back() == ',') throw std::invalid_argument("field '" + field + "' ends with ','");
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size()) throw std::invalid_argument("bad prime '" + item + "' in field '" + field + "'");
    if (!is_odd_prime(v) || v > 31) throw std::invalid_argument("field prime must be an odd prime up to 31, got " + item);
    primes.push_back(static_cast<std::uint32_t>(v));
  }
  if (primes.empty()) throw std::invalid_argument("field '" + field + "' lists no prime");
  return primes;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["models"] = c.models;
  j["all"] = c.all;
  j["checks"] = c.checks;
  j["field"] = c.field;
  j["dmax"] = c.dmax;
  j["jobs"] = c.jobs;
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  j["samples"] = c.samples;
  j["format"] = c.format;
  j["use_cache"] = c.use_cache;
  j["cache_dir"] = c.cache_dir;
  j["allow_skip"] = c.allow_skip;
  j["mutations"] = c.mutations;
  j["stable"] = c.stable;
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::vector<std::string> known = {"models", "all",       "checks",    "field",      "dmax",
                                                 "jobs",   "seed",      "budget",    "samples",    "format",
                                                 "use_cache", "cache_dir", "allow_skip", "mutations", "stable"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw std::invalid_argument("unknown config field '" + k + "'");
  RunConfig c;
  take(j, "models", c.models);
  take(j, "all", c.all);
  take(j, "checks", c.checks);
  take(j, "field", c.field);
  take(j, "dmax", c.dmax);
  take(j, "jobs", c.jobs);
  take(j, "seed", c.seed);
  take(j, "budget", c.budget);
  take(j, "samples", c.samples);
  take(j, "format", c.format);
  take(j, "use_cache", c.use_cache);
  take(j, "cache_dir", c.cache_dir);
  take(j, "allow_skip", c.allow_skip);
  take(j, "mutations", c.mutations);
  take(j, "stable", c.stable);
  if (c.format != "json" && c.format != "markdown") throw std::invalid_argument("format must be json or markdown");
  if (c.jobs == 0) throw std::invalid_argument("jobs must be positive");
  if (c.dmax == 0) throw std::invalid_argument("dmax must be positive");
  return c;
}

bool VerificationReport::ok() const { return fail == 0 && (skipped == 0 || config.allow_skip); }

VerificationReport run_verification(const Registry& reg, const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "markdown") throw std::invalid_argument("format must be json or markdown");
  for (const auto& c : cfg.checks)
    if (!is_check_name(c)) throw UnknownCheckError("unknown check '" + c + "'");

  std::vector<const LocalModel*> selected;
  if (cfg.all) {
    for (const auto& m : reg.models()) selected.push_back(&m);
  } else {
    if (cfg.models.empty()) throw std::invalid_argument("no model selected");
    for (const auto& name : cfg.models) {
      const LocalModel* m = reg.find(name);
      if (!m) throw UnknownModelError("unknown model '" + name + "'");
      selected.push_back(m);
    }
  }

  std::vector<LocalModel> mutated;
  mutated.reserve(selected.size());
  if (!cfg.mutations.empty())
    for (auto& m : selected) {
      mutated.push_back(mutated_model(*m, cfg.mutations));
      m = &mutated.back();
    }

  std::unique_ptr<GroebnerCache> cache;
  if (cfg.use_cache) {
    const std::string dir = cfg.cache_dir.empty() ? GroebnerCache::default_dir() : cfg.cache_dir;
    if (!dir.empty()) cache = std::make_unique<GroebnerCache>(dir);
  }
  CheckConfig cc;
  cc.primes = parse_field(cfg.field);
  cc.dmax = cfg.dmax;
  cc.budget = cfg.budget;
  cc.seed = cfg.seed;
  cc.samples = cfg.samples;
  cc.cache = cache.get();

  std::vector<std::pair<const LocalModel*, std::string>> tasks;
  for (const LocalModel* m : selected) {
    const auto names = cfg.checks.empty() ? applicable_checks(*m) : std::vector<std::string>{};
    for (const auto& c : check_names())
      if (cfg.checks.empty() ? std::find(names.begin(), names.end(), c) != names.end()
                             : std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end())
        tasks.emplace_back(m, c);
  }

  VerificationReport rep;
  rep.config = cfg;
  rep.started = cfg.stable ? "1970-01-01T00:00:00Z" : utc_now();
  std::vector<std::optional<CheckResult>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        results[i] = run_check(tasks[i].second, *tasks[i].first, cc);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  for (auto& r : results) {
    if (cfg.stable) r->millis = 0;
    switch (r->status) {
      case CheckStatus::Pass: ++rep.pass; break;
      case CheckStatus::Fail: ++rep.fail; break;
      case CheckStatus::Skipped: ++rep.skipped; break;
    }
    rep.checks.push_back(std::move(*r));
  }
  return rep;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["run"]["config"] = config_to_json(r.config);
  j["run"]["versions"] = {{"isbv", kVersion}, {"gmp", gmp_version}, {"openssl", OpenSSL_version(OPENSSL_VERSION_STRING)}};
  j["run"]["started"] = r.started;
  j["checks"] = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["model"] = c.model;
    e["status"] = to_string(c.status);
    e["witness"] = c.witness;
    e["millis"] = static_cast<std::uint64_t>(c.millis + 0.5);
    j["checks"].push_back(std::move(e));
  }
  j["summary"] = {{"pass", r.pass}, {"fail", r.fail}, {"skipped", r.skipped}};
  return j;
}

std::string format_report(const VerificationReport& r) {
  if (r.config.format == "json") return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "# Verification report\n\n";
  out << "- started: " << r.started << "\n- isbv " << kVersion << ", GMP " << gmp_version << "\n";
  out << "- config: `" << config_to_json(r.config).dump() << "`\n\n";
  out << "| model | check | status | ms |\n|---|---|---|---|\n";
  for (const auto& c : r.checks)
    out << "| " << c.model << " | " << c.name << " | " << to_string(c.status) << " | "
        << static_cast<std::uint64_t>(c.millis + 0.5) << " |\n";
  out << "\n**" << r.pass << " pass, " << r.fail << " fail, " << r.skipped << " skipped**\n";
  for (const auto& c : r.checks) {
    if (c.status == CheckStatus::Pass) continue;
    out << "\n## " << c.model << " / " << c.name << " (" << to_string(c.status) << ")\n\n```json\n"
        << c.witness.dump(2) << "\n```\n";
  }
  return out.str();
}

}  // namespace isbv
