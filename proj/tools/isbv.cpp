// Command-line driver over the isbv C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "isbv.h"

namespace {

// Exit codes: 0 success, 1 a check failed, 2 usage or runtime error.
constexpr int kFailed = 1;
constexpr int kError = 2;

int report_error(isbv_status s) {
  std::cerr << "isbv: " << isbv_status_string(s) << ": " << isbv_last_error() << '\n';
  return kError;
}

struct Owned {
  char* p = nullptr;
  ~Owned() { isbv_string_free(p); }
};

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& it : items) {
    std::size_t start = 0;
    while (start <= it.size()) {
      const auto comma = it.find(',', start);
      const auto end = comma == std::string::npos ? it.size() : comma;
      if (end > start) out.push_back(it.substr(start, end - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of local models of degenerating quadric surface bundles"};
  app.set_version_flag("--version", std::string(isbv_version()));
  app.require_subcommand(1);
  std::vector<std::string> model_files;
  app.add_option("--model-file", model_files, "Add models from JSON model files")->check(CLI::ExistingFile);

  auto* list = app.add_subcommand("list", "List registered models and their claims");

  auto* verify = app.add_subcommand("verify", "Run verification checks");
  std::vector<std::string> models, checks, mutations;
  bool all = false, no_cache = false, allow_skip = false, stable = false;
  std::string field = "Q", report_path, format = "json", cache_dir;
  unsigned dmax = 3, jobs = 1;
  std::uint64_t seed = 0, budget = 1'000'000, samples = 500;
  verify->add_option("--model", models, "Model names (repeatable or comma-separated)");
  verify->add_flag("--all", all, "Verify every registered model");
  verify->add_option("--checks", checks,
                     "Checks: relations, span, freeness, flatness, singular, identities, fibers (default: all applicable)");
  verify->add_option("--field", field, "Q or p:<prime>[,<prime>...] (scan primes)")->capture_default_str();
  verify->add_option("--dmax", dmax, "Highest degree of Hilbert values")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Seed for sampled scans")->capture_default_str();
  verify->add_option("--samples", samples, "Sampled specialization points for primes above 3")->capture_default_str();
  verify->add_option("--report", report_path, "Write the report to this file instead of stdout");
  verify->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "markdown"}))->capture_default_str();
  verify->add_option("--budget", budget, "S-pair reductions allowed per Groebner basis")->capture_default_str();
  verify->add_flag("--no-cache", no_cache, "Do not read or write the Groebner basis cache");
  verify->add_option("--cache-dir", cache_dir, "Cache directory (default $ISBV_CACHE or ~/.cache/isbv)");
  verify->add_flag("--allow-skip", allow_skip, "Do not treat skipped checks as failures");
  verify->add_option("--mutate", mutations, "Test only: perturb the selected models before checking");
  verify->add_flag("--stable", stable, "Zero wall-times and start stamp for byte-identical reports");

  auto* derive = app.add_subcommand("derive", "Derive the relation space from the sections");
  std::string derive_model;
  unsigned degree = 2;
  derive->add_option("model", derive_model, "Model name")->required();
  derive->add_option("--degree", degree, "Degree in the fiber coordinates")->capture_default_str()->check(CLI::PositiveNumber);

  auto* enumerate = app.add_subcommand("enumerate", "Count F_p-points and singular points of a model");
  std::string enum_model, base;
  std::uint32_t prime = 3;
  bool singular_only = false;
  unsigned enum_jobs = 1;
  enumerate->add_option("model", enum_model, "Model name")->required();
  enumerate->add_option("--p", prime, "Odd prime")->capture_default_str();
  enumerate->add_option("--base", base, "Base point, comma-separated (default: whole total space)");
  enumerate->add_flag("--singular-only", singular_only, "Print only the singular points");
  enumerate->add_option("--jobs", enum_jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  isbv_registry* reg = nullptr;
  if (auto s = isbv_registry_create(&reg); s != ISBV_OK) return report_error(s);
  struct Guard {
    isbv_registry* r;
    ~Guard() { isbv_registry_destroy(r); }
  } guard{reg};
  for (const auto& f : model_files)
    if (auto s = isbv_registry_load_file(reg, f.c_str()); s != ISBV_OK) {
      std::cerr << "isbv: " << f << ": " << isbv_status_string(s) << ": " << isbv_last_error() << '\n';
      return kError;
    }

  if (*list) {
    Owned text;
    if (auto s = isbv_registry_list(reg, &text.p); s != ISBV_OK) return report_error(s);
    std::cout << text.p;
    return 0;
  }

  if (*verify) {
    nlohmann::ordered_json cfg;
    cfg["models"] = split_commas(models);
    cfg["all"] = all;
    cfg["checks"] = split_commas(checks);
    cfg["field"] = field;
    cfg["dmax"] = dmax;
    cfg["jobs"] = jobs;
    cfg["seed"] = seed;
    cfg["budget"] = budget;
    cfg["samples"] = samples;
    cfg["format"] = format;
    cfg["use_cache"] = !no_cache;
    cfg["cache_dir"] = cache_dir;
    cfg["allow_skip"] = allow_skip;
    cfg["mutations"] = mutations;
    cfg["stable"] = stable;
    Owned report;
    int ok = 0;
    if (auto s = isbv_verify(reg, cfg.dump().c_str(), &report.p, &ok); s != ISBV_OK) return report_error(s);
    if (report_path.empty()) {
      std::cout << report.p;
    } else {
      std::ofstream out(report_path, std::ios::binary);
      out << report.p;
      if (!out) {
        std::cerr << "isbv: cannot write report " << report_path << '\n';
        return kError;
      }
      std::cout << (ok ? "all checks passed" : "some checks failed") << "; report written to " << report_path << '\n';
    }
    return ok ? 0 : kFailed;
  }

  if (*derive) {
    Owned text;
    if (auto s = isbv_derive(reg, derive_model.c_str(), degree, &text.p, nullptr); s != ISBV_OK) return report_error(s);
    std::cout << text.p;
    return 0;
  }

  Owned text;
  if (auto s = isbv_enumerate(reg, enum_model.c_str(), prime, base.empty() ? nullptr : base.c_str(), singular_only ? 1 : 0,
                              enum_jobs, &text.p, nullptr, nullptr);
      s != ISBV_OK)
    return report_error(s);
  std::cout << text.p;
  return 0;
}
