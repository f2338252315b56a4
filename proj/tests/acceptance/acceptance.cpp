// Acceptance run: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "isbv/ffenum.hpp"
#include "isbv/report.hpp"

using namespace isbv;

namespace {

struct Failure {
  std::string why;
};

void require(bool cond, const std::string& why) {
  if (!cond) throw Failure{why};
}

const Registry& reg() {
  static const Registry r = Registry::builtin();
  return r;
}

CheckConfig primes(std::vector<std::uint32_t> ps) {
  CheckConfig c;
  c.primes = std::move(ps);
  return c;
}

CheckResult expect_pass(const std::string& check, const std::string& model, const CheckConfig& cfg = {}) {
  CheckResult r = run_check(check, reg().get(model), cfg);
  require(r.status == CheckStatus::Pass, model + " " + check + " is " + to_string(r.status) + ": " + r.witness.dump());
  return r;
}

int failures = 0;

void criterion(int n, const std::string& title, double limit_seconds, const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const Failure& f) {
    ok = false;
    detail = f.why;
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && secs > limit_seconds) {
    ok = false;
    detail += "; exceeded the " + std::to_string(limit_seconds) + " s limit";
  }
  if (!ok) ++failures;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  std::cout << "criterion " << (n < 10 ? " " : "") << n << ": " << (ok ? "PASS" : "FAIL") << "  " << title << "  [" << buf
            << "]  " << detail << std::endl;
}

std::string vanishing(const std::string& model) {
  const auto r = expect_pass("relations", model);
  require(r.witness["rows"] == 20 && r.witness["vanishing"] == 20, "expected 20 of 20 rows: " + r.witness.dump());
  return "20/20 rows reduce to 0 over Q";
}

// Runs `checks` on a mutated model and returns the first failing check with
// its witness, or an empty string if everything passed.
std::string first_failure(const std::string& model, const std::vector<std::string>& mutations,
                          const std::vector<std::string>& checks, const CheckConfig& cfg) {
  const LocalModel m = mutated_model(reg().get(model), mutations);
  for (const auto& c : checks) {
    const auto r = run_check(c, m, cfg);
    if (r.status == CheckStatus::Fail) {
      require(!r.witness.empty(), c + " failed without a witness");
      return c;
    }
  }
  return {};
}

std::string witness_summary(const std::string& model, const std::string& mutation, const std::string& check,
                            const CheckConfig& cfg) {
  const auto r = run_check(check, mutated_model(reg().get(model), {mutation}), cfg);
  const Json& w = r.witness;
  if (check == "span" && w.contains("missing_rows")) return "missing_rows " + w["missing_rows"].dump();
  if (check == "span" && w.contains("rows_not_in_nullspace")) return "rows_not_in_nullspace " + w["rows_not_in_nullspace"].dump();
  if (check == "relations" && w.contains("first_failure")) return "first nonvanishing row " + w["first_failure"]["row"].dump();
  if (check == "freeness" && w["closure"].contains("determinant")) return "determinant " + w["closure"]["determinant"].get<std::string>();
  if (check == "freeness" && w["closure"].contains("nonconstant_leading_coefficients"))
    return "nonconstant leading coefficients " + w["closure"]["nonconstant_leading_coefficients"].dump();
  if (check == "identities") return "residual factor " + w["identities"][0]["mismatches"][0]["residual_factor"].get<std::string>();
  return w.dump().substr(0, 120);
}

}  // namespace

int main() {
  std::cout << "isbv " << kVersion << " acceptance" << std::endl;

  criterion(1, "I-II relations vanish on the nine sections", 2, [] { return vanishing("i-ii"); });

  criterion(2, "III-II relations vanish on the sections", 2, [] { return vanishing("iii-ii"); });

  criterion(3, "quadric relation space has generic dimension 45 - 25 = 20 and the rows span it", 30, [] {
    std::ostringstream out;
    for (const char* m : {"i-ii", "iii-ii"}) {
      const auto r = expect_pass("span", m);
      const Json& w = r.witness;
      require(w["monomials"] == 45 && w["section_image_dim"] == 25 && w["generic_dim"] == 20, w.dump());
      require(w["table_rank"] == 20 && w["table_generic_rank"] == 20, w.dump());
      out << m << ": 45 - 25 = 20, rank 20 (Q-nullspace " << w["rational_nullspace_dim"] << "); ";
    }
    return out.str();
  });

  criterion(4, "freeness: rank 8 at every F_3 specialization and closure of the basis", 300, [] {
    std::ostringstream out;
    const auto& f1 = *reg().get("i-ii").claims().freeness;
    require(f1.subring == std::vector<std::string>{"s", "t", "x0", "xt1", "xt5"} && f1.defined_vars.at("xt1") == "x1 + x2" &&
                f1.defined_vars.at("xt5") == "x5 + x7 + x8",
            "unexpected I-II subring");
    const auto& f3 = *reg().get("iii-ii").claims().freeness;
    require(f3.subring == std::vector<std::string>{"r", "t", "x0", "x1", "x7"}, "unexpected III-II subring");
    require(f3.basis == std::vector<std::string>{"1", "x2", "x3", "x4", "x5", "x6", "x8", "x4*x5"}, "unexpected III-II basis");
    for (const char* m : {"i-ii", "iii-ii"}) {
      const auto r = expect_pass("freeness", m, primes({3}));
      const Json& s = r.witness["specialization"][0];
      require(s["points"] == 243 && s["mode"] == "exhaustive" && s["defects"] == 0, s.dump());
      require(r.witness["closure"]["status"] == "pass", r.witness["closure"].dump());
      out << m << ": 243/243 points of rank 8, det " << r.witness["closure"]["determinant"].get<std::string>() << ", "
          << r.witness["closure"]["products_checked"] << " products closed; ";
    }
    return out.str();
  });

  criterion(5, "flatness: Hilbert values (9, 25, 49) generically and at every F_5 base point", 180, [] {
    std::ostringstream out;
    for (const char* m : {"i-ii", "iii-ii"}) {
      const auto r = expect_pass("flatness", m, primes({5}));
      require(r.witness["generic"] == Json::array({9, 25, 49}), r.witness.dump());
      const Json& s = r.witness["scans"][0];
      require(s["prime"] == 5 && s["base_points"] == 25 && s["jumps"] == 0, s.dump());
      out << m << ": generic (9,25,49), 25/25 base points constant; ";
    }
    return out.str();
  });

  criterion(6, "singular loci of all six local models", 600, [] {
    std::ostringstream out;
    // (a) I-II: A1 curve over y=0 at (1:0:...:0).
    {
      const auto r = expect_pass("singular", "i-ii", primes({3, 5}));
      require(r.witness["claims"][0]["quadratic_rank"] == 4, "I-II tangent cone rank");
      const auto& m = reg().get("i-ii");
      const auto& v = m.descended_vars();
      for (std::uint32_t p : {3u, 5u}) {
        const auto scan = smoothness_scan(m, p);
        require(scan.singular.size() == p, "I-II: expected one singular point per x over F_" + std::to_string(p));
        for (const auto& pt : scan.singular) {
          require(pt.coords[v->require("y")] == 0 && pt.coords[v->require("x0")] == 1, "I-II point off y=0, x0=1");
          for (int i = 1; i <= 8; ++i) require(pt.coords[v->require("x" + std::to_string(i))] == 0, "I-II point off (1:0:...:0)");
        }
      }
      out << "(a) I-II rank-4 cone, singular points = {y=0}x(1:0:...:0) over F_3, F_5; ";
    }
    // (b) III-II: D-infinity at (0:...:0:1:0) over D2.
    {
      const auto r = expect_pass("singular", "iii-ii", primes({3, 5}));
      const Json& c = r.witness["claims"][0];
      require(c["quadratic_rank"] == 3 && c.contains("mixed_cubic_term"), c.dump());
      for (const auto& s : r.witness["scans"]) require(s["singular_off_claimed_loci"] == 0 && s["singular"] > 0, s.dump());
      out << "(b) III-II quadratic rank 3, cubic " << c["mixed_cubic_term"].get<std::string>() << "; ";
    }
    // (c) II-II: four A1 curves plus two toric chart identities.
    {
      const auto r = expect_pass("singular", "ii-ii", primes({3, 5}));
      int a1 = 0, toric = 0;
      for (const auto& c : r.witness["claims"]) {
        if (c["kind"] == "A1-transverse" && c["quadratic_rank"] == 4) ++a1;
        if (c["kind"] == "toric-chart-identity" && c["ideals_equal"] == true) ++toric;
      }
      require(a1 == 4 && toric == 2, "II-II claims: " + std::to_string(a1) + " A1, " + std::to_string(toric) + " toric");
      for (const auto& s : r.witness["scans"])
        require(s["singular_off_claimed_loci"] == 0 && s["smooth_on_claimed_loci"] == 0, s.dump());
      out << "(c) II-II singular set = 4 curves, 2 toric identities; ";
    }
    // (d) IV-II: D-infinity certificate.
    {
      const auto r = expect_pass("singular", "iv-ii", primes({3, 5}));
      const Json& c = r.witness["claims"][0];
      require(c["kind"] == "D-infinity" && c["quadratic_rank"] == 3 && c.contains("mixed_cubic_term"), c.dump());
      require(c["jacobian_rank_on_line"] < c["codim"], c.dump());
      for (const auto& s : r.witness["scans"]) require(s["singular_off_claimed_loci"] == 0, s.dump());
      out << "(d) IV-II rank 3 + mixed cubic + singular line; ";
    }
    // (e) IV-IV: smooth.
    for (const char* m : {"iv-iv-meet", "iv-iv-disjoint"}) {
      const auto r = expect_pass("singular", m, primes({3, 5, 7}));
      const Json& c = r.witness["claims"][0];
      require(c["generic_jacobian_rank"] == c["codim"], c.dump());
      for (const auto& s : r.witness["scans"]) require(s["singular"] == 0 && s["examined"] == s["ambient"], s.dump());
    }
    out << "(e) IV-IV models: 0 singular points over F_3, F_5, F_7";
    return out.str();
  });

  criterion(7, "Segre diagram commutes and the conic pulls back to 0", 1, [] {
    const auto r = expect_pass("identities", "segre-d2");
    std::size_t comps = 0;
    for (const auto& id : r.witness["identities"]) {
      require(id["agree"] == id["components"], id.dump());
      comps += id["components"].get<std::size_t>();
      for (const auto& a : id["annihilated"]) require(a["pullback"] == "0", a.dump());
    }
    return std::to_string(comps) + " components agree exactly";
  });

  criterion(8, "II-II fiber counts over F_5: 36 at (1,1), 121 at (1,0), all 25 base points", 120, [] {
    const auto& m = reg().get("ii-ii");
    require(fiber_scan(m, {{"x", 1}, {"y", 1}}, 5).on_variety == 36, "fiber over (1,1)");
    require(fiber_scan(m, {{"x", 1}, {"y", 0}}, 5).on_variety == 121, "fiber over (1,0)");
    const auto r = expect_pass("fibers", "ii-ii", primes({5}));
    const Json& s = r.witness["base_sweep"][0];
    require(s["base_points"] == 25 && s["mismatches"] == 0, s.dump());
    return std::string("enumeration = closed form at 25/25 base points");
  });

  criterion(9, "kernel property suite, 1000 cases per property", 600, [] {
    const std::string cmd = std::string("\"") + ISBV_PROPERTIES_BIN + "\" --gtest_brief=1 > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    require(rc == 0, "property suite exited with status " + std::to_string(rc));
    return std::string("ring axioms, substitution, NF idempotence, S-pairs, parser round trip, Q vs F_p rank: 0 failures");
  });

  criterion(10, "mutations are caught with specific witnesses", 600, [] {
    std::ostringstream out;
    const CheckConfig cfg = primes({3});
    const std::vector<std::string> table_checks{"relations", "span"};
    const std::vector<std::string> free_checks{"freeness"};
    // Fixed list: model, mutation, expected failing check.
    struct Case {
      const char* model;
      const char* mutation;
      const char* check;
    };
    const Case cases[] = {
        {"i-ii", "drop-row:1", "span"},           {"i-ii", "drop-row:7", "span"},
        {"i-ii", "drop-row:20", "span"},          {"i-ii", "swap-sections:3,4", "relations"},
        {"i-ii", "swap-sections:0,8", "relations"}, {"i-ii", "basis:7=x3*x8", "freeness"},
        {"i-ii", "defined:xt5=x5", "freeness"},   {"iii-ii", "drop-row:12", "span"},
        {"iii-ii", "swap-sections:1,2", "relations"}, {"iii-ii", "basis:7=x4*x6", "freeness"},
        {"segre-d2", "scale:t", "identities"},
    };
    for (const auto& c : cases) {
      const std::vector<std::string> checks =
          std::string(c.check) == "freeness" ? free_checks
          : std::string(c.check) == "identities" ? std::vector<std::string>{"identities"}
                                                  : table_checks;
      const std::string got = first_failure(c.model, {c.mutation}, checks, cfg);
      require(got == c.check, std::string(c.model) + " " + c.mutation + ": expected " + c.check + " to fail, got '" + got + "'");
      std::cout << "    " << c.model << " " << c.mutation << " -> " << got << " fails, "
                << witness_summary(c.model, c.mutation, got, cfg) << '\n';
    }
    // Negative controls: other genuine bases of the same module must still pass.
    for (const char* mu : {"basis:1=x1", "basis:7=x4*x8"}) {
      require(first_failure("i-ii", {mu}, free_checks, cfg).empty(), std::string("negative control ") + mu + " failed");
      std::cout << "    i-ii " << mu << " -> passes (another basis)\n";
    }
    // Exhaustive sweeps: every dropped row, every transposition of sections,
    // every basis element replaced by a non-unit multiple.
    std::size_t swept = 0;
    for (const char* model : {"i-ii", "iii-ii"}) {
      const auto& spec = reg().get(model).spec();
      for (auto row : spec.row_numbers) {
        const LocalModel m = mutated_model(reg().get(model), {"drop-row:" + std::to_string(row)});
        const auto r = run_check("span", m, cfg);
        require(r.status == CheckStatus::Fail && r.witness["missing_rows"] == Json::array({row}),
                std::string(model) + " drop-row:" + std::to_string(row) + " not named");
        ++swept;
      }
      for (std::size_t i = 0; i < spec.sections.size(); ++i)
        for (std::size_t j = i + 1; j < spec.sections.size(); ++j) {
          const std::string mu = "swap-sections:" + std::to_string(i) + "," + std::to_string(j);
          require(!first_failure(model, {mu}, table_checks, cfg).empty(), std::string(model) + " " + mu + " undetected");
          ++swept;
        }
      const auto& basis = spec.claims.freeness->basis;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string mu = "basis:" + std::to_string(i) + "=x0*(" + basis[i] + ")";
        require(first_failure(model, {mu}, free_checks, cfg) == "freeness", std::string(model) + " " + mu + " undetected");
        ++swept;
      }
    }
    out << "11/11 listed mutations fail, 2/2 negative controls pass, " << swept
        << " swept mutations (all rows, all section pairs, every basis element) fail";
    return out.str();
  });

  std::cout << (failures == 0 ? "all 10 criteria PASS" : std::to_string(failures) + " criteria FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
