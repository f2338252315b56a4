#include "isbv.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isbv/ffenum.hpp"
#include "isbv/groebner.hpp"
#include "isbv/parser.hpp"
#include "isbv/report.hpp"

struct isbv_registry {
  isbv::Registry reg;
};

namespace {

thread_local std::string last_error;

isbv_status fail(isbv_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Maps the exception in flight to a status.
isbv_status translate() {
  try {
    throw;
  } catch (const isbv::UnknownModelError& e) {
    return fail(ISBV_ERR_UNKNOWN_MODEL, e.what());
  } catch (const isbv::UnknownCheckError& e) {
    return fail(ISBV_ERR_UNKNOWN_CHECK, e.what());
  } catch (const isbv::ParseError& e) {
    return fail(ISBV_ERR_PARSE, e.what());
  } catch (const isbv::ModelParseError& e) {
    return fail(ISBV_ERR_PARSE, e.what());
  } catch (const nlohmann::json::parse_error& e) {
    return fail(ISBV_ERR_PARSE, e.what());
  } catch (const isbv::SchemaError& e) {
    return fail(ISBV_ERR_SCHEMA, e.what());
  } catch (const isbv::ModelError& e) {
    std::string msg = e.what();
    if (e.row()) msg += " (row " + std::to_string(*e.row()) + ")";
    return fail(ISBV_ERR_VALIDATION, msg);
  } catch (const isbv::BudgetExceeded& e) {
    return fail(ISBV_ERR_BUDGET, e.what());
  } catch (const isbv::DomainError& e) {
    return fail(ISBV_ERR_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ISBV_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(ISBV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ISBV_ERR_INTERNAL, "unknown exception");
  }
}

template <class F>
isbv_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return ISBV_OK;
  } catch (...) {
    return translate();
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string count(std::size_t n, const std::string& noun, const std::string& plural) {
  return std::to_string(n) + " " + (n == 1 ? noun : plural);
}

std::string claim_summary(const isbv::LocalModel& m) {
  const auto& c = m.claims();
  std::vector<std::string> parts;
  if (m.has_parametrization())
    parts.push_back(std::to_string(m.equations().size()) + " relations on " + std::to_string(m.spec().sections.size()) +
                    " sections");
  if (c.freeness) parts.push_back("free of rank " + std::to_string(c.freeness->expected_rank));
  if (!c.singularities.empty()) parts.push_back(count(c.singularities.size(), "singularity claim", "singularity claims"));
  if (!c.fibers.empty()) parts.push_back(count(c.fibers.size(), "fiber claim", "fiber claims"));
  if (!c.identities.empty()) parts.push_back(count(c.identities.size(), "identity", "identities"));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return out.empty() ? "no claims" : out;
}

const isbv::LocalModel& lookup(const isbv_registry* reg, const char* model) {
  if (!model) throw std::invalid_argument("model name is null");
  const isbv::LocalModel* m = reg->reg.find(model);
  if (!m) throw isbv::UnknownModelError(std::string("unknown model '") + model + "'");
  return *m;
}

std::string point_text(const isbv::LocalModel& m, const isbv::Ambient& amb, const std::vector<std::uint32_t>& pt) {
  const auto& v = m.descended_vars();
  std::ostringstream out;
  for (std::size_t i = 0; i < amb.affine.size(); ++i) out << (i ? " " : "") << v->name(amb.affine[i]) << '=' << pt[amb.affine[i]];
  for (const auto& b : amb.blocks) {
    out << " (";
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? ":" : "") << pt[b[i]];
    out << ')';
  }
  return out.str();
}

}  // namespace

extern "C" {

const char* isbv_version(void) { return isbv::kVersion; }

const char* isbv_status_string(isbv_status s) {
  switch (s) {
    case ISBV_OK: return "ok";
    case ISBV_ERR_PARSE: return "parse error";
    case ISBV_ERR_SCHEMA: return "schema error";
    case ISBV_ERR_VALIDATION: return "validation error";
    case ISBV_ERR_UNKNOWN_MODEL: return "unknown model";
    case ISBV_ERR_UNKNOWN_CHECK: return "unknown check";
    case ISBV_ERR_ARGUMENT: return "invalid argument";
    case ISBV_ERR_BUDGET: return "budget exceeded";
    case ISBV_ERR_IO: return "i/o error";
    case ISBV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* isbv_last_error(void) { return last_error.c_str(); }

void isbv_string_free(char* s) { std::free(s); }

isbv_status isbv_registry_create(isbv_registry** out) {
  if (!out) return fail(ISBV_ERR_ARGUMENT, "out is null");
  return guarded([&] { *out = new isbv_registry{isbv::Registry::builtin()}; });
}

void isbv_registry_destroy(isbv_registry* reg) { delete reg; }

isbv_status isbv_registry_load_file(isbv_registry* reg, const char* path) {
  if (!reg || !path) return fail(ISBV_ERR_ARGUMENT, "null argument");
  std::ifstream in(path);
  if (!in) return fail(ISBV_ERR_IO, std::string("cannot open model file '") + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return fail(ISBV_ERR_IO, std::string("cannot read model file '") + path + "'");
  return guarded([&] { reg->reg.add(isbv::load_model(ss.str())); });
}

size_t isbv_registry_size(const isbv_registry* reg) { return reg ? reg->reg.size() : 0; }

isbv_status isbv_registry_list(const isbv_registry* reg, char** out_text) {
  if (!reg || !out_text) return fail(ISBV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::ostringstream out;
    for (const auto& m : reg->reg.models()) {
      out << m.name() << "\t" << claim_summary(m);
      if (!m.spec().description.empty()) out << "\t" << m.spec().description;
      out << '\n';
    }
    *out_text = dup(out.str());
  });
}

isbv_status isbv_verify(const isbv_registry* reg, const char* config_json, char** out_report, int* out_ok) {
  if (!reg || !config_json || !out_report || !out_ok) return fail(ISBV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const isbv::Json j = isbv::Json::parse(config_json);
    isbv::RunConfig cfg;
    try {
      cfg = isbv::config_from_json(j);
    } catch (const std::invalid_argument& e) {
      throw isbv::SchemaError(e.what());
    }
    const auto rep = isbv::run_verification(reg->reg, cfg);
    std::string text = isbv::format_report(rep);
    *out_report = dup(text);
    *out_ok = rep.ok() ? 1 : 0;
  });
}

isbv_status isbv_derive(const isbv_registry* reg, const char* model, unsigned degree, char** out_text,
                        size_t* out_count) {
  if (!reg || !out_text) return fail(ISBV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& m = lookup(reg, model);
    if (degree == 0) throw std::invalid_argument("degree must be positive");
    const auto d = isbv::derive_relations(m, degree);
    std::string text = isbv::format_derivation(m, d);
    *out_text = dup(text);
    if (out_count) *out_count = d.independent.size();
  });
}

isbv_status isbv_enumerate(const isbv_registry* reg, const char* model, uint32_t p, const char* base_point,
                           int singular_only, unsigned threads, char** out_text, uint64_t* out_on_variety,
                           uint64_t* out_singular) {
  if (!reg || !out_text) return fail(ISBV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& m = lookup(reg, model);
    if (p < 3) throw isbv::DomainError("p must be an odd prime, got " + std::to_string(p));
    const isbv::Ambient amb = isbv::model_ambient(m);
    isbv::EnumerateOptions opts;
    opts.smooth_rank = m.spec().codim;
    opts.threads = threads ? threads : 1;
    if (base_point && *base_point) {
      std::vector<std::uint32_t> vals;
      std::stringstream ss(base_point);
      for (std::string item; std::getline(ss, item, ',');) {
        std::size_t pos = 0;
        long v = 0;
        try {
          v = std::stol(item, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (item.empty() || pos != item.size()) throw std::invalid_argument("bad base coordinate '" + item + "'");
        const long r = ((v % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p);
        vals.push_back(static_cast<std::uint32_t>(r));
      }
      if (vals.size() != amb.affine.size())
        throw std::invalid_argument("base point needs " + std::to_string(amb.affine.size()) + " coordinates");
      for (std::size_t i = 0; i < vals.size(); ++i) opts.fixed[amb.affine[i]] = vals[i];
    }
    const auto r = isbv::enumerate_points(m.descended(), amb, p, opts);
    std::ostringstream out;
    if (!singular_only) {
      out << "model " << m.name() << " over F_" << p;
      if (!opts.fixed.empty()) {
        out << ", fiber over";
        for (const auto& [i, v] : opts.fixed) out << ' ' << m.descended_vars()->name(i) << '=' << v;
      }
      out << "\nexamined " << r.examined << "\npoints " << r.on_variety << '\n';
    }
    if (r.singular.empty()) {
      out << "singular points: none\n";
    } else {
      out << "singular points: " << r.singular.size() << '\n';
      for (const auto& pt : r.singular) out << "  " << point_text(m, amb, pt.coords) << "  rank " << pt.jacobian_rank << '\n';
    }
    *out_text = dup(out.str());
    if (out_on_variety) *out_on_variety = r.on_variety;
    if (out_singular) *out_singular = r.singular.size();
  });
}

}  // extern "C"
