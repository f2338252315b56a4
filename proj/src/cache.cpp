#include "isbv/cache.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isbv/parser.hpp"

namespace isbv {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "isbv-groebner-cache 1";

std::string canonical_text(const std::vector<QPoly>& gens, const MonomialOrder& order) {
  std::ostringstream out;
  const VarsPtr& v = gens.at(0).vars();
  out << "vars";
  for (std::size_t i = 0; i < v->size(); ++i) out << ' ' << v->name(i) << '/' << v->group(i);
  out << "\norder " << order.key() << "\ndomain " << gens[0].domain().to_string() << '\n';
  for (const auto& g : gens) out << g.to_string() << '\n';
  return out.str();
}

void warn(const std::string& msg) { std::cerr << "isbv: " << msg << '\n'; }

class FileLock {
 public:
  explicit FileLock(const std::string& path) : fd_(::open(path.c_str(), O_CREAT | O_RDWR, 0644)) {
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

GroebnerCache::GroebnerCache(std::string dir) : dir_(std::move(dir)) {
  const char* a = std::getenv("ISBV_CACHE_AUDIT");
  audit = a && std::string(a) == "1";
}

std::string GroebnerCache::default_dir() {
  if (const char* d = std::getenv("ISBV_CACHE"); d && *d) return d;
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return std::string(d) + "/isbv";
  if (const char* d = std::getenv("HOME"); d && *d) return std::string(d) + "/.cache/isbv";
  return {};
}

std::string GroebnerCache::key(const std::vector<QPoly>& gens, const MonomialOrder& order) {
  return sha256_hex(canonical_text(gens, order));
}

std::string GroebnerCache::path_for(const std::string& key) const { return dir_ + "/" + key + ".gb"; }

std::optional<std::vector<QPoly>> GroebnerCache::load(const std::vector<QPoly>& gens,
                                                      const MonomialOrder& order) const {
  if (gens.empty()) return std::nullopt;
  const std::string k = key(gens, order);
  std::ifstream in(path_for(k));
  if (!in) return std::nullopt;
  std::string line;
  std::vector<QPoly> basis;
  try {
    if (!std::getline(in, line) || line != kMagic) throw std::runtime_error("bad header");
    if (!std::getline(in, line) || line != "key " + k) throw std::runtime_error("key mismatch");
    if (!std::getline(in, line) || line.rfind("count ", 0) != 0) throw std::runtime_error("missing count");
    const std::size_t n = std::stoul(line.substr(6));
    ParseOptions po;
    po.allow_rational_literals = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::getline(in, line)) throw std::runtime_error("truncated");
      basis.push_back(parse_poly(line, gens[0].vars(), po));
    }
    if (!std::getline(in, line) || line != "end") throw std::runtime_error("missing end marker");
  } catch (const std::exception& e) {
    warn("cache entry " + k + " is unreadable (" + e.what() + "); recomputing");
    return std::nullopt;
  }
  return basis;
}

void GroebnerCache::store(const std::vector<QPoly>& gens, const MonomialOrder& order,
                          const std::vector<QPoly>& basis) const {
  if (gens.empty() || dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) {
    warn("cannot create cache directory " + dir_ + ": " + ec.message());
    return;
  }
  const std::string k = key(gens, order);
  FileLock lock(dir_ + "/" + k + ".lock");
  const std::string tmp = path_for(k) + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    out << kMagic << "\nkey " << k << "\ncount " << basis.size() << '\n';
    for (const auto& b : basis) out << b.to_string() << '\n';
    out << "end\n";
    if (!out) {
      warn("cannot write cache entry " + k);
      return;
    }
  }
  fs::rename(tmp, path_for(k), ec);
  if (ec) warn("cannot install cache entry " + k + ": " + ec.message());
}

std::vector<QPoly> cached_groebner(const std::vector<QPoly>& gens, const MonomialOrder& order,
                                   const GroebnerOptions& opts, const GroebnerCache* cache) {
  if (!cache || gens.empty()) return groebner_basis(gens, order, opts);
  if (auto hit = cache->load(gens, order)) {
    if (!cache->audit) return *hit;
    auto fresh = groebner_basis(gens, order, opts);
    if (fresh != *hit) {
      warn("cache audit mismatch for " + GroebnerCache::key(gens, order) + "; using the fresh basis");
      cache->store(gens, order, fresh);
    }
    return fresh;
  }
  auto basis = groebner_basis(gens, order, opts);
  cache->store(gens, order, basis);
  return basis;
}

}  // namespace isbv
