#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace isbv {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when coefficients from incompatible domains meet, or a domain
/// cannot be constructed (e.g. characteristic 2).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient domain tag: p == 0 means the rationals, otherwise F_p.
struct Domain {
  std::uint32_t p = 0;

  static Domain rationals() { return {}; }
  /// Rejects 2 and composites.
  static Domain prime_field(std::uint32_t p);

  bool is_rational() const { return p == 0; }
  bool operator==(const Domain&) const = default;
  std::string to_string() const;
};

bool is_odd_prime(std::uint64_t n);

/// Element of F_p with its modulus carried along.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const { return v_; }
  std::uint32_t prime() const { return p_; }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator/(const Fp& o) const { return *this * o.inverse(); }
  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_, raw_tag{}); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }
  Fp inverse() const;
  Fp pow(std::uint64_t e) const;

  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

 private:
  struct raw_tag {};
  Fp(std::uint32_t v, std::uint32_t p, raw_tag) : v_(v), p_(p) {}
  void check(const Fp& o) const;

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fp& a);

/// Reduces a rational mod p; throws DomainError if p divides the denominator.
Fp reduce_mod(const Rational& q, std::uint32_t p);

// Uniform field interface used by the templated kernels.

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline bool is_zero(const Fp& a) { return a.value() == 0; }
inline bool is_one(const Rational& a) { return a == 1; }
inline bool is_one(const Fp& a) { return a.value() == 1; }
inline Rational inverse(const Rational& a) { return 1 / a; }
inline Fp inverse(const Fp& a) { return a.inverse(); }
inline bool is_negative(const Rational& a) { return sgn(a) < 0; }
inline bool is_negative(const Fp&) { return false; }

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational from_int(const Domain&, long v) { return Rational(v); }
  static Rational from_integer(const Domain&, const Integer& v) { return Rational(v); }
  static Domain domain_of(const Rational&) { return Domain::rationals(); }
  static std::string to_string(const Rational& a) { return a.get_str(); }
};

template <>
struct FieldTraits<Fp> {
  static Fp from_int(const Domain& d, long v) { return Fp(v, d.p); }
  static Fp from_integer(const Domain& d, const Integer& v);
  static Domain domain_of(const Fp& a) { return Domain{a.prime()}; }
  static std::string to_string(const Fp& a) { return std::to_string(a.value()); }
};

}  // namespace isbv
