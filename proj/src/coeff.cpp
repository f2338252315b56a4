#include "isbv/coeff.hpp"

namespace isbv {

bool is_odd_prime(std::uint64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Domain Domain::prime_field(std::uint32_t p) {
  if (p == 2) throw DomainError("characteristic 2 is not supported");
  if (!is_odd_prime(p)) throw DomainError("not an odd prime: " + std::to_string(p));
  return Domain{p};
}

std::string Domain::to_string() const {
  return is_rational() ? "Q" : "p:" + std::to_string(p);
}

Fp::Fp(std::int64_t value, std::uint32_t p) : p_(p) {
  if (p == 0) throw DomainError("F_p element with p = 0");
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  v_ = static_cast<std::uint32_t>(r);
}

void Fp::check(const Fp& o) const {
  if (p_ != o.p_)
    throw DomainError("mixed primes " + std::to_string(p_) + " and " + std::to_string(o.p_));
}

Fp Fp::operator+(const Fp& o) const {
  check(o);
  std::uint64_t s = std::uint64_t{v_} + o.v_;
  if (s >= p_) s -= p_;
  return Fp(static_cast<std::uint32_t>(s), p_, raw_tag{});
}

Fp Fp::operator-(const Fp& o) const {
  check(o);
  std::uint32_t s = v_ >= o.v_ ? v_ - o.v_ : v_ + (p_ - o.v_);
  return Fp(s, p_, raw_tag{});
}

Fp Fp::operator*(const Fp& o) const {
  check(o);
  return Fp(static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p_), p_, raw_tag{});
}

Fp Fp::inverse() const {
  if (v_ == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
  std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(x0, p_);
}

Fp Fp::pow(std::uint64_t e) const {
  Fp base = *this, acc(1, p_);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value(); }

Fp reduce_mod(const Rational& q, std::uint32_t p) {
  Integer pm(p);
  Integer num = q.get_num() % pm;
  Integer den = q.get_den() % pm;
  if (den == 0)
    throw DomainError("denominator of " + q.get_str() + " is divisible by " + std::to_string(p));
  if (num < 0) num += pm;
  return Fp(static_cast<std::int64_t>(num.get_si()), p) / Fp(den.get_si(), p);
}

Fp FieldTraits<Fp>::from_integer(const Domain& d, const Integer& v) {
  Integer r = v % Integer(d.p);
  return Fp(r.get_si(), d.p);
}

}  // namespace isbv
