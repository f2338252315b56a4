#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isbv/coeff.hpp"
#include "isbv/variables.hpp"

namespace isbv {

/// Sparse multivariate polynomial over Q (K = Rational) or F_p (K = Fp).
///
/// Terms are kept combined, zero-free and sorted in storage order
/// (largest first). The storage order is independent of whatever monomial
/// order a Groebner computation uses; kernels re-sort their own copies.
template <class K>
class Poly {
 public:
  using Coeff = K;
  struct Term {
    Monomial mono;
    K coeff;
  };

  Poly() = default;
  Poly(VarsPtr vars, Domain dom) : vars_(std::move(vars)), dom_(dom) {}

  static Poly constant(VarsPtr vars, Domain dom, const K& c);
  static Poly from_int(VarsPtr vars, Domain dom, long c);
  static Poly var(VarsPtr vars, Domain dom, std::size_t i);
  static Poly var(VarsPtr vars, Domain dom, const std::string& name);
  static Poly monomial(VarsPtr vars, Domain dom, const Monomial& m, const K& c);
  /// Combines like terms, drops zeros and sorts.
  static Poly from_terms(VarsPtr vars, Domain dom, std::vector<Term> terms);

  const VarsPtr& vars() const { return vars_; }
  const Domain& domain() const { return dom_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.degree()); }
  K coeff(const Monomial& m) const;
  K constant_term() const { return coeff(Monomial{}); }
  K zero_coeff() const { return FieldTraits<K>::from_int(dom_, 0); }
  K one_coeff() const { return FieldTraits<K>::from_int(dom_, 1); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const K& c) const;
  Poly times_monomial(const Monomial& m, const K& c) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative(std::size_t var) const;
  K evaluate(const std::vector<K>& point) const;
  /// Replaces the listed variables by constants, keeping the variable set.
  Poly specialize(const std::map<std::size_t, K>& values) const;
  bool involves(std::size_t var) const;
  /// Common degree of all terms in the given variables, or nullopt if the
  /// polynomial is not homogeneous there. The zero polynomial yields 0.
  std::optional<unsigned> block_degree(const std::vector<std::size_t>& block) const;
  std::optional<unsigned> block_degree(const std::string& group_tag) const;
  /// Terms whose degree in `block` equals d.
  Poly homogeneous_part(const std::vector<std::size_t>& block, unsigned d) const;
  /// Smallest degree in `block` over all terms; nullopt for zero.
  std::optional<unsigned> min_degree(const std::vector<std::size_t>& block) const;
  /// Re-expresses the polynomial over another variable set by name.
  Poly rebase(const VarsPtr& target) const;
  /// Divides by the leading (storage-order) coefficient.
  Poly monic() const;

  std::string to_string() const;

 private:
  void require_compatible(const Poly& o) const;

  VarsPtr vars_;
  Domain dom_;
  std::vector<Term> terms_;
};

using QPoly = Poly<Rational>;
using FpPoly = Poly<Fp>;

/// Ring map given by one image polynomial per source variable.
template <class K>
struct PolyMap {
  VarsPtr source;
  VarsPtr target;
  std::vector<Poly<K>> images;

  static PolyMap identity(const VarsPtr& vars, Domain dom);
};

/// Ring-homomorphism image of f under m.
template <class K>
Poly<K> substitute(const Poly<K>& f, const PolyMap<K>& m);

/// Replaces variable `var` of f by g (same variable set).
template <class K>
Poly<K> substitute_var(const Poly<K>& f, std::size_t var, const Poly<K>& g);

FpPoly reduce_mod(const QPoly& f, std::uint32_t p);
/// Integer-coefficient lift of an F_p polynomial (residues in [0, p)).
QPoly lift(const FpPoly& f);

/// Multiplies by the lcm of denominators and divides by the integer content,
/// making the leading storage coefficient positive.
QPoly primitive_part(const QPoly& f);

template <class K>
std::ostream& operator<<(std::ostream& os, const Poly<K>& f) {
  return os << f.to_string();
}

}  // namespace isbv
