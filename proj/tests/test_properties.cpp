// Randomized algebraic properties of the kernel, 1000+ cases each.
#include <gtest/gtest.h>

#include <random>

#include "isbv/groebner.hpp"
#include "isbv/linalg.hpp"
#include "isbv/parser.hpp"

using namespace isbv;

namespace {

constexpr int kCases = 1000;
constexpr std::uint32_t kPrimes[] = {3, 5, 7, 101, 32003};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational() {
    const int num = uniform(-9, 9);
    const int den = uniform(1, 4);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  template <class K>
  K coeff(const Domain& d) {
    if constexpr (std::is_same_v<K, Rational>) {
      return rational();
    } else {
      return Fp(uniform(-50, 50), d.p);
    }
  }

  template <class K>
  Poly<K> poly(const VarsPtr& v, const Domain& d, int max_terms = 4, int max_deg = 3) {
    Poly<K> f(v, d);
    const int n = uniform(0, max_terms);
    for (int t = 0; t < n; ++t) {
      Poly<K> m = Poly<K>::constant(v, d, coeff<K>(d));
      const int deg = uniform(0, max_deg);
      for (int k = 0; k < deg; ++k) m *= Poly<K>::var(v, d, static_cast<std::size_t>(uniform(0, static_cast<int>(v->size()) - 1)));
      f += m;
    }
    return f;
  }

  std::uint32_t prime() { return kPrimes[uniform(0, 4)]; }

 private:
  std::mt19937_64 rng_;
};

VarsPtr ring() { return VariableSet::make({"a", "b", "c", "z'0"}); }

template <class K>
void ring_axioms(Gen& g, const VarsPtr& v, const Domain& d) {
  const auto a = g.poly<K>(v, d), b = g.poly<K>(v, d), c = g.poly<K>(v, d);
  const auto zero = Poly<K>(v, d), one = Poly<K>::from_int(v, d, 1);
  ASSERT_EQ((a + b) + c, a + (b + c));
  ASSERT_EQ(a + b, b + a);
  ASSERT_EQ((a * b) * c, a * (b * c));
  ASSERT_EQ(a * b, b * a);
  ASSERT_EQ(a * (b + c), a * b + a * c);
  ASSERT_EQ(a + zero, a);
  ASSERT_EQ(a * one, a);
  ASSERT_TRUE((a - a).is_zero());
  ASSERT_EQ(-(-a), a);
  ASSERT_EQ(a.pow(2), a * a);
  if (!a.is_zero() && !b.is_zero()) ASSERT_EQ((a * b).total_degree(), a.total_degree() + b.total_degree());
}

}  // namespace

TEST(Properties, RingAxioms) {
  Gen g(1);
  const auto v = ring();
  for (int i = 0; i < kCases; ++i) {
    ring_axioms<Rational>(g, v, Domain::rationals());
    ring_axioms<Fp>(g, v, Domain::prime_field(g.prime()));
    if (HasFatalFailure()) FAIL() << "case " << i;
  }
}

TEST(Properties, SubstitutionIsAHomomorphism) {
  Gen g(2);
  const auto v = ring();
  const auto w = VariableSet::make({"s", "t"});
  const Domain q = Domain::rationals();
  for (int i = 0; i < kCases; ++i) {
    PolyMap<Rational> m{v, w, {}};
    for (std::size_t k = 0; k < v->size(); ++k) m.images.push_back(g.poly<Rational>(w, q, 3, 2));
    const auto a = g.poly<Rational>(v, q), b = g.poly<Rational>(v, q);
    ASSERT_EQ(substitute(a + b, m), substitute(a, m) + substitute(b, m)) << "case " << i;
    ASSERT_EQ(substitute(a * b, m), substitute(a, m) * substitute(b, m)) << "case " << i;
    ASSERT_EQ(substitute(Poly<Rational>::from_int(v, q, 1), m), Poly<Rational>::from_int(w, q, 1));
    // Evaluation at a point factors through the map.
    std::vector<Rational> pt{g.rational(), g.rational()};
    std::vector<Rational> img;
    for (const auto& im : m.images) img.push_back(im.evaluate(pt));
    ASSERT_EQ(substitute(a, m).evaluate(pt), a.evaluate(img)) << "case " << i;
  }
}

namespace {

template <class K>
void groebner_properties(Gen& g, const VarsPtr& v, const Domain& d, const MonomialOrder& order) {
  std::vector<Poly<K>> gens;
  const int n = g.uniform(1, 3);
  for (int k = 0; k < n; ++k) gens.push_back(g.template poly<K>(v, d, 3, 2));
  GroebnerOptions opts;
  opts.max_reductions = 20000;
  const auto G = groebner_basis(gens, order, opts);
  // Every S-polynomial of the computed basis reduces to zero.
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j)
      ASSERT_TRUE(normal_form(s_polynomial(G[i], G[j], order), G, order).is_zero());
  // Generators reduce to zero.
  for (const auto& f : gens) ASSERT_TRUE(normal_form(f, G, order).is_zero());
  // Normal forms are idempotent and differ from the input by an ideal element.
  const auto f = g.template poly<K>(v, d, 5, 3);
  const auto r = normal_form(f, G, order);
  ASSERT_EQ(normal_form(r, G, order), r);
  ASSERT_TRUE(normal_form(f - r, G, order).is_zero());
  std::vector<Monomial> leads;
  for (const auto& b : G) leads.push_back(leading_monomial(b, order));
  for (const auto& t : r.terms())
    for (const auto& l : leads) ASSERT_FALSE(l.divides(t.mono));
}

}  // namespace

TEST(Properties, GroebnerBasesNormalFormsAndSPolynomials) {
  Gen g(3);
  const auto v = VariableSet::make({"a", "b", "c"});
  const MonomialOrder orders[] = {MonomialOrder::grevlex(3), MonomialOrder::lex(3)};
  for (int i = 0; i < kCases; ++i) {
    const auto& order = orders[i % 2];
    if (i % 3 == 0)
      groebner_properties<Rational>(g, v, Domain::rationals(), order);
    else
      groebner_properties<Fp>(g, v, Domain::prime_field(g.prime()), order);
    if (HasFatalFailure()) FAIL() << "case " << i;
  }
}

TEST(Properties, ParserRoundTrip) {
  Gen g(4);
  const auto v = ring();
  ParseOptions po;
  po.allow_rational_literals = true;
  for (int i = 0; i < kCases; ++i) {
    const auto f = g.poly<Rational>(v, Domain::rationals(), 6, 4);
    const std::string text = f.to_string();
    ASSERT_EQ(parse_poly(text, v, po), f) << text;
    ASSERT_EQ(parse_poly(text, v, po).to_string(), text);
    const std::uint32_t p = g.prime();
    const auto h = g.poly<Fp>(v, Domain::prime_field(p), 6, 4);
    ASSERT_EQ(parse_poly_mod(h.to_string(), v, p), h) << h.to_string();
    // Printing is canonical: a sum built in another order prints the same.
    const auto a = g.poly<Rational>(v, Domain::rationals()), b = g.poly<Rational>(v, Domain::rationals());
    ASSERT_EQ((a + b).to_string(), (b + a).to_string());
  }
}

TEST(Properties, RankOverQAndModP) {
  Gen g(5);
  // Entries in [-3, 3] and size at most 6 bound every minor by 6^3 * 3^6 < 1000003,
  // so rank mod 1000003 equals rank over Q; small primes can only lower it.
  constexpr std::uint32_t big = 1000003;
  for (int i = 0; i < kCases; ++i) {
    const std::size_t rows = static_cast<std::size_t>(g.uniform(1, 6)), cols = static_cast<std::size_t>(g.uniform(1, 6));
    const int inner = g.uniform(1, 3);
    Matrix<Rational> mq(rows, cols, Rational(0));
    // Half of the cases are products of 1-3 inner columns, so rank deficient.
    if (i % 2) {
      std::vector<std::vector<int>> b(rows, std::vector<int>(static_cast<std::size_t>(inner))),
          c(static_cast<std::size_t>(inner), std::vector<int>(cols));
      for (auto& r : b)
        for (auto& x : r) x = g.uniform(-1, 1);
      for (auto& r : c)
        for (auto& x : r) x = g.uniform(-1, 1);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t s = 0; s < cols; ++s) {
          int e = 0;
          for (int k = 0; k < inner; ++k) e += b[r][static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)][s];
          mq.at(r, s) = e;
        }
    } else {
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t s = 0; s < cols; ++s) mq.at(r, s) = g.uniform(-3, 3);
    }
    auto mod = [&](std::uint32_t p) {
      Matrix<Fp> m(rows, cols, Fp(0, p));
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t s = 0; s < cols; ++s) m.at(r, s) = reduce_mod(mq.at(r, s), p);
      return rank(m);
    };
    const std::size_t rq = rank(mq);
    ASSERT_LE(rq, std::min(rows, cols));
    ASSERT_EQ(mod(big), rq) << "case " << i;
    ASSERT_LE(mod(g.prime()), rq) << "case " << i;
    ASSERT_EQ(rank(mq.transpose()), rq);
    Matrix<Rational> scaled = mq;
    Rational lambda(g.uniform(1, 5), g.uniform(1, 5));
    lambda.canonicalize();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t s = 0; s < cols; ++s) scaled.at(r, s) *= lambda;
    ASSERT_EQ(rank(scaled), rq);
  }
}
