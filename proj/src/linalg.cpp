#include "isbv/linalg.hpp"

#include <algorithm>
#include <unordered_map>

namespace isbv {

std::size_t rank(const Matrix<Rational>& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<Integer>> a(R, std::vector<Integer>(C));
  for (std::size_t i = 0; i < R; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < C; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < C; ++j) a[i][j] = m.at(i, j).get_num() * (l / m.at(i, j).get_den());
  }
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && a[piv][c] == 0) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t rank(const Matrix<Fp>& m) { return rref(m).pivots.size(); }

template <class K>
Echelon<K> rref(const Matrix<K>& m) {
  Echelon<K> e{m, {}};
  auto& a = e.reduced;
  const std::size_t R = a.rows(), C = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && is_zero(a.at(piv, c))) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(a.at(piv, j), a.at(r, j));
    K inv = inverse(a.at(r, c));
    for (std::size_t j = c; j < C; ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || is_zero(a.at(i, c))) continue;
      K f = a.at(i, c);
      for (std::size_t j = c; j < C; ++j)
        if (!is_zero(a.at(r, j))) a.at(i, j) -= f * a.at(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

namespace {

template <class K>
std::vector<std::vector<K>> nullspace_impl(const Matrix<K>& m, const K& zero, const K& one) {
  auto e = rref(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<K>> out;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(C, zero);
    v[f] = one;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced.at(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

template <>
std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& m) {
  return nullspace_impl(m, Rational(0), Rational(1));
}

// F_p needs a unit of the right prime; take it from any entry.
template <>
std::vector<std::vector<Fp>> nullspace(const Matrix<Fp>& m) {
  std::uint32_t p = 0;
  for (std::size_t i = 0; i < m.rows() && !p; ++i)
    for (std::size_t j = 0; j < m.cols() && !p; ++j) p = m.at(i, j).prime();
  if (!p) throw DomainError("nullspace over F_p needs a matrix with a known prime");
  return nullspace_impl(m, Fp(0, p), Fp(1, p));
}

template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& m, const std::vector<K>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side has the wrong length");
  const std::size_t C = m.cols();
  K zero = b.empty() ? K{} : b[0] - b[0];
  Matrix<K> aug(m.rows(), C + 1, zero);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < C; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, C) = b[i];
  }
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == C) return std::nullopt;
  std::vector<K> x(C, zero);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced.at(r, C);
  return x;
}

Matrix<Fp> reduce_mod(const Matrix<Rational>& m, std::uint32_t p) {
  Matrix<Fp> out(m.rows(), m.cols(), Fp(0, p));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = reduce_mod(m.at(i, j), p);
  out.row_labels = m.row_labels;
  out.col_labels = m.col_labels;
  return out;
}

namespace {

// Pivot preference: constants first, then the sparsest low-degree entry.
template <class K>
std::pair<int, std::size_t> pivot_cost(const Poly<K>& f) {
  if (f.is_constant()) return {0, 0};
  return {1, f.size() * 64 + static_cast<std::size_t>(f.total_degree())};
}

template <class K>
void normalize_row(std::vector<Poly<K>>& row) {
  for (const auto& e : row) {
    if (e.is_zero()) continue;
    K lc = e.terms().front().coeff;
    if (is_one(lc)) return;
    K inv = inverse(lc);
    for (auto& x : row)
      if (!x.is_zero()) x = x.scaled(inv);
    return;
  }
}

}  // namespace

template <class K>
std::size_t generic_rank(const Matrix<Poly<K>>& m) {
  std::vector<std::vector<Poly<K>>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    if (std::any_of(r.begin(), r.end(), [](const Poly<K>& e) { return !e.is_zero(); })) rows.push_back(std::move(r));
  }
  const std::size_t C = m.cols();
  std::vector<bool> col_done(C, false);
  std::size_t rank = 0;
  while (!rows.empty()) {
    std::size_t br = 0, bc = C;
    std::pair<int, std::size_t> best{2, 0};
    for (std::size_t i = 0; i < rows.size() && best.first > 0; ++i)
      for (std::size_t j = 0; j < C; ++j) {
        if (col_done[j] || rows[i][j].is_zero()) continue;
        auto cost = pivot_cost(rows[i][j]);
        if (cost < best) {
          best = cost;
          br = i;
          bc = j;
          if (cost.first == 0) break;
        }
      }
    if (bc == C) break;
    std::vector<Poly<K>> piv = std::move(rows[br]);
    rows.erase(rows.begin() + br);
    const Poly<K> p = piv[bc];
    const bool unit = p.is_constant();
    const K pinv = unit ? inverse(p.constant_term()) : K{};
    std::vector<std::vector<Poly<K>>> next;
    next.reserve(rows.size());
    for (auto& r : rows) {
      if (!r[bc].is_zero()) {
        const Poly<K> a = r[bc];
        if (unit) {
          const Poly<K> f = a.scaled(pinv);
          for (std::size_t j = 0; j < C; ++j)
            if (!piv[j].is_zero()) r[j] -= f * piv[j];
        } else {
          for (std::size_t j = 0; j < C; ++j) {
            if (r[j].is_zero() && piv[j].is_zero()) continue;
            r[j] = p * r[j] - a * piv[j];
          }
        }
        r[bc] = Poly<K>(p.vars(), p.domain());
        normalize_row(r);
      }
      if (std::any_of(r.begin(), r.end(), [](const Poly<K>& e) { return !e.is_zero(); }))
        next.push_back(std::move(r));
    }
    rows = std::move(next);
    col_done[bc] = true;
    ++rank;
  }
  return rank;
}

template <class K>
QuadraticForm<K> quadratic_form(const Poly<K>& f, const std::vector<std::size_t>& vars) {
  const Poly<K> zero(f.vars(), f.domain());
  QuadraticForm<K> q{f, vars, Matrix<Poly<K>>(vars.size(), vars.size(), zero)};
  if (auto md = f.min_degree(vars); md && *md < 2)
    throw std::invalid_argument("quadratic_form: polynomial has a constant or linear part in the given variables");
  const K half = inverse(FieldTraits<K>::from_int(f.domain(), 2));
  for (const auto& t : f.terms()) {
    std::vector<std::size_t> hit;
    unsigned deg = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      deg += t.mono[vars[k]];
      for (unsigned e = 0; e < t.mono[vars[k]]; ++e) hit.push_back(k);
    }
    if (deg != 2) continue;
    Monomial rest = t.mono;
    for (auto v : vars) rest.set(v, 0);
    if (hit[0] == hit[1]) {
      q.gram.at(hit[0], hit[0]) += Poly<K>::monomial(f.vars(), f.domain(), rest, t.coeff);
    } else {
      auto c = Poly<K>::monomial(f.vars(), f.domain(), rest, t.coeff * half);
      q.gram.at(hit[0], hit[1]) += c;
      q.gram.at(hit[1], hit[0]) += c;
    }
  }
  return q;
}

template <class K>
std::size_t quadratic_rank(const Poly<K>& f, const std::vector<std::size_t>& vars) {
  return generic_rank(quadratic_form(f, vars).gram);
}

std::vector<Monomial> multidegree_monomials(const std::vector<std::vector<std::size_t>>& blocks, unsigned d) {
  std::vector<Monomial> out{Monomial{}};
  for (const auto& b : blocks) {
    auto part = monomials_of_degree(b, d);
    std::vector<Monomial> next;
    next.reserve(out.size() * part.size());
    for (const auto& m : out)
      for (const auto& q : part) next.push_back(m * q);
    out = std::move(next);
  }
  return out;
}

std::size_t multidegree_count(const std::vector<std::vector<std::size_t>>& blocks, unsigned d) {
  std::size_t n = 1;
  for (const auto& b : blocks) {
    // C(d + |b| - 1, d)
    std::size_t c = 1;
    for (std::size_t k = 1; k <= d; ++k) c = c * (b.size() - 1 + k) / k;
    n *= c;
  }
  return n;
}

template <class K>
std::size_t graded_piece_dim(const std::vector<Poly<K>>& gens, const std::vector<std::vector<std::size_t>>& blocks,
                             unsigned d, const std::map<std::size_t, K>& specialization) {
  const auto cols = multidegree_monomials(blocks, d);
  if (gens.empty()) return cols.size();
  const VarsPtr& vars = gens.front().vars();
  const Domain dom = gens.front().domain();
  std::unordered_map<Monomial, std::size_t, MonomialHash> col_of;
  for (std::size_t j = 0; j < cols.size(); ++j) col_of.emplace(cols[j], j);

  std::vector<bool> in_block(vars->size(), false);
  for (const auto& b : blocks)
    for (auto v : b) in_block[v] = true;

  const Poly<K> zero(vars, dom);
  std::vector<std::vector<Poly<K>>> rows;
  bool parametric = false;
  for (const auto& g0 : gens) {
    Poly<K> g = specialization.empty() ? g0 : g0.specialize(specialization);
    if (g.is_zero()) continue;
    std::vector<unsigned> degs;
    for (const auto& b : blocks) {
      auto bd = g.block_degree(b);
      if (!bd) throw HomogeneityError("graded_piece_dim: generator " + g.to_string() + " is not multihomogeneous");
      degs.push_back(*bd);
    }
    std::vector<std::vector<std::size_t>> sub;
    bool fits = true;
    for (std::size_t k = 0; k < blocks.size(); ++k) fits = fits && degs[k] <= d;
    if (!fits) continue;
    // Multipliers of multidegree (d - deg_k) in each block.
    std::vector<Monomial> mult{Monomial{}};
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      auto part = monomials_of_degree(blocks[k], d - degs[k]);
      std::vector<Monomial> next;
      for (const auto& m : mult)
        for (const auto& q : part) next.push_back(m * q);
      mult = std::move(next);
    }
    for (const auto& t : g.terms()) {
      Monomial rest = t.mono;
      for (std::size_t v = 0; v < vars->size(); ++v)
        if (in_block[v]) rest.set(v, 0);
      if (!rest.is_one()) parametric = true;
    }
    for (const auto& m : mult) {
      std::vector<Poly<K>> row(cols.size(), zero);
      for (const auto& t : g.terms()) {
        Monomial blockpart, rest = t.mono;
        for (std::size_t v = 0; v < vars->size(); ++v)
          if (in_block[v]) {
            blockpart.set(v, t.mono[v]);
            rest.set(v, 0);
          }
        row[col_of.at(blockpart * m)] += Poly<K>::monomial(vars, dom, rest, t.coeff);
      }
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return cols.size();
  std::size_t r;
  if (parametric) {
    Matrix<Poly<K>> mat(rows.size(), cols.size(), zero);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) mat.at(i, j) = std::move(rows[i][j]);
    r = generic_rank(mat);
  } else {
    const K kz = FieldTraits<K>::from_int(dom, 0);
    Matrix<K> mat(rows.size(), cols.size(), kz);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (!rows[i][j].is_zero()) mat.at(i, j) = rows[i][j].constant_term();
    r = rank(mat);
  }
  return cols.size() - r;
}

template Echelon<Rational> rref(const Matrix<Rational>&);
template Echelon<Fp> rref(const Matrix<Fp>&);
template std::optional<std::vector<Rational>> solve(const Matrix<Rational>&, const std::vector<Rational>&);
template std::optional<std::vector<Fp>> solve(const Matrix<Fp>&, const std::vector<Fp>&);

#define ISBV_INSTANTIATE(K)                                                                                      \
  template std::size_t generic_rank(const Matrix<Poly<K>>&);                                                   \
  template QuadraticForm<K> quadratic_form(const Poly<K>&, const std::vector<std::size_t>&);                  \
  template std::size_t quadratic_rank(const Poly<K>&, const std::vector<std::size_t>&);                       \
  template std::size_t graded_piece_dim(const std::vector<Poly<K>>&, const std::vector<std::vector<std::size_t>>&, \
                                        unsigned, const std::map<std::size_t, K>&);
ISBV_INSTANTIATE(Rational)
ISBV_INSTANTIATE(Fp)
#undef ISBV_INSTANTIATE

}  // namespace isbv
