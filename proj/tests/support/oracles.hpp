#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's functionals; the values are derived from first principles.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "decostab/rational.hpp"

namespace decostab::oracle {

/// Value of the weight vector on block j (1-based, block s+1 = E \ E_s):
/// each step i contributes alpha_i (rk E_i - r) if the block lies inside E_i,
/// alpha_i rk E_i otherwise.
inline Rational block_value(const std::vector<int>& ranks, const std::vector<Rational>& weights, int r,
                            std::size_t block) {
  Rational v(0);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const bool inside = block <= i;  // 0-based block index vs 0-based step index
    v += weights[i] * Rational(inside ? ranks[i] - r : ranks[i]);
  }
  return v;
}

/// Brute force over all (s+1)^a tuples with the prefix-count rule
/// #{l : j_l <= j} <= kappa_j for each proper step j.
inline std::optional<Rational> mu_chain(const std::vector<int>& ranks, const std::vector<Rational>& weights,
                                        const std::vector<int>& kappas, int r, int a) {
  const std::size_t blocks = ranks.size() + 1;
  std::vector<std::size_t> tuple(a, 0);
  std::optional<Rational> best;
  std::size_t total = 1;
  for (int l = 0; l < a; ++l) total *= blocks;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int l = 0; l < a; ++l) {
      tuple[l] = c % blocks;
      c /= blocks;
    }
    bool ok = true;
    for (std::size_t j = 0; j + 1 < blocks && ok; ++j) {
      const auto count = std::count_if(tuple.begin(), tuple.end(), [&](std::size_t t) { return t <= j; });
      ok = count <= kappas[j];
    }
    if (!ok) continue;
    Rational sum(0);
    for (std::size_t t : tuple) sum += block_value(ranks, weights, r, t);
    if (!best || sum < *best) best = sum;
  }
  if (!best) return std::nullopt;
  return -*best;
}

/// Full gamma vector written out index by index.
inline std::vector<Rational> gamma(const std::vector<int>& ranks, const std::vector<Rational>& weights, int r) {
  std::vector<Rational> g;
  for (int idx = 1; idx <= r; ++idx) {
    Rational v(0);
    for (std::size_t i = 0; i < ranks.size(); ++i) v += weights[i] * Rational(idx <= ranks[i] ? ranks[i] - r : ranks[i]);
    g.push_back(v);
  }
  return g;
}

/// Plain catalog for the J-H oracle: element 0 is the zero sheaf, element 1
/// is E, `leq[i][j]` is the closed containment order.
struct RawCatalog {
  struct Item {
    int rank;
    std::int64_t degree;
    int qdim;
    int kappa;
  };
  std::vector<Item> items;
  std::vector<std::vector<bool>> leq;
  int a;
  Rational delta;

  int eps(std::size_t i) const { return items[i].kappa == a ? 1 : 0; }
  Rational deco_degree(std::size_t i) const {
    return Rational(items[i].degree - items[i].qdim) - Rational(a * eps(i)) * delta;
  }
  // slope of j / i compared with slope s, as sign of (D(j) - D(i)) - s (rk j - rk i)
  Rational excess(std::size_t i, std::size_t j, const Rational& s) const {
    return deco_degree(j) - deco_degree(i) - s * Rational(items[j].rank - items[i].rank);
  }
};

using RawFactor = std::array<std::int64_t, 4>;

/// gr multisets of every chain 0 = C_0 < C_1 < ... < C_n = E whose factors have
/// slope fr(E) and admit no element of the interval with slope >= fr(E).
/// Chains are found by trying every subset of proper elements.
inline std::set<std::vector<RawFactor>> jh_graded_set(const RawCatalog& c, std::size_t* chains = nullptr) {
  const std::size_t n = c.items.size();
  const Rational s = c.deco_degree(1) / Rational(c.items[1].rank);
  std::set<std::vector<RawFactor>> out;
  std::size_t found = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 2)); ++mask) {
    std::vector<std::size_t> chain{0};
    for (std::size_t i = 2; i < n; ++i)
      if (mask >> (i - 2) & 1) chain.push_back(i);
    chain.push_back(1);
    std::sort(chain.begin() + 1, chain.end() - 1,
              [&](std::size_t x, std::size_t y) { return c.items[x].rank < c.items[y].rank; });
    bool ok = true;
    for (std::size_t k = 1; k < chain.size() && ok; ++k) {
      const std::size_t lo = chain[k - 1], hi = chain[k];
      ok = lo != hi && c.leq[lo][hi] && c.items[lo].rank < c.items[hi].rank && c.excess(lo, hi, s) == Rational(0);
      for (std::size_t m = 0; m < n && ok; ++m)
        if (m != lo && m != hi && c.leq[lo][m] && c.leq[m][hi] && c.excess(lo, m, s) >= Rational(0)) ok = false;
    }
    if (!ok) continue;
    ++found;
    std::vector<RawFactor> gr;
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const auto& l = c.items[chain[k - 1]];
      const auto& h = c.items[chain[k]];
      gr.push_back({h.rank - l.rank, h.degree - l.degree, h.qdim - l.qdim, c.eps(chain[k]) - c.eps(chain[k - 1])});
    }
    std::sort(gr.begin(), gr.end());
    out.insert(gr);
  }
  if (chains) *chains = found;
  return out;
}

}  // namespace decostab::oracle
