#pragma once

// Jordan-Hoelder filtrations and S-equivalence for fr-semistable models.

#include <compare>
#include <cstdint>
#include <vector>

#include "decostab/core.hpp"

namespace decostab {

/// Numerical type of a decorated subquotient.
struct Factor {
  int rank = 0;
  std::int64_t degree = 0;
  int qdim = 0;
  int epsilon = 0;

  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// gr as a sorted multiset of factors.
struct GradedObject {
  std::vector<Factor> factors;

  Factor total() const;
  friend bool operator==(const GradedObject&, const GradedObject&) = default;
};

GradedObject make_graded(std::vector<Factor> factors);

/// Numerics of hi / lo for lo <= hi.
Factor subquotient(const BundleModel& model, Index lo, Index hi, std::size_t deco = 0);

/// E / F: (r - rk F, d - deg F, dim R - qdim F, eps(phi) - eps(phi|_F)).
Factor quotient_descriptor(const BundleModel& model, Index f, std::size_t deco = 0);

/// fr-slope of hi / lo.
Rational fr_slope(const BundleModel& model, Index lo, Index hi, const Rational& delta, std::size_t deco = 0);

/// hi / lo is fr-stable inside the catalog interval [lo, hi]: every H strictly
/// between has fr(H / lo) < fr(hi / lo). Throws EmptyInterval unless lo < hi.
bool is_stable_factor(const BundleModel& model, Index lo, Index hi, const Rational& delta, std::size_t deco = 0);

struct JordanHolder {
  std::vector<Index> steps;  // 0 = steps.front() < ... < steps.back() = E
  GradedObject gr;
  Rational slope;
};

/// Greedy J-H filtration: from each step take the minimal-rank catalog element
/// of equal fr-slope whose interval is stable (ties: degree, qdim, position).
/// Throws NotSemistable or CatalogIncomplete.
JordanHolder jordan_holder(const BundleModel& model, const Rational& delta, std::size_t deco = 0);

/// Every maximal chain 0 < ... < E whose consecutive factors are stable of
/// slope fr(E), in depth-first catalog order. Throws NotSemistable.
std::vector<std::vector<Index>> jordan_holder_chains(const BundleModel& model, const Rational& delta,
                                                     std::size_t deco = 0);

GradedObject graded_of_chain(const BundleModel& model, const std::vector<Index>& chain, std::size_t deco = 0);

/// gr(A) == gr(B). Throws SlopeMismatch when the fr-slopes of A and B differ.
bool s_equivalent(const BundleModel& a, const BundleModel& b, const Rational& delta);

}  // namespace decostab
