#pragma once

// Hilbert-Mumford point stability for the parameter-scheme model and its
// reduction to fr-semistability of the bundle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decostab/core.hpp"

namespace decostab {

/// rank l + degree + (1 - genus) rank.
std::int64_t hilbert(int rank, std::int64_t degree, int genus, std::int64_t l);

/// hilbert - qdim - a delta eps.
Rational decorated_hilbert(int rank, std::int64_t degree, int genus, int qdim, int a, const Rational& delta, int eps,
                           std::int64_t l);

/// P_F(l) and P~_F(l) for a catalog element.
std::int64_t hilbert(const BundleModel& model, Index f, std::int64_t l);
Rational decorated_hilbert(const BundleModel& model, Index f, const Rational& delta, std::int64_t l,
                           std::size_t deco = 0);

/// n2 / n1 and n3 / n1.
struct LinearizationRatios {
  Rational n2;
  Rational n3;
};

/// n2/n1 = P~(l)/P~(m) - 1, n3/n1 = delta n2/n1. Throws
/// NonpositiveDecoratedPolynomial when P~(m) <= 0.
LinearizationRatios linearization_ratios(const BundleModel& model, std::int64_t m, std::int64_t l,
                                         const Rational& delta, std::size_t deco = 0);

/// Weights of a one-parameter subgroup of SL(k): non-decreasing, summing to 0.
struct OneParameterWeights {
  std::vector<std::int64_t> xi;
};

void validate(const OneParameterWeights& w);

/// xi^(i) = (i - k [i times], i [k - i times]). Throws IndexOutOfRange unless 1 <= i <= k - 1.
OneParameterWeights special_weights(std::int64_t k, std::int64_t i);

/// -sum_i xi_i (wpi(i) - wpi(i - 1)); wpi has k + 1 entries.
Rational mu_hilbert_mumford(const OneParameterWeights& w, const std::vector<std::int64_t>& wpi);

struct SubspaceRecord {
  std::string id;
  std::int64_t dim = 0;              // dim Y'
  std::vector<std::int64_t> wpi;     // wpi(0..k); wpi(dim) = P_{E'}(l)
  int gdim = 0;                      // dim g(Y'_1 + Y'_2)
  int eps = 0;
};

struct GitPointModel {
  std::int64_t k = 0;  // dim Y
  std::int64_t m = 0;
  std::int64_t l = 0;
  std::int64_t p_l = 0;  // P_E(l)
  int a = 1;
  int dim_r = 0;
  int eps = 1;  // eps(phi)
  Rational n1{1}, n2{0}, n3{0};
  std::vector<SubspaceRecord> subspaces;
};

void validate(const GitPointModel& point);

/// Both sides of dim Y' (n1 P_E(l) + dimR n2 + a eps n3) <= k (n1 P_E'(l) + n2 gdim + a n3 eps').
struct PointInequality {
  Rational lhs;
  Rational rhs;
};

PointInequality point_inequality(const GitPointModel& point, const SubspaceRecord& sub);
PointInequality point_inequality(const GitPointModel& point, std::int64_t dim, std::int64_t p_prime_l, int gdim,
                                 int eps);

/// n1 mu(xi^(dim), wpi) + n2 (k gdim - dimR dim) + n3 a (k eps' - eps dim), which is rhs - lhs above.
Rational one_ps_value(const GitPointModel& point, const SubspaceRecord& sub);

struct PointVerdict {
  Stability stability = Stability::Stable;
  std::optional<std::size_t> witness;  // subspace index: first violation, else first equality
};

/// Checks every recorded subspace with 0 < dim Y' < k.
PointVerdict is_git_semistable_point(const GitPointModel& point);

/// Point induced by the bundle at (m, l): k = P_E(m), one subspace per proper
/// catalog element with dim Y' = P_F(m), gdim = qdim F and wpi interpolated
/// (rounding down) through (0, 0), (dim Y', P_F(l)), (k, P_E(l)).
/// Returns nothing when these numbers do not describe a valid point.
std::optional<GitPointModel> point_from_bundle(const BundleModel& model, std::int64_t m, std::int64_t l,
                                               const Rational& delta, std::size_t deco = 0);

struct LeadingCoefficients {
  Rational lhs;  // r P~_F(m)
  Rational rhs;  // rk F P~_E(m)
  bool holds;    // lhs <= rhs
};

LeadingCoefficients leading_coefficient_reduction(const BundleModel& model, Index f, std::int64_t m,
                                                  const Rational& delta, std::size_t deco = 0);

/// Smallest m >= 1 with P~_E(m) > 0 and, for every proper F, 1 <= P_F(m) < P_E(m)
/// and qdim F <= 2 P_F(m).
std::int64_t default_m(const BundleModel& model, const Rational& delta, std::size_t deco = 0);

/// max(m + 1, smallest l with P~_F(l) > 0 and P_F(l) <= P_E(l) for every catalog element).
std::int64_t default_l0(const BundleModel& model, std::int64_t m, const Rational& delta, std::size_t deco = 0);

struct EquivalenceRow {
  Index f = 0;
  std::int64_t l = 0;
  PointInequality point;
  std::optional<Rational> one_ps;  // when the induced point is valid and 0 < dim Y' < k
  LeadingCoefficients leading;
  Rational fr_gap;  // fr(E) - fr(F)
  bool agree = false;
};

struct EquivalenceReport {
  std::int64_t m = 0;
  std::vector<std::int64_t> l_samples;
  std::vector<EquivalenceRow> rows;

  bool all_agree() const;
};

/// For every proper F and sampled l, compares the substituted point
/// inequality, its 1-PS form, the leading-coefficient inequality and the
/// fr-slope comparison, both in the strict and the non-strict sense.
EquivalenceReport equivalence_check(const BundleModel& model, std::int64_t m,
                                    const std::vector<std::int64_t>& l_samples, const Rational& delta,
                                    std::size_t deco = 0);

}  // namespace decostab
