#pragma once

// Numerical model of a decorated generalized parabolic bundle on the
// normalization of a nodal curve, and the stability functionals on it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "decostab/error.hpp"
#include "decostab/rational.hpp"

namespace decostab {

using Index = std::size_t;

/// Type (a, b, c) of a decoration phi: (E^{(x)a})^{(+)b} (x) (det E)^{-c} -> L (x) D^c.
struct DecorationType {
  int a = 1;
  int b = 1;
  int c = 0;
  std::int64_t deg_l = 0;
  std::int64_t deg_d = 0;

  std::int64_t target_degree() const { return deg_l + c * deg_d; }
  friend bool operator==(const DecorationType&, const DecorationType&) = default;
};

void validate(const DecorationType& type);

/// A saturated subsheaf, seen through its numerical invariants.
struct Subobject {
  std::string id;
  int rank = 0;
  std::int64_t degree = 0;
  int qdim = 0;  // dim q(F_{x1} + F_{x2})
  bool beta_flag = false;
  bool higgs_flag = false;

  friend bool operator==(const Subobject&, const Subobject&) = default;
};

// Where the decoration survives. Three encodings share one interface
// (admits / kappa below).

/// Monotone level map: kappa[F] = max number of tensor slots that can be
/// filled from F without killing phi.
struct KappaLevels {
  std::vector<int> kappa;  // indexed by catalog position
  friend bool operator==(const KappaLevels&, const KappaLevels&) = default;
};

/// Up-closure of explicit tuples (F_1, ..., F_a) of catalog positions on
/// which phi restricted to F_1 (x) ... (x) F_a is nonzero.
struct GeneratedPattern {
  std::vector<std::vector<Index>> generators;
  friend bool operator==(const GeneratedPattern&, const GeneratedPattern&) = default;
};

struct DecorationProfile;

/// Segre product of two patterns: the first `first_arity` slots are tested
/// against `first`, the remaining slots against `second`.
struct SegrePattern {
  std::shared_ptr<const DecorationProfile> first;
  std::shared_ptr<const DecorationProfile> second;
  int first_arity = 0;
};

struct DecorationProfile {
  std::variant<KappaLevels, GeneratedPattern, SegrePattern> pattern;
  bool global_epsilon = true;  // phi is not identically zero
};

struct Decoration {
  DecorationType type;
  DecorationProfile profile;
};

/// Finite catalog of saturated subsheaves (always containing 0 and E) with
/// a containment order, plus one or two decorations.
class BundleModel {
 public:
  static constexpr Index zero = 0;
  static constexpr Index whole = 1;

  /// `proper` become catalog positions 2, 3, ...; `containments` are pairs
  /// (lo, hi) of catalog positions meaning lo <= hi. The order is closed
  /// reflexively and transitively, with 0 below and E above everything.
  /// Throws Error{InvalidModel} when an invariant fails.
  BundleModel(int rank, std::int64_t degree, int genus, int dim_r, std::vector<Subobject> proper,
              const std::vector<std::pair<Index, Index>>& containments,
              std::vector<Decoration> decorations);

  int rank() const { return rank_; }
  std::int64_t degree() const { return degree_; }
  int genus() const { return genus_; }
  int dim_r() const { return dim_r_; }

  std::size_t size() const { return items_.size(); }
  const Subobject& item(Index i) const { return items_.at(i); }
  const std::vector<Subobject>& items() const { return items_; }
  std::optional<Index> find(std::string_view id) const;

  bool leq(Index lo, Index hi) const { return leq_[lo * items_.size() + hi] != 0; }
  bool less(Index lo, Index hi) const { return lo != hi && leq(lo, hi); }
  bool is_proper(Index i) const { return i != zero && i != whole; }

  /// Pairs (lo, hi) of distinct proper positions with lo < hi whose
  /// relation is not implied by another proper element in between.
  std::vector<std::pair<Index, Index>> covering_relations() const;

  const std::vector<Decoration>& decorations() const { return decorations_; }
  const Decoration& decoration(std::size_t k = 0) const { return decorations_.at(k); }

  /// Same catalog with a different decoration list (re-validated).
  BundleModel with_decorations(std::vector<Decoration> decorations) const;

 private:
  BundleModel() = default;
  void validate_catalog() const;

  int rank_ = 0;
  std::int64_t degree_ = 0;
  int genus_ = 0;
  int dim_r_ = 0;
  std::vector<Subobject> items_;
  std::vector<char> leq_;
  std::vector<Decoration> decorations_;
};

void validate(const DecorationProfile& profile, const DecorationType& type, const BundleModel& model);

/// k_phi(F, E): the largest number of slots fillable from F.
int kappa(const BundleModel& model, const Decoration& deco, Index f);

/// epsilon(phi|_F) = [kappa(F) = a].
int epsilon(const BundleModel& model, const Decoration& deco, Index f);

/// Whether the tuple of block positions (0-based, block s is E itself) is
/// admissible for the chain `chain_with_whole` (last element must be E).
bool admits(const DecorationProfile& profile, const BundleModel& model,
            std::span<const Index> chain_with_whole, std::span<const int> tuple);

/// Strictly increasing chain 0 < E_1 < ... < E_s < E with positive weights.
struct WeightedFiltration {
  std::vector<Index> steps;
  std::vector<Rational> weights;

  std::size_t length() const { return steps.size(); }
  friend bool operator==(const WeightedFiltration&, const WeightedFiltration&) = default;
};

WeightedFiltration one_step(Index f, Rational weight = Rational(1));
void validate(const WeightedFiltration& filtration, const BundleModel& model);

/// Positive weights used when searching over filtrations.
struct WeightGrid {
  std::vector<Rational> values{Rational(1), Rational(2), Rational(3)};

  static WeightGrid integers(int max_numerator);
};

/// All strictly increasing chains of proper catalog elements, empty chain
/// first, then depth-first in catalog order.
std::vector<std::vector<Index>> proper_chains(const BundleModel& model);

/// Calls `visit` for every filtration over `proper_chains` x grid^s, in a
/// deterministic order. The empty filtration is included.
void for_each_filtration(const BundleModel& model, const WeightGrid& grid,
                         const std::function<void(const WeightedFiltration&)>& visit);

// ---- functionals ---------------------------------------------------------

/// deg F - dim q(F_{x1} + F_{x2})  (stability parameter frozen at 1).
Rational parabolic_degree(const Subobject& f);

/// deg_par with a general parabolic weight alpha: deg F - alpha * qdim F.
Rational parabolic_degree(const Subobject& f, const Rational& alpha);

/// sum_j alpha_j (rk E_j - r, ... [rk E_j times], rk E_j, ... [r - rk E_j times]).
std::vector<Rational> gamma_vector(std::span<const int> step_ranks, std::span<const Rational> weights,
                                   int rank);
std::vector<Rational> gamma_vector(const BundleModel& model, const WeightedFiltration& filtration);

/// -min over admissible tuples of the summed block gamma values, by direct
/// search over tuples (sorted tuples suffice for level maps). Zero when phi
/// is identically zero.
Rational mu_filtration(const BundleModel& model, const WeightedFiltration& filtration,
                       const Decoration& deco);
Rational mu_filtration(const BundleModel& model, const WeightedFiltration& filtration,
                       std::size_t deco = 0);

/// kappa(F) * r - a * rk F, or 0 when phi vanishes identically.
Rational mu_subsheaf(const BundleModel& model, Index f, const Decoration& deco);
Rational mu_subsheaf(const BundleModel& model, Index f, std::size_t deco = 0);

/// sum_i alpha_i mu(E_i, E): the closed form the additivity property predicts.
Rational mu_additive(const BundleModel& model, const WeightedFiltration& filtration,
                     const Decoration& deco);

/// sum_j alpha_j (rk E_j deg_par E - rk E deg_par E_j).
Rational p_functional(const BundleModel& model, const WeightedFiltration& filtration);

// ---- semistability -------------------------------------------------------

enum class Stability { Stable, Semistable, Unstable };

std::string_view to_string(Stability s);

/// Whether a classification satisfies the asked condition: stability when
/// `strict`, semistability otherwise.
inline bool accepts(Stability s, bool strict) {
  return strict ? s == Stability::Stable : s != Stability::Unstable;
}

/// Classification plus the minimizing test object. The minimum is taken over
/// value / (sum of weights); `value` is the functional at `witness` (absent
/// when there is nothing to test).
struct StabilityResult {
  Stability stability = Stability::Stable;
  std::optional<Rational> value;
  std::optional<WeightedFiltration> witness;
  std::size_t tested = 0;
};

/// P + delta1 mu_1 + delta2 mu_2 >= 0 over every filtration from the grid.
StabilityResult check_2dgpb(const BundleModel& model, const Rational& delta1, const Rational& delta2,
                            const WeightGrid& grid = {});

/// P + delta mu >= 0 over every filtration from the grid.
StabilityResult check_dgpb(const BundleModel& model, const Rational& delta, const WeightGrid& grid = {},
                           std::size_t deco = 0);
StabilityResult check_dgpb(const BundleModel& model, const Decoration& deco, const Rational& delta,
                           const WeightGrid& grid = {});

/// Same predicate restricted to one-step filtrations (0 < F < E, (1)).
StabilityResult check_dgpb_one_step(const BundleModel& model, const Rational& delta, std::size_t deco = 0);

/// fr-slope of E minus fr-slope of F, for every proper F.
StabilityResult check_fr(const BundleModel& model, const Rational& delta, std::size_t deco = 0);

/// Witness ordering: step ranks, then degrees, then weights, then positions.
bool witness_less(const BundleModel& model, const WeightedFiltration& lhs, const WeightedFiltration& rhs);

// ---- decorations ---------------------------------------------------------

/// Segre combination: a = a1 + a2, b = b1 b2, c = c1 + c2, deg L = deg L1 + deg L2.
/// Throws CatalogMismatch if the profiles do not live on `model`'s catalog.
Decoration combine_decorations(const BundleModel& model, const Decoration& first, const Decoration& second);

/// mu of the combined decoration equals mu_1 + mu_2 on `filtration`, all
/// three computed by tuple enumeration.
bool mu_segre_additive_check(const BundleModel& model, const WeightedFiltration& filtration);

/// (n-1) Higgs-type fields phi_i: E -> E (x) L_i collapse to one
/// phi: E (x) E^dual -> L_1 (x) ... (x) L_{n-1}; E (x) E^dual sits in
/// E^{(x) r} (x) det E^{-1}, so the type is (a, b, c) = (r, 1, 1), D = det E.
DecorationType nuple_reduce(std::span<const std::int64_t> target_degrees, int rank, std::int64_t degree);

// ---- fr-slopes -----------------------------------------------------------

/// deg_par(F) - a delta epsilon(phi|_F).
Rational decorated_degree(const BundleModel& model, Index f, const Rational& delta, std::size_t deco = 0);

/// (deg_par F - delta a epsilon(phi|_F)) / rk F.
Rational fr_slope(const BundleModel& model, Index f, const Rational& delta, std::size_t deco = 0);

// ---- boundedness ---------------------------------------------------------

struct BoundednessConstants {
  Rational c;            // -(a1 (r-1)) - (a2 (r-1))
  Rational slope_bound;  // (d + r^2 - C) / r
};

BoundednessConstants boundedness_constants(const DecorationType& first, const DecorationType& second, int rank,
                                           std::int64_t degree);
BoundednessConstants boundedness_constants(const DecorationType& only, int rank, std::int64_t degree);

/// max(|C| r alpha_max (r-1), |C| (r-1)).
Rational delta_threshold(const Rational& c, int rank, const Rational& alpha_max);

}  // namespace decostab
