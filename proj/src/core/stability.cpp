#include <algorithm>

#include "decostab/core.hpp"

namespace decostab {
namespace {

template <typename Key>
int compare_keys(const BundleModel& model, const WeightedFiltration& lhs, const WeightedFiltration& rhs, Key key) {
  const std::size_t n = std::min(lhs.steps.size(), rhs.steps.size());
  for (std::size_t j = 0; j < n; ++j) {
    const auto l = key(model, lhs, j);
    const auto r = key(model, rhs, j);
    if (l < r) return -1;
    if (r < l) return 1;
  }
  if (lhs.steps.size() != rhs.steps.size()) return lhs.steps.size() < rhs.steps.size() ? -1 : 1;
  return 0;
}

// Candidates are ranked by value / (sum of weights), which is invariant under
// rescaling the weights; ties go to the smaller witness, so the unscaled
// filtration is reported together with its own value.
class MinTracker {
 public:
  explicit MinTracker(const BundleModel& model) : model_(model) {}

  void offer(const WeightedFiltration& f, const Rational& value) {
    ++result_.tested;
    Rational total(0);
    for (const auto& w : f.weights) total += w;
    const Rational key = value / total;
    if (!best_ || key < *best_ || (key == *best_ && witness_less(model_, f, *result_.witness))) {
      best_ = key;
      result_.value = value;
      result_.witness = f;
    }
  }

  StabilityResult finish() {
    if (!result_.value || *result_.value > Rational(0))
      result_.stability = Stability::Stable;
    else if (*result_.value == Rational(0))
      result_.stability = Stability::Semistable;
    else
      result_.stability = Stability::Unstable;
    return result_;
  }

 private:
  const BundleModel& model_;
  std::optional<Rational> best_;
  StabilityResult result_;
};

}  // namespace

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "STABLE";
    case Stability::Semistable: return "SEMISTABLE";
    case Stability::Unstable: return "UNSTABLE";
  }
  return "UNKNOWN";
}

bool witness_less(const BundleModel& model, const WeightedFiltration& lhs, const WeightedFiltration& rhs) {
  int c = compare_keys(model, lhs, rhs,
                       [](const BundleModel& m, const WeightedFiltration& f, std::size_t j) {
                         return m.item(f.steps[j]).rank;
                       });
  if (c == 0)
    c = compare_keys(model, lhs, rhs, [](const BundleModel& m, const WeightedFiltration& f, std::size_t j) {
      return m.item(f.steps[j]).degree;
    });
  if (c == 0)
    c = compare_keys(model, lhs, rhs,
                     [](const BundleModel&, const WeightedFiltration& f, std::size_t j) { return f.weights[j]; });
  if (c == 0)
    c = compare_keys(model, lhs, rhs,
                     [](const BundleModel&, const WeightedFiltration& f, std::size_t j) { return f.steps[j]; });
  return c < 0;
}

StabilityResult check_2dgpb(const BundleModel& model, const Rational& delta1, const Rational& delta2,
                            const WeightGrid& grid) {
  if (model.decorations().size() < 2) throw Error(ErrorKind::InvalidModel, "2-dgpb check needs two decorations");
  MinTracker tracker(model);
  for_each_filtration(model, grid, [&](const WeightedFiltration& f) {
    if (f.steps.empty()) return;
    tracker.offer(f, p_functional(model, f) + delta1 * mu_filtration(model, f, model.decoration(0)) +
                         delta2 * mu_filtration(model, f, model.decoration(1)));
  });
  return tracker.finish();
}

StabilityResult check_dgpb(const BundleModel& model, const Decoration& deco, const Rational& delta,
                           const WeightGrid& grid) {
  MinTracker tracker(model);
  for_each_filtration(model, grid, [&](const WeightedFiltration& f) {
    if (f.steps.empty()) return;
    tracker.offer(f, p_functional(model, f) + delta * mu_filtration(model, f, deco));
  });
  return tracker.finish();
}

StabilityResult check_dgpb(const BundleModel& model, const Rational& delta, const WeightGrid& grid,
                           std::size_t deco) {
  return check_dgpb(model, model.decoration(deco), delta, grid);
}

StabilityResult check_dgpb_one_step(const BundleModel& model, const Rational& delta, std::size_t deco) {
  MinTracker tracker(model);
  for (Index f = 2; f < model.size(); ++f) {
    const auto filtration = one_step(f);
    tracker.offer(filtration, p_functional(model, filtration) + delta * mu_filtration(model, filtration, deco));
  }
  return tracker.finish();
}

StabilityResult check_fr(const BundleModel& model, const Rational& delta, std::size_t deco) {
  MinTracker tracker(model);
  const Rational slope_e = fr_slope(model, BundleModel::whole, delta, deco);
  for (Index f = 2; f < model.size(); ++f) tracker.offer(one_step(f), slope_e - fr_slope(model, f, delta, deco));
  return tracker.finish();
}

}  // namespace decostab
