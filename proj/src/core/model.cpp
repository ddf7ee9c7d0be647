#include <algorithm>
#include <set>
#include <string>

#include "decostab/core.hpp"

namespace decostab {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidModel, what); }

}  // namespace

void validate(const DecorationType& type) {
  if (type.a < 1) invalid("decoration a must be >= 1");
  if (type.b < 1) invalid("decoration b must be >= 1");
  if (type.c < 0) invalid("decoration c must be >= 0");
}

BundleModel::BundleModel(int rank, std::int64_t degree, int genus, int dim_r, std::vector<Subobject> proper,
                         const std::vector<std::pair<Index, Index>>& containments,
                         std::vector<Decoration> decorations)
    : rank_(rank), degree_(degree), genus_(genus), dim_r_(dim_r) {
  if (rank_ < 1) invalid("rank must be >= 1");
  if (genus_ < 0) invalid("genus must be >= 0");
  if (dim_r_ < 0 || dim_r_ > 2 * rank_) invalid("dim R must lie in [0, 2r]");

  items_.reserve(proper.size() + 2);
  items_.push_back(Subobject{"0", 0, 0, 0, false, false});
  items_.push_back(Subobject{"E", rank_, degree_, dim_r_, false, false});
  for (auto& s : proper) items_.push_back(std::move(s));

  const std::size_t n = items_.size();
  leq_.assign(n * n, 0);
  for (Index i = 0; i < n; ++i) {
    leq_[i * n + i] = 1;
    leq_[zero * n + i] = 1;
    leq_[i * n + whole] = 1;
  }
  for (const auto& [lo, hi] : containments) {
    if (lo >= n || hi >= n) invalid("containment refers to an unknown catalog position");
    leq_[lo * n + hi] = 1;
  }
  // Warshall closure.
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (Index j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = 1;

  validate_catalog();
  decorations_ = std::move(decorations);
  for (const auto& deco : decorations_) {
    validate(deco.type);
    validate(deco.profile, deco.type, *this);
  }
}

void BundleModel::validate_catalog() const {
  std::set<std::string> seen;
  for (Index i = 0; i < items_.size(); ++i) {
    const Subobject& s = items_[i];
    if (!seen.insert(s.id).second) invalid("duplicate catalog id \"" + s.id + "\"");
    if (is_proper(i)) {
      if (s.id.empty()) invalid("empty catalog id");
      if (s.rank < 1 || s.rank >= rank_) invalid("proper subobject \"" + s.id + "\" must have rank in [1, r-1]");
      if (s.qdim < 0 || s.qdim > std::min(2 * s.rank, dim_r_))
        invalid("qdim of \"" + s.id + "\" must lie in [0, min(2 rank, dim R)]");
    }
  }
  for (Index i = 0; i < items_.size(); ++i) {
    for (Index j = 0; j < items_.size(); ++j) {
      if (i == j || !leq(i, j)) continue;
      if (leq(j, i)) invalid("containment cycle between \"" + items_[i].id + "\" and \"" + items_[j].id + "\"");
      if (items_[i].rank >= items_[j].rank)
        invalid("\"" + items_[i].id + "\" < \"" + items_[j].id + "\" needs strictly increasing rank");
      if (items_[i].qdim > items_[j].qdim)
        invalid("\"" + items_[i].id + "\" < \"" + items_[j].id + "\" needs non-decreasing qdim");
    }
  }
}

std::optional<Index> BundleModel::find(std::string_view id) const {
  for (Index i = 0; i < items_.size(); ++i)
    if (items_[i].id == id) return i;
  return std::nullopt;
}

std::vector<std::pair<Index, Index>> BundleModel::covering_relations() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index i = 2; i < items_.size(); ++i) {
    for (Index j = 2; j < items_.size(); ++j) {
      if (!less(i, j)) continue;
      bool covered = true;
      for (Index k = 2; k < items_.size() && covered; ++k)
        if (less(i, k) && less(k, j)) covered = false;
      if (covered) out.emplace_back(i, j);
    }
  }
  return out;
}

BundleModel BundleModel::with_decorations(std::vector<Decoration> decorations) const {
  BundleModel copy(*this);
  copy.decorations_ = std::move(decorations);
  for (const auto& deco : copy.decorations_) {
    validate(deco.type);
    validate(deco.profile, deco.type, copy);
  }
  return copy;
}

namespace {

void validate_pattern(const DecorationProfile& profile, int arity, const BundleModel& model) {
  const std::size_t n = model.size();
  if (const auto* levels = std::get_if<KappaLevels>(&profile.pattern)) {
    const auto& k = levels->kappa;
    if (k.size() != n) throw Error(ErrorKind::CatalogMismatch, "kappa map does not cover the catalog");
    if (k[BundleModel::zero] != 0) invalid("kappa(0) must be 0");
    for (Index i = 0; i < n; ++i) {
      if (k[i] < 0 || k[i] > arity) invalid("kappa(\"" + model.item(i).id + "\") out of [0, a]");
      if (!profile.global_epsilon && k[i] != 0) invalid("kappa must vanish when phi is identically zero");
    }
    if (profile.global_epsilon && k[BundleModel::whole] != arity) invalid("kappa(E) must equal a when phi != 0");
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (model.leq(i, j) && k[i] > k[j])
          invalid("kappa is not monotone: \"" + model.item(i).id + "\" <= \"" + model.item(j).id + "\"");
  } else if (const auto* gen = std::get_if<GeneratedPattern>(&profile.pattern)) {
    for (const auto& g : gen->generators) {
      if (static_cast<int>(g.size()) != arity) invalid("vanishing generator length must equal a");
      for (Index f : g) {
        if (f >= n) throw Error(ErrorKind::CatalogMismatch, "vanishing generator refers to an unknown subobject");
        if (f == BundleModel::zero) invalid("vanishing generator cannot use the zero subobject");
      }
    }
    if (profile.global_epsilon == gen->generators.empty())
      invalid("epsilon flag disagrees with the vanishing generators");
  } else {
    const auto& segre = std::get<SegrePattern>(profile.pattern);
    if (!segre.first || !segre.second) invalid("incomplete Segre pattern");
    if (segre.first_arity < 1 || segre.first_arity >= arity) invalid("Segre split out of range");
    validate_pattern(*segre.first, segre.first_arity, model);
    validate_pattern(*segre.second, arity - segre.first_arity, model);
    if (profile.global_epsilon != (segre.first->global_epsilon && segre.second->global_epsilon))
      invalid("epsilon flag of a Segre product must be the product of its factors");
  }
}

int kappa_of(const DecorationProfile& profile, int arity, const BundleModel& model, Index f) {
  if (const auto* levels = std::get_if<KappaLevels>(&profile.pattern)) return levels->kappa.at(f);
  if (const auto* gen = std::get_if<GeneratedPattern>(&profile.pattern)) {
    int best = 0;
    for (const auto& g : gen->generators) {
      const auto count = std::count_if(g.begin(), g.end(), [&](Index x) { return model.leq(x, f); });
      best = std::max(best, static_cast<int>(count));
    }
    return best;
  }
  const auto& segre = std::get<SegrePattern>(profile.pattern);
  return kappa_of(*segre.first, segre.first_arity, model, f) +
         kappa_of(*segre.second, arity - segre.first_arity, model, f);
}

}  // namespace

void validate(const DecorationProfile& profile, const DecorationType& type, const BundleModel& model) {
  validate_pattern(profile, type.a, model);
}

int kappa(const BundleModel& model, const Decoration& deco, Index f) {
  if (f == BundleModel::zero) return 0;
  return kappa_of(deco.profile, deco.type.a, model, f);
}

int epsilon(const BundleModel& model, const Decoration& deco, Index f) {
  return kappa(model, deco, f) == deco.type.a ? 1 : 0;
}

bool admits(const DecorationProfile& profile, const BundleModel& model, std::span<const Index> chain_with_whole,
            std::span<const int> tuple) {
  if (!profile.global_epsilon) return false;
  if (const auto* levels = std::get_if<KappaLevels>(&profile.pattern)) {
    // prefix counts #{l : j_l <= j} must not exceed kappa(E_j)
    const std::size_t blocks = chain_with_whole.size();
    for (std::size_t j = 0; j < blocks; ++j) {
      int count = 0;
      for (int t : tuple)
        if (t <= static_cast<int>(j)) ++count;
      if (count > levels->kappa[chain_with_whole[j]]) return false;
    }
    return true;
  }
  if (const auto* gen = std::get_if<GeneratedPattern>(&profile.pattern)) {
    return std::any_of(gen->generators.begin(), gen->generators.end(), [&](const std::vector<Index>& g) {
      for (std::size_t l = 0; l < tuple.size(); ++l)
        if (!model.leq(g[l], chain_with_whole[tuple[l]])) return false;
      return true;
    });
  }
  const auto& segre = std::get<SegrePattern>(profile.pattern);
  const auto split = static_cast<std::size_t>(segre.first_arity);
  return admits(*segre.first, model, chain_with_whole, tuple.subspan(0, split)) &&
         admits(*segre.second, model, chain_with_whole, tuple.subspan(split));
}

WeightedFiltration one_step(Index f, Rational weight) { return WeightedFiltration{{f}, {weight}}; }

void validate(const WeightedFiltration& filtration, const BundleModel& model) {
  if (filtration.steps.size() != filtration.weights.size()) invalid("filtration needs one weight per step");
  for (std::size_t j = 0; j < filtration.steps.size(); ++j) {
    const Index f = filtration.steps[j];
    if (f >= model.size() || !model.is_proper(f)) invalid("filtration steps must be proper catalog subobjects");
    if (filtration.weights[j] <= Rational(0)) invalid("filtration weights must be positive");
    if (j > 0 && !model.less(filtration.steps[j - 1], f)) invalid("filtration steps must be strictly increasing");
  }
}

WeightGrid WeightGrid::integers(int max_numerator) {
  WeightGrid grid;
  grid.values.clear();
  for (int k = 1; k <= max_numerator; ++k) grid.values.emplace_back(k);
  return grid;
}

std::vector<std::vector<Index>> proper_chains(const BundleModel& model) {
  std::vector<std::vector<Index>> out{{}};
  std::vector<Index> current;
  std::function<void()> extend = [&] {
    for (Index i = 2; i < model.size(); ++i) {
      if (!current.empty() && !model.less(current.back(), i)) continue;
      current.push_back(i);
      out.push_back(current);
      extend();
      current.pop_back();
    }
  };
  extend();
  return out;
}

void for_each_filtration(const BundleModel& model, const WeightGrid& grid,
                         const std::function<void(const WeightedFiltration&)>& visit) {
  if (grid.values.empty()) throw Error(ErrorKind::EmptyWeightGrid, "no weights to try");
  for (const auto& chain : proper_chains(model)) {
    WeightedFiltration filtration{chain, std::vector<Rational>(chain.size(), grid.values.front())};
    std::vector<std::size_t> digits(chain.size(), 0);
    while (true) {
      visit(filtration);
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == grid.values.size()) {
        digits[pos] = 0;
        filtration.weights[pos] = grid.values[0];
        ++pos;
      }
      if (pos == digits.size()) break;
      filtration.weights[pos] = grid.values[digits[pos]];
    }
  }
}

}  // namespace decostab
