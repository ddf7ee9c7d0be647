#include <algorithm>
#include <numeric>
#include <optional>

#include <boost/container/small_vector.hpp>

#include "decostab/core.hpp"

namespace decostab {
namespace {

// w * denom for a denominator dividing denom
std::int64_t scaled(const Rational& w, std::int64_t denom) { return w.numerator() * (denom / w.denominator()); }

}  // namespace

Rational parabolic_degree(const Subobject& f) { return parabolic_degree(f, Rational(1)); }

Rational parabolic_degree(const Subobject& f, const Rational& alpha) {
  return Rational(f.degree) - alpha * Rational(f.qdim);
}

std::vector<Rational> gamma_vector(std::span<const int> step_ranks, std::span<const Rational> weights, int rank) {
  std::vector<Rational> gamma(static_cast<std::size_t>(rank), Rational(0));
  for (std::size_t j = 0; j < step_ranks.size(); ++j) {
    const int rk = step_ranks[j];
    for (int i = 0; i < rank; ++i) gamma[i] += weights[j] * Rational(i < rk ? rk - rank : rk);
  }
  return gamma;
}

std::vector<Rational> gamma_vector(const BundleModel& model, const WeightedFiltration& filtration) {
  std::vector<int> ranks;
  ranks.reserve(filtration.steps.size());
  for (Index f : filtration.steps) ranks.push_back(model.item(f).rank);
  return gamma_vector(ranks, filtration.weights, model.rank());
}

Rational mu_filtration(const BundleModel& model, const WeightedFiltration& filtration, const Decoration& deco) {
  validate(filtration, model);
  if (!deco.profile.global_epsilon) return Rational(0);

  // Scale the weights to integers alpha_i = w_i / denom. gamma is constant
  // on each block E_j \ E_{j-1}; block j takes sum_i w_i rk E_i - r sum_{i >= j} w_i.
  const std::size_t s = filtration.steps.size();
  std::int64_t denom = 1;
  for (const auto& w : filtration.weights) denom = std::lcm(denom, w.denominator());
  std::int64_t weighted_ranks = 0;
  for (std::size_t i = 0; i < s; ++i)
    weighted_ranks += scaled(filtration.weights[i], denom) * model.item(filtration.steps[i]).rank;
  boost::container::small_vector<std::int64_t, 8> value(s + 1, weighted_ranks);
  std::int64_t tail = 0;
  for (std::size_t j = s; j-- > 0;) {
    tail += scaled(filtration.weights[j], denom);
    value[j] -= model.rank() * tail;
  }

  boost::container::small_vector<Index, 8> chain(filtration.steps.begin(), filtration.steps.end());
  chain.push_back(BundleModel::whole);

  const int a = deco.type.a;
  boost::container::small_vector<int, 8> tuple(static_cast<std::size_t>(a), 0);
  std::optional<std::int64_t> best;
  auto offer = [&] {
    std::int64_t sum = 0;
    for (int t : tuple) sum += value[t];
    if (!best || sum < *best) best = sum;
  };

  if (const auto* levels = std::get_if<KappaLevels>(&deco.profile.pattern)) {
    // Level maps only see the multiset of a tuple, so non-decreasing tuples suffice.
    while (true) {
      bool ok = true;
      std::size_t l = 0;
      for (std::size_t j = 0; j < s && ok; ++j) {
        while (l < tuple.size() && tuple[l] <= static_cast<int>(j)) ++l;
        ok = static_cast<int>(l) <= levels->kappa[chain[j]];
      }
      if (ok) offer();
      std::size_t pos = tuple.size();
      while (pos > 0 && tuple[pos - 1] == static_cast<int>(s)) --pos;
      if (pos == 0) break;
      const int next = tuple[pos - 1] + 1;
      std::fill(tuple.begin() + static_cast<std::ptrdiff_t>(pos) - 1, tuple.end(), next);
    }
  } else {
    while (true) {
      if (admits(deco.profile, model, {chain.data(), chain.size()}, {tuple.data(), tuple.size()})) offer();
      std::size_t pos = 0;
      while (pos < tuple.size() && ++tuple[pos] > static_cast<int>(s)) tuple[pos++] = 0;
      if (pos == tuple.size()) break;
    }
  }
  if (!best) throw Error(ErrorKind::NoAdmissibleTuple, "phi != 0 but the profile admits no tuple");
  return Rational(-*best, denom);
}

Rational mu_filtration(const BundleModel& model, const WeightedFiltration& filtration, std::size_t deco) {
  return mu_filtration(model, filtration, model.decoration(deco));
}

Rational mu_subsheaf(const BundleModel& model, Index f, const Decoration& deco) {
  if (!deco.profile.global_epsilon) return Rational(0);
  return Rational(kappa(model, deco, f) * model.rank() - deco.type.a * model.item(f).rank);
}

Rational mu_subsheaf(const BundleModel& model, Index f, std::size_t deco) {
  return mu_subsheaf(model, f, model.decoration(deco));
}

Rational mu_additive(const BundleModel& model, const WeightedFiltration& filtration, const Decoration& deco) {
  if (!deco.profile.global_epsilon) return Rational(0);
  Rational total(0);
  for (std::size_t j = 0; j < filtration.steps.size(); ++j)
    total += filtration.weights[j] * mu_subsheaf(model, filtration.steps[j], deco);
  return total;
}

Rational p_functional(const BundleModel& model, const WeightedFiltration& filtration) {
  // deg_par is an integer at alpha = 1
  const Subobject& e = model.item(BundleModel::whole);
  const std::int64_t deg_par_e = e.degree - e.qdim;
  std::int64_t denom = 1;
  for (const auto& w : filtration.weights) denom = std::lcm(denom, w.denominator());
  std::int64_t total = 0;
  for (std::size_t j = 0; j < filtration.steps.size(); ++j) {
    const Subobject& f = model.item(filtration.steps[j]);
    total += scaled(filtration.weights[j], denom) * (f.rank * deg_par_e - model.rank() * (f.degree - f.qdim));
  }
  return Rational(total, denom);
}

Rational decorated_degree(const BundleModel& model, Index f, const Rational& delta, std::size_t deco) {
  const Decoration& d = model.decoration(deco);
  return parabolic_degree(model.item(f)) - Rational(d.type.a * epsilon(model, d, f)) * delta;
}

Rational fr_slope(const BundleModel& model, Index f, const Rational& delta, std::size_t deco) {
  const int rk = model.item(f).rank;
  if (rk == 0) throw Error(ErrorKind::ZeroRank, "fr-slope of a rank-zero subobject");
  return decorated_degree(model, f, delta, deco) / Rational(rk);
}

Decoration combine_decorations(const BundleModel& model, const Decoration& first, const Decoration& second) {
  validate(first.type);
  validate(second.type);
  try {
    validate(first.profile, first.type, model);
    validate(second.profile, second.type, model);
  } catch (const Error& e) {
    throw Error(ErrorKind::CatalogMismatch, e.what());
  }
  if (first.type.deg_d != second.type.deg_d)
    throw Error(ErrorKind::InvalidModel, "both decorations must twist by the same determinant D");

  Decoration out;
  out.type.a = first.type.a + second.type.a;
  out.type.b = first.type.b * second.type.b;
  out.type.c = first.type.c + second.type.c;
  out.type.deg_l = first.type.deg_l + second.type.deg_l;
  out.type.deg_d = first.type.deg_d;
  out.profile.pattern = SegrePattern{std::make_shared<const DecorationProfile>(first.profile),
                                     std::make_shared<const DecorationProfile>(second.profile), first.type.a};
  out.profile.global_epsilon = first.profile.global_epsilon && second.profile.global_epsilon;
  return out;
}

bool mu_segre_additive_check(const BundleModel& model, const WeightedFiltration& filtration) {
  if (model.decorations().size() < 2) throw Error(ErrorKind::InvalidModel, "model carries a single decoration");
  const Decoration combined = combine_decorations(model, model.decoration(0), model.decoration(1));
  return mu_filtration(model, filtration, combined) ==
         mu_filtration(model, filtration, model.decoration(0)) + mu_filtration(model, filtration, model.decoration(1));
}

DecorationType nuple_reduce(std::span<const std::int64_t> target_degrees, int rank, std::int64_t degree) {
  if (target_degrees.empty()) throw Error(ErrorKind::EmptyList, "no morphisms to combine");
  DecorationType type;
  type.a = rank;
  type.b = 1;
  type.c = 1;
  type.deg_l = std::accumulate(target_degrees.begin(), target_degrees.end(), std::int64_t{0});
  type.deg_d = degree;
  return type;
}

BoundednessConstants boundedness_constants(const DecorationType& first, const DecorationType& second, int rank,
                                           std::int64_t degree) {
  const Rational r(rank);
  BoundednessConstants out;
  out.c = -Rational(first.a * (rank - 1)) - Rational(second.a * (rank - 1));
  out.slope_bound = (Rational(degree) + r * r - out.c) / r;
  return out;
}

BoundednessConstants boundedness_constants(const DecorationType& only, int rank, std::int64_t degree) {
  const Rational r(rank);
  BoundednessConstants out;
  out.c = -Rational(only.a * (rank - 1));
  out.slope_bound = (Rational(degree) + r * r - out.c) / r;
  return out;
}

Rational delta_threshold(const Rational& c, int rank, const Rational& alpha_max) {
  if (alpha_max <= Rational(0)) throw Error(ErrorKind::InvalidModel, "alpha_max must be positive");
  const Rational magnitude = abs(c);
  const Rational r(rank);
  return std::max(magnitude * r * alpha_max * (r - 1), magnitude * (r - 1));
}

}  // namespace decostab
