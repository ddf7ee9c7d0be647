#include "decostab/jh.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace decostab {
namespace {

Rational decorated(const BundleModel& model, Index f, const Rational& delta, std::size_t deco) {
  return decorated_degree(model, f, delta, deco);
}

void require_semistable(const BundleModel& model, const Rational& delta, std::size_t deco) {
  const auto res = check_fr(model, delta, deco);
  if (res.stability == Stability::Unstable)
    throw Error(ErrorKind::NotSemistable, "model is not fr-semistable at delta = " + to_string(delta));
}

}  // namespace

Factor GradedObject::total() const {
  Factor sum;
  for (const auto& f : factors) {
    sum.rank += f.rank;
    sum.degree += f.degree;
    sum.qdim += f.qdim;
    sum.epsilon += f.epsilon;
  }
  return sum;
}

GradedObject make_graded(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  return GradedObject{std::move(factors)};
}

Factor subquotient(const BundleModel& model, Index lo, Index hi, std::size_t deco) {
  const Subobject& l = model.item(lo);
  const Subobject& h = model.item(hi);
  const Decoration& d = model.decoration(deco);
  return Factor{h.rank - l.rank, h.degree - l.degree, h.qdim - l.qdim, epsilon(model, d, hi) - epsilon(model, d, lo)};
}

Factor quotient_descriptor(const BundleModel& model, Index f, std::size_t deco) {
  return subquotient(model, f, BundleModel::whole, deco);
}

Rational fr_slope(const BundleModel& model, Index lo, Index hi, const Rational& delta, std::size_t deco) {
  const int rk = model.item(hi).rank - model.item(lo).rank;
  if (rk == 0) throw Error(ErrorKind::ZeroRank, "fr-slope of a rank-zero subquotient");
  return (decorated(model, hi, delta, deco) - decorated(model, lo, delta, deco)) / Rational(rk);
}

bool is_stable_factor(const BundleModel& model, Index lo, Index hi, const Rational& delta, std::size_t deco) {
  if (!model.less(lo, hi)) throw Error(ErrorKind::EmptyInterval, "stable factor needs lo < hi");
  const Rational slope = fr_slope(model, lo, hi, delta, deco);
  for (Index h = 0; h < model.size(); ++h)
    if (model.less(lo, h) && model.less(h, hi) && !(fr_slope(model, lo, h, delta, deco) < slope)) return false;
  return true;
}

GradedObject graded_of_chain(const BundleModel& model, const std::vector<Index>& chain, std::size_t deco) {
  std::vector<Factor> factors;
  for (std::size_t j = 1; j < chain.size(); ++j) factors.push_back(subquotient(model, chain[j - 1], chain[j], deco));
  return make_graded(std::move(factors));
}

JordanHolder jordan_holder(const BundleModel& model, const Rational& delta, std::size_t deco) {
  require_semistable(model, delta, deco);
  JordanHolder out;
  out.slope = fr_slope(model, BundleModel::whole, delta, deco);
  out.steps.push_back(BundleModel::zero);
  while (out.steps.back() != BundleModel::whole) {
    const Index cur = out.steps.back();
    std::optional<Index> pick;
    auto key = [&](Index i) {
      const Subobject& s = model.item(i);
      return std::make_tuple(s.rank, s.degree, s.qdim, i);
    };
    for (Index h = 0; h < model.size(); ++h) {
      if (!model.less(cur, h)) continue;
      if (fr_slope(model, cur, h, delta, deco) != out.slope) continue;
      if (!is_stable_factor(model, cur, h, delta, deco)) continue;
      if (!pick || key(h) < key(*pick)) pick = h;
    }
    if (!pick)
      throw Error(ErrorKind::CatalogIncomplete,
                  "no stable step of equal fr-slope above \"" + model.item(cur).id + "\" in the catalog");
    out.steps.push_back(*pick);
  }
  out.gr = graded_of_chain(model, out.steps, deco);
  return out;
}

std::vector<std::vector<Index>> jordan_holder_chains(const BundleModel& model, const Rational& delta,
                                                     std::size_t deco) {
  require_semistable(model, delta, deco);
  const Rational slope = fr_slope(model, BundleModel::whole, delta, deco);
  std::vector<std::vector<Index>> out;
  std::vector<Index> chain{BundleModel::zero};
  std::function<void()> extend = [&] {
    const Index cur = chain.back();
    if (cur == BundleModel::whole) {
      out.push_back(chain);
      return;
    }
    for (Index h = 0; h < model.size(); ++h) {
      if (!model.less(cur, h) || fr_slope(model, cur, h, delta, deco) != slope) continue;
      if (!is_stable_factor(model, cur, h, delta, deco)) continue;
      chain.push_back(h);
      extend();
      chain.pop_back();
    }
  };
  extend();
  return out;
}

bool s_equivalent(const BundleModel& a, const BundleModel& b, const Rational& delta) {
  const Rational sa = fr_slope(a, BundleModel::whole, delta);
  const Rational sb = fr_slope(b, BundleModel::whole, delta);
  if (sa != sb) throw Error(ErrorKind::SlopeMismatch, "fr-slopes " + to_string(sa) + " and " + to_string(sb) + " differ");
  return jordan_holder(a, delta).gr == jordan_holder(b, delta).gr;
}

}  // namespace decostab
