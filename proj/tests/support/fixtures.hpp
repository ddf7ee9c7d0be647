#pragma once

// Small builders for hand-written test models.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decostab/core.hpp"

namespace decostab::testing {

struct Sub {
  std::string id;
  int rank;
  std::int64_t degree;
  int qdim;
  std::vector<std::string> contains{};
};

struct Deco {
  DecorationType type;
  std::map<std::string, int> kappa;  // proper ids; 0 -> 0 and E -> a are filled in
};

inline BundleModel build(int r, std::int64_t d, int g, int dim_r, const std::vector<Sub>& subs,
                         const std::vector<Deco>& decos) {
  std::vector<Subobject> proper;
  std::map<std::string, Index> pos{{"0", 0}, {"E", 1}};
  for (const auto& s : subs) {
    pos[s.id] = proper.size() + 2;
    proper.push_back(Subobject{s.id, s.rank, s.degree, s.qdim});
  }
  std::vector<std::pair<Index, Index>> order;
  for (const auto& s : subs)
    for (const auto& lo : s.contains) order.emplace_back(pos.at(lo), pos.at(s.id));

  std::vector<Decoration> decorations;
  for (const auto& d : decos) {
    KappaLevels levels{std::vector<int>(proper.size() + 2, 0)};
    levels.kappa[1] = d.type.a;
    for (const auto& [id, k] : d.kappa) levels.kappa[pos.at(id)] = k;
    decorations.push_back(Decoration{d.type, DecorationProfile{levels, true}});
  }
  return BundleModel(r, d, g, dim_r, std::move(proper), order, std::move(decorations));
}

inline DecorationType type_a(int a) { return DecorationType{a, 1, 0, 0, 0}; }

/// E(r=2, d=0, qdim 2) with one subobject F(1, 0, qdim 1), genus 2.
inline BundleModel worked(int kappa_f, int a = 2, std::int64_t deg_f = 0) {
  return build(2, 0, 2, 2, {{"F", 1, deg_f, 1}}, {{type_a(a), {{"F", kappa_f}}}});
}

/// Rank-3 chain 0 < E1 < E2 < E with ranks 1, 2.
inline BundleModel rank3_chain(int a, int k1, int k2, std::int64_t d1 = 0, std::int64_t d2 = 0) {
  return build(3, 0, 2, 3, {{"E1", 1, d1, 1}, {"E2", 2, d2, 2, {"E1"}}}, {{type_a(a), {{"E1", k1}, {"E2", k2}}}});
}

}  // namespace decostab::testing
