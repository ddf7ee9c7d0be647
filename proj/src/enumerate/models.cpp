#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "decostab/enumerate.hpp"

namespace decostab {
namespace {

void partitions(int r, int largest, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (r == 0) {
    out.push_back(prefix);
    return;
  }
  for (int p = std::min(r, largest); p >= 1; --p) {
    prefix.push_back(p);
    partitions(r - p, p, prefix, out);
    prefix.pop_back();
  }
}

// All integer vectors with lo[i] <= v[i] <= hi[i], lexicographic.
template <typename F>
void for_each_vector(const std::vector<int>& lo, const std::vector<int>& hi, F&& visit) {
  std::vector<int> v(lo);
  if (v.empty()) {
    visit(v);
    return;
  }
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return;
  while (true) {
    visit(v);
    std::size_t pos = v.size();
    while (pos > 0) {
      --pos;
      if (v[pos] < hi[pos]) {
        ++v[pos];
        for (std::size_t j = pos + 1; j < v.size(); ++j) v[j] = lo[j];
        break;
      }
      if (pos == 0) return;
    }
  }
}

// Atoms the family cannot tell apart would give the same model as the
// coarser decomposition that merges them.
bool separates(const std::vector<unsigned>& family, int atoms) {
  for (int i = 0; i < atoms; ++i)
    for (int j = i + 1; j < atoms; ++j)
      if (std::none_of(family.begin(), family.end(), [&](unsigned m) { return (m >> i & 1) != (m >> j & 1); }))
        return false;
  return true;
}

// Monotone level maps on `masks` into [0, a]; subset order on masks.
void monotone_levels(const std::vector<unsigned>& masks, int a, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
  const std::size_t i = current.size();
  if (i == masks.size()) {
    out.push_back(current);
    return;
  }
  int lo = 0, hi = a;
  for (std::size_t j = 0; j < i; ++j) {
    if ((masks[j] & masks[i]) == masks[j]) lo = std::max(lo, current[j]);
    if ((masks[j] & masks[i]) == masks[i]) hi = std::min(hi, current[j]);
  }
  for (int k = lo; k <= hi; ++k) {
    current.push_back(k);
    monotone_levels(masks, a, current, out);
    current.pop_back();
  }
}

struct Profile {
  int a = 1;
  bool eps = true;
  std::vector<int> levels;  // per family element
};

std::vector<Profile> profiles_for(const std::vector<unsigned>& family, int a, bool zero_decoration) {
  std::vector<Profile> out;
  std::vector<std::vector<int>> maps;
  std::vector<int> current;
  monotone_levels(family, a, current, maps);
  for (auto& m : maps) out.push_back(Profile{a, true, std::move(m)});
  if (zero_decoration) out.push_back(Profile{a, false, std::vector<int>(family.size(), 0)});
  return out;
}

unsigned permute_mask(unsigned mask, const std::vector<int>& perm) {
  unsigned out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (mask >> i & 1) out |= 1u << perm[i];
  return out;
}

using Key = std::tuple<std::vector<int>, std::vector<int>, std::vector<std::vector<int>>>;

Key make_key(const std::vector<int>& degs, const std::vector<int>& qdims, const std::vector<unsigned>& family,
             const std::vector<const Profile*>& profiles, const std::vector<int>& perm) {
  std::vector<int> d(degs.size()), q(qdims.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    d[perm[i]] = degs[i];
    q[perm[i]] = qdims[i];
  }
  std::vector<std::vector<int>> rows;
  for (std::size_t k = 0; k < family.size(); ++k) {
    std::vector<int> row{static_cast<int>(permute_mask(family[k], perm))};
    for (const Profile* p : profiles) row.push_back(p->levels[k]);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  return {std::move(d), std::move(q), std::move(rows)};
}

std::string mask_id(unsigned mask, int atoms) {
  std::string id = "F";
  for (int i = 0; i < atoms; ++i)
    if (mask >> i & 1) id += static_cast<char>('1' + i);
  return id;
}

}  // namespace

void validate(const EnumerationBounds& b) {
  auto bad = [](const char* what) { throw Error(ErrorKind::InvalidModel, what); };
  if (b.r_max < 0) bad("r_max must be >= 0");
  if (b.r_max > 6) bad("r_max above 6 is not supported");
  if (b.d_max < 0) bad("d_max must be >= 0");
  if (b.atom_degree_max < 0) bad("atom_degree_max must be >= 0");
  if (b.qdim_max < 0) bad("qdim_max must be >= 0");
  if (b.a_max < 0) bad("a_max must be >= 0");
  if (b.weight_max < 1) bad("weight_max must be >= 1");
  if (b.catalog_max < 0) bad("catalog_max must be >= 0");
  for (int g : b.genera)
    if (g < 0) bad("genus must be >= 0");
}

void for_each_model(const EnumerationBounds& bounds, int decorations,
                    const std::function<void(const EnumeratedModel&)>& visit) {
  validate(bounds);
  if (decorations < 1 || decorations > 2) throw Error(ErrorKind::InvalidModel, "one or two decorations");
  std::size_t serial = 0;
  const char prefix = decorations == 1 ? 'S' : 'D';

  for (int r = 1; r <= bounds.r_max; ++r) {
    std::vector<std::vector<int>> parts;
    std::vector<int> prefix_parts;
    partitions(r, r, prefix_parts, parts);
    for (int genus : bounds.genera) {
      for (const auto& rho : parts) {
        const int t = static_cast<int>(rho.size());
        const unsigned full = (1u << t) - 1;

        std::vector<std::vector<int>> perms;
        std::vector<int> perm(t);
        std::iota(perm.begin(), perm.end(), 0);
        do {
          bool ok = true;
          for (int i = 0; i < t; ++i) ok = ok && rho[perm[i]] == rho[i];
          if (ok) perms.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<unsigned> proper_masks;
        for (unsigned m = 1; m < full; ++m) proper_masks.push_back(m);
        std::vector<std::vector<unsigned>> families;
        const std::size_t max_family = static_cast<std::size_t>(bounds.catalog_max);
        for (std::size_t size = 0; size <= std::min(max_family, proper_masks.size()); ++size) {
          std::vector<bool> pick(proper_masks.size(), false);
          std::fill(pick.begin(), pick.begin() + size, true);
          do {
            std::vector<unsigned> fam;
            for (std::size_t i = 0; i < pick.size(); ++i)
              if (pick[i]) fam.push_back(proper_masks[i]);
            if (separates(fam, t)) families.push_back(std::move(fam));
          } while (std::prev_permutation(pick.begin(), pick.end()));
        }

        const int adm = t == 1 ? bounds.d_max : bounds.atom_degree_max;
        std::vector<int> dlo(t, -adm), dhi(t, adm), qlo(t, 0), qhi(t);
        for (int i = 0; i < t; ++i) qhi[i] = std::min({2 * rho[i], r, bounds.qdim_max});

        for_each_vector(dlo, dhi, [&](const std::vector<int>& degs) {
          const int d = std::accumulate(degs.begin(), degs.end(), 0);
          if (std::abs(d) > bounds.d_max) return;
          for_each_vector(qlo, qhi, [&](const std::vector<int>& qdims) {
            if (std::accumulate(qdims.begin(), qdims.end(), 0) != r) return;
            for (const auto& family : families) {
              std::vector<Subobject> proper;
              std::vector<std::pair<Index, Index>> order;
              std::vector<unsigned> masks{0u, full};
              for (std::size_t k = 0; k < family.size(); ++k) {
                Subobject s{mask_id(family[k], t), 0, 0, 0, false, false};
                for (int i = 0; i < t; ++i)
                  if (family[k] >> i & 1) {
                    s.rank += rho[i];
                    s.degree += degs[i];
                    s.qdim += qdims[i];
                  }
                proper.push_back(std::move(s));
                masks.push_back(family[k]);
                for (std::size_t j = 0; j < family.size(); ++j)
                  if (j != k && (family[j] & family[k]) == family[j]) order.emplace_back(j + 2, k + 2);
              }

              for (int a1 = 1; a1 <= bounds.a_max; ++a1) {
                const auto first = profiles_for(family, a1, bounds.zero_decoration);
                for (int a2 = decorations == 2 ? 1 : 0; a2 <= (decorations == 2 ? bounds.a_max : 0); ++a2) {
                  const auto second = decorations == 2 ? profiles_for(family, a2, bounds.zero_decoration)
                                                        : std::vector<Profile>{Profile{}};
                  DecorationType t1{a1, 1, 0, 0, 0};
                  DecorationType t2{std::max(a2, 1), 1, 0, 0, 0};
                  const auto cap = decorations == 2 ? boundedness_constants(t1, t2, r, d).slope_bound
                                                    : boundedness_constants(t1, r, d).slope_bound;
                  bool bounded = true;
                  for (const auto& s : proper)
                    if (cap < Rational(s.degree, s.rank)) bounded = false;
                  if (!bounded) continue;

                  for (const auto& p1 : first) {
                    for (const auto& p2 : second) {
                      std::vector<const Profile*> ps{&p1};
                      if (decorations == 2) ps.push_back(&p2);
                      const Key base = make_key(degs, qdims, family, ps, perms.front());
                      bool canonical = true;
                      for (std::size_t k = 1; k < perms.size() && canonical; ++k)
                        if (make_key(degs, qdims, family, ps, perms[k]) < base) canonical = false;
                      if (!canonical) continue;

                      std::vector<Decoration> decos;
                      for (const Profile* p : ps) {
                        KappaLevels levels{std::vector<int>(family.size() + 2, 0)};
                        levels.kappa[BundleModel::whole] = p->eps ? p->a : 0;
                        for (std::size_t k = 0; k < family.size(); ++k) levels.kappa[k + 2] = p->levels[k];
                        decos.push_back(Decoration{DecorationType{p->a, 1, 0, 0, 0}, DecorationProfile{levels, p->eps}});
                      }
                      EnumeratedModel em{std::string(1, prefix) + std::to_string(++serial),
                                         BundleModel(r, d, genus, r, proper, order, std::move(decos)), rho, masks};
                      visit(em);
                    }
                  }
                }
              }
            }
          });
        });
      }
    }
  }
}

std::vector<EnumeratedModel> enumerate_models(const EnumerationBounds& bounds, int decorations) {
  std::vector<EnumeratedModel> out;
  for_each_model(bounds, decorations, [&](const EnumeratedModel& m) { out.push_back(m); });
  return out;
}

std::size_t count_models(const EnumerationBounds& bounds, int decorations) {
  std::size_t n = 0;
  for_each_model(bounds, decorations, [&](const EnumeratedModel&) { ++n; });
  return n;
}

std::vector<WeightedFiltration> enumerate_filtrations(const BundleModel& model, int weight_max) {
  std::vector<WeightedFiltration> out;
  for_each_filtration(model, WeightGrid::integers(weight_max), [&](const WeightedFiltration& f) { out.push_back(f); });
  return out;
}

bool is_lattice_closed(const EnumeratedModel& m) {
  auto present = [&](unsigned mask) { return std::find(m.masks.begin(), m.masks.end(), mask) != m.masks.end(); };
  for (unsigned x : m.masks)
    for (unsigned y : m.masks)
      if (!present(x | y) || !present(x & y)) return false;
  return true;
}

bool is_complete_lattice(const EnumeratedModel& m) {
  const unsigned all = (1u << m.atom_ranks.size()) - 1;
  for (unsigned mask = 0; mask <= all; ++mask)
    if (std::find(m.masks.begin(), m.masks.end(), mask) == m.masks.end()) return false;
  return true;
}

bool is_monomial_kappa(const EnumeratedModel& m, std::size_t deco) {
  const Decoration& d = m.model.decoration(deco);
  if (!d.profile.global_epsilon) return true;
  const int atoms = static_cast<int>(m.atom_ranks.size());
  const int a = d.type.a;
  // monomials: multisets of atoms of size a, as count vectors
  std::vector<std::vector<int>> monomials;
  std::vector<int> counts(atoms, 0);
  std::function<void(int, int)> build = [&](int atom, int left) {
    if (atom == atoms - 1) {
      counts[atom] = left;
      monomials.push_back(counts);
      return;
    }
    for (int c = left; c >= 0; --c) {
      counts[atom] = c;
      build(atom + 1, left - c);
    }
  };
  build(0, a);
  auto slots = [&](const std::vector<int>& mono, unsigned mask) {
    int n = 0;
    for (int i = 0; i < atoms; ++i)
      if (mask >> i & 1) n += mono[i];
    return n;
  };
  std::vector<int> reach(m.masks.size(), 0);
  bool any = false;
  for (const auto& mono : monomials) {
    bool fits = true;
    for (Index i = 0; i < m.masks.size() && fits; ++i) fits = slots(mono, m.masks[i]) <= kappa(m.model, d, i);
    if (!fits) continue;
    any = true;
    for (Index i = 0; i < m.masks.size(); ++i) reach[i] = std::max(reach[i], slots(mono, m.masks[i]));
  }
  if (!any) return false;
  for (Index i = 0; i < m.masks.size(); ++i)
    if (reach[i] != kappa(m.model, d, i)) return false;
  return true;
}

}  // namespace decostab
