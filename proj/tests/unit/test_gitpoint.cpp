#include <numeric>
#include <vector>

#include "doctest.h"
#include "decostab/gitpoint.hpp"
#include "support/fixtures.hpp"

using namespace decostab;
using decostab::testing::build;
using decostab::testing::rank3_chain;
using decostab::testing::type_a;
using decostab::testing::worked;

namespace {

GitPointModel sample_point(int gdim, int eps) {
  GitPointModel p;
  p.k = 8;
  p.p_l = 18;
  p.a = 2;
  p.dim_r = 2;
  p.n1 = Rational(2);
  p.n2 = Rational(5);
  p.n3 = Rational(5);
  p.subspaces.push_back({"Y'", 4, {0, 2, 4, 6, 9, 11, 13, 15, 18}, gdim, eps});
  return p;
}

}  // namespace

TEST_CASE("hilbert polynomial") {
  CHECK(hilbert(2, 0, 2, 5) == 8);
  CHECK(hilbert(0, 0, 7, 11) == 0);
  CHECK(hilbert(1, -1, 2, 10) == 8);
  for (std::int64_t l = 0; l < 6; ++l) CHECK(hilbert(3, 1, 2, l + 1) - hilbert(3, 1, 2, l) == 3);
}

TEST_CASE("decorated hilbert polynomial") {
  CHECK(decorated_hilbert(2, 0, 2, 2, 2, Rational(1), 1, 5) == Rational(4));
  CHECK(decorated_hilbert(2, 3, 2, 0, 2, Rational(1), 0, 5) == Rational(hilbert(2, 3, 2, 5)));
  CHECK(decorated_hilbert(1, 0, 2, 1, 2, Rational(1), 1, 5) == Rational(1));
  CHECK(decorated_hilbert(2, 0, 2, 2, 2, Rational(1, 2), 1, 6) - decorated_hilbert(2, 0, 2, 2, 2, Rational(1, 2), 1, 5) ==
        Rational(2));
}

TEST_CASE("linearization ratios") {
  const auto m = worked(2);
  const auto r = linearization_ratios(m, 5, 10, Rational(1));
  CHECK(r.n2 == Rational(5, 2));
  CHECK(r.n3 == Rational(5, 2));
  const auto same = linearization_ratios(m, 5, 5, Rational(1));
  CHECK(same.n2 == Rational(0));
  CHECK(same.n3 == Rational(0));
  CHECK(linearization_ratios(m, 5, 10, Rational(0)).n3 == Rational(0));
  try {
    linearization_ratios(m, 2, 10, Rational(1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonpositiveDecoratedPolynomial);
  }
}

TEST_CASE("hilbert-mumford weight") {
  CHECK(mu_hilbert_mumford({{0, 0, 0}}, {0, 2, 3, 4}) == Rational(0));
  CHECK(mu_hilbert_mumford({{-2, 1, 1}}, {0, 2, 3, 4}) == Rational(2));
  CHECK(mu_hilbert_mumford(special_weights(4, 2), {0, 1, 3, 3, 5}) == Rational(2));
  CHECK_THROWS_AS(mu_hilbert_mumford({{-1, 1}}, {0, 1}), Error);
}

TEST_CASE("special weights") {
  CHECK(special_weights(4, 2).xi == std::vector<std::int64_t>{-2, -2, 2, 2});
  CHECK(special_weights(2, 1).xi == std::vector<std::int64_t>{-1, 1});
  for (std::int64_t k = 2; k <= 9; ++k)
    for (std::int64_t i = 1; i < k; ++i) {
      const auto w = special_weights(k, i);
      CHECK(std::accumulate(w.xi.begin(), w.xi.end(), std::int64_t{0}) == 0);
      CHECK(std::is_sorted(w.xi.begin(), w.xi.end()));
      CHECK_NOTHROW(validate(w));
    }
  try {
    special_weights(4, 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
  CHECK_THROWS_AS(special_weights(4, 0), Error);
}

TEST_CASE("hilbert-mumford weight is linear in xi") {
  const std::vector<std::int64_t> wpi{0, 1, 1, 4, 6, 7};
  for (std::int64_t i = 1; i < 5; ++i)
    for (std::int64_t j = 1; j < 5; ++j)
      for (std::int64_t s = 1; s <= 3; ++s)
        for (std::int64_t t = 1; t <= 3; ++t) {
          const auto a = special_weights(5, i);
          const auto b = special_weights(5, j);
          OneParameterWeights c;
          for (std::size_t k = 0; k < 5; ++k) c.xi.push_back(s * a.xi[k] + t * b.xi[k]);
          CHECK(mu_hilbert_mumford(c, wpi) ==
                Rational(s) * mu_hilbert_mumford(a, wpi) + Rational(t) * mu_hilbert_mumford(b, wpi));
        }
}

TEST_CASE("point inequality") {
  const auto good = sample_point(1, 1);
  const auto ineq = point_inequality(good, good.subspaces[0]);
  CHECK(ineq.lhs == Rational(224));
  CHECK(ineq.rhs == Rational(264));
  CHECK(one_ps_value(good, good.subspaces[0]) == ineq.rhs - ineq.lhs);
  CHECK(is_git_semistable_point(good).stability == Stability::Stable);

  const auto bad = sample_point(0, 0);
  CHECK(point_inequality(bad, bad.subspaces[0]).rhs == Rational(144));
  const auto v = is_git_semistable_point(bad);
  CHECK(v.stability == Stability::Unstable);
  CHECK(v.witness == std::optional<std::size_t>{0});
  CHECK(one_ps_value(bad, bad.subspaces[0]) < Rational(0));

  auto zero = sample_point(0, 0);
  zero.subspaces[0] = {"0", 0, {0, 0, 0, 0, 0, 0, 0, 0, 18}, 0, 0};
  CHECK(is_git_semistable_point(zero).stability == Stability::Stable);

  auto broken = sample_point(1, 1);
  broken.subspaces[0].wpi[2] = 1;
  CHECK_THROWS_AS(is_git_semistable_point(broken), Error);
}

TEST_CASE("leading coefficient reduction") {
  const auto lc = leading_coefficient_reduction(worked(2), 2, 5, Rational(1));
  CHECK(lc.lhs == Rational(2));
  CHECK(lc.rhs == Rational(4));
  CHECK(lc.holds);
  const auto z = leading_coefficient_reduction(worked(2), BundleModel::zero, 5, Rational(1));
  CHECK(z.lhs == Rational(0));
  CHECK(z.holds);

  const auto unstable = worked(0);
  CHECK_FALSE(leading_coefficient_reduction(unstable, 2, 5, Rational(1)).holds);
  const auto fr = check_fr(unstable, Rational(1));
  CHECK(fr.stability == Stability::Unstable);
  CHECK(fr.witness->steps.front() == 2);
}

TEST_CASE("equivalence check on the worked model") {
  const auto report = equivalence_check(worked(2), 5, {10, 20, 40}, Rational(1));
  CHECK(report.rows.size() == 3);
  CHECK(report.all_agree());
  for (const auto& row : report.rows) CHECK(row.one_ps.has_value());

  const auto trivial = build(1, 0, 2, 1, {}, {{type_a(1), {}}});
  const auto empty = equivalence_check(trivial, default_m(trivial, Rational(1)), {3}, Rational(1));
  CHECK(empty.rows.empty());
  CHECK(empty.all_agree());

  const auto bad = equivalence_check(worked(0), 5, {10, 20, 40}, Rational(1));
  CHECK(bad.all_agree());
  for (const auto& row : bad.rows) {
    CHECK(row.f == 2);
    CHECK(row.point.rhs < row.point.lhs);
    CHECK_FALSE(row.leading.holds);
  }
}

TEST_CASE("point semistability agrees with fr-semistability") {
  const std::vector<Rational> deltas{Rational(1, 2), Rational(1), Rational(2)};
  std::size_t rows = 0, one_ps = 0, equalities = 0;
  for (int a = 1; a <= 3; ++a)
    for (int k1 = 0; k1 <= a; ++k1)
      for (int k2 = k1; k2 <= a; ++k2)
        for (std::int64_t d1 = -2; d1 <= 2; ++d1)
          for (std::int64_t d2 = -2; d2 <= 2; ++d2) {
            const auto m = rank3_chain(a, k1, k2, d1, d2);
            for (const auto& delta : deltas) {
              const auto m0 = default_m(m, delta);
              const auto l0 = default_l0(m, m0, delta);
              CHECK(l0 > m0);
              const auto report = equivalence_check(m, m0, {l0, 2 * l0, 4 * l0}, delta);
              CHECK(report.all_agree());
              for (const auto& row : report.rows) {
                ++rows;
                if (row.one_ps) ++one_ps;
                if (row.fr_gap == Rational(0)) ++equalities;
              }
              const auto point = point_from_bundle(m, m0, l0, delta);
              REQUIRE(point);
              const bool fr_ok = check_fr(m, delta).stability != Stability::Unstable;
              CHECK((is_git_semistable_point(*point).stability != Stability::Unstable) == fr_ok);
            }
          }
  CHECK(rows > 0);
  CHECK(one_ps == rows);
  CHECK(equalities > 0);
}
