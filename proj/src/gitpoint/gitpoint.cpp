#include "decostab/gitpoint.hpp"

#include <numeric>

namespace decostab {
namespace {

int sign(const Rational& x) {
  const Rational zero(0);
  return x < zero ? -1 : (zero < x ? 1 : 0);
}

int compare(const Rational& lhs, const Rational& rhs) { return sign(lhs - rhs); }

constexpr std::int64_t search_limit = 1'000'000;

}  // namespace

std::int64_t hilbert(int rank, std::int64_t degree, int genus, std::int64_t l) {
  return rank * l + degree + std::int64_t{1 - genus} * rank;
}

Rational decorated_hilbert(int rank, std::int64_t degree, int genus, int qdim, int a, const Rational& delta, int eps,
                           std::int64_t l) {
  return Rational(hilbert(rank, degree, genus, l) - qdim) - Rational(a * eps) * delta;
}

std::int64_t hilbert(const BundleModel& model, Index f, std::int64_t l) {
  const Subobject& s = model.item(f);
  return hilbert(s.rank, s.degree, model.genus(), l);
}

Rational decorated_hilbert(const BundleModel& model, Index f, const Rational& delta, std::int64_t l,
                           std::size_t deco) {
  const Subobject& s = model.item(f);
  const Decoration& d = model.decoration(deco);
  return decorated_hilbert(s.rank, s.degree, model.genus(), s.qdim, d.type.a, delta, epsilon(model, d, f), l);
}

LinearizationRatios linearization_ratios(const BundleModel& model, std::int64_t m, std::int64_t l,
                                         const Rational& delta, std::size_t deco) {
  const Rational at_m = decorated_hilbert(model, BundleModel::whole, delta, m, deco);
  if (!(Rational(0) < at_m))
    throw Error(ErrorKind::NonpositiveDecoratedPolynomial,
                "decorated Hilbert polynomial is " + to_string(at_m) + " at m = " + std::to_string(m));
  const Rational ratio = decorated_hilbert(model, BundleModel::whole, delta, l, deco) / at_m - Rational(1);
  return {ratio, delta * ratio};
}

void validate(const OneParameterWeights& w) {
  for (std::size_t i = 1; i < w.xi.size(); ++i)
    if (w.xi[i] < w.xi[i - 1]) throw Error(ErrorKind::InvalidModel, "weights must be non-decreasing");
  if (std::accumulate(w.xi.begin(), w.xi.end(), std::int64_t{0}) != 0)
    throw Error(ErrorKind::InvalidModel, "weights must sum to 0");
}

OneParameterWeights special_weights(std::int64_t k, std::int64_t i) {
  if (i < 1 || i > k - 1)
    throw Error(ErrorKind::IndexOutOfRange, "special weight index " + std::to_string(i) + " outside [1, k-1]");
  OneParameterWeights w;
  w.xi.assign(static_cast<std::size_t>(k), i);
  for (std::int64_t j = 0; j < i; ++j) w.xi[j] = i - k;
  return w;
}

Rational mu_hilbert_mumford(const OneParameterWeights& w, const std::vector<std::int64_t>& wpi) {
  if (wpi.size() != w.xi.size() + 1) throw Error(ErrorKind::InvalidModel, "wpi needs k + 1 values");
  std::int64_t sum = 0;
  for (std::size_t i = 1; i < wpi.size(); ++i) sum += w.xi[i - 1] * (wpi[i] - wpi[i - 1]);
  return Rational(-sum);
}

void validate(const GitPointModel& point) {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidModel, what); };
  if (point.k < 0) bad("k must be >= 0");
  if (point.a < 1) bad("a must be >= 1");
  const Rational zero(0);
  if (!(zero < point.n1) || point.n2 < zero || point.n3 < zero) bad("linearization must be positive");
  for (const auto& s : point.subspaces) {
    if (s.dim < 0 || s.dim > point.k) bad("subspace \"" + s.id + "\" has dimension outside [0, k]");
    if (static_cast<std::int64_t>(s.wpi.size()) != point.k + 1) bad("wpi of \"" + s.id + "\" needs k + 1 values");
    if (s.wpi.front() != 0) bad("wpi(0) must be 0");
    for (std::size_t i = 1; i < s.wpi.size(); ++i)
      if (s.wpi[i] < s.wpi[i - 1]) bad("wpi of \"" + s.id + "\" must be non-decreasing");
    if (s.wpi.back() != point.p_l) bad("wpi(k) must equal P_E(l)");
    if (s.gdim < 0 || s.gdim > std::min<std::int64_t>(2 * s.dim, point.dim_r)) bad("gdim out of range");
    if (s.eps != 0 && s.eps != 1) bad("eps must be 0 or 1");
  }
}

PointInequality point_inequality(const GitPointModel& point, std::int64_t dim, std::int64_t p_prime_l, int gdim,
                                 int eps) {
  // one common denominator instead of a chain of reduced products
  const std::int64_t v1 = point.n1.denominator(), v2 = point.n2.denominator(), v3 = point.n3.denominator();
  const std::int64_t u1 = point.n1.numerator() * v2 * v3, u2 = point.n2.numerator() * v1 * v3,
                     u3 = point.n3.numerator() * v1 * v2;
  const std::int64_t common = v1 * v2 * v3;
  const Rational lhs(dim * (u1 * point.p_l + u2 * point.dim_r + u3 * point.a * point.eps), common);
  const Rational rhs(point.k * (u1 * p_prime_l + u2 * gdim + u3 * point.a * eps), common);
  return {lhs, rhs};
}

PointInequality point_inequality(const GitPointModel& point, const SubspaceRecord& sub) {
  return point_inequality(point, sub.dim, sub.wpi.at(static_cast<std::size_t>(sub.dim)), sub.gdim, sub.eps);
}

Rational one_ps_value(const GitPointModel& point, const SubspaceRecord& sub) {
  const auto xi = special_weights(point.k, sub.dim);
  return point.n1 * mu_hilbert_mumford(xi, sub.wpi) +
         point.n2 * Rational(point.k * sub.gdim - point.dim_r * sub.dim) +
         point.n3 * Rational(point.a) * Rational(point.k * sub.eps - point.eps * sub.dim);
}

PointVerdict is_git_semistable_point(const GitPointModel& point) {
  validate(point);
  PointVerdict out;
  for (std::size_t i = 0; i < point.subspaces.size(); ++i) {
    const auto& s = point.subspaces[i];
    if (s.dim == 0 || s.dim == point.k) continue;
    const auto ineq = point_inequality(point, s);
    const int c = compare(ineq.lhs, ineq.rhs);
    if (c > 0) return {Stability::Unstable, i};
    if (c == 0 && out.stability == Stability::Stable) out = {Stability::Semistable, i};
  }
  return out;
}

std::optional<GitPointModel> point_from_bundle(const BundleModel& model, std::int64_t m, std::int64_t l,
                                               const Rational& delta, std::size_t deco) {
  const Decoration& d = model.decoration(deco);
  const auto ratios = linearization_ratios(model, m, l, delta, deco);
  GitPointModel point;
  point.k = hilbert(model, BundleModel::whole, m);
  point.m = m;
  point.l = l;
  point.p_l = hilbert(model, BundleModel::whole, l);
  point.a = d.type.a;
  point.dim_r = model.dim_r();
  point.eps = epsilon(model, d, BundleModel::whole);
  point.n2 = ratios.n2;
  point.n3 = ratios.n3;
  if (point.k < 0 || point.p_l < 0) return std::nullopt;
  for (Index f = 2; f < model.size(); ++f) {
    SubspaceRecord s;
    s.id = model.item(f).id;
    s.dim = hilbert(model, f, m);
    const std::int64_t at_l = hilbert(model, f, l);
    if (s.dim < 0 || s.dim > point.k || at_l < 0 || at_l > point.p_l) return std::nullopt;
    if (s.dim == 0 && at_l != 0) return std::nullopt;
    if (s.dim == point.k && at_l != point.p_l) return std::nullopt;
    s.wpi.resize(static_cast<std::size_t>(point.k + 1));
    for (std::int64_t i = 0; i <= point.k; ++i) {
      if (i <= s.dim)
        s.wpi[i] = s.dim == 0 ? 0 : i * at_l / s.dim;
      else
        s.wpi[i] = at_l + (i - s.dim) * (point.p_l - at_l) / (point.k - s.dim);
    }
    s.gdim = std::min<int>(model.item(f).qdim, point.dim_r);
    if (s.gdim > 2 * s.dim) return std::nullopt;
    s.eps = epsilon(model, d, f);
    point.subspaces.push_back(std::move(s));
  }
  return point;
}

LeadingCoefficients leading_coefficient_reduction(const BundleModel& model, Index f, std::int64_t m,
                                                  const Rational& delta, std::size_t deco) {
  if (f == BundleModel::zero) return {Rational(0), Rational(0), true};
  const Rational lhs = Rational(model.rank()) * decorated_hilbert(model, f, delta, m, deco);
  const Rational rhs = Rational(model.item(f).rank) * decorated_hilbert(model, BundleModel::whole, delta, m, deco);
  return {lhs, rhs, !(rhs < lhs)};
}

std::int64_t default_m(const BundleModel& model, const Rational& delta, std::size_t deco) {
  for (std::int64_t m = 1; m < search_limit; ++m) {
    if (!(Rational(0) < decorated_hilbert(model, BundleModel::whole, delta, m, deco))) continue;
    const std::int64_t top = hilbert(model, BundleModel::whole, m);
    bool ok = true;
    for (Index f = 2; f < model.size() && ok; ++f) {
      const std::int64_t p = hilbert(model, f, m);
      ok = 1 <= p && p < top && model.item(f).qdim <= 2 * p;
    }
    if (ok) return m;
  }
  throw Error(ErrorKind::NonpositiveDecoratedPolynomial, "no admissible m found");
}

std::int64_t default_l0(const BundleModel& model, std::int64_t m, const Rational& delta, std::size_t deco) {
  for (std::int64_t l = 1; l < search_limit; ++l) {
    const std::int64_t top = hilbert(model, BundleModel::whole, l);
    bool ok = true;
    for (Index f = 1; f < model.size() && ok; ++f)
      ok = Rational(0) < decorated_hilbert(model, f, delta, l, deco) && hilbert(model, f, l) <= top;
    if (ok) return std::max(l, m + 1);
  }
  throw Error(ErrorKind::NonpositiveDecoratedPolynomial, "no admissible l found");
}

bool EquivalenceReport::all_agree() const {
  for (const auto& row : rows)
    if (!row.agree) return false;
  return true;
}

EquivalenceReport equivalence_check(const BundleModel& model, std::int64_t m,
                                    const std::vector<std::int64_t>& l_samples, const Rational& delta,
                                    std::size_t deco) {
  EquivalenceReport report;
  report.m = m;
  report.l_samples = l_samples;
  const Rational fr_e = fr_slope(model, BundleModel::whole, delta, deco);
  for (std::int64_t l : l_samples) {
    const auto point = point_from_bundle(model, m, l, delta, deco);
    // numbers of the substituted point; the synthesized wpi is only needed for the 1-PS form
    GitPointModel numbers;
    numbers.k = hilbert(model, BundleModel::whole, m);
    numbers.p_l = hilbert(model, BundleModel::whole, l);
    numbers.a = model.decoration(deco).type.a;
    numbers.dim_r = model.dim_r();
    numbers.eps = epsilon(model, model.decoration(deco), BundleModel::whole);
    const auto ratios = linearization_ratios(model, m, l, delta, deco);
    numbers.n2 = ratios.n2;
    numbers.n3 = ratios.n3;

    for (Index f = 2; f < model.size(); ++f) {
      EquivalenceRow row;
      row.f = f;
      row.l = l;
      row.point = point_inequality(numbers, hilbert(model, f, m), hilbert(model, f, l), model.item(f).qdim,
                                   epsilon(model, model.decoration(deco), f));
      if (point) {
        const auto& s = point->subspaces[f - 2];
        if (0 < s.dim && s.dim < point->k) row.one_ps = one_ps_value(*point, s);
      }
      row.leading = leading_coefficient_reduction(model, f, m, delta, deco);
      row.fr_gap = fr_e - fr_slope(model, f, delta, deco);

      const int c_point = compare(row.point.lhs, row.point.rhs);
      const int c_leading = compare(row.leading.lhs, row.leading.rhs);
      const int c_fr = -sign(row.fr_gap);
      row.agree = c_point == c_leading && c_leading == c_fr && (!row.one_ps || -sign(*row.one_ps) == c_point);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace decostab
