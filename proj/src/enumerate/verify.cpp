#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <set>
#include <thread>

#include "decostab/document.hpp"
#include "decostab/enumerate.hpp"
#include "decostab/gitpoint.hpp"
#include "decostab/jh.hpp"

namespace decostab {
namespace {

struct Outcome {
  std::vector<ReportRecord> records;
  std::size_t checks = 0;
  bool skipped = false;
};

// sign of p + delta * mu by cross multiplication, denominators are positive
int sign_of(const Rational& p, const Rational& delta, const Rational& mu) {
  const std::int64_t v = p.numerator() * delta.denominator() * mu.denominator() +
                         delta.numerator() * mu.numerator() * p.denominator();
  return (v > 0) - (v < 0);
}

bool is_multiple(const Rational& x, const Rational& y, int scale) {
  return x.numerator() * y.denominator() == scale * y.numerator() * x.denominator();
}

using Work = std::function<Outcome(const EnumeratedModel&)>;

// Runs every work on each enumerated model; records come out model by model in work order.
using Source = std::function<void(const std::function<void(const EnumeratedModel&)>&)>;

Source enumerated(const EnumerationBounds& bounds, int decorations) {
  return [&bounds, decorations](const std::function<void(const EnumeratedModel&)>& visit) {
    for_each_model(bounds, decorations, visit);
  };
}

std::vector<SuiteSummary> drive(const Source& source, unsigned threads,
                                const std::vector<std::pair<std::string, Work>>& works, const RecordSink& sink) {
  std::vector<SuiteSummary> summaries;
  for (const auto& w : works) summaries.push_back(SuiteSummary{w.first});
  constexpr std::size_t batch_size = 4096;
  std::vector<EnumeratedModel> batch;
  std::vector<std::vector<Outcome>> results;

  auto run = [&](std::size_t i) {
    for (std::size_t k = 0; k < works.size(); ++k) results[i][k] = works[k].second(batch[i]);
  };
  auto flush = [&] {
    results.assign(batch.size(), std::vector<Outcome>(works.size()));
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(batch.size())));
    if (workers == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) run(i);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < batch.size(); i += workers) run(i);
        });
      for (auto& t : pool) t.join();
    }
    for (auto& per_model : results)
      for (std::size_t k = 0; k < works.size(); ++k) {
        SuiteSummary& summary = summaries[k];
        const Outcome& r = per_model[k];
        summary.checks += r.checks;
        if (r.skipped) ++summary.skipped;
        for (const auto& rec : r.records) {
          ++summary.instances;
          if (rec.verdict == "violation") ++summary.violations;
          if (rec.verdict == "reported") ++summary.reported;
          if (sink) sink(rec);
        }
      }
    batch.clear();
  };

  source([&](const EnumeratedModel& m) {
    batch.push_back(m);
    if (batch.size() == batch_size) flush();
  });
  flush();
  return summaries;
}

ReportRecord record(const EnumeratedModel& m, const char* property) {
  ReportRecord r;
  r.instance = m.id;
  r.property = property;
  r.verdict = "pass";
  return r;
}

void mark_violation(ReportRecord& r, const BundleModel& model, std::string witness, const char* verdict = "violation") {
  if (r.verdict != "pass") return;
  r.verdict = verdict;
  r.witness = std::move(witness);
  r.model_json = model_json(model);
}

// Generated patterns on a catalog: every single generator and every pair of
// distinct generators, each a multiset of a catalog elements other than 0.
std::vector<GeneratedPattern> generated_patterns(const BundleModel& model, int a) {
  std::vector<Index> nonzero;
  for (Index i = 1; i < model.size(); ++i) nonzero.push_back(i);
  std::vector<std::vector<Index>> tuples;
  std::vector<Index> current;
  std::function<void(std::size_t)> build = [&](std::size_t from) {
    if (static_cast<int>(current.size()) == a) {
      tuples.push_back(current);
      return;
    }
    for (std::size_t k = from; k < nonzero.size(); ++k) {
      current.push_back(nonzero[k]);
      build(k);
      current.pop_back();
    }
  };
  build(0);
  std::vector<GeneratedPattern> out;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    out.push_back(GeneratedPattern{{tuples[i]}});
    for (std::size_t j = i + 1; j < tuples.size(); ++j) out.push_back(GeneratedPattern{{tuples[i], tuples[j]}});
  }
  return out;
}

bool is_first_profile(const BundleModel& model) {
  const auto& d = model.decoration();
  if (!d.profile.global_epsilon) return false;
  const auto& k = std::get<KappaLevels>(d.profile.pattern).kappa;
  return std::all_of(k.begin() + 2, k.end(), [](int v) { return v == 0; });
}

std::string delta_tag(const Rational& delta) { return "delta=" + to_string(delta); }

}  // namespace

std::string describe(const BundleModel& model, const WeightedFiltration& f, std::size_t deco) {
  std::string out = "0";
  for (Index step : f.steps) {
    const Subobject& s = model.item(step);
    out += " ⊂ " + s.id + "(" + std::to_string(s.rank) + "," + std::to_string(s.degree) + "," +
           std::to_string(s.qdim);
    if (deco < model.decorations().size()) out += "," + std::to_string(kappa(model, model.decoration(deco), step));
    out += ")";
  }
  out += " ⊂ E";
  if (!f.weights.empty()) {
    out += " weights (";
    for (std::size_t j = 0; j < f.weights.size(); ++j) out += (j ? "," : "") + to_string(f.weights[j]);
    out += ")";
  }
  return out;
}

namespace {

void write_escaped(std::ostream& out, const std::string& s) {
  out << '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      default:
        if (c < 0x20) {
          const char* hex = "0123456789abcdef";
          out << "\\u00" << hex[c >> 4] << hex[c & 15];
        } else {
          out << c;
        }
    }
  }
  out << '"';
}

}  // namespace

void write_record(std::ostream& out, const ReportRecord& r) {
  out << "{\"instance\":";
  write_escaped(out, r.instance);
  out << ",\"property\":";
  write_escaped(out, r.property);
  out << ",\"lhs\":\"" << to_string(r.lhs) << "\",\"rhs\":\"" << to_string(r.rhs) << "\",\"verdict\":";
  write_escaped(out, r.verdict);
  out << ",\"checks\":" << r.checks;
  if (!r.witness.empty()) {
    out << ",\"witness\":";
    write_escaped(out, r.witness);
  }
  if (!r.model_json.empty()) out << ",\"model\":" << r.model_json;
  out << "}\n";
}

EnumerationBounds default_segre_bounds() {
  EnumerationBounds b;
  b.a_max = 2;
  b.catalog_max = 2;
  b.zero_decoration = false;
  return b;
}

VerifyOptions default_verify_options() {
  VerifyOptions o;
  o.segre_bounds = default_segre_bounds();
  o.threads = threads_from_env();
  return o;
}

unsigned threads_from_env() {
  if (const char* env = std::getenv("DECOSTAB_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
    return 1;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

static Work additivity_work(const VerifyOptions& options) {
  const int weight_max = options.bounds.weight_max;
  return [=](const EnumeratedModel& m) {
    Outcome out;
    const auto filtrations = enumerate_filtrations(m.model, weight_max);
    ReportRecord rec = record(m, "additivity");
    for (const auto& f : filtrations) {
      const Rational closed = mu_additive(m.model, f, m.model.decoration());
      const Rational brute = mu_filtration(m.model, f, m.model.decoration());
      rec.lhs += closed;
      rec.rhs += brute;
      ++rec.checks;
      if (closed != brute)
        mark_violation(rec, m.model, describe(m.model, f) + ": " + to_string(closed) + " vs " + to_string(brute));
    }
    out.checks += rec.checks;
    out.records.push_back(std::move(rec));

    // up-closed patterns that are not level maps: violations are data
    if (is_first_profile(m.model) && m.model.decoration().type.a <= 2) {
      const auto& type = m.model.decoration().type;
      std::size_t serial = 0;
      for (auto& pattern : generated_patterns(m.model, type.a)) {
        const BundleModel gm = m.model.with_decorations({Decoration{type, DecorationProfile{pattern, true}}});
        ReportRecord g;
        g.instance = m.id + "/G" + std::to_string(++serial);
        g.property = "additivity_generated";
        g.verdict = "pass";
        for (const auto& f : filtrations) {
          const Rational closed = mu_additive(gm, f, gm.decoration());
          const Rational brute = mu_filtration(gm, f, gm.decoration());
          g.lhs += closed;
          g.rhs += brute;
          ++g.checks;
          if (closed != brute)
            mark_violation(g, gm, describe(gm, f) + ": " + to_string(closed) + " vs " + to_string(brute), "reported");
        }
        out.checks += g.checks;
        out.records.push_back(std::move(g));
      }
    }
    return out;
  };
}

SuiteSummary verify_additivity(const VerifyOptions& options, const RecordSink& sink) {
  return drive(enumerated(options.bounds, 1), options.threads, {{"additivity", additivity_work(options)}}, sink)[0];
}

static Work segre_work(const VerifyOptions& options) {
  const int weight_max = options.segre_bounds.weight_max;
  const auto& deltas = options.deltas;
  return [=](const EnumeratedModel& m) {
    Outcome out;
    const BundleModel& model = m.model;
    const Decoration combined = combine_decorations(model, model.decoration(0), model.decoration(1));
    ReportRecord mu = record(m, "segre_mu");
    for (const auto& f : enumerate_filtrations(model, weight_max)) {
      const Rational sum = mu_filtration(model, f, model.decoration(0)) + mu_filtration(model, f, model.decoration(1));
      const Rational joint = mu_filtration(model, f, combined);
      mu.lhs += sum;
      mu.rhs += joint;
      ++mu.checks;
      if (sum != joint) mark_violation(mu, model, describe(model, f));
    }
    ReportRecord verdict = record(m, "segre_verdict");
    const WeightGrid grid = WeightGrid::integers(weight_max);
    for (const auto& delta : deltas) {
      const auto two = check_2dgpb(model, delta, delta, grid);
      const auto one = check_dgpb(model, combined, delta, grid);
      ++verdict.checks;
      verdict.rhs += Rational(1);
      if (two.stability == one.stability)
        verdict.lhs += Rational(1);
      else
        mark_violation(verdict, model,
                       delta_tag(delta) + ": 2-dgpb " + std::string(to_string(two.stability)) + ", combined " +
                           std::string(to_string(one.stability)));
    }
    out.checks = mu.checks + verdict.checks;
    out.records.push_back(std::move(mu));
    out.records.push_back(std::move(verdict));
    return out;
  };
}

SuiteSummary verify_segre(const VerifyOptions& options, const RecordSink& sink) {
  return drive(enumerated(options.segre_bounds, 2), options.threads, {{"segre", segre_work(options)}}, sink)[0];
}

static Work fr_work(const VerifyOptions& options) {
  const WeightGrid grid = WeightGrid::integers(options.bounds.weight_max);
  const auto& deltas = options.deltas;
  return [=](const EnumeratedModel& m) {
    Outcome out;
    ReportRecord rec = record(m, "fr_implies_delta");
    for (const auto& delta : deltas) {
      ++rec.checks;
      const auto fr = check_fr(m.model, delta);
      if (fr.stability == Stability::Unstable) continue;  // implication is vacuous
      rec.lhs += Rational(1);
      const auto dg = check_dgpb(m.model, delta, grid);
      if (dg.stability != Stability::Unstable)
        rec.rhs += Rational(1);
      else
        mark_violation(rec, m.model,
                       delta_tag(delta) + ": " + describe(m.model, *dg.witness) + " gives " + to_string(*dg.value));
    }
    out.checks = rec.checks;
    out.records.push_back(std::move(rec));
    return out;
  };
}

SuiteSummary verify_fr_implies_delta(const VerifyOptions& options, const RecordSink& sink) {
  return drive(enumerated(options.bounds, 1), options.threads, {{"fr", fr_work(options)}}, sink)[0];
}

static Work jh_work(const VerifyOptions& options) {
  const auto& deltas = options.deltas;
  return [=](const EnumeratedModel& m) {
    Outcome out;
    // Only a catalog holding every sum of atoms, with kappa coming from an
    // actual morphism, is the full subobject picture of a split bundle.
    // A missing sum can hide a destabilizing subobject, so those models are
    // only reported.
    const bool realizable = is_complete_lattice(m) && is_monomial_kappa(m);
    ReportRecord rec = record(m, realizable ? "jh_gr_unique" : "jh_gr_unique_unrealizable");
    const Factor totals = quotient_descriptor(m.model, BundleModel::zero);
    for (const auto& delta : deltas) {
      if (check_fr(m.model, delta).stability == Stability::Unstable) continue;
      const auto chains = jordan_holder_chains(m.model, delta);
      std::set<std::vector<Factor>> grs;
      for (const auto& c : chains) {
        const auto gr = graded_of_chain(m.model, c);
        ++rec.checks;
        if (gr.total() != totals) mark_violation(rec, m.model, delta_tag(delta) + ": factors do not add up");
        grs.insert(gr.factors);
      }
      const auto greedy = jordan_holder(m.model, delta);
      if (!grs.contains(greedy.gr.factors)) mark_violation(rec, m.model, delta_tag(delta) + ": greedy chain missing");
      rec.lhs += Rational(static_cast<std::int64_t>(grs.size()));
      rec.rhs += Rational(1);
      if (grs.size() != 1) {
        std::string w = delta_tag(delta) + ": " + std::to_string(grs.size()) + " distinct gr over " +
                        std::to_string(chains.size()) + " chains";
        mark_violation(rec, m.model, w, realizable ? "violation" : "reported");
      }
    }
    if (rec.checks == 0) {
      out.skipped = true;
      return out;
    }
    out.checks = rec.checks;
    out.records.push_back(std::move(rec));
    return out;
  };
}

SuiteSummary verify_jh(const VerifyOptions& options, const RecordSink& sink) {
  return drive(enumerated(options.bounds, 1), options.threads, {{"jh", jh_work(options)}}, sink)[0];
}

static Work git_work(const VerifyOptions& options) {
  const auto& deltas = options.deltas;
  return [=](const EnumeratedModel& m) {
    Outcome out;
    ReportRecord rec = record(m, "git_equivalence");
    for (const auto& delta : deltas) {
      const auto m0 = default_m(m.model, delta);
      const auto l0 = default_l0(m.model, m0, delta);
      const auto report = equivalence_check(m.model, m0, {l0, 2 * l0, 4 * l0}, delta);
      for (const auto& row : report.rows) {
        ++rec.checks;
        rec.rhs += Rational(1);
        if (row.agree)
          rec.lhs += Rational(1);
        else
          mark_violation(rec, m.model,
                         delta_tag(delta) + " m=" + std::to_string(m0) + " l=" + std::to_string(row.l) + " F=" +
                             m.model.item(row.f).id);
      }
      // the ratio form P~_F / rk F <= P~_E / r must give the fr verdict
      const auto fr = check_fr(m.model, delta);
      bool ratio_ok = true;
      const Rational pe = decorated_hilbert(m.model, BundleModel::whole, delta, m0) / Rational(m.model.rank());
      for (Index f = 2; f < m.model.size(); ++f)
        if (pe < decorated_hilbert(m.model, f, delta, m0) / Rational(m.model.item(f).rank)) ratio_ok = false;
      ++rec.checks;
      rec.rhs += Rational(1);
      if (ratio_ok == (fr.stability != Stability::Unstable))
        rec.lhs += Rational(1);
      else
        mark_violation(rec, m.model, delta_tag(delta) + ": ratio form disagrees with fr verdict");
      // the bundle-induced point itself
      if (const auto point = point_from_bundle(m.model, m0, l0, delta)) {
        ++rec.checks;
        rec.rhs += Rational(1);
        if ((is_git_semistable_point(*point).stability == Stability::Unstable) ==
            (fr.stability == Stability::Unstable))
          rec.lhs += Rational(1);
        else
          mark_violation(rec, m.model, delta_tag(delta) + ": point verdict disagrees with fr verdict");
      }
    }
    out.checks = rec.checks;
    out.records.push_back(std::move(rec));
    return out;
  };
}

SuiteSummary verify_git(const VerifyOptions& options, const RecordSink& sink) {
  return drive(enumerated(options.bounds, 1), options.threads, {{"git", git_work(options)}}, sink)[0];
}

static Work homogeneity_work(const VerifyOptions& options) {
  const int weight_max = options.bounds.weight_max;
  const auto& deltas = options.deltas;
  const WeightGrid grid = WeightGrid::integers(weight_max);
  return [=](const EnumeratedModel& m) {
    Outcome out;
    ReportRecord rec = record(m, "homogeneity");
    const Decoration& deco = m.model.decoration();
    std::int64_t held = 0;
    WeightedFiltration g;
    for_each_filtration(m.model, grid, [&](const WeightedFiltration& f) {
      if (f.steps.empty()) return;
      const Rational p = p_functional(m.model, f);
      const Rational mu = mu_filtration(m.model, f, deco);
      for (int scale : {2, 3}) {
        g = f;
        for (std::size_t i = 0; i < f.weights.size(); ++i)
          g.weights[i] = Rational(f.weights[i].numerator() * scale, f.weights[i].denominator());
        const Rational ps = p_functional(m.model, g);
        const Rational mus = mu_filtration(m.model, g, deco);
        ++rec.checks;
        bool ok = is_multiple(ps, p, scale) && is_multiple(mus, mu, scale);
        for (const auto& delta : deltas) ok = ok && sign_of(p, delta, mu) == sign_of(ps, delta, mus);
        if (ok)
          ++held;
        else
          mark_violation(rec, m.model, describe(m.model, f) + " scaled by " + std::to_string(scale));
      }
    });
    rec.lhs = Rational(held);
    rec.rhs = Rational(static_cast<std::int64_t>(rec.checks));
    if (rec.checks == 0) {
      out.skipped = true;
      return out;
    }
    out.checks = rec.checks;
    out.records.push_back(std::move(rec));
    return out;
  };
}

SuiteSummary verify_homogeneity(const VerifyOptions& options, const RecordSink& sink) {
  return drive(enumerated(options.bounds, 1), options.threads, {{"homogeneity", homogeneity_work(options)}}, sink)[0];
}

namespace {

std::vector<SuiteSummary> run_suite(const std::string& name, const VerifyOptions& options, const Source& single_source,
                                    const Source& pair_source, const RecordSink& sink) {
  using Factory = Work (*)(const VerifyOptions&);
  const std::vector<std::pair<std::string, Factory>> single{{"additivity", additivity_work},
                                                           {"fr", fr_work},
                                                           {"jh", jh_work},
                                                           {"git", git_work},
                                                           {"homogeneity", homogeneity_work}};
  const bool known = name == "all" || name == "segre" ||
                     std::any_of(single.begin(), single.end(), [&](const auto& s) { return s.first == name; });
  if (!known) throw Error(ErrorKind::InvalidModel, "unknown suite \"" + name + "\"");
  std::vector<SuiteSummary> out;
  if (name == "all" || name == "segre")
    out.push_back(drive(pair_source, options.threads, {{"segre", segre_work(options)}}, sink)[0]);
  std::vector<std::pair<std::string, Work>> works;
  for (const auto& [suite, factory] : single)
    if (name == "all" || name == suite) works.emplace_back(suite, factory(options));
  // one enumeration pass feeds every single-decoration suite
  if (!works.empty())
    for (auto& summary : drive(single_source, options.threads, works, sink)) out.push_back(std::move(summary));
  return out;
}

}  // namespace

std::vector<SuiteSummary> run_suite(const std::string& name, const VerifyOptions& options, const RecordSink& sink) {
  return run_suite(name, options, enumerated(options.bounds, 1), enumerated(options.segre_bounds, 2), sink);
}

std::vector<SuiteSummary> run_suite(const std::string& name, const VerifyOptions& options,
                                    const std::vector<EnumeratedModel>& models, const RecordSink& sink) {
  auto pick = [&models](bool pairs) -> Source {
    return [&models, pairs](const std::function<void(const EnumeratedModel&)>& visit) {
      for (const auto& m : models)
        if ((m.model.decorations().size() >= 2) == pairs) visit(m);
    };
  };
  return run_suite(name, options, pick(false), pick(true), sink);
}

}  // namespace decostab
