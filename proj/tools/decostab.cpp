// decostab: check, jh, git, verify and strata subcommands.
// Exit codes: 0 (semi)stable / no violations, 1 unstable / violations, 2 input error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "decostab/document.hpp"
#include "decostab/enumerate.hpp"
#include "decostab/gitpoint.hpp"
#include "decostab/jh.hpp"
#include "json.hpp"

using namespace decostab;
using json = nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;

enum class Format { Human, Json };

json filtration_json(const BundleModel& model, const WeightedFiltration& f, std::size_t deco) {
  json steps = json::array();
  for (Index s : f.steps) {
    const Subobject& sub = model.item(s);
    json j;
    j["id"] = sub.id;
    j["rank"] = sub.rank;
    j["degree"] = sub.degree;
    j["qdim"] = sub.qdim;
    if (deco < model.decorations().size()) j["kappa"] = kappa(model, model.decoration(deco), s);
    steps.push_back(std::move(j));
  }
  json weights = json::array();
  for (const auto& w : f.weights) weights.push_back(to_string(w));
  return json{{"steps", std::move(steps)}, {"weights", std::move(weights)}};
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  if (out.empty()) throw Error(ErrorKind::EmptyList, "empty delta list");
  return out;
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::string delta = "1";
  std::string delta2;
  std::string mode = "dgpb";
  bool strict = false;
  int weight_max = 3;
};

int cmd_check(const CheckArgs& args, Format format) {
  const auto doc = load_document(args.file);
  const BundleModel& model = doc.model;
  const Rational delta = parse_rational(args.delta);
  const WeightGrid grid = WeightGrid::integers(args.weight_max);
  StabilityResult result;
  std::string witness;
  std::optional<json> witness_json;
  if (args.mode == "dgpb") {
    result = check_dgpb(model, delta, grid);
  } else if (args.mode == "2dgpb") {
    if (model.decorations().size() < 2) throw Error(ErrorKind::InvalidModel, "2dgpb mode needs second_decoration");
    const Rational delta2 = args.delta2.empty() ? delta : parse_rational(args.delta2);
    result = check_2dgpb(model, delta, delta2, grid);
  } else {
    result = check_fr(model, delta);
  }
  if (result.witness) {
    witness = describe(model, *result.witness);
    witness_json = filtration_json(model, *result.witness, 0);
  }
  if (format == Format::Json) {
    json out;
    out["mode"] = args.mode;
    out["delta"] = to_string(delta);
    out["verdict"] = std::string(to_string(result.stability));
    out["value"] = result.value ? json(to_string(*result.value)) : json(nullptr);
    out["tested"] = result.tested;
    out["witness"] = witness_json ? *witness_json : json(nullptr);
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "mode: " << args.mode << "\ndelta: " << to_string(delta) << "\nverdict: " << to_string(result.stability)
              << "\n";
    if (result.value) std::cout << "value: " << to_string(*result.value) << "\n";
    if (result.witness) std::cout << "witness: " << witness << "\n";
    std::cout << "tested: " << result.tested << "\n";
  }
  return accepts(result.stability, args.strict) ? exit_ok : exit_fail;
}

// ---- jh -------------------------------------------------------------------

int cmd_jh(const std::string& file, const std::string& delta_text, Format format) {
  const auto doc = load_document(file);
  const BundleModel& model = doc.model;
  const Rational delta = parse_rational(delta_text);
  JordanHolder jh;
  try {
    jh = jordan_holder(model, delta);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotSemistable) throw;
    std::cerr << "error: " << e.what() << "\n";
    return exit_fail;
  }
  if (format == Format::Json) {
    json steps = json::array();
    for (Index s : jh.steps) steps.push_back(model.item(s).id);
    json factors = json::array();
    for (const auto& f : jh.gr.factors)
      factors.push_back({{"rank", f.rank}, {"degree", f.degree}, {"qdim", f.qdim}, {"epsilon", f.epsilon}});
    std::cout << json{{"delta", to_string(delta)}, {"slope", to_string(jh.slope)}, {"steps", steps}, {"gr", factors}}.dump()
              << "\n";
    return exit_ok;
  }
  std::cout << "delta: " << to_string(delta) << "\nslope: " << to_string(jh.slope) << "\nsteps: ";
  for (std::size_t i = 0; i < jh.steps.size(); ++i) std::cout << (i ? " ⊂ " : "") << model.item(jh.steps[i]).id;
  std::cout << "\n\n" << std::left << std::setw(8) << "factor" << std::setw(6) << "rank" << std::setw(8) << "degree"
            << std::setw(6) << "qdim" << "eps\n";
  for (std::size_t i = 0; i < jh.gr.factors.size(); ++i) {
    const auto& f = jh.gr.factors[i];
    std::cout << std::setw(8) << i + 1 << std::setw(6) << f.rank << std::setw(8) << f.degree << std::setw(6) << f.qdim
              << f.epsilon << "\n";
  }
  return exit_ok;
}

// ---- git ------------------------------------------------------------------

struct GitArgs {
  std::string file;
  std::optional<std::int64_t> m;
  std::vector<std::int64_t> l;
  std::string delta;
};

int cmd_git(const GitArgs& args, Format format) {
  const auto doc = load_document(args.file);
  const BundleModel& model = doc.model;
  Rational delta = doc.git ? doc.git->delta : Rational(1);
  if (!args.delta.empty()) delta = parse_rational(args.delta);
  const std::int64_t m = args.m ? *args.m : (doc.git ? doc.git->m : default_m(model, delta));
  std::vector<std::int64_t> ls = args.l;
  if (ls.empty() && doc.git) ls = doc.git->l_samples;
  if (ls.empty()) {
    const auto l0 = default_l0(model, m, delta);
    ls = {l0, 2 * l0, 4 * l0};
  }

  const auto report = equivalence_check(model, m, ls, delta);
  bool unstable = false;
  json points = json::array();
  std::ostringstream human;
  human << "delta: " << to_string(delta) << "\nm: " << m << "\n";
  for (auto l : ls) {
    const auto ratios = linearization_ratios(model, m, l, delta);
    const auto point = point_from_bundle(model, m, l, delta);
    std::string verdict = "no valid point";
    std::string witness;
    if (point) {
      const auto v = is_git_semistable_point(*point);
      verdict = std::string(to_string(v.stability));
      unstable = unstable || v.stability == Stability::Unstable;
      if (v.witness) witness = point->subspaces[*v.witness].id;
    }
    human << "l = " << l << ": n2/n1 = " << to_string(ratios.n2) << ", n3/n1 = " << to_string(ratios.n3)
          << ", point " << verdict;
    if (!witness.empty()) human << " (witness " << witness << ")";
    human << "\n";
    json p{{"l", l}, {"n2", to_string(ratios.n2)}, {"n3", to_string(ratios.n3)}, {"verdict", verdict}};
    if (point) p["k"] = point->k;
    if (!witness.empty()) p["witness"] = witness;
    points.push_back(std::move(p));
  }

  json rows = json::array();
  human << "\n" << std::left << std::setw(8) << "F" << std::setw(6) << "l" << std::setw(12) << "point lhs"
        << std::setw(12) << "point rhs" << std::setw(10) << "1-PS" << std::setw(12) << "leading" << std::setw(10)
        << "fr gap" << "agree\n";
  for (const auto& row : report.rows) {
    const std::string id = model.item(row.f).id;
    const std::string one_ps = row.one_ps ? to_string(*row.one_ps) : "-";
    const std::string leading = to_string(row.leading.lhs) + "<=" + to_string(row.leading.rhs);
    human << std::setw(8) << id << std::setw(6) << row.l << std::setw(12) << to_string(row.point.lhs) << std::setw(12)
          << to_string(row.point.rhs) << std::setw(10) << one_ps << std::setw(12) << leading << std::setw(10)
          << to_string(row.fr_gap) << (row.agree ? "yes" : "no") << "\n";
    json r{{"f", id},
           {"l", row.l},
           {"point_lhs", to_string(row.point.lhs)},
           {"point_rhs", to_string(row.point.rhs)},
           {"one_ps", row.one_ps ? json(to_string(*row.one_ps)) : json(nullptr)},
           {"leading_lhs", to_string(row.leading.lhs)},
           {"leading_rhs", to_string(row.leading.rhs)},
           {"fr_gap", to_string(row.fr_gap)},
           {"agree", row.agree}};
    rows.push_back(std::move(r));
  }
  const bool agree = report.all_agree();
  human << "agreement: " << (agree ? "yes" : "no") << "\n";
  if (format == Format::Json)
    std::cout << json{{"delta", to_string(delta)}, {"m", m}, {"points", points}, {"rows", rows}, {"agree", agree}}.dump()
              << "\n";
  else
    std::cout << human.str();
  return unstable || !agree ? exit_fail : exit_ok;
}

// ---- verify and strata ----------------------------------------------------

struct BoundsArgs {
  EnumerationBounds bounds;
  std::vector<int> genera{2};
  bool no_zero = false;

  void add(CLI::App& app) {
    app.add_option("--r-max", bounds.r_max, "largest rank")->capture_default_str();
    app.add_option("--d-max", bounds.d_max, "largest |degree| of E")->capture_default_str();
    app.add_option("--atom-degree-max", bounds.atom_degree_max, "largest |degree| of a summand")->capture_default_str();
    app.add_option("--qdim-max", bounds.qdim_max, "largest qdim of a summand")->capture_default_str();
    app.add_option("--a-max", bounds.a_max, "largest decoration type a")->capture_default_str();
    app.add_option("--weight-max", bounds.weight_max, "largest filtration weight")->capture_default_str();
    app.add_option("--catalog-max", bounds.catalog_max, "largest number of proper subobjects")->capture_default_str();
    app.add_option("--genus", genera, "genus values")->delimiter(',')->capture_default_str();
    app.add_flag("--no-zero-decoration", no_zero, "skip phi = 0");
  }

  EnumerationBounds resolved() const {
    EnumerationBounds b = bounds;
    b.genera = genera;
    b.zero_decoration = bounds.zero_decoration && !no_zero;
    validate(b);
    return b;
  }
};

std::vector<EnumeratedModel> load_models(const std::vector<std::string>& files) {
  std::vector<EnumeratedModel> out;
  for (const auto& f : files)
    out.push_back(EnumeratedModel{std::filesystem::path(f).stem().string(), load_document(f).model, {}, {}});
  return out;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string out;
  std::vector<std::string> models;
  std::string deltas = "1/2,1,2";
};

int cmd_verify(const VerifyArgs& args, const BoundsArgs& bounds) {
  VerifyOptions options = default_verify_options();
  options.bounds = bounds.resolved();
  options.segre_bounds.r_max = std::min(options.segre_bounds.r_max, options.bounds.r_max);
  options.segre_bounds.genera = options.bounds.genera;
  options.deltas = parse_rational_list(args.deltas);
  const auto models = load_models(args.models);

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::Parse, "cannot write " + args.out);
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  const RecordSink sink = [&out](const ReportRecord& r) { write_record(out, r); };
  const auto summaries =
      args.models.empty() ? run_suite(args.suite, options, sink) : run_suite(args.suite, options, models, sink);
  std::size_t violations = 0;
  for (const auto& s : summaries) {
    std::cerr << "suite " << s.suite << ": records " << s.instances << ", checks " << s.checks << ", violations "
              << s.violations << ", reported " << s.reported << ", skipped " << s.skipped << "\n";
    violations += s.violations;
  }
  out.flush();
  return violations == 0 ? exit_ok : exit_fail;
}

struct StrataArgs {
  std::vector<std::string> models;
  std::string deltas = "1/2,1,2";
};

// Walls: delta > 0 where P(F) + delta mu(F,E) changes sign for some proper F.
// Longer filtrations add nothing since both functionals are weighted sums of
// the one-step values.
std::vector<Rational> walls(const BundleModel& model) {
  std::set<Rational> out;
  for (Index f = 2; f < model.size(); ++f) {
    const Rational mu = mu_subsheaf(model, f);
    if (mu == Rational(0)) continue;
    const Rational delta = -p_functional(model, one_step(f)) / mu;
    if (delta > Rational(0)) out.insert(delta);
  }
  return {out.begin(), out.end()};
}

int cmd_strata(const StrataArgs& args, const BoundsArgs& bounds, Format format) {
  const auto deltas = parse_rational_list(args.deltas);
  auto emit = [&](const std::string& id, const BundleModel& model, int weight_max) {
    const WeightGrid grid = WeightGrid::integers(weight_max);
    const auto w = walls(model);
    if (format == Format::Json) {
      json verdicts = json::object();
      for (const auto& d : deltas) verdicts[to_string(d)] = std::string(to_string(check_dgpb(model, d, grid).stability));
      json jw = json::array();
      for (const auto& x : w) jw.push_back(to_string(x));
      std::cout << json{{"instance", id}, {"verdicts", verdicts}, {"walls", jw}}.dump() << "\n";
      return;
    }
    std::cout << id;
    for (const auto& d : deltas) std::cout << "  " << to_string(d) << ":" << to_string(check_dgpb(model, d, grid).stability);
    std::cout << "  walls:";
    if (w.empty()) std::cout << " none";
    for (std::size_t i = 0; i < w.size(); ++i) std::cout << (i ? ", " : " ") << to_string(w[i]);
    std::cout << "\n";
  };
  if (!args.models.empty()) {
    for (const auto& m : load_models(args.models)) emit(m.id, m.model, bounds.bounds.weight_max);
  } else {
    const auto b = bounds.resolved();
    for_each_model(b, 1, [&](const EnumeratedModel& m) { emit(m.id, m.model, b.weight_max); });
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semistability checks for decorated generalized parabolic bundles"};
  app.require_subcommand(1);
  std::string format_text = "human";
  app.add_option("--witness-format", format_text, "human or json")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "semistability verdict for one document");
  check->add_option("file", check_args.file, "model document")->required();
  check->add_option("--delta", check_args.delta, "delta as p/q")->capture_default_str();
  check->add_option("--delta2", check_args.delta2, "second delta for 2dgpb (defaults to --delta)");
  check->add_option("--mode", check_args.mode, "dgpb, 2dgpb or fr")
      ->check(CLI::IsMember({"dgpb", "2dgpb", "fr"}))
      ->capture_default_str();
  check->add_flag("--strict", check_args.strict, "require stability");
  check->add_option("--weight-max", check_args.weight_max, "largest filtration weight")->capture_default_str();

  std::string jh_file, jh_delta = "1";
  auto* jh = app.add_subcommand("jh", "Jordan-Hölder filtration and gr");
  jh->add_option("file", jh_file, "model document")->required();
  jh->add_option("--delta", jh_delta, "delta as p/q")->capture_default_str();

  GitArgs git_args;
  auto* git = app.add_subcommand("git", "GIT point and equivalence table");
  git->add_option("file", git_args.file, "model document")->required();
  git->add_option("--m", git_args.m, "m (default: document, else smallest valid)");
  git->add_option("--l", git_args.l, "l samples (default: document, else l0, 2 l0, 4 l0)")->delimiter(',');
  git->add_option("--delta", git_args.delta, "delta as p/q (default: document, else 1)");

  VerifyArgs verify_args;
  BoundsArgs verify_bounds;
  auto* verify = app.add_subcommand("verify", "exhaustive property suites");
  verify->add_option("--suite", verify_args.suite, "suite name")
      ->check(CLI::IsMember({"additivity", "segre", "fr", "jh", "git", "homogeneity", "all"}))
      ->capture_default_str();
  verify->add_option("--out", verify_args.out, "JSON-lines report file (default stdout)");
  verify->add_option("--model", verify_args.models, "run on these documents instead of the enumeration");
  verify->add_option("--deltas", verify_args.deltas, "comma-separated deltas")->capture_default_str();
  verify_bounds.add(*verify);

  StrataArgs strata_args;
  BoundsArgs strata_bounds;
  auto* strata = app.add_subcommand("strata", "verdicts over a delta grid and the walls between them");
  strata->add_option("--delta-grid", strata_args.deltas, "comma-separated deltas")->capture_default_str();
  strata->add_option("--model", strata_args.models, "documents instead of the enumeration");
  strata_bounds.add(*strata);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_input;
  }
  const Format format = format_text == "json" ? Format::Json : Format::Human;

  try {
    if (*check) return cmd_check(check_args, format);
    if (*jh) return cmd_jh(jh_file, jh_delta, format);
    if (*git) return cmd_git(git_args, format);
    if (*verify) return cmd_verify(verify_args, verify_bounds);
    if (*strata) return cmd_strata(strata_args, strata_bounds, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
