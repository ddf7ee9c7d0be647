// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// usage: acceptance <path to the decostab executable>

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "decostab/document.hpp"
#include "decostab/enumerate.hpp"
#include "decostab/gitpoint.hpp"
#include "support/oracles.hpp"

using namespace decostab;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string summary_text(const SuiteSummary& s) {
  std::ostringstream out;
  out << s.instances << " records, " << s.checks << " checks, " << s.violations << " violations";
  if (s.reported) out << ", " << s.reported << " reported";
  return out.str();
}

// gamma vectors over non-decreasing rank sequences
Outcome gamma_identities() {
  std::size_t checks = 0, violations = 0;
  const std::vector<Rational> grid{Rational(1), Rational(2), Rational(3)};
  for (int r = 1; r <= 5; ++r)
    for (int s = 1; s <= 4; ++s) {
      std::vector<int> ranks(s, 1);
      while (true) {
        std::vector<std::size_t> pick(s, 0);
        while (true) {
          std::vector<Rational> w;
          for (auto p : pick) w.push_back(grid[p]);
          const auto g = gamma_vector(ranks, w, r);
          Rational sum(0);
          bool ok = g == oracle::gamma(ranks, w, r);
          for (std::size_t i = 0; i < g.size(); ++i) {
            sum += g[i];
            if (i > 0 && g[i] < g[i - 1]) ok = false;
          }
          ok = ok && sum == Rational(0);
          ++checks;
          violations += !ok;
          std::size_t k = 0;
          while (k < pick.size() && ++pick[k] == grid.size()) pick[k++] = 0;
          if (k == pick.size()) break;
        }
        int k = s - 1;
        while (k >= 0 && ranks[k] == r) --k;
        if (k < 0) break;
        ++ranks[k];
        for (int j = k + 1; j < s; ++j) ranks[j] = ranks[k];
      }
    }
  return {violations == 0, std::to_string(checks) + " filtrations, " + std::to_string(violations) + " violations"};
}

// one-step mu against the closed form, and the generic bound
Outcome mu_consistency() {
  std::size_t checks = 0, violations = 0;
  auto visit = [&](const EnumeratedModel& m) {
    const BundleModel& model = m.model;
    const Decoration& deco = model.decoration();
    const int r = model.rank();
    const int a = deco.type.a;
    for (Index f = 2; f < model.size(); ++f) {
      const Rational expected =
          deco.profile.global_epsilon ? Rational(kappa(model, deco, f) * r - a * model.item(f).rank) : Rational(0);
      const Rational one = mu_filtration(model, one_step(f), deco);
      const Rational sub = mu_subsheaf(model, f, deco);
      ++checks;
      if (one != expected || sub != expected || abs(one) > Rational(a * (r - 1))) ++violations;
    }
  };
  for_each_model(EnumerationBounds{}, 1, visit);
  EnumerationBounds rank4;
  rank4.r_max = 4;
  rank4.catalog_max = 2;
  for_each_model(rank4, 1, [&](const EnumeratedModel& m) {
    if (m.model.rank() == 4) visit(m);
  });
  return {violations == 0, std::to_string(checks) + " (model, F) pairs, " + std::to_string(violations) + " violations"};
}

Outcome suite(SuiteSummary (*fn)(const VerifyOptions&, const RecordSink&)) {
  const auto s = fn(default_verify_options(), nullptr);
  return {s.violations == 0 && s.checks > 0, s.suite + ": " + summary_text(s)};
}

Outcome git_equivalence() {
  const auto s = verify_git(default_verify_options(), nullptr);
  // E(2, 0, g = 2), F(1, 0, 1), a = 2, delta = 1 at m = 5, l = 10
  Subobject f{"F", 1, 0, 1};
  KappaLevels levels{{0, 2, 2}};
  const BundleModel worked(2, 0, 2, 2, {f}, {}, {Decoration{{2, 1, 0, 0, 0}, DecorationProfile{levels, true}}});
  const auto ratios = linearization_ratios(worked, 5, 10, Rational(1));
  const bool worked_ok = ratios.n2 == Rational(5, 2) && ratios.n3 == Rational(5, 2);
  return {s.violations == 0 && s.checks > 0 && worked_ok,
          summary_text(s) + "; worked ratios " + to_string(ratios.n2) + ", " + to_string(ratios.n3)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_round_trip(const std::string& cli) {
  std::size_t documents = 0, mismatched = 0;
  for (const auto& entry : std::filesystem::directory_iterator(DECOSTAB_SOURCE_DIR "/data/models")) {
    if (entry.path().extension() != ".json") continue;
    ++documents;
    const auto text = slurp(entry.path());
    if (serialize_document(parse_document(text)) != text) ++mismatched;
  }
  const std::filesystem::path first = "acceptance_report_1.jsonl", second = "acceptance_report_2.jsonl";
  const auto verify = [&](const std::filesystem::path& out) {
    return run("\"" + cli + "\" verify --suite all --out " + out.string() + " 2> " + out.string() + ".summary");
  };
  const int rc1 = verify(first);
  const int rc2 = verify(second);
  const auto a = slurp(first), b = slurp(second);
  const bool same = !a.empty() && a == b;
  std::ostringstream detail;
  detail << documents << " documents, " << mismatched << " not canonical; verify exit codes " << rc1 << ", " << rc2
         << "; reports " << (same ? "identical" : "differ") << " (" << a.size() << " bytes)";
  return {documents > 0 && mismatched == 0 && rc1 == 0 && rc2 == 0 && same, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <decostab executable>\n";
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    int number;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "gamma-vector identities", 5, gamma_identities},
      {2, "mu consistency", 10, mu_consistency},
      {3, "additivity", 30, [] { return suite(verify_additivity); }},
      {4, "Segre additivity and verdict equality", 30, [] { return suite(verify_segre); }},
      {5, "fr implies delta-semistability", 30, [] { return suite(verify_fr_implies_delta); }},
      {6, "Jordan-Hoelder gr uniqueness", 30, [] { return suite(verify_jh); }},
      {7, "GIT equivalence", 30, git_equivalence},
      {8, "homogeneity", 10, [] { return suite(verify_homogeneity); }},
      {9, "CLI round trip and determinism", 60, [&] { return cli_round_trip(cli); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && seconds < c.limit;
    all = all && pass;
    std::cout << "criterion " << c.number << " (" << c.name << "): " << (pass ? "PASS" : "FAIL") << " - " << o.detail
              << " - " << std::fixed << std::setprecision(2) << seconds << " s (limit " << c.limit << " s)"
              << std::endl;
  }
  return all ? 0 : 1;
}
