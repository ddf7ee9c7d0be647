#include <set>
#include <sstream>

#include "doctest.h"
#include "decostab/document.hpp"
#include "decostab/enumerate.hpp"
#include "support/fixtures.hpp"

using namespace decostab;
using namespace decostab::testing;

namespace {

EnumerationBounds small() {
  EnumerationBounds b;
  b.r_max = 2;
  b.d_max = 1;
  b.qdim_max = 2;
  b.a_max = 2;
  return b;
}

}  // namespace

TEST_CASE("rank one gives trivial catalogs") {
  EnumerationBounds b;
  b.r_max = 1;
  const auto models = enumerate_models(b);
  CHECK(models.size() == 30);
  for (const auto& m : models) {
    CHECK(m.model.rank() == 1);
    CHECK(m.model.size() == 2);
  }
}

TEST_CASE("empty bounds give an empty stream") {
  EnumerationBounds b;
  b.r_max = 0;
  CHECK(count_models(b) == 0);
  b = EnumerationBounds{};
  b.genera.clear();
  CHECK(count_models(b) == 0);
}

TEST_CASE("frozen counts") {
  CHECK(count_models(small(), 1) == 332);
  CHECK(count_models(small(), 2) == 3512);
}

TEST_CASE("stream is deterministic and duplicate free") {
  const auto first = enumerate_models(small());
  const auto second = enumerate_models(small());
  REQUIRE(first.size() == second.size());
  std::set<std::string> ids, docs;
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].id == second[i].id);
    ids.insert(first[i].id);
    docs.insert(model_json(first[i].model));
  }
  CHECK(ids.size() == first.size());
  CHECK(docs.size() == first.size());
}

TEST_CASE("enumerated models respect the bounds") {
  const auto b = small();
  for_each_model(b, 1, [&](const EnumeratedModel& m) {
    const auto& model = m.model;
    CHECK(model.rank() <= b.r_max);
    CHECK(std::abs(model.degree()) <= b.d_max);
    CHECK(model.decoration().type.a <= b.a_max);
    CHECK(model.size() - 2 <= static_cast<std::size_t>(b.catalog_max));
    const auto bound = boundedness_constants(model.decoration().type, model.rank(), model.degree()).slope_bound;
    for (Index f = 2; f < model.size(); ++f)
      CHECK(Rational(model.item(f).degree, model.item(f).rank) <= bound);
  });
}

TEST_CASE("filtration counts") {
  CHECK(enumerate_filtrations(worked(1), 3).size() == 4);
  CHECK(enumerate_filtrations(worked(1), 3).front().steps.empty());
  const auto trivial = build(1, 0, 2, 1, {}, {{type_a(1), {}}});
  CHECK(enumerate_filtrations(trivial, 3).size() == 1);
  // 0 < E1 < E2 < E with weight 1: one two-step filtration
  std::size_t two_step = 0;
  for (const auto& f : enumerate_filtrations(rank3_chain(1, 0, 1), 1)) two_step += f.length() == 2;
  CHECK(two_step == 1);
  CHECK(enumerate_filtrations(rank3_chain(1, 0, 1), 3).size() == 1 + 3 + 3 + 9);
}

TEST_CASE("monomial kappa and lattice checks") {
  EnumerationBounds b;
  b.r_max = 2;
  b.d_max = 0;
  b.a_max = 1;
  std::size_t complete = 0;
  for_each_model(b, 1, [&](const EnumeratedModel& m) {
    if (m.atom_ranks.size() != 2) return;
    if (is_complete_lattice(m)) {
      ++complete;
      CHECK(is_lattice_closed(m));
      CHECK(m.model.size() == 4);
    }
  });
  CHECK(complete > 0);
}

TEST_CASE("small suites report no violations") {
  VerifyOptions options = default_verify_options();
  options.bounds = small();
  options.segre_bounds.r_max = 2;
  options.threads = 2;
  std::vector<ReportRecord> records;
  const auto summaries = run_suite("all", options, [&](const ReportRecord& r) { records.push_back(r); });
  CHECK(summaries.size() == 6);
  for (const auto& s : summaries) {
    CAPTURE(s.suite);
    CHECK(s.violations == 0);
    CHECK(s.checks > 0);
  }
  for (const auto& r : records) CHECK((r.verdict == "pass" || r.verdict == "reported"));
}

TEST_CASE("thread count does not change the report") {
  auto run = [](unsigned threads) {
    VerifyOptions options = default_verify_options();
    options.bounds = small();
    options.segre_bounds.r_max = 2;
    options.threads = threads;
    std::ostringstream out;
    run_suite("all", options, [&](const ReportRecord& r) { write_record(out, r); });
    return out.str();
  };
  CHECK(run(1) == run(3));
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_suite("nope", default_verify_options(), nullptr), Error); }

TEST_CASE("report lines") {
  ReportRecord r{"S1", "additivity", Rational(3), Rational(3), "pass", 2, "", ""};
  std::ostringstream out;
  write_record(out, r);
  CHECK(out.str() == R"({"instance":"S1","property":"additivity","lhs":"3/1","rhs":"3/1","verdict":"pass","checks":2})"
                     "\n");
  r.verdict = "violation";
  r.witness = "0 ⊂ \"F\" ⊂ E";
  r.model_json = "{}";
  out.str("");
  write_record(out, r);
  CHECK(out.str().find(R"("witness":"0 ⊂ \"F\" ⊂ E","model":{})") != std::string::npos);
}

TEST_CASE("describe") {
  const auto m = rank3_chain(2, 1, 2);
  CHECK(describe(m, WeightedFiltration{{2, 3}, {Rational(1), Rational(1, 2)}}) ==
        "0 ⊂ E1(1,0,1,1) ⊂ E2(2,0,2,2) ⊂ E weights (1/1,1/2)");
}
