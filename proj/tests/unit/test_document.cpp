#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "decostab/document.hpp"
#include "support/fixtures.hpp"

using namespace decostab;
using namespace decostab::testing;

namespace {

const std::filesystem::path corpus = DECOSTAB_SOURCE_DIR "/data/models";

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* minimal = R"({
  "schema_version": "decostab/1",
  "bundle": {
    "rank": 2, "degree": 0, "genus": 2, "dim_r": 2,
    "catalog": [{"id": "F", "rank": 1, "degree": 0, "qdim": 1}],
    "decoration": {"a": 2, "b": 1, "c": 0, "deg_l": 0, "deg_d": 0, "epsilon": true, "kappa": {"F": 1}}
  }
})";

std::string parse_error(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("minimal document") {
  const auto doc = parse_document(minimal);
  CHECK(doc.model.rank() == 2);
  CHECK(doc.model.size() == 3);
  CHECK(doc.model.item(2).id == "F");
  CHECK(kappa(doc.model, doc.model.decoration(), 2) == 1);
  CHECK(kappa(doc.model, doc.model.decoration(), BundleModel::whole) == 2);
  CHECK_FALSE(doc.git);
}

TEST_CASE("round trip is the identity") {
  const auto once = serialize_document(parse_document(minimal));
  CHECK(serialize_document(parse_document(once)) == once);

  ModelDocument doc{rank3_chain(2, 1, 2), GitParameters{5, {10, 20}, Rational(1, 2)}};
  const auto text = serialize_document(doc);
  const auto back = parse_document(text);
  CHECK(back.git == doc.git);
  CHECK(serialize_document(back) == text);
  CHECK(back.model.leq(2, 3));
}

TEST_CASE("corpus is canonical") {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    CAPTURE(entry.path().filename().string());
    const auto text = read(entry.path());
    CHECK(serialize_document(parse_document(text)) == text);
  }
  CHECK(files >= 8);
}

TEST_CASE("generators and a second decoration survive serialization") {
  const auto gen = load_document(corpus / "generated_pattern.json");
  CHECK(std::holds_alternative<GeneratedPattern>(gen.model.decoration().profile.pattern));
  const auto pair = load_document(corpus / "two_decorations.json");
  CHECK(pair.model.decorations().size() == 2);
  CHECK(serialize_document(parse_document(serialize_document(pair))) == serialize_document(pair));
}

TEST_CASE("field diagnostics") {
  CHECK(parse_error(replace(minimal, R"("rank": 1)", R"("rank": "1")")) ==
        "Parse: bundle.catalog[0].rank: expected an integer");
  CHECK(parse_error(replace(minimal, R"("id": "F")", R"("id": "E")")) ==
        "Parse: bundle.catalog[0].id: \"0\" and \"E\" are reserved");
  CHECK(parse_error(replace(minimal, R"("kappa": {"F": 1})", R"("kappa": {})")) ==
        "Parse: bundle.decoration.kappa: missing level for \"F\"");
  CHECK(parse_error(replace(minimal, R"("genus": 2)", R"("genus": 2, "colour": 1)")) ==
        "Parse: bundle: unknown field \"colour\"");
  CHECK(parse_error(replace(minimal, "decostab/1", "decostab/0")) ==
        "Parse: schema_version: unsupported version \"decostab/0\"");
  CHECK(parse_error(std::string(minimal).substr(0, 40)).rfind("Parse: ", 0) == 0);
}

TEST_CASE("malformed rationals") {
  const std::string with_git = replace(minimal, "\n}", R"(, "git": {"m": 5, "l_samples": [10], "delta": "1/0"}})");
  CHECK(parse_error(with_git) == "Parse: git.delta: denominator must be positive in \"1/0\"");
  CHECK(parse_error(replace(with_git, "1/0", "x")).rfind("Parse: git.delta", 0) == 0);
  CHECK(parse_document(replace(with_git, "1/0", "2/4")).git->delta == Rational(1, 2));
}

TEST_CASE("model errors pass through") {
  // kappa must be monotone along the catalog order
  const auto bad = read(DECOSTAB_SOURCE_DIR "/tests/data/bad_kappa.json");
  try {
    parse_document(bad);
    FAIL("accepted a non-monotone kappa");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidModel);
  }
}
