#include "decostab/document.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace decostab {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Parse, path + ": " + what);
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

int as_small(const json& v, const std::string& path) {
  const auto x = as_int(v, path);
  if (x < -1'000'000 || x > 1'000'000) fail(path, "integer out of range");
  return static_cast<int>(x);
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Rational as_rational(const json& v, const std::string& path) {
  const auto text = as_string(v, path);
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    fail(path, e.detail());
  }
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(path, "unknown field \"" + key + "\"");
  }
}

Decoration parse_decoration(const json& obj, const std::string& path, const std::map<std::string, Index>& ids,
                            std::size_t catalog_size) {
  if (!obj.is_object()) fail(path, "expected an object");
  reject_unknown(obj, path, {"a", "b", "c", "deg_l", "deg_d", "epsilon", "kappa", "generators"});
  Decoration d;
  d.type.a = as_small(field(obj, path, "a"), path + ".a");
  d.type.b = as_small(field(obj, path, "b"), path + ".b");
  d.type.c = as_small(field(obj, path, "c"), path + ".c");
  d.type.deg_l = as_int(field(obj, path, "deg_l"), path + ".deg_l");
  d.type.deg_d = as_int(field(obj, path, "deg_d"), path + ".deg_d");
  d.profile.global_epsilon = as_bool(field(obj, path, "epsilon"), path + ".epsilon");
  const bool has_kappa = obj.contains("kappa");
  const bool has_generators = obj.contains("generators");
  if (has_kappa == has_generators) fail(path, "give exactly one of \"kappa\" and \"generators\"");

  auto lookup = [&](const json& v, const std::string& where) {
    const auto id = as_string(v, where);
    const auto it = ids.find(id);
    if (it == ids.end()) fail(where, "unknown catalog id \"" + id + "\"");
    return it->second;
  };

  if (has_kappa) {
    const json& k = obj.at("kappa");
    if (!k.is_object()) fail(path + ".kappa", "expected an object keyed by catalog id");
    KappaLevels levels{std::vector<int>(catalog_size, 0)};
    levels.kappa[BundleModel::whole] = d.profile.global_epsilon ? d.type.a : 0;
    std::vector<bool> seen(catalog_size, false);
    for (const auto& [id, value] : k.items()) {
      const auto it = ids.find(id);
      if (it == ids.end()) fail(path + ".kappa", "unknown catalog id \"" + id + "\"");
      levels.kappa[it->second] = as_small(value, path + ".kappa." + id);
      seen[it->second] = true;
    }
    for (const auto& [id, pos] : ids)
      if (!seen[pos]) fail(path + ".kappa", "missing level for \"" + id + "\"");
    d.profile.pattern = std::move(levels);
  } else {
    const json& g = obj.at("generators");
    if (!g.is_array()) fail(path + ".generators", "expected an array of id tuples");
    GeneratedPattern pattern;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string where = path + ".generators[" + std::to_string(i) + "]";
      if (!g[i].is_array()) fail(where, "expected an array of ids");
      std::vector<Index> tuple;
      for (std::size_t j = 0; j < g[i].size(); ++j) {
        const std::string w = where + "[" + std::to_string(j) + "]";
        tuple.push_back(as_string(g[i][j], w) == "E" ? BundleModel::whole : lookup(g[i][j], w));
      }
      pattern.generators.push_back(std::move(tuple));
    }
    d.profile.pattern = std::move(pattern);
  }
  return d;
}

json decoration_json(const BundleModel& model, const Decoration& d) {
  json out;
  out["a"] = d.type.a;
  out["b"] = d.type.b;
  out["c"] = d.type.c;
  out["deg_l"] = d.type.deg_l;
  out["deg_d"] = d.type.deg_d;
  out["epsilon"] = d.profile.global_epsilon;
  if (const auto* levels = std::get_if<KappaLevels>(&d.profile.pattern)) {
    json k = json::object();
    for (Index i = 2; i < model.size(); ++i) k[model.item(i).id] = levels->kappa[i];
    out["kappa"] = std::move(k);
  } else if (const auto* gen = std::get_if<GeneratedPattern>(&d.profile.pattern)) {
    json g = json::array();
    for (const auto& tuple : gen->generators) {
      json t = json::array();
      for (Index f : tuple) t.push_back(model.item(f).id);
      g.push_back(std::move(t));
    }
    out["generators"] = std::move(g);
  } else {
    throw Error(ErrorKind::InvalidModel, "Segre products are not stored in documents; store both factors");
  }
  return out;
}

json bundle_json(const BundleModel& model) {
  json b;
  b["rank"] = model.rank();
  b["degree"] = model.degree();
  b["genus"] = model.genus();
  b["dim_r"] = model.dim_r();
  std::vector<std::vector<std::string>> below(model.size());
  for (const auto& [lo, hi] : model.covering_relations()) below[hi].push_back(model.item(lo).id);
  json catalog = json::array();
  for (Index i = 2; i < model.size(); ++i) {
    const Subobject& s = model.item(i);
    json e;
    e["id"] = s.id;
    e["rank"] = s.rank;
    e["degree"] = s.degree;
    e["qdim"] = s.qdim;
    e["contains"] = below[i];
    e["beta"] = s.beta_flag;
    e["higgs"] = s.higgs_flag;
    catalog.push_back(std::move(e));
  }
  b["catalog"] = std::move(catalog);
  if (model.decorations().empty()) throw Error(ErrorKind::InvalidModel, "model has no decoration");
  b["decoration"] = decoration_json(model, model.decoration(0));
  return b;
}

json document_json(const BundleModel& model, const std::optional<GitParameters>& git) {
  json doc;
  doc["schema_version"] = std::string(schema_version);
  doc["bundle"] = bundle_json(model);
  if (model.decorations().size() > 1) doc["second_decoration"] = decoration_json(model, model.decoration(1));
  if (model.decorations().size() > 2) throw Error(ErrorKind::InvalidModel, "at most two decorations");
  if (git) {
    json g;
    g["m"] = git->m;
    g["l_samples"] = git->l_samples;
    g["delta"] = to_string(git->delta);
    doc["git"] = std::move(g);
  }
  return doc;
}

ModelDocument from_json(const json& doc) {
  if (!doc.is_object()) fail("$", "expected an object");
  reject_unknown(doc, "$", {"schema_version", "bundle", "second_decoration", "git"});
  const auto version = as_string(field(doc, "$", "schema_version"), "schema_version");
  if (version != schema_version) fail("schema_version", "unsupported version \"" + version + "\"");

  const json& b = field(doc, "$", "bundle");
  reject_unknown(b, "bundle", {"rank", "degree", "genus", "dim_r", "catalog", "decoration"});
  const int rank = as_small(field(b, "bundle", "rank"), "bundle.rank");
  const std::int64_t degree = as_int(field(b, "bundle", "degree"), "bundle.degree");
  const int genus = as_small(field(b, "bundle", "genus"), "bundle.genus");
  const int dim_r = as_small(field(b, "bundle", "dim_r"), "bundle.dim_r");

  const json& cat = field(b, "bundle", "catalog");
  if (!cat.is_array()) fail("bundle.catalog", "expected an array");
  std::vector<Subobject> proper;
  std::map<std::string, Index> ids;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const std::string path = "bundle.catalog[" + std::to_string(i) + "]";
    reject_unknown(cat[i], path, {"id", "rank", "degree", "qdim", "contains", "beta", "higgs"});
    Subobject s;
    s.id = as_string(field(cat[i], path, "id"), path + ".id");
    if (s.id == "0" || s.id == "E") fail(path + ".id", "\"0\" and \"E\" are reserved");
    if (!ids.emplace(s.id, i + 2).second) fail(path + ".id", "duplicate catalog id \"" + s.id + "\"");
    s.rank = as_small(field(cat[i], path, "rank"), path + ".rank");
    s.degree = as_int(field(cat[i], path, "degree"), path + ".degree");
    s.qdim = as_small(field(cat[i], path, "qdim"), path + ".qdim");
    if (cat[i].contains("beta")) s.beta_flag = as_bool(cat[i].at("beta"), path + ".beta");
    if (cat[i].contains("higgs")) s.higgs_flag = as_bool(cat[i].at("higgs"), path + ".higgs");
    proper.push_back(std::move(s));
  }
  std::vector<std::pair<Index, Index>> order;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const std::string path = "bundle.catalog[" + std::to_string(i) + "].contains";
    if (!cat[i].contains("contains")) continue;
    const json& c = cat[i].at("contains");
    if (!c.is_array()) fail(path, "expected an array of ids");
    for (std::size_t j = 0; j < c.size(); ++j) {
      const auto id = as_string(c[j], path + "[" + std::to_string(j) + "]");
      const auto it = ids.find(id);
      if (it == ids.end()) fail(path, "unknown catalog id \"" + id + "\"");
      order.emplace_back(it->second, i + 2);
    }
  }

  std::vector<Decoration> decorations;
  decorations.push_back(parse_decoration(field(b, "bundle", "decoration"), "bundle.decoration", ids, cat.size() + 2));
  if (doc.contains("second_decoration"))
    decorations.push_back(parse_decoration(doc.at("second_decoration"), "second_decoration", ids, cat.size() + 2));

  std::optional<GitParameters> git;
  if (doc.contains("git")) {
    const json& g = doc.at("git");
    reject_unknown(g, "git", {"m", "l_samples", "delta"});
    GitParameters p;
    p.m = as_int(field(g, "git", "m"), "git.m");
    const json& ls = field(g, "git", "l_samples");
    if (!ls.is_array()) fail("git.l_samples", "expected an array of integers");
    for (std::size_t i = 0; i < ls.size(); ++i)
      p.l_samples.push_back(as_int(ls[i], "git.l_samples[" + std::to_string(i) + "]"));
    p.delta = as_rational(field(g, "git", "delta"), "git.delta");
    git = std::move(p);
  }
  return ModelDocument{BundleModel(rank, degree, genus, dim_r, std::move(proper), order, std::move(decorations)),
                       std::move(git)};
}

}  // namespace

ModelDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return from_json(doc);
}

ModelDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

std::string serialize_document(const ModelDocument& doc) { return document_json(doc.model, doc.git).dump(2) + "\n"; }

std::string model_json(const BundleModel& model) { return document_json(model, std::nullopt).dump(); }

}  // namespace decostab
