#pragma once

// Exhaustive desk-scale model streams and the property-suite verifiers.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "decostab/core.hpp"

namespace decostab {

/// Models are numerically split: E is a sum of atoms whose ranks form a
/// partition of r, every catalog element is a sum of a proper nonempty set of
/// atoms, and all invariants add up. dim R = r.
struct EnumerationBounds {
  int r_max = 3;
  int d_max = 2;                 // |deg E|
  std::vector<int> genera{2};
  int atom_degree_max = 1;       // |deg| of each atom when there are two or more
  int qdim_max = 3;              // qdim of each atom, also capped by min(2 rank, r)
  int a_max = 3;
  int weight_max = 3;            // weight grid {1, ..., weight_max}
  int catalog_max = 6;           // proper subobjects in the catalog
  bool zero_decoration = true;   // also emit phi identically zero

  friend bool operator==(const EnumerationBounds&, const EnumerationBounds&) = default;
};

/// Throws InvalidModel for illegal bounds (negative sizes, weight_max < 1, r_max > 6).
void validate(const EnumerationBounds& bounds);

struct EnumeratedModel {
  std::string id;               // "S1", "S2", ... in stream order
  BundleModel model;
  std::vector<int> atom_ranks;
  std::vector<unsigned> masks;  // atom set of each catalog position
};

/// Calls `visit` on every canonical model, in a fixed order. With
/// `decorations` = 2 every model carries two kappa-profiles (types a1, a2).
void for_each_model(const EnumerationBounds& bounds, int decorations,
                    const std::function<void(const EnumeratedModel&)>& visit);

std::vector<EnumeratedModel> enumerate_models(const EnumerationBounds& bounds, int decorations = 1);
std::size_t count_models(const EnumerationBounds& bounds, int decorations = 1);

/// Every strictly increasing chain of proper catalog elements times every
/// weight tuple from {1, ..., weight_max}; the empty filtration comes first.
std::vector<WeightedFiltration> enumerate_filtrations(const BundleModel& model, int weight_max);

/// The catalog is closed under sums and intersections of atom sets (with the
/// empty set as 0 and the full set as E).
bool is_lattice_closed(const EnumeratedModel& m);

/// Every sum of atoms is in the catalog.
bool is_complete_lattice(const EnumeratedModel& m);

/// kappa equals max over a set of atom monomials of the number of slots
/// falling in F (the pattern of a morphism on a direct sum).
bool is_monomial_kappa(const EnumeratedModel& m, std::size_t deco = 0);

// ---- reports -------------------------------------------------------------

/// One line of a JSON-lines report.
struct ReportRecord {
  std::string instance;
  std::string property;
  Rational lhs;
  Rational rhs;
  std::string verdict;  // "pass", "violation", or "reported" (allowed failure)
  std::size_t checks = 0;
  std::string witness;     // human description of the failing test object
  std::string model_json;  // full model, on violations only
};

void write_record(std::ostream& out, const ReportRecord& record);

struct SuiteSummary {
  std::string suite;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::size_t reported = 0;
  std::size_t skipped = 0;
};

using RecordSink = std::function<void(const ReportRecord&)>;

struct VerifyOptions {
  EnumerationBounds bounds;
  EnumerationBounds segre_bounds;  // defaults narrowed in default_segre_bounds()
  std::vector<Rational> deltas{Rational(1, 2), Rational(1), Rational(2)};
  unsigned threads = 1;
};

EnumerationBounds default_segre_bounds();
VerifyOptions default_verify_options();

/// Workers from DECOSTAB_THREADS (at least 1), else hardware concurrency.
unsigned threads_from_env();

SuiteSummary verify_additivity(const VerifyOptions& options, const RecordSink& sink);
SuiteSummary verify_segre(const VerifyOptions& options, const RecordSink& sink);
SuiteSummary verify_fr_implies_delta(const VerifyOptions& options, const RecordSink& sink);
SuiteSummary verify_jh(const VerifyOptions& options, const RecordSink& sink);
SuiteSummary verify_git(const VerifyOptions& options, const RecordSink& sink);
SuiteSummary verify_homogeneity(const VerifyOptions& options, const RecordSink& sink);

/// Suite names accepted by run_suite: additivity, segre, fr, jh, git, homogeneity, all.
std::vector<SuiteSummary> run_suite(const std::string& name, const VerifyOptions& options, const RecordSink& sink);

/// Same suites over the given models instead of the enumeration. Models with
/// two decorations go to segre, the rest to the single-decoration suites.
std::vector<SuiteSummary> run_suite(const std::string& name, const VerifyOptions& options,
                                    const std::vector<EnumeratedModel>& models, const RecordSink& sink);

/// Human form "0 < F(r,d,q,k) < ... < E" with weights.
std::string describe(const BundleModel& model, const WeightedFiltration& f, std::size_t deco = 0);

}  // namespace decostab
