#pragma once

// JSON model documents (schema "decostab/1"). Rationals are strings "p/q".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decostab/core.hpp"

namespace decostab {

inline constexpr std::string_view schema_version = "decostab/1";

struct GitParameters {
  std::int64_t m = 0;
  std::vector<std::int64_t> l_samples;
  Rational delta{1};

  friend bool operator==(const GitParameters&, const GitParameters&) = default;
};

struct ModelDocument {
  BundleModel model;
  std::optional<GitParameters> git;
};

/// Throws Error{Parse} with a line/column or field path on malformed input,
/// Error{InvalidModel} (or CatalogMismatch) when the model itself is invalid.
ModelDocument parse_document(std::string_view text);
ModelDocument load_document(const std::filesystem::path& path);

/// Canonical text: two-space indentation, fixed key order, trailing newline.
std::string serialize_document(const ModelDocument& doc);

/// The bundle part (and second decoration) as single-line JSON.
std::string model_json(const BundleModel& model);

}  // namespace decostab
