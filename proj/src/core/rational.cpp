#include "decostab/rational.hpp"

#include <charconv>
#include <string>

#include "decostab/error.hpp"

namespace decostab {
namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Parse, "malformed rational \"" + std::string(whole) + "\"");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const std::int64_t num = parse_integer(text.substr(0, slash), text);
  const std::int64_t den = parse_integer(text.substr(slash + 1), text);
  if (den <= 0) {
    throw Error(ErrorKind::Parse, "denominator must be positive in \"" + std::string(text) + "\"");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::NoAdmissibleTuple: return "NoAdmissibleTuple";
    case ErrorKind::EmptyWeightGrid: return "EmptyWeightGrid";
    case ErrorKind::CatalogMismatch: return "CatalogMismatch";
    case ErrorKind::ZeroRank: return "ZeroRank";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::EmptyInterval: return "EmptyInterval";
    case ErrorKind::NotSemistable: return "NotSemistable";
    case ErrorKind::CatalogIncomplete: return "CatalogIncomplete";
    case ErrorKind::SlopeMismatch: return "SlopeMismatch";
    case ErrorKind::NonpositiveDecoratedPolynomial: return "NonpositiveDecoratedPolynomial";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

}  // namespace decostab
