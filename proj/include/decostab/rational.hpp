#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace decostab {

// Compare only against other Rationals: with Boost 1.74 under C++20, mixed
// rational/int comparisons recurse through the rewritten operator candidates.
using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or "p". The denominator must be strictly positive.
/// Throws Error{ErrorKind::Parse} on malformed input.
Rational parse_rational(std::string_view text);

/// Always "p/q", with q > 0 and gcd(p, q) = 1.
std::string to_string(const Rational& value);


}  // namespace decostab
