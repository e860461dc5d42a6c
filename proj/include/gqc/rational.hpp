#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace gqc {

// Exact rational scalar used everywhere weights, certificates and LPs appear.
// Algorithm modules only ever test positivity; no floating point weight
// handling exists in the library.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Canonical text form: "p" when integral, otherwise "p/q" in lowest terms.
inline std::string rat_to_string(const Rat& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p", "p/q" and plain decimals ("0.25", "-3.5", "1e3" is rejected).
std::optional<Rat> try_parse_rational(const std::string& text);

inline Rat parse_rational(const std::string& text) {
  auto r = try_parse_rational(text);
  if (!r) throw std::invalid_argument("malformed rational: '" + text + "'");
  return *r;
}

// Smallest power of two strictly greater than x (at least 1).  For integer x
// this equals 2^ceil(log2(x+1)).
Rat pow2_weight_bound(const Rat& x);

// floor(log2(r)) for r > 0, and ceil(log2(n)) for integers n >= 1.
int floor_log2(const Rat& r);
int ceil_log2_int(long long n);

}  // namespace gqc
