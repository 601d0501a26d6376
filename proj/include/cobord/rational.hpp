#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cobord {

/// Exact integer with unbounded magnitude.
using Integer = mpz_class;

/// Exact fraction kept in lowest terms with a positive denominator.
///
/// GMP's mpq arithmetic preserves canonical form, so every value produced by
/// the operators below already satisfies gcd(|num|, den) = 1 and den > 0.
/// Construct through make_rational() when starting from a raw pair.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

/// Renders "p/q", with "/q" omitted for integers.
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::optional<Rational> unit_inverse(const Rational& r) {
  if (is_zero(r)) return std::nullopt;
  return Rational(1 / r);
}

}  // namespace cobord
