#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace cobord {

/// Monomial cp1^e1 * cp2^e2 * ... in the graded generators, cpn of weight n.
///
/// Packed into one 128-bit key: the total weight occupies the top 16 bits and
/// exponent e_n occupies the byte at bits [112 - 8n, 120 - 8n). Integer order
/// of keys is therefore (weight, e1, e2, ...) lexicographic, and multiplying
/// monomials is adding keys as long as the result weight stays at most
/// kMaxWeight (which bounds every byte by 255, so no carries occur).
class Monomial {
 public:
  __extension__ using Key = unsigned __int128;
  static constexpr int kMaxGenerator = 14;
  static constexpr int kMaxWeight = 255;

  constexpr Monomial() = default;

  static Monomial generator(int n, int power = 1) {
    if (n < 1 || n > kMaxGenerator)
      throw std::out_of_range("generator cp" + std::to_string(n) + " outside cp1..cp" +
                              std::to_string(kMaxGenerator));
    if (power < 0 || n * power > kMaxWeight)
      throw std::out_of_range("monomial weight exceeds supported bound " +
                              std::to_string(kMaxWeight));
    return Monomial((Key(n * power) << 112) | (Key(power) << (112 - 8 * n)));
  }

  /// exponents[i] is the exponent of cp(i+1).
  static Monomial from_exponents(std::span<const int> exponents) {
    Monomial m;
    for (std::size_t i = 0; i < exponents.size(); ++i)
      if (exponents[i] != 0) m = m * generator(int(i) + 1, exponents[i]);
    return m;
  }

  int weight() const { return int(key_ >> 112); }
  int exponent(int n) const { return int((key_ >> (112 - 8 * n)) & 0xFF); }
  bool is_one() const { return key_ == 0; }

  friend Monomial operator*(Monomial a, Monomial b) {
    if (a.weight() + b.weight() > kMaxWeight)
      throw std::out_of_range("monomial weight exceeds supported bound " +
                              std::to_string(kMaxWeight));
    return Monomial(a.key_ + b.key_);
  }

  friend auto operator<=>(Monomial, Monomial) = default;

  std::string to_string() const {
    std::string out;
    for (int n = 1; n <= kMaxGenerator; ++n) {
      int e = exponent(n);
      if (e == 0) continue;
      if (!out.empty()) out += '*';
      out += "cp" + std::to_string(n);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
  }

 private:
  explicit constexpr Monomial(Key key) : key_(key) {}
  Key key_ = 0;
};

/// Polynomial in cp1, cp2, ... with exact rational coefficients.
///
/// Terms are kept sorted by monomial (weight first) with no zero coefficients,
/// so structural equality is ring equality.
class CoeffPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  CoeffPoly() = default;
  CoeffPoly(long c) : CoeffPoly(Rational(c)) {}  // NOLINT: implicit constant
  CoeffPoly(const Rational& c) {                  // NOLINT: implicit constant
    if (!cobord::is_zero(c)) terms_.emplace_back(Monomial(), c);
  }

  /// cpn; cp0 is the constant 1.
  static CoeffPoly generator(int n) {
    if (n == 0) return CoeffPoly(1L);
    return monomial(Monomial::generator(n), Rational(1));
  }

  static CoeffPoly monomial(Monomial m, const Rational& c) {
    CoeffPoly p;
    if (!cobord::is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

  Rational constant_term() const {
    if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
    return Rational(0);
  }

  bool is_homogeneous(int w) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [w](const Term& t) { return t.first.weight() == w; });
  }

  /// Weight of a nonzero homogeneous polynomial.
  std::optional<int> weight() const {
    if (terms_.empty()) return std::nullopt;
    int w = terms_.front().first.weight();
    if (!is_homogeneous(w)) return std::nullopt;
    return w;
  }

  /// Highest generator index occurring, 0 for constants.
  int max_generator() const {
    int g = 0;
    for (const auto& [m, c] : terms_)
      for (int n = Monomial::kMaxGenerator; n > g; --n)
        if (m.exponent(n) != 0) {
          g = n;
          break;
        }
    return g;
  }

  /// Evaluation homomorphism cpn -> assignment[n].
  Rational specialize(const std::map<int, Rational>& assignment) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
      Rational value = c;
      for (int n = 1; n <= Monomial::kMaxGenerator; ++n) {
        int e = m.exponent(n);
        if (e == 0) continue;
        auto it = assignment.find(n);
        if (it == assignment.end())
          throw std::invalid_argument("specialize: no value assigned to generator cp" +
                                      std::to_string(n));
        for (int k = 0; k < e; ++k) value *= it->second;
      }
      total += value;
    }
    return total;
  }

  CoeffPoly operator-() const {
    CoeffPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  CoeffPoly& operator+=(const CoeffPoly& b) { return *this = merge(*this, b, false); }
  CoeffPoly& operator-=(const CoeffPoly& b) { return *this = merge(*this, b, true); }
  CoeffPoly& operator*=(const CoeffPoly& b) { return *this = *this * b; }

  friend CoeffPoly operator+(const CoeffPoly& a, const CoeffPoly& b) { return merge(a, b, false); }
  friend CoeffPoly operator-(const CoeffPoly& a, const CoeffPoly& b) { return merge(a, b, true); }

  friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (a.terms_.size() < b.terms_.size()) return b * a;
    CoeffPoly r;
    if (b.terms_.size() == 1) {
      // Multiplying by one term keeps the order.
      const auto& [mb, cb] = b.terms_[0];
      r.terms_.reserve(a.terms_.size());
      for (const auto& [ma, ca] : a.terms_) r.terms_.emplace_back(ma * mb, ca * cb);
      return r;
    }
    std::vector<Term> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) products.emplace_back(ma * mb, ca * cb);
    std::sort(products.begin(), products.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    for (auto& t : products) {
      if (!r.terms_.empty() && r.terms_.back().first == t.first)
        r.terms_.back().second += t.second;
      else
        r.terms_.push_back(std::move(t));
    }
    std::erase_if(r.terms_, [](const Term& t) { return cobord::is_zero(t.second); });
    return r;
  }

  friend CoeffPoly operator*(const CoeffPoly& a, const Rational& s) {
    if (cobord::is_zero(s)) return {};
    CoeffPoly r = a;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }
  friend CoeffPoly operator*(const Rational& s, const CoeffPoly& a) { return a * s; }
  friend CoeffPoly operator/(const CoeffPoly& a, const Rational& s) {
    if (cobord::is_zero(s)) throw std::domain_error("CoeffPoly division by zero");
    return a * Rational(1 / s);
  }

  friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) { return a.terms_ == b.terms_; }

  /// Canonical rendering, e.g. "-cp1 + 1/2*cp1^2"; terms by weight then
  /// lexicographic exponent vector.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = abs(c);
      bool negative = sgn(c) < 0;
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      first = false;
      if (m.is_one())
        out += cobord::to_string(mag);
      else if (mag == 1)
        out += m.to_string();
      else
        out += cobord::to_string(mag) + "*" + m.to_string();
    }
    return out;
  }

 private:
  static CoeffPoly merge(const CoeffPoly& a, const CoeffPoly& b, bool subtract) {
    CoeffPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first < ia->first) {
        r.terms_.emplace_back(ib->first, subtract ? Rational(-ib->second) : ib->second);
        ++ib;
      } else {
        Rational c = subtract ? Rational(ia->second - ib->second) : Rational(ia->second + ib->second);
        if (!cobord::is_zero(c)) r.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

inline bool is_zero(const CoeffPoly& p) { return p.is_zero(); }
inline std::string to_string(const CoeffPoly& p) { return p.to_string(); }

inline std::optional<CoeffPoly> unit_inverse(const CoeffPoly& p) {
  if (!p.is_constant() || p.is_zero()) return std::nullopt;
  return CoeffPoly(Rational(1 / p.constant_term()));
}

}  // namespace cobord
