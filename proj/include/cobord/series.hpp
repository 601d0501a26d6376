#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coeff_poly.hpp"
#include "rational.hpp"

namespace cobord {

/// Raised when an exact division leaves a remainder, i.e. the numerator did
/// not actually vanish where the identity says it should.
class DivisionError : public std::domain_error {
 public:
  DivisionError(const std::string& what, int degree, std::string witness)
      : std::domain_error(what), degree_(degree), witness_(std::move(witness)) {}
  int degree() const { return degree_; }
  const std::string& witness() const { return witness_; }

 private:
  int degree_;
  std::string witness_;
};

/// Exponent vector over at most three variables.
struct Exponents {
  static constexpr std::size_t kMaxVars = 3;
  std::array<std::uint8_t, kMaxVars> e{};

  Exponents() = default;
  Exponents(std::initializer_list<int> list) {
    if (list.size() > kMaxVars) throw std::invalid_argument("too many exponents");
    std::size_t i = 0;
    for (int x : list) {
      if (x < 0 || x > 255) throw std::out_of_range("exponent out of range");
      e[i++] = std::uint8_t(x);
    }
  }

  int operator[](std::size_t i) const { return e[i]; }
  int degree() const { return e[0] + e[1] + e[2]; }

  friend Exponents operator+(Exponents a, const Exponents& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i) a.e[i] = std::uint8_t(a.e[i] + b.e[i]);
    return a;
  }
  friend bool operator==(const Exponents&, const Exponents&) = default;
};

/// Graded order: total degree ascending, then exponent vector descending
/// (so u^2 precedes u*v precedes v^2).
struct GradedOrder {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return b.e < a.e;
  }
};

using Variables = std::vector<std::string>;

/// Truncated power series in up to three weight-one variables.
///
/// A series of order N knows every coefficient of total degree <= N and
/// stores nothing above it. Multiplication tracks precision through
/// valuations: a product is known up to
/// min(order(a) + val(b), order(b) + val(a)), capped at the larger order, so
/// for instance u*v*X keeps the full precision of X plus two.
template <class R>
class Series {
 public:
  using Coeff = R;
  using TermMap = std::map<Exponents, R, GradedOrder>;

  Series() = default;
  Series(Variables vars, int order) : vars_(std::move(vars)), order_(order) {
    if (vars_.empty() || vars_.size() > Exponents::kMaxVars)
      throw std::invalid_argument("series needs between 1 and 3 variables");
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable " + vars_[i]);
    if (order_ < 0) throw std::invalid_argument("negative truncation order");
  }

  static Series constant(Variables vars, int order, const R& c) {
    Series s(std::move(vars), order);
    s.add_term(Exponents{}, c);
    return s;
  }

  static Series variable(Variables vars, const std::string& name, int order) {
    Series s(std::move(vars), order);
    Exponents e;
    e.e[s.index_of(name)] = 1;
    s.add_term(e, R(1L));
    return s;
  }

  static Series monomial(Variables vars, Exponents e, const R& c, int order) {
    Series s(std::move(vars), order);
    s.add_term(e, c);
    return s;
  }

  const Variables& variables() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  int order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw std::invalid_argument("unknown variable " + name);
  }

  /// Lowest stored degree; order + 1 for the zero series.
  int valuation() const { return terms_.empty() ? order_ + 1 : terms_.begin()->first.degree(); }

  /// Degree in a single variable (maximum exponent), 0 if absent.
  int degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  R coefficient(const Exponents& e) const {
    if (e.degree() > order_)
      throw std::out_of_range("coefficient of degree " + std::to_string(e.degree()) +
                              " requested from a series of order " + std::to_string(order_));
    for (std::size_t i = vars_.size(); i < Exponents::kMaxVars; ++i)
      if (e[i] != 0) throw std::out_of_range("exponent on a nonexistent variable");
    auto it = terms_.find(e);
    return it == terms_.end() ? R() : it->second;
  }

  R constant_term() const { return coefficient(Exponents{}); }

  Series truncate(int m) const {
    if (m > order_)
      throw std::invalid_argument("cannot truncate a series of order " + std::to_string(order_) +
                                  " to order " + std::to_string(m));
    Series r(vars_, m);
    for (const auto& [e, c] : terms_) {
      if (e.degree() > m) break;
      r.terms_.emplace_hint(r.terms_.end(), e, c);
    }
    return r;
  }

  /// Adds c * x^e; terms above the order are discarded.
  void add_term(const Exponents& e, const R& c) {
    if (e.degree() > order_ || cobord::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (cobord::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Declares a new order. Lowering drops terms; raising asserts the missing
  /// coefficients are zero and is meant for iterative solvers and exact
  /// polynomial literals.
  Series with_order(int m) const {
    if (m <= order_) return truncate(m);
    Series r = *this;
    r.order_ = m;
    return r;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  Series& operator+=(const Series& b) {
    require_same_universe(b);
    if (b.order_ < order_) *this = truncate(b.order_);
    for (const auto& [e, c] : b.terms_) add_term(e, c);
    return *this;
  }
  Series& operator-=(const Series& b) { return *this += -b; }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const Series& a, const Series& b) {
    a.require_same_universe(b);
    int ord = std::min({a.order_ + b.valuation(), b.order_ + a.valuation(),
                        std::max(a.order_, b.order_)});
    Series r(a.vars_, ord);
    for (const auto& [ea, ca] : a.terms_) {
      int da = ea.degree();
      if (da + b.valuation() > ord) break;
      for (const auto& [eb, cb] : b.terms_) {
        if (da + eb.degree() > ord) break;
        r.add_term(ea + eb, ca * cb);
      }
    }
    return r;
  }
  Series& operator*=(const Series& b) { return *this = *this * b; }

  friend Series operator*(const R& s, const Series& a) {
    Series r(a.vars_, a.order_);
    if (cobord::is_zero(s)) return r;
    for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
  }

  /// Multiplies by the exact monomial x^e; the order grows by deg(e).
  Series shifted(const Exponents& e) const {
    Series r(vars_, order_ + e.degree());
    for (const auto& [k, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), k + e, c);
    return r;
  }

  /// Structural equality: same variables, order and coefficients.
  friend bool operator==(const Series& a, const Series& b) {
    return a.vars_ == b.vars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  void require_same_universe(const Series& b) const {
    if (vars_ != b.vars_) throw std::invalid_argument("series variable universes differ");
  }

  std::string render_term(const Exponents& e, const R& c) const {
    std::string mono;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = cobord::to_string(c);
    if (mono.empty()) return cs;
    if (cs == "1") return mono;
    if (cs == "-1") return "-" + mono;
    if (cs.find(' ') != std::string::npos) return "(" + cs + ")*" + mono;
    return cs + "*" + mono;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::string t = render_term(e, c);
      if (out.empty())
        out = t;
      else if (t.front() == '-')
        out += " - " + t.substr(1);
      else
        out += " + " + t;
    }
    return out;
  }

 private:
  Variables vars_{"u"};
  int order_ = 0;
  TermMap terms_;
};

using TruncatedSeries = Series<CoeffPoly>;

template <class R>
std::string to_string(const Series<R>& s) {
  return s.to_string();
}

/// Lowest-degree disagreement between two series, compared at their common
/// order. Empty when they agree.
struct Discrepancy {
  int degree;
  std::string witness;
};

template <class R>
std::optional<Discrepancy> first_difference(const Series<R>& a, const Series<R>& b) {
  int m = std::min(a.order(), b.order());
  Series<R> diff = a.truncate(m) - b.truncate(m);
  if (diff.is_zero()) return std::nullopt;
  const auto& [e, c] = *diff.terms().begin();
  return Discrepancy{e.degree(), diff.render_term(e, c)};
}

/// a and b agree at their common order.
template <class R>
bool agree(const Series<R>& a, const Series<R>& b) {
  return !first_difference(a, b).has_value();
}

template <class R>
Series<R> power(const Series<R>& s, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  Series<R> result = Series<R>::constant(s.variables(), s.order(), R(1L));
  Series<R> base = s;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

/// Re-expresses s in a larger universe containing all of its variables.
template <class R>
Series<R> embed(const Series<R>& s, const Variables& universe) {
  std::vector<std::size_t> map;
  for (const auto& name : s.variables()) {
    auto it = std::find(universe.begin(), universe.end(), name);
    if (it == universe.end()) throw std::invalid_argument("variable " + name + " not in target universe");
    map.push_back(std::size_t(it - universe.begin()));
  }
  Series<R> r(universe, s.order());
  for (const auto& [e, c] : s.terms()) {
    Exponents t;
    for (std::size_t i = 0; i < map.size(); ++i) t.e[map[i]] = e.e[i];
    r.add_term(t, c);
  }
  return r;
}

/// Renames variables positionally.
template <class R>
Series<R> rename(const Series<R>& s, const Variables& names) {
  if (names.size() != s.arity()) throw std::invalid_argument("rename needs one name per variable");
  Series<R> r(names, s.order());
  for (const auto& [e, c] : s.terms()) r.add_term(e, c);
  return r;
}

/// Simultaneous composition target(values[0], values[1], ...).
///
/// All values must live in one common universe, which becomes the universe
/// of the result. Every value must have zero constant term; otherwise the
/// unknown tail of the target would contribute to every degree.
template <class R>
Series<R> compose(const Series<R>& target, const std::vector<Series<R>>& values) {
  if (values.size() != target.arity())
    throw std::invalid_argument("compose needs one value per target variable");
  for (const auto& v : values) values.front().require_same_universe(v);

  int min_val = std::numeric_limits<int>::max();
  int cap = target.order();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!cobord::is_zero(values[i].constant_term()))
      throw std::domain_error("substituted value for " + target.variables()[i] +
                              " has a nonzero constant term");
    min_val = std::min(min_val, std::max(values[i].valuation(), 1));
    cap = std::max(cap, values[i].order());
  }
  // Unknown target terms have degree > order(target), hence land in degree
  // >= (order + 1) * min_val after substitution.
  int ord = std::min(cap, (target.order() + 1) * min_val - 1);

  const Variables& universe = values.front().variables();
  std::vector<std::vector<Series<R>>> powers(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    int top = target.degree_in(i);
    powers[i].push_back(Series<R>::constant(universe, cap, R(1L)));
    for (int k = 1; k <= top; ++k) powers[i].push_back(powers[i].back() * values[i]);
  }

  std::vector<std::pair<Series<R>, const R*>> products;
  for (const auto& [e, c] : target.terms()) {
    std::optional<Series<R>> prod;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (e[i] == 0) continue;
      if (!prod)
        prod = powers[i][e[i]];
      else
        *prod *= powers[i][e[i]];
    }
    if (!prod) prod = powers[0][0];
    ord = std::min(ord, prod->order());
    products.emplace_back(std::move(*prod), &c);
  }

  Series<R> result(universe, ord);
  for (const auto& [prod, c] : products)
    for (const auto& [e, x] : prod.terms()) {
      if (e.degree() > ord) break;
      result.add_term(e, (*c) * x);
    }
  return result;
}

/// target with `var` replaced by `value`; value shares target's universe.
template <class R>
Series<R> substitute(const Series<R>& target, const std::string& var, const Series<R>& value) {
  target.require_same_universe(value);
  std::size_t idx = target.index_of(var);
  int ident_order = std::max(target.order(), value.order());
  std::vector<Series<R>> values;
  for (std::size_t i = 0; i < target.arity(); ++i)
    values.push_back(i == idx ? value
                              : Series<R>::variable(target.variables(), target.variables()[i], ident_order));
  return compose(target, values);
}

/// target with `var` set to zero (no loss of order).
template <class R>
Series<R> at_zero(const Series<R>& target, const std::string& var) {
  std::size_t idx = target.index_of(var);
  Series<R> r(target.variables(), target.order());
  for (const auto& [e, c] : target.terms())
    if (e[idx] == 0) r.add_term(e, c);
  return r;
}

template <class R>
Series<R> partial_derivative(const Series<R>& s, const std::string& var) {
  std::size_t idx = s.index_of(var);
  Series<R> r(s.variables(), std::max(s.order() - 1, 0));
  for (const auto& [e, c] : s.terms()) {
    if (e[idx] == 0) continue;
    Exponents d = e;
    d.e[idx] = std::uint8_t(d.e[idx] - 1);
    r.add_term(d, R(long(e[idx])) * c);
  }
  return r;
}

/// Exact quotient s / var; every term must contain var.
template <class R>
Series<R> divide_by_variable(const Series<R>& s, const std::string& var) {
  std::size_t idx = s.index_of(var);
  if (s.order() < 1) throw std::invalid_argument("cannot divide an order-0 series by a variable");
  Series<R> r(s.variables(), s.order() - 1);
  for (const auto& [e, c] : s.terms()) {
    if (e[idx] == 0)
      throw DivisionError("series not divisible by " + var, e.degree(), s.render_term(e, c));
    Exponents d = e;
    d.e[idx] = std::uint8_t(d.e[idx] - 1);
    r.add_term(d, c);
  }
  return r;
}

/// Exact quotient s / (a - b).
///
/// Each term c*a^k*b^m*rest contributes c*b^m*rest*h_{k-1}(a, b) with h the
/// complete homogeneous polynomial, since a^k - b^k = (a - b) h_{k-1}(a, b).
/// What is left over is s restricted to the diagonal a = b, which must vanish.
template <class R>
Series<R> divided_difference(const Series<R>& s, const std::string& var_a, const std::string& var_b) {
  std::size_t ia = s.index_of(var_a), ib = s.index_of(var_b);
  if (ia == ib) throw std::invalid_argument("divided difference needs two distinct variables");
  if (s.order() < 1) throw std::invalid_argument("cannot divide an order-0 series");
  Series<R> quotient(s.variables(), s.order() - 1);
  Series<R> remainder(s.variables(), s.order());
  for (const auto& [e, c] : s.terms()) {
    int k = e[ia];
    Exponents rest = e;
    rest.e[ia] = 0;
    Exponents diag = rest;
    diag.e[ib] = std::uint8_t(diag.e[ib] + k);
    remainder.add_term(diag, c);
    for (int i = 0; i < k; ++i) {
      Exponents q = rest;
      q.e[ia] = std::uint8_t(i);
      q.e[ib] = std::uint8_t(q.e[ib] + (k - 1 - i));
      quotient.add_term(q, c);
    }
  }
  if (!remainder.is_zero()) {
    const auto& [e, c] = *remainder.terms().begin();
    throw DivisionError("nonzero remainder dividing by (" + var_a + " - " + var_b + ")", e.degree(),
                        remainder.render_term(e, c));
  }
#ifdef COBORD_CHECK_POSTCONDITIONS
  Series<R> divisor = Series<R>::variable(s.variables(), var_a, s.order()) -
                      Series<R>::variable(s.variables(), var_b, s.order());
  if (!agree(quotient * divisor, s)) throw std::logic_error("divided_difference postcondition violated");
#endif
  return quotient;
}

/// 1/s for a series whose constant term is a unit.
template <class R>
Series<R> reciprocal(const Series<R>& s) {
  auto inv0 = unit_inverse(s.constant_term());
  if (!inv0) throw std::domain_error("constant term is not a unit; series is not invertible");
  Series<R> one = Series<R>::constant(s.variables(), s.order(), R(1L));
  // 1/s = inv0 * sum_k y^k with y = 1 - inv0*s of positive valuation.
  Series<R> y = one - (*inv0) * s;
  Series<R> sum = one;
  Series<R> term = one;
  for (int k = 1; k <= s.order(); ++k) {
    term *= y;
    if (term.is_zero()) break;
    sum += term;
  }
  return (*inv0) * sum;
}

/// Compositional inverse of a one-variable series with s(0) = 0 and unit
/// linear coefficient, by Newton iteration t <- t - (s(t) - x) / s'(t), which
/// doubles the number of correct coefficients per step.
template <class R>
Series<R> reversion(const Series<R>& s) {
  if (s.arity() != 1) throw std::invalid_argument("reversion needs a one-variable series");
  if (!cobord::is_zero(s.constant_term())) throw std::domain_error("reversion needs s(0) = 0");
  if (s.order() < 1) throw std::invalid_argument("reversion needs order >= 1");
  const auto& var = s.variables().front();
  R linear = s.coefficient(Exponents{1});
  auto inv = unit_inverse(linear);
  if (!inv) throw std::domain_error("linear coefficient of reversion input is not a unit");

  int target = s.order();
  Series<R> t = Series<R>::monomial(s.variables(), Exponents{1}, *inv, 1);
  int precision = 1;
  while (precision < target) {
    precision = std::min(2 * precision, target);
    Series<R> sp = s.truncate(precision);
    Series<R> tp = t.with_order(precision);
    Series<R> x = Series<R>::variable(s.variables(), var, precision);
    Series<R> residual = compose(sp, {tp}) - x;
    Series<R> slope = compose(partial_derivative(sp, var), {tp});
    t = (tp - residual * reciprocal(slope)).truncate(precision);
  }
  return t;
}

}  // namespace cobord
