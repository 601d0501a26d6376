#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coeff_poly.hpp"
#include "report.hpp"
#include "series.hpp"

namespace cobord {

inline const Variables kU{"u"};
inline const Variables kUV{"u", "v"};
inline const Variables kUVW{"u", "v", "w"};

enum class LawKind { Miscenko, Additive, Multiplicative, Custom };

/// Logarithm g(u) = sum_{n>=0} cpn u^(n+1) / (n+1), cp0 = 1, truncated at `order`.
inline TruncatedSeries miscenko_log(int order) {
  if (order < 1) throw std::invalid_argument("miscenko_log needs order >= 1");
  TruncatedSeries g(kU, order);
  for (int n = 0; n + 1 <= order; ++n)
    g.add_term(Exponents{n + 1}, CoeffPoly::generator(n) / Rational(n + 1));
  return g;
}

/// log(1 + beta*u) / beta, i.e. u - beta u^2/2 + beta^2 u^3/3 - ...
inline TruncatedSeries multiplicative_log(const Rational& beta, int order) {
  TruncatedSeries g(kU, order);
  Rational coeff(1);
  for (int n = 1; n <= order; ++n) {
    g.add_term(Exponents{n}, CoeffPoly(Rational(coeff / n)));
    coeff *= -beta;
  }
  return g;
}

/// One-variable view {u^k} of a series in (u, v) supported on a single variable.
inline TruncatedSeries restrict_to_variable(const TruncatedSeries& s, std::size_t var, const std::string& name) {
  TruncatedSeries r(Variables{name}, s.order());
  for (const auto& [e, c] : s.terms()) {
    if (e.degree() != e[var]) throw std::invalid_argument("series depends on more than one variable");
    r.add_term(Exponents{e[var]}, c);
  }
  return r;
}

/// A one-dimensional commutative formal group law f(u, v) over the
/// graded coefficient ring, with its logarithm and derived series.
///
/// Immutable after construction; every cached series is computed once here.
class FormalGroupLaw {
 public:
  /// f = g^-1(g(u) + g(v)).
  static FormalGroupLaw from_log(const TruncatedSeries& g, int order, LawKind kind = LawKind::Custom,
                                 std::string name = "custom", Rational beta = 0) {
    if (g.arity() != 1) throw std::invalid_argument("logarithm must be a one-variable series");
    TruncatedSeries log = rename(g, kU).truncate(order);
    TruncatedSeries inv = reversion(log);
    TruncatedSeries sum = embed(log, kUV) + embed(rename(log, Variables{"v"}), kUV);
    return FormalGroupLaw(compose(inv, {sum}), log, kind, std::move(name), std::move(beta));
  }

  /// A law given directly by its series together with the logarithm it is
  /// claimed to have.
  static FormalGroupLaw from_series(const TruncatedSeries& f, const TruncatedSeries& g, LawKind kind,
                                    std::string name, Rational beta = 0) {
    if (f.variables() != kUV) throw std::invalid_argument("group law must be a series in (u, v)");
    return FormalGroupLaw(f, rename(g, kU), kind, std::move(name), std::move(beta));
  }

  static FormalGroupLaw miscenko(int order) {
    return from_log(miscenko_log(order), order, LawKind::Miscenko, "miscenko");
  }

  static FormalGroupLaw additive(int order) {
    TruncatedSeries f = TruncatedSeries::variable(kUV, "u", order) + TruncatedSeries::variable(kUV, "v", order);
    return FormalGroupLaw(f, TruncatedSeries::variable(kU, "u", order), LawKind::Additive, "additive", 0);
  }

  /// Closed form f = u + v + beta*u*v.
  static FormalGroupLaw multiplicative(const Rational& beta, int order) {
    TruncatedSeries f = TruncatedSeries::variable(kUV, "u", order) + TruncatedSeries::variable(kUV, "v", order);
    f.add_term(Exponents{1, 1}, CoeffPoly(beta));
    return FormalGroupLaw(f, multiplicative_log(beta, order), LawKind::Multiplicative,
                          "mult:" + to_string(beta), beta);
  }

  /// Same logarithm, but alpha_ij shifted by delta. Used to show that the
  /// identity checks are not vacuous.
  FormalGroupLaw with_perturbed_coefficient(int i, int j, const CoeffPoly& delta) const {
    if (i < 1 || j < 1 || i + j > order()) throw std::out_of_range("perturbed coefficient index out of range");
    TruncatedSeries f = f_;
    f.add_term(Exponents{i, j}, delta);
    return FormalGroupLaw(f, log_, LawKind::Custom,
                          name_ + "+perturbed(" + std::to_string(i) + "," + std::to_string(j) + ")", beta_);
  }

  LawKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Rational& beta() const { return beta_; }
  int order() const { return f_.order(); }

  /// g(u).
  const TruncatedSeries& log() const { return log_; }
  /// g'(u) = 1 + sum cpn u^n for the universal law.
  const TruncatedSeries& cp_series() const { return cp_; }
  /// f(u, v).
  const TruncatedSeries& law() const { return f_; }
  /// ubar(u) with f(u, ubar) = 0.
  const TruncatedSeries& inverse() const { return inverse_; }
  /// phi(u) = ubar / u.
  const TruncatedSeries& phi() const { return phi_; }
  /// [u]_2 = f(u, u).
  const TruncatedSeries& two_series() const { return two_series_; }
  /// a(u) = [u]_2 / u.
  const TruncatedSeries& a_series() const { return a_; }

  CoeffPoly alpha(int i, int j) const { return f_.coefficient(Exponents{i, j}); }

  /// f(x, y) for x, y in a common universe.
  TruncatedSeries apply(const TruncatedSeries& x, const TruncatedSeries& y) const { return compose(f_, {x, y}); }

 private:
  FormalGroupLaw(TruncatedSeries f, TruncatedSeries log, LawKind kind, std::string name, Rational beta)
      : kind_(kind), name_(std::move(name)), beta_(std::move(beta)), f_(std::move(f)), log_(std::move(log)) {
    if (!is_zero(f_.constant_term())) throw std::invalid_argument("group law must vanish at the origin");
    cp_ = partial_derivative(log_, "u");
    inverse_ = solve_inverse(f_);
    phi_ = divide_by_variable(inverse_, "u");
    TruncatedSeries u = TruncatedSeries::variable(kU, "u", order());
    two_series_ = compose(f_, {u, u});
    a_ = divide_by_variable(two_series_, "u");
  }

  // Degree by degree: the u^n coefficient of f(u, ubar) moves one-for-one
  // with the u^n coefficient of ubar because f = u + v + (higher).
  static TruncatedSeries solve_inverse(const TruncatedSeries& f) {
    int n_max = f.order();
    TruncatedSeries ubar = TruncatedSeries::monomial(kU, Exponents{1}, CoeffPoly(-1L), 1);
    for (int n = 2; n <= n_max; ++n) {
      TruncatedSeries guess = ubar.with_order(n);
      TruncatedSeries u = TruncatedSeries::variable(kU, "u", n);
      TruncatedSeries value = compose(f.truncate(n), {u, guess});
      guess.add_term(Exponents{n}, -value.coefficient(Exponents{n}));
      ubar = guess;
    }
    return ubar.with_order(n_max);
  }

  LawKind kind_;
  std::string name_;
  Rational beta_;
  TruncatedSeries f_, log_, cp_, inverse_, phi_, two_series_, a_;
};

struct InverseSeries {
  TruncatedSeries ubar;
  TruncatedSeries phi;
};

inline InverseSeries formal_inverse(const FormalGroupLaw& law) { return {law.inverse(), law.phi()}; }

/// [u]_n by iterated substitution [u]_{k+1} = f(u, [u]_k).
inline TruncatedSeries n_series(const FormalGroupLaw& law, int n) {
  if (n < 1) throw std::invalid_argument("n-series needs n >= 1");
  TruncatedSeries u = TruncatedSeries::variable(kU, "u", law.order());
  TruncatedSeries acc = u;
  for (int k = 1; k < n; ++k) acc = law.apply(u, acc);
  return acc;
}

/// [u]_n = g^-1(n g(u)); agrees with n_series over the rationals.
inline TruncatedSeries n_series_via_log(const FormalGroupLaw& law, int n) {
  if (n < 1) throw std::invalid_argument("n-series needs n >= 1");
  TruncatedSeries inv = reversion(law.log());
  return compose(inv, {CoeffPoly(long(n)) * law.log()});
}

struct AlphaSeries {
  TruncatedSeries alpha;  // 1 + sum alpha_{i1} u^i
  TruncatedSeries even;   // alpha_0 with alpha(u) = alpha_0(u^2) + u alpha_1(u^2)
  TruncatedSeries odd;    // alpha_1
};

inline AlphaSeries alpha_series(const FormalGroupLaw& law) {
  // d f / d u at u = 0 is a series in v only; read it in the variable u.
  TruncatedSeries du = at_zero(partial_derivative(law.law(), "u"), "u");
  TruncatedSeries alpha = restrict_to_variable(du, 1, "u");
  int n = alpha.order();
  TruncatedSeries even(kU, n / 2), odd(kU, n >= 1 ? (n - 1) / 2 : 0);
  for (const auto& [e, c] : alpha.terms()) {
    int k = e[0];
    if (k % 2 == 0)
      even.add_term(Exponents{k / 2}, c);
    else
      odd.add_term(Exponents{(k - 1) / 2}, c);
  }
  return {alpha, even, odd};
}

/// Degree of the first term whose coefficient is not homogeneous of weight
/// degree - target_weight, if any. For the universal law alpha_ij has weight
/// i + j - 1, so f has target weight 1.
inline std::optional<int> grading_defect(const TruncatedSeries& s, int target_weight) {
  for (const auto& [e, c] : s.terms())
    if (!c.is_homogeneous(e.degree() - target_weight)) return e.degree();
  return std::nullopt;
}

/// Unitality, commutativity, associativity and the inverse, each at the
/// working order.
inline std::vector<IdentityReport> verify_axioms(const FormalGroupLaw& law) {
  const int n = law.order();
  const auto& f = law.law();
  std::vector<IdentityReport> out;

  TruncatedSeries u2 = TruncatedSeries::variable(kUV, "u", n);
  TruncatedSeries v2 = TruncatedSeries::variable(kUV, "v", n);
  IdentityReport left = compare_series("unitality", law.name(), n, at_zero(f, "v"), u2);
  IdentityReport right = compare_series("unitality", law.name(), n, at_zero(f, "u"), v2);
  out.push_back(left.passed ? right : left);

  TruncatedSeries swapped = embed(rename(f, Variables{"v", "u"}), kUV);
  out.push_back(compare_series("commutativity", law.name(), n, f, swapped));

  TruncatedSeries u3 = TruncatedSeries::variable(kUVW, "u", n);
  TruncatedSeries w3 = TruncatedSeries::variable(kUVW, "w", n);
  TruncatedSeries fuv = embed(f, kUVW);
  TruncatedSeries fvw = embed(rename(f, Variables{"v", "w"}), kUVW);
  out.push_back(compare_series("associativity", law.name(), n, compose(f, {fuv, w3}), compose(f, {u3, fvw})));

  TruncatedSeries u1 = TruncatedSeries::variable(kU, "u", n);
  out.push_back(compare_series("inverse", law.name(), n, compose(f, {u1, law.inverse()}), TruncatedSeries(kU, n)));
  return out;
}

}  // namespace cobord
