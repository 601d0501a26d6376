#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fgl.hpp"
#include "quotient.hpp"
#include "report.hpp"
#include "series.hpp"

namespace cobord {

namespace detail {

inline TruncatedSeries var(const Variables& vars, const std::string& name, int order) {
  return TruncatedSeries::variable(vars, name, order);
}

/// A series in u read in the variable `name` of `universe`.
inline TruncatedSeries lift(const TruncatedSeries& one_var, const std::string& name, const Variables& universe) {
  return embed(rename(one_var, Variables{name}), universe);
}

/// ubar(u) as an element of Omega[[u, v]].
inline TruncatedSeries ubar_uv(const FormalGroupLaw& law) { return lift(law.inverse(), "u", kUV); }

}  // namespace detail

/// Phi(u, v) = 1 + sum alpha_ij u^i (v^j - ubar^j) / (v - ubar), built from
/// the explicit sum with h_{j-1}(v, ubar) = (v^j - ubar^j) / (v - ubar).
inline TruncatedSeries phi_series(const FormalGroupLaw& law) {
  const int n = law.order();
  TruncatedSeries v = detail::var(kUV, "v", n);
  TruncatedSeries ubar = detail::ubar_uv(law);
  TruncatedSeries result = TruncatedSeries::constant(kUV, n - 1, CoeffPoly(1L));
  // h_0 = 1, h_j = v^j + ubar * h_{j-1}
  TruncatedSeries h = TruncatedSeries::constant(kUV, n, CoeffPoly(1L));
  TruncatedSeries v_pow = h;
  for (int j = 1; j <= n - 1; ++j) {
    // A_j(u) = sum_i alpha_ij u^i, known through u^(n-j).
    TruncatedSeries col(kUV, n - j);
    for (int i = 1; i + j <= n; ++i) col.add_term(Exponents{i, 0}, law.alpha(i, j));
    result += col * h;
    v_pow *= v;
    h = v_pow + ubar * h;
  }
#ifdef COBORD_CHECK_POSTCONDITIONS
  if (!agree((v - ubar) * result, law.law() - law.apply(detail::var(kUV, "u", n), ubar)))
    throw std::logic_error("phi_series factorization postcondition violated");
#endif
  return result;
}

struct DeltaD {
  TruncatedSeries delta;  // (a(u) - a(v)) / (u - v)
  TruncatedSeries d;      // (v a(u) - u a(v)) / (u - v)
};

inline DeltaD delta_d_series(const FormalGroupLaw& law) {
  const int n = law.order();
  TruncatedSeries au = detail::lift(law.a_series(), "u", kUV);
  TruncatedSeries av = detail::lift(law.a_series(), "v", kUV);
  TruncatedSeries u = detail::var(kUV, "u", n), v = detail::var(kUV, "v", n);
  return {divided_difference(au - av, "u", "v"), divided_difference(v * au - u * av, "u", "v")};
}

/// b(u, v) = u + v + sum beta_kl u^k v^l together with its coefficient table.
struct AdditionSeries {
  TruncatedSeries b;
  std::map<std::pair<int, int>, CoeffPoly> beta;
  std::string law;
};

inline std::map<std::pair<int, int>, CoeffPoly> mixed_coefficients(const TruncatedSeries& s) {
  std::map<std::pair<int, int>, CoeffPoly> table;
  for (const auto& [e, c] : s.terms())
    if (e[0] >= 1 && e[1] >= 1) table.emplace(std::pair{e[0], e[1]}, c);
  return table;
}

/// b = u + v - uv [alpha_0(uv) delta(u, v) + alpha_1(uv) d(u, v)].
inline AdditionSeries b_series(const FormalGroupLaw& law) {
  const int n = law.order();
  TruncatedSeries u = detail::var(kUV, "u", n), v = detail::var(kUV, "v", n);
  TruncatedSeries uv = u * v;
  AlphaSeries alpha = alpha_series(law);
  DeltaD dd = delta_d_series(law);
  TruncatedSeries bracket = compose(alpha.even, {uv}) * dd.delta + compose(alpha.odd, {uv}) * dd.d;
  TruncatedSeries b = u + v - uv * bracket;
  return {b, mixed_coefficients(b), law.name()};
}

/// Landweber-Novikov operation on the first Chern class of a line bundle:
/// s_k(x) = x^(k+1).
inline TruncatedSeries landweber_novikov_line(int k, const std::string& name, const Variables& universe,
                                              int order) {
  Exponents e;
  e.e[std::find(universe.begin(), universe.end(), name) - universe.begin()] = std::uint8_t(k + 1);
  return TruncatedSeries::monomial(universe, e, CoeffPoly(1L), order);
}

/// u + v + sum beta_kl s_{k-1}(u) s_{l-1}(v) for line bundles.
inline TruncatedSeries line_bundle_addition(const std::map<std::pair<int, int>, CoeffPoly>& beta, int order) {
  TruncatedSeries r = detail::var(kUV, "u", order) + detail::var(kUV, "v", order);
  for (const auto& [kl, c] : beta) {
    auto [k, l] = kl;
    if (k + l > order) continue;
    r += c * (landweber_novikov_line(k - 1, "u", kUV, order) * landweber_novikov_line(l - 1, "v", kUV, order));
  }
  return r;
}

/// gamma(c) = -1 - sum alpha_ij c^(i+j-1) = 1 - a(c).
inline TruncatedSeries gamma_line(const FormalGroupLaw& law) {
  TruncatedSeries a = rename(law.a_series(), Variables{"c"});
  return TruncatedSeries::constant(Variables{"c"}, a.order(), CoeffPoly(1L)) - a;
}

/// u - v - sum alpha_ij f(u, v)^(i+j-1) v, summed term by term.
inline TruncatedSeries b_rewrite_series(const FormalGroupLaw& law) {
  const int n = law.order();
  const TruncatedSeries& f = law.law();
  TruncatedSeries u = detail::var(kUV, "u", n), v = detail::var(kUV, "v", n);
  TruncatedSeries sum(kUV, n - 1);
  TruncatedSeries f_pow = TruncatedSeries::constant(kUV, n, CoeffPoly(1L));
  for (int m = 1; m <= n - 1; ++m) {
    f_pow *= f;
    CoeffPoly grouped;
    for (int i = 1; i <= m; ++i) grouped += law.alpha(i, m + 1 - i);
    if (!grouped.is_zero()) sum += grouped * f_pow.truncate(std::min(f_pow.order(), n - 1));
  }
  return u - v - sum * v;
}

inline TruncatedSeries reduce_in_A(const TruncatedSeries& s, const QuotientRingA& ring) { return ring.reduce(s); }

enum class Identity {
  LogDerivative,
  AlphaCp,
  PhiFactorization,
  PhiDiagonal,
  TwoSeriesHom,
  PhiChain,
  PhiAIdentity,
  BRewriteExpansion,
  BInvariants,
  UEqualsUbar,
  DeltaDRelation,
  AfSymmetric,
  PhiAfV,
  AfPhiDf,
  UvDeltaAlpha,
  BRewriteInA,
  AssocB,
  GammaSquare,
  AssocBExact,
};

struct IdentityInfo {
  Identity id;
  const char* name;
  bool in_quotient;   // needs an integral specialization
  bool in_default;    // part of the standard suite
};

inline const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> catalog{
      {Identity::LogDerivative, "log_derivative", false, true},
      {Identity::AlphaCp, "alpha_cp", false, true},
      {Identity::PhiFactorization, "phi_factorization", false, true},
      {Identity::PhiDiagonal, "phi_diagonal", false, true},
      {Identity::TwoSeriesHom, "two_series_hom", false, true},
      {Identity::PhiChain, "phi_chain", false, true},
      {Identity::PhiAIdentity, "phi_a_identity", false, true},
      {Identity::BRewriteExpansion, "b_rewrite_expansion", false, true},
      {Identity::BInvariants, "b_invariants", false, true},
      {Identity::UEqualsUbar, "u_equals_ubar", true, true},
      {Identity::DeltaDRelation, "delta_d_relation", true, true},
      {Identity::AfSymmetric, "af_v_equals_af_u", true, true},
      {Identity::PhiAfV, "phi_af_v", true, true},
      {Identity::AfPhiDf, "af_phi_equals_af_df", true, true},
      {Identity::UvDeltaAlpha, "uv_delta_alpha", true, true},
      {Identity::BRewriteInA, "b_rewrite_in_A", true, true},
      {Identity::AssocB, "assoc_b", true, true},
      {Identity::GammaSquare, "gamma_square", true, true},
      // Associativity of b before quotienting is not claimed; informational.
      {Identity::AssocBExact, "assoc_b_exact", false, false},
  };
  return catalog;
}

inline const IdentityInfo& identity_info(Identity id) {
  for (const auto& info : identity_catalog())
    if (info.id == id) return info;
  throw std::logic_error("identity missing from catalog");
}

inline std::optional<Identity> parse_identity(const std::string& name) {
  for (const auto& info : identity_catalog())
    if (name == info.name) return info.id;
  return std::nullopt;
}

namespace detail {

/// lhs == rhs in the quotient of the common order.
inline IdentityReport compare_in_A(const std::string& identity, const FormalGroupLaw& law, const TruncatedSeries& lhs,
                                   const TruncatedSeries& rhs) {
  int m = std::min(lhs.order(), rhs.order());
  QuotientRingA ring(law, lhs.variables(), m);
  TruncatedSeries residue = ring.reduce(lhs.truncate(m) - rhs.truncate(m));
  IdentityReport rep{identity, law.name(), law.order(), true, std::nullopt, std::nullopt};
  if (!residue.is_zero()) {
    const auto& [e, c] = *residue.terms().begin();
    rep.passed = false;
    rep.first_failing_degree = e.degree();
    rep.witness_term = residue.render_term(e, c);
  }
  return rep;
}

inline IdentityReport first_failure(std::vector<IdentityReport> parts) {
  for (auto& p : parts)
    if (!p.passed) return p;
  return parts.front();
}

inline TruncatedSeries b_associator_side(const TruncatedSeries& b, bool left) {
  int n = b.order();
  if (left) return compose(b, {embed(b, kUVW), var(kUVW, "w", n)});
  return compose(b, {var(kUVW, "u", n), embed(rename(b, Variables{"v", "w"}), kUVW)});
}

/// u = ubar in Omega[[u]] / ([u]_2).
inline IdentityReport u_equals_ubar(const FormalGroupLaw& law, const std::string& name) {
  TruncatedSeries u = TruncatedSeries::variable(kU, "u", law.order());
  return compare_in_A(name, law, u, law.inverse());
}

}  // namespace detail

/// Runs one identity at the law's working order.
///
/// Quotient identities throw UnsupportedSpecialization for laws whose
/// 2-series is not integral.
inline IdentityReport verify_identity(const FormalGroupLaw& law, Identity id) {
  using detail::lift;
  using detail::var;
  const int n = law.order();
  const std::string name = identity_info(id).name;
  const std::string& ln = law.name();
  const TruncatedSeries& f = law.law();
  TruncatedSeries u = var(kUV, "u", n), v = var(kUV, "v", n);
  auto exact = [&](const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
    return compare_series(name, ln, n, lhs, rhs);
  };
  auto in_a = [&](const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
    return detail::compare_in_A(name, law, lhs, rhs);
  };
  auto a_of_f = [&] { return compose(law.a_series(), {f}); };
  auto ubar = [&] { return detail::ubar_uv(law); };

  switch (id) {
    case Identity::LogDerivative: {
      // df/dv * CP(f(u, v)) = CP(v)
      TruncatedSeries lhs = partial_derivative(f, "v") * compose(law.cp_series(), {f});
      return exact(lhs, lift(law.cp_series(), "v", kUV));
    }
    case Identity::AlphaCp: {
      AlphaSeries alpha = alpha_series(law);
      return compare_series(name, ln, n, alpha.alpha * law.cp_series(),
                            TruncatedSeries::constant(kU, n, CoeffPoly(1L)));
    }
    case Identity::PhiFactorization: {
      TruncatedSeries lhs = (v - ubar()) * phi_series(law);
      return exact(lhs, f - law.apply(u, ubar()));
    }
    case Identity::PhiDiagonal: {
      TruncatedSeries u1 = TruncatedSeries::variable(kU, "u", n);
      TruncatedSeries phi_uu = compose(phi_series(law), {u1, u1});
      return compare_series(name, ln, n, (u1 - law.inverse()) * phi_uu, law.two_series());
    }
    case Identity::TwoSeriesHom: {
      TruncatedSeries two_u = lift(law.two_series(), "u", kUV), two_v = lift(law.two_series(), "v", kUV);
      TruncatedSeries lhs = law.apply(two_u, two_v);
      TruncatedSeries two_f = compose(law.two_series(), {f});
      return detail::first_failure({exact(lhs, two_f), exact(two_f, f * a_of_f())});
    }
    case Identity::PhiChain: {
      // ([v]_2 - [ubar]_2) Phi([u]_2, [v]_2) = (v - ubar) Phi(u, v) a(f(u, v))
      TruncatedSeries two_u = lift(law.two_series(), "u", kUV), two_v = lift(law.two_series(), "v", kUV);
      TruncatedSeries two_ubar = compose(law.two_series(), {ubar()});
      TruncatedSeries phi = phi_series(law);
      TruncatedSeries lhs = (two_v - two_ubar) * compose(phi, {two_u, two_v});
      return exact(lhs, (v - ubar()) * phi * a_of_f());
    }
    case Identity::PhiAIdentity: {
      // Phi a(f) v = ([v]_2 + ubar v (a(v) - a(ubar)) / (v - ubar)) Phi([u]_2, [v]_2)
      TruncatedSeries two_u = lift(law.two_series(), "u", kUV), two_v = lift(law.two_series(), "v", kUV);
      TruncatedSeries phi = phi_series(law);
      TruncatedSeries delta_v_ubar = compose(delta_d_series(law).delta, {v, ubar()});
      TruncatedSeries rhs = (two_v + ubar() * v * delta_v_ubar) * compose(phi, {two_u, two_v});
      return exact(phi * a_of_f() * v, rhs);
    }
    case Identity::BRewriteExpansion:
      return exact(b_rewrite_series(law), u + v - a_of_f() * v);
    case Identity::BInvariants: {
      AdditionSeries add = b_series(law);
      TruncatedSeries swapped = embed(rename(add.b, Variables{"v", "u"}), kUV);
      std::vector<IdentityReport> parts{exact(add.b, swapped), exact(at_zero(add.b, "v"), u),
                                        exact(add.b, line_bundle_addition(add.beta, add.b.order()))};
      return detail::first_failure(std::move(parts));
    }
    case Identity::UEqualsUbar:
      return detail::u_equals_ubar(law, name);
    case Identity::DeltaDRelation: {
      DeltaD dd = delta_d_series(law);
      TruncatedSeries uvd = u * v * dd.delta;
      return detail::first_failure({in_a(uvd * v, u * v * dd.d), in_a(uvd * v * v, uvd * u * v)});
    }
    case Identity::AfSymmetric: {
      TruncatedSeries af = a_of_f();
      return in_a(af * v, af * u);
    }
    case Identity::PhiAfV:
      return in_a(phi_series(law) * a_of_f() * v, u * v * delta_d_series(law).delta);
    case Identity::AfPhiDf: {
      TruncatedSeries af = a_of_f();
      return in_a(af * phi_series(law), af * partial_derivative(f, "v"));
    }
    case Identity::UvDeltaAlpha: {
      TruncatedSeries alpha_v = lift(alpha_series(law).alpha, "v", kUV);
      return in_a(u * v * delta_d_series(law).delta * alpha_v, a_of_f() * v);
    }
    case Identity::BRewriteInA:
      return in_a(b_rewrite_series(law), b_series(law).b);
    case Identity::AssocB: {
      TruncatedSeries b = b_series(law).b;
      return in_a(detail::b_associator_side(b, true), detail::b_associator_side(b, false));
    }
    case Identity::GammaSquare: {
      TruncatedSeries g = gamma_line(law);
      return in_a(g * g, TruncatedSeries::constant(Variables{"c"}, g.order(), CoeffPoly(1L)));
    }
    case Identity::AssocBExact: {
      TruncatedSeries b = b_series(law).b;
      return exact(detail::b_associator_side(b, true), detail::b_associator_side(b, false));
    }
  }
  throw std::logic_error("unhandled identity");
}

/// Runs the identities concurrently; reports come back in request order.
inline std::vector<IdentityReport> verify_identity_suite(const FormalGroupLaw& law, const std::vector<Identity>& ids) {
  std::vector<std::future<IdentityReport>> jobs;
  jobs.reserve(ids.size());
  for (Identity id : ids) jobs.push_back(std::async(std::launch::async, [&law, id] { return verify_identity(law, id); }));
  std::vector<IdentityReport> out;
  out.reserve(ids.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

/// Default suite for a law: exact identities always, quotient identities
/// only when the 2-series is integral.
inline std::vector<Identity> default_identities(const FormalGroupLaw& law) {
  bool integral = true;
  for (const auto& [e, c] : law.two_series().terms())
    integral = integral && c.is_constant() && is_integral(c.constant_term());
  std::vector<Identity> ids;
  for (const auto& info : identity_catalog())
    if (info.in_default && (integral || !info.in_quotient)) ids.push_back(info.id);
  return ids;
}

// ---------------------------------------------------------------------------
// Whitney-type sign formula modulo 2-torsion.

struct SignedDecomposition {
  int k1;
  int k2;
  int sign;
  friend bool operator==(const SignedDecomposition&, const SignedDecomposition&) = default;
};

inline int sign_power(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

/// All k1 + k2 = k with 0 <= k1 <= n1, 0 <= k2 <= n2, k1 descending, each
/// with sign (-1)^((n1 - k1) k2).
inline std::vector<SignedDecomposition> whitney_sign_formula(int n1, int n2, int k) {
  if (n1 < 0 || n2 < 0) throw std::out_of_range("bundle dimensions must be nonnegative");
  if (k < 0 || k > n1 + n2) throw std::out_of_range("grade k outside [0, n1 + n2]");
  std::vector<SignedDecomposition> out;
  for (int k1 = std::min(k, n1); k1 >= 0; --k1) {
    int k2 = k - k1;
    if (k2 > n2) break;
    out.push_back({k1, k2, sign_power(long(n1 - k1) * k2)});
  }
  return out;
}

/// The formula as a linear combination of classes of the non-trivial
/// summand, after substituting the classes of a trivial line bundle
/// (p_0 = 1, p_{j/2} = 0 for j >= 1). Keys are the grade of the remaining
/// class, values its integer coefficient.
inline std::map<int, int> trivial_line_collapse(int n, int k, bool trivial_first) {
  std::map<int, int> combo;
  int n1 = trivial_first ? 1 : n;
  int n2 = trivial_first ? n : 1;
  for (const auto& t : whitney_sign_formula(n1, n2, k)) {
    int trivial_grade = trivial_first ? t.k1 : t.k2;
    int other_grade = trivial_first ? t.k2 : t.k1;
    if (trivial_grade != 0) continue;  // p_{j/2}(1) = 0
    combo[other_grade] += t.sign;
  }
  std::erase_if(combo, [](const auto& kv) { return kv.second == 0; });
  return combo;
}

struct ParityCheck {
  int k;
  int sign_stable;   // coefficient from stability: p(1 + xi) = p(xi)
  int sign_formula;  // coefficient from the sign formula for 1 + xi
  bool forces_two_torsion() const { return sign_stable != sign_formula; }
};

/// For n = dim xi, compares the stability statement with the 1 + xi instance
/// of the sign formula. They disagree exactly when p_{k/2}(xi) = -p_{k/2}(xi)
/// modulo 2-torsion, which forces the class to be 2-primary.
inline ParityCheck parity_obstruction(int n, int k) {
  auto combo = trivial_line_collapse(n, k, true);
  int coeff = combo.count(k) ? combo.at(k) : 0;
  return {k, 1, coeff};
}

}  // namespace cobord
