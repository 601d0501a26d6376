// Acceptance suite: one PASS/FAIL line per criterion. All algebraic checks
// are exact (tolerance 0); the only tolerances are the runtime budgets.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <cobord/cobord.hpp>

using namespace cobord;
using S = TruncatedSeries;

namespace {

constexpr double kAxiomBudgetSeconds = 10.0;
constexpr double kRecursionBudgetSeconds = 5.0;
constexpr int kRandomElements = 100;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

S var(const Variables& vs, const std::string& n, int order) { return S::variable(vs, n, order); }
S one(const Variables& vs, int order) { return S::constant(vs, order, CoeffPoly(1L)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string failure_text(const IdentityReport& r) {
  std::ostringstream s;
  s << r.identity << " on " << r.law << " failed at degree " << r.first_failing_degree.value_or(-1) << " ("
    << r.witness_term.value_or("?") << ")";
  return s.str();
}

void require_report(Outcome& o, const IdentityReport& r) { o.require(r.passed, failure_text(r)); }

Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  auto law = FormalGroupLaw::miscenko(10);
  auto reports = verify_axioms(law);
  double dt = seconds_since(t0);
  Outcome o;
  for (const auto& r : reports) require_report(o, r);
  o.require(reports.size() == 4, "expected four axiom reports");
  o.require(dt < kAxiomBudgetSeconds, "runtime " + std::to_string(dt) + " s over budget");
  if (o.passed) o.detail = "miscenko order 10, 4/4 axioms exact, " + std::to_string(dt) + " s < 10 s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (const auto& law : {FormalGroupLaw::miscenko(10), FormalGroupLaw::additive(10),
                          FormalGroupLaw::multiplicative(1, 10), FormalGroupLaw::multiplicative(-2, 10)})
    require_report(o, verify_identity(law, Identity::LogDerivative));
  // mult:1 by hand: df/dv = 1 + u, CP(x) = 1/(1 + x), so
  // (1 + u) / ((1 + u)(1 + v)) = 1 / (1 + v).
  S u = var(kUV, "u", 10), v = var(kUV, "v", 10);
  S lhs = (one(kUV, 10) + u) * reciprocal((one(kUV, 10) + u) * (one(kUV, 10) + v));
  auto mult = FormalGroupLaw::multiplicative(1, 10);
  o.require(agree(partial_derivative(mult.law(), "v"), (one(kUV, 10) + u).truncate(9)), "mult:1 df/dv != 1 + u");
  o.require(agree(lhs, reciprocal(one(kUV, 10) + v)), "mult:1 hand check");
  o.require(agree(embed(mult.cp_series(), kUV), reciprocal(one(kUV, 10) + u)), "mult:1 CP != 1/(1 + u)");
  if (o.passed) o.detail = "order 10 exact for miscenko, additive, mult:1, mult:-2; mult:1 hand check";
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (int order : {8, 9, 10}) {
    auto law = FormalGroupLaw::miscenko(order);
    for (Identity id : {Identity::PhiFactorization, Identity::PhiDiagonal, Identity::TwoSeriesHom, Identity::PhiChain})
      require_report(o, verify_identity(law, id));
  }
  if (o.passed) o.detail = "miscenko orders 8-10: phi factorization, diagonal, 2-series hom, chained phi/a exact";
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto law = FormalGroupLaw::multiplicative(1, 12);
  for (Identity id : {Identity::UEqualsUbar, Identity::DeltaDRelation, Identity::AfSymmetric,
                      Identity::BRewriteInA, Identity::AssocB})
    require_report(o, verify_identity(law, id));
  std::mt19937 rng(20261014);
  std::uniform_int_distribution<int> coin(0, 2), z(-9, 9);
  int checked = 0;
  for (const Variables& vars : {kU, kUV}) {
    QuotientRingA ring(law, vars, 12);
    for (int trial = 0; trial < kRandomElements; ++trial) {
      S x(vars, 12), s(vars, 12);
      for (int a = 0; a <= 12; ++a)
        for (int b = 0; b <= (vars.size() > 1 ? 12 - a : 0); ++b) {
          if (coin(rng) == 0) x.add_term(Exponents{a, b}, CoeffPoly(long(z(rng))));
          if (coin(rng) == 0) s.add_term(Exponents{a, b}, CoeffPoly(long(z(rng))));
        }
      S r = ring.reduce(s);
      o.require(ring.reduce(r) == r, "reduce is not idempotent");
      for (const auto& rel : ring.relations()) o.require(ring.is_zero(x * rel), "ideal member survived reduction");
      ++checked;
    }
  }
  if (o.passed)
    o.detail = "mult:1 order 12: 5 identities in A; " + std::to_string(checked) +
               " random elements idempotent and ideal killed";
  return o;
}

Outcome criterion5() {
  Outcome o;
  S u = var(kUV, "u", 12), v = var(kUV, "v", 12);
  S b_add = b_series(FormalGroupLaw::additive(12)).b;
  S b_mult = b_series(FormalGroupLaw::multiplicative(1, 12)).b;
  o.require(b_add.order() >= 12 && b_add.truncate(12) == u + v, "additive b = " + b_add.to_string());
  o.require(b_mult.order() >= 12 && b_mult.truncate(12) == u + v + u * v, "mult:1 b = " + b_mult.to_string());
  if (o.passed) o.detail = "additive b = u + v, mult:1 b = u + v + u*v, exact at order 12";
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto law = FormalGroupLaw::miscenko(8);
  auto add = b_series(law);
  for (const auto& [kl, c] : add.beta) {
    auto [k, l] = kl;
    auto mirror = add.beta.find({l, k});
    o.require(mirror != add.beta.end() && mirror->second == c, "beta not symmetric at " + std::to_string(k) + "," +
                                                                    std::to_string(l));
    o.require(c.is_homogeneous(k + l - 1), "beta weight wrong at " + std::to_string(k) + "," + std::to_string(l));
  }
  o.require(add.beta.count({1, 1}) && add.beta.at({1, 1}) == law.alpha(1, 1), "beta11 != alpha11");
  o.require(add.b == line_bundle_addition(add.beta, add.b.order()), "b differs from the line-bundle sum");
  if (o.passed)
    o.detail = "miscenko order 8: " + std::to_string(add.beta.size()) +
               " beta_kl symmetric, weight k+l-1, beta11 = alpha11 = " + law.alpha(1, 1).to_string() +
               ", line-bundle sum matches";
  return o;
}

Outcome criterion7() {
  Outcome o;
  int terms = 0;
  for (int n1 = 0; n1 <= 6; ++n1)
    for (int n2 = 0; n2 <= 6; ++n2)
      for (int k = 0; k <= n1 + n2; ++k)
        for (const auto& t : whitney_sign_formula(n1, n2, k)) {
          // Count the entries of the repelling (n1 - k1) x k2 block directly.
          int block = 0;
          for (int r = 0; r < n1 - t.k1; ++r)
            for (int c = 0; c < t.k2; ++c) ++block;
          o.require(t.sign == (block % 2 == 0 ? 1 : -1), "sign mismatch");
          ++terms;
        }
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      o.require(trivial_line_collapse(n, k, false) == std::map<int, int>{{k, 1}}, "stability collapse failed");
      if (n >= 1) o.require(parity_obstruction(n, k).forces_two_torsion() == (k % 2 == 1), "parity obstruction");
    }
  if (o.passed)
    o.detail = std::to_string(terms) + " signed terms for n1, n2 <= 6; xi+1 collapses; odd k forced 2-primary";
  return o;
}

Outcome criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  auto sweep = localization_sweep(10);
  for (const auto& r : sweep) {
    // Schubert cells as k-subsets of [n], an enumeration independent of the partition one.
    int n = r.n1 + r.n2;
    std::int64_t cells = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != r.k) continue;
      int dim = 0, j = 0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) dim += i - j++;
      cells += dim % 2 == 0 ? 1 : -1;
    }
    o.require(r.passed() && r.expected == cells,
              "recursion fails at (" + std::to_string(r.n1) + "," + std::to_string(r.n2) + "," +
                  std::to_string(r.k) + ")");
  }
  double dt = seconds_since(t0);
  o.require(dt < kRecursionBudgetSeconds, "runtime " + std::to_string(dt) + " s over budget");
  if (o.passed) o.detail = std::to_string(sweep.size()) + " triples with n1+n2 <= 10, " + std::to_string(dt) + " s < 5 s";
  return o;
}

Outcome criterion9() {
  Outcome o;
  IndexLedger m = IndexLedger::integer(-1) + IndexLedger::generator();
  o.require(m * m == IndexLedger::integer(1), "(-1 + u)^2 = " + (m * m).to_string());
  std::ifstream in(std::string(COBORD_DATA_DIR) + "/klein_bottle.txt");
  o.require(in.good(), "missing Klein bottle fixture");
  auto klein = klein_index_check(parse_simplicial_complex(in));
  o.require(klein.passed, klein.statement);
  auto rp2 = rp2_decomposition_check();
  o.require(rp2.passed, rp2.statement);
  require_report(o, verify_identity(FormalGroupLaw::multiplicative(1, 12), Identity::GammaSquare));
  if (o.passed) o.detail = "(-1+u)^2 = 1; " + klein.statement + "; RP2 sum = 1; gamma^2 = 1 mod [c]_2";
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto law = FormalGroupLaw::miscenko(10).with_perturbed_coefficient(1, 1, CoeffPoly(1L));
  auto axioms = verify_axioms(law);
  IdentityReport assoc = axioms[2];
  IdentityReport logd = verify_identity(law, Identity::LogDerivative);
  o.require(assoc.identity == "associativity" && !assoc.passed, "associativity still passes");
  o.require(!logd.passed, "log derivative identity still passes");
  if (o.passed)
    o.detail = "alpha11 + 1 breaks associativity at degree " + std::to_string(*assoc.first_failing_degree) +
               " and the log derivative at degree " + std::to_string(*logd.first_failing_degree);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"formal group law axioms", criterion1},
      {"log derivative identity", criterion2},
      {"exact identities before the quotient", criterion3},
      {"identities in the quotient ring", criterion4},
      {"closed-form addition series", criterion5},
      {"beta table", criterion6},
      {"sign and stability", criterion7},
      {"localization recursion", criterion8},
      {"index ledger", criterion9},
      {"mutation sensitivity", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - std::size_t(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
