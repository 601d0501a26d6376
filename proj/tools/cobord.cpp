// Command-line front end: coefficient tables, identity suites and
// localization checks, as JSON or plain text.

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <cobord/cobord.hpp>

using json = nlohmann::ordered_json;
using namespace cobord;

namespace {

#ifndef COBORD_DATA_DIR
#define COBORD_DATA_DIR "data"
#endif

constexpr int kMaxMiscenkoOrder = Monomial::kMaxGenerator + 1;
constexpr int kMaxOrder = 30;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string law = "miscenko";
  int order = 10;
  std::string format = "json";
  std::string out;
};

FormalGroupLaw make_law(const std::string& spec, int order) {
  if (order < 1) throw UsageError("--order must be at least 1");
  if (spec == "miscenko") {
    if (order > kMaxMiscenkoOrder)
      throw UsageError("--order for miscenko is limited to " + std::to_string(kMaxMiscenkoOrder));
    return FormalGroupLaw::miscenko(order);
  }
  if (order > kMaxOrder) throw UsageError("--order is limited to " + std::to_string(kMaxOrder));
  if (spec == "additive") return FormalGroupLaw::additive(order);
  static const std::regex mult(R"(mult:(-?[0-9]+)(/([0-9]+))?)");
  std::smatch m;
  if (std::regex_match(spec, m, mult)) {
    if (m[3].matched && m[3].str().find_first_not_of('0') == std::string::npos)
      throw UsageError("beta has zero denominator");
    Rational beta(m[3].matched ? m[1].str() + "/" + m[3].str() : m[1].str());
    beta.canonicalize();
    return FormalGroupLaw::multiplicative(beta, order);
  }
  throw UsageError("unknown law '" + spec + "' (expected miscenko, additive or mult:<beta>)");
}

json coefficient_table(const std::string& key, const FormalGroupLaw& law, const TruncatedSeries& s) {
  json rows = json::array();
  for (const auto& [e, c] : s.terms())
    if (e[0] >= 1 && e[1] >= 1) rows.push_back({{"i", e[0]}, {"j", e[1]}, {"value", c.to_string()}});
  return {{"law", law.name()}, {"order", law.order()}, {key, rows}};
}

json report_json(const IdentityReport& r) {
  return {{"identity", r.identity},
          {"law", r.law},
          {"order", r.order},
          {"status", r.passed ? "pass" : "fail"},
          {"first_failing_degree", r.first_failing_degree ? json(*r.first_failing_degree) : json(nullptr)},
          {"witness_term", r.witness_term ? json(*r.witness_term) : json(nullptr)}};
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

std::string row_text(const json& obj) {
  std::string line;
  for (const auto& [k, v] : obj.items()) {
    if (!line.empty()) line += "  ";
    line += k + "=" + (v.is_structured() ? v.dump() : scalar_text(v));
  }
  return line;
}

// Text rendering is a view of the JSON document: scalars become "key: value"
// lines, arrays of objects become one line per element.
std::string to_text(const json& doc) {
  std::ostringstream out;
  if (doc.is_array()) {
    for (const auto& row : doc) out << row_text(row) << "\n";
    return out.str();
  }
  for (const auto& [k, v] : doc.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << k << ":\n";
      for (const auto& row : v) out << "  " << row_text(row) << "\n";
    } else if (v.is_array() && v.empty()) {
      out << k << ": (none)\n";
    } else {
      out << k << ": " << (v.is_structured() ? v.dump() : scalar_text(v)) << "\n";
    }
  }
  return out.str();
}

void emit(const json& doc, const Options& opt) {
  std::string text = opt.format == "text" ? to_text(doc) : doc.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw UsageError("cannot open --out path " + opt.out);
  f << text;
}

SimplicialComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read complex from " + path);
  return parse_simplicial_complex(in);
}

/// Exit status for a verification result; the first failure goes to stderr.
int verdict(const std::optional<std::string>& first_failure) {
  if (!first_failure) return 0;
  std::cerr << "FAIL " << *first_failure << "\n";
  return 1;
}

int run_verify(const std::string& which, const Options& opt) {
  FormalGroupLaw law = make_law(opt.law, opt.order);
  std::vector<IdentityReport> reports;
  bool single = false;
  if (which == "axioms") {
    reports = verify_axioms(law);
  } else if (which == "all") {
    reports = verify_identity_suite(law, default_identities(law));
  } else {
    auto id = parse_identity(which);
    if (!id) throw UsageError("unknown identity '" + which + "'");
    try {
      reports.push_back(verify_identity(law, *id));
    } catch (const UnsupportedSpecialization& e) {
      throw UsageError(std::string(e.what()) + "; use additive or mult:<integer>");
    }
    single = true;
  }
  json doc = json::array();
  std::optional<std::string> first;
  for (const auto& r : reports) {
    doc.push_back(report_json(r));
    if (!first && !r.passed) first = report_json(r).dump();
  }
  emit(single ? doc.front() : doc, opt);
  return verdict(first);
}

int run_chi(const std::string& what, int n, int k, int max_total, const std::string& file, const Options& opt) {
  if (what == "grass") {
    if (n < 0 || k < 0 || k > n) throw UsageError("chi grass needs 0 <= k <= n");
    emit({{"check", "grass"}, {"n", n}, {"k", k}, {"chi", chi_grassmann(n, k)}}, opt);
    return 0;
  }
  if (what == "recursion") {
    if (max_total < 0) throw UsageError("--max must be nonnegative");
    json failures = json::array();
    auto sweep = localization_sweep(max_total);
    for (const auto& r : sweep)
      if (!r.passed())
        failures.push_back({{"n1", r.n1}, {"n2", r.n2}, {"k", r.k}, {"sum", r.sum}, {"chi", r.expected}});
    bool ok = failures.empty();
    std::optional<std::string> first;
    if (!ok) first = failures.front().dump();
    emit({{"check", "recursion"},
          {"max", max_total},
          {"cases", sweep.size()},
          {"status", ok ? "pass" : "fail"},
          {"failures", failures}},
         opt);
    return verdict(first);
  }
  if (what == "simplicial") {
    std::string path = file.empty() ? std::string(COBORD_DATA_DIR) + "/klein_bottle.txt" : file;
    SimplicialComplex c = load_complex(path);
    SimplicialComplex sd = c.barycentric_subdivision();
    bool ok = sd.euler_characteristic() == c.euler_characteristic();
    emit({{"check", "simplicial"},
          {"file", path},
          {"f_vector", c.f_vector()},
          {"chi", c.euler_characteristic()},
          {"subdivided_f_vector", sd.f_vector()},
          {"chi_subdivided", sd.euler_characteristic()},
          {"status", ok ? "pass" : "fail"}},
         opt);
    return verdict(ok ? std::nullopt : std::optional<std::string>("subdivision changed chi"));
  }
  throw UsageError("chi expects grass, recursion or simplicial");
}

int run_index(const std::string& what, const std::string& file, const Options& opt) {
  LedgerCheck check;
  if (what == "klein") {
    std::string path = file.empty() ? std::string(COBORD_DATA_DIR) + "/klein_bottle.txt" : file;
    check = klein_index_check(load_complex(path));
  } else if (what == "rp2") {
    check = rp2_decomposition_check();
  } else {
    throw UsageError("index expects klein or rp2");
  }
  emit({{"check", check.name}, {"statement", check.statement}, {"status", check.passed ? "pass" : "fail"}}, opt);
  return verdict(check.passed ? std::nullopt : std::optional<std::string>(check.statement));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal group law series and localization checks"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_law) {
    if (with_law) {
      sub->add_option("--law", opt.law, "miscenko | additive | mult:<beta>")->capture_default_str();
      sub->add_option("--order", opt.order, "truncation order")->capture_default_str();
    }
    sub->add_option("--format", opt.format, "json | text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    sub->add_option("--out", opt.out, "write output to this path");
  };

  auto* expand = app.add_subcommand("expand", "alpha_ij table of the group law");
  add_common(expand, true);
  auto* beta = app.add_subcommand("beta", "beta_kl table of the addition series b(u, v)");
  add_common(beta, true);

  std::string identity;
  auto* verify = app.add_subcommand("verify", "check an identity, 'axioms', or 'all'");
  verify->add_option("identity", identity, "identity name, axioms or all")->required();
  add_common(verify, true);

  std::string chi_kind;
  int n = 0, k = 0, max_total = 10;
  std::string file;
  auto* chi = app.add_subcommand("chi", "Euler characteristic checks");
  chi->add_option("kind", chi_kind, "grass | recursion | simplicial")
      ->required()
      ->check(CLI::IsMember({"grass", "recursion", "simplicial"}));
  chi->add_option("--n", n, "ambient dimension (grass)");
  chi->add_option("--k", k, "plane dimension (grass)");
  chi->add_option("--max", max_total, "largest n1 + n2 (recursion)")->capture_default_str();
  chi->add_option("--file", file, "simplicial complex file (simplicial)");
  add_common(chi, false);

  std::string index_kind;
  auto* index = app.add_subcommand("index", "index-ledger checks");
  index->add_option("kind", index_kind, "klein | rp2")->required()->check(CLI::IsMember({"klein", "rp2"}));
  index->add_option("--file", file, "Klein bottle triangulation (klein)");
  add_common(index, false);

  auto* list = app.add_subcommand("list", "names accepted by verify");
  add_common(list, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*expand) {
      FormalGroupLaw law = make_law(opt.law, opt.order);
      emit(coefficient_table("alpha", law, law.law()), opt);
      return 0;
    }
    if (*beta) {
      FormalGroupLaw law = make_law(opt.law, opt.order);
      emit(coefficient_table("beta", law, b_series(law).b), opt);
      return 0;
    }
    if (*verify) return run_verify(identity, opt);
    if (*chi) return run_chi(chi_kind, n, k, max_total, file, opt);
    if (*index) return run_index(index_kind, file, opt);
    if (*list) {
      json names = json::array({"axioms", "all"});
      json rows = json::array();
      for (const auto& info : identity_catalog())
        rows.push_back({{"identity", info.name}, {"in_quotient", info.in_quotient}, {"in_all", info.in_default}});
      emit({{"keywords", names}, {"identities", rows}}, opt);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
