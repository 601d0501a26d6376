#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cobord {

/// Index of a zero component of a vector field, modelled as Z + Z/2:
/// eps is the degree part seen by the augmentation, tor the coefficient of
/// the generator u of pi_1^S = Z/2. Torsion squares to zero.
struct IndexLedger {
  std::int64_t eps = 0;
  bool tor = false;

  static IndexLedger integer(std::int64_t n) { return {n, false}; }
  static IndexLedger generator() { return {0, true}; }

  std::int64_t epsilon() const { return eps; }

  friend IndexLedger operator+(const IndexLedger& a, const IndexLedger& b) { return {a.eps + b.eps, a.tor != b.tor}; }
  friend IndexLedger operator-(const IndexLedger& a) { return {-a.eps, a.tor}; }
  friend IndexLedger operator-(const IndexLedger& a, const IndexLedger& b) { return a + (-b); }
  friend IndexLedger operator*(const IndexLedger& a, const IndexLedger& b) {
    bool t = ((a.eps * (b.tor ? 1 : 0) + b.eps * (a.tor ? 1 : 0)) % 2) != 0;
    return {a.eps * b.eps, t};
  }
  friend bool operator==(const IndexLedger&, const IndexLedger&) = default;

  /// "-1 + u", "u", "1", "0".
  std::string to_string() const {
    if (!tor) return std::to_string(eps);
    if (eps == 0) return "u";
    return std::to_string(eps) + " + u";
  }
};

/// (-1)^|lambda| summed over partitions lambda in a rows x cols box, by
/// explicit enumeration of the parts (weakly decreasing, each <= cols).
inline std::int64_t signed_box_partition_count(int rows, int cols) {
  std::int64_t total = 0;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int row, int bound, int size) -> void {
    if (row == rows) {
      total += (size % 2 == 0) ? 1 : -1;
      return;
    }
    for (int p = 0; p <= bound; ++p) self(self, row + 1, p, size + p);
  };
  rec(rec, 0, cols, 0);
  return total;
}

/// Euler characteristic of the real Grassmannian of k-planes in R^n as the
/// signed count of Schubert cells.
inline std::int64_t chi_grassmann(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::out_of_range("chi_grassmann needs 0 <= k <= n");
  return signed_box_partition_count(k, n - k);
}

struct LocalizationTerm {
  int k1, k2;
  int sign;
  std::int64_t chi1, chi2;
  std::int64_t contribution() const { return sign * chi1 * chi2; }
};

struct LocalizationResult {
  int n1, n2, k;
  std::vector<LocalizationTerm> terms;
  std::int64_t sum = 0;
  std::int64_t expected = 0;  // chi of the total Grassmannian
  bool passed() const { return sum == expected; }
};

/// Sum over fixed components RG(k1, n1) x RG(k2, n2) of the scaling field on
/// RG(k, n1 + n2), each weighted by its index sign (-1)^((n1 - k1) k2).
inline LocalizationResult localization_sum(int n1, int n2, int k) {
  if (n1 < 0 || n2 < 0) throw std::out_of_range("dimensions must be nonnegative");
  if (k < 0 || k > n1 + n2) throw std::out_of_range("grade k outside [0, n1 + n2]");
  LocalizationResult r{n1, n2, k, {}, 0, chi_grassmann(n1 + n2, k)};
  for (int k1 = std::min(k, n1); k1 >= 0; --k1) {
    int k2 = k - k1;
    if (k2 > n2) break;
    LocalizationTerm t{k1, k2, ((n1 - k1) * k2) % 2 == 0 ? 1 : -1, chi_grassmann(n1, k1), chi_grassmann(n2, k2)};
    r.sum += t.contribution();
    r.terms.push_back(t);
  }
  return r;
}

/// All (n1, n2, k) with n1 + n2 <= max_total.
inline std::vector<LocalizationResult> localization_sweep(int max_total) {
  std::vector<LocalizationResult> out;
  for (int n = 0; n <= max_total; ++n)
    for (int n1 = 0; n1 <= n; ++n1)
      for (int k = 0; k <= n; ++k) out.push_back(localization_sum(n1, n - n1, k));
  return out;
}

class FaceClosureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite abstract simplicial complex. Simplices are sorted vertex lists;
/// the empty simplex is never stored.
class SimplicialComplex {
 public:
  using Vertex = std::uint32_t;
  using Simplex = std::vector<Vertex>;

  SimplicialComplex() = default;

  /// Adds every face of every given simplex.
  static SimplicialComplex from_facets(const std::vector<Simplex>& facets) {
    SimplicialComplex k;
    for (const auto& f : facets) {
      Simplex s = normalized(f);
      std::size_t n = s.size();
      if (n > 20) throw std::invalid_argument("simplex dimension too large");
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1u << i)) face.push_back(s[i]);
        k.simplices_.insert(std::move(face));
      }
    }
    return k;
  }

  /// Takes the list as the complete set of simplices; every codimension-one
  /// face must be present.
  static SimplicialComplex from_simplices(const std::vector<Simplex>& simplices) {
    SimplicialComplex k;
    for (const auto& s : simplices) k.simplices_.insert(normalized(s));
    for (const auto& s : k.simplices_) {
      if (s.size() < 2) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + std::ptrdiff_t(i));
        if (!k.simplices_.count(face))
          throw FaceClosureError("simplex " + render(s) + " is missing its face " + render(face));
      }
    }
    return k;
  }

  const std::set<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }

  int dimension() const {
    int d = -1;
    for (const auto& s : simplices_) d = std::max(d, int(s.size()) - 1);
    return d;
  }

  /// Number of simplices in each dimension.
  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f(std::size_t(dimension() + 1), 0);
    for (const auto& s : simplices_) ++f[s.size() - 1];
    return f;
  }

  /// sum over simplices of (-1)^dim.
  std::int64_t euler_characteristic() const {
    std::int64_t chi = 0;
    for (const auto& s : simplices_) chi += (s.size() % 2 == 1) ? 1 : -1;
    return chi;
  }

  /// Vertices are the simplices of this complex (numbered in set order);
  /// simplices are the strictly increasing chains of faces.
  SimplicialComplex barycentric_subdivision() const {
    std::map<Simplex, Vertex> id;
    for (const auto& s : simplices_) id.emplace(s, Vertex(id.size()));
    std::map<Simplex, std::vector<const Simplex*>> cofaces;
    for (const auto& s : simplices_) {
      if (s.size() > 20) throw std::invalid_argument("simplex dimension too large");
      std::uint32_t full = (1u << s.size()) - 1;
      for (std::uint32_t mask = 1; mask < full; ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (mask & (1u << i)) face.push_back(s[i]);
        cofaces[face].push_back(&s);
      }
    }
    SimplicialComplex out;
    std::vector<Vertex> chain;
    auto extend = [&](auto&& self, const Simplex& top) -> void {
      out.simplices_.insert(normalized(chain));
      auto it = cofaces.find(top);
      if (it == cofaces.end()) return;
      for (const Simplex* up : it->second) {
        chain.push_back(id.at(*up));
        self(self, *up);
        chain.pop_back();
      }
    };
    for (const auto& s : simplices_) {
      chain.assign(1, id.at(s));
      extend(extend, s);
    }
    return out;
  }

  static std::string render(const Simplex& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out + "}";
  }

 private:
  static Simplex normalized(Simplex s) {
    if (s.empty()) throw std::invalid_argument("empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("simplex " + render(s) + " repeats a vertex");
    return s;
  }

  std::set<Simplex> simplices_;
};

/// Plain-text complex: one simplex per line, whitespace-separated vertex
/// labels; blank lines and '#' comments are skipped. Faces are closed on
/// load. Labels are numbered in order of first appearance.
inline SimplicialComplex parse_simplicial_complex(std::istream& in, std::vector<std::string>* labels = nullptr) {
  std::map<std::string, SimplicialComplex::Vertex> ids;
  std::vector<std::string> names;
  std::vector<SimplicialComplex::Simplex> facets;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    SimplicialComplex::Simplex s;
    std::string tok;
    while (ss >> tok) {
      auto [it, inserted] = ids.try_emplace(tok, SimplicialComplex::Vertex(names.size()));
      if (inserted) names.push_back(tok);
      s.push_back(it->second);
    }
    if (s.empty()) continue;
    try {
      facets.push_back(s);
      SimplicialComplex::from_facets({s});
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (labels) *labels = std::move(names);
  return SimplicialComplex::from_facets(facets);
}

struct LedgerCheck {
  std::string name;
  std::string statement;
  bool passed;
};

/// RP^2 with the field whose zeros are RP^1 (index -1 + u) and a point
/// (index 1): eps-weighted Euler characteristics sum to chi(RP^2).
inline LedgerCheck rp2_decomposition_check() {
  IndexLedger line_index = IndexLedger::integer(-1) + IndexLedger::generator();
  IndexLedger point_index = IndexLedger::integer(1);
  std::int64_t chi_line = chi_grassmann(2, 1);   // RP^1
  std::int64_t chi_point = chi_grassmann(1, 1);  // point
  std::int64_t chi_rp2 = chi_grassmann(3, 1);
  std::int64_t total = line_index.epsilon() * chi_line + point_index.epsilon() * chi_point;
  std::ostringstream s;
  s << "eps(" << line_index.to_string() << ")*chi(RP1) + eps(" << point_index.to_string() << ")*chi(pt) = ("
    << line_index.epsilon() << ")*" << chi_line << " + " << point_index.epsilon() << "*" << chi_point << " = "
    << total << " = chi(RP2) = " << chi_rp2;
  return {"rp2", s.str(), total == chi_rp2};
}

/// Klein bottle fibred over S^1: the repelling section has index 1, the
/// attracting one -1 + u, so the bundle index is u and its augmentation is
/// chi of the total space.
inline LedgerCheck klein_index_check(const SimplicialComplex& klein) {
  IndexLedger repelling = IndexLedger::integer(1);
  IndexLedger attracting = IndexLedger::integer(-1) + IndexLedger::generator();
  IndexLedger total = repelling + attracting;
  std::int64_t chi = klein.euler_characteristic();
  std::ostringstream s;
  s << repelling.to_string() << " + (" << attracting.to_string() << ") = " << total.to_string()
    << "; eps = " << total.epsilon() << " = chi(KL) = " << chi;
  return {"klein", s.str(), total == IndexLedger::generator() && total.epsilon() == chi};
}

/// A nowhere-vanishing field has no zero components: the empty sum.
inline std::int64_t localized_euler_characteristic(const std::vector<std::pair<IndexLedger, std::int64_t>>& zeros) {
  std::int64_t chi = 0;
  for (const auto& [index, chi_component] : zeros) chi += index.epsilon() * chi_component;
  return chi;
}

}  // namespace cobord
