#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fgl.hpp"
#include "series.hpp"

namespace cobord {

/// The requested computation needs a law with integer coefficients.
class UnsupportedSpecialization : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Z[[x1..xk]] / ([x1]_2, ..., [xk]_2), truncated at total degree `order`,
/// for a law whose 2-series has integer coefficients.
///
/// The truncated ring is a finitely generated abelian group: the free group
/// on monomials of degree <= order modulo the lattice spanned by the
/// truncations of m*[x]_2 over all monomials m. The lattice is kept in
/// integer echelon form with columns ordered by degree descending, so
/// relations such as 2u + u^2 eliminate the higher monomial first. Reducing
/// a vector against the echelon rows, leaving each pivot entry in the
/// symmetric residue range (-p/2, p/2], yields a unique representative of
/// its class.
class QuotientRingA {
 public:
  using Row = std::map<int, Integer>;

  QuotientRingA(const FormalGroupLaw& law, Variables vars, int order) : vars_(std::move(vars)), order_(order) {
    if (order_ < 1) throw std::invalid_argument("quotient ring needs order >= 1");
    if (order_ > law.order())
      throw std::invalid_argument("quotient order exceeds the law's working order");
    for (const auto& [e, c] : law.two_series().terms())
      if (!c.is_constant() || !is_integral(c.constant_term()))
        throw UnsupportedSpecialization("law " + law.name() +
                                        " has non-integral 2-series coefficients; the quotient by [u]_2 is "
                                        "only decidable here for integral specializations");
    enumerate_columns();
    TruncatedSeries two = law.two_series().truncate(order_);
    for (std::size_t x = 0; x < vars_.size(); ++x) {
      TruncatedSeries rel = embed(rename(two, Variables{vars_[x]}), vars_);
      relations_.push_back(rel);
      for (const auto& m : columns_) {
        if (m.degree() + 1 > order_) continue;
        insert(to_row(rel.shifted(m).truncate(order_)));
      }
    }
  }

  const Variables& variables() const { return vars_; }
  int order() const { return order_; }
  const std::vector<TruncatedSeries>& relations() const { return relations_; }

  /// Canonical representative; s must have integer constant coefficients and
  /// order at least order().
  TruncatedSeries reduce(const TruncatedSeries& s) const {
    s.require_same_universe(relations_.front());
    if (s.order() < order_)
      throw std::invalid_argument("series of order " + std::to_string(s.order()) +
                                  " is too coarse for a quotient of order " + std::to_string(order_));
    Row x = to_row(s.truncate(order_));
    reduce_row(x);
    return from_row(x);
  }

  bool is_zero(const TruncatedSeries& s) const { return reduce(s).is_zero(); }

  std::size_t rank() const { return pivots_.size(); }

 private:
  void enumerate_columns() {
    std::size_t k = vars_.size();
    std::vector<Exponents> all;
    for (int a = 0; a <= order_; ++a)
      for (int b = 0; b <= (k > 1 ? order_ - a : 0); ++b)
        for (int c = 0; c <= (k > 2 ? order_ - a - b : 0); ++c) {
          Exponents e;
          e.e = {std::uint8_t(a), std::uint8_t(b), std::uint8_t(c)};
          all.push_back(e);
        }
    GradedOrder graded;
    std::sort(all.begin(), all.end(), [&](const Exponents& x, const Exponents& y) { return graded(y, x); });
    columns_ = std::move(all);
    for (std::size_t i = 0; i < columns_.size(); ++i) column_of_.emplace(columns_[i], int(i));
  }

  Row to_row(const TruncatedSeries& s) const {
    Row r;
    for (const auto& [e, c] : s.terms()) {
      if (!c.is_constant() || !is_integral(c.constant_term()))
        throw UnsupportedSpecialization("coefficient " + c.to_string() + " is not an integer");
      r.emplace(column_of_.at(e), c.constant_term().get_num());
    }
    return r;
  }

  TruncatedSeries from_row(const Row& r) const {
    TruncatedSeries s(vars_, order_);
    for (const auto& [col, z] : r) s.add_term(columns_[col], CoeffPoly(Rational(z)));
    return s;
  }

  static void axpy(Row& y, const Integer& a, const Row& x) {
    for (const auto& [col, z] : x) {
      auto [it, inserted] = y.try_emplace(col, 0);
      it->second += a * z;
      if (it->second == 0) y.erase(it);
    }
  }

  static Row combine(const Integer& a, const Row& x, const Integer& b, const Row& y) {
    Row r;
    axpy(r, a, x);
    axpy(r, b, y);
    return r;
  }

  void insert(Row row) {
    while (!row.empty()) {
      auto [col, lead] = *row.begin();
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        if (lead < 0)
          for (auto& [c, z] : row) z = -z;
        pivots_.emplace(col, std::move(row));
        return;
      }
      Row& pivot = it->second;
      Integer p = pivot.begin()->second;
      if (lead % p == 0) {
        axpy(row, Integer(-lead / p), pivot);
        continue;
      }
      // Unimodular 2x2 step: the pivot becomes the gcd row, the other row
      // loses its leading entry.
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), lead.get_mpz_t());
      Row gcd_row = combine(s, pivot, t, row);
      Row rest = combine(Integer(lead / g), pivot, Integer(-p / g), row);
      pivot = std::move(gcd_row);
      if (pivot.begin()->second < 0)
        for (auto& [c, z] : pivot) z = -z;
      row = std::move(rest);
    }
  }

  void reduce_row(Row& x) const {
    int col = 0;
    while (true) {
      auto it = x.lower_bound(col);
      if (it == x.end()) return;
      col = it->first;
      auto pit = pivots_.find(col);
      if (pit != pivots_.end()) {
        const Integer& p = pit->second.begin()->second;
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), it->second.get_mpz_t(), p.get_mpz_t());
        if (2 * r > p) r -= p;
        Integer q = (it->second - r) / p;
        if (q != 0) axpy(x, Integer(-q), pit->second);
      }
      ++col;
    }
  }

  Variables vars_;
  int order_;
  std::vector<Exponents> columns_;
  std::map<Exponents, int, GradedOrder> column_of_;
  std::map<int, Row> pivots_;
  std::vector<TruncatedSeries> relations_;
};

}  // namespace cobord
