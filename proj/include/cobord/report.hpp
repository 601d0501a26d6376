#pragma once

#include <optional>
#include <string>
#include <vector>

#include "series.hpp"

namespace cobord {

/// Outcome of one identity or axiom check. Failures are data, not errors.
struct IdentityReport {
  std::string identity;
  std::string law;
  int order = 0;
  bool passed = true;
  std::optional<int> first_failing_degree;
  std::optional<std::string> witness_term;
};

template <class R>
IdentityReport compare_series(std::string identity, std::string law, int order, const Series<R>& lhs,
                              const Series<R>& rhs) {
  IdentityReport rep{std::move(identity), std::move(law), order, true, std::nullopt, std::nullopt};
  if (auto d = first_difference(lhs, rhs)) {
    rep.passed = false;
    rep.first_failing_degree = d->degree;
    rep.witness_term = d->witness;
  }
  return rep;
}

inline bool all_passed(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

}  // namespace cobord
