#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "relfix/core.hpp"

namespace relfix {

enum class IterStatus { Converged, CycleDetected, MaxIterations };

inline const char* iter_status_name(IterStatus s) {
  switch (s) {
    case IterStatus::Converged:
      return "converged";
    case IterStatus::CycleDetected:
      return "cycle";
    case IterStatus::MaxIterations:
      return "max-iterations";
  }
  return "max-iterations";
}

// Picard orbit on a finite instance. iterates includes the starting point
// and, on convergence, the repeated terminal point (its final step is 0).
struct IterationTrace {
  std::size_t start = 0;
  std::vector<std::size_t> iterates;
  std::vector<double> step_dists;
  IterStatus status = IterStatus::MaxIterations;
  std::size_t period = 0;  // > 1 iff CycleDetected

  // Certificate bookkeeping, filled by solve_t3 when condition (a) holds.
  std::optional<std::size_t> chain_m;
  std::optional<std::size_t> n0;
  std::vector<double> step_bounds;
  double epsilon = 0.0;
  double k = 0.0;

  std::size_t steps() const { return step_dists.size(); }
  std::size_t terminal() const { return iterates.back(); }
};

struct RealIterationTrace {
  Vec start;
  std::vector<Vec> iterates;
  std::vector<double> step_dists;
  IterStatus status = IterStatus::MaxIterations;

  std::size_t steps() const { return step_dists.size(); }
  const Vec& terminal() const { return iterates.back(); }
};

}  // namespace relfix
