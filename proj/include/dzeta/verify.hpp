#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dzeta/words.hpp"

namespace dzeta {

struct CheckReport {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  std::size_t cases = 0;
};

/// Numeric policy for the verify suites. Defaults mirror config/tolerances.json.
struct Tolerances {
  double zeta2_tail_bound_max = 2e-5;
  double kontsevich_xy = 1e-3;
  double kontsevich_xyy = 5e-3;
  double worked_relation = 1e-4;
  double stuffle_slack = 1e-6;
  double shuffle_quad = 5e-3;
  double shintani = 1e-2;
  double azv_direct = 1e-2;
  std::size_t series_cutoff = 100000;
  std::size_t shintani_cutoff = 2000;
  std::size_t direct_cutoff = 2000;
  std::size_t quad_nodes = 64;
};

/// Reads a JSON object whose keys are the Tolerances field names. Missing keys
/// keep their defaults; unknown keys raise InvalidConfig.
Tolerances load_tolerances(const std::string& path);

/// The seven tridendriform relations on quasi-shuffle words, angle trees and
/// vertex trees, and the three dendriform relations on shuffle words and
/// binary trees. Exhaustive over trees with at most `max_leaves` leaves and
/// words of length at most max_leaves - 1.
std::vector<CheckReport> run_axiom_suite(std::size_t max_leaves, const std::vector<Letter>& decorations);

/// ι, flatten_series and flatten_int against every product, the Ψ factorization,
/// σ-action compatibility with ι, and preservation of convergence.
std::vector<CheckReport> run_morphism_suite(std::size_t max_leaves);

/// Cross-implementation checks: surjection formula against recursion on words
/// and trees, enumeration counts, binarization round trip.
std::vector<CheckReport> run_oracle_suite(std::size_t max_leaves);

/// Numeric identities between truncated series, quadrature, arborified values
/// and Shintani sums.
std::vector<CheckReport> run_numeric_suite(const Tolerances& tol);

/// Runs each job on its own task and returns the reports in job order.
std::vector<CheckReport> run_concurrently(const std::vector<std::function<CheckReport()>>& jobs);

/// The two extra convergent binary trees of the Shintani check, drawn with a
/// fixed seed from the convergent trees with at most four leaves.
std::vector<std::string> shintani_sample_trees();

}  // namespace dzeta
