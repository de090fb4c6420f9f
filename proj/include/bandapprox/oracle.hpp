#pragma once

#include <vector>

#include "bandapprox/bands.hpp"
#include "bandapprox/rational.hpp"
#include "bandapprox/solutions.hpp"

namespace bandapprox {

// Discretized bands: sorted grid points, the band each belongs to and the
// sign-function target there.
struct GridProblem {
  std::vector<double> grid;
  std::vector<int> band;
  std::vector<int> target;
  int n = 0;
  std::vector<double> weights;  // optional, positive; empty means 1

  // Throws std::invalid_argument on inconsistent sizes, unsorted points or
  // fewer than 8(n+1) points on some band.
  void validate() const;
};

// Chebyshev-Lobatto points, per_band of them on every band (endpoints
// included). per_band = 0 selects 16(n+1).
GridProblem make_grid(const std::vector<Band>& bands, int n, int per_band = 0);

struct OracleResult {
  RationalFunction r;
  double mu_grid = 1;
  bool converged = false;
  int iterations = 0;
  std::vector<double> history;  // deviation after every iteration
  std::vector<int> denominator_signs;  // sign of q on each band
};

// Grid minimax rational approximation of the sign function by differential
// correction. Every sign pattern of the denominator across the bands is
// tried, so poles may sit in any gap.
OracleResult differential_correction(const GridProblem& gp, int max_iter = 200);

struct OracleComparison {
  double mu_constructed = 0;  // sup error of the rescaled solution
  double mu_grid = 0;
  int alternation_count = 0;
  bool local_opt = false;     // alternation_count == 2n + 2
  bool global_bound = false;  // mu_grid <= mu_constructed + grid tolerance
  bool oracle_converged = false;
};

// Runs the oracle on the bands (user coordinates) and compares it with the
// constructed solution.
OracleComparison validate_against(const FilterSolution& sol, const BandSystem& bands, int n,
                                  double grid_tol = 2e-3, int per_band = 0);

}  // namespace bandapprox
