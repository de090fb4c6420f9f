#pragma once

#include <string>
#include <vector>

#include "bandapprox/solutions.hpp"

namespace bandapprox {

// One (family, m, variant) attempt of the inverse problem.
struct DesignAttempt {
  Family family = Family::Genus2Stiefel;
  int m = 0;
  int variant = 0;          // Genus2: 0 for v >= m, 1 for v < m
  double residual = 0;      // final residual of the period equations
  bool converged = false;
  bool verified = false;
  double seconds = 0;
  std::string note;
};

struct DesignResult {
  FilterSolution solution;
  std::vector<DesignAttempt> attempts;
  // Every family that converged and verified, in priority order.
  std::vector<Family> verified_families;
};

struct DesignOptions {
  // Attempt every candidate even after one has verified, so that ties
  // between families show up in verified_families.
  bool exhaustive = false;
};

// Inverse design: finds the family, level m and polygon parameters whose
// solution has equioscillation on the given bands (user coordinates).
// Candidates run concurrently; the winner is the first verified one in
// classify order. Throws NoSolutionFound listing the best residual of every
// family.
DesignResult design_with_report(const BandSystem& bands, int n, const Sigma& sigma,
                                const DesignOptions& opt = {});

FilterSolution design(const BandSystem& bands, int n, const Sigma& sigma);

}  // namespace bandapprox
