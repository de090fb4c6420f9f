#pragma once

#include <vector>

#include "bandapprox/bands.hpp"
#include "bandapprox/solutions.hpp"

namespace bandapprox {

// Unscaled R at every x (user coordinates); +inf at poles. The serial version
// is the reference for the parallel one, which must agree bit for bit.
std::vector<double> evaluate_serial(const FilterSolution& sol, const std::vector<double>& xs);
std::vector<double> evaluate_parallel(const FilterSolution& sol, const std::vector<double>& xs);

// max |scale R - S_E| over the points of xs lying in a band.
double max_deviation_serial(const FilterSolution& sol, const std::vector<Band>& bands,
                            const std::vector<double>& xs);
double max_deviation_parallel(const FilterSolution& sol, const std::vector<Band>& bands,
                              const std::vector<double>& xs);

// n points spaced evenly over [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace bandapprox
