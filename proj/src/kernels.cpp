#include "bandapprox/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace bandapprox {

std::vector<double> evaluate_serial(const FilterSolution& sol, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval_solution(sol, xs[i]);
  return out;
}

std::vector<double> evaluate_parallel(const FilterSolution& sol, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  const long n = long(xs.size());
  // Cost per point varies with the distance to the branchpoints.
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) out[i] = eval_solution(sol, xs[i]);
  return out;
}

namespace {

double deviation_at(const FilterSolution& sol, const std::vector<Band>& bands, double x) {
  const auto target = target_at(bands, x);
  if (!target) return 0;
  const double r = eval_solution(sol, x);
  if (!std::isfinite(r)) return INFINITY;
  return std::abs(sol.scale() * r - *target);
}

}  // namespace

double max_deviation_serial(const FilterSolution& sol, const std::vector<Band>& bands,
                            const std::vector<double>& xs) {
  double m = 0;
  for (double x : xs) m = std::max(m, deviation_at(sol, bands, x));
  return m;
}

double max_deviation_parallel(const FilterSolution& sol, const std::vector<Band>& bands,
                              const std::vector<double>& xs) {
  double m = 0;
  const long n = long(xs.size());
#pragma omp parallel for schedule(dynamic, 8) reduction(max : m)
  for (long i = 0; i < n; ++i) m = std::max(m, deviation_at(sol, bands, xs[i]));
  return m;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least two points");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace bandapprox
