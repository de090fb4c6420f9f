#include "bandapprox/bands.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace bandapprox {

double Mobius::operator()(double x) const {
  if (std::isinf(x)) {
    if (c == 0) return (x > 0) == (a / d > 0) ? INFINITY : -INFINITY;
    return a / c;
  }
  const double den = c * x + d;
  if (den == 0) return INFINITY;
  return (a * x + b) / den;
}

Mobius Mobius::inverse() const { return {d, -b, -c, a}; }

Mobius Mobius::three_point(std::array<double, 3> x, std::array<double, 3> y) {
  // Each pair gives a x + b - y c x - y d = 0; infinite entries use the
  // projective limit of that row.
  Eigen::Matrix<double, 3, 4> A;
  for (int i = 0; i < 3; ++i) {
    const bool xi = std::isinf(x[i]), yi = std::isinf(y[i]);
    if (xi && yi) {
      A.row(i) << 0, 0, 1, 0;  // c = 0
    } else if (xi) {
      A.row(i) << 1, 0, -y[i], 0;  // a / c = y
    } else if (yi) {
      A.row(i) << 0, 0, x[i], 1;  // c x + d = 0
    } else {
      A.row(i) << x[i], 1, -y[i] * x[i], -y[i];
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(A, Eigen::ComputeFullV);
  Eigen::Vector4d v = svd.matrixV().col(3);
  Mobius m{v(0), v(1), v(2), v(3)};
  const double det = m.a * m.d - m.b * m.c;
  if (std::abs(det) < 1e-300) throw std::invalid_argument("degenerate Moebius map");
  return m;
}

void BandSystem::validate() const {
  const auto e = endpoints();
  for (double v : e)
    if (!std::isfinite(v)) throw std::invalid_argument("band endpoint not finite");
  for (int i = 0; i < 5; ++i)
    if (!(e[i] < e[i + 1]))
      throw std::invalid_argument("band endpoints must be strictly increasing");
}

std::optional<int> target_at(const std::vector<Band>& bands, double x) {
  for (const auto& b : bands)
    if (b.span.contains(x)) return b.target;
  return std::nullopt;
}

NormalizedBands normalize(const RawBands& raw) {
  Mobius pre = raw.chart.value_or(Mobius{});
  auto p = [&](double x) { return pre(x); };
  const std::array<double, 6> e = {p(raw.eminus.lo), p(raw.eminus.hi),
                                   p(raw.e1plus.lo), p(raw.e1plus.hi),
                                   p(raw.e2plus.lo), p(raw.e2plus.hi)};
  const Mobius m = Mobius::three_point({e[0], e[1], e[5]}, {-1.0, 0.0, 1.0});
  std::array<double, 6> y;
  for (int i = 0; i < 6; ++i) y[i] = m(e[i]);
  y[0] = -1;
  y[1] = 0;
  y[5] = 1;
  NormalizedBands out;
  out.bands = {{y[0], y[1]}, {y[2], y[3]}, {y[4], y[5]}};
  out.bands.validate();
  out.chart = m.after(pre);
  return out;
}

}  // namespace bandapprox
