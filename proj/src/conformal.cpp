#include "bandapprox/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bandapprox/quadrature.hpp"

namespace bandapprox {

namespace {

constexpr double kRelTol = 1e-14;

// i^{-r}
cplx phase(int r) {
  switch (((r % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, -1};
    case 2: return {-1, 0};
    default: return {0, 1};
  }
}

// C P(x) / sqrt(prod |x - e|) over branchpoints other than skip, at
// x = origin + offset. Distances are formed as (origin - e) + offset so that
// branchpoints crowding the origin keep full relative accuracy.
double reduced_magnitude(const HyperellipticData& hd, double origin,
                         double offset, double skip = NAN) {
  double prod = 1;
  for (double e : hd.branchpoints)
    if (e != skip) prod *= std::abs((origin - e) + offset);
  return hd.scale * hd.numerator(origin + offset) / std::sqrt(prod);
}

int count_above(const HyperellipticData& hd, double x) {
  return int(hd.branchpoints.end() -
             std::upper_bound(hd.branchpoints.begin(), hd.branchpoints.end(), x));
}

}  // namespace

int HyperellipticData::numerator_degree() const {
  int d = 0;
  for (const auto& z : zeros) d += z.im > 0 ? 2 : 1;
  return d;
}

double HyperellipticData::numerator(double x) const {
  double p = 1;
  for (const auto& z : zeros)
    p *= z.im > 0 ? (x - z.re) * (x - z.re) + z.im * z.im : x - z.re;
  return p;
}

cplx HyperellipticData::numerator(cplx x) const {
  cplx p = 1;
  for (const auto& z : zeros)
    p *= z.im > 0 ? (x - z.re) * (x - z.re) + z.im * z.im : x - z.re;
  return p;
}

bool HyperellipticData::is_branchpoint(double x) const {
  return std::binary_search(branchpoints.begin(), branchpoints.end(), x);
}

void HyperellipticData::validate() const {
  const std::size_t nb = branchpoints.size();
  if (nb < 4 || nb > 8 || nb % 2)
    throw std::invalid_argument("hyperelliptic data: need 4, 6 or 8 branchpoints");
  for (std::size_t i = 0; i + 1 < nb; ++i)
    if (!(branchpoints[i] < branchpoints[i + 1]))
      throw std::invalid_argument("hyperelliptic data: branchpoints must increase");
  for (double e : branchpoints)
    if (!std::isfinite(e)) throw std::invalid_argument("hyperelliptic data: infinite branchpoint");
  if (numerator_degree() != genus() - 1)
    throw std::invalid_argument("hyperelliptic data: numerator degree must be g-1");
  if (!(scale != 0 && std::isfinite(scale)))
    throw std::invalid_argument("hyperelliptic data: scale must be finite and nonzero");
}

cplx differential_at(const HyperellipticData& hd, double x, int sheet) {
  if (hd.is_branchpoint(x))
    throw std::domain_error("differential_at: x is a branchpoint");
  const double v = reduced_magnitude(hd, x, 0.0);
  return double(sheet >= 0 ? 1 : -1) * v * phase(count_above(hd, x));
}

cplx increment(const HyperellipticData& hd, double a, double b) {
  if (a == b) return 0.0;
  if (a > b) return -increment(hd, b, a);
  const auto& e = hd.branchpoints;
  if (std::upper_bound(e.begin(), e.end(), a) !=
          std::lower_bound(e.begin(), e.end(), b))
    throw std::domain_error("increment: branchpoint inside the interval");
  const bool sa = hd.is_branchpoint(a), sb = hd.is_branchpoint(b);
  const double m = 0.5 * (a + b), L = m - a;
  const double sqL = std::sqrt(L);
  double left, right;
  if (sa) {
    left = integrate(
        [&](double s) {
          return 2 * sqL * reduced_magnitude(hd, a, L * s * s, a);
        },
        0.0, 1.0, kRelTol);
  } else {
    left = integrate([&](double d) { return reduced_magnitude(hd, a, d); },
                     0.0, L, kRelTol);
  }
  if (sb) {
    right = integrate(
        [&](double s) {
          return 2 * sqL * reduced_magnitude(hd, b, -L * s * s, b);
        },
        0.0, 1.0, kRelTol);
  } else {
    right = integrate([&](double d) { return reduced_magnitude(hd, b, -d); },
                      0.0, L, kRelTol);
  }
  return (left + right) * phase(count_above(hd, m));
}

cplx wrap_increment(const HyperellipticData& hd, double a, double b) {
  const auto& e = hd.branchpoints;
  if (a < e.back() || b > e.front())
    throw std::domain_error("wrap_increment: endpoints must enclose every branchpoint");
  const bool sa = hd.is_branchpoint(a), sb = hd.is_branchpoint(b);
  const double span = a - b;  // > 0
  auto phi = [&](double s) { return (a - (a + b) * s) / (1 - 2 * s); };
  auto dphi = [&](double s) { return span / ((1 - 2 * s) * (1 - 2 * s)); };
  auto plain = [&](double s) {
    return reduced_magnitude(hd, phi(s), 0.0) * dphi(s);
  };
  // With s = sigma^2 / 2 (or 1 - sigma^2 / 2) the endpoint factor becomes
  // sigma sqrt(span / (2 |1 - 2s|)) and cancels against ds = sigma dsigma.
  double left, right;
  if (sa) {
    left = integrate(
        [&](double sg) {
          const double s = 0.5 * sg * sg;
          const double k = std::sqrt(2 * std::abs(1 - 2 * s) / span);
          // phi(s) - a = span s / (1 - 2s)
          return reduced_magnitude(hd, a, span * s / (1 - 2 * s), a) * dphi(s) * k;
        },
        0.0, 1.0, kRelTol);
  } else {
    left = integrate(plain, 0.0, 0.5, kRelTol);
  }
  if (sb) {
    right = integrate(
        [&](double sg) {
          const double s = 1 - 0.5 * sg * sg;
          const double k = std::sqrt(2 * std::abs(1 - 2 * s) / span);
          // phi(s) - b = span (1 - s) / (1 - 2s)
          return reduced_magnitude(hd, b, span * (1 - s) / (1 - 2 * s), b) * dphi(s) * k;
        },
        0.0, 1.0, kRelTol);
  } else {
    right = integrate(plain, 0.5, 1.0, kRelTol);
  }
  const int g = hd.genus();
  return left + right * ((g + 1) % 2 ? -1.0 : 1.0);
}

double segment_integral(const HyperellipticData& hd, double a, double b) {
  if (a > b) std::swap(a, b);
  std::vector<double> cuts{a};
  for (const auto& z : hd.zeros)
    if (z.im == 0 && z.re > a && z.re < b) cuts.push_back(z.re);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(b);
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += std::abs(increment(hd, cuts[i], cuts[i + 1]));
  return total;
}

std::vector<cplx> period_vector(const HyperellipticData& hd,
                                const std::vector<Interval>& intervals) {
  std::vector<cplx> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals)
    out.push_back(iv.lo <= iv.hi ? increment(hd, iv.lo, iv.hi)
                                 : wrap_increment(hd, iv.lo, iv.hi));
  return out;
}

ZetaTable::ZetaTable(HyperellipticData hd, double anchor)
    : hd_(std::move(hd)), anchor_(anchor) {
  if (!hd_.is_branchpoint(anchor))
    throw std::domain_error("ZetaTable: anchor must be a branchpoint");
  const auto& e = hd_.branchpoints;
  at_branch_.assign(e.size(), 0.0);
  for (std::size_t j = 0; j + 1 < e.size(); ++j)
    at_branch_[j + 1] = at_branch_[j] + increment(hd_, e[j], e[j + 1]);
  const std::size_t ia = std::lower_bound(e.begin(), e.end(), anchor) - e.begin();
  const cplx base = at_branch_[ia];
  for (auto& z : at_branch_) z -= base;
}

cplx ZetaTable::at_real(double x) const {
  const auto& e = hd_.branchpoints;
  if (x <= e.front()) return at_branch_.front() - increment(hd_, x, e.front());
  const std::size_t j = std::upper_bound(e.begin(), e.end(), x) - e.begin() - 1;
  return at_branch_[j] + increment(hd_, e[j], x);
}

cplx ZetaTable::operator()(cplx z) const {
  const double x0 = z.real(), y = z.imag();
  if (y == 0) return at_real(x0);
  if (y < 0) throw std::domain_error("zeta: point below the real axis");
  // Vertical leg x0 + i s, s = y sigma^2.
  auto f = [&](double sg) {
    const cplx w = cplx(x0, y * sg * sg);
    cplx root = 1;
    for (double e : hd_.branchpoints) root *= std::sqrt(w - e);
    return hd_.scale * hd_.numerator(w) / root * cplx(0, 1) * (2 * y * sg);
  };
  return at_real(x0) + integrate(f, 0.0, 1.0, kRelTol);
}

cplx map_to_polygon(const HyperellipticData& hd, cplx x, double anchor) {
  return ZetaTable(hd, anchor)(x);
}

}  // namespace bandapprox
