#pragma once

#include <array>
#include <optional>
#include <vector>

namespace bandapprox {

struct Interval {
  double lo = 0;
  double hi = 0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x, double tol = 0) const {
    return x >= lo - tol && x <= hi + tol;
  }
  bool operator==(const Interval&) const = default;
};

// A work band together with the value of the sign function on it.
struct Band {
  Interval span;
  int target = 1;
};

// Real Moebius map x -> (a x + b) / (c x + d).
struct Mobius {
  double a = 1, b = 0, c = 0, d = 1;

  double operator()(double x) const;
  Mobius inverse() const;
  // The map sending x1, x2, x3 to y1, y2, y3 (points may include +-inf).
  static Mobius three_point(std::array<double, 3> x, std::array<double, 3> y);
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  // The map x -> (*this)(inner(x)).
  Mobius after(const Mobius& inner) const {
    return {a * inner.a + b * inner.c, a * inner.b + b * inner.d,
            c * inner.a + d * inner.c, c * inner.b + d * inner.d};
  }
  bool operator==(const Mobius&) const = default;
};

// One stopband and two passbands in the cyclic order
//   E- < T1 < E1+ < T12 < E2+ < T2 < E-
// with all six endpoints finite and increasing on the real line, so that T2
// is the gap through infinity.
struct BandSystem {
  Interval eminus;
  Interval e1plus;
  Interval e2plus;

  Interval t1() const { return {eminus.hi, e1plus.lo}; }
  Interval t12() const { return {e1plus.hi, e2plus.lo}; }
  std::array<double, 6> endpoints() const {
    return {eminus.lo, eminus.hi, e1plus.lo, e1plus.hi, e2plus.lo, e2plus.hi};
  }
  std::vector<Band> bands() const {
    return {{eminus, -1}, {e1plus, 1}, {e2plus, 1}};
  }
  // Throws std::invalid_argument unless finite, increasing and disjoint.
  void validate() const;
  bool operator==(const BandSystem&) const = default;
};

// Sign-function target on the bands, or nullopt in a gap.
std::optional<int> target_at(const std::vector<Band>& bands, double x);

// Raw band endpoints as read from a file. A band with lo > hi passes through
// infinity.
struct RawBands {
  Interval eminus, e1plus, e2plus;
  std::optional<Mobius> chart;
};

struct NormalizedBands {
  BandSystem bands;
  Mobius chart;  // maps raw coordinates to normalized ones
};

// Sends the left and right ends of E- to -1 and 0 and the right end of E2+ to
// 1 (after applying the raw chart, if any). Throws std::invalid_argument when
// the cyclic order is violated.
NormalizedBands normalize(const RawBands& raw);

}  // namespace bandapprox
