#pragma once

#include <map>
#include <vector>

#include "bandapprox/solutions.hpp"

namespace fixtures {

using namespace bandapprox;

struct Case {
  Family family;
  double t;
  int n, m;
  FamilyParams p;
};

// One admissible parameter point per family.
inline Case case_for(Family f) {
  FamilyParams p;
  switch (f) {
    case Family::Genus1Zolotarev:
      p.v1 = 1.3;
      p.v2 = 1.7;
      return {f, 0.4, 4, 1, p};
    case Family::Genus2Stiefel:
      p.h = 0.3;
      p.v = 2;
      return {f, 0.4, 5, 2, p};
    case Family::Genus3TwoSlit:
      p.h1 = 0.0;
      p.h2 = 0.3;
      return {f, 0.6, 4, 1, p};
    case Family::Genus3Octagon:
      p.c = {0.2, 0.9};
      return {f, 0.6, 4, 1, p};
    case Family::Genus3DecagonPlus:
      p.h1 = -0.6;
      p.h2 = -0.3;
      return {f, 0.8, 4, 1, p};
    case Family::Genus3DecagonMinus:
      p.h1 = -0.5;
      p.h2 = 0.0;
      return {f, 0.6, 4, 1, p};
  }
  return {};
}

inline const std::vector<Family>& all_families() {
  static const std::vector<Family> f = {Family::Genus1Zolotarev,   Family::Genus2Stiefel,
                                        Family::Genus3TwoSlit,     Family::Genus3Octagon,
                                        Family::Genus3DecagonPlus, Family::Genus3DecagonMinus};
  return f;
}

// Constructions are cached; tests share them.
inline const Construction& construction(Family f) {
  static std::map<Family, Construction> cache;
  auto it = cache.find(f);
  if (it == cache.end()) {
    const Case c = case_for(f);
    it = cache.emplace(f, forward_construct(c.family, c.t, c.n, c.m, c.p)).first;
  }
  return it->second;
}

}  // namespace fixtures
