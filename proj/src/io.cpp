#include "bandapprox/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bandapprox {

namespace {

json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double get_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw FormatError("expected a number, got " + j.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

double get_num(const json& j, const char* key) { return get_num(field(j, key)); }

int get_int(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<double> get_nums(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array, got " + j.dump());
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_num(v));
  return out;
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json cplx_json(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

cplx get_cplx(const json& j) {
  const auto v = get_nums(j);
  if (v.size() != 2) throw FormatError("a complex number is [re, im]");
  return {v[0], v[1]};
}

json interval_json(const Interval& iv) { return json::array({num(iv.lo), num(iv.hi)}); }

Interval get_interval(const json& j) {
  const auto v = get_nums(j);
  if (v.size() != 2) throw FormatError("an interval is [lo, hi]");
  if (!std::isfinite(v[0]) || !std::isfinite(v[1])) throw FormatError("band endpoints must be finite");
  return {v[0], v[1]};
}

json mobius_json(const Mobius& m) {
  return json::array({num(m.a), num(m.b), num(m.c), num(m.d)});
}

Mobius get_mobius(const json& j) {
  if (j.is_object()) {
    const auto x = get_nums(field(j, "from")), y = get_nums(field(j, "to"));
    if (x.size() != 3 || y.size() != 3) throw FormatError("chart \"from\"/\"to\" need three points");
    try {
      return Mobius::three_point({x[0], x[1], x[2]}, {y[0], y[1], y[2]});
    } catch (const std::exception& e) {
      throw FormatError(std::string("chart: ") + e.what());
    }
  }
  const auto v = get_nums(j);
  if (v.size() != 4) throw FormatError("chart must be [a, b, c, d]");
  const Mobius m{v[0], v[1], v[2], v[3]};
  if (!(std::abs(m.a * m.d - m.b * m.c) > 0)) throw FormatError("chart is degenerate");
  return m;
}

json sigma_json(const Sigma& s) { return json::array({s[0], s[1], s[2]}); }

Sigma get_sigma(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("sigma must have three entries");
  Sigma s;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer()) throw FormatError("sigma entries must be integers");
    s[i] = j[i].get<int>();
  }
  return s;
}

}  // namespace

json params_to_json(Family f, const FamilyParams& p) {
  switch (f) {
    case Family::Genus1Zolotarev: return {{"v1", num(p.v1)}, {"v2", num(p.v2)}};
    case Family::Genus2Stiefel: return {{"h", num(p.h)}, {"v", num(p.v)}};
    case Family::Genus3Octagon: return {{"c", cplx_json(p.c)}};
    default: return {{"h1", num(p.h1)}, {"h2", num(p.h2)}};
  }
}

json solution_to_json(const FilterSolution& s) {
  json zeros = json::array();
  for (const auto& z : s.hd.zeros) zeros.push_back(json::array({num(z.re), num(z.im)}));
  json branch = json::array();
  for (bool b : s.branch) branch.push_back(b);
  return {
      {"family", to_string(s.family)},
      {"n", s.n},
      {"m", s.m},
      {"modulus",
       {{"t", num(s.mod.t)}, {"q", num(s.mod.q)}, {"K", num(s.mod.K)}, {"kinv", num(s.mod.kinv)},
        {"kprime", num(s.mod.kprime)}}},
      {"curve", {{"branchpoints", nums(s.hd.branchpoints)}, {"zeros", zeros}, {"scale", num(s.hd.scale)}}},
      {"anchor", num(s.anchor)},
      {"phase", cplx_json(s.phase)},
      {"sigma", sigma_json(s.sigma)},
      {"mu", num(s.mu)},
      // All parameter fields, so that reading back is exact.
      {"params",
       {{"h", num(s.params.h)}, {"v", num(s.params.v)}, {"h1", num(s.params.h1)},
        {"h2", num(s.params.h2)}, {"v1", num(s.params.v1)}, {"v2", num(s.params.v2)},
        {"c", cplx_json(s.params.c)}}},
      {"chart", mobius_json(s.chart)},
      {"prevertices", nums(s.prevertices)},
      {"branch", branch},
  };
}

FilterSolution solution_from_json(const json& j) {
  FilterSolution s;
  try {
    s.family = family_from_string(field(j, "family").get<std::string>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("family: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  s.n = get_int(j, "n");
  s.m = get_int(j, "m");
  const json& md = field(j, "modulus");
  s.mod.t = get_num(md, "t");
  s.mod.q = get_num(md, "q");
  s.mod.K = get_num(md, "K");
  s.mod.kinv = get_num(md, "kinv");
  s.mod.kprime = get_num(md, "kprime");
  const json& cv = field(j, "curve");
  s.hd.branchpoints = get_nums(field(cv, "branchpoints"));
  const json& zs = field(cv, "zeros");
  if (!zs.is_array()) throw FormatError("curve zeros must be an array");
  for (const auto& z : zs) {
    const cplx c = get_cplx(z);
    s.hd.zeros.push_back({c.real(), c.imag()});
  }
  s.hd.scale = get_num(cv, "scale");
  s.anchor = get_num(j, "anchor");
  s.phase = get_cplx(field(j, "phase"));
  s.sigma = get_sigma(field(j, "sigma"));
  s.mu = get_num(j, "mu");
  const json& p = field(j, "params");
  s.params.h = get_num(p, "h");
  s.params.v = get_num(p, "v");
  s.params.h1 = get_num(p, "h1");
  s.params.h2 = get_num(p, "h2");
  s.params.v1 = get_num(p, "v1");
  s.params.v2 = get_num(p, "v2");
  s.params.c = get_cplx(field(p, "c"));
  s.chart = get_mobius(field(j, "chart"));
  s.prevertices = get_nums(field(j, "prevertices"));
  const json& br = field(j, "branch");
  if (!br.is_array()) throw FormatError("branch must be an array");
  for (const auto& b : br) {
    if (!b.is_boolean()) throw FormatError("branch entries must be booleans");
    s.branch.push_back(b.get<bool>());
  }
  if (s.n < 1) throw FormatError("n must be >= 1");
  if (s.branch.size() != s.prevertices.size()) throw FormatError("branch and prevertices differ in length");
  if (!(s.mod.t > 0) || !(s.mod.kinv > 1)) throw FormatError("invalid modulus");
  try {
    s.hd.validate();
    s.prepare();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("curve: ") + e.what());
  } catch (const std::domain_error& e) {
    throw FormatError(std::string("curve: ") + e.what());
  }
  return s;
}

json mobius_to_json(const Mobius& m) { return mobius_json(m); }

json bands_to_json(const BandSystem& b) {
  return {{"e_minus", interval_json(b.eminus)},
          {"e1_plus", interval_json(b.e1plus)},
          {"e2_plus", interval_json(b.e2plus)}};
}

RawBands raw_bands_from_json(const json& bands, const json* chart) {
  RawBands r;
  r.eminus = get_interval(field(bands, "e_minus"));
  r.e1plus = get_interval(field(bands, "e1_plus"));
  r.e2plus = get_interval(field(bands, "e2_plus"));
  if (chart && !chart->is_null()) r.chart = get_mobius(*chart);
  return r;
}

LoadedBands load_bands(const json& doc) {
  const json* chart = doc.is_object() && doc.contains("chart") ? &doc["chart"] : nullptr;
  const RawBands raw = raw_bands_from_json(field(doc, "bands"), chart);
  LoadedBands out;
  if (!raw.chart) {
    const BandSystem direct{raw.eminus, raw.e1plus, raw.e2plus};
    try {
      direct.validate();
      out.bands = direct;
      return out;
    } catch (const std::invalid_argument&) {
      // Possibly cyclic through infinity; the normalization decides.
    }
  }
  try {
    const NormalizedBands nb = normalize(raw);
    out.bands = nb.bands;
    out.chart = nb.chart;
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bands: ") + e.what());
  }
  return out;
}

json report_to_json(const VerificationReport& r) {
  json segs = json::array();
  for (const auto& iv : r.extended_segments) segs.push_back(interval_json(iv));
  return {
      {"mu", num(r.mu)},
      {"alternation_points", nums(r.alternation_points)},
      {"alternation_signs", r.alternation_signs},
      {"alternation_count", r.alternation_count},
      {"alternating", r.alternating},
      {"sigma", sigma_json(r.sigma)},
      {"sigma_defined", r.sigma_defined},
      {"extremality_number", r.extremality},
      {"extended_segments", segs},
      {"theorem1_ok", r.theorem1_ok},
      {"degree_fit_residual", num(r.degree_fit_residual)},
  };
}

json comparison_to_json(const OracleComparison& c) {
  return {{"mu_constructed", num(c.mu_constructed)},
          {"mu_grid", num(c.mu_grid)},
          {"alternation_count", c.alternation_count},
          {"local_opt", c.local_opt},
          {"global_bound", c.global_bound},
          {"oracle_converged", c.oracle_converged}};
}

json attempt_to_json(const DesignAttempt& a) {
  return {{"family", to_string(a.family)}, {"m", a.m},
          {"variant", a.variant},          {"residual", num(a.residual)},
          {"converged", a.converged},      {"verified", a.verified},
          {"seconds", num(a.seconds)},     {"note", a.note}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path);
  out << text;
}

}  // namespace bandapprox
