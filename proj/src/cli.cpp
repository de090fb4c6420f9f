#include "bandapprox/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bandapprox/design.hpp"
#include "bandapprox/errors.hpp"
#include "bandapprox/io.hpp"
#include "bandapprox/kernels.hpp"
#include "bandapprox/oracle.hpp"
#include "bandapprox/verify.hpp"

namespace bandapprox {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Family parse_family(std::string s) {
  static const std::map<std::string, Family> alias = {
      {"genus1", Family::Genus1Zolotarev},     {"zolotarev", Family::Genus1Zolotarev},
      {"genus2", Family::Genus2Stiefel},       {"stiefel", Family::Genus2Stiefel},
      {"twoslit", Family::Genus3TwoSlit},      {"octagon", Family::Genus3Octagon},
      {"decagonplus", Family::Genus3DecagonPlus}, {"decplus", Family::Genus3DecagonPlus},
      {"decagonminus", Family::Genus3DecagonMinus}, {"decminus", Family::Genus3DecagonMinus},
  };
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (const auto it = alias.find(lower); it != alias.end()) return it->second;
  try {
    return family_from_string(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("unknown family '" + s + "'");
  }
}

Sigma parse_sigma(const std::string& s, int n) {
  Sigma out{};
  std::stringstream ss(s);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 3 || (item != "0" && item != "1")) throw UsageError("--sigma expects three parities a,b,c");
    out[i++] = item[0] - '0';
  }
  if (i != 3) throw UsageError("--sigma expects three parities a,b,c");
  if ((out[0] + out[1] + out[2] - n) % 2 != 0) throw UsageError("--sigma parities must add up to n mod 2");
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Loaded {
  FilterSolution solution;
  BandSystem bands;
};

// A solution document: {"solution": ..., "bands": ...}. The bands may come
// from a separate file instead.
Loaded load_solution(const std::string& path, const std::string& bands_path) {
  const json doc = read_json_file(path);
  Loaded out;
  if (!doc.is_object() || !doc.contains("solution")) throw FormatError(path + ": no \"solution\" object");
  out.solution = solution_from_json(doc["solution"]);
  const LoadedBands lb = load_bands(bands_path.empty() ? doc : read_json_file(bands_path));
  if (!lb.chart.is_identity()) out.solution.chart = out.solution.chart.after(lb.chart.inverse());
  out.bands = lb.bands;
  return out;
}

struct Options {
  std::string family;
  double t = 0;
  int n = 0, m = 0;
  FamilyParams p;
  double c_re = 0, c_im = 0;
  std::string bands, sigma, out, input;
  int grid_density = 0;
  int count = 401;
};

int cmd_forward(const Options& o, std::ostream& out) {
  const Family f = parse_family(o.family);
  if (o.n < 1) throw UsageError("--n must be >= 1");
  if (!(o.t > 0)) throw UsageError("--t must be positive");
  FamilyParams p = o.p;
  p.c = {o.c_re, o.c_im};
  Construction c;
  try {
    c = forward_construct(f, o.t, o.n, o.m, p);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const VerificationReport rep = verify_solution(c.solution, c.bands, o.grid_density > 0 ? o.grid_density : 256);
  const json doc = {{"solution", solution_to_json(c.solution)},
                    {"bands", bands_to_json(c.bands)},
                    {"verification", report_to_json(rep)}};
  if (o.out.empty()) out << dump(doc);
  else write_text(o.out, dump(doc));
  return rep.passed(o.n) ? kExitOk : kExitVerification;
}

int cmd_design(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n < 1) throw UsageError("--n must be >= 1");
  std::vector<Sigma> classes;
  if (!o.sigma.empty()) classes.push_back(parse_sigma(o.sigma, o.n));
  else classes = {{1, 0, (o.n + 1) % 2}, {1, 1, o.n % 2}};
  const LoadedBands lb = load_bands(read_json_file(o.bands));

  std::optional<DesignResult> found;
  std::vector<DesignAttempt> attempts;
  std::string failures;
  for (const Sigma& s : classes) {
    try {
      found = design_with_report(lb.bands, o.n, s);
      attempts.insert(attempts.end(), found->attempts.begin(), found->attempts.end());
      break;
    } catch (const NoSolutionFound& e) {
      failures += std::string(e.what()) + "\n";
      for (const auto& [name, res] : e.attempts()) failures += "  " + name + " residual " + std::to_string(res) + "\n";
    }
  }
  if (!found) {
    err << failures;
    return kExitNoFamily;
  }
  const FilterSolution& sol = found->solution;
  const VerificationReport rep = verify_solution(sol, lb.bands, o.grid_density > 0 ? o.grid_density : 256);
  json att = json::array();
  for (const auto& a : attempts) att.push_back(attempt_to_json(a));
  json fams = json::array();
  for (Family f : found->verified_families) fams.push_back(to_string(f));
  const json doc = {{"family", to_string(sol.family)},
                    {"m", sol.m},
                    {"t", sol.mod.t},
                    {"params", params_to_json(sol.family, sol.params)},
                    {"solution", solution_to_json(sol)},
                    {"bands", bands_to_json(lb.bands)},
                    {"input_chart", mobius_to_json(lb.chart)},
                    {"verification", report_to_json(rep)},
                    {"attempts", att},
                    {"verified_families", fams}};
  if (o.out.empty()) out << dump(doc);
  else write_text(o.out, dump(doc));
  return rep.passed(o.n) ? kExitOk : kExitVerification;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Loaded l = load_solution(o.input, o.bands);
  const VerificationReport rep = verify_solution(l.solution, l.bands, o.grid_density > 0 ? o.grid_density : 256);
  json doc = {{"verification", report_to_json(rep)}, {"passed", rep.passed(l.solution.n)}};
  if (o.out.empty()) out << dump(doc);
  else write_text(o.out, dump(doc));
  return rep.passed(l.solution.n) ? kExitOk : kExitVerification;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  json doc;
  int code = kExitOk;
  if (!o.input.empty()) {
    const Loaded l = load_solution(o.input, o.bands);
    if (l.solution.n > 4) throw UsageError("oracle comparison needs n <= 4");
    const OracleComparison c = validate_against(l.solution, l.bands, l.solution.n, 2e-3, o.grid_density);
    doc = comparison_to_json(c);
    if (!(c.local_opt && c.global_bound)) code = kExitVerification;
  } else {
    if (o.bands.empty()) throw UsageError("oracle needs a solution file or --bands");
    if (o.n < 0 || o.n > 6) throw UsageError("oracle needs 0 <= n <= 6");
    const LoadedBands lb = load_bands(read_json_file(o.bands));
    const OracleResult r = differential_correction(make_grid(lb.bands.bands(), o.n, o.grid_density));
    doc = {{"mu_grid", r.mu_grid},
           {"converged", r.converged},
           {"iterations", r.iterations},
           {"history", r.history},
           {"denominator_signs", r.denominator_signs}};
    if (!r.converged) code = kExitConstruction;
  }
  if (o.out.empty()) out << dump(doc);
  else write_text(o.out, dump(doc));
  return code;
}

int cmd_samples(const Options& o, std::ostream& out) {
  if (o.count < 2) throw UsageError("--count must be >= 2");
  const Loaded l = load_solution(o.input, o.bands);
  const auto bands = l.bands.bands();
  const double lo = l.bands.eminus.lo, hi = l.bands.e2plus.hi, margin = 0.2 * (hi - lo);
  const std::vector<double> xs = linspace(lo - margin, hi + margin, o.count);
  const std::vector<double> r = evaluate_parallel(l.solution, xs);
  const double scale = l.solution.scale();
  std::ostringstream csv;
  csv << std::setprecision(17) << "x,R,S_E,in_band\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto target = target_at(bands, xs[i]);
    csv << xs[i] << ',';
    if (std::isfinite(r[i])) csv << scale * r[i];
    csv << ',';
    if (target) csv << *target;
    csv << ',' << (target ? 1 : 0) << '\n';
  }
  if (o.out.empty()) out << csv.str();
  else write_text(o.out, csv.str());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal rational approximation of the sign function on three bands"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto* fwd = app.add_subcommand("forward", "Construct a solution from family parameters");
  fwd->add_option("--family", o.family, "Genus1Zolotarev, Genus2Stiefel, Genus3TwoSlit, Genus3Octagon, "
                                        "Genus3DecagonPlus or Genus3DecagonMinus")->required();
  fwd->add_option("--t", o.t, "Rectangle height of the small modulus")->required();
  fwd->add_option("--n", o.n, "Degree")->required();
  fwd->add_option("--m", o.m, "Slit level")->required();
  fwd->add_option("--h", o.p.h, "Genus2 slit tip");
  fwd->add_option("--v", o.p.v, "Genus2 wall height (units of t)");
  fwd->add_option("--h1", o.p.h1, "First slit parameter");
  fwd->add_option("--h2", o.p.h2, "Second slit parameter");
  fwd->add_option("--v1", o.p.v1, "Genus1 lower cut height");
  fwd->add_option("--v2", o.p.v2, "Genus1 upper cut height");
  fwd->add_option("--c-re", o.c_re, "Octagon branch point, real part");
  fwd->add_option("--c-im", o.c_im, "Octagon branch point, imaginary part");
  fwd->add_option("--out", o.out, "Output JSON (default stdout)");
  fwd->add_option("--grid-density", o.grid_density, "Verification grid points per band");

  auto* des = app.add_subcommand("design", "Find the optimal solution for given bands");
  des->add_option("--bands", o.bands, "Band file")->required();
  des->add_option("--n", o.n, "Degree")->required();
  des->add_option("--sigma", o.sigma, "Zero-count parities a,b,c in T1, T12, T2");
  des->add_option("--out", o.out, "Output JSON (default stdout)");
  des->add_option("--grid-density", o.grid_density, "Verification grid points per band");

  auto* ver = app.add_subcommand("verify", "Certify a stored solution");
  ver->add_option("solution", o.input, "Solution JSON")->required();
  ver->add_option("--bands", o.bands, "Band file (default: the bands in the solution file)");
  ver->add_option("--out", o.out, "Output JSON (default stdout)");
  ver->add_option("--grid-density", o.grid_density, "Verification grid points per band");

  auto* orc = app.add_subcommand("oracle", "Compare with a brute-force minimax approximation");
  orc->add_option("solution", o.input, "Solution JSON");
  orc->add_option("--bands", o.bands, "Band file");
  orc->add_option("--n", o.n, "Degree (without a solution file)");
  orc->add_option("--out", o.out, "Output JSON (default stdout)");
  orc->add_option("--grid-density", o.grid_density, "Grid points per band (default 16(n+1))");

  auto* smp = app.add_subcommand("samples", "Tabulate a stored solution as CSV");
  smp->add_option("solution", o.input, "Solution JSON")->required();
  smp->add_option("--bands", o.bands, "Band file (default: the bands in the solution file)");
  smp->add_option("--count", o.count, "Number of rows");
  smp->add_option("--out", o.out, "Output CSV (default stdout)");

  std::vector<std::string> argv_store = {"bandapprox"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bandapprox: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*fwd) return cmd_forward(o, out);
    if (*des) return cmd_design(o, out, err);
    if (*ver) return cmd_verify(o, out);
    if (*orc) return cmd_oracle(o, out);
    return cmd_samples(o, out);
  } catch (const UsageError& e) {
    err << "bandapprox: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FileError& e) {
    err << "bandapprox: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const FormatError& e) {
    err << "bandapprox: " << e.what() << "\n";
    return kExitData;
  } catch (const NoSolutionFound& e) {
    err << "bandapprox: " << e.what() << "\n";
    return kExitNoFamily;
  } catch (const std::exception& e) {
    err << "bandapprox: " << e.what() << "\n";
    return kExitConstruction;
  }
}

}  // namespace bandapprox
