#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bandapprox/bands.hpp"
#include "bandapprox/design.hpp"
#include "bandapprox/oracle.hpp"
#include "bandapprox/solutions.hpp"
#include "bandapprox/verify.hpp"

namespace bandapprox {

using json = nlohmann::json;

// Input that is not valid JSON or does not match the expected schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file that cannot be opened.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Doubles are written in shortest round-trip form; non-finite values become
// the strings "inf", "-inf" and "nan".
json solution_to_json(const FilterSolution& sol);
// The zeta table is rebuilt, so the result is ready for evaluation.
FilterSolution solution_from_json(const json& j);

json bands_to_json(const BandSystem& b);
// [a, b, c, d].
json mobius_to_json(const Mobius& m);
// Accepts {"e_minus": [a,b], "e1_plus": [c,d], "e2_plus": [e,f]}. A band with
// a > b passes through infinity.
RawBands raw_bands_from_json(const json& bands, const json* chart = nullptr);

json report_to_json(const VerificationReport& rep);
json comparison_to_json(const OracleComparison& c);
json attempt_to_json(const DesignAttempt& a);
json params_to_json(Family f, const FamilyParams& p);

// Reads and parses a file. Throws FileError or FormatError.
json read_json_file(const std::string& path);
// Writes to path, or to stdout for "" and "-".
void write_text(const std::string& path, const std::string& text);

// A band file: the "bands" object plus an optional "chart", either
// [a, b, c, d] or {"from": [x1,x2,x3], "to": [y1,y2,y3]}. Ordering errors
// surface as FormatError.
struct LoadedBands {
  BandSystem bands;  // finite and increasing
  Mobius chart;      // raw coordinates -> bands; identity if none was needed
};
LoadedBands load_bands(const json& doc);

}  // namespace bandapprox
