// JSON and CSV encodings, plus the small text formats the CLI reads
// (level labels, state specs, schedule files).
//
// CSV numbers carry 17 significant digits with '.' as the decimal point, so a
// value written and read back is bit-identical. JSON documents carry a
// "schema_version" field.

#pragma once

#include "jcctl/chain.hpp"
#include "jcctl/dynamics.hpp"
#include "jcctl/resonance.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace jcctl::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kBasisOrder = "index 2n = |n>(x)e1, index 2n+1 = |n>(x)e-1, n = 0..n_fock";

// Locale-independent, round-trip exact: 17 significant digits, "inf"/"nan"
// for non-finite values.
std::string format_double(double x);
// Inverse of format_double; throws std::invalid_argument on trailing garbage.
double parse_double(const std::string& text);

// A rectangular table that renders to CSV or to a JSON array of row objects.
// Cells are JSON scalars; numbers go through format_double in CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void write_csv(std::ostream& os) const;
    json to_json() const;
};

// Splits one CSV line (no quoting support beyond what write_csv produces).
std::vector<std::string> split_csv_line(const std::string& line);

json to_json(const LevelIndex& level);
json to_json(const TransitionEdge& edge);
json to_json(const SingularTag& tag);
json to_json(const SingularPoint& point);
json to_json(const SingularSet& set);
json to_json(const ChainReport& report);
json to_json(const TruncatedOperator& op);
json to_json(const StateVector& psi);

StateVector state_from_json(const json& doc);
TruncatedOperator operator_from_json(const json& doc);

// "(n,+)" style labels: accepts "n,+", "n,-", "(n,+)" and "-1" for the
// spurious level of p. Throws std::invalid_argument on malformed text and
// std::domain_error on levels that are not valid for p.
LevelIndex parse_level(const std::string& text, const ModelParams& p);

// "dressed:<level>", "bare:<n>,up|down", or a path to a state JSON file.
StateVector parse_state_spec(const std::string& spec, const ModelParams& p, int n_fock);

// One "duration u1 u2" segment per line; blank lines and '#' comments skipped.
PiecewiseControl read_schedule(std::istream& is);
PiecewiseControl read_schedule_file(const std::string& path);

// Singular-set CSV: one row per tag, header
// g_star,point_residual,family,m,n,nu,residual,amplitude
// Benign rows carry family BenignG2.
inline constexpr const char* kSingularCsvHeader = "g_star,point_residual,family,m,n,nu,residual,amplitude";
Table singular_table(const SingularSet& set);
SingularSet read_singular_csv(std::istream& is);

}  // namespace jcctl::io
