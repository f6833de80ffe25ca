// The jcctl command-line front-end as a library call, so tests can
// drive it in-process.
//
// Exit codes: 0 success / CertifiedNonResonant, 2 ResonanceFound,
// 3 CouplingBroken, 64 usage error, 65 unreadable or invalid input data,
// 70 internal failure.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace jcctl::cli {

enum ExitCode : int {
    kOk = 0,
    kResonanceFound = 2,
    kCouplingBroken = 3,
    kUsage = 64,
    kDataError = 65,
    kInternal = 70,
};

// Everything a subcommand may read. Unset fields fall back to the config file
// and then to per-command defaults.
struct RunConfig {
    std::optional<double> omega;
    std::optional<double> capital_omega;
    std::optional<double> g;
    std::optional<int> n_max;
    std::optional<int> n_fock;
    std::optional<double> tol;
    std::optional<double> threshold;
    std::optional<double> g_min;
    std::optional<double> g_max;
    std::optional<double> g_step;
    std::optional<int> n_cap;
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<bool> include_benign;
    std::optional<std::string> schedule;
    std::optional<std::string> initial;
    std::optional<std::string> target;
    std::optional<std::string> levels;
    std::optional<double> control_bound;
};

// Fills fields that are still unset from a key=value file ('#' comments,
// keys spelled like the long flags without dashes, e.g. "n-max" or "n_max").
// Throws std::invalid_argument on unknown keys or malformed values.
void merge_config_file(RunConfig& cfg, const std::string& path);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jcctl::cli
