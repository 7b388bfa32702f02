#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fefbound/errors.hpp"
#include "fefbound/fef.hpp"
#include "fefbound/states.hpp"

namespace fefbound::cli {

// Malformed input text or an invalid command line. Exit code 1.
class ParseError : public Error {
public:
    using Error::Error;
};

// File could not be read or written. Exit code 3.
class IoError : public Error {
public:
    using Error::Error;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitPhysicality = 2, kExitIo = 3 };

// ---------------------------------------------------------------------------
// State files
//
// {"dim": d, "re": [[...], ...], "im": [[...], ...]}
//
// re and im are d^2 x d^2 arrays of rows. "dim" is the subsystem dimension;
// when omitted it is inferred from the row count, which must then be a
// perfect square. Numbers are written with shortest round-trip precision.

DensityState parse_state_json(const std::string& text, bool allow_unphysical = false);
DensityState parse_state_file(const std::string& path, bool allow_unphysical = false);

std::string state_to_json(const DensityState& state);
void write_state_file(const std::string& path, const DensityState& state);

// ---------------------------------------------------------------------------
// Built-in families and state selection

inline const std::vector<std::string> kFamilies = {"maxent", "isotropic", "werner-swap", "werner-paper",
                                                   "horodecki", "random"};

struct StateSpec {
    std::optional<std::string> file;
    std::optional<std::string> family;
    int d = 2;
    double p = 0.0;
    double a = 0.0;
    std::uint64_t seed = 1;
    bool allow_unphysical = false;
};

struct ResolvedState {
    DensityState state;
    std::string label;
};

ResolvedState resolve_state(const StateSpec& spec);

// ---------------------------------------------------------------------------
// Sweeps

struct SweepSpec {
    StateSpec base;          // family and the parameters that stay fixed
    std::string parameter;   // "p" (isotropic) or "a" (horodecki)
    double from = 0.0;
    double to = 1.0;
    int steps = 11;
    OptimizerOptions optimizer;
};

struct SweepRow {
    double param = 0.0;
    double frobenius_norm = 0.0;
    double theorem1_bound = 0.0;
    std::optional<double> paper_example3_form;
    double hoelder_sum_bound = 0.0;
    double lm_bound = 0.0;
    double spectral_bound = 0.0;
    double fef_lower = 0.0;
};

// Linear grid, endpoints included exactly.
std::vector<double> sweep_grid(double from, double to, int steps);

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Header: param,frobenius_norm,theorem1_bound[,paper_example3_form],
// hoelder_sum_bound,lm_bound,spectral_bound,fef_lower
// The paper_example3_form column appears only when the rows carry it.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

// 17 significant digits, '.' decimal point, independent of locale.
std::string format_double(double value);

// ---------------------------------------------------------------------------
// Identity verification

struct VerifyCheck {
    std::string name;
    int d = 0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed() const { return residual <= tolerance; }
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    std::vector<std::string> findings;  // observations about published claims
    bool all_passed() const;
};

VerifyReport run_verify(int d_max, const OptimizerOptions& opts = {});

// ---------------------------------------------------------------------------
// Rendering

std::string render_bound_report(const BoundReport& report, std::optional<double> paper_example3_form = {});
std::string bound_report_to_json(const BoundReport& report, std::optional<double> paper_example3_form = {});
std::string render_verify_report(const VerifyReport& report);

enum class Basis { principal, bloch };

inline constexpr double kCoefficientPrintThreshold = 1e-12;

// One line per coefficient with magnitude above kCoefficientPrintThreshold,
// then the reconstruction residual.
std::string decompose_listing(const DensityState& state, Basis basis);

// ---------------------------------------------------------------------------

// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fefbound::cli
