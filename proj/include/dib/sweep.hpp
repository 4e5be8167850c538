#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dib/channel.hpp"

namespace dib {

enum class SweepMode { snr_sweep, capacity_sweep, single_point };
enum class OutputFormat { csv, json };

struct MonteCarloSettings {
    std::size_t samples = 10000;        // MMSE log-det draws per point
    std::uint64_t seed = 1;
    std::size_t grid_samples = 1000000; // noise-level draws per relay for the QCI quantile grids
};

// One experiment. For snr_sweep and single_point the grid holds SNRs in dB
// and the capacities come from `base`; for capacity_sweep the grid holds
// C = C1 = C2 in bits and the SNR is `snr_db`.
struct SweepSpec {
    SweepMode mode = SweepMode::snr_sweep;
    std::vector<double> grid;
    ChannelConfig base;
    double snr_db = 40.0;
    std::vector<int> qci_bits;
    MonteCarloSettings mc;
    std::string output_path;  // empty: standard output
    OutputFormat format = OutputFormat::csv;
    unsigned threads = 1;

    void validate() const;
};

// QCI cell of one sweep row.
struct QciCell {
    enum class Status { ok, infeasible, failed };
    Status status = Status::failed;
    double value = 0.0;

    static QciCell ok(double v) { return {Status::ok, v}; }
    static QciCell infeasible() { return {Status::infeasible, 0.0}; }
    static QciCell failed() { return {Status::failed, 0.0}; }
    friend bool operator==(const QciCell&, const QciCell&) = default;
};

struct RatePoint {
    double snr_db = 0.0;
    double c_bits = 0.0;
    std::optional<double> r_ub;
    std::map<int, QciCell> r_lb1;
    std::optional<double> r_lb2;
    std::optional<double> r_lb2_stderr;
    std::vector<std::string> errors;

    bool failed() const { return !errors.empty(); }
    friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<RatePoint> points;

    bool any_failure() const;
};

/// Evaluates every bound at every grid value. Per-point failures are recorded
/// in the row; the sweep itself only throws on an invalid spec.
SweepResult run_sweep(const SweepSpec& spec);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a YAML sweep document. Errors carry the line and field name.
SweepSpec parse_sweep_config(const std::string& text);
SweepSpec load_sweep_config(const std::filesystem::path& path);

/// Built-in experiments: "fig2" (SNR sweep at C = 40) and "fig3"
/// (capacity sweep at 40 dB), both with M = N1 = N2 = 3 and B in {1,..,4}.
SweepSpec preset(const std::string& name);

std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);

/// Reads back the output of to_json.
SweepResult parse_result_json(const std::string& text);

/// Writes the result to spec.output_path (or `out` when given) in spec.format.
void emit(const SweepResult& result, std::ostream& out);
void emit(const SweepResult& result, const std::filesystem::path& path);

inline constexpr const char* kVersion = "0.1.0";

std::string format_number(double v);

}  // namespace dib
