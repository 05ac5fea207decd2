#pragma once

// Scenario files: JSON configuration, execution, and CSV/JSONL emission.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "radreact/eom.hpp"
#include "radreact/fields.hpp"
#include "radreact/integrator.hpp"
#include "radreact/trajectory.hpp"

namespace radreact {

/// Malformed or inconsistent scenario configuration. The message names the
/// offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Jsonl };

struct OutputSpec {
    std::filesystem::path path;
    OutputFormat format = OutputFormat::Csv;
    std::size_t every_n = 1;
};

struct ScenarioConfig {
    double mass = 1.0;
    double charge = 1.0;
    std::optional<double> a_max_override;
    FieldConfig field;
    EomKind eom = EomKind::MaxAccelSecondOrder;
    FourVector position;
    Vec3 velocity3;
    /// Lorentz-Dirac only: initial spatial acceleration.
    std::optional<Vec3> seed_acceleration3;
    IntegratorConfig integrator;
    double duration = 1.0;
    OutputSpec output;

    ParticleParams params() const { return ParticleParams(mass, charge, a_max_override); }
};

ScenarioConfig parse_scenario(const nlohmann::json& doc);
/// Throws ConfigError when the file cannot be read or parsed.
nlohmann::json read_json_file(const std::filesystem::path& path);
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct ScenarioResult {
    Trajectory trajectory;
    double energy_balance = 0.0;
    /// Only meaningful for the second-order radiation-reacted equation.
    std::optional<bool> bound_check;
    double max_accel = 0.0;
    int exit_status = 0;
};

/// 0 Completed, 2 Runaway, 3 StepFailure or DomainError.
int exit_status_for(const Termination& t);

ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// CSV header, in column order.
const std::vector<std::string>& csv_columns();

/// Rows every `every_n` accepted steps plus always the final sample.
void write_csv(std::ostream& os, const Trajectory& traj, std::size_t every_n);
void write_jsonl(std::ostream& os, const Trajectory& traj, std::size_t every_n);
void write_output(const Trajectory& traj, const OutputSpec& spec);

/// One-line human summary of a finished run.
std::string summary_line(const ScenarioResult& result);

/// 17 significant digits, locale-independent.
std::string format_double(double v);

/// Replaces the numeric field at a dot-separated path (e.g. "field.width").
/// Throws ConfigError when the path does not address an existing numeric
/// (or null) field.
void set_dot_path(nlohmann::json& doc, const std::string& dot_path, double value);

struct SweepEntry {
    double value = 0.0;
    std::filesystem::path output;
    int exit_status = 0;
    std::string terminated_by;
};

/// Runs one scenario per value with up to `threads` concurrent runs. Output
/// files are named <stem>_<index><ext> next to the configured output; the
/// index file <stem>_index.csv is written after every run has finished.
/// Returns the entries in input order.
std::vector<SweepEntry> run_sweep(const nlohmann::json& base, const std::string& key,
                                  const std::vector<double>& values, unsigned threads);

/// Concurrency cap from RADREACT_THREADS, defaulting to the hardware count.
unsigned sweep_thread_count();

}  // namespace radreact
