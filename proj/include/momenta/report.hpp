#ifndef MOMENTA_REPORT_HPP
#define MOMENTA_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "momenta/analysis.hpp"
#include "momenta/metrics.hpp"
#include "momenta/moments.hpp"

namespace momenta {

inline constexpr const char* kToolName = "momenta";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// Effective analysis configuration; echoed verbatim into the report.
struct RunConfig {
    std::optional<std::string> accel_path;
    std::optional<std::string> rr_path;
    std::optional<std::string> eeg_path;
    std::optional<std::string> truth_path;
    std::int64_t width_ms = 5000;
    std::int64_t stride_ms = 1000;
    MetricReference metric_binding = MetricReference::normal;  // METRIC measures this
    std::size_t k = 3;
    double threshold = kDefaultFatigueThreshold;
    std::uint64_t seed = 42;
    std::string out_dir = ".";
    bool accel_in_g = false;  // scale axes by 9.81 at ingestion

    void validate() const;  // throws DomainError
};

// Overlays fields present in a JSON config file; CLI flags are applied on
// top by the caller, giving flags > file > defaults.
RunConfig config_from_json(const std::string& text, RunConfig base = {});

// Everything derived from one scalar stream.
struct StreamReport {
    std::string name;
    std::size_t windows_emitted = 0;
    std::size_t windows_skipped = 0;
    std::size_t windows_shape_undefined = 0;
    std::vector<MomentVector> moments;
    MetricSeries metric;   // "METRIC", bound reference
    MetricSeries metric3;  // "METRIC3", the other reference
    std::optional<TrajectorySpeed> speed;
    std::optional<PhaseSlopes> slopes;
};

// Parse warning tagged with the stream it came from.
struct ParseWarningNote {
    std::string stream;
    std::size_t line = 0;
    std::string message;
};

struct Report {
    RunConfig config;
    std::vector<StreamReport> streams;  // accel_mag, rr, eeg_att, eeg_rel, eeg_eye
    std::vector<ParseWarningNote> parse_warnings;
    std::optional<ClusterResult> clusters;       // accel moment features, z-scored
    std::optional<FatigueCorrelationReport> fatigue;  // accel trajectory
    std::optional<CorrelationMatrix> eeg_raw;
    std::optional<CorrelationMatrix> eeg_metric;

    const StreamReport* stream(const std::string& name) const;
    nlohmann::json to_json() const;
};

// Runs ingestion -> windows -> moments -> metrics -> analysis for every
// configured input. Throws DataError("...no analyzable windows...") when a
// configured stream produces none.
Report analyze(const RunConfig& config);

// report.json plus the plot tables, all under config.out_dir. Returns the
// list of files written (relative names).
std::vector<std::string> write_report_files(const Report& report);

struct CompareResult {
    std::string claim;
    std::string modality;
    double speed_a = 0.0;
    double speed_b = 0.0;
    double ratio = 0.0;       // speed_a / speed_b
    std::string faster;       // "a", "b" or "tie"
    bool claim_supported = false;  // a strictly faster than b

    nlohmann::json to_json() const;
};

// Compares mean trajectory speed of one modality between two reports.
// claim is a label for scripting ("fitness-speed" or "workload-speed");
// both reduce to "report A should be the faster one".
CompareResult compare_reports(const nlohmann::json& report_a, const nlohmann::json& report_b,
                              const std::string& claim, const std::string& modality);

}  // namespace momenta

#endif
