#ifndef MOMENTA_SIMULATOR_HPP
#define MOMENTA_SIMULATOR_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "momenta/metrics.hpp"
#include "momenta/signal.hpp"

namespace momenta {

enum class ActivityClass { rest, walk, squat, dumbbell };

std::string to_string(ActivityClass a);
std::optional<ActivityClass> activity_from_string(const std::string& s);

enum class FatigueState { fresh, loaded };

// One session segment. workload is an abstract intensity scalar whose unit
// depends on the activity (velocity for walk, mass for dumbbell).
struct PhaseSpec {
    std::string label;
    std::int64_t duration_ms = 0;
    ActivityClass activity = ActivityClass::rest;
    double workload = 0.0;
};

struct ModalityRates {
    double accel_hz = 100.0;
    double rr_hz = 20.0;
    double eeg_hz = 100.0;
};

struct SessionProfile {
    std::string name;
    std::vector<PhaseSpec> phases;
    double fitness = 0.9;  // (0, 1], 1 = well trained
    FatigueState fatigue = FatigueState::fresh;
    std::uint64_t seed = 42;
    ModalityRates rates;

    std::int64_t total_ms() const;
    std::vector<PhaseSpan> phase_spans() const;
};

// Ground-truth row on a fixed 1 s grid: what was happening at that time.
struct TruthRow {
    std::int64_t window_start_ms = 0;
    std::string phase;
    std::string activity;
    double latent = 0.0;
};

struct SyntheticSession {
    std::vector<TriaxSample> triax;
    std::vector<RRInterval> rr;
    std::vector<EEGSample> eeg;
    std::vector<TruthRow> truth;
};

// Deterministic synthetic session. The construction guarantees, relied on
// by the analytics tests:
//   (a) accelerometer magnitude per class: rest tight and near-Gaussian,
//       walk medium spread, squat wide with heavy tails (excess kurtosis
//       well above 1), so moment features separate the classes;
//   (b) RR mean drops under load while window shape moments drift away
//       from (0,0) at a rate growing with workload/fitness, and relax back
//       during rest;
//   (c) loaded sessions drive window skewness and excess kurtosis of the
//       accelerometer stream through one shared latent (strong pair
//       correlation); fresh sessions leave them as independent noise;
//   (d) EEG attention/relaxation shape follows the latent arousal
//       positively and eye-blink negatively, while raw per-sample values
//       stay uncorrelated across channels.
// Values are quantized to the CSV writer's decimals at generation time, so
// write -> parse round-trips bit-exactly. Throws DomainError on invalid
// profiles (no phases, non-positive durations/rates, fitness outside (0,1]).
SyntheticSession generate_session(const SessionProfile& profile);

// Named catalog: the four walking loads, trained/untrained squats, the
// three dumbbell loads, fresh/loaded ambient states, and a mixed
// rest/walk/squat session for clustering.
std::vector<SessionProfile> reference_profiles();

// Catalog lookup by name.
std::optional<SessionProfile> find_profile(const std::string& name);

// Sidecar format: window_start_ms,phase,activity,latent
void write_truth_csv(std::ostream& out, const std::vector<TruthRow>& rows);
std::vector<TruthRow> parse_truth_csv(std::istream& in);

// Contiguous runs of equal phase labels in the sidecar -> time spans.
std::vector<PhaseSpan> phases_from_truth(const std::vector<TruthRow>& rows);

// JSON profile I/O for simulate --profile-file.
SessionProfile profile_from_json(const std::string& text);
std::string profile_to_json(const SessionProfile& profile);

}  // namespace momenta

#endif
