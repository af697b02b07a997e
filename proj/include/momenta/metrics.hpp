#ifndef MOMENTA_METRICS_HPP
#define MOMENTA_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "momenta/moments.hpp"

namespace momenta {

// The uniform law's excess kurtosis is -6/5 regardless of support, which
// makes (0, -1.2) a support-free reference point in the shape plane.
inline constexpr double kUniformExcessKurtosis = -1.2;

// Which reference distribution a metric measures distance from, in the
// (skewness, excess kurtosis) plane.
enum class MetricReference { normal, uniform };

// Distance of a window's shape moments from the normal reference (0, 0).
// Throws DomainError when the window's shape moments are undefined; such
// windows are excluded upstream when building trajectories.
double metric_from_normal(const MomentVector& mv);

// Distance from the uniform reference (0, -1.2).
double metric_from_uniform(const MomentVector& mv);

double metric_value(const MomentVector& mv, MetricReference ref);

// Time-ordered moment vectors of one stream. Construction drops windows
// with undefined shape moments and counts them in `excluded`.
struct MomentTrajectory {
    std::string modality;
    std::vector<MomentVector> points;
    std::size_t excluded = 0;

    static MomentTrajectory from_windows(std::string modality,
                                         std::span<const MomentVector> windows);
};

// Scalar metric per window, with optional phase labels.
struct MetricSeries {
    std::string name;
    MetricReference reference = MetricReference::normal;
    std::vector<std::int64_t> t_ms;
    std::vector<double> values;
    std::vector<std::string> phases;  // empty until annotated
};

MetricSeries metric_series(const MomentTrajectory& traj, MetricReference ref,
                           std::string name);

// Movement of the trajectory through the shape plane: per-step Euclidean
// lengths, their mean, and the straight-line first-to-last displacement.
struct TrajectorySpeed {
    std::vector<double> step_lengths;
    double mean_step = 0.0;
    double net_displacement = 0.0;
};

// Throws InsufficientDataError for trajectories with < 2 points.
TrajectorySpeed trajectory_speed(const MomentTrajectory& traj);

// Labeled half-open time span [start_ms, end_ms).
struct PhaseSpan {
    std::string label;
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
};

// Ordinary least-squares line per phase. Slope is in metric units per
// second; intercept is the fitted value at the phase start. Phases holding
// fewer than 3 points come back with defined = false, the rest are still
// computed.
struct PhaseSlope {
    std::string label;
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    double slope_per_s = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t n = 0;
    bool defined = false;
};

struct PhaseSlopes {
    std::vector<PhaseSlope> phases;
};

PhaseSlopes phase_slopes(const MetricSeries& series, std::span<const PhaseSpan> phases);

// Fills series.phases with the label of the span containing each t (empty
// string where none does).
void annotate_phases(MetricSeries& series, std::span<const PhaseSpan> phases);

}  // namespace momenta

#endif
