#include "momenta/metrics.hpp"

#include <cmath>

#include "momenta/errors.hpp"

namespace momenta {

namespace {

void require_shape(const MomentVector& mv) {
    if (!mv.shape_defined) {
        throw DomainError("metric: shape moments undefined for this window");
    }
}

}  // namespace

double metric_from_normal(const MomentVector& mv) {
    require_shape(mv);
    return std::hypot(mv.skewness, mv.excess_kurtosis);
}

double metric_from_uniform(const MomentVector& mv) {
    require_shape(mv);
    return std::hypot(mv.skewness, mv.excess_kurtosis - kUniformExcessKurtosis);
}

double metric_value(const MomentVector& mv, MetricReference ref) {
    return ref == MetricReference::normal ? metric_from_normal(mv) : metric_from_uniform(mv);
}

MomentTrajectory MomentTrajectory::from_windows(std::string modality,
                                                std::span<const MomentVector> windows) {
    MomentTrajectory traj;
    traj.modality = std::move(modality);
    for (const auto& mv : windows) {
        if (!mv.shape_defined) {
            ++traj.excluded;
            continue;
        }
        if (!traj.points.empty() && mv.start_ms <= traj.points.back().start_ms) {
            throw SequenceError("trajectory: window start times must strictly increase");
        }
        traj.points.push_back(mv);
    }
    return traj;
}

MetricSeries metric_series(const MomentTrajectory& traj, MetricReference ref,
                           std::string name) {
    MetricSeries out;
    out.name = std::move(name);
    out.reference = ref;
    out.t_ms.reserve(traj.points.size());
    out.values.reserve(traj.points.size());
    for (const auto& mv : traj.points) {
        out.t_ms.push_back(mv.start_ms);
        out.values.push_back(metric_value(mv, ref));
    }
    return out;
}

TrajectorySpeed trajectory_speed(const MomentTrajectory& traj) {
    if (traj.points.size() < 2) {
        throw InsufficientDataError("trajectory_speed: need at least 2 points");
    }
    TrajectorySpeed out;
    out.step_lengths.reserve(traj.points.size() - 1);
    double total = 0.0;
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
        double ds = traj.points[i].skewness - traj.points[i - 1].skewness;
        double dk = traj.points[i].excess_kurtosis - traj.points[i - 1].excess_kurtosis;
        double step = std::hypot(ds, dk);
        out.step_lengths.push_back(step);
        total += step;
    }
    out.mean_step = total / static_cast<double>(out.step_lengths.size());
    const auto& a = traj.points.front();
    const auto& b = traj.points.back();
    out.net_displacement =
        std::hypot(b.skewness - a.skewness, b.excess_kurtosis - a.excess_kurtosis);
    return out;
}

PhaseSlopes phase_slopes(const MetricSeries& series, std::span<const PhaseSpan> phases) {
    PhaseSlopes out;
    for (const auto& ph : phases) {
        PhaseSlope ps;
        ps.label = ph.label;
        ps.start_ms = ph.start_ms;
        ps.end_ms = ph.end_ms;

        // t in seconds relative to the phase start keeps the normal
        // equations well conditioned and gives the intercept a meaning.
        std::vector<double> t, y;
        for (std::size_t i = 0; i < series.t_ms.size(); ++i) {
            if (series.t_ms[i] >= ph.start_ms && series.t_ms[i] < ph.end_ms) {
                t.push_back(static_cast<double>(series.t_ms[i] - ph.start_ms) / 1000.0);
                y.push_back(series.values[i]);
            }
        }
        ps.n = t.size();
        if (ps.n < 3) {
            ps.defined = false;
            out.phases.push_back(std::move(ps));
            continue;
        }
        double n = static_cast<double>(ps.n);
        double tm = 0.0, ym = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            tm += t[i];
            ym += y[i];
        }
        tm /= n;
        ym /= n;
        double stt = 0.0, sty = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            stt += (t[i] - tm) * (t[i] - tm);
            sty += (t[i] - tm) * (y[i] - ym);
        }
        if (stt == 0.0) {
            ps.defined = false;  // all points at one instant
            out.phases.push_back(std::move(ps));
            continue;
        }
        ps.slope_per_s = sty / stt;
        ps.intercept = ym - ps.slope_per_s * tm;
        double ss = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            double r = y[i] - (ps.intercept + ps.slope_per_s * t[i]);
            ss += r * r;
        }
        ps.residual_rms = std::sqrt(ss / n);
        ps.defined = true;
        out.phases.push_back(std::move(ps));
    }
    return out;
}

void annotate_phases(MetricSeries& series, std::span<const PhaseSpan> phases) {
    series.phases.assign(series.t_ms.size(), std::string{});
    for (std::size_t i = 0; i < series.t_ms.size(); ++i) {
        for (const auto& ph : phases) {
            if (series.t_ms[i] >= ph.start_ms && series.t_ms[i] < ph.end_ms) {
                series.phases[i] = ph.label;
                break;
            }
        }
    }
}

}  // namespace momenta
