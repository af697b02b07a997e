#ifndef MOMENTA_MOMENTS_HPP
#define MOMENTA_MOMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace momenta {

// Population (biased) moments of one window: mean and std in the input's
// unit, skewness and excess kurtosis dimensionless (normal law -> 0, 0).
// When the window has zero variance the shape moments are meaningless;
// shape_defined goes false and they are stored as 0 rather than NaN.
struct MomentVector {
    double mean = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    std::size_t n = 0;
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    bool shape_defined = true;
};

// A 4th standardized moment needs at least this many points.
inline constexpr std::size_t kMinMomentSamples = 4;

// One-pass accumulator for mean and 2nd..4th central moments, the
// Welford update extended to higher orders; see
// https://www.johndcook.com/blog/skewness_kurtosis/ for the recurrences.
// Order of add() calls does not matter beyond float rounding. Two
// accumulators over disjoint halves merge() into the whole.
class MomentAccumulator {
public:
    void add(double x);
    void merge(const MomentAccumulator& other);
    std::size_t count() const { return n_; }

    // Throws InsufficientDataError when count() < kMinMomentSamples.
    MomentVector finalize(std::int64_t start_ms = 0, std::int64_t end_ms = 0) const;

private:
    std::size_t n_ = 0;
    double m1_ = 0.0;  // running mean
    double m2_ = 0.0;  // sum of (x - mean)^2
    double m3_ = 0.0;
    double m4_ = 0.0;
};

// Two-pass reference: exact same estimator definitions as the accumulator
// (population moments), computed from the full buffer with compensated
// summation. The streaming path is checked against this one.
MomentVector batch_moments(std::span<const double> values, std::int64_t start_ms = 0,
                           std::int64_t end_ms = 0);

struct TimedValue {
    std::int64_t t_ms = 0;
    double value = 0.0;
};

// Half-open window [start_ms, end_ms) over a scalar stream.
struct Window {
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    std::vector<double> values;
};

struct Windowing {
    std::vector<Window> windows;
    std::size_t skipped = 0;  // windows dropped for holding < kMinMomentSamples
};

// Windows start at the first sample's t, advance by stride_ms, and keep
// being emitted while they still contain samples; trailing windows are
// truncated by the end of the series. Windows with fewer than
// kMinMomentSamples samples are dropped and tallied in `skipped`.
// Empty series -> empty result. Throws DomainError for non-positive
// width/stride, SequenceError for unsorted input.
Windowing sliding_windows(std::span<const TimedValue> series, std::int64_t width_ms,
                          std::int64_t stride_ms);

// Moments of every emitted window, via the streaming accumulator.
std::vector<MomentVector> window_moments(const Windowing& w);

}  // namespace momenta

#endif
