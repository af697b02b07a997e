#include "momenta/moments.hpp"

#include <cmath>

#include "momenta/errors.hpp"

namespace momenta {

namespace {

// Variance at or below this scale-relative floor means "constant window":
// shape moments would be 0/0 noise, so they get flagged undefined instead.
bool variance_is_degenerate(double variance, double mean) {
    double scale = std::max(1.0, std::fabs(mean));
    double floor = 1e-10 * scale;
    return variance <= floor * floor;
}

MomentVector from_central_sums(std::size_t n, double m1, double m2, double m3, double m4,
                               std::int64_t start_ms, std::int64_t end_ms) {
    if (n < kMinMomentSamples) {
        throw InsufficientDataError("moments need at least " +
                                    std::to_string(kMinMomentSamples) + " values, got " +
                                    std::to_string(n));
    }
    MomentVector mv;
    mv.n = n;
    mv.start_ms = start_ms;
    mv.end_ms = end_ms;
    mv.mean = m1;
    double dn = static_cast<double>(n);
    double variance = m2 / dn;
    if (variance < 0.0) variance = 0.0;  // rounding guard
    mv.std_dev = std::sqrt(variance);
    if (variance_is_degenerate(variance, m1)) {
        mv.skewness = 0.0;
        mv.excess_kurtosis = 0.0;
        mv.shape_defined = false;
        return mv;
    }
    mv.skewness = (m3 / dn) / (mv.std_dev * mv.std_dev * mv.std_dev);
    mv.excess_kurtosis = (m4 / dn) / (variance * variance) - 3.0;
    mv.shape_defined = true;
    return mv;
}

}  // namespace

void MomentAccumulator::add(double x) {
    double n1 = static_cast<double>(n_);
    ++n_;
    double n = static_cast<double>(n_);
    double delta = x - m1_;
    double delta_n = delta / n;
    double delta_n2 = delta_n * delta_n;
    double term1 = delta * delta_n * n1;
    m1_ += delta_n;
    m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    double na = static_cast<double>(n_);
    double nb = static_cast<double>(other.n_);
    double nc = na + nb;
    double delta = other.m1_ - m1_;
    double delta2 = delta * delta;
    double delta3 = delta2 * delta;
    double delta4 = delta2 * delta2;

    double m1 = (na * m1_ + nb * other.m1_) / nc;
    double m2 = m2_ + other.m2_ + delta2 * na * nb / nc;
    double m3 = m3_ + other.m3_ + delta3 * na * nb * (na - nb) / (nc * nc) +
                3.0 * delta * (na * other.m2_ - nb * m2_) / nc;
    double m4 = m4_ + other.m4_ +
                delta4 * na * nb * (na * na - na * nb + nb * nb) / (nc * nc * nc) +
                6.0 * delta2 * (na * na * other.m2_ + nb * nb * m2_) / (nc * nc) +
                4.0 * delta * (na * other.m3_ - nb * m3_) / nc;

    n_ += other.n_;
    m1_ = m1;
    m2_ = m2;
    m3_ = m3;
    m4_ = m4;
}

MomentVector MomentAccumulator::finalize(std::int64_t start_ms, std::int64_t end_ms) const {
    return from_central_sums(n_, m1_, m2_, m3_, m4_, start_ms, end_ms);
}

namespace {

// Kahan-compensated sum, keeps permutations of the input bit-comparable.
class CompensatedSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace

MomentVector batch_moments(std::span<const double> values, std::int64_t start_ms,
                           std::int64_t end_ms) {
    std::size_t n = values.size();
    if (n < kMinMomentSamples) {
        throw InsufficientDataError("moments need at least " +
                                    std::to_string(kMinMomentSamples) + " values, got " +
                                    std::to_string(n));
    }
    CompensatedSum sum;
    for (double v : values) sum.add(v);
    double mean = sum.value() / static_cast<double>(n);

    CompensatedSum s2, s3, s4;
    for (double v : values) {
        double d = v - mean;
        double d2 = d * d;
        s2.add(d2);
        s3.add(d2 * d);
        s4.add(d2 * d2);
    }
    return from_central_sums(n, mean, s2.value(), s3.value(), s4.value(), start_ms, end_ms);
}

Windowing sliding_windows(std::span<const TimedValue> series, std::int64_t width_ms,
                          std::int64_t stride_ms) {
    if (width_ms <= 0 || stride_ms <= 0) {
        throw DomainError("sliding_windows: width and stride must be positive");
    }
    Windowing out;
    if (series.empty()) return out;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].t_ms <= series[i - 1].t_ms) {
            throw SequenceError("sliding_windows: series not strictly time-sorted");
        }
    }
    std::int64_t first_t = series.front().t_ms;
    std::int64_t last_t = series.back().t_ms;
    std::size_t lo = 0;  // first sample index not yet behind the window start
    for (std::int64_t start = first_t; start <= last_t; start += stride_ms) {
        std::int64_t end = start + width_ms;
        while (lo < series.size() && series[lo].t_ms < start) ++lo;
        Window w{start, end, {}};
        for (std::size_t i = lo; i < series.size() && series[i].t_ms < end; ++i) {
            w.values.push_back(series[i].value);
        }
        if (w.values.size() < kMinMomentSamples) {
            ++out.skipped;
        } else {
            out.windows.push_back(std::move(w));
        }
    }
    return out;
}

std::vector<MomentVector> window_moments(const Windowing& w) {
    std::vector<MomentVector> out;
    out.reserve(w.windows.size());
    for (const auto& win : w.windows) {
        MomentAccumulator acc;
        for (double v : win.values) acc.add(v);
        out.push_back(acc.finalize(win.start_ms, win.end_ms));
    }
    return out;
}

}  // namespace momenta
