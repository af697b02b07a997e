#include "momenta/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "momenta/errors.hpp"
#include "momenta/moments.hpp"
#include "momenta/rng.hpp"

namespace momenta {

namespace {

// Linear interpolation between order statistics (R type 7).
double quantile_sorted(const std::vector<double>& sorted, double q) {
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

MomentInterval interval_from(std::vector<double>& stats, double confidence, double point) {
    std::sort(stats.begin(), stats.end());
    double alpha = 1.0 - confidence;
    MomentInterval iv;
    iv.lower = std::min(quantile_sorted(stats, alpha / 2.0), point);
    iv.upper = std::max(quantile_sorted(stats, 1.0 - alpha / 2.0), point);
    return iv;
}

}  // namespace

MomentCI bootstrap_ci(std::span<const double> values, std::size_t n_resamples,
                      double confidence, std::uint64_t seed) {
    if (values.size() < kMinMomentSamples) {
        throw InsufficientDataError("bootstrap_ci: need at least 4 values");
    }
    if (n_resamples < 100) {
        throw DomainError("bootstrap_ci: need at least 100 resamples");
    }
    if (!(confidence > 0.0) || !(confidence < 1.0)) {
        throw DomainError("bootstrap_ci: confidence must be in (0, 1)");
    }

    MomentVector point = batch_moments(values);

    rng::Engine eng(seed, "bootstrap");
    std::size_t n = values.size();
    std::vector<double> means, stds, skews, kurts;
    means.reserve(n_resamples);
    stds.reserve(n_resamples);
    skews.reserve(n_resamples);
    kurts.reserve(n_resamples);
    bool shapes_ok = true;

    MomentAccumulator acc;
    for (std::size_t r = 0; r < n_resamples; ++r) {
        acc = MomentAccumulator{};
        for (std::size_t i = 0; i < n; ++i) {
            acc.add(values[eng.below(n)]);
        }
        MomentVector mv = acc.finalize();
        means.push_back(mv.mean);
        stds.push_back(mv.std_dev);
        if (mv.shape_defined) {
            skews.push_back(mv.skewness);
            kurts.push_back(mv.excess_kurtosis);
        } else {
            shapes_ok = false;
        }
    }

    MomentCI ci;
    ci.confidence = confidence;
    ci.n_resamples = n_resamples;
    ci.seed = seed;
    ci.mean = interval_from(means, confidence, point.mean);
    ci.std_dev = interval_from(stds, confidence, point.std_dev);
    // A resample of a non-constant input can still be constant; shape
    // intervals stay defined only when every resample had spread and the
    // point estimate itself does.
    if (point.shape_defined && shapes_ok) {
        ci.skewness = interval_from(skews, confidence, point.skewness);
        ci.excess_kurtosis = interval_from(kurts, confidence, point.excess_kurtosis);
    } else {
        ci.skewness.defined = false;
        ci.excess_kurtosis.defined = false;
    }
    return ci;
}

}  // namespace momenta
