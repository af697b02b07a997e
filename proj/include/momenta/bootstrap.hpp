#ifndef MOMENTA_BOOTSTRAP_HPP
#define MOMENTA_BOOTSTRAP_HPP

#include <cstddef>
#include <cstdint>
#include <span>

namespace momenta {

struct MomentInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool defined = true;
};

// Percentile-method confidence intervals for the four moments, one interval
// per moment, all from the same resample set.
struct MomentCI {
    MomentInterval mean;
    MomentInterval std_dev;
    MomentInterval skewness;
    MomentInterval excess_kurtosis;
    double confidence = 0.0;
    std::size_t n_resamples = 0;
    std::uint64_t seed = 0;
};

// With-replacement percentile bootstrap, deterministic for a given seed.
// Each interval is widened, if needed, to contain the point estimate so the
// lower <= estimate <= upper invariant holds by construction (for any sane
// confidence the widening is a no-op). Shape intervals on constant input
// come back with defined = false.
// Throws InsufficientDataError (n < 4) and DomainError (resamples < 100,
// confidence outside (0,1)).
MomentCI bootstrap_ci(std::span<const double> values, std::size_t n_resamples,
                      double confidence, std::uint64_t seed);

}  // namespace momenta

#endif
