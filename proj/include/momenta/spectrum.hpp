#ifndef MOMENTA_SPECTRUM_HPP
#define MOMENTA_SPECTRUM_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace momenta {

// One-sided power spectrum, bins from DC to Nyquist.
struct Spectrum {
    std::vector<double> freq_hz;
    std::vector<double> power;
    double sample_rate_hz = 0.0;

    double total_power() const;
    // Index of the strongest bin.
    std::size_t peak_bin() const;
};

// Mean-removed one-sided periodogram of a uniformly sampled signal.
// Normalized so that total power equals the signal's population variance
// (non-DC/non-Nyquist bins carry the doubled two-sided contribution):
// P_k = c_k |X_k|^2 / n^2 with c_k = 2 except at DC and Nyquist.
// Throws InsufficientDataError for n < 8, DomainError for rate <= 0.
Spectrum periodogram(std::span<const double> values, double sample_rate_hz);

}  // namespace momenta

#endif
