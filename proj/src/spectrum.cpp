#include "momenta/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "momenta/errors.hpp"

namespace momenta {

double Spectrum::total_power() const {
    double s = 0.0;
    for (double p : power) s += p;
    return s;
}

std::size_t Spectrum::peak_bin() const {
    return static_cast<std::size_t>(
        std::max_element(power.begin(), power.end()) - power.begin());
}

Spectrum periodogram(std::span<const double> values, double sample_rate_hz) {
    const std::size_t n = values.size();
    if (n < 8) throw InsufficientDataError("periodogram: need at least 8 samples");
    if (!(sample_rate_hz > 0.0)) throw DomainError("periodogram: sample rate must be positive");

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);

    Spectrum s;
    s.sample_rate_hz = sample_rate_hz;
    const std::size_t n_bins = n / 2 + 1;
    s.freq_hz.resize(n_bins);
    s.power.resize(n_bins);

    // Direct DFT; window sizes here are a few thousand samples at most,
    // so O(n^2) stays well under a millisecond per call at -O2.
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < n_bins; ++k) {
        double re = 0.0, im = 0.0;
        const double w = -2.0 * std::numbers::pi * static_cast<double>(k) / dn;
        for (std::size_t j = 0; j < n; ++j) {
            double ph = w * static_cast<double>(j);
            double x = values[j] - mean;
            re += x * std::cos(ph);
            im += x * std::sin(ph);
        }
        bool two_sided_pair = k != 0 && !(n % 2 == 0 && k == n / 2);
        double c = two_sided_pair ? 2.0 : 1.0;
        s.freq_hz[k] = sample_rate_hz * static_cast<double>(k) / dn;
        s.power[k] = c * (re * re + im * im) / (dn * dn);
    }
    return s;
}

}  // namespace momenta
