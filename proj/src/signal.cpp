#include "momenta/signal.hpp"

#include <array>
#include <cmath>

#include "momenta/errors.hpp"

namespace momenta {

namespace {

const std::array<RhythmBand, 5> kBands = {{
    {"theta", 4.0, 7.0},
    {"alpha", 8.0, 13.0},
    {"SMR", 13.0, 15.0},
    {"beta", 16.0, 31.0},
    {"gamma", 25.0, 100.0},
}};

}  // namespace

std::span<const RhythmBand> canonical_bands() { return kBands; }

std::vector<RhythmBand> classify_band(double freq_hz) {
    if (!(freq_hz > 0.0) || !std::isfinite(freq_hz)) {
        throw DomainError("classify_band: frequency must be positive and finite");
    }
    std::vector<RhythmBand> hits;
    for (const auto& b : kBands) {
        if (freq_hz >= b.lo_hz && freq_hz <= b.hi_hz) hits.push_back(b);
    }
    return hits;
}

double hr_to_rr(double hr_bpm) {
    if (!(hr_bpm > 0.0) || !std::isfinite(hr_bpm)) {
        throw DomainError("hr_to_rr: heart rate must be positive and finite");
    }
    return 60000.0 / hr_bpm;
}

int rr_to_hr_integer(double rr_ms) {
    if (!(rr_ms > 0.0) || !std::isfinite(rr_ms)) {
        throw DomainError("rr_to_hr_integer: interval must be positive and finite");
    }
    return static_cast<int>(60000.0 / rr_ms);
}

double magnitude(const TriaxSample& s) {
    return std::sqrt(s.ax * s.ax + s.ay * s.ay + s.az * s.az);
}

}  // namespace momenta
