#ifndef MOMENTA_SIGNAL_HPP
#define MOMENTA_SIGNAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace momenta {

// Tri-axial accelerometer reading, axes in m/s^2, t in ms since session start.
struct TriaxSample {
    std::int64_t t_ms = 0;
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
};

// Inter-beat interval in milliseconds at time t.
struct RRInterval {
    std::int64_t t_ms = 0;
    double rr_ms = 0.0;
};

// Consumer-headset scalar levels: attention/relaxation in [0,100], eye-blink >= 0.
struct EEGSample {
    std::int64_t t_ms = 0;
    double att = 0.0;
    double rel = 0.0;
    double eye = 0.0;
};

// Named frequency band with closed [lo, hi] edges in Hz.
struct RhythmBand {
    std::string name;
    double lo_hz = 0.0;
    double hi_hz = 0.0;
};

// The five canonical EEG rhythm bands. Edges overlap (alpha/SMR meet at 13 Hz,
// beta and gamma share 25-31 Hz) and leave gaps at (7,8) and (15,16) Hz.
std::span<const RhythmBand> canonical_bands();

// Every canonical band whose closed interval contains freq_hz, in ascending
// lo_hz order. Overlaps yield several bands; gap frequencies yield none.
// Throws DomainError for freq_hz <= 0 or non-finite.
std::vector<RhythmBand> classify_band(double freq_hz);

// 60000 / hr_bpm, unrounded. Throws DomainError for hr_bpm <= 0 or non-finite.
double hr_to_rr(double hr_bpm);

// Integer beats-per-minute as consumer devices report it: 60000 / rr_ms
// truncated toward zero. Lossy on purpose; see rr_to_hr tests for the
// precision-gap demonstration. Throws DomainError for rr_ms <= 0.
int rr_to_hr_integer(double rr_ms);

// Euclidean magnitude of the three axes, orientation-invariant.
double magnitude(const TriaxSample& s);

// Plausibility bound for RR validation warnings (not rejection).
inline constexpr double kRRPlausibleLowMs = 200.0;
inline constexpr double kRRPlausibleHighMs = 3000.0;

// Standard gravity, used by the CLI's g -> m/s^2 ingestion scaling.
inline constexpr double kGravity = 9.81;

}  // namespace momenta

#endif
