#include "momenta/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "momenta/errors.hpp"
#include "momenta/rng.hpp"

namespace momenta {

namespace {

// --- tuning constants -------------------------------------------------
// These numbers are free parameters; test_simulator.cpp locks the
// behavioral guarantees they were tuned for across a seed sweep.

// Fatigue accumulation rate per second at unit intensity and fitness 1.
constexpr double kLoadRatePerS = 0.004;
// Exponential recovery time constant during rest.
constexpr double kRecoveryTauS = 60.0;
// RR baseline and response.
constexpr double kRRSigmaMs = 30.0;
constexpr double kRRShapeScaleMs = 60.0;  // kappa = scale * fatigue
constexpr double kRRMeanDropFrac = 0.25;
// Accelerometer shape modulation for loaded sessions, relative to the
// class sigma: kappa/sigma spans [0.2, 2.5] as the latent runs 0 -> 1.
constexpr double kAccelShapeLo = 0.2;
constexpr double kAccelShapeHi = 2.5;
// EEG channel bases, spreads and shape coupling (kappa/sigma range).
constexpr double kAttBase = 35.0, kAttSigma = 6.0;
constexpr double kRelBase = 40.0, kRelSigma = 6.0;
constexpr double kEyeBase = 20.0, kEyeSigma = 5.0;
constexpr double kEEGShapeLo = 0.25, kEEGShapeHi = 2.5;

// Standardized two-point variable (mean 0, var 1, skew ~2.34, excess
// kurtosis ~3.47). Bounded, unlike an exponential, so windowed moment
// ESTIMATES stay tight and the latent signal survives estimator noise.
constexpr double kShapeP = 0.12;
inline double shape_noise(rng::Engine& eng) {
    static const double s = std::sqrt(kShapeP * (1.0 - kShapeP));
    static const double hi = (1.0 - kShapeP) / s;
    static const double lo = -kShapeP / s;
    return eng.uniform01() < kShapeP ? hi : lo;
}

struct ClassParams {
    double base;        // magnitude center, m/s^2
    double sigma;       // core spread
    double burst_prob;  // heavy-tail mixture weight
    double burst_sigma;
};

ClassParams class_params(ActivityClass a) {
    switch (a) {
        case ActivityClass::rest: return {9.83, 0.06, 0.0, 0.0};
        case ActivityClass::walk: return {12.50, 0.70, 0.0, 0.0};
        case ActivityClass::squat: return {14.50, 1.50, 0.20, 3.2};
        case ActivityClass::dumbbell: return {13.00, 0.90, 0.10, 2.2};
    }
    throw DomainError("unknown activity class");
}

// Workload normalized to a [0, ~1] intensity so that different activity
// units (m/s, kg) share one fatigue scale.
double intensity(ActivityClass a, double workload) {
    switch (a) {
        case ActivityClass::rest: return 0.0;
        case ActivityClass::walk: return workload / 6.75;
        case ActivityClass::squat: return workload;
        case ActivityClass::dumbbell: return workload / 3.0;
    }
    return 0.0;
}

// Snap to the double nearest the k-decimal value: scale is an exact power
// of ten, so round(v*scale)/scale is one correctly-rounded division away
// from the decimal the CSV writer prints, making write -> parse exact.
double quantize(double v, double scale) { return std::round(v * scale) / scale; }

// Latent in [0,1]: a deterministic full-range triangle sweep over the
// session plus a seeded AR(1) wobble, reflected back into the band. The
// sweep guarantees dynamic range on every seed; the walk decorrelates
// sessions from each other.
class Latent01 {
public:
    Latent01(std::uint64_t seed, std::int64_t total_ms) : total_ms_(total_ms) {
        rng::Engine eng(seed, "latent");
        std::size_t nodes = static_cast<std::size_t>(total_ms / 1000) + 2;
        walk_.resize(nodes);
        double w = 0.0;
        for (auto& node : walk_) {
            w = 0.97 * w + 0.06 * eng.normal();
            node = w;
        }
    }

    double at(std::int64_t t_ms) const {
        double pos = static_cast<double>(t_ms) / 1000.0;
        auto i = static_cast<std::size_t>(pos);
        double frac = pos - static_cast<double>(i);
        std::size_t j = std::min(i + 1, walk_.size() - 1);
        i = std::min(i, walk_.size() - 1);
        double w = walk_[i] + frac * (walk_[j] - walk_[i]);
        double x = static_cast<double>(t_ms) / static_cast<double>(total_ms_);
        double tri = x < 0.5 ? 2.0 * x : 2.0 - 2.0 * x;
        return reflect01(tri + w);
    }

private:
    static double reflect01(double x) {
        double r = std::fmod(x, 2.0);
        if (r < 0.0) r += 2.0;
        return r <= 1.0 ? r : 2.0 - r;
    }

    std::int64_t total_ms_;
    std::vector<double> walk_;
};

// Piecewise-deterministic accumulated fatigue: linear growth under load,
// exponential decay at rest.
class FatigueLevel {
public:
    explicit FatigueLevel(const SessionProfile& p) {
        double f = 0.0;
        std::int64_t t = 0;
        for (const auto& ph : p.phases) {
            Segment seg;
            seg.start_ms = t;
            seg.f0 = f;
            seg.rate_per_s = kLoadRatePerS * intensity(ph.activity, ph.workload) / p.fitness;
            segments_.push_back(seg);
            double dt_s = static_cast<double>(ph.duration_ms) / 1000.0;
            f = value_in(seg, dt_s);
            t += ph.duration_ms;
        }
        end_ms_ = t;
    }

    double at(std::int64_t t_ms) const {
        std::size_t i = segments_.size() - 1;
        while (i > 0 && segments_[i].start_ms > t_ms) --i;
        double dt_s = static_cast<double>(t_ms - segments_[i].start_ms) / 1000.0;
        return value_in(segments_[i], dt_s);
    }

private:
    struct Segment {
        std::int64_t start_ms = 0;
        double f0 = 0.0;
        double rate_per_s = 0.0;  // 0 means resting (decay)
    };

    static double value_in(const Segment& s, double dt_s) {
        if (s.rate_per_s > 0.0) return s.f0 + s.rate_per_s * dt_s;
        return s.f0 * std::exp(-dt_s / kRecoveryTauS);
    }

    std::vector<Segment> segments_;
    std::int64_t end_ms_ = 0;
};

void validate(const SessionProfile& p) {
    if (p.phases.empty()) throw DomainError("profile needs at least one phase");
    for (const auto& ph : p.phases) {
        if (ph.duration_ms <= 0) {
            throw DomainError("phase '" + ph.label + "' has non-positive duration");
        }
        if (ph.workload < 0.0) {
            throw DomainError("phase '" + ph.label + "' has negative workload");
        }
    }
    if (!(p.fitness > 0.0) || p.fitness > 1.0) {
        throw DomainError("fitness must be in (0, 1]");
    }
    auto check_rate = [](double r, const char* name) {
        if (!(r > 0.0) || r > 1000.0) {
            throw DomainError(std::string(name) + " rate must be in (0, 1000] Hz");
        }
    };
    check_rate(p.rates.accel_hz, "accel");
    check_rate(p.rates.rr_hz, "rr");
    check_rate(p.rates.eeg_hz, "eeg");
}

const PhaseSpec& phase_at(const SessionProfile& p, std::int64_t t_ms) {
    std::int64_t t = 0;
    for (const auto& ph : p.phases) {
        t += ph.duration_ms;
        if (t_ms < t) return ph;
    }
    return p.phases.back();
}

std::int64_t sample_time(std::size_t index, double rate_hz) {
    return static_cast<std::int64_t>(
        std::floor(static_cast<double>(index) * 1000.0 / rate_hz + 0.5));
}

}  // namespace

std::string to_string(ActivityClass a) {
    switch (a) {
        case ActivityClass::rest: return "rest";
        case ActivityClass::walk: return "walk";
        case ActivityClass::squat: return "squat";
        case ActivityClass::dumbbell: return "dumbbell";
    }
    return "?";
}

std::optional<ActivityClass> activity_from_string(const std::string& s) {
    if (s == "rest") return ActivityClass::rest;
    if (s == "walk") return ActivityClass::walk;
    if (s == "squat") return ActivityClass::squat;
    if (s == "dumbbell") return ActivityClass::dumbbell;
    return std::nullopt;
}

std::int64_t SessionProfile::total_ms() const {
    std::int64_t t = 0;
    for (const auto& ph : phases) t += ph.duration_ms;
    return t;
}

std::vector<PhaseSpan> SessionProfile::phase_spans() const {
    std::vector<PhaseSpan> spans;
    std::int64_t t = 0;
    for (const auto& ph : phases) {
        spans.push_back({ph.label, t, t + ph.duration_ms});
        t += ph.duration_ms;
    }
    return spans;
}

SyntheticSession generate_session(const SessionProfile& profile) {
    validate(profile);
    SyntheticSession out;
    const std::int64_t total = profile.total_ms();
    const bool loaded = profile.fatigue == FatigueState::loaded;

    Latent01 latent(profile.seed, total);
    FatigueLevel fatigue(profile);

    // accelerometer: magnitude distribution is the controlled quantity;
    // the direction is a small wobble around vertical
    {
        rng::Engine eng(profile.seed, "accel");
        for (std::size_t i = 0;; ++i) {
            std::int64_t t = sample_time(i, profile.rates.accel_hz);
            if (t >= total) break;
            const auto& ph = phase_at(profile, t);
            ClassParams cp = class_params(ph.activity);
            double u_burst = eng.uniform01();
            double z = eng.normal();
            double e = shape_noise(eng);
            double sigma = (cp.burst_prob > 0.0 && u_burst < cp.burst_prob) ? cp.burst_sigma
                                                                            : cp.sigma;
            double m = cp.base + sigma * z;
            if (loaded) {
                double kappa = cp.sigma * (kAccelShapeLo +
                                           (kAccelShapeHi - kAccelShapeLo) * latent.at(t));
                m += kappa * e;
            }
            m = std::max(m, 0.05);
            double tilt = 0.12 * eng.uniform01();
            double azimuth = 6.283185307179586 * eng.uniform01();
            TriaxSample s;
            s.t_ms = t;
            s.ax = quantize(m * std::sin(tilt) * std::cos(azimuth), 1e6);
            s.ay = quantize(m * std::sin(tilt) * std::sin(azimuth), 1e6);
            s.az = quantize(m * std::cos(tilt), 1e6);
            out.triax.push_back(s);
        }
    }

    // rr: fixed-rate sample of the instantaneous inter-beat interval
    {
        rng::Engine eng(profile.seed, "rr");
        const double mu_base = 1000.0 * (0.8 + 0.2 * profile.fitness);
        for (std::size_t i = 0;; ++i) {
            std::int64_t t = sample_time(i, profile.rates.rr_hz);
            if (t >= total) break;
            double f = fatigue.at(t);
            double mu = mu_base * (1.0 - kRRMeanDropFrac * f / (1.0 + f));
            double kappa = kRRShapeScaleMs * f;
            double v = mu + kRRSigmaMs * eng.normal() + kappa * shape_noise(eng);
            v = std::clamp(v, 250.0, 2800.0);
            out.rr.push_back({t, quantize(v, 1e3)});
        }
    }

    // eeg: constant channel means, shape driven by the latent; raw values
    // stay uncorrelated because every channel draws its own noise
    {
        rng::Engine att_eng(profile.seed, "eeg-att");
        rng::Engine rel_eng(profile.seed, "eeg-rel");
        rng::Engine eye_eng(profile.seed, "eeg-eye");
        for (std::size_t i = 0;; ++i) {
            std::int64_t t = sample_time(i, profile.rates.eeg_hz);
            if (t >= total) break;
            double a = latent.at(t);
            double coup = kEEGShapeLo + (kEEGShapeHi - kEEGShapeLo) * a;
            double anti = kEEGShapeLo + (kEEGShapeHi - kEEGShapeLo) * (1.0 - a);
            auto channel = [](rng::Engine& eng, double base, double sigma, double ratio,
                              double hi) {
                double v = base + sigma * eng.normal() + sigma * ratio * shape_noise(eng);
                return quantize(std::clamp(v, 0.0, hi), 10.0);
            };
            EEGSample s;
            s.t_ms = t;
            s.att = channel(att_eng, kAttBase, kAttSigma, coup, 100.0);
            s.rel = channel(rel_eng, kRelBase, kRelSigma, coup, 100.0);
            s.eye = channel(eye_eng, kEyeBase, kEyeSigma, anti, 1e9);
            out.eeg.push_back(s);
        }
    }

    // ground truth on a 1 s grid
    for (std::int64_t t = 0; t < total; t += 1000) {
        const auto& ph = phase_at(profile, t);
        out.truth.push_back({t, ph.label, to_string(ph.activity), quantize(latent.at(t), 1e6)});
    }
    return out;
}

namespace {

SessionProfile make_profile(std::string name, std::vector<PhaseSpec> phases, double fitness,
                            FatigueState state = FatigueState::fresh) {
    SessionProfile p;
    p.name = std::move(name);
    p.phases = std::move(phases);
    p.fitness = fitness;
    p.fatigue = state;
    return p;
}

std::vector<PhaseSpec> exercise_phases(ActivityClass a, double workload,
                                       std::int64_t load_ms = 300'000) {
    return {
        {"warmup", 60'000, ActivityClass::rest, 0.0},
        {"load", load_ms, a, workload},
        {"recovery", 60'000, ActivityClass::rest, 0.0},
    };
}

}  // namespace

std::vector<SessionProfile> reference_profiles() {
    std::vector<SessionProfile> out;
    // the four walking loads
    out.push_back(make_profile("walk-very-low", exercise_phases(ActivityClass::walk, 3.64), 0.9));
    out.push_back(make_profile("walk-comfort", exercise_phases(ActivityClass::walk, 5.20), 0.9));
    out.push_back(make_profile("walk-high", exercise_phases(ActivityClass::walk, 6.20), 0.9));
    out.push_back(make_profile("walk-max", exercise_phases(ActivityClass::walk, 6.75), 0.9));
    // squats to fatigue, trained vs untrained
    out.push_back(make_profile("squat-trained",
                               exercise_phases(ActivityClass::squat, 1.0, 240'000), 0.9));
    out.push_back(make_profile("squat-untrained",
                               exercise_phases(ActivityClass::squat, 1.0, 240'000), 0.3));
    // dumbbell curls at three loads
    out.push_back(make_profile("dumbbell-0.5kg",
                               exercise_phases(ActivityClass::dumbbell, 0.5, 240'000), 0.9));
    out.push_back(make_profile("dumbbell-1kg",
                               exercise_phases(ActivityClass::dumbbell, 1.0, 240'000), 0.9));
    out.push_back(make_profile("dumbbell-3kg",
                               exercise_phases(ActivityClass::dumbbell, 3.0, 240'000), 0.9));
    // ambient daily states for the fatigue-correlation claim
    out.push_back(make_profile(
        "fatigue-fresh", {{"ambient", 900'000, ActivityClass::rest, 0.0}}, 0.9,
        FatigueState::fresh));
    out.push_back(make_profile(
        "fatigue-loaded", {{"ambient", 900'000, ActivityClass::rest, 0.0}}, 0.9,
        FatigueState::loaded));
    // three-class session for activity clustering
    {
        auto mixed = make_profile("mixed-activity",
                                  {{"rest", 120'000, ActivityClass::rest, 0.0},
                                   {"walk", 120'000, ActivityClass::walk, 5.20},
                                   {"squat", 120'000, ActivityClass::squat, 1.0}},
                                  0.9);
        mixed.rates.accel_hz = 200.0;  // tighter 4th-moment estimates per window
        out.push_back(mixed);
    }
    return out;
}

std::optional<SessionProfile> find_profile(const std::string& name) {
    for (auto& p : reference_profiles()) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

void write_truth_csv(std::ostream& out, const std::vector<TruthRow>& rows) {
    out << "window_start_ms,phase,activity,latent\n";
    char buf[32];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6f", r.latent);
        out << r.window_start_ms << ',' << r.phase << ',' << r.activity << ',' << buf << '\n';
    }
}

std::vector<TruthRow> parse_truth_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty truth file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "window_start_ms,phase,activity,latent") {
        throw FormatError("bad truth header: '" + line + "'");
    }
    std::vector<TruthRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string t, phase, activity, latent;
        if (!std::getline(ss, t, ',') || !std::getline(ss, phase, ',') ||
            !std::getline(ss, activity, ',') || !std::getline(ss, latent)) {
            throw RowError(lineno, "expected 4 fields");
        }
        TruthRow r;
        try {
            r.window_start_ms = std::stoll(t);
            r.latent = std::stod(latent);
        } catch (const std::exception&) {
            throw RowError(lineno, "bad number in truth row");
        }
        r.phase = phase;
        r.activity = activity;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<PhaseSpan> phases_from_truth(const std::vector<TruthRow>& rows) {
    std::vector<PhaseSpan> spans;
    if (rows.empty()) return spans;
    std::int64_t grid = rows.size() > 1 ? rows[1].window_start_ms - rows[0].window_start_ms
                                        : 1000;
    for (const auto& r : rows) {
        if (!spans.empty() && spans.back().label == r.phase) {
            spans.back().end_ms = r.window_start_ms + grid;
        } else {
            spans.push_back({r.phase, r.window_start_ms, r.window_start_ms + grid});
        }
    }
    return spans;
}

SessionProfile profile_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SessionProfile p;
    p.name = j.value("name", "custom");
    p.fitness = j.value("fitness", 0.9);
    std::string fs = j.value("fatigue_state", "fresh");
    if (fs == "fresh") {
        p.fatigue = FatigueState::fresh;
    } else if (fs == "loaded") {
        p.fatigue = FatigueState::loaded;
    } else {
        throw DataError("profile: fatigue_state must be 'fresh' or 'loaded'");
    }
    p.seed = j.value("seed", std::uint64_t{42});
    if (j.contains("rates")) {
        const auto& r = j.at("rates");
        p.rates.accel_hz = r.value("accel_hz", p.rates.accel_hz);
        p.rates.rr_hz = r.value("rr_hz", p.rates.rr_hz);
        p.rates.eeg_hz = r.value("eeg_hz", p.rates.eeg_hz);
    }
    if (!j.contains("phases") || !j.at("phases").is_array()) {
        throw DataError("profile: 'phases' array is required");
    }
    for (const auto& jp : j.at("phases")) {
        PhaseSpec ph;
        ph.label = jp.value("label", "phase" + std::to_string(p.phases.size() + 1));
        ph.duration_ms = jp.at("duration_ms").get<std::int64_t>();
        auto act = activity_from_string(jp.at("activity").get<std::string>());
        if (!act) throw DataError("profile: unknown activity '" +
                                  jp.at("activity").get<std::string>() + "'");
        ph.activity = *act;
        ph.workload = jp.value("workload", 0.0);
        p.phases.push_back(std::move(ph));
    }
    return p;
}

std::string profile_to_json(const SessionProfile& profile) {
    nlohmann::json j;
    j["name"] = profile.name;
    j["fitness"] = profile.fitness;
    j["fatigue_state"] = profile.fatigue == FatigueState::loaded ? "loaded" : "fresh";
    j["seed"] = profile.seed;
    j["rates"] = {{"accel_hz", profile.rates.accel_hz},
                  {"rr_hz", profile.rates.rr_hz},
                  {"eeg_hz", profile.rates.eeg_hz}};
    j["phases"] = nlohmann::json::array();
    for (const auto& ph : profile.phases) {
        j["phases"].push_back({{"label", ph.label},
                               {"duration_ms", ph.duration_ms},
                               {"activity", to_string(ph.activity)},
                               {"workload", ph.workload}});
    }
    return j.dump(2) + "\n";
}

}  // namespace momenta
