#include "momenta/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "momenta/csv.hpp"
#include "momenta/errors.hpp"
#include "momenta/signal.hpp"
#include "momenta/simulator.hpp"

namespace momenta {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
    if (width_ms <= 0 || stride_ms <= 0) {
        throw DomainError("window width and stride must be positive");
    }
    if (k < 1) throw DomainError("k must be >= 1");
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
        throw DomainError("correlation threshold must be in (0, 1)");
    }
    if (!accel_path && !rr_path && !eeg_path) {
        throw DomainError("at least one input stream is required");
    }
}

RunConfig config_from_json(const std::string& text, RunConfig base) {
    json j = json::parse(text);
    RunConfig c = std::move(base);
    if (j.contains("accel")) c.accel_path = j.at("accel").get<std::string>();
    if (j.contains("rr")) c.rr_path = j.at("rr").get<std::string>();
    if (j.contains("eeg")) c.eeg_path = j.at("eeg").get<std::string>();
    if (j.contains("truth")) c.truth_path = j.at("truth").get<std::string>();
    if (j.contains("window_ms")) c.width_ms = j.at("window_ms").get<std::int64_t>();
    if (j.contains("stride_ms")) c.stride_ms = j.at("stride_ms").get<std::int64_t>();
    if (j.contains("k")) c.k = j.at("k").get<std::size_t>();
    if (j.contains("threshold")) c.threshold = j.at("threshold").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("accel_in_g")) c.accel_in_g = j.at("accel_in_g").get<bool>();
    if (j.contains("metric_binding")) {
        std::string b = j.at("metric_binding").get<std::string>();
        if (b == "normal") {
            c.metric_binding = MetricReference::normal;
        } else if (b == "uniform") {
            c.metric_binding = MetricReference::uniform;
        } else {
            throw DataError("config: metric_binding must be 'normal' or 'uniform'");
        }
    }
    return c;
}

namespace {

MetricReference other_ref(MetricReference r) {
    return r == MetricReference::normal ? MetricReference::uniform : MetricReference::normal;
}

const char* ref_name(MetricReference r) {
    return r == MetricReference::normal ? "normal" : "uniform";
}

StreamReport build_stream(const std::string& name, const std::vector<TimedValue>& series,
                          const RunConfig& cfg, const std::vector<PhaseSpan>& phases) {
    Windowing w = sliding_windows(series, cfg.width_ms, cfg.stride_ms);
    if (w.windows.empty()) {
        throw DataError("stream '" + name + "': no analyzable windows " +
                        "(all " + std::to_string(w.skipped) + " candidate windows too small)");
    }
    StreamReport sr;
    sr.name = name;
    sr.windows_emitted = w.windows.size();
    sr.windows_skipped = w.skipped;
    sr.moments = window_moments(w);

    MomentTrajectory traj = MomentTrajectory::from_windows(name, sr.moments);
    sr.windows_shape_undefined = traj.excluded;
    sr.metric = metric_series(traj, cfg.metric_binding, "METRIC");
    sr.metric3 = metric_series(traj, other_ref(cfg.metric_binding), "METRIC3");
    if (!phases.empty()) {
        annotate_phases(sr.metric, phases);
        annotate_phases(sr.metric3, phases);
        sr.slopes = phase_slopes(sr.metric, phases);
    }
    if (traj.points.size() >= 2) sr.speed = trajectory_speed(traj);
    return sr;
}

json moments_json(const std::vector<MomentVector>& moments) {
    json arr = json::array();
    for (const auto& mv : moments) {
        json m{{"start_ms", mv.start_ms}, {"end_ms", mv.end_ms},     {"n", mv.n},
               {"mean", mv.mean},         {"std", mv.std_dev},       {"shape_defined", mv.shape_defined}};
        if (mv.shape_defined) {
            m["skewness"] = mv.skewness;
            m["excess_kurtosis"] = mv.excess_kurtosis;
        }
        arr.push_back(std::move(m));
    }
    return arr;
}

json metric_json(const MetricSeries& s) {
    json points = json::array();
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        json p{{"t_ms", s.t_ms[i]}, {"value", s.values[i]}};
        if (!s.phases.empty() && !s.phases[i].empty()) p["phase"] = s.phases[i];
        points.push_back(std::move(p));
    }
    return json{{"name", s.name}, {"reference", ref_name(s.reference)}, {"points", points}};
}

json correlation_json(const CorrelationMatrix& cm) {
    json rows = json::array();
    std::size_t m = cm.labels.size();
    for (std::size_t i = 0; i < m; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m; ++j) row.push_back(cm.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"labels", cm.labels}, {"r", rows}};
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << text;
}

std::string fixed(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

const StreamReport* Report::stream(const std::string& name) const {
    for (const auto& s : streams) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

Report analyze(const RunConfig& config) {
    config.validate();
    Report rep;
    rep.config = config;

    std::vector<PhaseSpan> phases;
    if (config.truth_path) {
        std::ifstream in(*config.truth_path, std::ios::binary);
        if (!in) throw DataError("cannot open '" + *config.truth_path + "'");
        phases = phases_from_truth(parse_truth_csv(in));
    }

    if (config.accel_path) {
        std::ifstream in(*config.accel_path, std::ios::binary);
        if (!in) throw DataError("cannot open '" + *config.accel_path + "'");
        auto parsed = parse_triax_csv(in);
        for (const auto& w : parsed.warnings) {
            rep.parse_warnings.push_back({"accel_mag", w.line, w.message});
        }
        std::vector<TimedValue> mag;
        mag.reserve(parsed.samples.size());
        double scale = config.accel_in_g ? kGravity : 1.0;
        for (auto s : parsed.samples) {
            s.ax *= scale;
            s.ay *= scale;
            s.az *= scale;
            mag.push_back({s.t_ms, magnitude(s)});
        }
        StreamReport sr = build_stream("accel_mag", mag, config, phases);

        MomentTrajectory traj = MomentTrajectory::from_windows("accel_mag", sr.moments);
        if (traj.points.size() >= 8) {
            rep.fatigue = fatigue_correlation(traj, config.threshold);
        }
        FeatureMatrix fm = moment_features(sr.moments);
        if (fm.n_rows >= std::max<std::size_t>(config.k, 2)) {
            try {
                rep.clusters = kmeans(zscore(fm), config.k, config.seed);
            } catch (const DegenerateInputError&) {
                // constant feature column (e.g. zero-variance stream): no clustering
            }
        }
        rep.streams.push_back(std::move(sr));
    }

    if (config.rr_path) {
        std::ifstream in(*config.rr_path, std::ios::binary);
        if (!in) throw DataError("cannot open '" + *config.rr_path + "'");
        auto parsed = parse_rr_csv(in);
        for (const auto& w : parsed.warnings) {
            rep.parse_warnings.push_back({"rr", w.line, w.message});
        }
        std::vector<TimedValue> vals;
        vals.reserve(parsed.samples.size());
        for (const auto& s : parsed.samples) vals.push_back({s.t_ms, s.rr_ms});
        rep.streams.push_back(build_stream("rr", vals, config, phases));
    }

    if (config.eeg_path) {
        std::ifstream in(*config.eeg_path, std::ios::binary);
        if (!in) throw DataError("cannot open '" + *config.eeg_path + "'");
        auto parsed = parse_eeg_csv(in);
        for (const auto& w : parsed.warnings) {
            rep.parse_warnings.push_back({"eeg", w.line, w.message});
        }
        std::vector<TimedValue> att, rel, eye;
        att.reserve(parsed.samples.size());
        rel.reserve(parsed.samples.size());
        eye.reserve(parsed.samples.size());
        for (const auto& s : parsed.samples) {
            att.push_back({s.t_ms, s.att});
            rel.push_back({s.t_ms, s.rel});
            eye.push_back({s.t_ms, s.eye});
        }
        StreamReport a = build_stream("eeg_att", att, config, phases);
        StreamReport r = build_stream("eeg_rel", rel, config, phases);
        StreamReport e = build_stream("eeg_eye", eye, config, phases);

        // raw per-sample correlations (aligned by construction)
        if (parsed.samples.size() >= 3) {
            std::vector<NamedSeries> raw(3);
            raw[0].name = "ATT";
            raw[1].name = "REL";
            raw[2].name = "EYE";
            for (const auto& s : parsed.samples) {
                raw[0].values.push_back(s.att);
                raw[1].values.push_back(s.rel);
                raw[2].values.push_back(s.eye);
            }
            rep.eeg_raw = pearson_matrix(raw);
        }

        // metric-series correlations, joined on window start time since
        // channels may drop different shape-undefined windows
        {
            std::vector<NamedSeries> ms(3);
            ms[0].name = "ATT";
            ms[1].name = "REL";
            ms[2].name = "EYE";
            std::size_t ia = 0, ir = 0, ie = 0;
            while (ia < a.metric.t_ms.size() && ir < r.metric.t_ms.size() &&
                   ie < e.metric.t_ms.size()) {
                std::int64_t ta = a.metric.t_ms[ia], tr = r.metric.t_ms[ir],
                             te = e.metric.t_ms[ie];
                std::int64_t lead = std::max({ta, tr, te});
                if (ta < lead) {
                    ++ia;
                } else if (tr < lead) {
                    ++ir;
                } else if (te < lead) {
                    ++ie;
                } else {
                    ms[0].values.push_back(a.metric.values[ia++]);
                    ms[1].values.push_back(r.metric.values[ir++]);
                    ms[2].values.push_back(e.metric.values[ie++]);
                }
            }
            if (ms[0].values.size() >= 3) rep.eeg_metric = pearson_matrix(ms);
        }

        rep.streams.push_back(std::move(a));
        rep.streams.push_back(std::move(r));
        rep.streams.push_back(std::move(e));
    }

    return rep;
}

json Report::to_json() const {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};

    json cfg;
    cfg["accel"] = config.accel_path ? json(*config.accel_path) : json(nullptr);
    cfg["rr"] = config.rr_path ? json(*config.rr_path) : json(nullptr);
    cfg["eeg"] = config.eeg_path ? json(*config.eeg_path) : json(nullptr);
    cfg["truth"] = config.truth_path ? json(*config.truth_path) : json(nullptr);
    cfg["window_ms"] = config.width_ms;
    cfg["stride_ms"] = config.stride_ms;
    cfg["metric_binding"] = ref_name(config.metric_binding);
    cfg["k"] = config.k;
    cfg["threshold"] = config.threshold;
    cfg["seed"] = config.seed;
    cfg["out"] = config.out_dir;
    cfg["accel_in_g"] = config.accel_in_g;
    j["config"] = std::move(cfg);

    json streams_j;
    for (const auto& s : streams) {
        json sj;
        sj["windows"] = {{"emitted", s.windows_emitted},
                         {"skipped", s.windows_skipped},
                         {"shape_undefined", s.windows_shape_undefined}};
        sj["moments"] = moments_json(s.moments);
        sj["metrics"] = {{"METRIC", metric_json(s.metric)}, {"METRIC3", metric_json(s.metric3)}};
        if (s.speed) {
            sj["trajectory"] = {{"points", s.metric.values.size()},
                                {"mean_step", s.speed->mean_step},
                                {"net_displacement", s.speed->net_displacement}};
        }
        if (s.slopes) {
            json slopes = json::array();
            for (const auto& ps : s.slopes->phases) {
                json pj{{"label", ps.label},   {"start_ms", ps.start_ms},
                        {"end_ms", ps.end_ms}, {"n", ps.n},
                        {"defined", ps.defined}};
                if (ps.defined) {
                    pj["slope_per_s"] = ps.slope_per_s;
                    pj["intercept"] = ps.intercept;
                    pj["residual_rms"] = ps.residual_rms;
                }
                slopes.push_back(std::move(pj));
            }
            sj["phase_slopes"] = std::move(slopes);
        }
        streams_j[s.name] = std::move(sj);
    }
    j["streams"] = std::move(streams_j);

    if (clusters) {
        json cj;
        cj["k"] = clusters->centroids.n_rows;
        cj["seed"] = clusters->seed;
        cj["iterations"] = clusters->iterations;
        cj["inertia"] = clusters->inertia;
        cj["assignments"] = clusters->assignments;
        json cents = json::array();
        for (std::size_t r = 0; r < clusters->centroids.n_rows; ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < clusters->centroids.n_cols(); ++c) {
                row.push_back(clusters->centroids.at(r, c));
            }
            cents.push_back(std::move(row));
        }
        cj["centroid_columns"] = clusters->centroids.columns;
        cj["centroids"] = std::move(cents);
        j["clusters"] = std::move(cj);
    }
    if (fatigue) {
        j["fatigue"] = {{"r", fatigue->r},
                        {"n", fatigue->n},
                        {"threshold", fatigue->threshold},
                        {"pronounced", fatigue->pronounced}};
    }
    if (eeg_raw || eeg_metric) {
        json corr;
        if (eeg_raw) corr["eeg_raw"] = correlation_json(*eeg_raw);
        if (eeg_metric) corr["eeg_metric"] = correlation_json(*eeg_metric);
        j["correlations"] = std::move(corr);
    }
    if (!parse_warnings.empty()) {
        json warns = json::array();
        for (const auto& w : parse_warnings) {
            warns.push_back({{"stream", w.stream}, {"line", w.line}, {"message", w.message}});
        }
        j["warnings"] = std::move(warns);
    }
    return j;
}

std::vector<std::string> write_report_files(const Report& report) {
    fs::path dir(report.config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) {
        throw DataError("cannot create output directory '" + dir.string() + "'");
    }
    std::vector<std::string> written;

    write_text_file(dir / "report.json", report.to_json().dump(2) + "\n");
    written.push_back("report.json");

    for (const auto& s : report.streams) {
        // moments diagram table
        {
            std::ostringstream os;
            os << "window,start_ms,end_ms,n,mean,std,skewness,excess_kurtosis,metric,metric3\n";
            std::size_t metric_i = 0;
            for (std::size_t i = 0; i < s.moments.size(); ++i) {
                const auto& mv = s.moments[i];
                os << i << ',' << mv.start_ms << ',' << mv.end_ms << ',' << mv.n << ','
                   << fixed(mv.mean) << ',' << fixed(mv.std_dev) << ',';
                if (mv.shape_defined) {
                    os << fixed(mv.skewness) << ',' << fixed(mv.excess_kurtosis) << ','
                       << fixed(s.metric.values[metric_i]) << ','
                       << fixed(s.metric3.values[metric_i]);
                    ++metric_i;
                } else {
                    os << ",,,";
                }
                os << '\n';
            }
            std::string name = "moments_" + s.name + ".csv";
            write_text_file(dir / name, os.str());
            written.push_back(name);
        }
        // metric vs time table
        {
            std::ostringstream os;
            os << "t_ms,METRIC,METRIC3,phase\n";
            for (std::size_t i = 0; i < s.metric.values.size(); ++i) {
                os << s.metric.t_ms[i] << ',' << fixed(s.metric.values[i]) << ','
                   << fixed(s.metric3.values[i]) << ','
                   << (s.metric.phases.empty() ? "" : s.metric.phases[i]) << '\n';
            }
            std::string name = "metric_" + s.name + ".csv";
            write_text_file(dir / name, os.str());
            written.push_back(name);
        }
    }

    if (report.clusters) {
        const auto* accel = report.stream("accel_mag");
        std::ostringstream os;
        os << "window,start_ms,mean,std,skewness,excess_kurtosis,cluster\n";
        std::size_t row = 0;
        for (std::size_t i = 0; accel && i < accel->moments.size(); ++i) {
            const auto& mv = accel->moments[i];
            if (!mv.shape_defined) continue;
            os << i << ',' << mv.start_ms << ',' << fixed(mv.mean) << ',' << fixed(mv.std_dev)
               << ',' << fixed(mv.skewness) << ',' << fixed(mv.excess_kurtosis) << ','
               << report.clusters->assignments[row] << '\n';
            ++row;
        }
        write_text_file(dir / "clusters.csv", os.str());
        written.push_back("clusters.csv");
    }

    auto write_corr = [&](const CorrelationMatrix& cm, const std::string& name) {
        std::ostringstream os;
        os << "label";
        for (const auto& l : cm.labels) os << ',' << l;
        os << '\n';
        for (std::size_t i = 0; i < cm.labels.size(); ++i) {
            os << cm.labels[i];
            for (std::size_t jj = 0; jj < cm.labels.size(); ++jj) os << ',' << fixed(cm.at(i, jj));
            os << '\n';
        }
        write_text_file(dir / name, os.str());
        written.push_back(name);
    };
    if (report.eeg_raw) write_corr(*report.eeg_raw, "correlation_eeg_raw.csv");
    if (report.eeg_metric) write_corr(*report.eeg_metric, "correlation_eeg_metric.csv");

    return written;
}

json CompareResult::to_json() const {
    return json{{"claim", claim},     {"modality", modality},
                {"speed_a", speed_a}, {"speed_b", speed_b},
                {"ratio", ratio},     {"faster", faster},
                {"claim_supported", claim_supported}};
}

CompareResult compare_reports(const json& report_a, const json& report_b,
                              const std::string& claim, const std::string& modality) {
    if (claim != "fitness-speed" && claim != "workload-speed") {
        throw DomainError("unknown claim '" + claim + "'");
    }
    auto speed_of = [&](const json& rep, const char* which) {
        if (!rep.contains("streams") || !rep.at("streams").contains(modality)) {
            throw DomainError(std::string("report ") + which + " has no '" + modality +
                              "' stream");
        }
        const auto& s = rep.at("streams").at(modality);
        if (!s.contains("trajectory")) {
            throw DomainError(std::string("report ") + which + ": stream '" + modality +
                              "' has no trajectory");
        }
        return s.at("trajectory").at("mean_step").get<double>();
    };
    CompareResult res;
    res.claim = claim;
    res.modality = modality;
    res.speed_a = speed_of(report_a, "A");
    res.speed_b = speed_of(report_b, "B");
    if (res.speed_b == 0.0 && res.speed_a == 0.0) {
        res.ratio = 1.0;
    } else if (res.speed_b == 0.0) {
        res.ratio = std::numeric_limits<double>::infinity();
    } else {
        res.ratio = res.speed_a / res.speed_b;
    }
    double rel_gap = std::fabs(res.speed_a - res.speed_b) /
                     std::max({std::fabs(res.speed_a), std::fabs(res.speed_b), 1e-300});
    if (rel_gap < 1e-9) {
        res.faster = "tie";
    } else {
        res.faster = res.speed_a > res.speed_b ? "a" : "b";
    }
    res.claim_supported = res.faster == "a";
    return res;
}

}  // namespace momenta
