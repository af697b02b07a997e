// momenta - windowed moment analytics for wearable sensor streams.
// Subcommands: simulate, analyze, compare, bands.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "momenta/csv.hpp"
#include "momenta/errors.hpp"
#include "momenta/report.hpp"
#include "momenta/signal.hpp"
#include "momenta/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitClaimNotSupported = 4;

std::string default_out_dir() {
    if (const char* env = std::getenv("MOMENTA_OUT"); env && *env) return env;
    return ".";
}

void print_catalog(std::ostream& os) {
    os << "available profiles:\n";
    for (const auto& p : momenta::reference_profiles()) {
        os << "  " << p.name << "\n";
    }
}

int cmd_simulate(const std::string& profile_name, const std::string& profile_file,
                 std::uint64_t seed, bool seed_given, const std::string& out_dir) {
    momenta::SessionProfile profile;
    if (!profile_file.empty()) {
        std::ifstream in(profile_file, std::ios::binary);
        if (!in) throw momenta::DataError("cannot open '" + profile_file + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        profile = momenta::profile_from_json(ss.str());
    } else {
        auto found = momenta::find_profile(profile_name);
        if (!found) {
            std::cerr << "unknown profile '" << profile_name << "'\n";
            print_catalog(std::cerr);
            return kExitUsage;
        }
        profile = *found;
    }
    if (seed_given) profile.seed = seed;

    momenta::SyntheticSession session = momenta::generate_session(profile);

    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) {
        throw momenta::DataError("cannot create output directory '" + out_dir + "'");
    }
    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw momenta::DataError(std::string("cannot write '") + name + "'");
        return out;
    };
    {
        auto out = open("accel.csv");
        momenta::write_triax_csv(out, session.triax);
    }
    {
        auto out = open("rr.csv");
        momenta::write_rr_csv(out, session.rr);
    }
    {
        auto out = open("eeg.csv");
        momenta::write_eeg_csv(out, session.eeg);
    }
    {
        auto out = open("truth.csv");
        momenta::write_truth_csv(out, session.truth);
    }
    std::cout << "profile: " << profile.name << " (seed " << profile.seed << ")\n"
              << "wrote 4 files to " << dir.string() << ":\n"
              << "  accel.csv  (" << session.triax.size() << " samples)\n"
              << "  rr.csv     (" << session.rr.size() << " samples)\n"
              << "  eeg.csv    (" << session.eeg.size() << " samples)\n"
              << "  truth.csv  (" << session.truth.size() << " rows)\n";
    return kExitOk;
}

int cmd_analyze(const momenta::RunConfig& config) {
    momenta::Report report = momenta::analyze(config);
    auto files = momenta::write_report_files(report);
    for (const auto& w : report.parse_warnings) {
        std::cerr << "warning: " << w.stream << " line " << w.line << ": " << w.message << "\n";
    }
    std::cout << "wrote " << files.size() << " files to " << config.out_dir << ":\n";
    for (const auto& f : files) std::cout << "  " << f << "\n";
    return kExitOk;
}

json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw momenta::DataError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw momenta::DataError("bad JSON in '" + path + "': " + e.what());
    }
}

int cmd_compare(const std::string& path_a, const std::string& path_b, const std::string& claim,
                const std::string& modality) {
    auto result =
        momenta::compare_reports(load_json(path_a), load_json(path_b), claim, modality);
    std::cout << result.to_json().dump(2) << "\n";
    return result.claim_supported ? kExitOk : kExitClaimNotSupported;
}

int cmd_bands(double freq_hz) {
    auto bands = momenta::classify_band(freq_hz);
    json names = json::array();
    for (const auto& b : bands) names.push_back(b.name);
    json out{{"freq_hz", freq_hz}, {"bands", names}};
    std::cout << out.dump() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"windowed moment analytics for wearable sensor streams"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(momenta::kToolName) + " " +
                                          momenta::kToolVersion);

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a synthetic session as CSV files");
    std::string profile_name, profile_file;
    std::uint64_t sim_seed = 42;
    std::string sim_out = default_out_dir();
    auto* prof_opt = sim->add_option("--profile", profile_name, "catalog profile name");
    auto* file_opt =
        sim->add_option("--profile-file", profile_file, "JSON profile file")->check(CLI::ExistingFile);
    prof_opt->excludes(file_opt);
    auto* seed_opt = sim->add_option("--seed", sim_seed, "generator seed");
    sim->add_option("--out", sim_out, "output directory");
    auto* list_flag = sim->add_flag("--list", "list catalog profiles and exit");

    // analyze
    auto* ana = app.add_subcommand("analyze", "moments, metrics and analysis reports from CSVs");
    std::string a_accel, a_rr, a_eeg, a_truth, a_config, a_binding = "normal";
    momenta::RunConfig flags_cfg;
    std::string ana_out = default_out_dir();
    ana->add_option("--accel", a_accel, "accelerometer CSV")->check(CLI::ExistingFile);
    ana->add_option("--rr", a_rr, "RR-interval CSV")->check(CLI::ExistingFile);
    ana->add_option("--eeg", a_eeg, "EEG levels CSV")->check(CLI::ExistingFile);
    ana->add_option("--truth", a_truth, "ground-truth sidecar CSV (enables phase slopes)")
        ->check(CLI::ExistingFile);
    ana->add_option("--config", a_config, "JSON config file (flags override it)")
        ->check(CLI::ExistingFile);
    auto* w_opt = ana->add_option("--window-ms", flags_cfg.width_ms, "window width [5000]");
    auto* s_opt = ana->add_option("--stride-ms", flags_cfg.stride_ms, "window stride [1000]");
    auto* k_opt = ana->add_option("--k", flags_cfg.k, "cluster count [3]");
    auto* th_opt =
        ana->add_option("--threshold", flags_cfg.threshold, "pronounced-correlation threshold [0.8]");
    auto* bind_opt = ana->add_option("--metric-binding", a_binding,
                                     "which reference METRIC measures, normal|uniform [normal]")
                         ->check(CLI::IsMember({"normal", "uniform"}));
    auto* ana_seed_opt = ana->add_option("--seed", flags_cfg.seed, "clustering seed [42]");
    auto* out_opt = ana->add_option("--out", ana_out, "output directory");
    auto* g_flag = ana->add_flag("--accel-in-g", "input axes are in g; scale by 9.81");

    // compare
    auto* cmp = app.add_subcommand("compare", "compare trajectory speed between two reports");
    std::string cmp_a, cmp_b, cmp_claim, cmp_modality = "rr";
    cmp->add_option("report_a", cmp_a, "report.json expected to be faster")
        ->required()
        ->check(CLI::ExistingFile);
    cmp->add_option("report_b", cmp_b, "baseline report.json")->required()->check(CLI::ExistingFile);
    cmp->add_option("--claim", cmp_claim, "fitness-speed | workload-speed")
        ->required()
        ->check(CLI::IsMember({"fitness-speed", "workload-speed"}));
    cmp->add_option("--modality", cmp_modality, "stream to compare [rr]");

    // bands
    auto* bnd = app.add_subcommand("bands", "EEG rhythm bands containing a frequency");
    double freq_hz = 0.0;
    bnd->add_option("freq_hz", freq_hz, "frequency in Hz")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            if (*list_flag) {
                print_catalog(std::cout);
                return kExitOk;
            }
            if (profile_name.empty() && profile_file.empty()) {
                std::cerr << "simulate: --profile or --profile-file is required\n";
                print_catalog(std::cerr);
                return kExitUsage;
            }
            return cmd_simulate(profile_name, profile_file, sim_seed, seed_opt->count() > 0,
                                sim_out);
        }
        if (ana->parsed()) {
            momenta::RunConfig cfg;
            if (!a_config.empty()) {
                std::ifstream in(a_config, std::ios::binary);
                std::ostringstream ss;
                ss << in.rdbuf();
                cfg = momenta::config_from_json(ss.str(), cfg);
            }
            // flags win over the config file
            if (!a_accel.empty()) cfg.accel_path = a_accel;
            if (!a_rr.empty()) cfg.rr_path = a_rr;
            if (!a_eeg.empty()) cfg.eeg_path = a_eeg;
            if (!a_truth.empty()) cfg.truth_path = a_truth;
            if (w_opt->count()) cfg.width_ms = flags_cfg.width_ms;
            if (s_opt->count()) cfg.stride_ms = flags_cfg.stride_ms;
            if (k_opt->count()) cfg.k = flags_cfg.k;
            if (th_opt->count()) cfg.threshold = flags_cfg.threshold;
            if (ana_seed_opt->count()) cfg.seed = flags_cfg.seed;
            if (bind_opt->count()) {
                cfg.metric_binding = a_binding == "uniform" ? momenta::MetricReference::uniform
                                                            : momenta::MetricReference::normal;
            }
            if (out_opt->count()) {
                cfg.out_dir = ana_out;
            } else if (const char* env = std::getenv("MOMENTA_OUT"); env && *env) {
                cfg.out_dir = env;
            }
            if (*g_flag) cfg.accel_in_g = true;
            return cmd_analyze(cfg);
        }
        if (cmp->parsed()) {
            return cmd_compare(cmp_a, cmp_b, cmp_claim, cmp_modality);
        }
        if (bnd->parsed()) {
            return cmd_bands(freq_hz);
        }
    } catch (const momenta::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const momenta::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
