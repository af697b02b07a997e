#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "subprocess.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = MOMENTA_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("momenta_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str(const char* name = nullptr) const {
        return name ? (path / name).string() : path.string();
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("simulate writes the four files and is flag-deterministic") {
    TempDir d1, d2;
    auto r1 = subprocess::run(cli + " simulate --profile walk-max --seed 42 --out " + d1.str());
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("wrote 4 files") != std::string::npos);
    for (const char* f : {"accel.csv", "rr.csv", "eeg.csv", "truth.csv"}) {
        CAPTURE(f);
        CHECK(fs::exists(d1.path / f));
    }
    auto r2 = subprocess::run(cli + " simulate --profile walk-max --seed 42 --out " + d2.str());
    CHECK(r2.exit_code == 0);
    for (const char* f : {"accel.csv", "rr.csv", "eeg.csv", "truth.csv"}) {
        CHECK(slurp(d1.path / f) == slurp(d2.path / f));
    }
    auto r3 = subprocess::run(cli + " simulate --profile walk-max --seed 7 --out " + d2.str());
    CHECK(r3.exit_code == 0);
    CHECK(slurp(d1.path / "rr.csv") != slurp(d2.path / "rr.csv"));
}

TEST_CASE("unknown profile exits 2 and prints the catalog") {
    TempDir d;
    auto r = subprocess::run(cli + " simulate --profile moonwalk --out " + d.str());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("available profiles") != std::string::npos);
    CHECK(r.output.find("walk-max") != std::string::npos);
}

TEST_CASE("simulate --list shows the catalog") {
    auto r = subprocess::run(cli + " simulate --list");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fatigue-loaded") != std::string::npos);
    CHECK(r.output.find("dumbbell-3kg") != std::string::npos);
}

TEST_CASE("simulate accepts a profile file") {
    TempDir d;
    {
        std::ofstream out(d.path / "profile.json");
        out << R"({"name": "tiny", "fitness": 0.8, "phases": [
                 {"label": "a", "duration_ms": 30000, "activity": "rest", "workload": 0},
                 {"label": "b", "duration_ms": 30000, "activity": "walk", "workload": 5.0}]})";
    }
    auto r = subprocess::run(cli + " simulate --profile-file " + d.str("profile.json") +
                             " --seed 3 --out " + d.str());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(d.path / "accel.csv"));
}

TEST_CASE("analyze then compare drive the exit codes") {
    TempDir sim_u, sim_t, rep_u, rep_t;
    CHECK(subprocess::run(cli + " simulate --profile squat-untrained --seed 5 --out " +
                          sim_u.str())
              .exit_code == 0);
    CHECK(subprocess::run(cli + " simulate --profile squat-trained --seed 5 --out " +
                          sim_t.str())
              .exit_code == 0);

    auto ra = subprocess::run(cli + " analyze --rr " + sim_u.str("rr.csv") + " --truth " +
                              sim_u.str("truth.csv") + " --out " + rep_u.str());
    CHECK(ra.exit_code == 0);
    CHECK(fs::exists(rep_u.path / "report.json"));
    CHECK(fs::exists(rep_u.path / "metric_rr.csv"));
    auto rb = subprocess::run(cli + " analyze --rr " + sim_t.str("rr.csv") + " --truth " +
                              sim_t.str("truth.csv") + " --out " + rep_t.str());
    CHECK(rb.exit_code == 0);

    // untrained (A) faster than trained (B): claim supported, exit 0
    auto cmp = subprocess::run(cli + " compare " + rep_u.str("report.json") + " " +
                               rep_t.str("report.json") + " --claim fitness-speed");
    CHECK(cmp.exit_code == 0);
    CHECK(cmp.output.find("\"claim_supported\": true") != std::string::npos);

    // reversed: not supported, exit 4
    auto rev = subprocess::run(cli + " compare " + rep_t.str("report.json") + " " +
                               rep_u.str("report.json") + " --claim fitness-speed");
    CHECK(rev.exit_code == 4);

    // self-compare: tie, exit 4
    auto self = subprocess::run(cli + " compare " + rep_u.str("report.json") + " " +
                                rep_u.str("report.json") + " --claim workload-speed");
    CHECK(self.exit_code == 4);
    CHECK(self.output.find("\"faster\": \"tie\"") != std::string::npos);
}

TEST_CASE("analyze maps data problems to exit 3") {
    TempDir d;
    {
        std::ofstream out(d.path / "bad.csv");
        out << "t_ms,rr_ms\n0,800\n100,nonsense\n";
    }
    auto r = subprocess::run(cli + " analyze --rr " + d.str("bad.csv") + " --out " + d.str());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("line 3") != std::string::npos);
}

TEST_CASE("bands subcommand") {
    auto r = subprocess::run(cli + " bands 14");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("SMR") != std::string::npos);
    CHECK(r.output.find("alpha") == std::string::npos);

    auto gap = subprocess::run(cli + " bands 7.5");
    CHECK(gap.exit_code == 0);
    CHECK(gap.output.find("\"bands\":[]") != std::string::npos);

    auto bad = subprocess::run(cli + " bands -3");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(subprocess::run(cli).exit_code == 2);
    CHECK(subprocess::run(cli + " analyze").exit_code == 2);  // no inputs
    CHECK(subprocess::run(cli + " frobnicate").exit_code == 2);
}

TEST_CASE("MOMENTA_OUT env var sets the default output directory") {
    TempDir d;
    auto r = subprocess::run("MOMENTA_OUT=" + d.str() +
                             " " + cli + " simulate --profile dumbbell-0.5kg --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(d.path / "accel.csv"));
}

TEST_CASE("version flag") {
    auto r = subprocess::run(cli + " --version");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("momenta") != std::string::npos);
}
