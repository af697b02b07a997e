#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "momenta/csv.hpp"
#include "momenta/errors.hpp"
#include "momenta/simulator.hpp"

using namespace momenta;

TEST_CASE("triax identity parse") {
    std::istringstream in("t_ms,ax,ay,az\n0,0.0,0.0,9.81\n");
    auto parsed = parse_triax_csv(in);
    REQUIRE(parsed.samples.size() == 1);
    CHECK(parsed.samples[0].t_ms == 0);
    CHECK(parsed.samples[0].ax == 0.0);
    CHECK(parsed.samples[0].ay == 0.0);
    CHECK(parsed.samples[0].az == 9.81);
    CHECK(parsed.warnings.empty());
}

TEST_CASE("rr row with non-positive interval is rejected with its line number") {
    std::istringstream in("t_ms,rr_ms\n500,-10\n");
    try {
        parse_rr_csv(in);
        FAIL("expected RowError");
    } catch (const RowError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("malformed header is a format error") {
    std::istringstream in("time,ax,ay,az\n0,0,0,0\n");
    CHECK_THROWS_AS(parse_triax_csv(in), FormatError);
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_rr_csv(empty), FormatError);
}

TEST_CASE("non-numeric cell reports the line") {
    std::istringstream in("t_ms,rr_ms\n0,800\n1000,abc\n");
    try {
        parse_rr_csv(in);
        FAIL("expected RowError");
    } catch (const RowError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("non-monotonic timestamps are a hard error") {
    std::istringstream in("t_ms,rr_ms\n1000,800\n1000,810\n");
    CHECK_THROWS_AS(parse_rr_csv(in), SequenceError);
    std::istringstream in2("t_ms,rr_ms\n1000,800\n500,810\n");
    CHECK_THROWS_AS(parse_rr_csv(in2), SequenceError);
}

TEST_CASE("timestamps must be integral and non-negative") {
    std::istringstream in("t_ms,rr_ms\n500.5,800\n");
    CHECK_THROWS_AS(parse_rr_csv(in), RowError);
    std::istringstream ok("t_ms,rr_ms\n500.0,800\n");
    CHECK(parse_rr_csv(ok).samples[0].t_ms == 500);
    std::istringstream neg("t_ms,rr_ms\n-5,800\n");
    CHECK_THROWS_AS(parse_rr_csv(neg), RowError);
}

TEST_CASE("eeg range checks") {
    std::istringstream bad_att("t_ms,att,rel,eye\n0,101,50,3\n");
    CHECK_THROWS_AS(parse_eeg_csv(bad_att), RowError);
    std::istringstream bad_eye("t_ms,att,rel,eye\n0,50,50,-1\n");
    CHECK_THROWS_AS(parse_eeg_csv(bad_eye), RowError);
    std::istringstream ok("t_ms,att,rel,eye\n0,0,100,0\n");
    CHECK(parse_eeg_csv(ok).samples.size() == 1);
}

TEST_CASE("implausible rr values warn but stay") {
    std::istringstream in("t_ms,rr_ms\n0,100\n1000,900\n2000,3500\n");
    auto parsed = parse_rr_csv(in);
    CHECK(parsed.samples.size() == 3);
    REQUIRE(parsed.warnings.size() == 2);
    CHECK(parsed.warnings[0].line == 2);
    CHECK(parsed.warnings[1].line == 4);
}

TEST_CASE("parser takes arbitrary decimal precision") {
    std::istringstream in("t_ms,ax,ay,az\n0,0.123456789012,-1.5,2e-3\n");
    auto parsed = parse_triax_csv(in);
    CHECK(parsed.samples[0].ax == 0.123456789012);
    CHECK(parsed.samples[0].az == 0.002);
}

TEST_CASE("wrong field count reports the line") {
    std::istringstream in("t_ms,ax,ay,az\n0,1,2\n");
    CHECK_THROWS_AS(parse_triax_csv(in), RowError);
}

TEST_CASE("generated session round-trips bit-identically through write/parse") {
    // the simulator quantizes to the writer's decimals, so write -> parse
    // must reproduce every sample exactly
    SessionProfile profile = *find_profile("mixed-activity");
    profile.seed = 7;
    auto session = generate_session(profile);
    REQUIRE(session.triax.size() > 1000);

    {
        std::ostringstream out;
        write_triax_csv(out, session.triax);
        std::istringstream in(out.str());
        auto parsed = parse_triax_csv(in);
        REQUIRE(parsed.samples.size() == session.triax.size());
        for (std::size_t i = 0; i < parsed.samples.size(); ++i) {
            CHECK(parsed.samples[i].t_ms == session.triax[i].t_ms);
            CHECK(parsed.samples[i].ax == session.triax[i].ax);
            CHECK(parsed.samples[i].ay == session.triax[i].ay);
            CHECK(parsed.samples[i].az == session.triax[i].az);
        }
        // and writing the parsed list again is byte-identical
        std::ostringstream out2;
        write_triax_csv(out2, parsed.samples);
        CHECK(out.str() == out2.str());
    }
    {
        std::ostringstream out;
        write_rr_csv(out, session.rr);
        std::istringstream in(out.str());
        auto parsed = parse_rr_csv(in);
        REQUIRE(parsed.samples.size() == session.rr.size());
        for (std::size_t i = 0; i < parsed.samples.size(); ++i) {
            CHECK(parsed.samples[i].rr_ms == session.rr[i].rr_ms);
        }
    }
    {
        std::ostringstream out;
        write_eeg_csv(out, session.eeg);
        std::istringstream in(out.str());
        auto parsed = parse_eeg_csv(in);
        REQUIRE(parsed.samples.size() == session.eeg.size());
        for (std::size_t i = 0; i < parsed.samples.size(); ++i) {
            CHECK(parsed.samples[i].att == session.eeg[i].att);
            CHECK(parsed.samples[i].rel == session.eeg[i].rel);
            CHECK(parsed.samples[i].eye == session.eeg[i].eye);
        }
    }
}

TEST_CASE("truth sidecar round-trip") {
    SessionProfile profile = *find_profile("walk-max");
    auto session = generate_session(profile);
    std::ostringstream out;
    write_truth_csv(out, session.truth);
    std::istringstream in(out.str());
    auto rows = parse_truth_csv(in);
    REQUIRE(rows.size() == session.truth.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].window_start_ms == session.truth[i].window_start_ms);
        CHECK(rows[i].phase == session.truth[i].phase);
        CHECK(rows[i].activity == session.truth[i].activity);
        CHECK(rows[i].latent == doctest::Approx(session.truth[i].latent).epsilon(1e-9));
    }
}
