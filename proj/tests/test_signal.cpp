#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "momenta/errors.hpp"
#include "momenta/signal.hpp"

using namespace momenta;

namespace {

std::set<std::string> band_names(double freq) {
    std::set<std::string> names;
    for (const auto& b : classify_band(freq)) names.insert(b.name);
    return names;
}

}  // namespace

TEST_CASE("hr_to_rr definitional values") {
    CHECK(hr_to_rr(60.0) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(hr_to_rr(120.0) == doctest::Approx(500.0).epsilon(1e-12));
    CHECK(hr_to_rr(72.0) == doctest::Approx(60000.0 / 72.0).epsilon(1e-9));
}

TEST_CASE("hr_to_rr rejects non-positive and non-finite input") {
    CHECK_THROWS_AS(hr_to_rr(0.0), DomainError);
    CHECK_THROWS_AS(hr_to_rr(-10.0), DomainError);
    CHECK_THROWS_AS(hr_to_rr(std::nan("")), DomainError);
    CHECK_THROWS_AS(hr_to_rr(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("hr * hr_to_rr(hr) = 60000 across a grid") {
    for (double hr = 1.0; hr <= 250.0; hr += 0.37) {
        CHECK(hr * hr_to_rr(hr) == doctest::Approx(60000.0).epsilon(1e-9));
    }
}

TEST_CASE("rr_to_hr_integer examples") {
    CHECK(rr_to_hr_integer(1000.0) == 60);
    CHECK(rr_to_hr_integer(833.0) == 72);  // 60000/833 = 72.03
    CHECK_THROWS_AS(rr_to_hr_integer(0.0), DomainError);
    CHECK_THROWS_AS(rr_to_hr_integer(-1.0), DomainError);
}

TEST_CASE("integer heart rate loses information: 995 ms does not survive") {
    int hr = rr_to_hr_integer(995.0);
    CHECK(hr == 60);
    CHECK(hr_to_rr(static_cast<double>(hr)) != doctest::Approx(995.0).epsilon(1e-6));
    CHECK(hr_to_rr(static_cast<double>(hr)) == doctest::Approx(1000.0));
}

TEST_CASE("rr_to_hr_integer is many-to-one on a swept grid") {
    // every rr in (60000/61, 1000] truncates to 60 bpm
    std::set<int> hrs;
    int distinct_rr = 0;
    for (double rr = 984.0; rr <= 1000.0; rr += 0.5) {
        hrs.insert(rr_to_hr_integer(rr));
        ++distinct_rr;
    }
    CHECK(hrs == std::set<int>{60});
    CHECK(distinct_rr == 33);
}

TEST_CASE("rr_to_hr_integer reaches every plausible integer HR") {
    for (int hr = 30; hr <= 220; ++hr) {
        double rr = 60000.0 / (hr + 0.5);  // middle of the preimage interval
        CHECK(rr_to_hr_integer(rr) == hr);
    }
}

TEST_CASE("magnitude") {
    CHECK(magnitude({0, 0.0, 0.0, 9.81}) == doctest::Approx(9.81).epsilon(1e-12));
    CHECK(magnitude({0, 3.0, 4.0, 0.0}) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(magnitude({0, 0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("canonical bands carry the expected edges") {
    auto bands = canonical_bands();
    REQUIRE(bands.size() == 5);
    CHECK(bands[0].name == "theta");
    CHECK(bands[0].lo_hz == 4.0);
    CHECK(bands[0].hi_hz == 7.0);
    CHECK(bands[1].name == "alpha");
    CHECK(bands[1].lo_hz == 8.0);
    CHECK(bands[1].hi_hz == 13.0);
    CHECK(bands[2].name == "SMR");
    CHECK(bands[2].lo_hz == 13.0);
    CHECK(bands[2].hi_hz == 15.0);
    CHECK(bands[3].name == "beta");
    CHECK(bands[3].lo_hz == 16.0);
    CHECK(bands[3].hi_hz == 31.0);
    CHECK(bands[4].name == "gamma");
    CHECK(bands[4].lo_hz == 25.0);
    CHECK(bands[4].hi_hz == 100.0);
}

TEST_CASE("classify_band examples") {
    CHECK(band_names(10.0) == std::set<std::string>{"alpha"});
    CHECK(band_names(5.0) == std::set<std::string>{"theta"});
    CHECK(band_names(14.0) == std::set<std::string>{"SMR"});
    CHECK(band_names(28.0) == std::set<std::string>{"beta", "gamma"});
    CHECK(band_names(3.5).empty());
    // closed edges: 13 Hz belongs to both alpha and SMR
    CHECK(band_names(13.0) == std::set<std::string>{"alpha", "SMR"});
    CHECK_THROWS_AS(classify_band(0.0), DomainError);
    CHECK_THROWS_AS(classify_band(-4.0), DomainError);
}

TEST_CASE("band coverage: non-empty exactly on [4,7] u [8,15] u [16,100]") {
    for (double f = 0.25; f <= 120.0; f += 0.25) {
        bool covered = (f >= 4.0 && f <= 7.0) || (f >= 8.0 && f <= 15.0) ||
                       (f >= 16.0 && f <= 100.0);
        CHECK_MESSAGE(classify_band(f).empty() != covered, "freq " << f);
    }
}
