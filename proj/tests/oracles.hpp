// Test-only reference implementations. Deliberately naive and independent
// of the library code paths they are used to check.
#ifndef MOMENTA_TESTS_ORACLES_HPP
#define MOMENTA_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracles {

struct RefMoments {
    double mean = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

// Two-pass population moments in extended precision.
inline RefMoments ref_moments(const std::vector<double>& v) {
    long double n = static_cast<long double>(v.size());
    long double mean = 0.0L;
    for (double x : v) mean += x;
    mean /= n;
    long double m2 = 0.0L, m3 = 0.0L, m4 = 0.0L;
    for (double x : v) {
        long double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    RefMoments r;
    r.mean = static_cast<double>(mean);
    r.std_dev = static_cast<double>(std::sqrt(m2));
    r.skewness = static_cast<double>(m3 / (m2 * std::sqrt(m2)));
    r.excess_kurtosis = static_cast<double>(m4 / (m2 * m2) - 3.0L);
    return r;
}

inline double ref_pearson(const std::vector<double>& a, const std::vector<double>& b) {
    long double n = static_cast<long double>(a.size());
    long double ma = 0.0L, mb = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    long double saa = 0.0L, sbb = 0.0L, sab = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        long double da = a[i] - ma;
        long double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    return static_cast<double>(sab / std::sqrt(saa * sbb));
}

struct RefLine {
    double slope = 0.0;
    double intercept = 0.0;
};

// Closed-form least squares.
inline RefLine ref_ols(const std::vector<double>& t, const std::vector<double>& y) {
    long double n = static_cast<long double>(t.size());
    long double st = 0.0L, sy = 0.0L, stt = 0.0L, sty = 0.0L;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += static_cast<long double>(t[i]) * t[i];
        sty += static_cast<long double>(t[i]) * y[i];
    }
    long double denom = n * stt - st * st;
    RefLine line;
    line.slope = static_cast<double>((n * sty - st * sy) / denom);
    line.intercept = static_cast<double>((sy - line.slope * st) / n);
    return line;
}

inline double rel_err(double got, double want) {
    double scale = std::max(std::fabs(want), 1e-300);
    return std::fabs(got - want) / scale;
}

}  // namespace oracles

#endif
