#include "momenta/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "momenta/errors.hpp"
#include "momenta/rng.hpp"

namespace momenta {

FeatureMatrix FeatureMatrix::zeros(std::vector<std::string> columns, std::size_t rows) {
    FeatureMatrix fm;
    fm.columns = std::move(columns);
    fm.n_rows = rows;
    fm.data.assign(rows * fm.columns.size(), 0.0);
    return fm;
}

namespace {

void validate(const FeatureMatrix& fm) {
    if (fm.n_rows == 0 || fm.n_cols() == 0) {
        throw DomainError("feature matrix must have at least one row and column");
    }
    if (fm.data.size() != fm.n_rows * fm.n_cols()) {
        throw DomainError("feature matrix shape mismatch");
    }
    for (double v : fm.data) {
        if (!std::isfinite(v)) throw DataError("feature matrix contains non-finite values");
    }
}

double sq_dist(const FeatureMatrix& fm, std::size_t row, const std::vector<double>& center) {
    double d = 0.0;
    for (std::size_t c = 0; c < fm.n_cols(); ++c) {
        double diff = fm.at(row, c) - center[c];
        d += diff * diff;
    }
    return d;
}

}  // namespace

FeatureMatrix zscore(const FeatureMatrix& fm) {
    validate(fm);
    if (fm.n_rows < 2) throw DomainError("zscore: need at least 2 rows");
    FeatureMatrix out = fm;
    std::size_t p = fm.n_cols();
    for (std::size_t c = 0; c < p; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < fm.n_rows; ++r) mean += fm.at(r, c);
        mean /= static_cast<double>(fm.n_rows);
        double var = 0.0;
        for (std::size_t r = 0; r < fm.n_rows; ++r) {
            double d = fm.at(r, c) - mean;
            var += d * d;
        }
        var /= static_cast<double>(fm.n_rows);
        double sd = std::sqrt(var);
        if (sd == 0.0 || sd < 1e-12 * std::max(1.0, std::fabs(mean))) {
            throw DegenerateInputError("zscore: column '" + fm.columns[c] + "' is constant");
        }
        for (std::size_t r = 0; r < fm.n_rows; ++r) {
            out.at(r, c) = (fm.at(r, c) - mean) / sd;
        }
    }
    return out;
}

ClusterResult kmeans(const FeatureMatrix& fm, std::size_t k, std::uint64_t seed,
                     std::size_t max_iter) {
    validate(fm);
    if (k < 1) throw DomainError("kmeans: k must be >= 1");
    if (k > fm.n_rows) throw DomainError("kmeans: k exceeds row count");

    const std::size_t n = fm.n_rows;
    const std::size_t p = fm.n_cols();
    rng::Engine eng(seed, "kmeans");

    // k-means++ seeding: first centroid uniform, the rest D^2-weighted.
    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    {
        std::size_t first = static_cast<std::size_t>(eng.below(n));
        std::vector<double> c0(p);
        for (std::size_t j = 0; j < p; ++j) c0[j] = fm.at(first, j);
        centers.push_back(std::move(c0));
    }
    std::vector<double> d2(n);
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) best = std::min(best, sq_dist(fm, r, c));
            d2[r] = best;
            total += best;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            double u = eng.uniform01() * total;
            double cum = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                cum += d2[r];
                if (u < cum) {
                    pick = r;
                    break;
                }
            }
        } else {
            pick = static_cast<std::size_t>(eng.below(n));  // all points identical
        }
        std::vector<double> c(p);
        for (std::size_t j = 0; j < p; ++j) c[j] = fm.at(pick, j);
        centers.push_back(std::move(c));
    }

    std::vector<std::size_t> assign(n, 0);
    std::vector<std::size_t> counts(k, 0);
    double inertia = 0.0;
    std::size_t iter = 0;

    auto assign_all = [&]() {
        inertia = 0.0;
        std::fill(counts.begin(), counts.end(), 0);
        bool changed = false;
        for (std::size_t r = 0; r < n; ++r) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_c = 0;
            for (std::size_t c = 0; c < k; ++c) {
                double d = sq_dist(fm, r, centers[c]);
                if (d < best) {  // strict: ties keep the lowest index
                    best = d;
                    best_c = c;
                }
            }
            if (assign[r] != best_c) changed = true;
            assign[r] = best_c;
            ++counts[best_c];
            inertia += best;
        }
        return changed;
    };

    assign_all();
    for (iter = 1; iter <= max_iter; ++iter) {
        // empty-cluster repair: re-seed at the point farthest from its centroid
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            double worst = -1.0;
            std::size_t worst_r = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (counts[assign[r]] <= 1) continue;  // don't orphan another cluster
                double d = sq_dist(fm, r, centers[assign[r]]);
                if (d > worst) {
                    worst = d;
                    worst_r = r;
                }
            }
            if (worst < 0.0) break;  // nothing movable (all duplicates)
            --counts[assign[worst_r]];
            assign[worst_r] = c;
            ++counts[c];
            for (std::size_t j = 0; j < p; ++j) centers[c][j] = fm.at(worst_r, j);
        }

        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            std::vector<double> sum(p, 0.0);
            for (std::size_t r = 0; r < n; ++r) {
                if (assign[r] != c) continue;
                for (std::size_t j = 0; j < p; ++j) sum[j] += fm.at(r, j);
            }
            for (std::size_t j = 0; j < p; ++j) {
                centers[c][j] = sum[j] / static_cast<double>(counts[c]);
            }
        }
        if (!assign_all()) break;
    }

    ClusterResult res;
    res.assignments = std::move(assign);
    res.centroids = FeatureMatrix::zeros(fm.columns, k);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < p; ++j) res.centroids.at(c, j) = centers[c][j];
    }
    res.inertia = inertia;
    res.iterations = std::min(iter, max_iter);
    res.seed = seed;
    return res;
}

namespace {

// Cyclic Jacobi eigendecomposition of a small symmetric matrix. Feature
// spaces here have <= ~8 columns, so this beats pulling in a linear
// algebra dependency.
void jacobi_eigen(std::vector<double>& a, std::size_t p, std::vector<double>& eigvals,
                  std::vector<double>& v) {
    v.assign(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i) v[i * p + i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j) off += a[i * p + j] * a[i * p + j];
        if (off < 1e-30) break;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                double apq = a[i * p + j];
                if (std::fabs(apq) < 1e-300) continue;
                double app = a[i * p + i];
                double aqq = a[j * p + j];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t r = 0; r < p; ++r) {
                    double ari = a[r * p + i];
                    double arj = a[r * p + j];
                    a[r * p + i] = c * ari - s * arj;
                    a[r * p + j] = s * ari + c * arj;
                }
                for (std::size_t r = 0; r < p; ++r) {
                    double air = a[i * p + r];
                    double ajr = a[j * p + r];
                    a[i * p + r] = c * air - s * ajr;
                    a[j * p + r] = s * air + c * ajr;
                }
                for (std::size_t r = 0; r < p; ++r) {
                    double vri = v[r * p + i];
                    double vrj = v[r * p + j];
                    v[r * p + i] = c * vri - s * vrj;
                    v[r * p + j] = s * vri + c * vrj;
                }
            }
        }
    }
    eigvals.resize(p);
    for (std::size_t i = 0; i < p; ++i) eigvals[i] = a[i * p + i];
}

}  // namespace

PcaResult pca(const FeatureMatrix& fm, std::size_t n_components) {
    validate(fm);
    std::size_t n = fm.n_rows;
    std::size_t p = fm.n_cols();
    if (n < 2) throw DomainError("pca: need at least 2 rows");
    if (n_components < 1 || n_components > std::min(n - 1, p)) {
        throw DomainError("pca: n_components must be in [1, min(rows-1, columns)]");
    }

    std::vector<double> means(p, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < p; ++c) means[c] += fm.at(r, c);
    for (auto& m : means) m /= static_cast<double>(n);

    // population covariance of the centered data
    std::vector<double> cov(p * p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < p; ++i) {
            double di = fm.at(r, i) - means[i];
            for (std::size_t j = i; j < p; ++j) {
                cov[i * p + j] += di * (fm.at(r, j) - means[j]);
            }
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            cov[i * p + j] /= static_cast<double>(n);
            cov[j * p + i] = cov[i * p + j];
        }
    }

    std::vector<double> eigvals, v;
    jacobi_eigen(cov, p, eigvals, v);

    std::vector<std::size_t> order(p);
    for (std::size_t i = 0; i < p; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return eigvals[a] > eigvals[b]; });

    double total = 0.0;
    double lead = std::max(eigvals[order[0]], 0.0);
    for (double e : eigvals) total += std::max(e, 0.0);

    PcaResult res;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n_components; ++i) {
        double lambda = std::max(eigvals[order[i]], 0.0);
        if (lead > 0.0 && lambda <= 1e-12 * lead) break;  // numerically zero
        ++kept;
    }
    res.rank_deficient = kept < n_components;
    if (kept == 0) throw DegenerateInputError("pca: input has zero variance");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < kept; ++i) names.push_back("pc" + std::to_string(i + 1));
    res.projected = FeatureMatrix::zeros(std::move(names), n);
    res.column_means = means;
    for (std::size_t i = 0; i < kept; ++i) {
        std::size_t e = order[i];
        std::vector<double> comp(p);
        for (std::size_t c = 0; c < p; ++c) comp[c] = v[c * p + e];
        res.components.push_back(std::move(comp));
        res.explained_variance_fraction.push_back(
            total > 0.0 ? std::max(eigvals[e], 0.0) / total : 0.0);
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < kept; ++i) {
            double dot = 0.0;
            for (std::size_t c = 0; c < p; ++c) {
                dot += (fm.at(r, c) - means[c]) * res.components[i][c];
            }
            res.projected.at(r, i) = dot;
        }
    }
    return res;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("pearson: series lengths differ");
    if (a.size() < 3) throw InsufficientDataError("pearson: need at least 3 points");
    double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double da = a[i] - ma;
        double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) {
        throw DegenerateInputError("pearson: constant series");
    }
    double r = sab / std::sqrt(saa * sbb);
    return std::clamp(r, -1.0, 1.0);
}

CorrelationMatrix pearson_matrix(std::span<const NamedSeries> series) {
    if (series.size() < 2) throw DomainError("pearson_matrix: need at least 2 series");
    std::size_t len = series.front().values.size();
    for (const auto& s : series) {
        if (s.values.size() != len) {
            throw DomainError("pearson_matrix: series '" + s.name + "' length differs");
        }
        if (len < 3) throw InsufficientDataError("pearson_matrix: need length >= 3");
    }
    std::size_t m = series.size();
    CorrelationMatrix cm;
    for (const auto& s : series) cm.labels.push_back(s.name);
    cm.r.assign(m * m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double r;
            try {
                r = pearson(series[i].values, series[j].values);
            } catch (const DegenerateInputError&) {
                // re-raise with the offending series named
                bool i_const = true;
                for (double v : series[i].values) {
                    if (v != series[i].values.front()) {
                        i_const = false;
                        break;
                    }
                }
                throw DegenerateInputError("pearson_matrix: series '" +
                                           (i_const ? series[i].name : series[j].name) +
                                           "' is constant");
            }
            cm.r[i * m + j] = r;
            cm.r[j * m + i] = r;
        }
    }
    return cm;
}

FatigueCorrelationReport fatigue_correlation(const MomentTrajectory& traj, double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
        throw DomainError("fatigue_correlation: threshold must be in (0, 1)");
    }
    if (traj.points.size() < 8) {
        throw InsufficientDataError("fatigue_correlation: need at least 8 trajectory points");
    }
    std::vector<double> skews, kurts;
    skews.reserve(traj.points.size());
    kurts.reserve(traj.points.size());
    for (const auto& mv : traj.points) {
        skews.push_back(mv.skewness);
        kurts.push_back(mv.excess_kurtosis);
    }
    FatigueCorrelationReport rep;
    rep.r = pearson(skews, kurts);
    rep.n = traj.points.size();
    rep.threshold = threshold;
    rep.pronounced = std::fabs(rep.r) >= threshold;
    return rep;
}

FeatureMatrix moment_features(std::span<const MomentVector> windows) {
    FeatureMatrix fm;
    fm.columns = {"mean", "std", "skewness", "excess_kurtosis"};
    for (const auto& mv : windows) {
        if (!mv.shape_defined) continue;
        fm.data.push_back(mv.mean);
        fm.data.push_back(mv.std_dev);
        fm.data.push_back(mv.skewness);
        fm.data.push_back(mv.excess_kurtosis);
        ++fm.n_rows;
    }
    return fm;
}

}  // namespace momenta
