#ifndef MOMENTA_ANALYSIS_HPP
#define MOMENTA_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "momenta/metrics.hpp"

namespace momenta {

// Rectangular windows-by-features table with named columns, row-major.
struct FeatureMatrix {
    std::vector<std::string> columns;
    std::vector<double> data;
    std::size_t n_rows = 0;

    std::size_t n_cols() const { return columns.size(); }
    double at(std::size_t r, std::size_t c) const { return data[r * n_cols() + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * n_cols() + c]; }

    static FeatureMatrix zeros(std::vector<std::string> columns, std::size_t rows);
};

// Columns rescaled to mean 0, population std 1. Needs >= 2 rows. A constant
// column raises DegenerateInputError naming the column.
FeatureMatrix zscore(const FeatureMatrix& fm);

struct ClusterResult {
    std::vector<std::size_t> assignments;
    FeatureMatrix centroids;
    double inertia = 0.0;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
};

// Lloyd's algorithm with seeded k-means++ initialization. Fully
// deterministic for a given seed: fixed reduction order, nearest-centroid
// ties broken by lowest index, and an empty cluster is re-seeded at the
// point farthest from its current centroid. Throws DomainError when
// k < 1 or k > rows.
ClusterResult kmeans(const FeatureMatrix& fm, std::size_t k, std::uint64_t seed,
                     std::size_t max_iter = 100);

struct PcaResult {
    FeatureMatrix projected;                        // rows x kept components
    std::vector<double> explained_variance_fraction;  // descending, sums <= 1
    std::vector<std::vector<double>> components;      // kept eigenvectors
    std::vector<double> column_means;                 // centering offsets
    bool rank_deficient = false;
};

// Projection onto the top eigenvectors of the (population) covariance of
// the centered input. Caller standardizes first if the columns mix units.
// Rank-deficient input returns only the numerically nonzero components and
// sets the flag. Throws DomainError when n_components exceeds
// min(rows - 1, columns).
PcaResult pca(const FeatureMatrix& fm, std::size_t n_components);

struct NamedSeries {
    std::string name;
    std::vector<double> values;
};

// Symmetric Pearson r matrix, row-major, diagonal 1.
struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<double> r;

    double at(std::size_t i, std::size_t j) const { return r[i * labels.size() + j]; }
};

double pearson(std::span<const double> a, std::span<const double> b);

// All series must share one length >= 3; a constant series raises
// DegenerateInputError naming it.
CorrelationMatrix pearson_matrix(std::span<const NamedSeries> series);

// Pearson r between skewness and excess kurtosis along a trajectory; the
// detector behind the loaded-vs-fresh fatigue separation.
struct FatigueCorrelationReport {
    double r = 0.0;
    std::size_t n = 0;
    double threshold = 0.0;
    bool pronounced = false;
};

inline constexpr double kDefaultFatigueThreshold = 0.8;

// Throws InsufficientDataError for < 8 points, DomainError for a threshold
// outside (0, 1).
FatigueCorrelationReport fatigue_correlation(const MomentTrajectory& traj,
                                             double threshold = kDefaultFatigueThreshold);

// (mean, std, skewness, excess_kurtosis) rows from shape-defined windows,
// the default clustering features.
FeatureMatrix moment_features(std::span<const MomentVector> windows);

}  // namespace momenta

#endif
