#pragma once

#include "svclust/data_matrix.hpp"
#include "svclust/labeling.hpp"
#include "svclust/svdd.hpp"

#include <string>
#include <vector>

namespace svclust {

/// Per-cluster precision summary.
struct ClusterStat {
    int id = 0;
    int size = 0;
    int majority_class = 0;
    double majority_fraction = 0.0;
};

/// Precision of an assignment against class tags: overall_precision is the
/// sum of per-cluster majority counts divided by N (unclustered points count
/// against it); misclassified is the number of points outside their cluster's
/// majority class.
struct PrecisionReport {
    std::vector<ClusterStat> per_cluster;  ///< ordered by size descending
    double overall_precision = 0.0;
    int unclassified = 0;
    int misclassified = 0;
    int n = 0;
};

/// Throws config_error when any point lacks a tag.
PrecisionReport precision(const ClusterAssignment& assignment, const std::vector<int>& tags);

/// Class-distribution-over-clusters table.
struct DistRow {
    int cluster_id = 0;  ///< -1 marks the whole-dataset baseline row
    int size = 0;
    std::vector<double> fractions;  ///< aligned with ClassDistributionTable::classes
};

struct ClassDistributionTable {
    std::vector<int> classes;  ///< ascending class tags
    std::vector<DistRow> rows; ///< per cluster, ascending id (0 included if nonempty)
    DistRow baseline;          ///< whole-dataset class fractions
};

ClassDistributionTable class_distribution(const ClusterAssignment& assignment,
                                          const std::vector<int>& tags);

/// One benchmark measurement (a median over repeats, or a single repeat).
struct BenchResult {
    std::string method;  ///< grid | knn_adj | mst_adj
    int n = 0;
    int g = 0;           ///< 0 when the method has no grid
    double wall_time = 0.0;  ///< seconds
    long long op_count = 0;  ///< kernel evaluations in the labeling stage
};

struct BenchRepeat {
    BenchResult result;
    int repeat = 0;
};

struct BenchConfig {
    KernelKind kernel = KernelKind::Gaussian;
    double q = 40.0;
    double nu = 0.5;
    OptimMethod method = OptimMethod::Quadratic;
    std::uint64_t seed = 42;
    int k = 1;        ///< vote threshold / neighbour count / degree cap
    int m = 20;       ///< segment samples
    int cx = 0, cy = 0;
    std::vector<std::string> methods{"grid", "knn_adj", "mst_adj"};
    std::vector<int> n_ladder;  ///< empty = full N only
    std::vector<int> g_ladder{13};
    int repeats = 5;  ///< >= 3; one extra warm-up run is always added
};

/// Label the first n rows of `data` with each method and report the median
/// wall time and op count per configuration. Grid rows span the g ladder;
/// adjacency rows ignore it (g recorded as 0). Per-repeat rows are appended
/// to *raw when given.
std::vector<BenchResult> bench_labeling(const DataMatrix& data, const BenchConfig& cfg,
                                        std::vector<BenchRepeat>* raw = nullptr);

} // namespace svclust
