#pragma once

#include "svclust/projection.hpp"
#include "svclust/svdd.hpp"

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace svclust {

/// The ball geometry restricted to the projected plane. Grid points exist
/// only in the 2-D projection, so their kernel rows are evaluated there with
/// the Gaussian width q of the model; the training-side quantities entering
/// R^2 (cross term, center norm, and the reference radius) are recomputed in
/// the same plane so both sides of the in-ball comparison are commensurable.
struct ProjectedBall {
    Eigen::MatrixXd points;   ///< N x 2 projected data
    Eigen::VectorXd beta;
    double q = 1.0;
    double center_norm_sq = 0.0;
    double r_hat_sq = 0.0;

    /// Kernel evaluations spent through r2_at since construction.
    mutable long long op_count = 0;

    /// R^2 at an arbitrary plane point (one kernel row = N evaluations).
    double r2_at(double x, double y) const;
};

/// Build the projected ball view of a fitted model. The reference radius is
/// derived with the model's own support-vector split: mean R^2 over the
/// unbounded SVs, falling back to the max over bounded SVs when none exist.
ProjectedBall make_projected_ball(const SvcModel& model, const Projection2D& proj);

/// Regular G x G lattice over the projection bounding box.
struct Grid {
    int g = 0;
    double s1 = 0, s2 = 0;      ///< per-axis scale: (max - min) / G
    double origin_x = 0, origin_y = 0;

    double x_of(int a) const { return origin_x + a * s1; }
    double y_of(int b) const { return origin_y + b * s2; }
};

/// Stage-1 result: per-lattice-point cluster ids (0 = outside the ball).
struct GridLabeling {
    Grid grid;
    std::vector<int> num_points;  ///< g*g ids, row-major (a * g + b)
    int cluster_count = 0;
    bool empty = false;           ///< no in-ball lattice point
    std::string diagnostic;       ///< set when empty
    long long op_count = 0;       ///< kernel evaluations spent on the lattice

    int id_at(int a, int b) const { return num_points[a * grid.g + b]; }
};

/// Per-data-point cluster ids (0 = unclustered) plus cluster sizes.
struct ClusterAssignment {
    std::vector<int> class_points;
    std::map<int, int> sizes;     ///< id -> member count (id >= 1)
    long long op_count = 0;       ///< kernel evaluations spent labeling

    int cluster_count() const { return static_cast<int>(sizes.size()); }
};

/// Grid geometric-hashing labeler.
/// Stage 1: every lattice point gets R^2 via the projected ball; points with
/// R^2 <= R_hat^2 are in-ball; 8-connected in-ball points share a cluster id;
/// a merge pass joins components one grid step apart (idempotent); ids are
/// renumbered densely by component size (ties: smallest cell, row-major).
/// Stage 2: each data point hashes to its nearest lattice cell and the
/// square window around it votes per id; the maximal vote wins when it
/// reaches k, otherwise the window widens one ring at a time up to 3 rings,
/// then the point stays unclustered. Vote ties go to the lowest id.
/// Preconditions: fitted model, G >= 2, 1 <= k <= 8.
std::pair<GridLabeling, ClusterAssignment> label_grid(const SvcModel& model,
                                                      const Projection2D& proj,
                                                      int g, int k);

/// Symmetric, reflexive point-adjacency under the segment test.
struct AdjacencyMatrix {
    int n = 0;
    std::vector<std::uint8_t> bits;  ///< n*n row-major
    long long op_count = 0;

    bool at(int i, int j) const { return bits[static_cast<std::size_t>(i) * n + j] != 0; }
};

/// Full segment-test adjacency: A[i][j] = 1 iff all m sample points on the
/// open segment (x_i, x_j) satisfy R^2 <= R_hat^2. Samples are placed at
/// midpoints t = (u + 0.5)/m so the test probes the interior of the segment
/// rather than its endpoints. data carries the projected 2-D coordinates.
AdjacencyMatrix build_adjacency(const SvcModel& model, const Projection2D& data,
                                int m = 20);

/// Segment-test adjacency restricted to each point's k nearest neighbours
/// (Euclidean in the projected plane); clusters are the connected components
/// of the surviving edges. Isolated points get id 0.
ClusterAssignment label_knn_adjacency(const SvcModel& model, const Projection2D& data,
                                      int k, int m = 20);

/// Euclidean minimum-spanning-tree labeler: greedy Kruskal with node degree
/// capped at k, then the segment test drops bridging edges; clusters are the
/// remaining components. Isolated points get id 0.
ClusterAssignment label_mst_adjacency(const SvcModel& model, const Projection2D& data,
                                      int k, int m = 20);

/// Connected components of an undirected edge list, renumbered densely by
/// size (ties: smallest member index); singleton components map to id 0.
ClusterAssignment components_from_edges(int n,
                                        const std::vector<std::pair<int, int>>& edges);

} // namespace svclust
