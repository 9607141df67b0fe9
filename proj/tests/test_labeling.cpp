#include "svclust/errors.hpp"
#include "svclust/kernels.hpp"
#include "svclust/labeling.hpp"
#include "svclust/projection.hpp"
#include "svclust/svdd.hpp"
#include "svclust/synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace svclust;

namespace {

struct Fitted {
    DataMatrix data;
    SvcModel model;
    Projection2D proj;
};

Fitted fit_two_blobs(std::uint64_t seed, double nu = 0.02, double q = 2.0) {
    Fitted f;
    f.data = make_two_blobs(seed);
    KernelOptions opt;
    opt.q = q;
    KernelMatrix k = build_kernel_matrix(f.data, KernelKind::Gaussian, opt);
    f.model = solve_dual(make_ball_problem(k, nu), OptimMethod::Quadratic);
    f.proj = project(f.data, 1, 2);
    return f;
}

// Partition equality up to cluster-id renaming; points with id 0 must agree
// exactly.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    std::map<int, int> fwd, bwd;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] == 0) != (b[i] == 0)) return false;
        if (a[i] == 0) continue;
        auto f = fwd.emplace(a[i], b[i]);
        if (!f.second && f.first->second != b[i]) return false;
        auto g = bwd.emplace(b[i], a[i]);
        if (!g.second && g.first->second != a[i]) return false;
    }
    return true;
}

} // namespace

TEST_CASE("projected ball charges one kernel row per evaluation") {
    Fitted f = fit_two_blobs(3);
    ProjectedBall ball = make_projected_ball(f.model, f.proj);
    CHECK(ball.op_count == 0);  // setup cost is not charged
    ball.r2_at(0.0, 0.0);
    CHECK(ball.op_count == f.data.rows());
    ball.r2_at(1.0, 1.0);
    CHECK(ball.op_count == 2 * f.data.rows());
}

TEST_CASE("projected ball radius is positive and classifies its own points") {
    Fitted f = fit_two_blobs(5);
    ProjectedBall ball = make_projected_ball(f.model, f.proj);
    CHECK(ball.r_hat_sq > 0.0);
    // every unbounded support vector sits on the projected sphere up to the
    // averaging spread, so its R^2 cannot exceed the maximum over SVs; just
    // check the in-ball test accepts a blob core point
    int core = f.model.sv_indices.empty() ? 0 : f.model.sv_indices[0];
    double r2 = ball.r2_at(f.proj.coords(core, 0), f.proj.coords(core, 1));
    CHECK(r2 <= ball.r_hat_sq * (1.0 + 1e-6) + 1e-12);
}

TEST_CASE("grid labeling covers the lattice and charges G^2 * N kernel ops") {
    Fitted f = fit_two_blobs(1);
    const int g = 13;
    auto [gl, ca] = label_grid(f.model, f.proj, g, 1);
    CHECK(gl.grid.g == g);
    CHECK(static_cast<int>(gl.num_points.size()) == g * g);
    CHECK(ca.op_count == static_cast<long long>(g) * g * f.data.rows());
    CHECK(gl.op_count == ca.op_count);
    // ids are dense 0..K
    std::set<int> ids(gl.num_points.begin(), gl.num_points.end());
    CHECK(gl.cluster_count >= 1);
    for (int id = 0; id <= gl.cluster_count; ++id) CHECK(ids.count(id) == 1);
    CHECK(*std::max_element(gl.num_points.begin(), gl.num_points.end()) ==
          gl.cluster_count);
}

TEST_CASE("grid cluster ids are ordered by component size") {
    Fitted f = fit_two_blobs(2);
    auto [gl, ca] = label_grid(f.model, f.proj, 13, 1);
    std::map<int, int> cell_counts;
    for (int id : gl.num_points)
        if (id > 0) ++cell_counts[id];
    for (int id = 1; id < gl.cluster_count; ++id)
        CHECK(cell_counts[id] >= cell_counts[id + 1]);
}

TEST_CASE("two separable blobs: all three labelers find the same 2-cluster partition") {
    Fitted f = fit_two_blobs(11);
    auto [gl, grid_ca] = label_grid(f.model, f.proj, 13, 1);
    ClusterAssignment knn_ca = label_knn_adjacency(f.model, f.proj, 6, 20);
    ClusterAssignment mst_ca = label_mst_adjacency(f.model, f.proj, 6, 20);

    CHECK(grid_ca.cluster_count() == 2);
    CHECK(knn_ca.cluster_count() == 2);
    CHECK(mst_ca.cluster_count() == 2);
    CHECK(same_partition(grid_ca.class_points, knn_ca.class_points));
    CHECK(same_partition(grid_ca.class_points, mst_ca.class_points));
    // and the partition is the ground-truth blob split
    CHECK(same_partition(grid_ca.class_points, f.data.class_tags));
}

TEST_CASE("a far outlier stays unclustered under every labeler") {
    DataMatrix dm = make_two_blobs(4);
    const Eigen::Index n = dm.rows();
    dm.values.conservativeResize(n + 1, 2);
    // far beyond the three-ring vote window and any blob's neighbourhood
    dm.values(n, 0) = 40.0;
    dm.values(n, 1) = 40.0;
    dm.row_names.push_back("0 outlier");
    dm.class_tags.push_back(0);

    KernelOptions opt;
    opt.q = 2.0;
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, opt);
    SvcModel model = solve_dual(make_ball_problem(k, 0.05), OptimMethod::Quadratic);
    Projection2D proj = project(dm, 1, 2);

    auto [gl, grid_ca] = label_grid(model, proj, 26, 1);
    ClusterAssignment knn_ca = label_knn_adjacency(model, proj, 6, 20);
    ClusterAssignment mst_ca = label_mst_adjacency(model, proj, 6, 20);
    CHECK(grid_ca.class_points[static_cast<std::size_t>(n)] == 0);
    CHECK(knn_ca.class_points[static_cast<std::size_t>(n)] == 0);
    CHECK(mst_ca.class_points[static_cast<std::size_t>(n)] == 0);
}

TEST_CASE("single point: one cluster containing it") {
    DataMatrix dm;
    dm.values.resize(1, 2);
    dm.values << 1.0, 2.0;
    dm.row_names = {"1 only"};
    dm.col_names = {"x", "y"};
    dm.class_tags = {1};
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, KernelOptions{});
    SvcModel model = solve_dual(make_ball_problem(k, 1.0), OptimMethod::Quadratic);
    Projection2D proj = project(dm, 1, 2);
    auto [gl, ca] = label_grid(model, proj, 5, 1);
    CHECK(ca.cluster_count() == 1);
    CHECK(ca.class_points == std::vector<int>{1});
}

TEST_CASE("label_grid validates its parameters") {
    Fitted f = fit_two_blobs(6);
    CHECK_THROWS_AS(label_grid(f.model, f.proj, 1, 1), config_error);
    CHECK_THROWS_AS(label_grid(f.model, f.proj, 13, 0), config_error);
    CHECK_THROWS_AS(label_grid(f.model, f.proj, 13, 9), config_error);
}

TEST_CASE("labeling is deterministic") {
    Fitted f = fit_two_blobs(8);
    auto [gl1, ca1] = label_grid(f.model, f.proj, 13, 1);
    auto [gl2, ca2] = label_grid(f.model, f.proj, 13, 1);
    CHECK(gl1.num_points == gl2.num_points);
    CHECK(ca1.class_points == ca2.class_points);
    ClusterAssignment k1 = label_knn_adjacency(f.model, f.proj, 6, 20);
    ClusterAssignment k2 = label_knn_adjacency(f.model, f.proj, 6, 20);
    CHECK(k1.class_points == k2.class_points);
}

TEST_CASE("adjacency matrix is reflexive, symmetric, and separates the blobs") {
    Fitted f = fit_two_blobs(9);
    AdjacencyMatrix adj = build_adjacency(f.model, f.proj, 20);
    const int n = adj.n;
    REQUIRE(n == f.data.rows());
    for (int i = 0; i < n; ++i) CHECK(adj.at(i, i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) CHECK(adj.at(i, j) == adj.at(j, i));
    // no edge crosses the inter-blob gap
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (f.data.class_tags[static_cast<std::size_t>(i)] !=
                f.data.class_tags[static_cast<std::size_t>(j)])
                CHECK(!adj.at(i, j));
    CHECK(adj.op_count > 0);
}

TEST_CASE("components_from_edges renumbers by size with stable ties") {
    // sizes: {0,1,2} of 3, {4,5} of 2, {3} singleton
    std::vector<std::pair<int, int>> edges = {{1, 2}, {0, 1}, {4, 5}};
    ClusterAssignment ca = components_from_edges(6, edges);
    CHECK(ca.class_points == std::vector<int>{1, 1, 1, 0, 2, 2});
    CHECK(ca.cluster_count() == 2);
    CHECK(ca.sizes.at(1) == 3);
    CHECK(ca.sizes.at(2) == 2);

    // equal sizes: the component containing the smallest index wins id 1
    std::vector<std::pair<int, int>> tie_edges = {{2, 3}, {0, 1}};
    ClusterAssignment tie = components_from_edges(4, tie_edges);
    CHECK(tie.class_points == std::vector<int>{1, 1, 2, 2});
}

TEST_CASE("knn and mst labelers validate parameters") {
    Fitted f = fit_two_blobs(10);
    CHECK_THROWS_AS(label_knn_adjacency(f.model, f.proj, 0, 20), config_error);
    CHECK_THROWS_AS(label_knn_adjacency(f.model, f.proj, 4, 0), config_error);
    CHECK_THROWS_AS(label_mst_adjacency(f.model, f.proj, 0, 20), config_error);
    CHECK_THROWS_AS(build_adjacency(f.model, f.proj, 0), config_error);
}
