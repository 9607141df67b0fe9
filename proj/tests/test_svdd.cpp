#include "svclust/errors.hpp"
#include "svclust/kernels.hpp"
#include "svclust/rng.hpp"
#include "svclust/svdd.hpp"

#include <doctest.h>

#include <cmath>

using namespace svclust;

namespace {

DataMatrix matrix_of(const std::vector<std::vector<double>>& rows) {
    DataMatrix dm;
    dm.values.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            dm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
        dm.row_names.push_back(std::to_string(i + 1));
        dm.class_tags.push_back(0);
    }
    for (std::size_t j = 0; j < rows[0].size(); ++j)
        dm.col_names.push_back("a" + std::to_string(j + 1));
    return dm;
}

// Fixed 5-point instance whose dual optimum was verified against an
// exhaustive simplex-grid enumeration (316251 candidate vectors, grid 1e-4).
const std::vector<std::vector<double>> kFivePoints = {
    {0, 0}, {2, 0.5}, {1, 2}, {3, 3}, {0.5, 1.5}};

SvcModel fit_five(OptimMethod method, std::uint64_t seed = 42) {
    DataMatrix dm = matrix_of(kFivePoints);
    KernelOptions opt;
    opt.q = 0.5;
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, opt);
    return solve_dual(make_ball_problem(k, 0.2), method, seed);  // C = 1
}

double dual_objective(const SvcModel& m) {
    // W = sum_i beta_i K_ii - beta' K beta; Gaussian diagonal is 1.
    return 1.0 - m.center_norm_sq;
}

} // namespace

TEST_CASE("make_ball_problem derives and clamps C") {
    DataMatrix dm = matrix_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, KernelOptions{});
    BallProblem p = make_ball_problem(k, 0.5);
    CHECK(p.C == doctest::Approx(0.5).epsilon(1e-15));
    // tiny nu pushes C above 1; it clamps and nu becomes effective 1/N
    BallProblem clamped = make_ball_problem(k, 1e-9);
    CHECK(clamped.C == 1.0);
    CHECK(clamped.nu == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(make_ball_problem(k, 0.0), config_error);
    CHECK_THROWS_AS(make_ball_problem(k, 1.5), config_error);
    CHECK_THROWS_AS(make_ball_problem(k, -0.1), config_error);
}

TEST_CASE("five-point instance matches the enumerated dual optimum") {
    SvcModel m = fit_five(OptimMethod::Quadratic);
    CHECK(dual_objective(m) == doctest::Approx(0.6899640115573205).epsilon(1e-6));
    CHECK(m.r_hat_sq == doctest::Approx(0.6899799158633033).epsilon(1e-5));
    // enumerated argmax on the 1e-4 grid
    const double expected_beta[5] = {0.2557, 0.2266, 0.1889, 0.2879, 0.0409};
    for (int i = 0; i < 5; ++i)
        CHECK(m.beta[i] == doctest::Approx(expected_beta[i]).epsilon(0.02));
    CHECK(m.beta.sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.sv_indices.size() == 5);  // all unbounded at C = 1
    CHECK(m.bsv_indices.empty());
    CHECK(!m.r_hat_from_bsv_fallback);
    CHECK(m.final_gap <= 1e-8);
}

TEST_CASE("two points: closed-form beta and radius") {
    DataMatrix dm = matrix_of({{0, 0}, {0.7, 0}});  // squared distance 0.49
    KernelOptions opt;
    opt.q = 1.3;
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, opt);
    SvcModel m = solve_dual(make_ball_problem(k, 0.9), OptimMethod::Quadratic);
    CHECK(m.beta[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.beta[1] == doctest::Approx(0.5).epsilon(1e-12));
    // R_hat^2 = (1 - k01) / 2 with k01 = exp(-1.3 * 0.49)
    CHECK(m.r_hat_sq == doctest::Approx(0.23556166174715876).epsilon(1e-10));
}

TEST_CASE("single point: trivial ball") {
    DataMatrix dm = matrix_of({{3.0, -1.0}});
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, KernelOptions{});
    SvcModel m = solve_dual(make_ball_problem(k, 1.0), OptimMethod::Quadratic);
    CHECK(m.beta[0] == 1.0);
    CHECK(m.r_hat_sq == 0.0);
    CHECK(m.center_norm_sq == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nu = 1 forces the uniform solution immediately") {
    DataMatrix dm = matrix_of({{0, 0}, {1, 0}, {0, 1}, {2, 2}, {3, 1}});
    KernelOptions opt;
    opt.q = 0.8;
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, opt);
    SvcModel m = solve_dual(make_ball_problem(k, 1.0), OptimMethod::Quadratic);
    for (int i = 0; i < 5; ++i) CHECK(m.beta[i] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(m.sweeps == 0);  // beta = C is the only feasible point
    CHECK(m.sv_indices.empty());
    CHECK(m.bsv_indices.size() == 5);
    CHECK(m.r_hat_from_bsv_fallback);  // radius must come from the bounded SVs
    CHECK(m.r_hat_sq > 0.0);
}

TEST_CASE("KKT conditions hold on random instances") {
    Rng rng(1234);
    for (int inst = 0; inst < 10; ++inst) {
        const int n = 5 + static_cast<int>(rng.below(20));
        std::vector<std::vector<double>> rows;
        rows.reserve(n);
        for (int i = 0; i < n; ++i)
            rows.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        DataMatrix dm = matrix_of(rows);
        KernelOptions opt;
        opt.q = rng.uniform(0.2, 3.0);
        KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, opt);
        const double nu = rng.uniform(0.05, 1.0);
        BallProblem p = make_ball_problem(k, nu);
        SvcModel m = solve_dual(p, OptimMethod::Quadratic);

        CHECK(m.beta.sum() == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(m.beta.minCoeff() >= 0.0);
        CHECK(m.beta.maxCoeff() <= p.C + 1e-15);

        const double tol = m.tol_kkt();
        for (int i = 0; i < n; ++i) {
            const double r2 = radius_sq_train(m, k, i);
            const double b = m.beta[i];
            if (b <= p.C * 1e-9) {
                CHECK(r2 <= m.r_hat_sq + tol);      // interior point
            } else if (b >= p.C * (1.0 - 1e-9)) {
                CHECK(r2 >= m.r_hat_sq - tol);      // bounded SV on or outside
            } else {
                CHECK(r2 == doctest::Approx(m.r_hat_sq).epsilon(1e-4));  // on the sphere
            }
        }
    }
}

TEST_CASE("stochastic optimizer approaches the quadratic optimum") {
    SvcModel mq = fit_five(OptimMethod::Quadratic);
    SvcModel ms = fit_five(OptimMethod::Stochastic, 42);
    CHECK(dual_objective(ms) == doctest::Approx(dual_objective(mq)).epsilon(2e-2));
    CHECK(ms.beta.sum() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(ms.beta.minCoeff() >= 0.0);
}

TEST_CASE("stochastic optimizer is deterministic per seed") {
    SvcModel a = fit_five(OptimMethod::Stochastic, 7);
    SvcModel b = fit_five(OptimMethod::Stochastic, 7);
    CHECK(a.beta == b.beta);
    SvcModel c = fit_five(OptimMethod::Stochastic, 8);
    CHECK(a.beta != c.beta);
}

TEST_CASE("radius_sq clamps round-off negatives and validates the row length") {
    SvcModel m;
    m.beta.resize(1);
    m.beta << 1.0;
    m.n = 1;
    m.center_norm_sq = 1.0;
    Eigen::VectorXd row(1);
    row << 1.0 + 2.5e-13;  // R^2 = 1 - 2*row + 1 is a tiny negative
    CHECK(radius_sq(m, row, 1.0) == 0.0);
    row << 0.5;
    CHECK(radius_sq(m, row, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::VectorXd wrong(2);
    wrong << 1.0, 1.0;
    CHECK_THROWS_AS(radius_sq(m, wrong, 1.0), config_error);
}

TEST_CASE("is_inside accepts nearby points and rejects far ones") {
    DataMatrix dm = matrix_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}});
    KernelOptions opt;
    opt.q = 0.5;
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, opt);
    SvcModel m = solve_dual(make_ball_problem(k, 0.9), OptimMethod::Quadratic);
    m.train_points = std::make_shared<Eigen::MatrixXd>(dm.values);
    Eigen::VectorXd center(2), far(2);
    center << 0.5, 0.5;
    far << 40.0, 40.0;
    CHECK(is_inside(m, center));
    CHECK(!is_inside(m, far));

    SvcModel no_points = m;
    no_points.train_points.reset();
    CHECK_THROWS_AS(is_inside(no_points, center), config_error);
}

TEST_CASE("optimizer method names round trip") {
    CHECK(optim_method_from_string("quadratic") == OptimMethod::Quadratic);
    CHECK(optim_method_from_string("stochastic") == OptimMethod::Stochastic);
    CHECK(to_string(OptimMethod::Stochastic) == "stochastic");
    CHECK_THROWS_AS(optim_method_from_string("newton"), config_error);
}
