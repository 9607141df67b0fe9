#pragma once

#include "svclust/kernels.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

namespace svclust {

/// The minimum-enclosing-ball problem in feature space: the dual is
///   maximize  sum_i beta_i K_ii - sum_ij beta_i beta_j K_ij
///   subject to  sum_i beta_i = 1,  0 <= beta_i <= C,  C = 1/(N*nu).
/// nu in (0,1] bounds the fraction of points left outside the ball
/// (bounded support vectors); C is clamped into [1/N, 1].
struct BallProblem {
    KernelMatrix kernel;
    double nu = 0.5;
    double C = 1.0;
};

/// Validate nu, derive C = 1/(N*nu) clamped into [1/N, 1], and bundle the
/// kernel. Throws config_error for nu outside (0, 1].
BallProblem make_ball_problem(KernelMatrix kernel, double nu);

enum class OptimMethod { Quadratic, Stochastic };

OptimMethod optim_method_from_string(const std::string& s);
std::string to_string(OptimMethod m);

/// Fitted ball. beta lives on the box-constrained simplex; r_hat_sq is the
/// squared radius (mean squared distance of the unbounded support vectors to
/// the center); center_norm_sq = beta' K beta.
struct SvcModel {
    Eigen::VectorXd beta;
    double r_hat_sq = 0.0;
    double center_norm_sq = 0.0;
    std::vector<int> sv_indices;   ///< unbounded support vectors (0 < beta < C)
    std::vector<int> bsv_indices;  ///< bounded support vectors (beta = C)
    bool r_hat_from_bsv_fallback = false;  ///< no unbounded SV existed

    KernelKind kernel_kind = KernelKind::Gaussian;
    double q = 1.0;
    double nu = 0.5;
    double C = 1.0;
    int n = 0;

    OptimMethod method = OptimMethod::Quadratic;
    std::uint64_t seed = 0;
    long long sweeps = 0;     ///< optimizer iterations actually used
    double final_gap = 0.0;   ///< duality gap at termination (quadratic)

    /// Training attribute rows, kept for out-of-sample kernel evaluation
    /// (null for Precomputed kernels or term kernels).
    std::shared_ptr<const Eigen::MatrixXd> train_points;

    /// KKT tolerance: 1e-6 relative to the squared radius scale.
    double tol_kkt() const { return 1e-6 * (r_hat_sq > 1.0 ? r_hat_sq : 1.0); }
};

/// Solve the dual.
/// quadratic: pairwise coordinate ascent (two-index updates preserving the
/// simplex sum) run until the duality gap is <= 1e-8, capped at 1e5 sweeps;
/// deterministic. Throws runtime_error carrying the final gap if the cap is
/// reached while the gap is still large.
/// stochastic: projected stochastic gradient ascent with step 1/(t+10) and
/// projection onto the box-constrained simplex, fixed budget of 200*N
/// iterations; deterministic given the seed.
SvcModel solve_dual(const BallProblem& problem, OptimMethod method,
                    std::uint64_t seed = 42);

/// Squared distance of a point y to the ball center:
///   R^2(y) = K(y,y) - 2 sum_i beta_i K(y, x_i) + center_norm_sq.
/// y_kernel_row holds K(y, x_i) for every training point. The result is
/// clamped to 0 when round-off produces a tiny negative value.
/// Throws config_error if the row length differs from N.
double radius_sq(const SvcModel& model, const Eigen::VectorXd& y_kernel_row,
                 double k_yy);

/// R^2 for training point i straight from the fitted kernel matrix.
double radius_sq_train(const SvcModel& model, const KernelMatrix& kernel, int i);

/// True iff y falls inside or on the fitted ball. Requires an attribute
/// kernel (Gaussian/GaussianDist/Linear) with retained training points;
/// throws config_error for Precomputed or term kernels.
bool is_inside(const SvcModel& model, const Eigen::VectorXd& y);

} // namespace svclust
