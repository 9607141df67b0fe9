#include "svclust/svdd.hpp"

#include "svclust/errors.hpp"
#include "svclust/rng.hpp"
#include "svclust/text_util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace svclust {

OptimMethod optim_method_from_string(const std::string& s) {
    std::string t = to_lower(trim(s));
    if (t == "quadratic" || t == "quad") return OptimMethod::Quadratic;
    if (t == "stochastic" || t == "stoch") return OptimMethod::Stochastic;
    throw config_error("unknown optimizer method '" + s + "' (expected quadratic or stochastic)");
}

std::string to_string(OptimMethod m) {
    return m == OptimMethod::Quadratic ? "quadratic" : "stochastic";
}

BallProblem make_ball_problem(KernelMatrix kernel, double nu) {
    const int n = kernel.n();
    if (n < 1) throw config_error("empty kernel matrix");
    if (!(nu > 0.0) || nu > 1.0)
        throw config_error("nu must lie in (0, 1], got " + fmt_g17(nu));
    BallProblem p;
    p.kernel = std::move(kernel);
    p.nu = nu;
    p.C = 1.0 / (static_cast<double>(n) * nu);
    if (p.C > 1.0) {
        // The box never needs to exceed 1 (sum of beta is 1); clamp and record
        // the effective nu so the invariant nu = 1/(N*C) keeps holding.
        p.C = 1.0;
        p.nu = 1.0 / static_cast<double>(n);
    }
    return p;
}

namespace {

/// Duality gap of the box-simplex LP relaxation: the best linear objective
/// g.beta over {0 <= beta <= C, sum beta = 1} minus the current g.beta. The
/// LP fills mass C into the largest gradient entries until the budget of 1
/// is spent.
double duality_gap(const Eigen::VectorXd& g, const Eigen::VectorXd& beta, double c) {
    const Eigen::Index n = g.size();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g[a] != g[b]) return g[a] > g[b];
        return a < b;
    });
    double lp = 0.0, mass = 0.0;
    for (int idx : order) {
        const double take = std::min(c, 1.0 - mass);
        lp += take * g[idx];
        mass += take;
        if (mass >= 1.0 - 1e-15) break;
    }
    return lp - g.dot(beta);
}

/// Projection onto {0 <= v <= C, sum v = 1} by bisection on the shift tau
/// with sum_i clip(v_i - tau, 0, C) = 1.
Eigen::VectorXd project_box_simplex(const Eigen::VectorXd& v, double c) {
    const Eigen::Index n = v.size();
    double lo = v.minCoeff() - c - 1.0;
    double hi = v.maxCoeff();
    for (int it = 0; it < 64; ++it) {
        const double tau = 0.5 * (lo + hi);
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            s += std::clamp(v[i] - tau, 0.0, c);
        if (s > 1.0)
            lo = tau;
        else
            hi = tau;
    }
    const double tau = 0.5 * (lo + hi);
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = std::clamp(v[i] - tau, 0.0, c);
    return out;
}

struct SolveState {
    Eigen::VectorXd beta;
    long long sweeps = 0;
    double final_gap = 0.0;
};

/// Pairwise coordinate ascent with maximal-violating-pair selection.
SolveState solve_quadratic(const Eigen::MatrixXd& k, double c) {
    const Eigen::Index n = k.rows();
    const double bound_eps = c * 1e-12;
    SolveState st;
    st.beta = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

    const Eigen::VectorXd diag = k.diagonal();
    Eigen::VectorXd g = diag - 2.0 * (k * st.beta);

    const long long max_sweeps = 100000;
    // The O(N log N) gap is evaluated every sweep for ordinary sizes and
    // every 32 sweeps for very large problems.
    const long long gap_stride = n <= 1024 ? 1 : 32;
    double gap = duality_gap(g, st.beta, c);

    while (gap > 1e-8 && st.sweeps < max_sweeps) {
        // Maximal violating pair: raise the largest gradient with headroom,
        // lower the smallest gradient with mass to give.
        int i = -1, j = -1;
        double gi = -1e300, gj = 1e300;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (st.beta[t] < c - bound_eps && g[t] > gi) { gi = g[t]; i = static_cast<int>(t); }
            if (st.beta[t] > bound_eps && g[t] < gj) { gj = g[t]; j = static_cast<int>(t); }
        }
        if (i < 0 || j < 0 || i == j) break;

        const double eta = std::max(diag[i] - 2.0 * k(i, j) + diag[j], 1e-14);
        double step = (g[i] - g[j]) / (2.0 * eta);
        step = std::min({step, c - st.beta[i], st.beta[j]});
        if (step <= 0.0) break;

        st.beta[i] += step;
        st.beta[j] -= step;
        g -= (2.0 * step) * (k.col(i) - k.col(j));
        ++st.sweeps;

        if (st.sweeps % gap_stride == 0) gap = duality_gap(g, st.beta, c);
    }
    st.final_gap = duality_gap(g, st.beta, c);
    if (st.final_gap > 1e-4)
        throw runtime_error("optimizer did not converge: duality gap " +
                            fmt_g17(st.final_gap) + " after " + std::to_string(st.sweeps) +
                            " sweeps");
    return st;
}

/// Projected stochastic gradient ascent, step 1/(t+10), budget 200*N.
SolveState solve_stochastic(const Eigen::MatrixXd& k, double c, std::uint64_t seed) {
    const Eigen::Index n = k.rows();
    SolveState st;
    st.beta = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    const Eigen::VectorXd diag = k.diagonal();
    Rng rng(seed);

    const long long budget = 200LL * static_cast<long long>(n);
    const int batch = static_cast<int>(std::min<Eigen::Index>(n, 8));
    const double scale = static_cast<double>(n) / static_cast<double>(batch);

    for (long long t = 0; t < budget; ++t) {
        const double step = 1.0 / (static_cast<double>(t) + 10.0);
        // Unbiased gradient estimate of W(beta) = beta.diag - beta'K beta from
        // a minibatch of sampled columns: d - 2*(N/B) * sum_j beta_j K(:,j).
        Eigen::VectorXd est = Eigen::VectorXd::Zero(n);
        for (int b = 0; b < batch; ++b) {
            const auto jj = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
            est += st.beta[jj] * k.col(jj);
        }
        Eigen::VectorXd grad = diag - 2.0 * scale * est;
        st.beta = project_box_simplex(st.beta + step * grad, c);
        ++st.sweeps;
    }
    Eigen::VectorXd g = diag - 2.0 * (k * st.beta);
    st.final_gap = duality_gap(g, st.beta, c);
    return st;
}

} // namespace

SvcModel solve_dual(const BallProblem& problem, OptimMethod method, std::uint64_t seed) {
    const int n = problem.kernel.n();
    const double c = problem.C;

    // Regularized copy used by the optimizer only; reported quantities come
    // from the original kernel.
    Eigen::MatrixXd kreg = problem.kernel.values;
    kreg.diagonal().array() += 1e-10;

    SolveState st;
    if (n == 1) {
        st.beta = Eigen::VectorXd::Ones(1);
    } else if (method == OptimMethod::Quadratic) {
        st = solve_quadratic(kreg, c);
    } else {
        st = solve_stochastic(kreg, c, seed);
    }

    SvcModel m;
    m.beta = st.beta;
    m.kernel_kind = problem.kernel.kind;
    m.q = problem.kernel.q;
    m.nu = problem.nu;
    m.C = c;
    m.n = n;
    m.method = method;
    m.seed = seed;
    m.sweeps = st.sweeps;
    m.final_gap = st.final_gap;

    // Support-vector split. The quadratic solver drives coordinates onto the
    // bounds exactly; the stochastic one only approaches them, so its
    // classification band is wider.
    const double tol_b = c * (method == OptimMethod::Quadratic ? 1e-9 : 1e-3);
    for (int i = 0; i < n; ++i) {
        const double b = m.beta[i];
        if (b >= c - tol_b)
            m.bsv_indices.push_back(i);
        else if (b > tol_b)
            m.sv_indices.push_back(i);
    }

    const Eigen::MatrixXd& k = problem.kernel.values;
    m.center_norm_sq = m.beta.dot(k * m.beta);

    const Eigen::VectorXd kb = k * m.beta;
    auto r2_of = [&](int i) {
        double v = k(i, i) - 2.0 * kb[i] + m.center_norm_sq;
        return v < 0.0 ? 0.0 : v;
    };
    if (!m.sv_indices.empty()) {
        double s = 0.0;
        for (int i : m.sv_indices) s += r2_of(i);
        m.r_hat_sq = s / static_cast<double>(m.sv_indices.size());
    } else {
        // Every support vector is at the bound: take the max over them so the
        // ball still encloses the mass it was fitted on, and flag the model.
        m.r_hat_from_bsv_fallback = true;
        double mx = 0.0;
        const auto& pool = m.bsv_indices;
        for (int i : pool) mx = std::max(mx, r2_of(i));
        m.r_hat_sq = mx;
    }
    return m;
}

double radius_sq(const SvcModel& model, const Eigen::VectorXd& y_kernel_row, double k_yy) {
    if (y_kernel_row.size() != model.beta.size())
        throw config_error("kernel row length " + std::to_string(y_kernel_row.size()) +
                           " does not match model size " + std::to_string(model.beta.size()));
    double v = k_yy - 2.0 * y_kernel_row.dot(model.beta) + model.center_norm_sq;
    return v < 0.0 ? 0.0 : v;
}

double radius_sq_train(const SvcModel& model, const KernelMatrix& kernel, int i) {
    if (kernel.n() != model.n) throw config_error("kernel/model size mismatch");
    if (i < 0 || i >= model.n) throw config_error("training index out of range");
    return radius_sq(model, kernel.values.col(i), kernel.values(i, i));
}

bool is_inside(const SvcModel& model, const Eigen::VectorXd& y) {
    if (!model.train_points)
        throw config_error("out-of-sample evaluation is unavailable for kernel " +
                           to_string(model.kernel_kind) +
                           " (no retained training attributes)");
    const Eigen::MatrixXd& x = *model.train_points;
    if (y.size() != x.cols()) throw config_error("query dimension mismatch");

    Eigen::VectorXd row(x.rows());
    double k_yy = 1.0;
    switch (model.kernel_kind) {
        case KernelKind::Gaussian:
            for (Eigen::Index i = 0; i < x.rows(); ++i)
                row[i] = std::exp(-model.q * (x.row(i).transpose() - y).squaredNorm());
            break;
        case KernelKind::GaussianDist:
            for (Eigen::Index i = 0; i < x.rows(); ++i)
                row[i] = std::exp(-model.q * (x.row(i).transpose() - y).norm());
            break;
        case KernelKind::Linear:
            row = x * y;
            k_yy = y.squaredNorm();
            break;
        default:
            throw config_error("out-of-sample evaluation is unavailable for kernel " +
                               to_string(model.kernel_kind));
    }
    return radius_sq(model, row, k_yy) <= model.r_hat_sq;
}

} // namespace svclust
