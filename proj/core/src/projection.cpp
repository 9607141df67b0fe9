#include "svclust/projection.hpp"

#include "svclust/errors.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace svclust {

namespace {

/// Compute the bounding box; a degenerate axis (zero extent) is padded by
/// +-0.5 so the grid scale stays positive.
void set_bbox(Projection2D& p) {
    p.min_x = p.coords.col(0).minCoeff();
    p.max_x = p.coords.col(0).maxCoeff();
    p.min_y = p.coords.col(1).minCoeff();
    p.max_y = p.coords.col(1).maxCoeff();
    if (p.max_x - p.min_x <= 1e-12) { p.min_x -= 0.5; p.max_x += 0.5; }
    if (p.max_y - p.min_y <= 1e-12) { p.min_y -= 0.5; p.max_y += 0.5; }
}

} // namespace

Projection2D projection_from_coords(Eigen::MatrixXd coords, ProjectionSource source) {
    if (coords.cols() != 2) throw config_error("projection coordinates must have 2 columns");
    if (coords.rows() < 1) throw config_error("projection needs at least one point");
    if (!coords.allFinite()) throw config_error("non-finite projection coordinate");
    Projection2D p;
    p.coords = std::move(coords);
    p.source = source;
    set_bbox(p);
    return p;
}

Projection2D coa(const DataMatrix& data) {
    const Eigen::MatrixXd& x = data.values;
    const Eigen::Index n = x.rows(), d = x.cols();
    if ((x.array() < 0.0).any())
        throw config_error("correspondence analysis needs nonnegative input");
    const double total = x.sum();
    if (!(total > 0.0)) throw config_error("correspondence analysis: zero total mass");

    const Eigen::VectorXd row_sums = x.rowwise().sum();
    const Eigen::VectorXd col_sums = x.colwise().sum();
    for (Eigen::Index i = 0; i < n; ++i)
        if (row_sums[i] <= 0.0)
            throw config_error("correspondence analysis: all-zero row " + std::to_string(i + 1));
    for (Eigen::Index j = 0; j < d; ++j)
        if (col_sums[j] <= 0.0)
            throw config_error("correspondence analysis: all-zero column " +
                               std::to_string(j + 1));

    // P = X/total, row masses r, column masses c,
    // S = D_r^{-1/2} (P - r c') D_c^{-1/2}.
    const Eigen::VectorXd r = row_sums / total;
    const Eigen::VectorXd c = col_sums / total;
    Eigen::MatrixXd s = x / total - r * c.transpose();
    const Eigen::VectorXd ri = r.array().rsqrt();
    const Eigen::VectorXd ci = c.array().rsqrt();
    s = ri.asDiagonal() * s * ci.asDiagonal();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeThinU);
    const Eigen::VectorXd& sigma = svd.singularValues();

    // Row principal coordinates of the two largest axes.
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, 2);
    const int axes = static_cast<int>(std::min<Eigen::Index>(2, sigma.size()));
    for (int j = 0; j < axes; ++j) {
        if (sigma[j] <= 1e-12) continue;  // degenerate axis stays a zero column
        f.col(j) = ri.asDiagonal() * svd.matrixU().col(j) * sigma[j];
        // Canonical sign: the largest-magnitude coordinate is positive.
        Eigen::Index imax = 0;
        f.col(j).cwiseAbs().maxCoeff(&imax);
        if (f(imax, j) < 0.0) f.col(j) = -f.col(j);
    }

    Projection2D p = projection_from_coords(std::move(f), ProjectionSource::Coa);
    p.cx = 0;
    p.cy = 0;
    return p;
}

Projection2D project(const DataMatrix& data, int cx, int cy) {
    if (cx == 0 && cy == 0) return coa(data);
    if (cx < 1 || cy < 1 || cx > data.cols() || cy > data.cols())
        throw config_error("projection columns out of range: cx=" + std::to_string(cx) +
                           " cy=" + std::to_string(cy) + " with " +
                           std::to_string(data.cols()) + " columns");
    if (cx == cy) throw config_error("projection columns must be distinct");
    Eigen::MatrixXd coords(data.rows(), 2);
    coords.col(0) = data.values.col(cx - 1);
    coords.col(1) = data.values.col(cy - 1);
    Projection2D p = projection_from_coords(std::move(coords), ProjectionSource::Columns);
    p.cx = cx;
    p.cy = cy;
    return p;
}

} // namespace svclust
