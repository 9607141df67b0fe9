#pragma once

#include "svclust/data_matrix.hpp"

#include <Eigen/Dense>

namespace svclust {

enum class ProjectionSource { Columns, Coa };

/// The 2-D coordinates over which the labelers operate: either two chosen
/// attribute columns or the first two correspondence-analysis axes.
struct Projection2D {
    Eigen::MatrixXd coords;  ///< N x 2 (c1, c2), all finite
    ProjectionSource source = ProjectionSource::Coa;
    int cx = 0, cy = 0;      ///< 1-based column choices (Columns mode)

    /// Bounding box; a degenerate axis is padded so the extent stays positive.
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;

    int size() const { return static_cast<int>(coords.rows()); }
};

/// Dispatch on (cx, cy): both 0 selects correspondence analysis, otherwise
/// the two (distinct, valid, 1-based) columns are copied verbatim.
Projection2D project(const DataMatrix& data, int cx, int cy);

/// Correspondence analysis, row principal coordinates of the two largest
/// axes. With P = data/total, row masses r, column masses c and
/// S = D_r^{-1/2} (P - r c') D_c^{-1/2} = U Sigma V', the coordinates are
/// the first two columns of D_r^{-1/2} U Sigma.
/// Axis signs are canonicalized (the largest-magnitude coordinate is made
/// positive); a degenerate axis (sigma <= 1e-12) becomes a zero column whose
/// bounding box is padded by +-0.5.
/// Throws config_error on negative entries, all-zero rows/columns, or zero
/// total mass.
Projection2D coa(const DataMatrix& data);

/// Rebuild a Projection2D from raw 2-D coordinates (applies the same
/// bounding-box and degenerate-axis padding rules).
Projection2D projection_from_coords(Eigen::MatrixXd coords, ProjectionSource source);

} // namespace svclust
