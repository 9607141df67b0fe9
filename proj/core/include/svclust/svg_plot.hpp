#pragma once

#include "svclust/labeling.hpp"
#include "svclust/projection.hpp"
#include "svclust/svdd.hpp"

#include <string>

namespace svclust {

struct PlotOptions {
    int width = 840;
    int height = 840;
    int margin = 48;
    bool draw_grid_cells = true;   ///< shade in-ball lattice cells by cluster id
    bool draw_sv_markers = true;   ///< ring unbounded SVs, dash-ring bounded SVs
    std::string title;
};

/// Color for a cluster id: a fixed 12-color palette cycling with the id;
/// id 0 (unclassified) is grey.
std::string cluster_color(int id);

/// Render the clustered projection as a standalone SVG document. The output
/// is a pure function of the inputs (fixed formatting), so repeated runs are
/// byte-identical. `grid_labels` and `model` may be null to skip the cell
/// shading / SV marker layers.
std::string render_svg(const Projection2D& proj, const ClusterAssignment& assignment,
                       const GridLabeling* grid_labels, const SvcModel* model,
                       const PlotOptions& options = {});

/// Render and write to `path` (throws runtime_error on I/O failure).
void save_svg(const std::string& path, const Projection2D& proj,
              const ClusterAssignment& assignment, const GridLabeling* grid_labels,
              const SvcModel* model, const PlotOptions& options = {});

} // namespace svclust
