#pragma once

#include "svclust/labeling.hpp"
#include "svclust/projection.hpp"
#include "svclust/svdd.hpp"

#include <string>
#include <vector>

namespace svclust {

/// Serialize a fitted model to a versioned flat text file. All reals use 17
/// significant digits, so save/load round trips are bit-exact and reruns are
/// byte-identical.
void save_model(const SvcModel& model, const std::string& path);

/// Load a model written by save_model. Throws runtime_error on version or
/// format problems (corrupt model file).
SvcModel load_model(const std::string& path);

/// Projection coordinates as CSV: name,c1,c2 (17 significant digits).
void save_projection(const Projection2D& proj, const std::vector<std::string>& row_names,
                     const std::string& path);
Projection2D load_projection(const std::string& path, std::vector<std::string>* row_names);

/// Assignment as CSV: name,cluster.
void save_assignment(const ClusterAssignment& assignment,
                     const std::vector<std::string>& row_names, const std::string& path);
ClusterAssignment load_assignment(const std::string& path,
                                  std::vector<std::string>* row_names);

/// Grid labeling as a G x G integer table (row a = lattice x index) preceded
/// by a header line with the grid geometry.
void save_grid_labeling(const GridLabeling& gl, const std::string& path);
GridLabeling load_grid_labeling(const std::string& path);

} // namespace svclust
