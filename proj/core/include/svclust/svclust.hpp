#pragma once

// Umbrella header: the full public surface of svclust::core.

#include "svclust/data_matrix.hpp"
#include "svclust/errors.hpp"
#include "svclust/evaluation.hpp"
#include "svclust/kernels.hpp"
#include "svclust/labeling.hpp"
#include "svclust/model_io.hpp"
#include "svclust/projection.hpp"
#include "svclust/rng.hpp"
#include "svclust/svdd.hpp"
#include "svclust/svg_plot.hpp"
#include "svclust/synthetic.hpp"
#include "svclust/term_dataset.hpp"
#include "svclust/text_util.hpp"
