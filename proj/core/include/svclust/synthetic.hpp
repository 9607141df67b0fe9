#pragma once

#include "svclust/data_matrix.hpp"
#include "svclust/term_dataset.hpp"

#include <cstdint>

namespace svclust {

/// Parameters of the two-blob benchmark fixture: two truncated Gaussian
/// point clouds whose inter-blob gap is at least 4x the intra-blob radius.
struct TwoBlobParams {
    int n_per_blob = 30;      ///< base size; each blob adds 0..10 extra points
    double sigma = 0.25;      ///< blob scale; points truncated at 3*sigma
    double distance = 5.0;    ///< centre separation (gap = distance - 2*3*sigma)
};

/// Seeded 2-D two-blob dataset, tags 1 and 2, row names "<tag> <blob><idx>".
DataMatrix make_two_blobs(std::uint64_t seed, const TwoBlobParams& params = TwoBlobParams{});

/// Seeded synthetic term corpus: 1893 terms over 6 overlapping classes and a
/// 38-radical vocabulary. Each class owns a handful of radical motifs; a term
/// keeps each motif radical with high probability and picks up sparse noise
/// radicals, so terms form tight profile clumps with cross-class overlap.
TermDataset make_synthetic_terms(std::uint64_t seed);

/// The 38-radical vocabulary of make_synthetic_terms.
const std::vector<std::string>& synthetic_radicals();

} // namespace svclust
