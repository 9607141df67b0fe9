#pragma once

#include "svclust/data_matrix.hpp"
#include "svclust/term_dataset.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace svclust {

/// Kernel families. Linear/Gaussian/GaussianDist consume numeric attribute
/// rows; LRB/RBL/JRB/RBJ/JRBPlus and the string kernels consume terms;
/// Precomputed wraps a user-supplied symmetric matrix.
enum class KernelKind {
    Linear,
    Gaussian,      ///< exp(-q * ||x1 - x2||^2)  (RBF)
    GaussianDist,  ///< exp(-q * ||x1 - x2||)    (exponential)
    Precomputed,
    LRB,           ///< radial kernel over Levenshtein similarity profiles
    RBL,           ///< exp(-q * D_ij), D = weighted Levenshtein distance
    JRB,           ///< radial kernel over Jaccard similarity profiles
    RBJ,           ///< exp(-q * J_ij), J = Jaccard index
    JRBPlus,       ///< JRB after replacing zero Jaccard entries with noise
    SKConstant,    ///< all-subsequences string kernel (cosine-normalized)
    SKSpectrum,    ///< shared n-gram count kernel (cosine-normalized)
};

KernelKind kernel_kind_from_string(const std::string& s);
std::string to_string(KernelKind k);

/// True for kinds whose matrix has a unit diagonal and entries in (0, 1].
bool is_radial(KernelKind k);

/// Edit-operation weights of the Levenshtein distance.
struct LevenshteinWeights {
    double w_insert = 1.0;
    double w_delete = 1.0;
    double w_substitute = 1.0;
};

/// Symmetric positive-semidefinite similarity matrix.
struct KernelMatrix {
    Eigen::MatrixXd values;  ///< N x N, symmetric
    KernelKind kind = KernelKind::Gaussian;
    double q = 1.0;          ///< width parameter of the radial kinds

    int n() const { return static_cast<int>(values.rows()); }
};

/// Assembly parameters for build_kernel_matrix.
struct KernelOptions {
    double q = 1.0;                  ///< width; must be > 0 for radial kinds
    std::uint64_t seed = 42;         ///< noise seed for JRBPlus
    double jaccard_noise_eps = 0.05; ///< JRBPlus noise amplitude; 0 = plain JRB
    int sk_n = 3;                    ///< n-gram length for SKSpectrum
    LevenshteinWeights lev_weights{};
};

/// Gaussian RBF kernel value exp(-q * ||x1 - x2||^2). Throws config_error on
/// dimension mismatch or q <= 0.
double gaussian_kernel(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, double q);

/// Exponential kernel value exp(-q * ||x1 - x2||).
double gaussian_dist_kernel(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, double q);

/// Plain dot product.
double linear_kernel(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2);

/// Weighted Levenshtein distance: D(0,0)=0, first row/column filled by pure
/// insert/delete costs, then the usual min(insert, delete, substitute)
/// recurrence. Unit weights give the classic edit distance.
double levenshtein(const std::string& a, const std::string& b,
                   const LevenshteinWeights& w = LevenshteinWeights{});

/// Jaccard index |s1 ∩ s2| / |s1 ∪ s2|; defined as 0 when both sets are empty.
double jaccard(const std::set<std::string>& s1, const std::set<std::string>& s2);

enum class StringKernelKind { Constant, Spectrum };

/// Raw string-kernel value.
/// constant: number of common (possibly non-contiguous) character
/// subsequences, excluding the empty one; matching in order contributes at
/// every shared length, so ordered matches score higher.
/// spectrum: count of shared contiguous n-grams summed over occurrence
/// multiplicities. n must be >= 1.
double string_kernel(const std::string& a, const std::string& b,
                     StringKernelKind kind, int n = 3);

/// Build the kernel matrix of a numeric dataset (Linear/Gaussian/GaussianDist).
KernelMatrix build_kernel_matrix(const DataMatrix& data, KernelKind kind,
                                 const KernelOptions& opt = KernelOptions{});

/// Build the kernel matrix of a term dataset (LRB/RBL/JRB/RBJ/JRBPlus/SK*).
KernelMatrix build_kernel_matrix(const TermDataset& terms, KernelKind kind,
                                 const KernelOptions& opt = KernelOptions{});

/// Wrap a user-supplied matrix as a Precomputed kernel; throws config_error
/// if it is not square and symmetric.
KernelMatrix precomputed_kernel(const Eigen::MatrixXd& values);

/// Pairwise Jaccard index matrix of the terms' token sets.
Eigen::MatrixXd jaccard_matrix(const TermDataset& terms);

/// Pairwise weighted Levenshtein distance matrix of the raw term strings.
Eigen::MatrixXd levenshtein_matrix(const TermDataset& terms,
                                   const LevenshteinWeights& w = LevenshteinWeights{});

} // namespace svclust
