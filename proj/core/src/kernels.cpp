#include "svclust/kernels.hpp"

#include "svclust/errors.hpp"
#include "svclust/rng.hpp"
#include "svclust/text_util.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace svclust {

KernelKind kernel_kind_from_string(const std::string& s) {
    std::string t = to_lower(trim(s));
    if (t == "linear") return KernelKind::Linear;
    if (t == "gaussian") return KernelKind::Gaussian;
    if (t == "gaussiandist" || t == "gaussian-dist") return KernelKind::GaussianDist;
    if (t == "precomputed") return KernelKind::Precomputed;
    if (t == "lrb") return KernelKind::LRB;
    if (t == "rbl") return KernelKind::RBL;
    if (t == "jrb") return KernelKind::JRB;
    if (t == "rbj") return KernelKind::RBJ;
    if (t == "jrbplus" || t == "jrb+") return KernelKind::JRBPlus;
    if (t == "sk-constant" || t == "skconstant") return KernelKind::SKConstant;
    if (t == "sk-spectrum" || t == "skspectrum") return KernelKind::SKSpectrum;
    throw config_error("unknown kernel kind '" + s + "'");
}

std::string to_string(KernelKind k) {
    switch (k) {
        case KernelKind::Linear: return "linear";
        case KernelKind::Gaussian: return "gaussian";
        case KernelKind::GaussianDist: return "gaussiandist";
        case KernelKind::Precomputed: return "precomputed";
        case KernelKind::LRB: return "lrb";
        case KernelKind::RBL: return "rbl";
        case KernelKind::JRB: return "jrb";
        case KernelKind::RBJ: return "rbj";
        case KernelKind::JRBPlus: return "jrbplus";
        case KernelKind::SKConstant: return "sk-constant";
        case KernelKind::SKSpectrum: return "sk-spectrum";
    }
    return "gaussian";
}

bool is_radial(KernelKind k) {
    switch (k) {
        case KernelKind::Gaussian:
        case KernelKind::GaussianDist:
        case KernelKind::LRB:
        case KernelKind::RBL:
        case KernelKind::JRB:
        case KernelKind::JRBPlus:
            return true;
        default:
            // RBJ maps the Jaccard *similarity* through exp(-q.), so its
            // diagonal is e^{-q}, not 1; it is kept out of the unit-diagonal
            // family on purpose.
            return false;
    }
}

namespace {

bool needs_q(KernelKind k) {
    return k != KernelKind::Linear && k != KernelKind::Precomputed;
}

void check_q(KernelKind kind, double q) {
    if (needs_q(kind) && !(q > 0.0))
        throw config_error("invalid q for kernel " + to_string(kind) + ": " + fmt_g17(q) +
                           " (must be > 0)");
}

void check_dims(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size())
        throw config_error("kernel dimension mismatch: " + std::to_string(a.size()) +
                           " vs " + std::to_string(b.size()));
}

/// Mirror the upper triangle so K[i][j] == K[j][i] bit-exactly.
void symmetrize(Eigen::MatrixXd& k) {
    const Eigen::Index n = k.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) k(j, i) = k(i, j);
}

/// Squared Euclidean distances between the rows of x (gram trick),
/// clamped at 0 against round-off.
Eigen::MatrixXd row_sq_dists(const Eigen::MatrixXd& x) {
    const Eigen::VectorXd sq = x.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = (-2.0 * (x * x.transpose())).eval();
    d2.colwise() += sq;
    d2.rowwise() += sq.transpose();
    return d2.cwiseMax(0.0);
}

Eigen::MatrixXd attribute_kernel(const Eigen::MatrixXd& x, KernelKind kind, double q) {
    Eigen::MatrixXd k;
    switch (kind) {
        case KernelKind::Linear:
            k = x * x.transpose();
            break;
        case KernelKind::Gaussian:
            k = (-q * row_sq_dists(x)).array().exp();
            break;
        case KernelKind::GaussianDist:
            k = (-q * row_sq_dists(x).array().sqrt()).exp();
            break;
        default:
            throw config_error("kernel " + to_string(kind) +
                               " is not an attribute kernel; it needs term input");
    }
    symmetrize(k);
    return k;
}

/// exp(-q * squared distance between similarity-profile rows of s).
Eigen::MatrixXd profile_radial(const Eigen::MatrixXd& s, double q) {
    Eigen::MatrixXd k = (-q * row_sq_dists(s)).array().exp();
    symmetrize(k);
    return k;
}

} // namespace

double gaussian_kernel(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, double q) {
    check_dims(x1, x2);
    check_q(KernelKind::Gaussian, q);
    return std::exp(-q * (x1 - x2).squaredNorm());
}

double gaussian_dist_kernel(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, double q) {
    check_dims(x1, x2);
    check_q(KernelKind::GaussianDist, q);
    return std::exp(-q * (x1 - x2).norm());
}

double linear_kernel(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2) {
    check_dims(x1, x2);
    return x1.dot(x2);
}

double levenshtein(const std::string& a, const std::string& b, const LevenshteinWeights& w) {
    if (w.w_insert < 0 || w.w_delete < 0 || w.w_substitute < 0)
        throw config_error("negative Levenshtein weight");
    const std::size_t m = a.size(), n = b.size();
    std::vector<double> prev(n + 1), cur(n + 1);
    for (std::size_t j = 1; j <= n; ++j) prev[j] = prev[j - 1] + w.w_insert;
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = prev[0] + w.w_delete;
        for (std::size_t j = 1; j <= n; ++j) {
            double sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0.0 : w.w_substitute);
            cur[j] = std::min({prev[j] + w.w_delete, cur[j - 1] + w.w_insert, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

double jaccard(const std::set<std::string>& s1, const std::set<std::string>& s2) {
    if (s1.empty() && s2.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& t : s1) inter += s2.count(t);
    const std::size_t uni = s1.size() + s2.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double string_kernel(const std::string& a, const std::string& b, StringKernelKind kind,
                     int n) {
    if (kind == StringKernelKind::Spectrum) {
        if (n < 1) throw config_error("spectrum kernel needs n >= 1");
        const std::size_t un = static_cast<std::size_t>(n);
        if (a.size() < un || b.size() < un) return 0.0;
        std::unordered_map<std::string, int> grams;
        for (std::size_t i = 0; i + un <= a.size(); ++i) ++grams[a.substr(i, un)];
        double total = 0.0;
        for (std::size_t i = 0; i + un <= b.size(); ++i) {
            auto it = grams.find(b.substr(i, un));
            if (it != grams.end()) total += it->second;
        }
        return total;
    }
    // All-subsequences count, excluding the empty subsequence. dp(i,j) counts
    // matching subsequence pairs of a[0..i) x b[0..j) including the empty one:
    // dp(i,j) = dp(i-1,j) + sum_{l<=j, b[l-1]==a[i-1]} dp(i-1,l-1).
    const std::size_t m = a.size(), nn = b.size();
    std::vector<double> prev(nn + 1, 1.0), cur(nn + 1, 0.0);
    for (std::size_t i = 1; i <= m; ++i) {
        double running = 0.0;
        cur[0] = 1.0;
        for (std::size_t j = 1; j <= nn; ++j) {
            if (b[j - 1] == a[i - 1]) running += prev[j - 1];
            cur[j] = prev[j] + running;
        }
        std::swap(prev, cur);
    }
    return prev[nn] - 1.0;
}

Eigen::MatrixXd jaccard_matrix(const TermDataset& terms) {
    const int n = terms.size();
    // Token sets as sorted integer vectors for fast intersection.
    std::map<std::string, int> vocab;
    for (const auto& f : terms.features)
        vocab.emplace(f, static_cast<int>(vocab.size()));
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
    const auto raw = term_token_sets(terms);
    for (int i = 0; i < n; ++i) {
        for (const auto& tok : raw[static_cast<std::size_t>(i)])
            sets[static_cast<std::size_t>(i)].push_back(vocab.at(tok));
        std::sort(sets[static_cast<std::size_t>(i)].begin(),
                  sets[static_cast<std::size_t>(i)].end());
    }
    Eigen::MatrixXd j(n, n);
    for (int ii = 0; ii < n; ++ii) {
        for (int jj = ii; jj < n; ++jj) {
            const auto& s1 = sets[static_cast<std::size_t>(ii)];
            const auto& s2 = sets[static_cast<std::size_t>(jj)];
            std::size_t inter = 0, p1 = 0, p2 = 0;
            while (p1 < s1.size() && p2 < s2.size()) {
                if (s1[p1] == s2[p2]) { ++inter; ++p1; ++p2; }
                else if (s1[p1] < s2[p2]) ++p1;
                else ++p2;
            }
            const std::size_t uni = s1.size() + s2.size() - inter;
            const double v = uni == 0 ? 0.0
                                      : static_cast<double>(inter) / static_cast<double>(uni);
            j(ii, jj) = v;
            j(jj, ii) = v;
        }
    }
    return j;
}

Eigen::MatrixXd levenshtein_matrix(const TermDataset& terms, const LevenshteinWeights& w) {
    const int n = terms.size();
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double v = levenshtein(terms.terms[static_cast<std::size_t>(i)],
                                         terms.terms[static_cast<std::size_t>(j)], w);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

KernelMatrix precomputed_kernel(const Eigen::MatrixXd& values) {
    if (values.rows() != values.cols())
        throw config_error("precomputed kernel must be square");
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = i + 1; j < values.cols(); ++j)
            if (std::abs(values(i, j) - values(j, i)) > 1e-9 * scale)
                throw config_error("non-symmetric precomputed kernel at (" +
                                   std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    KernelMatrix k;
    k.values = values;
    symmetrize(k.values);
    k.kind = KernelKind::Precomputed;
    k.q = 0.0;
    return k;
}

KernelMatrix build_kernel_matrix(const DataMatrix& data, KernelKind kind,
                                 const KernelOptions& opt) {
    check_q(kind, opt.q);
    if (kind == KernelKind::Precomputed)
        return precomputed_kernel(data.values);
    KernelMatrix k;
    k.values = attribute_kernel(data.values, kind, opt.q);
    k.kind = kind;
    k.q = opt.q;
    return k;
}

KernelMatrix build_kernel_matrix(const TermDataset& terms, KernelKind kind,
                                 const KernelOptions& opt) {
    check_q(kind, opt.q);
    KernelMatrix k;
    k.kind = kind;
    k.q = opt.q;
    const int n = terms.size();

    switch (kind) {
        case KernelKind::Linear:
        case KernelKind::Gaussian:
        case KernelKind::GaussianDist: {
            // Attribute kernels consume the binary feature matrix.
            k.values = attribute_kernel(build_feature_matrix(terms).values, kind, opt.q);
            return k;
        }
        case KernelKind::RBL: {
            k.values = (-opt.q * levenshtein_matrix(terms, opt.lev_weights).array()).exp();
            symmetrize(k.values);
            return k;
        }
        case KernelKind::LRB: {
            k.values = profile_radial(levenshtein_matrix(terms, opt.lev_weights), opt.q);
            return k;
        }
        case KernelKind::RBJ: {
            k.values = (-opt.q * jaccard_matrix(terms).array()).exp();
            symmetrize(k.values);
            return k;
        }
        case KernelKind::JRB: {
            k.values = profile_radial(jaccard_matrix(terms), opt.q);
            return k;
        }
        case KernelKind::JRBPlus: {
            Eigen::MatrixXd j = jaccard_matrix(terms);
            // Zero entries become reproducible uniform draws in (0, eps],
            // applied symmetrically; eps = 0 leaves the matrix untouched.
            Rng rng(opt.seed);
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    if (j(a, b) == 0.0) {
                        const double v = opt.jaccard_noise_eps * (1.0 - rng.u01());
                        j(a, b) = v;
                        j(b, a) = v;
                    }
                }
            }
            k.values = profile_radial(j, opt.q);
            return k;
        }
        case KernelKind::SKConstant:
        case KernelKind::SKSpectrum: {
            const StringKernelKind sk = kind == KernelKind::SKConstant
                                            ? StringKernelKind::Constant
                                            : StringKernelKind::Spectrum;
            Eigen::MatrixXd raw(n, n);
            for (int i = 0; i < n; ++i)
                for (int jj = i; jj < n; ++jj) {
                    raw(i, jj) = string_kernel(terms.terms[static_cast<std::size_t>(i)],
                                               terms.terms[static_cast<std::size_t>(jj)], sk,
                                               opt.sk_n);
                    raw(jj, i) = raw(i, jj);
                }
            // Cosine normalization keeps the diagonal at 1 and the values
            // comparable across term lengths.
            k.values.resize(n, n);
            for (int i = 0; i < n; ++i)
                for (int jj = i; jj < n; ++jj) {
                    const double den = raw(i, i) * raw(jj, jj);
                    const double v = den > 0.0 ? raw(i, jj) / std::sqrt(den) : 0.0;
                    k.values(i, jj) = v;
                    k.values(jj, i) = v;
                }
            return k;
        }
        default:
            throw config_error("kernel " + to_string(kind) + " does not take term input");
    }
}

} // namespace svclust
