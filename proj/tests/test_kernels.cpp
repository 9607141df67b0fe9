#include "svclust/errors.hpp"
#include "svclust/kernels.hpp"
#include "svclust/synthetic.hpp"
#include "svclust/term_dataset.hpp"

#include <doctest.h>

#include <cmath>

using namespace svclust;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

TermDataset three_terms() {
    // token sets {a,b}, {b,c}, {a,b,c}
    return make_term_dataset({"a b", "b c", "a b c"}, {0, 0, 0}, LanguageModel::TM);
}

} // namespace

TEST_CASE("gaussian kernel point values") {
    Eigen::VectorXd x = vec2(0, 0), y = vec2(1, 2);
    CHECK(gaussian_kernel(x, x, 3.0) == 1.0);
    CHECK(gaussian_kernel(x, y, 0.5) == doctest::Approx(std::exp(-0.5 * 5.0)).epsilon(1e-15));
    CHECK(gaussian_dist_kernel(x, y, 0.5) ==
          doctest::Approx(std::exp(-0.5 * std::sqrt(5.0))).epsilon(1e-15));
    CHECK(linear_kernel(vec2(1, 2), vec2(3, 4)) == 11.0);
    CHECK_THROWS_AS(gaussian_kernel(x, y, 0.0), config_error);
    Eigen::VectorXd z(3);
    z << 1, 2, 3;
    CHECK_THROWS_AS(gaussian_kernel(x, z, 1.0), config_error);
}

TEST_CASE("weighted levenshtein distances") {
    LevenshteinWeights unit;
    CHECK(levenshtein("kitten", "sitting", unit) == 3.0);
    CHECK(levenshtein("", "abc", unit) == 3.0);
    CHECK(levenshtein("abc", "", unit) == 3.0);
    CHECK(levenshtein("flaw", "lawn", unit) == 2.0);
    CHECK(levenshtein("same", "same", unit) == 0.0);
    // insert cost 2 makes substitution+nothing cheaper than insert+delete
    CHECK(levenshtein("ab", "ba", LevenshteinWeights{2, 1, 1}) == 2.0);
    // substitution cost 3 forces insert+delete around the mismatch
    CHECK(levenshtein("abc", "adc", LevenshteinWeights{1, 1, 3}) == 2.0);
}

TEST_CASE("jaccard index") {
    CHECK(jaccard({"a", "b"}, {"b", "c"}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(jaccard({"a"}, {"a"}) == 1.0);
    CHECK(jaccard({"a"}, {"b"}) == 0.0);
    CHECK(jaccard({}, {}) == 0.0);
    CHECK(jaccard({}, {"a"}) == 0.0);
}

TEST_CASE("all-subsequences string kernel values") {
    CHECK(string_kernel("ab", "ab", StringKernelKind::Constant) == 3.0);
    CHECK(string_kernel("ab", "ba", StringKernelKind::Constant) == 2.0);
    CHECK(string_kernel("abc", "abc", StringKernelKind::Constant) == 7.0);
    CHECK(string_kernel("cat", "act", StringKernelKind::Constant) == 5.0);
    CHECK(string_kernel("abcd", "abdc", StringKernelKind::Constant) == 11.0);
    CHECK(string_kernel("gene", "gen", StringKernelKind::Constant) == 9.0);
    CHECK(string_kernel("", "abc", StringKernelKind::Constant) == 0.0);
}

TEST_CASE("spectrum string kernel values") {
    CHECK(string_kernel("ab", "ab", StringKernelKind::Spectrum, 2) == 1.0);
    CHECK(string_kernel("abc", "xbz", StringKernelKind::Spectrum, 2) == 0.0);
    CHECK(string_kernel("banana", "ananas", StringKernelKind::Spectrum, 3) == 5.0);
    CHECK(string_kernel("mississippi", "missouri", StringKernelKind::Spectrum, 2) == 5.0);
    CHECK(string_kernel("a", "a", StringKernelKind::Spectrum, 2) == 0.0);  // shorter than n
}

TEST_CASE("jrb matrix matches the hand-computed 3-term case") {
    TermDataset td = three_terms();
    KernelOptions opt;
    opt.q = 0.7;
    opt.jaccard_noise_eps = 0.0;  // plain profile-radial, no noise
    KernelMatrix k = build_kernel_matrix(td, KernelKind::JRBPlus, opt);
    KernelMatrix k_plain = build_kernel_matrix(td, KernelKind::JRB, opt);
    CHECK(k.values == k_plain.values);  // eps = 0 reduces to plain JRB
    CHECK(k.values(0, 0) == 1.0);
    CHECK(k.values(1, 1) == 1.0);
    CHECK(k.values(0, 1) == doctest::Approx(0.536750332785653).epsilon(1e-14));
    CHECK(k.values(0, 2) == doctest::Approx(0.7918895663367816).epsilon(1e-14));
    CHECK(k.values(1, 2) == doctest::Approx(0.7918895663367816).epsilon(1e-14));
    CHECK(k.values == k.values.transpose().eval());
}

TEST_CASE("rbj matrix exponentiates the jaccard index directly") {
    TermDataset td = three_terms();
    KernelOptions opt;
    opt.q = 0.7;
    KernelMatrix k = build_kernel_matrix(td, KernelKind::RBJ, opt);
    // the diagonal is exp(-q * J_ii) = exp(-q), not 1
    CHECK(k.values(0, 0) == doctest::Approx(std::exp(-0.7)).epsilon(1e-15));
    CHECK(k.values(0, 1) == doctest::Approx(std::exp(-0.7 / 3.0)).epsilon(1e-15));
    CHECK(!is_radial(KernelKind::RBJ));
}

TEST_CASE("rbl matrix exponentiates the levenshtein distance") {
    TermDataset td = make_term_dataset({"gene", "gen"}, {0, 0}, LanguageModel::TM);
    KernelOptions opt;
    opt.q = 0.25;
    KernelMatrix k = build_kernel_matrix(td, KernelKind::RBL, opt);
    CHECK(k.values(0, 0) == 1.0);  // distance 0
    CHECK(k.values(0, 1) == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
}

TEST_CASE("jrbplus replaces zero jaccard entries with small seeded noise") {
    TermDataset td = make_term_dataset({"a", "b", "a b"}, {0, 0, 0}, LanguageModel::TM);
    KernelOptions opt;
    opt.q = 1.0;
    opt.seed = 9;
    opt.jaccard_noise_eps = 0.05;
    KernelMatrix k1 = build_kernel_matrix(td, KernelKind::JRBPlus, opt);
    KernelMatrix k2 = build_kernel_matrix(td, KernelKind::JRBPlus, opt);
    CHECK(k1.values == k2.values);  // same seed, same matrix
    opt.seed = 10;
    KernelMatrix k3 = build_kernel_matrix(td, KernelKind::JRBPlus, opt);
    CHECK(k1.values != k3.values);  // different seed moves the noise
    // J(a, b) = 0, so the profiles differ only through the noise; JRB without
    // noise would have identical profiles for rows 0 and 1 up to permutation.
    KernelMatrix plain = build_kernel_matrix(td, KernelKind::JRB, opt);
    CHECK(plain.values(0, 1) == plain.values(1, 0));
    CHECK(k1.values == k1.values.transpose().eval());
}

TEST_CASE("attribute kernels on a term dataset route through the feature matrix") {
    TermDataset td = three_terms();
    KernelOptions opt;
    opt.q = 0.5;
    KernelMatrix k = build_kernel_matrix(td, KernelKind::Gaussian, opt);
    // rows {a,b} and {b,c} differ in two binary features
    CHECK(k.values(0, 1) == doctest::Approx(std::exp(-0.5 * 2.0)).epsilon(1e-12));
    CHECK(k.values(0, 0) == 1.0);
}

TEST_CASE("string kernel matrices are cosine-normalized") {
    TermDataset td = make_term_dataset({"gene", "gen"}, {0, 0}, LanguageModel::TM);
    KernelOptions opt;
    KernelMatrix k = build_kernel_matrix(td, KernelKind::SKConstant, opt);
    CHECK(k.values(0, 0) == 1.0);
    CHECK(k.values(1, 1) == 1.0);
    // k(gene,gen)=9, k(gene,gene)=19 (the repeated 'e' doubles several
    // subsequence matches), k(gen,gen)=7
    CHECK(k.values(0, 1) == doctest::Approx(9.0 / std::sqrt(19.0 * 7.0)).epsilon(1e-14));
}

TEST_CASE("precomputed kernel validates symmetry") {
    Eigen::MatrixXd good(2, 2);
    good << 1.0, 0.5, 0.5, 1.0;
    KernelMatrix k = precomputed_kernel(good);
    CHECK(k.kind == KernelKind::Precomputed);
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 0.5, 0.4, 1.0;
    CHECK_THROWS_AS(precomputed_kernel(bad), config_error);
}

TEST_CASE("gaussian matrix equals pointwise evaluation and is exactly symmetric") {
    DataMatrix dm;
    dm.values.resize(3, 2);
    dm.values << 0.1, 0.7, -1.3, 2.0, 0.33, -0.99;
    dm.row_names = {"1", "2", "3"};
    dm.col_names = {"a", "b"};
    dm.class_tags = {0, 0, 0};
    KernelOptions opt;
    opt.q = 1.7;
    KernelMatrix k = build_kernel_matrix(dm, KernelKind::Gaussian, opt);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double direct = gaussian_kernel(dm.values.row(i).transpose(),
                                            dm.values.row(j).transpose(), 1.7);
            CHECK(k.values(i, j) == doctest::Approx(direct).epsilon(1e-12));
            CHECK(k.values(i, j) == k.values(j, i));  // exact, not approximate
        }
}

TEST_CASE("kernel kind names round trip and radial kinds are flagged") {
    for (auto kind : {KernelKind::Linear, KernelKind::Gaussian, KernelKind::GaussianDist,
                      KernelKind::Precomputed, KernelKind::LRB, KernelKind::RBL,
                      KernelKind::JRB, KernelKind::RBJ, KernelKind::JRBPlus,
                      KernelKind::SKConstant, KernelKind::SKSpectrum})
        CHECK(kernel_kind_from_string(to_string(kind)) == kind);
    CHECK(is_radial(KernelKind::Gaussian));
    CHECK(is_radial(KernelKind::JRB));
    CHECK(is_radial(KernelKind::LRB));
    CHECK(is_radial(KernelKind::JRBPlus));
    CHECK(!is_radial(KernelKind::Linear));
    CHECK(!is_radial(KernelKind::SKConstant));
    CHECK_THROWS_AS(kernel_kind_from_string("bogus"), config_error);
}

TEST_CASE("term kernels reject attribute-only input and vice versa") {
    DataMatrix dm;
    dm.values.resize(2, 1);
    dm.values << 1.0, 2.0;
    dm.row_names = {"1", "2"};
    dm.col_names = {"a"};
    dm.class_tags = {0, 0};
    CHECK_THROWS_AS(build_kernel_matrix(dm, KernelKind::JRB, KernelOptions{}),
                    config_error);
}
