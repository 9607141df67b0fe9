#include "svclust/synthetic.hpp"

#include "svclust/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace svclust {

DataMatrix make_two_blobs(std::uint64_t seed, const TwoBlobParams& params) {
    Rng rng(seed);
    const double theta = rng.uniform(0.0, 6.283185307179586);
    const double cx[2] = {0.0, params.distance * std::cos(theta)};
    const double cy[2] = {0.0, params.distance * std::sin(theta)};

    DataMatrix m;
    std::vector<std::array<double, 2>> pts;
    for (int blob = 0; blob < 2; ++blob) {
        const int n = params.n_per_blob + static_cast<int>(rng.below(11));
        for (int i = 0; i < n; ++i) {
            double px, py;
            do {  // truncate at 3 sigma so the inter-blob gap is guaranteed
                px = rng.normal() * params.sigma;
                py = rng.normal() * params.sigma;
            } while (px * px + py * py > 9.0 * params.sigma * params.sigma);
            pts.push_back({cx[blob] + px, cy[blob] + py});
            const std::string name = std::to_string(blob + 1) + " " +
                                     (blob == 0 ? "a" : "b") + std::to_string(i + 1);
            m.row_names.push_back(name);
            m.class_tags.push_back(blob + 1);
        }
    }
    m.values.resize(static_cast<Eigen::Index>(pts.size()), 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        m.values(static_cast<Eigen::Index>(i), 0) = pts[i][0];
        m.values(static_cast<Eigen::Index>(i), 1) = pts[i][1];
    }
    m.col_names = {"x", "y"};
    return m;
}

const std::vector<std::string>& synthetic_radicals() {
    static const std::vector<std::string> radicals = {
        "sept",    "engulf",  "coat",     "germin",  "divid",    "stage",
        "sigma",   "factor",  "protein",  "gene",    "express",  "mutant",
        "cell",    "wall",    "membran",  "dna",     "operon",   "promot",
        "transcri", "regul",  "signal",   "kinase",  "phosphat", "polymer",
        "complex", "bind",    "domain",   "termin",  "local",    "matur",
        "assembl", "synthesi", "activ",   "inhib",   "cleav",    "fusion",
        "spore",   "cortex"};
    return radicals;
}

TermDataset make_synthetic_terms(std::uint64_t seed) {
    const std::vector<std::string>& radicals = synthetic_radicals();
    const int class_sizes[6] = {227, 360, 379, 379, 303, 245};  // sums to 1893
    const int motifs_per_class[6] = {3, 3, 3, 2, 2, 2};
    const double p_core = 0.92;   // motif radicals kept with this probability
    const double p_noise = 0.012; // non-motif radicals picked up at this rate

    Rng rng(seed);

    // Radical groups: six blocks of six plus two shared radicals (36, 37).
    auto group_of = [](int g, int slot) { return g * 6 + slot; };

    // Class motifs: 3-5 own-group radicals, sometimes one from an adjacent
    // group and/or one shared radical, so neighbouring classes overlap.
    std::vector<std::vector<int>> motifs;
    std::vector<int> motif_class;
    for (int c = 0; c < 6; ++c) {
        for (int mi = 0; mi < motifs_per_class[c]; ++mi) {
            std::set<int> base;
            const int sz = 3 + static_cast<int>(rng.below(3));
            while (static_cast<int>(base.size()) < sz)
                base.insert(group_of(c, static_cast<int>(rng.below(6))));
            if (rng.u01() < 0.5) {
                const int adj = rng.u01() < 0.5 ? (c + 1) % 6 : (c + 5) % 6;
                base.insert(group_of(adj, static_cast<int>(rng.below(6))));
            }
            if (rng.u01() < 0.3) base.insert(36 + static_cast<int>(rng.below(2)));
            motifs.emplace_back(base.begin(), base.end());
            motif_class.push_back(c);
        }
    }

    std::vector<std::string> terms;
    std::vector<int> tags;
    std::set<std::string> seen;
    for (int c = 0; c < 6; ++c) {
        std::vector<int> own;
        for (std::size_t mi = 0; mi < motifs.size(); ++mi)
            if (motif_class[mi] == c) own.push_back(static_cast<int>(mi));
        for (int i = 0; i < class_sizes[c]; ++i) {
            const std::vector<int>& motif =
                motifs[static_cast<std::size_t>(own[rng.below(own.size())])];
            std::set<int> sel;
            for (int r : motif)
                if (rng.u01() < p_core) sel.insert(r);
            for (int r = 0; r < 38; ++r) {
                if (std::find(motif.begin(), motif.end(), r) == motif.end() &&
                    rng.u01() < p_noise)
                    sel.insert(r);
            }
            if (sel.empty()) sel.insert(motif.front());

            std::string term;
            for (int r : sel) {
                if (!term.empty()) term += " ";
                term += radicals[static_cast<std::size_t>(r)];
            }
            // A per-class serial keeps terms unique without adding radicals.
            term += " t" + std::to_string(c + 1) + "x" + std::to_string(i + 1);
            if (!seen.insert(term).second) continue;  // unreachable: serial is unique
            terms.push_back(term);
            tags.push_back(c + 1);
        }
    }
    return make_term_dataset(std::move(terms), std::move(tags), LanguageModel::RD, radicals);
}

} // namespace svclust
