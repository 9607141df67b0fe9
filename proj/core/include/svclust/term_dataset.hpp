#pragma once

#include "svclust/data_matrix.hpp"

#include <set>
#include <string>
#include <vector>

namespace svclust {

/// Language model used to turn a term into a token set.
enum class LanguageModel {
    TM,  ///< whole words
    RD,  ///< radicals from a dictionary, matched as substrings
    BG,  ///< adjacent word pairs (bigrams)
    TG,  ///< adjacent word triples (trigrams)
};

LanguageModel language_model_from_string(const std::string& s);
std::string to_string(LanguageModel m);

/// A tagged term corpus plus the feature vocabulary of its language model.
struct TermDataset {
    std::vector<std::string> terms;     ///< normalized, unique, non-empty
    std::vector<int> tags;              ///< size N; 0 = untagged
    std::vector<std::string> features;  ///< token vocabulary, no duplicates
    LanguageModel model = LanguageModel::TM;

    int size() const { return static_cast<int>(terms.size()); }
};

/// Tokenize a term under a language model. For RD the radical dictionary is
/// scanned for substring occurrences; the other models ignore `radicals`.
/// An empty token set is legal output (e.g. TG on a two-word term).
std::set<std::string> tokenize_term(const std::string& term, LanguageModel model,
                                    const std::vector<std::string>& radicals = {});

/// Load a term corpus: one term per line, optional "TAG<whitespace>term"
/// prefix. Terms are lowercase-folded and whitespace-normalized; duplicates
/// (after normalization) are rejected.
/// For TM/BG/TG the feature vocabulary is collected from the corpus itself;
/// for RD it must be supplied via `radicals`.
TermDataset load_term_file(const std::string& path, LanguageModel model,
                           const std::vector<std::string>& radicals = {});

/// Build a TermDataset directly from already-normalized terms.
TermDataset make_term_dataset(std::vector<std::string> terms, std::vector<int> tags,
                              LanguageModel model,
                              const std::vector<std::string>& radicals = {});

/// Load a feature dictionary: one token per line, lowercase-folded.
std::vector<std::string> load_feature_file(const std::string& path);

/// N x F binary occurrence matrix: entry (i,j) = 1 iff feature j is in
/// tokenize_term(term i). Row names carry class tags when present
/// ("<tag> <term>"). Emits a warning on an all-zero matrix (the downstream
/// correspondence analysis is undefined there).
DataMatrix build_feature_matrix(const TermDataset& ds);

/// Token sets of every term, restricted to the dataset vocabulary; the set
/// representation consumed by the Jaccard kernels.
std::vector<std::set<std::string>> term_token_sets(const TermDataset& ds);

} // namespace svclust
