#include "svclust/term_dataset.hpp"

#include "svclust/errors.hpp"
#include "svclust/text_util.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

namespace svclust {

LanguageModel language_model_from_string(const std::string& s) {
    std::string t = to_lower(trim(s));
    if (t == "tm") return LanguageModel::TM;
    if (t == "rd") return LanguageModel::RD;
    if (t == "bg") return LanguageModel::BG;
    if (t == "tg") return LanguageModel::TG;
    throw config_error("unknown language model '" + s + "' (expected tm, rd, bg or tg)");
}

std::string to_string(LanguageModel m) {
    switch (m) {
        case LanguageModel::TM: return "tm";
        case LanguageModel::RD: return "rd";
        case LanguageModel::BG: return "bg";
        case LanguageModel::TG: return "tg";
    }
    return "tm";
}

std::set<std::string> tokenize_term(const std::string& term, LanguageModel model,
                                    const std::vector<std::string>& radicals) {
    const std::string norm = normalize_term(term);
    std::set<std::string> out;
    if (model == LanguageModel::RD) {
        for (const auto& r : radicals) {
            if (!r.empty() && norm.find(r) != std::string::npos) out.insert(r);
        }
        return out;
    }
    const std::vector<std::string> words = split_ws(norm);
    const std::size_t n = model == LanguageModel::TM ? 1 : model == LanguageModel::BG ? 2 : 3;
    if (words.size() < n) return out;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
        std::string tok = words[i];
        for (std::size_t j = 1; j < n; ++j) tok += " " + words[i + j];
        out.insert(tok);
    }
    return out;
}

TermDataset make_term_dataset(std::vector<std::string> terms, std::vector<int> tags,
                              LanguageModel model, const std::vector<std::string>& radicals) {
    TermDataset ds;
    ds.model = model;
    if (tags.empty()) tags.assign(terms.size(), 0);
    if (tags.size() != terms.size())
        throw config_error("term/tag count mismatch");

    std::set<std::string> seen;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string t = normalize_term(terms[i]);
        if (t.empty())
            throw config_error("empty term at position " + std::to_string(i + 1));
        if (!seen.insert(t).second)
            throw config_error("duplicate term after normalization: '" + t + "'");
        ds.terms.push_back(t);
        ds.tags.push_back(tags[i]);
    }

    if (model == LanguageModel::RD) {
        if (radicals.empty())
            throw config_error("the rd language model needs a radical dictionary");
        std::set<std::string> fseen;
        for (const auto& r : radicals) {
            std::string f = to_lower(trim(r));
            if (f.empty()) continue;
            if (!fseen.insert(f).second)
                throw config_error("duplicate feature token: '" + f + "'");
            ds.features.push_back(f);
        }
    } else {
        // Vocabulary collected from the corpus, in first-seen order.
        std::set<std::string> fseen;
        for (const auto& t : ds.terms) {
            for (const auto& tok : tokenize_term(t, model)) {
                if (fseen.insert(tok).second) ds.features.push_back(tok);
            }
        }
        std::sort(ds.features.begin(), ds.features.end());
    }
    if (ds.features.empty())
        throw config_error("empty feature vocabulary");
    return ds;
}

TermDataset load_term_file(const std::string& path, LanguageModel model,
                           const std::vector<std::string>& radicals) {
    std::ifstream in(path);
    if (!in) throw config_error("file not found: " + path);
    std::vector<std::string> terms;
    std::vector<int> tags;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::string rest;
        int tag = parse_class_tag(t, &rest);
        terms.push_back(tag != 0 ? rest : t);
        tags.push_back(tag);
    }
    if (terms.empty()) throw config_error("no terms in " + path);
    return make_term_dataset(std::move(terms), std::move(tags), model, radicals);
}

std::vector<std::string> load_feature_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("file not found: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = to_lower(trim(line));
        if (t.empty() || t[0] == '#') continue;
        out.push_back(t);
    }
    if (out.empty()) throw config_error("no features in " + path);
    return out;
}

std::vector<std::set<std::string>> term_token_sets(const TermDataset& ds) {
    std::vector<std::set<std::string>> sets;
    sets.reserve(ds.terms.size());
    const std::set<std::string> vocab(ds.features.begin(), ds.features.end());
    for (const auto& t : ds.terms) {
        std::set<std::string> toks = tokenize_term(t, ds.model, ds.features);
        std::set<std::string> kept;
        for (const auto& tok : toks)
            if (vocab.count(tok)) kept.insert(tok);
        sets.push_back(std::move(kept));
    }
    return sets;
}

DataMatrix build_feature_matrix(const TermDataset& ds) {
    const int n = ds.size();
    const int f = static_cast<int>(ds.features.size());
    DataMatrix m;
    m.values = Eigen::MatrixXd::Zero(n, f);
    m.col_names = ds.features;

    std::map<std::string, int> findex;
    for (int j = 0; j < f; ++j) findex[ds.features[static_cast<std::size_t>(j)]] = j;

    for (int i = 0; i < n; ++i) {
        const auto& term = ds.terms[static_cast<std::size_t>(i)];
        const int tag = ds.tags[static_cast<std::size_t>(i)];
        m.row_names.push_back(tag != 0 ? std::to_string(tag) + " " + term : term);
        m.class_tags.push_back(tag);
        for (const auto& tok : tokenize_term(term, ds.model, ds.features)) {
            auto it = findex.find(tok);
            if (it != findex.end()) m.values(i, it->second) = 1.0;
        }
    }
    if (m.values.sum() == 0.0)
        std::cerr << "warning: all-zero feature matrix; correspondence analysis "
                     "downstream is undefined\n";
    return m;
}

} // namespace svclust
