#include "svclust/data_matrix.hpp"
#include "svclust/errors.hpp"
#include "svclust/term_dataset.hpp"
#include "svclust/text_util.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace svclust;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("fmt_g17 round-trips doubles exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 123456.789012345}) {
        double back = 0;
        REQUIRE(parse_double(fmt_g17(v), back));
        CHECK(back == v);
    }
}

TEST_CASE("normalize_term folds case and whitespace") {
    CHECK(normalize_term("  Spore   Coat\tprotein ") == "spore coat protein");
    CHECK(normalize_term("ABC") == "abc");
    CHECK(normalize_term("") == "");
}

TEST_CASE("parse_double rejects trailing garbage") {
    double v = 0;
    CHECK(parse_double("3.5", v));
    CHECK(!parse_double("3.5x", v));
    CHECK(!parse_double("", v));
    long long n = 0;
    CHECK(parse_long("42", n));
    CHECK(!parse_long("42.5", n));
}

TEST_CASE("load_matrix parses csv with header and row names") {
    std::string path = write_temp("svclust_t1.csv",
                                  "name,a,b\n1 one,1.5,2\n2 two,3,4.25\n");
    DataMatrix m = load_matrix(path, "csv");
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m.col_names == std::vector<std::string>{"a", "b"});
    CHECK(m.row_names[0] == "1 one");
    CHECK(m.values(1, 1) == 4.25);
    CHECK(m.class_tags == std::vector<int>{1, 2});
    CHECK(m.has_tags());
}

TEST_CASE("load_matrix autogenerates names when the file has none") {
    std::string path = write_temp("svclust_t2.csv", "1,2\n3,4\n");
    DataMatrix m = load_matrix(path, "csv");
    CHECK(m.rows() == 2);
    CHECK(m.row_names == std::vector<std::string>{"1", "2"});
    CHECK(m.col_names == std::vector<std::string>{"attr1", "attr2"});
    CHECK(!m.has_tags());
}

TEST_CASE("load_matrix rejects ragged and non-numeric input") {
    std::string ragged = write_temp("svclust_t3.csv", "a,b\nr1,1,2\nr2,3\n");
    CHECK_THROWS_AS(load_matrix(ragged, "csv"), config_error);
    std::string bad = write_temp("svclust_t4.csv", "a,b\nr1,1,x\n");
    CHECK_THROWS_AS(load_matrix(bad, "csv"), config_error);
    CHECK_THROWS_AS(load_matrix("/nonexistent/file.csv", "csv"), config_error);
}

TEST_CASE("save_matrix/load_matrix round trip is bit-exact") {
    DataMatrix m;
    m.values.resize(2, 2);
    m.values << 1.0 / 3.0, 2e-17, -5.5, 0.1;
    m.row_names = {"1 r1", "2 r2"};
    m.col_names = {"a", "b"};
    m.class_tags = {1, 2};
    std::string path = (std::filesystem::temp_directory_path() / "svclust_t5.csv").string();
    save_matrix(m, path, "csv");
    DataMatrix back = load_matrix(path, "csv");
    CHECK(back.values == m.values);
    CHECK(back.row_names == m.row_names);
    CHECK(back.col_names == m.col_names);
    CHECK(back.class_tags == m.class_tags);
}

TEST_CASE("tsv format splits on tabs") {
    std::string path = write_temp("svclust_t6.tsv", "name\ta\n3 x\t7.5\n");
    DataMatrix m = load_matrix(path, "tsv");
    CHECK(m.values(0, 0) == 7.5);
    CHECK(m.class_tags == std::vector<int>{3});
}

TEST_CASE("parse_class_tag reads an integer prefix") {
    CHECK(parse_class_tag("3 121") == 3);
    CHECK(parse_class_tag("12 spore coat") == 12);
    CHECK(parse_class_tag("spore coat") == 0);
    CHECK(parse_class_tag("") == 0);
    CHECK(parse_class_tag("7") == 0);  // no term after the tag
}

TEST_CASE("tokenize_term word model") {
    auto t = tokenize_term("spore coat protein", LanguageModel::TM);
    CHECK(t == std::set<std::string>{"spore", "coat", "protein"});
}

TEST_CASE("tokenize_term bigram and trigram models") {
    auto bg = tokenize_term("spore coat protein", LanguageModel::BG);
    CHECK(bg == std::set<std::string>{"spore coat", "coat protein"});
    auto tg = tokenize_term("spore coat protein sigma", LanguageModel::TG);
    CHECK(tg == std::set<std::string>{"spore coat protein", "coat protein sigma"});
    CHECK(tokenize_term("one two", LanguageModel::TG).empty());
}

TEST_CASE("tokenize_term radical model scans substrings") {
    std::vector<std::string> radicals = {"spor", "coat", "germin", "xyz"};
    auto t = tokenize_term("Sporulation coat gene", LanguageModel::RD, radicals);
    CHECK(t == std::set<std::string>{"spor", "coat"});
}

TEST_CASE("load_term_file reads tags and builds the vocabulary") {
    std::string path = write_temp("svclust_t7.txt",
                                  "# comment\n"
                                  "1 spore coat\n"
                                  "2 germination factor\n"
                                  "1 coat protein\n");
    TermDataset td = load_term_file(path, LanguageModel::TM);
    CHECK(td.terms.size() == 3);
    CHECK(td.tags == std::vector<int>{1, 2, 1});
    // vocabulary = sorted distinct words
    CHECK(td.features == std::vector<std::string>{"coat", "factor", "germination",
                                                  "protein", "spore"});
}

TEST_CASE("duplicate terms after normalization are rejected") {
    std::string path = write_temp("svclust_t8.txt", "1 Spore Coat\n2 spore  coat\n");
    CHECK_THROWS_AS(load_term_file(path, LanguageModel::TM), config_error);
}

TEST_CASE("rd model requires a radical dictionary") {
    std::string path = write_temp("svclust_t9.txt", "1 spore coat\n");
    CHECK_THROWS_AS(load_term_file(path, LanguageModel::RD), config_error);
    TermDataset td = load_term_file(path, LanguageModel::RD, {"spor"});
    CHECK(td.features == std::vector<std::string>{"spor"});
}

TEST_CASE("build_feature_matrix is a binary occurrence matrix with tagged names") {
    TermDataset td = make_term_dataset({"spore coat", "coat protein"}, {1, 2},
                                       LanguageModel::TM);
    DataMatrix m = build_feature_matrix(td);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);  // coat, protein, spore
    CHECK(m.col_names == std::vector<std::string>{"coat", "protein", "spore"});
    CHECK(m.row_names[0] == "1 spore coat");
    CHECK(m.values(0, 0) == 1.0);  // coat in term 1
    CHECK(m.values(0, 1) == 0.0);  // protein not in term 1
    CHECK(m.values(1, 2) == 0.0);  // spore not in term 2
    CHECK(m.class_tags == std::vector<int>{1, 2});
}

TEST_CASE("language model names round trip") {
    for (auto m : {LanguageModel::TM, LanguageModel::RD, LanguageModel::BG,
                   LanguageModel::TG})
        CHECK(language_model_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(language_model_from_string("nope"), config_error);
}
