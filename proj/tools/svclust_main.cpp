// svclust: support vector clustering command line.
//
// Subcommands: fit, label, eval, bench, export, query, plot, gen-terms.
// Exit codes: 0 ok, 1 runtime error, 2 usage/config error.
//
// A run is a directory written by `fit`: run_config.txt, model.txt,
// projection.csv, assignment.csv, grid_labels.csv (grid labeler only),
// summary.txt. The other subcommands operate on such a directory. All
// outputs are pure functions of the config and seed, so reruns are
// byte-identical.

#include "svclust/data_matrix.hpp"
#include "svclust/errors.hpp"
#include "svclust/evaluation.hpp"
#include "svclust/kernels.hpp"
#include "svclust/labeling.hpp"
#include "svclust/model_io.hpp"
#include "svclust/projection.hpp"
#include "svclust/svdd.hpp"
#include "svclust/svg_plot.hpp"
#include "svclust/synthetic.hpp"
#include "svclust/term_dataset.hpp"
#include "svclust/text_util.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace svclust;

namespace {

// ---------------------------------------------------------------------------
// Run configuration: defaults < preset < config file < command-line flags.

struct RunConfig {
    std::string data;              // attribute matrix path
    std::string terms;             // term corpus path (exclusive with data)
    std::string format = "csv";    // csv | tsv
    std::string lang_model = "tm"; // tm | rd | bg | tg
    std::string radicals;          // radical dictionary path (rd model)
    std::string kernel = "gaussian";
    std::string method = "quadratic";   // quadratic | stochastic
    std::string labeler = "grid";       // grid | knn-adj | mst-adj
    double nu = 0.5;
    double q = 1.0;
    int k = 1;
    int g = 10;
    int m = 20;
    int cx = 0, cy = 0;
    std::uint64_t seed = 42;
    std::string out = "svclust_run";
    double jaccard_eps = 0.05;
    int sk_n = 3;
    double lev_ins = 1.0, lev_del = 1.0, lev_sub = 1.0;
};

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               const std::string& where) {
    auto bad = [&](const std::string& what) {
        throw config_error(where + ": bad value '" + value + "' for key '" + key + "' (" +
                           what + ")");
    };
    auto as_double = [&]() {
        double v = 0;
        if (!parse_double(value, v)) bad("expected a number");
        return v;
    };
    auto as_int = [&]() {
        long long v = 0;
        if (!parse_long(value, v)) bad("expected an integer");
        return static_cast<int>(v);
    };

    if (key == "data") cfg.data = value;
    else if (key == "terms") cfg.terms = value;
    else if (key == "format") cfg.format = value;
    else if (key == "lang-model") cfg.lang_model = value;
    else if (key == "radicals") cfg.radicals = value;
    else if (key == "kernel") cfg.kernel = value;
    else if (key == "method") cfg.method = value;
    else if (key == "labeler") cfg.labeler = value;
    else if (key == "nu") cfg.nu = as_double();
    else if (key == "q") cfg.q = as_double();
    else if (key == "k") cfg.k = as_int();
    else if (key == "g") cfg.g = as_int();
    else if (key == "m") cfg.m = as_int();
    else if (key == "cx") cfg.cx = as_int();
    else if (key == "cy") cfg.cy = as_int();
    else if (key == "seed") {
        long long v = 0;
        if (!parse_long(value, v) || v < 0) bad("expected a non-negative integer");
        cfg.seed = static_cast<std::uint64_t>(v);
    }
    else if (key == "jaccard-eps") cfg.jaccard_eps = as_double();
    else if (key == "sk-n") cfg.sk_n = as_int();
    else if (key == "lev-ins") cfg.lev_ins = as_double();
    else if (key == "lev-del") cfg.lev_del = as_double();
    else if (key == "lev-sub") cfg.lev_sub = as_double();
    else throw config_error(where + ": unknown config key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config file not found: '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value, got '" + t + "'");
        apply_key(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)),
                  path + ":" + std::to_string(lineno));
    }
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    auto set = [&](const char* k, const char* v) { apply_key(cfg, k, v, "preset " + name); };
    if (name == "iris-g5") {
        set("kernel", "gaussian"); set("method", "quadratic"); set("labeler", "grid");
        set("nu", "0.5"); set("q", "40"); set("k", "1"); set("g", "5");
        set("cx", "0"); set("cy", "0");
    } else if (name == "iris-g13") {
        set("kernel", "gaussian"); set("method", "quadratic"); set("labeler", "grid");
        set("nu", "0.7"); set("q", "1200"); set("k", "1"); set("g", "13");
        set("cx", "0"); set("cy", "0");
    } else if (name == "terms-jrb") {
        set("kernel", "jrbplus"); set("method", "quadratic"); set("labeler", "grid");
        set("nu", "1"); set("q", "2000"); set("k", "1"); set("g", "30");
        set("cx", "0"); set("cy", "0"); set("lang-model", "rd");
    } else {
        throw config_error("unknown preset '" + name +
                           "' (available: iris-g5, iris-g13, terms-jrb)");
    }
}

// Flags a subcommand exposes for RunConfig fields. Bound values land in
// `flag_vals`; after parsing, only flags the user actually passed are copied
// onto the effective config, so flags win over preset and config file.
struct ConfigFlags {
    RunConfig flag_vals;
    std::string preset;
    std::string config_file;

    void add_to(CLI::App* sub, bool with_data_flags) {
        sub->add_option("--preset", preset, "named preset: iris-g5, iris-g13, terms-jrb");
        sub->add_option("--config", config_file, "key=value config file (# comments)");
        if (with_data_flags) {
            sub->add_option("--data", flag_vals.data, "attribute matrix (csv/tsv)");
            sub->add_option("--terms", flag_vals.terms, "term corpus (one term per line)");
            sub->add_option("--format", flag_vals.format, "data format: csv | tsv");
            sub->add_option("--lang-model", flag_vals.lang_model,
                            "term language model: tm | rd | bg | tg");
            sub->add_option("--radicals", flag_vals.radicals,
                            "radical dictionary file (rd model)");
            sub->add_option("--kernel", flag_vals.kernel,
                            "kernel kind (gaussian, gaussiandist, linear, lrb, rbl, jrb, "
                            "rbj, jrbplus, sk-constant, sk-spectrum)");
            sub->add_option("--method", flag_vals.method,
                            "optimizer: quadratic | stochastic");
            sub->add_option("--nu", flag_vals.nu, "outlier fraction bound, in (0, 1]");
            sub->add_option("--q", flag_vals.q, "kernel width");
            sub->add_option("--cx", flag_vals.cx,
                            "projection column for x (1-based; 0 0 = correspondence analysis)");
            sub->add_option("--cy", flag_vals.cy, "projection column for y");
            sub->add_option("--jaccard-eps", flag_vals.jaccard_eps,
                            "jrbplus zero-entry noise amplitude");
            sub->add_option("--sk-n", flag_vals.sk_n, "n-gram length for sk-spectrum");
            sub->add_option("--lev-ins", flag_vals.lev_ins, "levenshtein insert weight");
            sub->add_option("--lev-del", flag_vals.lev_del, "levenshtein delete weight");
            sub->add_option("--lev-sub", flag_vals.lev_sub, "levenshtein substitute weight");
        }
        sub->add_option("--labeler", flag_vals.labeler,
                        "cluster labeler: grid | knn-adj | mst-adj");
        sub->add_option("--k", flag_vals.k,
                        "grid vote threshold / adjacency neighbour count");
        sub->add_option("--g", flag_vals.g, "grid size per axis");
        sub->add_option("--m", flag_vals.m, "segment samples for adjacency tests");
        sub->add_option("--seed", flag_vals.seed, "random seed (recorded in outputs)");
        sub->add_option("--out", flag_vals.out, "output run directory");
    }

    RunConfig resolve(CLI::App* sub) const {
        RunConfig cfg;
        if (!preset.empty()) apply_preset(cfg, preset);
        if (!config_file.empty()) apply_config_file(cfg, config_file);
        auto take = [&](const char* flag, auto member) {
            if (sub->count(flag)) cfg.*member = flag_vals.*member;
        };
        take("--data", &RunConfig::data);
        take("--terms", &RunConfig::terms);
        take("--format", &RunConfig::format);
        take("--lang-model", &RunConfig::lang_model);
        take("--radicals", &RunConfig::radicals);
        take("--kernel", &RunConfig::kernel);
        take("--method", &RunConfig::method);
        take("--labeler", &RunConfig::labeler);
        take("--nu", &RunConfig::nu);
        take("--q", &RunConfig::q);
        take("--k", &RunConfig::k);
        take("--g", &RunConfig::g);
        take("--m", &RunConfig::m);
        take("--cx", &RunConfig::cx);
        take("--cy", &RunConfig::cy);
        take("--seed", &RunConfig::seed);
        take("--out", &RunConfig::out);
        take("--jaccard-eps", &RunConfig::jaccard_eps);
        take("--sk-n", &RunConfig::sk_n);
        take("--lev-ins", &RunConfig::lev_ins);
        take("--lev-del", &RunConfig::lev_del);
        take("--lev-sub", &RunConfig::lev_sub);
        return cfg;
    }
};

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt4f(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Data loading shared by fit/bench/label.

struct LoadedData {
    DataMatrix matrix;        // attribute rows (terms: binary feature matrix)
    KernelMatrix kernel;
    bool is_term_data = false;
};

void require_file(const std::string& path, const std::string& what) {
    if (!fs::exists(path))
        throw config_error(what + " file not found: '" + path + "'");
}

LoadedData load_input(const RunConfig& cfg) {
    if (cfg.data.empty() == cfg.terms.empty())
        throw config_error("exactly one of --data or --terms is required");
    KernelKind kind = kernel_kind_from_string(cfg.kernel);
    if (kind == KernelKind::Precomputed)
        throw config_error(
            "precomputed kernels are available through the library API only");
    KernelOptions opt;
    opt.q = cfg.q;
    opt.seed = cfg.seed;
    opt.jaccard_noise_eps = cfg.jaccard_eps;
    opt.sk_n = cfg.sk_n;
    opt.lev_weights = LevenshteinWeights{cfg.lev_ins, cfg.lev_del, cfg.lev_sub};

    LoadedData out;
    if (!cfg.terms.empty()) {
        require_file(cfg.terms, "term corpus");
        std::vector<std::string> radicals;
        LanguageModel lm = language_model_from_string(cfg.lang_model);
        if (!cfg.radicals.empty()) {
            require_file(cfg.radicals, "radical dictionary");
            radicals = load_feature_file(cfg.radicals);
        }
        TermDataset td = load_term_file(cfg.terms, lm, radicals);
        out.matrix = build_feature_matrix(td);
        out.kernel = build_kernel_matrix(td, kind, opt);
        out.is_term_data = true;
    } else {
        require_file(cfg.data, "data");
        out.matrix = load_matrix(cfg.data, cfg.format);
        out.kernel = build_kernel_matrix(out.matrix, kind, opt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Run directory I/O.

void write_run_config(const RunConfig& cfg, const std::string& path) {
    std::map<std::string, std::string> kv;
    if (!cfg.data.empty()) kv["data"] = cfg.data;
    if (!cfg.terms.empty()) kv["terms"] = cfg.terms;
    kv["format"] = cfg.format;
    kv["lang-model"] = cfg.lang_model;
    if (!cfg.radicals.empty()) kv["radicals"] = cfg.radicals;
    kv["kernel"] = cfg.kernel;
    kv["method"] = cfg.method;
    kv["labeler"] = cfg.labeler;
    kv["nu"] = fmt_g17(cfg.nu);
    kv["q"] = fmt_g17(cfg.q);
    kv["k"] = std::to_string(cfg.k);
    kv["g"] = std::to_string(cfg.g);
    kv["m"] = std::to_string(cfg.m);
    kv["cx"] = std::to_string(cfg.cx);
    kv["cy"] = std::to_string(cfg.cy);
    kv["seed"] = std::to_string(cfg.seed);
    kv["jaccard-eps"] = fmt_g17(cfg.jaccard_eps);
    kv["sk-n"] = std::to_string(cfg.sk_n);
    kv["lev-ins"] = fmt_g17(cfg.lev_ins);
    kv["lev-del"] = fmt_g17(cfg.lev_del);
    kv["lev-sub"] = fmt_g17(cfg.lev_sub);
    std::ofstream outf(path);
    if (!outf) throw runtime_error("cannot open '" + path + "' for writing");
    for (const auto& [k, v] : kv) outf << k << "=" << v << "\n";
}

RunConfig load_run_config(const std::string& run_dir) {
    RunConfig cfg;
    apply_config_file(cfg, (fs::path(run_dir) / "run_config.txt").string());
    cfg.out = run_dir;
    return cfg;
}

std::string run_file(const std::string& run_dir, const std::string& name) {
    return (fs::path(run_dir) / name).string();
}

std::string make_summary(const RunConfig& cfg, const DataMatrix& dm, const SvcModel& model,
                         const ClusterAssignment& ca, const GridLabeling* gl) {
    std::ostringstream s;
    s << "svclust run summary\n";
    s << "data: " << (!cfg.terms.empty() ? cfg.terms : cfg.data) << "  (n=" << dm.rows()
      << ", attributes=" << dm.cols() << ")\n";
    s << "kernel: " << cfg.kernel << "  q=" << fmt6(cfg.q) << "\n";
    s << "optimizer: " << cfg.method << "  nu=" << fmt6(model.nu)
      << "  c=" << fmt6(model.C) << "  sweeps=" << model.sweeps
      << "  final_gap=" << fmt6(model.final_gap) << "\n";
    s << "support vectors: " << model.sv_indices.size() << " unbounded, "
      << model.bsv_indices.size() << " bounded";
    if (model.r_hat_from_bsv_fallback) s << "  (radius from bounded SVs)";
    s << "\n";
    s << "r_hat_sq: " << fmt6(model.r_hat_sq) << "\n";
    s << "labeler: " << cfg.labeler;
    if (cfg.labeler == "grid") s << "  g=" << cfg.g << "  k=" << cfg.k;
    else s << "  k=" << cfg.k << "  m=" << cfg.m;
    s << "  seed=" << cfg.seed << "\n";
    if (gl && gl->empty) s << "grid diagnostic: " << gl->diagnostic << "\n";

    int unclustered = 0;
    for (int id : ca.class_points)
        if (id == 0) ++unclustered;
    s << "clusters: " << ca.cluster_count() << "  (unclustered points: " << unclustered
      << ")\n";
    s << "cluster sizes:\n";
    for (const auto& [id, size] : ca.sizes) s << "  " << id << ": " << size << "\n";
    if (unclustered > 0) s << "  0: " << unclustered << "  (unclustered)\n";

    s << "per-cluster attribute means:\n";
    std::map<int, std::vector<int>> members;
    for (std::size_t i = 0; i < ca.class_points.size(); ++i)
        members[ca.class_points[i]].push_back(static_cast<int>(i));
    for (const auto& [id, rows] : members) {
        if (id == 0)
            s << "  cluster 0 (unclustered, " << rows.size() << " points): ";
        else
            s << "  cluster " << id << " (" << rows.size() << " points): ";
        for (Eigen::Index j = 0; j < dm.values.cols(); ++j) {
            double sum = 0;
            for (int r : rows) sum += dm.values(r, j);
            if (j > 0) s << ", ";
            s << dm.col_names[static_cast<std::size_t>(j)] << "="
              << fmt6(sum / static_cast<double>(rows.size()));
        }
        s << "\n";
    }
    return s.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream outf(path);
    if (!outf) throw runtime_error("cannot open '" + path + "' for writing");
    outf << text;
    if (!outf) throw runtime_error("write failed for '" + path + "'");
}

std::string read_names_check(const std::string& run_dir, std::vector<std::string>& names,
                             ClusterAssignment& ca) {
    std::string path = run_file(run_dir, "assignment.csv");
    require_file(path, "assignment");
    ca = load_assignment(path, &names);
    return path;
}

// ---------------------------------------------------------------------------
// Subcommands.

void run_labeler(const RunConfig& cfg, const SvcModel& model, const Projection2D& proj,
                 ClusterAssignment& ca, GridLabeling& gl, bool& have_grid) {
    have_grid = false;
    if (cfg.labeler == "grid") {
        auto [labeling, assignment] = label_grid(model, proj, cfg.g, cfg.k);
        gl = std::move(labeling);
        ca = std::move(assignment);
        have_grid = true;
    } else if (cfg.labeler == "knn-adj") {
        ca = label_knn_adjacency(model, proj, cfg.k, cfg.m);
    } else if (cfg.labeler == "mst-adj") {
        ca = label_mst_adjacency(model, proj, cfg.k, cfg.m);
    } else {
        throw config_error("unknown labeler '" + cfg.labeler +
                           "' (available: grid, knn-adj, mst-adj)");
    }
}

int cmd_fit(const RunConfig& cfg) {
    LoadedData in = load_input(cfg);
    BallProblem problem = make_ball_problem(in.kernel, cfg.nu);
    SvcModel model = solve_dual(problem, optim_method_from_string(cfg.method), cfg.seed);
    if (!in.is_term_data)
        model.train_points = std::make_shared<Eigen::MatrixXd>(in.matrix.values);

    Projection2D proj = project(in.matrix, cfg.cx, cfg.cy);
    ClusterAssignment ca;
    GridLabeling gl;
    bool have_grid = false;
    run_labeler(cfg, model, proj, ca, gl, have_grid);

    fs::create_directories(cfg.out);
    write_run_config(cfg, run_file(cfg.out, "run_config.txt"));
    save_model(model, run_file(cfg.out, "model.txt"));
    save_projection(proj, in.matrix.row_names, run_file(cfg.out, "projection.csv"));
    save_assignment(ca, in.matrix.row_names, run_file(cfg.out, "assignment.csv"));
    if (have_grid)
        save_grid_labeling(gl, run_file(cfg.out, "grid_labels.csv"));
    else
        fs::remove(run_file(cfg.out, "grid_labels.csv"));

    std::string summary = make_summary(cfg, in.matrix, model, ca, have_grid ? &gl : nullptr);
    write_text(run_file(cfg.out, "summary.txt"), summary);
    std::cout << summary;
    return 0;
}

int cmd_label(const std::string& run_dir, CLI::App* sub, const ConfigFlags& flags) {
    RunConfig cfg = load_run_config(run_dir);
    if (sub->count("--labeler")) cfg.labeler = flags.flag_vals.labeler;
    if (sub->count("--k")) cfg.k = flags.flag_vals.k;
    if (sub->count("--g")) cfg.g = flags.flag_vals.g;
    if (sub->count("--m")) cfg.m = flags.flag_vals.m;

    SvcModel model = load_model(run_file(run_dir, "model.txt"));
    std::vector<std::string> names;
    Projection2D proj = load_projection(run_file(run_dir, "projection.csv"), &names);

    ClusterAssignment ca;
    GridLabeling gl;
    bool have_grid = false;
    run_labeler(cfg, model, proj, ca, gl, have_grid);

    write_run_config(cfg, run_file(run_dir, "run_config.txt"));
    save_assignment(ca, names, run_file(run_dir, "assignment.csv"));
    if (have_grid)
        save_grid_labeling(gl, run_file(run_dir, "grid_labels.csv"));
    else
        fs::remove(run_file(run_dir, "grid_labels.csv"));

    // The summary needs the attribute rows; reload them the way fit did.
    LoadedData in = load_input(cfg);
    std::string summary = make_summary(cfg, in.matrix, model, ca, have_grid ? &gl : nullptr);
    write_text(run_file(run_dir, "summary.txt"), summary);
    std::cout << summary;
    return 0;
}

int cmd_eval(const std::string& run_dir) {
    std::vector<std::string> names;
    ClusterAssignment ca;
    read_names_check(run_dir, names, ca);
    std::vector<int> tags(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) tags[i] = parse_class_tag(names[i]);

    PrecisionReport rep = precision(ca, tags);
    ClassDistributionTable table = class_distribution(ca, tags);

    std::ostringstream s;
    s << "precision report\n";
    s << "  n=" << rep.n << "  unclassified=" << rep.unclassified
      << "  misclassified=" << rep.misclassified << "\n";
    s << "  overall precision: " << fmt4f(rep.overall_precision) << "\n";
    s << "  cluster  size  majority_class  majority_fraction\n";
    for (const ClusterStat& cs : rep.per_cluster)
        s << "  " << cs.id << "  " << cs.size << "  " << cs.majority_class << "  "
          << fmt4f(cs.majority_fraction) << "\n";

    s << "class distribution (row fractions per class)\n";
    s << "  cluster  size";
    for (int c : table.classes) s << "  class:" << c;
    s << "\n";
    auto row_line = [&](const DistRow& r, const std::string& label) {
        s << "  " << label << "  " << r.size;
        for (double f : r.fractions) s << "  " << fmt4f(f);
        s << "\n";
    };
    row_line(table.baseline, "all");
    for (const DistRow& r : table.rows) row_line(r, std::to_string(r.cluster_id));

    write_text(run_file(run_dir, "eval.txt"), s.str());
    std::cout << s.str();
    return 0;
}

struct BenchFlags {
    std::vector<int> n_ladder;
    std::vector<int> g_ladder;
    std::vector<std::string> methods;
    int repeats = 5;
};

int cmd_bench(const RunConfig& cfg, const BenchFlags& bf) {
    LoadedData in = load_input(cfg);
    BenchConfig bc;
    bc.kernel = kernel_kind_from_string(cfg.kernel);
    bc.q = cfg.q;
    bc.nu = cfg.nu;
    bc.method = optim_method_from_string(cfg.method);
    bc.seed = cfg.seed;
    bc.k = cfg.k;
    bc.m = cfg.m;
    bc.cx = cfg.cx;
    bc.cy = cfg.cy;
    if (!bf.methods.empty()) bc.methods = bf.methods;
    bc.n_ladder = bf.n_ladder;
    if (!bf.g_ladder.empty()) bc.g_ladder = bf.g_ladder;
    bc.repeats = bf.repeats;

    std::vector<BenchRepeat> raw;
    std::vector<BenchResult> results = bench_labeling(in.matrix, bc, &raw);

    // Wall times vary run to run, so they go to stdout only; the results file
    // carries the deterministic op counts, one row per repeat.
    fs::create_directories(cfg.out);
    std::ostringstream file_s;
    file_s << "method,n,g,repeat,op_count\n";
    for (const BenchRepeat& rr : raw)
        file_s << rr.result.method << "," << rr.result.n << "," << rr.result.g << ","
               << rr.repeat << "," << rr.result.op_count << "\n";
    write_text(run_file(cfg.out, "bench_results.csv"), file_s.str());

    std::printf("%-10s %6s %4s %14s %12s\n", "method", "n", "g", "median_wall_s",
                "op_count");
    for (const BenchResult& r : results)
        std::printf("%-10s %6d %4d %14.6f %12lld\n", r.method.c_str(), r.n, r.g,
                    r.wall_time, r.op_count);
    std::printf("results written to %s\n", run_file(cfg.out, "bench_results.csv").c_str());
    return 0;
}

// Sections ordered cluster 1..K, then the cluster 0 bag last.
std::vector<std::pair<int, std::vector<std::string>>> cluster_sections(
    const ClusterAssignment& ca, const std::vector<std::string>& names) {
    std::map<int, std::vector<std::string>> by_id;
    for (const auto& [id, size] : ca.sizes) by_id[id];  // keep empty real clusters
    by_id[0];
    for (std::size_t i = 0; i < names.size(); ++i)
        by_id[ca.class_points[i]].push_back(names[i]);
    std::vector<std::pair<int, std::vector<std::string>>> sections;
    for (auto& [id, members] : by_id)
        if (id != 0) sections.emplace_back(id, std::move(members));
    sections.emplace_back(0, std::move(by_id[0]));
    return sections;
}

int cmd_export(const std::string& run_dir, const std::string& name) {
    std::vector<std::string> names;
    ClusterAssignment ca;
    read_names_check(run_dir, names, ca);

    std::ostringstream s;
    s << "clusters export: " << name << "\n";
    for (const auto& [id, members] : cluster_sections(ca, names)) {
        if (id == 0)
            s << "cluster 0 (" << members.size()
              << " members) - a bag of variables not clusterable\n";
        else
            s << "cluster " << id << " (" << members.size() << " members)\n";
        for (const std::string& n : members) s << "  " << n << "\n";
    }
    std::string path = run_file(run_dir, "clusters_" + name + ".txt");
    write_text(path, s.str());
    std::cout << "exported " << ca.cluster_count() << " clusters to " << path << "\n";
    return 0;
}

int cmd_query(const std::string& run_dir, bool all, const std::string& substring,
              int by_id, bool have_id) {
    std::vector<std::string> names;
    ClusterAssignment ca;
    read_names_check(run_dir, names, ca);
    auto sections = cluster_sections(ca, names);

    auto print_section = [&](int id, const std::vector<std::string>& members) {
        if (id == 0)
            std::cout << "cluster 0 (" << members.size()
                      << " members) - a bag of variables not clusterable\n";
        else
            std::cout << "cluster " << id << " (" << members.size() << " members)\n";
        for (const std::string& n : members) std::cout << "  " << n << "\n";
    };

    if (have_id) {
        for (const auto& [id, members] : sections)
            if (id == by_id) {
                print_section(id, members);
                return 0;
            }
        std::cout << "cluster " << by_id << ": no such cluster\n";
        return 0;
    }
    if (!substring.empty()) {
        bool any = false;
        for (const auto& [id, members] : sections) {
            bool hit = false;
            for (const std::string& n : members)
                if (n.find(substring) != std::string::npos) { hit = true; break; }
            if (hit) {
                print_section(id, members);
                any = true;
            }
        }
        if (!any) std::cout << "no cluster has a member matching '" << substring << "'\n";
        return 0;
    }
    if (all) {
        for (const auto& [id, members] : sections) print_section(id, members);
        return 0;
    }
    throw config_error("query needs one of --all, --substring, or --id");
}

int cmd_plot(const std::string& run_dir, const std::string& out_path, bool no_cells,
             bool no_sv, const std::string& title) {
    SvcModel model = load_model(run_file(run_dir, "model.txt"));
    std::vector<std::string> names;
    Projection2D proj = load_projection(run_file(run_dir, "projection.csv"), &names);
    ClusterAssignment ca;
    read_names_check(run_dir, names, ca);

    GridLabeling gl;
    bool have_grid = false;
    std::string grid_path = run_file(run_dir, "grid_labels.csv");
    if (fs::exists(grid_path)) {
        gl = load_grid_labeling(grid_path);
        have_grid = true;
    }

    PlotOptions opt;
    opt.draw_grid_cells = !no_cells;
    opt.draw_sv_markers = !no_sv;
    opt.title = title.empty()
                    ? "svclust: " + std::to_string(ca.cluster_count()) + " clusters"
                    : title;
    std::string path = out_path.empty() ? run_file(run_dir, "plot.svg") : out_path;
    save_svg(path, proj, ca, have_grid ? &gl : nullptr, &model, opt);
    std::cout << "plot written to " << path << "\n";
    return 0;
}

int cmd_gen_terms(const std::string& terms_path, const std::string& radicals_path,
                  std::uint64_t seed) {
    TermDataset td = make_synthetic_terms(seed);
    std::ostringstream terms_s;
    for (std::size_t i = 0; i < td.terms.size(); ++i)
        terms_s << td.tags[i] << " " << td.terms[i] << "\n";
    write_text(terms_path, terms_s.str());
    if (!radicals_path.empty()) {
        std::ostringstream rad_s;
        for (const std::string& r : synthetic_radicals()) rad_s << r << "\n";
        write_text(radicals_path, rad_s.str());
    }
    std::cout << "wrote " << td.terms.size() << " terms to " << terms_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"svclust: support vector clustering (fit, label, evaluate, export, plot)"};
    app.require_subcommand(1);

    // fit
    auto* fit = app.add_subcommand("fit", "fit the ball, label clusters, write a run dir");
    ConfigFlags fit_flags;
    fit_flags.add_to(fit, true);

    // label
    auto* label = app.add_subcommand("label", "relabel an existing run with new labeler settings");
    std::string label_run;
    label->add_option("--run", label_run, "run directory written by fit")->required();
    ConfigFlags label_flags;
    label->add_option("--labeler", label_flags.flag_vals.labeler,
                      "cluster labeler: grid | knn-adj | mst-adj");
    label->add_option("--k", label_flags.flag_vals.k,
                      "grid vote threshold / adjacency neighbour count");
    label->add_option("--g", label_flags.flag_vals.g, "grid size per axis");
    label->add_option("--m", label_flags.flag_vals.m, "segment samples");

    // eval
    auto* eval = app.add_subcommand("eval", "precision and class distribution of a run");
    std::string eval_run;
    eval->add_option("--run", eval_run, "run directory written by fit")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "labeling micro-benchmarks (medians of repeats)");
    ConfigFlags bench_flags;
    bench_flags.add_to(bench, true);
    BenchFlags bench_extra;
    bench->add_option("--n-ladder", bench_extra.n_ladder,
                      "dataset size ladder (prefixes of the data)");
    bench->add_option("--g-ladder", bench_extra.g_ladder, "grid size ladder");
    bench->add_option("--methods", bench_extra.methods,
                      "methods to run: grid, knn_adj, mst_adj");
    bench->add_option("--repeats", bench_extra.repeats, "timed repeats (>= 3)");

    // export
    auto* exp = app.add_subcommand("export", "export cluster membership lists");
    std::string export_run, export_name;
    exp->add_option("--run", export_run, "run directory written by fit")->required();
    exp->add_option("--name", export_name, "name embedded in the output file")->required();

    // query
    auto* query = app.add_subcommand("query", "navigate clusters of a run");
    std::string query_run, query_sub;
    int query_id = 0;
    bool query_all = false;
    query->add_option("--run", query_run, "run directory written by fit")->required();
    query->add_flag("--all", query_all, "print every cluster ordered by id");
    query->add_option("--substring", query_sub,
                      "print clusters with a member name containing this substring");
    auto* id_opt = query->add_option("--id", query_id, "print one cluster's members");

    // plot
    auto* plot = app.add_subcommand("plot", "render the clustered projection as SVG");
    std::string plot_run, plot_out, plot_title;
    bool plot_no_cells = false, plot_no_sv = false;
    plot->add_option("--run", plot_run, "run directory written by fit")->required();
    plot->add_option("--out", plot_out, "output SVG path (default <run>/plot.svg)");
    plot->add_flag("--no-cells", plot_no_cells, "skip the in-ball cell shading");
    plot->add_flag("--no-sv-markers", plot_no_sv, "skip the support vector rings");
    plot->add_option("--title", plot_title, "plot title");

    // gen-terms
    auto* gen = app.add_subcommand("gen-terms",
                                   "generate the synthetic 1893-term benchmark corpus");
    std::string gen_terms_path = "terms_1893.txt", gen_radicals_path;
    std::uint64_t gen_seed = 7;
    gen->add_option("--out-terms", gen_terms_path, "output term corpus path");
    gen->add_option("--out-radicals", gen_radicals_path, "output radical dictionary path");
    gen->add_option("--seed", gen_seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (fit->parsed()) return cmd_fit(fit_flags.resolve(fit));
        if (label->parsed()) return cmd_label(label_run, label, label_flags);
        if (eval->parsed()) return cmd_eval(eval_run);
        if (bench->parsed()) return cmd_bench(bench_flags.resolve(bench), bench_extra);
        if (exp->parsed()) return cmd_export(export_run, export_name);
        if (query->parsed())
            return cmd_query(query_run, query_all, query_sub, query_id,
                             id_opt->count() > 0);
        if (plot->parsed()) return cmd_plot(plot_run, plot_out, plot_no_cells, plot_no_sv,
                                            plot_title);
        if (gen->parsed()) return cmd_gen_terms(gen_terms_path, gen_radicals_path, gen_seed);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const svclust::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
