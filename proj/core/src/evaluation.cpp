#include "svclust/evaluation.hpp"

#include "svclust/errors.hpp"
#include "svclust/projection.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace svclust {

namespace {

void check_tags(std::size_t n, const std::vector<int>& tags) {
    if (tags.size() != n)
        throw config_error("tag count " + std::to_string(tags.size()) +
                           " does not match point count " + std::to_string(n));
    for (std::size_t i = 0; i < tags.size(); ++i)
        if (tags[i] == 0)
            throw config_error("missing class tag for point " + std::to_string(i + 1));
}

} // namespace

PrecisionReport precision(const ClusterAssignment& assignment, const std::vector<int>& tags) {
    const std::size_t n = assignment.class_points.size();
    check_tags(n, tags);

    std::map<int, std::map<int, int>> counts;  // cluster id -> class -> count
    int unclassified = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int id = assignment.class_points[i];
        if (id == 0) {
            ++unclassified;
            continue;
        }
        ++counts[id][tags[i]];
    }

    PrecisionReport rep;
    rep.n = static_cast<int>(n);
    rep.unclassified = unclassified;
    int majority_total = 0;
    for (const auto& kv : counts) {
        ClusterStat st;
        st.id = kv.first;
        int best_class = 0, best = -1;
        for (const auto& cc : kv.second) {
            st.size += cc.second;
            if (cc.second > best) {  // ties go to the smallest class id
                best = cc.second;
                best_class = cc.first;
            }
        }
        st.majority_class = best_class;
        st.majority_fraction = st.size > 0 ? static_cast<double>(best) / st.size : 0.0;
        majority_total += best;
        rep.misclassified += st.size - best;
        rep.per_cluster.push_back(st);
    }
    std::sort(rep.per_cluster.begin(), rep.per_cluster.end(),
              [](const ClusterStat& a, const ClusterStat& b) {
                  if (a.size != b.size) return a.size > b.size;
                  return a.id < b.id;
              });
    rep.overall_precision = n > 0 ? static_cast<double>(majority_total) / static_cast<double>(n)
                                  : 0.0;
    return rep;
}

ClassDistributionTable class_distribution(const ClusterAssignment& assignment,
                                          const std::vector<int>& tags) {
    const std::size_t n = assignment.class_points.size();
    check_tags(n, tags);

    ClassDistributionTable table;
    std::set<int> classes(tags.begin(), tags.end());
    table.classes.assign(classes.begin(), classes.end());
    std::map<int, std::size_t> class_col;
    for (std::size_t c = 0; c < table.classes.size(); ++c)
        class_col[table.classes[c]] = c;

    std::map<int, std::vector<int>> members;  // cluster id -> class counts
    for (std::size_t i = 0; i < n; ++i)
        members[assignment.class_points[i]].resize(table.classes.size());
    for (std::size_t i = 0; i < n; ++i)
        ++members[assignment.class_points[i]][class_col[tags[i]]];

    auto make_row = [&](int id, const std::vector<int>& cc) {
        DistRow row;
        row.cluster_id = id;
        int size = 0;
        for (int v : cc) size += v;
        row.size = size;
        for (int v : cc)
            row.fractions.push_back(size > 0 ? static_cast<double>(v) / size : 0.0);
        return row;
    };
    for (const auto& kv : members) table.rows.push_back(make_row(kv.first, kv.second));

    std::vector<int> all_counts(table.classes.size(), 0);
    for (std::size_t i = 0; i < n; ++i) ++all_counts[class_col[tags[i]]];
    table.baseline = make_row(-1, all_counts);
    return table;
}

std::vector<BenchResult> bench_labeling(const DataMatrix& data, const BenchConfig& cfg,
                                        std::vector<BenchRepeat>* raw) {
    if (cfg.repeats < 3) throw config_error("bench repeats must be >= 3");
    using clock = std::chrono::steady_clock;

    std::vector<int> n_ladder = cfg.n_ladder;
    if (n_ladder.empty()) n_ladder.push_back(data.rows());

    std::vector<BenchResult> medians;
    for (int n : n_ladder) {
        if (n < 2 || n > data.rows())
            throw config_error("bench ladder size " + std::to_string(n) +
                               " out of range for N=" + std::to_string(data.rows()));
        DataMatrix sub;
        sub.values = data.values.topRows(n);
        sub.row_names.assign(data.row_names.begin(), data.row_names.begin() + n);
        sub.col_names = data.col_names;
        sub.class_tags.assign(data.class_tags.begin(), data.class_tags.begin() + n);

        const Projection2D proj = project(sub, cfg.cx, cfg.cy);
        KernelOptions kopt;
        kopt.q = cfg.q;
        kopt.seed = cfg.seed;
        const KernelMatrix kernel = build_kernel_matrix(sub, cfg.kernel, kopt);
        const SvcModel model = solve_dual(make_ball_problem(kernel, cfg.nu), cfg.method,
                                          cfg.seed);

        for (const std::string& method : cfg.methods) {
            std::vector<int> gs = method == "grid" ? cfg.g_ladder : std::vector<int>{0};
            for (int g : gs) {
                auto run_once = [&]() -> BenchResult {
                    BenchResult r;
                    r.method = method;
                    r.n = n;
                    r.g = g;
                    const auto t0 = clock::now();
                    if (method == "grid") {
                        auto [gl, ca] = label_grid(model, proj, g, cfg.k);
                        r.op_count = ca.op_count;
                    } else if (method == "knn_adj") {
                        r.op_count = label_knn_adjacency(model, proj, cfg.k, cfg.m).op_count;
                    } else if (method == "mst_adj") {
                        r.op_count = label_mst_adjacency(model, proj, cfg.k, cfg.m).op_count;
                    } else {
                        throw config_error("unknown bench method '" + method + "'");
                    }
                    r.wall_time =
                        std::chrono::duration<double>(clock::now() - t0).count();
                    return r;
                };
                run_once();  // warm-up
                std::vector<BenchResult> reps;
                for (int rep = 0; rep < cfg.repeats; ++rep) {
                    reps.push_back(run_once());
                    if (raw) raw->push_back({reps.back(), rep});
                }
                std::vector<double> times;
                for (const auto& r : reps) times.push_back(r.wall_time);
                std::sort(times.begin(), times.end());
                BenchResult med = reps.front();
                med.wall_time = times[times.size() / 2];
                medians.push_back(med);
            }
        }
    }
    return medians;
}

} // namespace svclust
