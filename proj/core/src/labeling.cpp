#include "svclust/labeling.hpp"

#include "svclust/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace svclust {

double ProjectedBall::r2_at(double x, double y) const {
    const Eigen::Index n = points.rows();
    double cross = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double dx = points(i, 0) - x;
        const double dy = points(i, 1) - y;
        cross += beta[i] * std::exp(-q * (dx * dx + dy * dy));
    }
    op_count += n;
    double v = 1.0 - 2.0 * cross + center_norm_sq;
    return v < 0.0 ? 0.0 : v;
}

ProjectedBall make_projected_ball(const SvcModel& model, const Projection2D& proj) {
    if (proj.size() != model.n)
        throw config_error("projection size " + std::to_string(proj.size()) +
                           " does not match model size " + std::to_string(model.n));
    if (model.sv_indices.empty() && model.bsv_indices.empty())
        throw config_error("model has no support vectors");

    ProjectedBall ball;
    ball.points = proj.coords;
    ball.beta = model.beta;
    ball.q = model.q;

    // Gaussian kernel of width q over the plane; grid points only exist here,
    // so every training-side quantity is recomputed in the same geometry.
    const Eigen::Index n = ball.points.rows();
    Eigen::MatrixXd k2(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k2(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v =
                std::exp(-ball.q * (ball.points.row(i) - ball.points.row(j)).squaredNorm());
            k2(i, j) = v;
            k2(j, i) = v;
        }
    }
    const Eigen::VectorXd kb = k2 * ball.beta;
    ball.center_norm_sq = ball.beta.dot(kb);

    auto r2_train = [&](int i) {
        double v = 1.0 - 2.0 * kb[i] + ball.center_norm_sq;
        return v < 0.0 ? 0.0 : v;
    };
    // Same selection rule as the fit: mean over unbounded SVs, max over
    // bounded ones when no unbounded SV exists.
    if (!model.sv_indices.empty()) {
        double s = 0.0;
        for (int i : model.sv_indices) s += r2_train(i);
        ball.r_hat_sq = s / static_cast<double>(model.sv_indices.size());
    } else {
        double mx = 0.0;
        for (int i : model.bsv_indices) mx = std::max(mx, r2_train(i));
        ball.r_hat_sq = mx;
    }
    ball.op_count = 0;  // setup cost is not part of the labeling op count
    return ball;
}

namespace {

struct CellRef {
    int a, b;
};

/// Dense renumbering: component ids sorted by size descending, ties broken by
/// the smallest row-major cell.
void renumber_grid_ids(GridLabeling& gl) {
    const int g = gl.grid.g;
    std::map<int, int> size_of;
    std::map<int, int> first_cell;
    for (int idx = 0; idx < g * g; ++idx) {
        const int id = gl.num_points[static_cast<std::size_t>(idx)];
        if (id == 0) continue;
        ++size_of[id];
        if (!first_cell.count(id)) first_cell[id] = idx;
    }
    std::vector<int> ids;
    for (const auto& kv : size_of) ids.push_back(kv.first);
    std::sort(ids.begin(), ids.end(), [&](int x, int y) {
        if (size_of[x] != size_of[y]) return size_of[x] > size_of[y];
        return first_cell[x] < first_cell[y];
    });
    std::map<int, int> remap;
    for (std::size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = static_cast<int>(i) + 1;
    for (auto& v : gl.num_points)
        if (v != 0) v = remap[v];
    gl.cluster_count = static_cast<int>(ids.size());
}

/// One pass of the neighbour-merge loop: any two 8-adjacent in-ball cells get
/// the same id (smaller wins). Returns the number of changed cells; the flood
/// fill already yields maximal components, so a second pass is a no-op, which
/// the idempotency property checks.
int merge_pass(GridLabeling& gl) {
    const int g = gl.grid.g;
    int changed = 0;
    for (int a = 0; a < g; ++a) {
        for (int b = 0; b < g; ++b) {
            const int id = gl.num_points[static_cast<std::size_t>(a * g + b)];
            if (id == 0) continue;
            for (int da = -1; da <= 1; ++da) {
                for (int db = -1; db <= 1; ++db) {
                    const int u = a + da, v = b + db;
                    if (u < 0 || v < 0 || u >= g || v >= g) continue;
                    int& other = gl.num_points[static_cast<std::size_t>(u * g + v)];
                    if (other != 0 && other > id) {
                        // Merge CV(i) and CV(j): relabel the larger id.
                        const int from = other, to = id;
                        for (auto& w : gl.num_points)
                            if (w == from) w = to;
                        ++changed;
                    }
                }
            }
        }
    }
    return changed;
}

} // namespace

std::pair<GridLabeling, ClusterAssignment> label_grid(const SvcModel& model,
                                                      const Projection2D& proj, int g,
                                                      int k) {
    if (g < 2) throw config_error("grid size must be >= 2");
    if (k < 1 || k > 8) throw config_error("neighbour count k must lie in [1, 8]");

    const ProjectedBall ball = make_projected_ball(model, proj);
    const int n = proj.size();

    GridLabeling gl;
    gl.grid.g = g;
    gl.grid.origin_x = proj.min_x;
    gl.grid.origin_y = proj.min_y;
    gl.grid.s1 = (proj.max_x - proj.min_x) / static_cast<double>(g);
    gl.grid.s2 = (proj.max_y - proj.min_y) / static_cast<double>(g);
    gl.num_points.assign(static_cast<std::size_t>(g) * g, 0);

    // Stage 1: in-ball lattice points.
    std::vector<std::uint8_t> in_ball(static_cast<std::size_t>(g) * g, 0);
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b)
            in_ball[static_cast<std::size_t>(a * g + b)] =
                ball.r2_at(gl.grid.x_of(a), gl.grid.y_of(b)) <= ball.r_hat_sq ? 1 : 0;

    // Hash of every data point to its nearest lattice cell.
    auto hash_cell = [&](int i) {
        int a = static_cast<int>(std::lround((proj.coords(i, 0) - gl.grid.origin_x) / gl.grid.s1));
        int b = static_cast<int>(std::lround((proj.coords(i, 1) - gl.grid.origin_y) / gl.grid.s2));
        return CellRef{std::clamp(a, 0, g - 1), std::clamp(b, 0, g - 1)};
    };

    bool any = std::any_of(in_ball.begin(), in_ball.end(), [](std::uint8_t v) { return v != 0; });
    if (!any) {
        // The ball is thinner than the lattice: seed with the hash cells of
        // the data points that are themselves inside the ball, so degenerate
        // but valid models (e.g. a single point) still label their data.
        const double tol = model.tol_kkt();
        for (int i = 0; i < n; ++i) {
            if (ball.r2_at(proj.coords(i, 0), proj.coords(i, 1)) <= ball.r_hat_sq + tol) {
                const CellRef cell = hash_cell(i);
                in_ball[static_cast<std::size_t>(cell.a * g + cell.b)] = 1;
                any = true;
            }
        }
    }
    gl.op_count = ball.op_count;

    if (!any) {
        gl.empty = true;
        gl.diagnostic = "no in-ball grid point: ball radius excludes the whole lattice "
                        "(q or nu mis-set)";
        gl.cluster_count = 0;
        ClusterAssignment ca;
        ca.class_points.assign(static_cast<std::size_t>(n), 0);
        return {gl, ca};
    }

    // Flood fill of 8-connected components.
    int next_id = 0;
    for (int a = 0; a < g; ++a) {
        for (int b = 0; b < g; ++b) {
            const std::size_t root = static_cast<std::size_t>(a * g + b);
            if (!in_ball[root] || gl.num_points[root] != 0) continue;
            ++next_id;
            std::vector<CellRef> stack{{a, b}};
            gl.num_points[root] = next_id;
            while (!stack.empty()) {
                const CellRef cur = stack.back();
                stack.pop_back();
                for (int da = -1; da <= 1; ++da) {
                    for (int db = -1; db <= 1; ++db) {
                        const int u = cur.a + da, v = cur.b + db;
                        if (u < 0 || v < 0 || u >= g || v >= g) continue;
                        const std::size_t idx = static_cast<std::size_t>(u * g + v);
                        if (in_ball[idx] && gl.num_points[idx] == 0) {
                            gl.num_points[idx] = next_id;
                            stack.push_back({u, v});
                        }
                    }
                }
            }
        }
    }
    merge_pass(gl);  // kept for fidelity with the two-phase scheme; a no-op here
    renumber_grid_ids(gl);

    // Stage 2: vote over widening square windows around the hash cell.
    ClusterAssignment ca;
    ca.class_points.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const CellRef cell = hash_cell(i);
        for (int ring = 1; ring <= 3; ++ring) {
            std::map<int, int> votes;
            for (int u = std::max(0, cell.a - ring); u <= std::min(g - 1, cell.a + ring); ++u)
                for (int v = std::max(0, cell.b - ring); v <= std::min(g - 1, cell.b + ring); ++v) {
                    const int id = gl.num_points[static_cast<std::size_t>(u * g + v)];
                    if (id > 0) ++votes[id];
                }
            if (votes.empty()) continue;
            int best_id = 0, best_count = -1;
            for (const auto& kv : votes) {
                if (kv.second > best_count) {  // ties go to the lowest id
                    best_id = kv.first;
                    best_count = kv.second;
                }
            }
            if (best_count >= k) {
                ca.class_points[static_cast<std::size_t>(i)] = best_id;
                break;
            }
        }
    }
    for (int id : ca.class_points)
        if (id > 0) ++ca.sizes[id];
    ca.op_count = ball.op_count;  // stage 2 evaluates no kernels
    return {gl, ca};
}

namespace {

/// True iff all m midpoint samples on the open segment are inside the ball.
bool segment_inside(const ProjectedBall& ball, double x1, double y1, double x2, double y2,
                    int m) {
    for (int u = 0; u < m; ++u) {
        const double t = (static_cast<double>(u) + 0.5) / static_cast<double>(m);
        const double px = x1 + t * (x2 - x1);
        const double py = y1 + t * (y2 - y1);
        if (ball.r2_at(px, py) > ball.r_hat_sq) return false;
    }
    return true;
}

} // namespace

AdjacencyMatrix build_adjacency(const SvcModel& model, const Projection2D& data, int m) {
    if (m < 1) throw config_error("segment sample count must be >= 1");
    const ProjectedBall ball = make_projected_ball(model, data);
    const int n = data.size();
    AdjacencyMatrix adj;
    adj.n = n;
    adj.bits.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        adj.bits[static_cast<std::size_t>(i) * n + i] = 1;
        for (int j = i + 1; j < n; ++j) {
            const bool ok = segment_inside(ball, data.coords(i, 0), data.coords(i, 1),
                                           data.coords(j, 0), data.coords(j, 1), m);
            adj.bits[static_cast<std::size_t>(i) * n + j] = ok ? 1 : 0;
            adj.bits[static_cast<std::size_t>(j) * n + i] = ok ? 1 : 0;
        }
    }
    adj.op_count = ball.op_count;
    return adj;
}

ClusterAssignment components_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& e : edges) {
        const int a = find(e.first), b = find(e.second);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

    // Multi-member components sorted by size descending (ties: smallest
    // member index); singletons stay unclustered.
    std::vector<const std::vector<int>*> comps;
    for (const auto& kv : groups)
        if (kv.second.size() > 1) comps.push_back(&kv.second);
    std::sort(comps.begin(), comps.end(), [](const auto* x, const auto* y) {
        if (x->size() != y->size()) return x->size() > y->size();
        return x->front() < y->front();
    });

    ClusterAssignment ca;
    ca.class_points.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int i : *comps[c])
            ca.class_points[static_cast<std::size_t>(i)] = static_cast<int>(c) + 1;
        ca.sizes[static_cast<int>(c) + 1] = static_cast<int>(comps[c]->size());
    }
    return ca;
}

ClusterAssignment label_knn_adjacency(const SvcModel& model, const Projection2D& data,
                                      int k, int m) {
    if (k < 1) throw config_error("neighbour count must be >= 1");
    if (m < 1) throw config_error("segment sample count must be >= 1");
    const ProjectedBall ball = make_projected_ball(model, data);
    const int n = data.size();

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        // k nearest neighbours, deterministic under distance ties.
        std::vector<std::pair<double, int>> dists;
        dists.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            dists.emplace_back((data.coords.row(i) - data.coords.row(j)).squaredNorm(), j);
        }
        const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), dists.size());
        std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(kk),
                          dists.end());
        for (std::size_t t = 0; t < kk; ++t) {
            const int j = dists[t].second;
            if (segment_inside(ball, data.coords(i, 0), data.coords(i, 1), data.coords(j, 0),
                               data.coords(j, 1), m))
                edges.emplace_back(i, j);
        }
    }
    ClusterAssignment ca = components_from_edges(n, edges);
    ca.op_count = ball.op_count;
    return ca;
}

ClusterAssignment label_mst_adjacency(const SvcModel& model, const Projection2D& data,
                                      int k, int m) {
    if (k < 1) throw config_error("link cap must be >= 1");
    if (m < 1) throw config_error("segment sample count must be >= 1");
    const ProjectedBall ball = make_projected_ball(model, data);
    const int n = data.size();

    // Greedy Kruskal with a per-node degree cap of k.
    struct Edge {
        double d;
        int i, j;
    };
    std::vector<Edge> all;
    all.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all.push_back({(data.coords.row(i) - data.coords.row(j)).squaredNorm(), i, j});
    std::sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> tree;
    for (const Edge& e : all) {
        if (degree[static_cast<std::size_t>(e.i)] >= k ||
            degree[static_cast<std::size_t>(e.j)] >= k)
            continue;
        const int a = find(e.i), b = find(e.j);
        if (a == b) continue;
        parent[static_cast<std::size_t>(a)] = b;
        ++degree[static_cast<std::size_t>(e.i)];
        ++degree[static_cast<std::size_t>(e.j)];
        tree.emplace_back(e.i, e.j);
    }

    // The segment test prunes tree edges that leave the ball.
    std::vector<std::pair<int, int>> kept;
    for (const auto& e : tree) {
        if (segment_inside(ball, data.coords(e.first, 0), data.coords(e.first, 1),
                           data.coords(e.second, 0), data.coords(e.second, 1), m))
            kept.push_back(e);
    }
    ClusterAssignment ca = components_from_edges(n, kept);
    ca.op_count = ball.op_count;
    return ca;
}

} // namespace svclust
