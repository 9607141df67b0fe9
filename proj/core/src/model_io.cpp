#include "svclust/model_io.hpp"

#include "svclust/errors.hpp"
#include "svclust/text_util.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace svclust {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "' for reading");
  return in;
}

void write_index_list(std::ofstream& out, const std::string& key,
                      const std::vector<int>& v) {
  out << key << " " << v.size();
  for (int i : v) out << " " << i;
  out << "\n";
}

double parse_double_field(const std::string& s, const std::string& path) {
  double v = 0;
  if (!parse_double(s, v))
    throw runtime_error("'" + path + "': expected a number, got '" + s + "'");
  return v;
}

long long parse_long_field(const std::string& s, const std::string& path) {
  long long v = 0;
  if (!parse_long(s, v))
    throw runtime_error("'" + path + "': expected an integer, got '" + s + "'");
  return v;
}

} // namespace

void save_model(const SvcModel& model, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "svclust-model v1\n";
  out << "n " << model.n << "\n";
  out << "kernel " << to_string(model.kernel_kind) << "\n";
  out << "q " << fmt_g17(model.q) << "\n";
  out << "nu " << fmt_g17(model.nu) << "\n";
  out << "c " << fmt_g17(model.C) << "\n";
  out << "seed " << model.seed << "\n";
  out << "method " << (model.method == OptimMethod::Quadratic ? "quadratic" : "stochastic")
      << "\n";
  out << "sweeps " << model.sweeps << "\n";
  out << "final_gap " << fmt_g17(model.final_gap) << "\n";
  out << "r_hat_sq " << fmt_g17(model.r_hat_sq) << "\n";
  out << "center_norm_sq " << fmt_g17(model.center_norm_sq) << "\n";
  out << "r_hat_from_bsv_fallback " << (model.r_hat_from_bsv_fallback ? 1 : 0) << "\n";
  out << "beta " << model.beta.size();
  for (double b : model.beta) out << " " << fmt_g17(b);
  out << "\n";
  write_index_list(out, "sv_indices", model.sv_indices);
  write_index_list(out, "bsv_indices", model.bsv_indices);
  if (model.train_points) {
    const Eigen::MatrixXd& x = *model.train_points;
    out << "train_points " << x.rows() << " " << x.cols() << "\n";
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (j > 0) out << " ";
        out << fmt_g17(x(i, j));
      }
      out << "\n";
    }
  } else {
    out << "train_points 0 0\n";
  }
  if (!out) throw runtime_error("write failed for '" + path + "'");
}

SvcModel load_model(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "svclust-model v1")
    throw runtime_error("'" + path + "': not an svclust model file (bad header)");

  SvcModel m;
  bool saw_train = false;
  while (std::getline(in, line)) {
    std::istringstream ls(trim(line));
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "n") {
      ls >> m.n;
    } else if (key == "kernel") {
      std::string kind;
      ls >> kind;
      m.kernel_kind = kernel_kind_from_string(kind);
    } else if (key == "q") {
      ls >> m.q;
    } else if (key == "nu") {
      ls >> m.nu;
    } else if (key == "c") {
      ls >> m.C;
    } else if (key == "seed") {
      ls >> m.seed;
    } else if (key == "method") {
      std::string s;
      ls >> s;
      if (s == "quadratic")
        m.method = OptimMethod::Quadratic;
      else if (s == "stochastic")
        m.method = OptimMethod::Stochastic;
      else
        throw runtime_error("'" + path + "': unknown method '" + s + "'");
    } else if (key == "sweeps") {
      ls >> m.sweeps;
    } else if (key == "final_gap") {
      ls >> m.final_gap;
    } else if (key == "r_hat_sq") {
      ls >> m.r_hat_sq;
    } else if (key == "center_norm_sq") {
      ls >> m.center_norm_sq;
    } else if (key == "r_hat_from_bsv_fallback") {
      int v = 0;
      ls >> v;
      m.r_hat_from_bsv_fallback = (v != 0);
    } else if (key == "beta") {
      std::size_t cnt = 0;
      ls >> cnt;
      m.beta.resize(cnt);
      for (std::size_t i = 0; i < cnt; ++i)
        if (!(ls >> m.beta[i]))
          throw runtime_error("'" + path + "': truncated beta vector");
    } else if (key == "sv_indices" || key == "bsv_indices") {
      std::size_t cnt = 0;
      ls >> cnt;
      std::vector<int>& dst = (key == "sv_indices") ? m.sv_indices : m.bsv_indices;
      dst.resize(cnt);
      for (std::size_t i = 0; i < cnt; ++i)
        if (!(ls >> dst[i]))
          throw runtime_error("'" + path + "': truncated " + key);
    } else if (key == "train_points") {
      Eigen::Index rows = 0, cols = 0;
      ls >> rows >> cols;
      saw_train = true;
      if (rows > 0 && cols > 0) {
        auto x = std::make_shared<Eigen::MatrixXd>(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
          if (!std::getline(in, line))
            throw runtime_error("'" + path + "': truncated train_points block");
          std::istringstream rs(line);
          for (Eigen::Index j = 0; j < cols; ++j)
            if (!(rs >> (*x)(i, j)))
              throw runtime_error("'" + path + "': bad train_points row " +
                                  std::to_string(i + 1));
        }
        m.train_points = x;
      }
    } else {
      throw runtime_error("'" + path + "': unknown model field '" + key + "'");
    }
    if (ls.fail())
      throw runtime_error("'" + path + "': malformed value for field '" + key + "'");
  }
  if (m.n == 0 || m.beta.size() != static_cast<Eigen::Index>(m.n) || !saw_train)
    throw runtime_error("'" + path + "': incomplete model file");
  return m;
}

void save_projection(const Projection2D& proj, const std::vector<std::string>& row_names,
                     const std::string& path) {
  if (row_names.size() != static_cast<std::size_t>(proj.size()))
    throw config_error("save_projection: row name count does not match projection size");
  std::ofstream out = open_out(path);
  out << "name,c1,c2\n";
  for (Eigen::Index i = 0; i < proj.size(); ++i)
    out << row_names[static_cast<std::size_t>(i)] << "," << fmt_g17(proj.coords(i, 0))
        << "," << fmt_g17(proj.coords(i, 1)) << "\n";
  if (!out) throw runtime_error("write failed for '" + path + "'");
}

Projection2D load_projection(const std::string& path, std::vector<std::string>* row_names) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "name,c1,c2")
    throw runtime_error("'" + path + "': bad projection header");
  std::vector<std::string> names;
  std::vector<std::pair<double, double>> pts;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> parts = split(line, ',');
    if (parts.size() != 3)
      throw runtime_error("'" + path + "': bad projection row '" + line + "'");
    names.push_back(parts[0]);
    pts.emplace_back(parse_double_field(parts[1], path), parse_double_field(parts[2], path));
  }
  Eigen::MatrixXd coords(static_cast<Eigen::Index>(pts.size()), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    coords(static_cast<Eigen::Index>(i), 0) = pts[i].first;
    coords(static_cast<Eigen::Index>(i), 1) = pts[i].second;
  }
  if (row_names) *row_names = std::move(names);
  return projection_from_coords(coords, ProjectionSource::Columns);
}

void save_assignment(const ClusterAssignment& assignment,
                     const std::vector<std::string>& row_names, const std::string& path) {
  if (row_names.size() != assignment.class_points.size())
    throw config_error("save_assignment: row name count does not match assignment size");
  std::ofstream out = open_out(path);
  out << "name,cluster\n";
  for (std::size_t i = 0; i < row_names.size(); ++i)
    out << row_names[i] << "," << assignment.class_points[i] << "\n";
  if (!out) throw runtime_error("write failed for '" + path + "'");
}

ClusterAssignment load_assignment(const std::string& path,
                                  std::vector<std::string>* row_names) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "name,cluster")
    throw runtime_error("'" + path + "': bad assignment header");
  ClusterAssignment ca;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    // The name itself may contain commas only if quoted; we never write such
    // names, so split on the last comma.
    std::size_t pos = line.rfind(',');
    if (pos == std::string::npos)
      throw runtime_error("'" + path + "': bad assignment row '" + line + "'");
    names.push_back(line.substr(0, pos));
    int id = static_cast<int>(parse_long_field(line.substr(pos + 1), path));
    ca.class_points.push_back(id);
    if (id >= 1) ca.sizes[id] += 1;
  }
  if (row_names) *row_names = std::move(names);
  return ca;
}

void save_grid_labeling(const GridLabeling& gl, const std::string& path) {
  std::ofstream out = open_out(path);
  const Grid& g = gl.grid;
  out << "grid " << g.g << " " << fmt_g17(g.origin_x) << " " << fmt_g17(g.origin_y) << " "
      << fmt_g17(g.s1) << " " << fmt_g17(g.s2) << "\n";
  for (int a = 0; a < g.g; ++a) {
    for (int b = 0; b < g.g; ++b) {
      if (b > 0) out << " ";
      out << gl.num_points[static_cast<std::size_t>(a * g.g + b)];
    }
    out << "\n";
  }
  if (!out) throw runtime_error("write failed for '" + path + "'");
}

GridLabeling load_grid_labeling(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw runtime_error("'" + path + "': empty grid labeling file");
  std::istringstream hs(line);
  std::string tag;
  GridLabeling gl;
  hs >> tag >> gl.grid.g >> gl.grid.origin_x >> gl.grid.origin_y >> gl.grid.s1 >>
      gl.grid.s2;
  if (tag != "grid" || hs.fail() || gl.grid.g < 2)
    throw runtime_error("'" + path + "': bad grid labeling header");
  int g = gl.grid.g;
  gl.num_points.assign(static_cast<std::size_t>(g) * static_cast<std::size_t>(g), 0);
  int max_id = 0;
  for (int a = 0; a < g; ++a) {
    if (!std::getline(in, line))
      throw runtime_error("'" + path + "': truncated grid labeling table");
    std::istringstream rs(line);
    for (int b = 0; b < g; ++b) {
      int v = 0;
      if (!(rs >> v))
        throw runtime_error("'" + path + "': bad grid labeling row " +
                            std::to_string(a + 1));
      gl.num_points[static_cast<std::size_t>(a * g + b)] = v;
      max_id = std::max(max_id, v);
    }
  }
  gl.cluster_count = max_id;
  gl.empty = (max_id == 0);
  return gl;
}

} // namespace svclust
