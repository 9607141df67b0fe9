#include "svclust/svg_plot.hpp"

#include "svclust/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace svclust {

namespace {

const char* const kPalette[12] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8", "#ffbb78",
};

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

} // namespace

std::string cluster_color(int id) {
  if (id <= 0) return "#bbbbbb";
  return kPalette[(id - 1) % 12];
}

std::string render_svg(const Projection2D& proj, const ClusterAssignment& assignment,
                       const GridLabeling* grid_labels, const SvcModel* model,
                       const PlotOptions& options) {
  const Eigen::Index n = proj.size();
  if (assignment.class_points.size() != static_cast<std::size_t>(n))
    throw config_error("render_svg: assignment size does not match projection size");

  const double w = options.width, h = options.height, m = options.margin;
  double min_x = proj.min_x, max_x = proj.max_x;
  double min_y = proj.min_y, max_y = proj.max_y;
  // Include the full lattice extent when cells are drawn.
  if (grid_labels && options.draw_grid_cells && !grid_labels->empty) {
    const Grid& g = grid_labels->grid;
    min_x = std::min(min_x, g.origin_x);
    max_x = std::max(max_x, g.x_of(g.g - 1) + g.s1);
    min_y = std::min(min_y, g.origin_y);
    max_y = std::max(max_y, g.y_of(g.g - 1) + g.s2);
  }
  const double span_x = max_x - min_x, span_y = max_y - min_y;
  auto px = [&](double x) { return m + (x - min_x) / span_x * (w - 2 * m); };
  auto py = [&](double y) { return h - m - (y - min_y) / span_y * (h - 2 * m); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << " "
      << options.height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\""
      << options.height << "\" fill=\"#ffffff\"/>\n";

  if (grid_labels && options.draw_grid_cells && !grid_labels->empty) {
    const Grid& g = grid_labels->grid;
    out << "<g fill-opacity=\"0.25\" stroke=\"none\">\n";
    for (int a = 0; a < g.g; ++a) {
      for (int b = 0; b < g.g; ++b) {
        int id = grid_labels->num_points[static_cast<std::size_t>(a * g.g + b)];
        if (id <= 0) continue;
        double x0 = px(g.x_of(a)), x1 = px(g.x_of(a) + g.s1);
        double y0 = py(g.y_of(b) + g.s2), y1 = py(g.y_of(b));
        out << "<rect x=\"" << fmt2(x0) << "\" y=\"" << fmt2(y0) << "\" width=\""
            << fmt2(x1 - x0) << "\" height=\"" << fmt2(y1 - y0) << "\" fill=\""
            << cluster_color(id) << "\"/>\n";
      }
    }
    out << "</g>\n";
    // Thin lattice lines over the shaded band.
    out << "<g stroke=\"#dddddd\" stroke-width=\"0.5\">\n";
    for (int a = 0; a <= g.g; ++a) {
      double x = px(g.origin_x + a * g.s1);
      out << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(py(g.origin_y)) << "\" x2=\""
          << fmt2(x) << "\" y2=\"" << fmt2(py(g.origin_y + g.g * g.s2)) << "\"/>\n";
    }
    for (int b = 0; b <= g.g; ++b) {
      double y = py(g.origin_y + b * g.s2);
      out << "<line x1=\"" << fmt2(px(g.origin_x)) << "\" y1=\"" << fmt2(y) << "\" x2=\""
          << fmt2(px(g.origin_x + g.g * g.s1)) << "\" y2=\"" << fmt2(y) << "\"/>\n";
    }
    out << "</g>\n";
  }

  out << "<g stroke=\"none\">\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    int id = assignment.class_points[static_cast<std::size_t>(i)];
    out << "<circle cx=\"" << fmt2(px(proj.coords(i, 0))) << "\" cy=\""
        << fmt2(py(proj.coords(i, 1))) << "\" r=\"3\" fill=\"" << cluster_color(id)
        << "\"/>\n";
  }
  out << "</g>\n";

  if (model && options.draw_sv_markers) {
    out << "<g fill=\"none\" stroke=\"#000000\" stroke-width=\"1\">\n";
    for (int i : model->sv_indices) {
      if (i < 0 || i >= n) continue;
      out << "<circle cx=\"" << fmt2(px(proj.coords(i, 0))) << "\" cy=\""
          << fmt2(py(proj.coords(i, 1))) << "\" r=\"5.5\"/>\n";
    }
    out << "</g>\n";
    out << "<g fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" "
           "stroke-dasharray=\"2,2\">\n";
    for (int i : model->bsv_indices) {
      if (i < 0 || i >= n) continue;
      out << "<circle cx=\"" << fmt2(px(proj.coords(i, 0))) << "\" cy=\""
          << fmt2(py(proj.coords(i, 1))) << "\" r=\"5.5\"/>\n";
    }
    out << "</g>\n";
  }

  if (!options.title.empty())
    out << "<text x=\"" << options.margin << "\" y=\"" << (options.margin / 2 + 6)
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << escape_xml(options.title)
        << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

void save_svg(const std::string& path, const Projection2D& proj,
              const ClusterAssignment& assignment, const GridLabeling* grid_labels,
              const SvcModel* model, const PlotOptions& options) {
  std::ofstream out(path);
  if (!out) throw runtime_error("cannot open '" + path + "' for writing");
  out << render_svg(proj, assignment, grid_labels, model, options);
  if (!out) throw runtime_error("write failed for '" + path + "'");
}

} // namespace svclust
