#include "svclust/data_matrix.hpp"

#include "svclust/errors.hpp"
#include "svclust/text_util.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace svclust {

bool DataMatrix::has_tags() const {
    for (int t : class_tags)
        if (t != 0) return true;
    return false;
}

int parse_class_tag(const std::string& row_name, std::string* rest) {
    std::size_t i = 0;
    while (i < row_name.size() && std::isdigit(static_cast<unsigned char>(row_name[i]))) ++i;
    bool tagged = i > 0 && i < row_name.size() &&
                  std::isspace(static_cast<unsigned char>(row_name[i]));
    if (!tagged) {
        if (rest) *rest = row_name;
        return 0;
    }
    int tag = std::atoi(row_name.substr(0, i).c_str());
    if (rest) {
        std::size_t j = i;
        while (j < row_name.size() && std::isspace(static_cast<unsigned char>(row_name[j]))) ++j;
        *rest = row_name.substr(j);
    }
    return tag;
}

namespace {

char delim_of(const std::string& format) {
    if (format == "csv") return ',';
    if (format == "tsv") return '\t';
    throw config_error("unknown table format '" + format + "' (expected csv or tsv)");
}

} // namespace

DataMatrix load_matrix(const std::string& path, const std::string& format) {
    const char delim = delim_of(format);
    std::ifstream in(path);
    if (!in) throw config_error("file not found: " + path);

    std::vector<std::vector<std::string>> raw;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        raw.push_back(split(line, delim));
    }
    if (raw.empty()) throw config_error("empty table: " + path);

    const std::size_t width = raw[0].size();
    for (std::size_t r = 0; r < raw.size(); ++r) {
        if (raw[r].size() != width)
            throw config_error("ragged row " + std::to_string(r + 1) + " in " + path +
                               ": expected " + std::to_string(width) + " cells, got " +
                               std::to_string(raw[r].size()));
    }

    // The first column holds row names when its cells are not numeric.
    double tmp;
    bool named = false;
    for (const auto& row : raw) {
        if (!parse_double(row[0], tmp)) {
            named = true;
            break;
        }
    }
    const std::size_t first_data_col = named ? 1 : 0;
    if (width <= first_data_col) throw config_error("no data columns in " + path);

    // A header is present when any data cell of the first line is non-numeric.
    bool header = false;
    for (std::size_t c = first_data_col; c < width; ++c) {
        if (!parse_double(raw[0][c], tmp)) {
            header = true;
            break;
        }
    }

    DataMatrix m;
    const std::size_t d = width - first_data_col;
    if (header) {
        for (std::size_t c = first_data_col; c < width; ++c)
            m.col_names.push_back(trim(raw[0][c]));
    } else {
        for (std::size_t c = 0; c < d; ++c)
            m.col_names.push_back("attr" + std::to_string(c + 1));
    }

    const std::size_t first_row = header ? 1 : 0;
    const std::size_t n = raw.size() - first_row;
    if (n == 0) throw config_error("no data rows in " + path);

    m.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = raw[first_row + r];
        std::string name = named ? trim(row[0]) : std::to_string(r + 1);
        m.row_names.push_back(name);
        m.class_tags.push_back(parse_class_tag(name));
        for (std::size_t c = 0; c < d; ++c) {
            double v;
            if (!parse_double(row[first_data_col + c], v) || !std::isfinite(v))
                throw config_error("non-numeric cell at row " +
                                   std::to_string(first_row + r + 1) + ", column " +
                                   std::to_string(first_data_col + c + 1) + " in " + path +
                                   ": '" + row[first_data_col + c] + "'");
            m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return m;
}

void save_matrix(const DataMatrix& m, const std::string& path, const std::string& format) {
    const char delim = delim_of(format);
    std::ofstream out(path);
    if (!out) throw runtime_error("cannot write " + path);
    out << "name";
    for (const auto& c : m.col_names) out << delim << c;
    out << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        out << m.row_names[static_cast<std::size_t>(i)];
        for (int j = 0; j < m.cols(); ++j) out << delim << fmt_g17(m.values(i, j));
        out << "\n";
    }
}

} // namespace svclust
