#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace svclust {

/// N x d numeric attribute matrix with row names and optional class tags.
///
/// A class tag is an integer prefix of the row name separated by whitespace:
/// the row name "4   coat protein" carries tag 4 and display name
/// "coat protein". Rows without a leading integer get tag 0 (untagged).
struct DataMatrix {
    Eigen::MatrixXd values;              ///< N x d, all entries finite
    std::vector<std::string> row_names;  ///< size N (may embed a tag prefix)
    std::vector<std::string> col_names;  ///< size d
    std::vector<int> class_tags;         ///< size N; 0 = untagged

    int rows() const { return static_cast<int>(values.rows()); }
    int cols() const { return static_cast<int>(values.cols()); }

    /// True if at least one row carries a class tag.
    bool has_tags() const;
};

/// Parse the class tag out of a row name. Returns the tag (0 if none) and,
/// when `rest` is non-null, stores the name with the tag prefix removed.
int parse_class_tag(const std::string& row_name, std::string* rest = nullptr);

/// Load a delimited numeric table. First column is the row name when it is
/// not numeric; a header row is detected by non-numeric cells in the data
/// columns. format: "csv" (comma) or "tsv" (tab).
/// Throws config_error on missing files, ragged rows, or non-numeric cells
/// (with row/column location).
DataMatrix load_matrix(const std::string& path, const std::string& format = "csv");

/// Write a DataMatrix in the same layout load_matrix reads (header + row
/// names), values formatted with fmt_g17 so a round trip is bit-exact.
void save_matrix(const DataMatrix& m, const std::string& path,
                 const std::string& format = "csv");

} // namespace svclust
