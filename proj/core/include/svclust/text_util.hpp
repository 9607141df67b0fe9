#pragma once

#include <string>
#include <vector>

namespace svclust {

/// Format a double with 17 significant digits ("%.17g"): round-trip exact
/// and byte-stable, used for every numeric value written to disk.
std::string fmt_g17(double v);

/// Split on a single-character delimiter; keeps empty fields.
std::vector<std::string> split(const std::string& s, char delim);

/// Split on runs of ASCII whitespace; drops empty fields.
std::vector<std::string> split_ws(const std::string& s);

/// Strip leading/trailing ASCII whitespace.
std::string trim(const std::string& s);

/// ASCII lowercase fold.
std::string to_lower(const std::string& s);

/// Lowercase-fold and collapse internal whitespace runs to single spaces.
std::string normalize_term(const std::string& s);

/// Parse a double, rejecting trailing garbage. Returns false on failure.
bool parse_double(const std::string& s, double& out);

/// Parse a (possibly signed) integer, rejecting trailing garbage.
bool parse_long(const std::string& s, long long& out);

} // namespace svclust
