#pragma once

// Command-line surface: subcommand dispatch, result tables and their CSV / JSON emission.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace gkcs::cli {

enum class Format { Csv, Json };

/// One table cell. Doubles print with 17 significant digits.
using Cell = std::variant<std::string, long long, double, bool>;

/// Named parameters plus result rows sharing one column list.
struct Report {
    std::vector<std::pair<std::string, Cell>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// RFC-4180 CSV with a header row.
std::string to_csv(const Report& r);
/// {"schema_version": "1", "params": {...}, "results": [{column: value, ...}, ...]}.
std::string to_json(const Report& r);

/// Writes to `path`, or to `out` when the path is empty. Throws std::runtime_error
/// naming the path when the file cannot be written.
void emit(const Report& r, Format format, const std::string& path, std::ostream& out);

/// Exit codes: 0 success, 1 verification failure or numerical error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gkcs::cli
