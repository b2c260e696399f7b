#pragma once

// Text emitters for CLI artifacts. All number formatting goes through
// std::to_chars, so output never depends on the process locale.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ergolab::cli {

/// General format, 17 significant digits.
std::string format_real(double v);
std::string format_count(std::size_t n);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    static std::string cell(double v) { return format_real(v); }
    static std::string cell(std::size_t n) { return format_count(n); }
    static std::string cell(const std::optional<double>& v) { return v ? format_real(*v) : ""; }
    static std::string cell(std::string_view s) { return std::string(s); }

    /// Throws std::logic_error when the row width does not match the header.
    void add_row(std::vector<std::string> cells);

    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

using Point2 = std::array<double, 2>;

struct SvgSeries {
    std::string label;
    std::vector<std::vector<Point2>> segments;  // each segment is one unbroken path
};

struct SvgPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
};

/// Standalone SVG with axis ranges fitted to the data plus a 5% margin.
std::string render_svg(const SvgPlot& plot);

/// Split a polyline wherever consecutive x values jump by more than
/// `max_jump` (used for angles wrapped to (-pi, pi]).
std::vector<std::vector<Point2>> split_at_jumps(const std::vector<double>& x,
                                                const std::vector<double>& y, double max_jump);

/// Write via a sibling temp file and rename, creating parent directories.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view content);

}  // namespace ergolab::cli
