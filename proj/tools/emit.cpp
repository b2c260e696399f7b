#include "emit.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <system_error>

namespace ergolab::cli {

namespace {

std::string to_chars_or_throw(double v, std::chars_format fmt, int precision) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt, precision);
    if (ec != std::errc{}) throw std::logic_error("number formatting failed");
    return std::string(buf.data(), end);
}

// Pixel coordinates only need two decimals.
std::string px(double v) { return to_chars_or_throw(v, std::chars_format::fixed, 2); }

std::string escape_xml(std::string_view s) {
    std::string out;
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

constexpr std::array<std::string_view, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                   "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

// Keep SVG files small: at most this many vertices per segment, endpoints kept.
constexpr std::size_t kMaxVertices = 2000;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void pad() {
        if (!(lo <= hi)) {
            lo = -1.0;
            hi = 1.0;
        }
        double span = hi - lo;
        if (span == 0.0) span = std::max(1.0, std::abs(lo));
        lo -= 0.05 * span;
        hi += 0.05 * span;
    }
};

}  // namespace

std::string format_real(double v) { return to_chars_or_throw(v, std::chars_format::general, 17); }

std::string format_count(std::size_t n) { return std::to_string(n); }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) throw std::logic_error("csv row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j) out += ',';
            out += cells[j];
        }
        out += '\n';
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
    return out;
}

std::vector<std::vector<Point2>> split_at_jumps(const std::vector<double>& x,
                                                const std::vector<double>& y, double max_jump) {
    std::vector<std::vector<Point2>> segments;
    std::vector<Point2> current;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (!current.empty() && std::abs(x[i] - current.back()[0]) > max_jump) {
            segments.push_back(std::move(current));
            current.clear();
        }
        current.push_back({x[i], y[i]});
    }
    if (!current.empty()) segments.push_back(std::move(current));
    return segments;
}

std::string render_svg(const SvgPlot& plot) {
    constexpr double width = 640, height = 640;
    constexpr double left = 60, right = 20, top = 40, bottom = 50;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;

    Range xr, yr;
    for (const auto& s : plot.series)
        for (const auto& seg : s.segments)
            for (const auto& p : seg) {
                xr.add(p[0]);
                yr.add(p[1]);
            }
    xr.pad();
    yr.pad();
    auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto sy = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
    out += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape_xml(plot.title) + "</text>\n";
    out += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(plot_w) + "\" height=\"" +
           px(plot_h) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (xr.lo < 0.0 && xr.hi > 0.0)
        out += "<line x1=\"" + px(sx(0)) + "\" y1=\"" + px(top) + "\" x2=\"" + px(sx(0)) + "\" y2=\"" +
               px(top + plot_h) + "\" stroke=\"#bbb\"/>\n";
    if (yr.lo < 0.0 && yr.hi > 0.0)
        out += "<line x1=\"" + px(left) + "\" y1=\"" + px(sy(0)) + "\" x2=\"" + px(left + plot_w) +
               "\" y2=\"" + px(sy(0)) + "\" stroke=\"#bbb\"/>\n";

    // Axis extents as tick labels at the corners.
    auto tick = [](double v) { return to_chars_or_throw(v, std::chars_format::general, 4); };
    out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
    out += "<text x=\"" + px(left) + "\" y=\"" + px(top + plot_h + 16) + "\">" + tick(xr.lo) + "</text>\n";
    out += "<text x=\"" + px(left + plot_w) + "\" y=\"" + px(top + plot_h + 16) +
           "\" text-anchor=\"end\">" + tick(xr.hi) + "</text>\n";
    out += "<text x=\"" + px(left - 6) + "\" y=\"" + px(top + plot_h) + "\" text-anchor=\"end\">" +
           tick(yr.lo) + "</text>\n";
    out += "<text x=\"" + px(left - 6) + "\" y=\"" + px(top + 10) + "\" text-anchor=\"end\">" + tick(yr.hi) +
           "</text>\n";
    out += "<text x=\"" + px(left + plot_w / 2) + "\" y=\"" + px(height - 12) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + escape_xml(plot.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + px(top + plot_h / 2) + "\" text-anchor=\"middle\" font-size=\"14\">" +
           escape_xml(plot.y_label) + "</text>\n";
    out += "</g>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        std::string d;
        for (const auto& seg : s.segments) {
            if (seg.empty()) continue;
            const std::size_t stride = (seg.size() + kMaxVertices - 1) / kMaxVertices;
            for (std::size_t i = 0; i < seg.size(); i += stride) {
                d += (i == 0 ? "M" : " L") + px(sx(seg[i][0])) + "," + px(sy(seg[i][1]));
            }
            if ((seg.size() - 1) % stride != 0)
                d += " L" + px(sx(seg.back()[0])) + "," + px(sy(seg.back()[1]));
            d += ' ';
        }
        out += "<path fill=\"none\" stroke-width=\"1.5\" stroke=\"" + std::string(kPalette[k % kPalette.size()]) +
               "\" d=\"" + d + "\"><title>" + escape_xml(s.label) + "</title></path>\n";
    }

    out += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const double y = top + 14 + 14 * static_cast<double>(k);
        out += "<text x=\"" + px(left + plot_w - 6) + "\" y=\"" + px(y) + "\" text-anchor=\"end\" fill=\"" +
               std::string(kPalette[k % kPalette.size()]) + "\">" + escape_xml(plot.series[k].label) +
               "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            f.close();
            fs::remove(tmp);
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string sha256_hex(std::string_view content) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(content.data(), content.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

}  // namespace ergolab::cli
