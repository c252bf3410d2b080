#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mixlab {

/// Shortest round-trip-safe text for a double (17 significant digits).
std::string format_number(double v);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_escape(const std::string& field);

using CsvField = std::variant<std::string, double, long long>;

/// CSV document: a leading "# key=value ..." config comment, one header
/// line, then rows.
class CsvTable {
public:
    CsvTable(std::string config_comment, std::vector<std::string> header);
    void add_row(std::vector<CsvField> row);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;
    void write(const std::string& path) const;

private:
    std::string comment_;
    std::vector<std::string> header_;
    std::vector<std::vector<CsvField>> rows_;
};

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Standalone SVG line plot with markers; identical input gives identical
/// bytes.
std::string render_svg(const PlotSpec& plot);
void emit_svg(const PlotSpec& plot, const std::string& path);

}  // namespace mixlab
