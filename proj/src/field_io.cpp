#include "mixlab/field_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mixlab {

namespace {

std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t");
        out.push_back(line.substr(first, last - first + 1));
    }
    return out;
}

int parse_header(const std::vector<std::string>& lines, const std::string& magic) {
    if (lines.size() < 2 || lines[0] != magic + " v1") {
        throw std::invalid_argument("expected header '" + magic + " v1'");
    }
    std::istringstream in(lines[1]);
    std::string key;
    long long n = 0;
    std::string rest;
    if (!(in >> key >> n) || key != "N" || (in >> rest)) throw std::invalid_argument("expected 'N <size>' line");
    if (n < 1 || n > (1 << 16)) throw std::invalid_argument("grid size out of range");
    return static_cast<int>(n);
}

std::vector<std::uint8_t> parse_rows(const std::vector<std::string>& lines, int n) {
    if (lines.size() != static_cast<std::size_t>(n) + 2) {
        throw std::invalid_argument("expected " + std::to_string(n) + " rows");
    }
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        const std::string& row = lines[j + 2];
        if (row.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("row " + std::to_string(j) + " has wrong length");
        }
        for (int i = 0; i < n; ++i) {
            if (row[i] != '0' && row[i] != '1') throw std::invalid_argument("rows may only contain 0 and 1");
            cells[static_cast<std::size_t>(j) * n + i] = row[i] == '1';
        }
    }
    return cells;
}

std::string format_rows(const std::string& magic, int n, const std::vector<std::uint8_t>& cells) {
    std::string out = magic + " v1\nN " + std::to_string(n) + "\n";
    out.reserve(out.size() + cells.size() + n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) out.push_back(cells[static_cast<std::size_t>(j) * n + i] ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

}  // namespace

std::string format_field(const IndicatorField& field) {
    const auto c = field.cells();
    return format_rows("mixlab-set", field.n(), std::vector<std::uint8_t>(c.begin(), c.end()));
}

IndicatorField parse_field(const std::string& text) {
    const auto lines = content_lines(text);
    const int n = parse_header(lines, "mixlab-set");
    GridSpec spec(n);
    return IndicatorField(spec, parse_rows(lines, n));
}

std::string format_slide(const SlideState& state) {
    return format_rows("mixlab-slide", state.side(), state.cells());
}

SlideState parse_slide(const std::string& text) {
    const auto lines = content_lines(text);
    const int side = parse_header(lines, "mixlab-slide");
    if (side % 2 != 0) throw std::invalid_argument("slide torus side must be even");
    return SlideState(side / 2, parse_rows(lines, side));
}

std::string format_moves(const MoveSequence& seq) {
    std::ostringstream out;
    out << "mixlab-moves v1\nN " << seq.n() << "\n";
    for (const auto& m : seq.moves()) out << "R " << m.ci << ' ' << m.cj << ' ' << m.s << ' ' << m.q << '\n';
    return out.str();
}

MoveSequence parse_moves(const std::string& text) {
    const auto lines = content_lines(text);
    const int n = parse_header(lines, "mixlab-moves");
    GridSpec spec(n);
    MoveSequence seq(n);
    for (std::size_t k = 2; k < lines.size(); ++k) {
        std::istringstream in(lines[k]);
        std::string tag, rest;
        RotationMove m;
        if (!(in >> tag >> m.ci >> m.cj >> m.s >> m.q) || tag != "R" || (in >> rest)) {
            throw std::invalid_argument("malformed move line: " + lines[k]);
        }
        validate_move(spec, m);
        seq.push_back(m);
    }
    return seq;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

IndicatorField read_field(const std::string& path) { return parse_field(read_text(path)); }

void write_field(const std::string& path, const IndicatorField& field) { write_text(path, format_field(field)); }

MoveSequence read_moves(const std::string& path) { return parse_moves(read_text(path)); }

void write_moves(const std::string& path, const MoveSequence& seq) { write_text(path, format_moves(seq)); }

}  // namespace mixlab
