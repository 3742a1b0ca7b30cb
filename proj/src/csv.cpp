#include "roughlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "roughlab/error.hpp"

namespace roughlab {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view cell, double& out) {
    cell = trim(cell);
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

}  // namespace

std::size_t CsvTable::find(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return npos;
}

const std::vector<double>& CsvTable::column(std::string_view name) const {
    const std::size_t i = find(name);
    if (i == npos) {
        throw InvalidArgument("CSV has no column named '" + std::string(name) + "'");
    }
    return columns[i];
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
    CsvTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (!have_header) {
            for (auto c : cells) {
                const auto name = trim(c);
                if (name.empty()) throw ParseError(source, line_no, "empty column name in header");
                table.header.emplace_back(name);
            }
            table.columns.resize(table.header.size());
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw ParseError(source, line_no,
                             "expected " + std::to_string(table.header.size()) + " fields, found " +
                                 std::to_string(cells.size()));
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            double v = 0.0;
            if (!parse_double(cells[i], v)) {
                throw ParseError(source, line_no,
                                 "field '" + table.header[i] + "' is not a number: '" +
                                     std::string(trim(cells[i])) + "'");
            }
            table.columns[i].push_back(v);
        }
    }
    if (!have_header) {
        throw ParseError(source, line_no == 0 ? 1 : line_no, "missing header row");
    }
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("error while reading '" + path + "'");
    }
    return parse_csv(buf.str(), path);
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) : width_(header.size()) {
    row_text(header);
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    row_text(cells);
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
    if (cells.size() != width_) {
        throw InvalidArgument("CSV row width does not match the header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

void CsvWriter::save(const std::string& path) const { write_file(path, text_); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        throw IoError("error while writing '" + path + "'");
    }
}

void check_writable(const std::string& path) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path p(path);
    if (fs::is_directory(p, ec)) {
        throw IoError("output path '" + path + "' is a directory");
    }
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    if (!fs::is_directory(dir, ec)) {
        throw IoError("output directory '" + dir.string() + "' does not exist");
    }
}

}  // namespace roughlab
