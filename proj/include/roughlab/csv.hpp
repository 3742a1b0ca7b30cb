#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace roughlab {

// Numeric CSV with a mandatory header row; no quoting, '.' decimal, '\n' line ends.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
    // Index of `name` in the header, or npos.
    std::size_t find(std::string_view name) const noexcept;
    const std::vector<double>& column(std::string_view name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Throws IoError when unreadable and ParseError (with a 1-based line number) on bad rows.
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(std::string_view text, const std::string& source = "<memory>");

// Shortest round-trip is not required: always 17 significant digits.
std::string format_number(double value);

// Accumulates a whole table in memory; nothing touches the disk until save().
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    // Mixed text and numeric cells, already formatted.
    void row_text(const std::vector<std::string>& cells);
    const std::string& text() const noexcept { return text_; }
    void save(const std::string& path) const;

private:
    std::size_t width_;
    std::string text_;
};

// Writes `content` to `path`, replacing it; throws IoError on failure.
void write_file(const std::string& path, const std::string& content);

// Throws IoError unless `path` can be created or overwritten.
void check_writable(const std::string& path);

}  // namespace roughlab
