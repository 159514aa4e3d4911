#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace subdiff::cli {

/// %.17g, the round-trip precision used in every output file.
std::string format_double(double x);

/// Comma-separated table with a header row; numbers only.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::span<const double> row);
    void add_row(std::initializer_list<double> row) { add_row(std::span<const double>(row.begin(), row.size())); }

    std::size_t rows() const noexcept { return rows_; }
    const std::string& text() const noexcept { return text_; }

    /// Writes text() to `path` (binary mode, LF line ends). Throws IoError.
    void write(const std::string& path) const;

private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_file(const std::string& path, const std::string& content);

}  // namespace subdiff::cli
