#include "subdiff/cli/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "subdiff/error.hpp"

namespace subdiff::cli {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvTable::add_row(std::span<const double> row) {
    if (row.size() != columns_) throw Error("CsvTable: row has " + std::to_string(row.size()) + " columns, expected " + std::to_string(columns_));
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text_ += ',';
        text_ += format_double(row[i]);
    }
    text_ += '\n';
    ++rows_;
}

void CsvTable::write(const std::string& path) const { write_file(path, text_); }

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace subdiff::cli
