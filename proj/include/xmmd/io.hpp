#pragma once

#include "xmmd/common.hpp"

#include <fstream>
#include <istream>
#include <string>
#include <vector>

namespace xmmd {

/// Unreadable or malformed data file.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Observations as rows, coordinates as comma-separated columns. Blank
/// lines and lines starting with '#' are skipped; with has_header the first
/// remaining line is skipped too. `source` names the input in diagnostics.
inline SampleMatrix read_sample_csv(std::istream& is, bool has_header, const std::string& source = "input") {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = has_header;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::vector<double> row;
        std::size_t pos = 0;
        for (;;) {
            const auto comma = line.find(',', pos);
            const std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const char* begin = cell.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            while (end && (*end == ' ' || *end == '\t')) ++end;
            if (end == begin || *end != '\0' || !std::isfinite(v))
                throw DataError(source + ": line " + std::to_string(line_no) + ": bad value '" + cell + "'");
            row.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw DataError(source + ": line " + std::to_string(line_no) + ": expected " +
                            std::to_string(rows.front().size()) + " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(source + ": no data rows");
    RowMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return SampleMatrix(std::move(m));
}

inline SampleMatrix read_sample_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw DataError(path + ": cannot open file");
    return read_sample_csv(in, has_header, path);
}

}  // namespace xmmd
