#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace rtvol {

// round-trip float formatting (17 significant digits)
inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_pretty(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "");
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "");
            os << "\n";
        }
        return os.str();
    }

    std::string to_pretty() const {
        std::vector<std::size_t> widths(header.size(), 0);
        auto upd = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i)
                widths[i] = std::max(widths[i], row[i].size());
        };
        upd(header);
        for (const auto& row : rows) upd(row);
        std::ostringstream os;
        auto emit = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << row[i] << std::string(widths[i] - row[i].size() + 2, ' ');
            }
            os << "\n";
        };
        emit(header);
        for (const auto& row : rows) emit(row);
        return os.str();
    }

    nlohmann::json to_json_rows() const {
        nlohmann::json rows_json = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json obj;
            for (std::size_t i = 0; i < row.size() && i < header.size(); ++i) {
                // numbers stay numbers where they parse
                try {
                    std::size_t pos = 0;
                    double d = std::stod(row[i], &pos);
                    if (pos == row[i].size()) {
                        obj[header[i]] = d;
                        continue;
                    }
                } catch (...) {}
                obj[header[i]] = row[i];
            }
            rows_json.push_back(obj);
        }
        return rows_json;
    }
};

inline void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);  // LF endings everywhere
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

}  // namespace rtvol
