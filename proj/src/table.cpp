#include "table.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace cqnc {

void Table::add_meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
}

void Table::add_meta(const std::string& key, double value) {
    metadata.emplace_back(key, format_double(value));
}

std::string format_double(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

std::string to_csv(const Table& t) {
    std::string out;
    for (const auto& [key, value] : t.metadata) {
        out += "# ";
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    for (const auto& w : t.warnings) {
        out += "# warning: ";
        out += w;
        out += '\n';
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const double* d = std::get_if<double>(&row[i]))
                out += format_double(*d);
            else
                out += std::get<std::string>(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : t.metadata) meta[key] = value;
    j["metadata"] = std::move(meta);
    j["warnings"] = t.warnings;
    j["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (const double* d = std::get_if<double>(&cell))
                r.push_back(*d);
            else
                r.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cqnc
