#pragma once

#include <string>
#include <variant>
#include <vector>

namespace cqnc {

/// Rectangular output table with self-describing metadata. Serialization is
/// locale-independent and deterministic: doubles are written in the shortest
/// form that parses back to the same value, metadata keeps insertion order
/// and identical inputs produce byte-identical files.
struct Table {
    using Cell = std::variant<double, std::string>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;  // "# key=value" lines
    std::vector<std::string> warnings;                          // "# warning: ..." lines

    void add_meta(const std::string& key, const std::string& value);
    void add_meta(const std::string& key, double value);
};

/// Shortest round-trip decimal form of a double ("pole"-style sentinels are
/// carried as string cells, not special floats).
std::string format_double(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

/// Writes content to path, throwing std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace cqnc
