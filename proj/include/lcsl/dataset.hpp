#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "util.hpp"

namespace lcsl {

// Discrete dataset, stored column-major. columns[v][r] is the category code of
// variable v in row r; codes lie in [0, arities[v]).
struct Dataset {
    std::vector<std::string> names;
    std::vector<int> arities;
    std::vector<std::vector<int>> columns;
    int n = 0;

    int num_vars() const { return static_cast<int>(names.size()); }

    const std::vector<int>& col(int v) const { return columns[v]; }

    int var_index(const std::string& name) const {
        for (int i = 0; i < num_vars(); ++i)
            if (names[i] == name) return i;
        return -1;
    }
};

namespace detail {

inline void split_csv_line(const std::string& line, std::vector<std::string>& out) {
    out.clear();
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    out.push_back(cell);
}

// Returns true and sets `value` if the cell is a plain digit string.
// Throws if a digit string overflows int.
inline bool parse_code(const std::string& cell, int row, int col, int& value) {
    if (cell.empty())
        throw std::runtime_error("csv: cannot parse empty cell at row " + std::to_string(row) +
                                 ", column " + std::to_string(col));
    for (char c : cell)
        if (c < '0' || c > '9') return false;
    long long v = 0;
    for (char c : cell) {
        v = v * 10 + (c - '0');
        if (v > 0x7fffffff)
            throw std::runtime_error("csv: cannot parse cell at row " + std::to_string(row) +
                                     ", column " + std::to_string(col) + " (value too large)");
    }
    value = static_cast<int>(v);
    return true;
}

}  // namespace detail

// Reads a CSV table with a header row. Body cells must be non-negative
// integers or category strings. A column made entirely of integer cells keeps
// those values as its codes; any other column is coded by first appearance,
// top to bottom. Row indices in error messages count the header as row 0.
inline Dataset load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    Dataset d;
    std::vector<std::string> cells;
    detail::split_csv_line(line, cells);
    d.names = cells;
    const int p = d.num_vars();
    std::vector<std::vector<std::string>> raw(p);
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        detail::split_csv_line(line, cells);
        if (static_cast<int>(cells.size()) != p)
            throw std::runtime_error("csv: row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(p));
        for (int c = 0; c < p; ++c) raw[c].push_back(cells[c]);
    }
    d.n = static_cast<int>(raw.empty() ? 0 : raw[0].size());
    if (d.n == 0) throw std::runtime_error("csv: no data rows");

    d.columns.resize(p);
    d.arities.resize(p);
    for (int c = 0; c < p; ++c) {
        auto& colv = d.columns[c];
        colv.resize(d.n);
        bool numeric = true;
        for (int r = 0; r < d.n; ++r) {
            int value;
            if (!detail::parse_code(raw[c][r], r + 1, c, value)) numeric = false;
        }
        if (numeric)
            for (int r = 0; r < d.n; ++r) detail::parse_code(raw[c][r], r + 1, c, colv[r]);
        if (!numeric) {
            std::unordered_map<std::string, int> codes;
            for (int r = 0; r < d.n; ++r) {
                auto [it, inserted] = codes.try_emplace(raw[c][r], static_cast<int>(codes.size()));
                colv[r] = it->second;
            }
        }
        int max_code = 0;
        for (int v : colv)
            if (v > max_code) max_code = v;
        d.arities[c] = max_code + 1;
    }
    return d;
}

inline Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_csv(in);
}

// Writes integer codes; loading the output reproduces the Dataset exactly.
inline void save_csv(const Dataset& d, std::ostream& out) {
    for (int c = 0; c < d.num_vars(); ++c) {
        if (c) out << ',';
        out << d.names[c];
    }
    out << '\n';
    for (int r = 0; r < d.n; ++r) {
        for (int c = 0; c < d.num_vars(); ++c) {
            if (c) out << ',';
            out << d.columns[c][r];
        }
        out << '\n';
    }
}

inline void save_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    save_csv(d, out);
}

}  // namespace lcsl
