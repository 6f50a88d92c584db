#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cclique/graph.hpp"

namespace cclique {

// Edge-list text format: one "u v" pair per line, whitespace separated,
// '#'-prefixed comment lines and blank lines ignored.
inline Graph read_edge_list(std::istream& in, BitsetMirror mirror = BitsetMirror::Auto,
                            ParseStats* stats = nullptr) {
    std::vector<std::pair<int, int>> edges;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) throw parse_error("malformed edge line", lineno);
        std::string rest;
        if (ls >> rest) throw parse_error("trailing token '" + rest + "' on edge line", lineno);
        if (u < 0 || v < 0) throw parse_error("negative vertex id", lineno);
        if (u > 100000000 || v > 100000000) throw parse_error("vertex id too large", lineno);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return build_graph(edges, std::nullopt, mirror, stats);
}

inline Graph read_edge_list_file(const std::string& path, BitsetMirror mirror = BitsetMirror::Auto,
                                 ParseStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in, mirror, stats);
}

// Canonical writer: edges sorted lexicographically with u < v.
inline void write_edge_list(std::ostream& out, const Graph& g) {
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string edge_list_string(const Graph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

} // namespace cclique
