#include "physnet/network_io.hpp"

#include "csv_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace physnet {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}


SpatialNetwork load_network(const std::string& nodes_path, const std::string& edges_path) {
    std::ifstream nodes_file(nodes_path);
    if (!nodes_file) throw IoError("cannot open nodes file " + nodes_path);
    std::ifstream edges_file(edges_path);
    if (!edges_file) throw IoError("cannot open edges file " + edges_path);

    SpatialNetwork net;
    std::string line;
    long lineno = 0;

    if (!std::getline(nodes_file, line))
        throw ParseError(nodes_path, 1, "missing header");
    ++lineno;
    if (csv::split_line(line) != std::vector<std::string>{"id", "x", "y", "kind"})
        throw ParseError(nodes_path, 1, "expected header id,x,y,kind");
    while (std::getline(nodes_file, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = csv::split_line(line);
        if (f.size() != 4) throw ParseError(nodes_path, lineno, "expected 4 fields");
        const int id = csv::parse_int(f[0], nodes_path, lineno, "node id");
        const double x = csv::parse_double(f[1], nodes_path, lineno, "x coordinate");
        const double y = csv::parse_double(f[2], nodes_path, lineno, "y coordinate");
        try {
            net.add_node(id, Point{x, y}, node_kind_from_string(f[3]));
        } catch (const ConfigError& e) {
            throw ParseError(nodes_path, lineno, e.what());
        }
    }

    lineno = 0;
    if (!std::getline(edges_file, line))
        throw ParseError(edges_path, 1, "missing header");
    ++lineno;
    if (csv::split_line(line) != std::vector<std::string>{"src", "dst", "length", "impedance"})
        throw ParseError(edges_path, 1, "expected header src,dst,length,impedance");
    while (std::getline(edges_file, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = csv::split_line(line);
        if (f.size() != 4) throw ParseError(edges_path, lineno, "expected 4 fields");
        const int src = csv::parse_int(f[0], edges_path, lineno, "src node id");
        const int dst = csv::parse_int(f[1], edges_path, lineno, "dst node id");
        std::optional<double> length;
        if (!f[2].empty()) {
            length = csv::parse_double(f[2], edges_path, lineno, "length");
            if (!(*length > 0.0))
                throw ParseError(edges_path, lineno, "non-positive length '" + f[2] + "'");
        }
        const double impedance =
            f[3].empty() ? 1.0 : csv::parse_double(f[3], edges_path, lineno, "impedance");
        try {
            net.add_edge(src, dst, length, 0.0, impedance);
        } catch (const ConfigError& e) {
            throw ParseError(edges_path, lineno, e.what());
        }
    }
    return net;
}

void save_network(const SpatialNetwork& net, const std::string& nodes_path,
                  const std::string& edges_path) {
    std::ofstream nodes_file(nodes_path, std::ios::binary);
    if (!nodes_file) throw IoError("cannot write nodes file " + nodes_path);
    nodes_file << "id,x,y,kind\n";
    std::vector<const Node*> ordered;
    ordered.reserve(net.node_count());
    for (const auto& n : net.nodes()) ordered.push_back(&n);
    std::sort(ordered.begin(), ordered.end(),
              [](const Node* a, const Node* b) { return a->id < b->id; });
    for (const Node* n : ordered)
        nodes_file << n->id << ',' << format_double(n->pos.x) << ',' << format_double(n->pos.y)
                   << ',' << to_string(n->kind) << '\n';
    if (!nodes_file.flush()) throw IoError("failed writing nodes file " + nodes_path);

    std::ofstream edges_file(edges_path, std::ios::binary);
    if (!edges_file) throw IoError("cannot write edges file " + edges_path);
    edges_file << "src,dst,length,impedance\n";
    for (const auto& e : net.edges()) {
        // Values the loader can reconstruct are left empty: this keeps the
        // round-trip exact even where the 12-digit text form could not
        // (grid diagonals, for instance).
        const bool derived_length =
            e.length == distance(net.node(e.src).pos, net.node(e.dst).pos);
        edges_file << e.src << ',' << e.dst << ','
                   << (derived_length ? std::string() : format_double(e.length)) << ','
                   << (e.impedance == 1.0 ? std::string() : format_double(e.impedance))
                   << '\n';
    }
    if (!edges_file.flush()) throw IoError("failed writing edges file " + edges_path);
}

}  // namespace physnet
