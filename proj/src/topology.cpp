#include "rrgather/topology.hpp"

#include <bit>
#include <cstdlib>

namespace rrgather {

Hypercube::Hypercube(int dim) : dim_(dim) {
    if (dim < 1 || dim > 6)
        throw std::invalid_argument("hypercube dimension must be in [1,6], got " +
                                    std::to_string(dim));
}

bool Hypercube::is_vertex(Vertex v) const {
    return v.y == 0 && v.x >= 0 && hc_mask(v) < vertex_count();
}

std::vector<Vertex> Hypercube::neighbors(Vertex v) const {
    if (!is_vertex(v)) throw std::invalid_argument("malformed hypercube vertex");
    std::vector<Vertex> out;
    out.reserve(dim_);
    for (int i = 0; i < dim_; ++i) out.push_back(hc_vertex(hc_mask(v) ^ (1u << i)));
    return out;
}

int Hypercube::distance(Vertex u, Vertex v) const {
    if (!is_vertex(u) || !is_vertex(v)) throw std::invalid_argument("malformed hypercube vertex");
    return std::popcount(hc_mask(u) ^ hc_mask(v));
}

std::string Hypercube::format(Vertex v) const {
    std::string s(dim_, '0');
    for (int i = 0; i < dim_; ++i)
        if (hc_mask(v) & (1u << i)) s[dim_ - 1 - i] = '1';
    return s;
}

Vertex Hypercube::parse(const std::string& s) const {
    if (static_cast<int>(s.size()) != dim_) throw std::invalid_argument("bad vertex string: " + s);
    std::uint32_t m = 0;
    for (int j = 0; j < dim_; ++j) {
        char c = s[j];
        if (c != '0' && c != '1') throw std::invalid_argument("bad vertex string: " + s);
        if (c == '1') m |= 1u << (dim_ - 1 - j);
    }
    return hc_vertex(m);
}

std::vector<Vertex> SquareGrid::neighbors(Vertex v) const {
    return {Vertex{v.x + 1, v.y}, Vertex{v.x - 1, v.y}, Vertex{v.x, v.y + 1},
            Vertex{v.x, v.y - 1}};
}

int SquareGrid::distance(Vertex u, Vertex v) const {
    return std::abs(u.x - v.x) + std::abs(u.y - v.y);
}

std::string SquareGrid::format(Vertex v) const {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

Vertex SquareGrid::parse(const std::string& s) const {
    if (s.size() < 5 || s.front() != '(' || s.back() != ')')
        throw std::invalid_argument("bad vertex string: " + s);
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad vertex string: " + s);
    return Vertex{std::stoi(s.substr(1, comma - 1)),
                  std::stoi(s.substr(comma + 1, s.size() - comma - 2))};
}

const char* to_string(TopologyKind k) {
    switch (k) {
        case TopologyKind::hypercube: return "hypercube";
        case TopologyKind::square_grid: return "grid";
        case TopologyKind::finite_graph: return "finite";
    }
    return "?";
}

}  // namespace rrgather
