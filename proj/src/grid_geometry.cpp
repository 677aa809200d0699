#include "rrgather/grid_geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace rrgather::grid {

namespace {

// Row-major 2x2 integer matrices of the dihedral group of the square.
constexpr int kD8[8][4] = {
    {1, 0, 0, 1},    // identity
    {0, -1, 1, 0},   // rot 90
    {-1, 0, 0, -1},  // rot 180
    {0, 1, -1, 0},   // rot 270
    {1, 0, 0, -1},   // reflect across x axis
    {-1, 0, 0, 1},   // reflect across y axis
    {0, 1, 1, 0},    // transpose
    {0, -1, -1, 0},  // anti-transpose
};

constexpr int kD8Inverse[8] = {0, 3, 2, 1, 4, 5, 6, 7};

}  // namespace

Rectangle mbr(const std::vector<Vertex>& occupied) {
    if (occupied.empty()) throw std::invalid_argument("mbr of empty occupancy set");
    Rectangle r{occupied.front(), occupied.front()};
    for (Vertex v : occupied) {
        r.lo.x = std::min(r.lo.x, v.x);
        r.lo.y = std::min(r.lo.y, v.y);
        r.hi.x = std::max(r.hi.x, v.x);
        r.hi.y = std::max(r.hi.y, v.y);
    }
    return r;
}

Vertex d8_apply(int d8, Vertex v) {
    const int* m = kD8[d8];
    return Vertex{m[0] * v.x + m[1] * v.y, m[2] * v.x + m[3] * v.y};
}

int d8_inverse(int d8) { return kD8Inverse[d8]; }

Vertex GridIsometry::apply(Vertex v) const {
    Vertex w = d8_apply(d8, v);
    return Vertex{w.x + t.x, w.y + t.y};
}

std::vector<Vertex> GridIsometry::apply(const std::vector<Vertex>& vs) const {
    std::vector<Vertex> out;
    out.reserve(vs.size());
    for (Vertex v : vs) out.push_back(apply(v));
    std::sort(out.begin(), out.end());
    return out;
}

GridIsometry GridIsometry::inverse() const {
    GridIsometry inv;
    inv.d8 = d8_inverse(d8);
    Vertex mt = d8_apply(inv.d8, t);
    inv.t = Vertex{-mt.x, -mt.y};
    return inv;
}

std::vector<Vertex> pattern_vertices(const PatternKey& key) {
    std::vector<Vertex> out;
    for (int y = 0; y < key.height; ++y)
        for (int x = 0; x < key.width; ++x)
            if (key.mask & (std::uint64_t{1} << (x + key.width * y))) out.push_back(Vertex{x, y});
    return out;
}

GridCanonical grid_canonicalize(const std::vector<Vertex>& occupied) {
    if (occupied.empty()) throw std::invalid_argument("canonical form of empty pattern");
    Rectangle box = mbr(occupied);
    if (static_cast<long long>(box.rows()) * box.cols() > 64)
        throw std::invalid_argument("pattern bounding box exceeds the 64-cell canonicalization cap");

    GridCanonical best;
    bool first = true;
    for (int d8 = 0; d8 < 8; ++d8) {
        std::vector<Vertex> img;
        img.reserve(occupied.size());
        for (Vertex v : occupied) img.push_back(d8_apply(d8, v));
        Rectangle b = mbr(img);
        PatternKey key;
        key.width = b.cols();
        key.height = b.rows();
        for (Vertex v : img)
            key.mask |= std::uint64_t{1}
                        << ((v.x - b.lo.x) + key.width * (v.y - b.lo.y));
        if (first || key < best.key) {
            first = false;
            best.key = key;
            best.to_canonical = GridIsometry{d8, Vertex{-b.lo.x, -b.lo.y}};
        }
    }
    return best;
}

PatternKey grid_canonical(const std::vector<Vertex>& occupied) {
    return grid_canonicalize(occupied).key;
}

}  // namespace rrgather::grid
