#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rrgather {

// A vertex of one of the supported topologies.
//   hypercube : x holds the coordinate bitmask (bit i = coordinate i), y = 0
//   grid      : (x, y) integer lattice point
//   finite    : x holds the node id, y = 0
struct Vertex {
    std::int32_t x = 0;
    std::int32_t y = 0;

    auto operator<=>(const Vertex&) const = default;
};

inline Vertex hc_vertex(std::uint32_t mask) { return Vertex{static_cast<std::int32_t>(mask), 0}; }
inline std::uint32_t hc_mask(Vertex v) { return static_cast<std::uint32_t>(v.x); }

struct VertexHash {
    std::size_t operator()(const Vertex& v) const {
        std::uint64_t k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x)) << 32) |
                          static_cast<std::uint32_t>(v.y);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
    }
};

// Order-preserving hash for robot position vectors (recurrence keys).
struct PositionsHash {
    std::size_t operator()(const std::vector<Vertex>& ps) const {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ULL;
        };
        for (const Vertex& p : ps) {
            mix(static_cast<std::uint32_t>(p.x));
            mix(static_cast<std::uint32_t>(p.y));
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace rrgather
