#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rrgather/topology.hpp"
#include "rrgather/vertex.hpp"

// Bounding sub-hypercubes, axis splits and the hyperoctahedral group
// (coordinate permutations composed with bit flips) for Q_d, d <= 6.
// Occupancy sets are 2^d-bit masks: bit v set <=> vertex v occupied.

namespace rrgather::hc {

using OccMask = std::uint64_t;

inline OccMask bit_of(std::uint32_t v) { return OccMask{1} << v; }

OccMask mask_of(const std::vector<Vertex>& occupied);
std::vector<Vertex> vertices_of(int dim, OccMask m);
int occ_count(OccMask m);

// Sub-hypercube given by frozen coordinates: contains v iff
// (v & frozen_axes) == frozen_values. dim() counts the free axes.
struct SubHypercube {
    int ambient_dim = 0;
    std::uint32_t frozen_axes = 0;    // bit i set = coordinate i frozen
    std::uint32_t frozen_values = 0;  // values on frozen coordinates

    int dim() const;
    bool contains(std::uint32_t v) const {
        return (v & frozen_axes) == frozen_values;
    }
    OccMask cells() const;  // occupancy mask of all member vertices
    std::uint64_t size() const { return std::uint64_t{1} << dim(); }

    bool operator==(const SubHypercube&) const = default;
};

// Minimum bounding hypercube of a nonempty occupancy mask.
SubHypercube mbh(int dim, OccMask occupied);

// One ordered half/half split of a bounding cube along a free axis.
struct Split {
    int axis = 0;          // coordinate the split runs across
    SubHypercube s;        // source side
    SubHypercube d;        // destination side
    OccMask s_cells = 0;
    OccMask d_cells = 0;
};

// All 2*b ordered (S, D) splits of `bound`, axis ascending, side 0 first.
std::vector<Split> axis_splits(int dim, const SubHypercube& bound);

// Element of the hyperoctahedral group: v |-> permute(v XOR flip), i.e. the
// image has bit perm[i] equal to bit i of (v ^ flip).
struct HcAutomorphism {
    std::array<std::uint8_t, 8> perm{};
    std::uint32_t flip = 0;
    int dim = 0;

    std::uint32_t apply(std::uint32_t v) const;
    Vertex apply(Vertex v) const { return hc_vertex(apply(hc_mask(v))); }
    OccMask apply_mask(OccMask m) const;
    HcAutomorphism inverse() const;
    HcAutomorphism compose(const HcAutomorphism& inner) const;  // this after inner
};

HcAutomorphism hc_identity(int dim);

// The full group for d <= 5 (d! * 2^d elements), deterministic order.
const std::vector<HcAutomorphism>& hc_group(int dim);

// Canonical occupancy key: minimum image of `occupied` over the full group.
// Two masks get the same key iff some automorphism maps one onto the other.
OccMask hc_canonical(int dim, OccMask occupied);

// Canonical key plus one group element g with g(occupied) == key.
struct HcCanonical {
    OccMask key = 0;
    HcAutomorphism to_canonical;
};
HcCanonical hc_canonicalize(int dim, OccMask occupied);

std::vector<Vertex> apply_automorphism(const HcAutomorphism& a, const std::vector<Vertex>& vs);

}  // namespace rrgather::hc
