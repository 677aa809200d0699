#include "rrgather/hypercube_geometry.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rrgather::hc {

OccMask mask_of(const std::vector<Vertex>& occupied) {
    OccMask m = 0;
    for (Vertex v : occupied) m |= bit_of(hc_mask(v));
    return m;
}

std::vector<Vertex> vertices_of(int dim, OccMask m) {
    std::vector<Vertex> out;
    for (std::uint32_t v = 0; v < (1u << dim); ++v)
        if (m & bit_of(v)) out.push_back(hc_vertex(v));
    return out;
}

int occ_count(OccMask m) { return std::popcount(m); }

int SubHypercube::dim() const { return ambient_dim - std::popcount(frozen_axes); }

OccMask SubHypercube::cells() const {
    OccMask m = 0;
    for (std::uint32_t v = 0; v < (1u << ambient_dim); ++v)
        if (contains(v)) m |= bit_of(v);
    return m;
}

SubHypercube mbh(int dim, OccMask occupied) {
    if (occupied == 0) throw std::invalid_argument("mbh of empty occupancy set");
    std::uint32_t all_ones = ~0u;
    std::uint32_t all_zeros = ~0u;  // complement AND
    for (std::uint32_t v = 0; v < (1u << dim); ++v) {
        if (!(occupied & bit_of(v))) continue;
        all_ones &= v;
        all_zeros &= ~v;
    }
    std::uint32_t space = (1u << dim) - 1;
    SubHypercube b;
    b.ambient_dim = dim;
    b.frozen_axes = (all_ones | all_zeros) & space;
    b.frozen_values = all_ones & b.frozen_axes;
    return b;
}

std::vector<Split> axis_splits(int dim, const SubHypercube& bound) {
    if (bound.dim() < 1) throw std::invalid_argument("axis_splits on a 0-dimensional bound");
    std::vector<Split> out;
    out.reserve(2 * bound.dim());
    for (int axis = 0; axis < dim; ++axis) {
        std::uint32_t abit = 1u << axis;
        if (bound.frozen_axes & abit) continue;
        SubHypercube lo = bound, hi = bound;
        lo.frozen_axes |= abit;
        hi.frozen_axes |= abit;
        hi.frozen_values |= abit;
        OccMask lo_cells = lo.cells(), hi_cells = hi.cells();
        out.push_back(Split{axis, lo, hi, lo_cells, hi_cells});
        out.push_back(Split{axis, hi, lo, hi_cells, lo_cells});
    }
    return out;
}

std::uint32_t HcAutomorphism::apply(std::uint32_t v) const {
    std::uint32_t w = v ^ flip;
    std::uint32_t out = 0;
    for (int i = 0; i < dim; ++i)
        if (w & (1u << i)) out |= 1u << perm[i];
    return out;
}

OccMask HcAutomorphism::apply_mask(OccMask m) const {
    OccMask out = 0;
    for (std::uint32_t v = 0; v < (1u << dim); ++v)
        if (m & bit_of(v)) out |= bit_of(apply(v));
    return out;
}

HcAutomorphism HcAutomorphism::inverse() const {
    HcAutomorphism inv;
    inv.dim = dim;
    for (int i = 0; i < dim; ++i) inv.perm[perm[i]] = static_cast<std::uint8_t>(i);
    std::uint32_t f = 0;
    for (int i = 0; i < dim; ++i)
        if (flip & (1u << i)) f |= 1u << perm[i];
    inv.flip = f;
    return inv;
}

HcAutomorphism HcAutomorphism::compose(const HcAutomorphism& inner) const {
    // (this o inner)(v) = this(inner(v))
    HcAutomorphism c;
    c.dim = dim;
    for (int i = 0; i < dim; ++i) c.perm[i] = perm[inner.perm[i]];
    std::uint32_t f = inner.flip;
    for (int i = 0; i < dim; ++i)
        if (flip & (1u << inner.perm[i])) f ^= 1u << i;
    c.flip = f;
    return c;
}

HcAutomorphism hc_identity(int dim) {
    HcAutomorphism a;
    a.dim = dim;
    for (int i = 0; i < dim; ++i) a.perm[i] = static_cast<std::uint8_t>(i);
    return a;
}

const std::vector<HcAutomorphism>& hc_group(int dim) {
    if (dim < 1 || dim > 5)
        throw std::invalid_argument("group enumeration supports dimensions 1..5");
    // built once up front; safe to share across sweep workers
    static const std::array<std::vector<HcAutomorphism>, 6> groups = [] {
        std::array<std::vector<HcAutomorphism>, 6> all;
        for (int d = 1; d <= 5; ++d) {
            std::vector<HcAutomorphism>& g = all[d];
            std::array<std::uint8_t, 8> p{};
            std::iota(p.begin(), p.begin() + d, std::uint8_t{0});
            do {
                for (std::uint32_t flip = 0; flip < (1u << d); ++flip) {
                    HcAutomorphism a;
                    a.dim = d;
                    a.perm = p;
                    a.flip = flip;
                    g.push_back(a);
                }
            } while (std::next_permutation(p.begin(), p.begin() + d));
        }
        return all;
    }();
    return groups[dim];
}

OccMask hc_canonical(int dim, OccMask occupied) {
    return hc_canonicalize(dim, occupied).key;
}

HcCanonical hc_canonicalize(int dim, OccMask occupied) {
    if (occupied == 0) throw std::invalid_argument("canonical form of empty occupancy set");
    HcCanonical best;
    best.key = ~OccMask{0};
    for (const HcAutomorphism& a : hc_group(dim)) {
        OccMask img = a.apply_mask(occupied);
        if (img < best.key) {
            best.key = img;
            best.to_canonical = a;
        }
    }
    return best;
}

std::vector<Vertex> apply_automorphism(const HcAutomorphism& a, const std::vector<Vertex>& vs) {
    std::vector<Vertex> out;
    out.reserve(vs.size());
    for (Vertex v : vs) out.push_back(a.apply(v));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rrgather::hc
