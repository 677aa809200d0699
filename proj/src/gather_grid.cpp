#include "rrgather/gather_grid.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace rrgather::st {

using grid::GridCanonical;
using grid::GridIsometry;
using grid::PatternKey;
using grid::Rectangle;

const char* to_string(GTask t) {
    switch (t) {
        case GTask::t1: return "T1";
        case GTask::t2: return "T2";
        case GTask::t3: return "T3";
        case GTask::t4: return "T4";
    }
    return "?";
}

const char* to_string(USTKind k) {
    switch (k) {
        case USTKind::none: return "none";
        case USTKind::one_by_two: return "oneByTwo";
        case USTKind::two_by_two_three: return "twoByTwoThree";
    }
    return "?";
}

USTWitness ust_witness(const std::vector<Vertex>& occupied) {
    if (occupied.empty()) return USTWitness{};
    Rectangle box = grid::mbr(occupied);
    int a = box.long_side(), b = box.short_side();
    int occ = static_cast<int>(occupied.size());
    if (a == 2 && b == 1 && occ == 2) return USTWitness{USTKind::one_by_two};
    if (a == 2 && b == 2 && occ == 3) return USTWitness{USTKind::two_by_two_three};
    return USTWitness{};
}

namespace {

int occupied_corners(const std::vector<Vertex>& occupied, const Rectangle& box) {
    int n = 0;
    auto is_occ = [&](Vertex v) {
        return std::binary_search(occupied.begin(), occupied.end(), v);
    };
    std::set<Vertex> distinct;
    for (Vertex c : box.corners()) distinct.insert(c);
    for (Vertex c : distinct) n += is_occ(c) ? 1 : 0;
    return n;
}

int distinct_corner_count(const Rectangle& box) {
    std::set<Vertex> distinct;
    for (Vertex c : box.corners()) distinct.insert(c);
    return static_cast<int>(distinct.size());
}

}  // namespace

GClassification classify_st(const std::vector<Vertex>& occupied) {
    if (occupied.empty()) throw std::invalid_argument("classify_st on empty configuration");
    GClassification cls;
    cls.box = grid::mbr(occupied);
    const int a = cls.box.long_side();
    const int b = cls.box.short_side();
    const int occ = static_cast<int>(occupied.size());

    if (a == 1 && b == 1) {
        cls.task = GTask::t4;  // final configuration; the move is nil
        return cls;
    }
    if (b == 1) {
        cls.task = a == 2 ? GTask::t4 : GTask::t1;
        return cls;
    }
    if (a == 2 && b == 2) {
        cls.task = occ == 4 ? GTask::t1 : GTask::t4;
        return cls;
    }
    // both sides >= 2, long side >= 3
    if (occupied_corners(occupied, cls.box) == distinct_corner_count(cls.box)) {
        cls.task = GTask::t1;
        return cls;
    }
    cls.task = (a == 3 && b == 2) ? GTask::t3 : GTask::t2;
    return cls;
}

// ---------------------------------------------------------------------------
// 3x2 move table synthesis.
// ---------------------------------------------------------------------------

namespace {

std::vector<Vertex> window_cells(int w, int h) {
    std::vector<Vertex> out;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.push_back(Vertex{x, y});
    return out;
}

std::vector<Vertex> pattern_of_mask(std::uint64_t mask, int w, int h) {
    std::vector<Vertex> out;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (mask & (std::uint64_t{1} << (x + w * y))) out.push_back(Vertex{x, y});
    std::sort(out.begin(), out.end());
    return out;
}

bool is_t3_pattern(const std::vector<Vertex>& pat) {
    Rectangle box = grid::mbr(pat);
    if (!(box.long_side() == 3 && box.short_side() == 2)) return false;
    return occupied_corners(pat, box) < 4;
}

bool is_diagonal_22(const std::vector<Vertex>& pat) {
    if (pat.size() != 2) return false;
    Rectangle box = grid::mbr(pat);
    return box.long_side() == 2 && box.short_side() == 2;
}

// The four window symmetries of the anchored 2x3 representative.
std::vector<GridIsometry> window_symmetries(const std::vector<Vertex>& pat) {
    std::vector<GridIsometry> out;
    std::vector<Vertex> sorted = pat;
    std::sort(sorted.begin(), sorted.end());
    const GridIsometry candidates[4] = {
        GridIsometry{0, Vertex{0, 0}},  // identity
        GridIsometry{5, Vertex{1, 0}},  // mirror x within width-2 window
        GridIsometry{4, Vertex{0, 2}},  // mirror y within height-3 window
        GridIsometry{2, Vertex{1, 2}},  // 180 degrees
    };
    for (const GridIsometry& g : candidates)
        if (g.apply(sorted) == sorted) out.push_back(g);
    return out;
}

}  // namespace

std::vector<Vertex> t3_offer(const Grid32Table& table, const std::vector<Vertex>& occupied,
                             Vertex at) {
    GridCanonical can = grid::grid_canonicalize(occupied);
    auto it = table.entries.find(can.key);
    if (it == table.entries.end())
        throw std::logic_error("3x2 move table has no entry for a reachable class");
    GridIsometry inv = can.to_canonical.inverse();
    std::vector<Vertex> dests;
    for (const auto& [src, dst] : it->second.pairs) {
        if (inv.apply(src) == at) dests.push_back(inv.apply(dst));
    }
    std::sort(dests.begin(), dests.end());
    dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
    return dests;
}

Grid32Table synthesize_32_table() {
    const int w = 2, h = 3;
    const std::vector<Vertex> cells = window_cells(w, h);

    std::set<PatternKey> keys;
    for (std::uint64_t mask = 1; mask < (1u << 6); ++mask) {
        std::vector<Vertex> pat = pattern_of_mask(mask, w, h);
        if (pat.size() < 2 || !is_t3_pattern(pat)) continue;
        keys.insert(grid::grid_canonical(pat));
    }

    struct Candidate {
        std::vector<std::pair<Vertex, Vertex>> pairs;
        PatternKey solid_key;
        PatternKey dashed_key;
        bool solid_terminal = false;
        bool dst_occupied = false;
    };
    struct ClassEntry {
        PatternKey rep;
        std::vector<Vertex> pat;
        std::vector<Candidate> candidates;
    };

    std::vector<ClassEntry> classes;
    for (const PatternKey& rep : keys) {
        ClassEntry ce;
        ce.rep = rep;
        ce.pat = grid::pattern_vertices(rep);
        std::sort(ce.pat.begin(), ce.pat.end());
        std::vector<GridIsometry> stab = window_symmetries(ce.pat);

        auto occupied_at = [&](Vertex v) {
            return std::binary_search(ce.pat.begin(), ce.pat.end(), v);
        };
        auto inside = [&](Vertex v) { return v.x >= 0 && v.x < w && v.y >= 0 && v.y < h; };

        std::set<std::vector<std::pair<Vertex, Vertex>>> seen;
        for (Vertex src : ce.pat) {
            const Vertex steps[4] = {{src.x + 1, src.y}, {src.x - 1, src.y},
                                     {src.x, src.y + 1}, {src.x, src.y - 1}};
            for (Vertex dst : steps) {
                if (!inside(dst)) continue;  // the 3x2 task never grows the mbr
                std::set<std::pair<Vertex, Vertex>> orbit_set;
                for (const GridIsometry& g : stab)
                    orbit_set.insert({g.apply(src), g.apply(dst)});
                std::vector<std::pair<Vertex, Vertex>> orbit(orbit_set.begin(), orbit_set.end());
                if (!seen.insert(orbit).second) continue;

                std::vector<Vertex> solid;
                for (Vertex v : ce.pat)
                    if (v != src) solid.push_back(v);
                if (!occupied_at(dst)) solid.push_back(dst);
                std::sort(solid.begin(), solid.end());
                solid.erase(std::unique(solid.begin(), solid.end()), solid.end());

                std::vector<Vertex> dashed = ce.pat;
                if (!occupied_at(dst)) {
                    dashed.push_back(dst);
                    std::sort(dashed.begin(), dashed.end());
                }

                bool solid_ok = is_t3_pattern(solid) || is_diagonal_22(solid);
                bool dashed_ok = is_t3_pattern(dashed);
                if (!solid_ok || !dashed_ok) continue;

                // movers must not be refilled by moves onto occupied vertices
                bool feeds_back = false;
                for (const auto& [s1, d1] : orbit) {
                    if (!occupied_at(d1)) continue;
                    for (const auto& [s2, d2] : orbit)
                        if (s2 == d1) feeds_back = true;
                }
                if (feeds_back) continue;

                Candidate cand;
                cand.pairs = std::move(orbit);
                cand.solid_key = grid::grid_canonical(solid);
                cand.dashed_key = grid::grid_canonical(dashed);
                cand.solid_terminal = is_diagonal_22(solid);
                cand.dst_occupied = occupied_at(dst);
                if (cand.solid_key == rep) continue;  // solid moves must make progress
                ce.candidates.push_back(std::move(cand));
            }
        }
        std::stable_sort(ce.candidates.begin(), ce.candidates.end(),
                         [](const Candidate& a, const Candidate& b) {
                             if (a.dst_occupied != b.dst_occupied) return a.dst_occupied;
                             return a.pairs.front() < b.pairs.front();
                         });
        classes.push_back(std::move(ce));
    }

    const PatternKey terminal = diagonal_22_key();
    std::map<PatternKey, std::set<PatternKey>> edges;
    std::map<PatternKey, const Candidate*> chosen;

    std::function<bool(const std::map<PatternKey, std::set<PatternKey>>&)> acyclic =
        [&](const std::map<PatternKey, std::set<PatternKey>>& e) {
            std::map<PatternKey, int> color;
            std::function<bool(const PatternKey&)> visit = [&](const PatternKey& n) -> bool {
                color[n] = 1;
                auto it = e.find(n);
                if (it != e.end()) {
                    for (const PatternKey& nx : it->second) {
                        int c = color.count(nx) ? color[nx] : 0;
                        if (c == 1) return false;
                        if (c == 0 && !visit(nx)) return false;
                    }
                }
                color[n] = 2;
                return true;
            };
            for (const auto& [n, _] : e) {
                if ((color.count(n) ? color[n] : 0) == 0)
                    if (!visit(n)) return false;
            }
            return true;
        };

    std::function<bool(std::size_t)> assign = [&](std::size_t idx) -> bool {
        if (idx == classes.size()) {
            // every class must reach the (2,2)-diagonal terminal
            for (const auto& ce : classes) {
                std::set<PatternKey> visited;
                std::vector<PatternKey> stack{ce.rep};
                bool reached = false;
                while (!stack.empty() && !reached) {
                    PatternKey n = stack.back();
                    stack.pop_back();
                    if (!visited.insert(n).second) continue;
                    if (n == terminal) reached = true;
                    auto it = edges.find(n);
                    if (it != edges.end())
                        for (const auto& nx : it->second) stack.push_back(nx);
                }
                if (!reached) return false;
            }
            return true;
        }
        const ClassEntry& ce = classes[idx];
        for (const Candidate& cand : ce.candidates) {
            auto& slot = edges[ce.rep];
            std::set<PatternKey> saved = slot;
            if (cand.solid_key != ce.rep) slot.insert(cand.solid_key);
            if (cand.dashed_key != ce.rep) slot.insert(cand.dashed_key);
            if (acyclic(edges)) {
                chosen[ce.rep] = &cand;
                if (assign(idx + 1)) return true;
                chosen.erase(ce.rep);
            }
            slot = saved;
        }
        return false;
    };

    if (!assign(0))
        throw std::runtime_error("3x2 table synthesis found no assignment meeting the certificate");

    Grid32Table table;
    for (const auto& ce : classes) {
        G32Entry e;
        e.pairs = chosen.at(ce.rep)->pairs;
        table.entries[ce.rep] = std::move(e);
    }
    return table;
}

const Grid32Table& default_32_table() {
    static const Grid32Table table = synthesize_32_table();
    return table;
}

grid::PatternKey diagonal_22_key() {
    return grid::grid_canonical({Vertex{0, 0}, Vertex{1, 1}});
}

// ---------------------------------------------------------------------------
// Full algorithm.
// ---------------------------------------------------------------------------

MoveOffer move_st(const std::vector<Vertex>& occupied, Vertex at, const Grid32Table& table) {
    if (!std::binary_search(occupied.begin(), occupied.end(), at))
        throw std::invalid_argument("active robot is not on an occupied vertex");
    if (occupied.size() == 1) return nil_offer(at, "G");

    GClassification cls = classify_st(occupied);
    std::string label = to_string(cls.task);
    const Rectangle& box = cls.box;
    std::vector<Vertex> dests;

    auto is_occ = [&](Vertex v) {
        return std::binary_search(occupied.begin(), occupied.end(), v);
    };

    switch (cls.task) {
        case GTask::t1: {
            if (box.short_side() == 1) {
                // line of length >= 3: every robot steps off the line
                if (box.rows() == 1) {
                    dests.push_back(Vertex{at.x, at.y + 1});
                    dests.push_back(Vertex{at.x, at.y - 1});
                } else {
                    dests.push_back(Vertex{at.x + 1, at.y});
                    dests.push_back(Vertex{at.x - 1, at.y});
                }
            } else {
                // all corners occupied: boundary robots step outward
                if (at.x == box.lo.x) dests.push_back(Vertex{at.x - 1, at.y});
                if (at.x == box.hi.x) dests.push_back(Vertex{at.x + 1, at.y});
                if (at.y == box.lo.y) dests.push_back(Vertex{at.x, at.y - 1});
                if (at.y == box.hi.y) dests.push_back(Vertex{at.x, at.y + 1});
            }
            break;
        }
        case GTask::t2: {
            const int rows = box.rows(), cols = box.cols();
            for (Vertex corner : box.corners()) {
                if (is_occ(corner)) continue;
                // for each unoccupied corner, movers sit on the far side(s)
                bool consider_horizontal = rows >= cols;  // sides along y = const
                bool consider_vertical = cols >= rows;
                if (rows > cols) {
                    consider_horizontal = true;
                    consider_vertical = false;
                } else if (cols > rows) {
                    consider_horizontal = false;
                    consider_vertical = true;
                }
                if (consider_horizontal) {
                    int far_y = corner.y == box.lo.y ? box.hi.y : box.lo.y;
                    int inward = far_y == box.lo.y ? 1 : -1;
                    if (at.y == far_y) dests.push_back(Vertex{at.x, at.y + inward});
                }
                if (consider_vertical) {
                    int far_x = corner.x == box.lo.x ? box.hi.x : box.lo.x;
                    int inward = far_x == box.lo.x ? 1 : -1;
                    if (at.x == far_x) dests.push_back(Vertex{at.x + inward, at.y});
                }
            }
            break;
        }
        case GTask::t3:
            dests = t3_offer(table, occupied, at);
            break;
        case GTask::t4: {
            if (box.long_side() == 2 && box.short_side() == 2) {
                if (occupied.size() == 2) {
                    // nice star: both free corners are admissible centers
                    for (int y = box.lo.y; y <= box.hi.y; ++y)
                        for (int x = box.lo.x; x <= box.hi.x; ++x)
                            if (!is_occ(Vertex{x, y})) dests.push_back(Vertex{x, y});
                } else {
                    // three occupied: the ends join the middle
                    Vertex mid{};
                    for (Vertex c : occupied) {
                        bool adj_all = true;
                        for (Vertex o : occupied)
                            if (o != c && std::abs(o.x - c.x) + std::abs(o.y - c.y) != 1)
                                adj_all = false;
                        if (adj_all) mid = c;
                    }
                    if (at != mid) dests.push_back(mid);
                }
            } else {
                // the (1,2) intermediate: move to the other occupied vertex
                for (Vertex o : occupied)
                    if (o != at) dests.push_back(o);
            }
            break;
        }
    }

    std::sort(dests.begin(), dests.end());
    dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
    if (dests.empty()) return nil_offer(at, label);
    return MoveOffer{std::move(dests), label};
}

MoveOffer GridGatherer::compute(const Configuration& config, Vertex at) const {
    if (config.topology->kind() != TopologyKind::square_grid)
        throw std::invalid_argument("grid algorithm needs the square grid topology");
    return move_st(config.occupied, at, *table_);
}

}  // namespace rrgather::st
