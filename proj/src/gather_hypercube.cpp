#include "rrgather/gather_hypercube.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace rrgather::hyper {

using hc::OccMask;

const char* to_string(HTask t) {
    switch (t) {
        case HTask::t1: return "T1";
        case HTask::t2: return "T2";
        case HTask::t3: return "T3";
        case HTask::t4: return "T4";
        case HTask::t5i: return "T5i";
        case HTask::t5ii: return "T5ii";
        case HTask::t5iii: return "T5iii";
        case HTask::t6: return "T6";
        case HTask::t7: return "T7";
        case HTask::t8: return "T8";
    }
    return "?";
}

const char* to_string(UHKind k) {
    switch (k) {
        case UHKind::none: return "none";
        case UHKind::p2: return "P2";
        case UHKind::p3: return "P3";
        case UHKind::full: return "full";
    }
    return "?";
}

DmaVerdict dma(const hc::Split& split, OccMask occupied) {
    OccMask occ_s = occupied & split.s_cells;
    OccMask unocc_d = split.d_cells & ~occupied;
    int n_s = std::popcount(occ_s);
    std::uint32_t axis_bit = 1u << split.axis;

    if (n_s == 1) {
        auto v = static_cast<std::uint32_t>(std::countr_zero(occ_s));
        if (unocc_d == 0) return DmaVerdict{DmaStatus::fail_a, v, 0, 0};
        if (std::popcount(unocc_d) == 1) {
            auto w = static_cast<std::uint32_t>(std::countr_zero(unocc_d));
            if (w == (v ^ axis_bit)) return DmaVerdict{DmaStatus::fail_b, v, 0, w};
        }
    } else if (n_s == 2) {
        auto v1 = static_cast<std::uint32_t>(std::countr_zero(occ_s));
        auto v2 = static_cast<std::uint32_t>(std::countr_zero(occ_s & (occ_s - 1)));
        if (std::popcount(v1 ^ v2) == 1 && std::popcount(unocc_d) == 1) {
            auto w = static_cast<std::uint32_t>(std::countr_zero(unocc_d));
            if (w == (v1 ^ axis_bit)) return DmaVerdict{DmaStatus::fail_c, v1, v2, w};
            if (w == (v2 ^ axis_bit)) return DmaVerdict{DmaStatus::fail_c, v2, v1, w};
        }
    }
    return DmaVerdict{};
}

LSets l_sets(int dim, OccMask occupied) {
    hc::SubHypercube bound = hc::mbh(dim, occupied);
    if (bound.dim() <= 3)
        throw std::invalid_argument("l_sets requires a bounding cube of dimension > 3");

    LSets ls;
    std::vector<hc::Split> splits = hc::axis_splits(dim, bound);
    int max_d = 0;
    for (const auto& sp : splits)
        max_d = std::max(max_d, std::popcount(occupied & sp.d_cells));
    for (const auto& sp : splits)
        if (std::popcount(occupied & sp.d_cells) == max_d) ls.l0.push_back(sp);
    for (const auto& sp : ls.l0) {
        if (std::popcount(occupied & sp.s_cells) < std::popcount(occupied & sp.d_cells)) {
            ls.l1.push_back(sp);
            ls.l1_verdicts.push_back(dma(sp, occupied));
        }
    }
    for (std::size_t i = 0; i < ls.l1.size(); ++i)
        if (ls.l1_verdicts[i].status == DmaStatus::allowed) ls.l2.push_back(ls.l1[i]);
    for (const auto& sp : ls.l2) {
        std::uint32_t axis_bit = 1u << sp.axis;
        OccMask occ_s = occupied & sp.s_cells;
        bool reachable = false;
        for (std::uint32_t v = 0; v < (1u << dim) && !reachable; ++v)
            if ((occ_s & hc::bit_of(v)) && !(occupied & hc::bit_of(v ^ axis_bit)))
                reachable = true;
        if (reachable) ls.l3.push_back(sp);
    }
    return ls;
}

UHWitness uh_witness(int dim, OccMask occupied) {
    int n = std::popcount(occupied);
    if (n == static_cast<int>(1u << dim)) return UHWitness{UHKind::full};
    if (n == 2) {
        auto v1 = static_cast<std::uint32_t>(std::countr_zero(occupied));
        auto v2 = static_cast<std::uint32_t>(std::countr_zero(occupied & (occupied - 1)));
        if (std::popcount(v1 ^ v2) == 1) return UHWitness{UHKind::p2};
    }
    if (n == 3) {
        std::uint32_t vs[3];
        int i = 0;
        for (std::uint32_t v = 0; v < (1u << dim); ++v)
            if (occupied & hc::bit_of(v)) vs[i++] = v;
        int d01 = std::popcount(vs[0] ^ vs[1]);
        int d02 = std::popcount(vs[0] ^ vs[2]);
        int d12 = std::popcount(vs[1] ^ vs[2]);
        int ones = (d01 == 1) + (d02 == 1) + (d12 == 1);
        int twos = (d01 == 2) + (d02 == 2) + (d12 == 2);
        if (ones == 2 && twos == 1) return UHWitness{UHKind::p3};
    }
    return UHWitness{};
}

HClassification classify_h(int dim, OccMask occupied) {
    if (occupied == 0) throw std::invalid_argument("classify_h on empty configuration");
    HClassification cls;
    cls.bound = hc::mbh(dim, occupied);
    if (cls.bound.dim() <= 3) {
        cls.task = HTask::t1;
        return cls;
    }
    cls.lsets = l_sets(dim, occupied);
    const LSets& ls = cls.lsets;

    if (!ls.l1.empty()) {
        if (ls.l2.size() == 1) {
            cls.task = HTask::t2;
        } else if (ls.l2.size() > 1) {
            cls.task = ls.l3.empty() ? HTask::t4 : HTask::t3;
        } else {
            bool any_a = false, any_b = false;
            for (const auto& v : ls.l1_verdicts) {
                any_a |= v.status == DmaStatus::fail_a;
                any_b |= v.status == DmaStatus::fail_b;
            }
            cls.task = any_a ? HTask::t5i : (any_b ? HTask::t5ii : HTask::t5iii);
        }
        return cls;
    }

    if (std::popcount(occupied) < static_cast<int>(cls.bound.size())) {
        bool crossing_edge = false;
        for (const auto& sp : ls.l0) {
            std::uint32_t axis_bit = 1u << sp.axis;
            for (std::uint32_t v = 0; v < (1u << dim) && !crossing_edge; ++v)
                if ((occupied & sp.s_cells & hc::bit_of(v)) &&
                    !(occupied & hc::bit_of(v ^ axis_bit)))
                    crossing_edge = true;
            if (crossing_edge) break;
        }
        cls.task = crossing_edge ? HTask::t6 : HTask::t7;
    } else {
        cls.task = HTask::t8;
    }
    return cls;
}

// ---------------------------------------------------------------------------
// Task T1: synthesized move table over the occupancy classes of Q3.
// ---------------------------------------------------------------------------

namespace {

struct KnownKeys {
    std::uint64_t gathered, p2, pair22, p3, full;
};

const KnownKeys& known_keys() {
    static const KnownKeys k = [] {
        KnownKeys kk;
        kk.gathered = hc::hc_canonical(3, 0b1);
        kk.p2 = hc::hc_canonical(3, 0b11);
        kk.pair22 = hc::hc_canonical(3, 0b1001);
        kk.p3 = hc::hc_canonical(3, 0b1011);
        kk.full = hc::hc_canonical(3, 0xFF);
        return kk;
    }();
    return k;
}

struct ClassCandidates {
    std::uint64_t rep = 0;
    int occ = 0;
    // Each candidate is a stabilizer-closed orbit of (mover, destination)
    // pairs plus the classes of its solid and dashed successors.
    struct Candidate {
        std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
        std::uint64_t solid_key = 0;
        std::uint64_t dashed_key = 0;
        bool dst_occupied = false;
    };
    std::vector<Candidate> candidates;
};

bool dfs_cycle(std::uint64_t node, const std::map<std::uint64_t, std::set<std::uint64_t>>& edges,
               std::map<std::uint64_t, int>& color) {
    color[node] = 1;
    auto it = edges.find(node);
    if (it != edges.end()) {
        for (std::uint64_t next : it->second) {
            int c = color.count(next) ? color[next] : 0;
            if (c == 1) return true;
            if (c == 0 && dfs_cycle(next, edges, color)) return true;
        }
    }
    color[node] = 2;
    return false;
}

bool has_cycle(const std::map<std::uint64_t, std::set<std::uint64_t>>& edges) {
    std::map<std::uint64_t, int> color;
    for (const auto& [node, _] : edges) {
        if ((color.count(node) ? color[node] : 0) == 0)
            if (dfs_cycle(node, edges, color)) return true;
    }
    return false;
}

int longest_path(const std::map<std::uint64_t, std::set<std::uint64_t>>& edges) {
    std::map<std::uint64_t, int> depth;
    std::function<int(std::uint64_t)> go = [&](std::uint64_t node) {
        auto d = depth.find(node);
        if (d != depth.end()) return d->second;
        int best = 0;
        auto it = edges.find(node);
        if (it != edges.end())
            for (std::uint64_t next : it->second) best = std::max(best, 1 + go(next));
        depth[node] = best;
        return best;
    };
    int best = 0;
    for (const auto& [node, _] : edges) best = std::max(best, go(node));
    return best;
}

// Exhaustive check that every placement over the distance-2 pair gathers
// within one epoch, against every schedule and every branch of the offer.
bool pair22_one_epoch(const Q3MoveTable& table);

}  // namespace

std::vector<Vertex> t1_offer(const Q3MoveTable& table, int dim, OccMask occupied, Vertex at) {
    hc::SubHypercube bound = hc::mbh(dim, occupied);
    int b = bound.dim();
    if (b > 3) throw std::invalid_argument("t1_offer requires bounding dimension <= 3");

    std::vector<int> axes;
    for (int i = 0; i < dim; ++i)
        if (!(bound.frozen_axes & (1u << i))) axes.push_back(i);
    std::vector<int> out_axes;
    for (int i = 0; i < dim; ++i)
        if (bound.frozen_axes & (1u << i)) out_axes.push_back(i);

    auto compress = [&](std::uint32_t v) {
        std::uint32_t c = 0;
        for (int j = 0; j < b; ++j)
            if (v & (1u << axes[j])) c |= 1u << j;
        return c;
    };

    OccMask virt = 0;
    for (std::uint32_t v = 0; v < (1u << dim); ++v)
        if (occupied & hc::bit_of(v)) virt |= hc::bit_of(compress(v));

    hc::HcCanonical can = hc::hc_canonicalize(3, virt);
    auto entry_it = table.entries.find(can.key);
    if (entry_it == table.entries.end())
        throw std::logic_error("q3 move table has no entry for a reachable class");
    const Q3TableEntry& entry = entry_it->second;

    std::vector<Vertex> dests;
    std::uint32_t at_mask = hc_mask(at);
    if (entry.kind == Q3TableEntry::Kind::exit_move) {
        for (int a : out_axes) dests.push_back(hc_vertex(at_mask ^ (1u << a)));
    } else if (entry.kind == Q3TableEntry::Kind::pair_move) {
        hc::HcAutomorphism inv = can.to_canonical.inverse();
        std::uint32_t virtual_at = compress(at_mask);
        for (const auto& [src, dst] : entry.pairs) {
            std::uint32_t vs = inv.apply(src);
            std::uint32_t vd = inv.apply(dst);
            if (vs != virtual_at) continue;
            int j = std::countr_zero(vs ^ vd);
            if (j < b) {
                dests.push_back(hc_vertex(at_mask ^ (1u << axes[j])));
            } else {
                for (int a : out_axes) dests.push_back(hc_vertex(at_mask ^ (1u << a)));
            }
        }
    }
    std::sort(dests.begin(), dests.end());
    dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
    return dests;
}

Q3MoveTable synthesize_t1_table() {
    const KnownKeys& kk = known_keys();
    const auto& group = hc::hc_group(3);

    std::set<std::uint64_t> keys;
    for (OccMask m = 1; m <= 0xFF; ++m) keys.insert(hc::hc_canonical(3, m));

    std::vector<ClassCandidates> classes;
    for (std::uint64_t rep : keys) {
        ClassCandidates cc;
        cc.rep = rep;
        cc.occ = std::popcount(rep);
        if (cc.occ == 1 || rep == kk.full) {
            classes.push_back(std::move(cc));
            continue;
        }

        std::vector<const hc::HcAutomorphism*> stab;
        for (const auto& a : group)
            if (a.apply_mask(rep) == rep) stab.push_back(&a);

        std::set<std::vector<std::pair<std::uint8_t, std::uint8_t>>> seen;
        for (std::uint32_t src = 0; src < 8; ++src) {
            if (!(rep & hc::bit_of(src))) continue;
            for (int i = 0; i < 3; ++i) {
                std::uint32_t dst = src ^ (1u << i);
                std::set<std::pair<std::uint8_t, std::uint8_t>> orbit_set;
                for (const auto* a : stab)
                    orbit_set.insert({static_cast<std::uint8_t>(a->apply(src)),
                                      static_cast<std::uint8_t>(a->apply(dst))});
                std::vector<std::pair<std::uint8_t, std::uint8_t>> orbit(orbit_set.begin(),
                                                                          orbit_set.end());
                if (!seen.insert(orbit).second) continue;

                OccMask solid = (rep & ~hc::bit_of(src)) | hc::bit_of(dst);
                OccMask dashed = rep | hc::bit_of(dst);
                std::uint64_t solid_key = hc::hc_canonical(3, solid);
                std::uint64_t dashed_key = hc::hc_canonical(3, dashed);

                auto forbidden = [&](std::uint64_t key) {
                    if (key == rep) return false;  // exact self-loop, drained below
                    if (key == kk.full) return true;
                    if (key == kk.p2) return !(rep == kk.pair22 || rep == kk.p3);
                    if (key == kk.p3) return rep != kk.pair22;
                    return false;
                };
                if (solid_key == rep) continue;  // solid moves must make progress
                if (forbidden(solid_key) || forbidden(dashed_key)) continue;

                // A mover's vertex must never also be the target of a move
                // onto an occupied vertex; arrivals would refill the source
                // multiplicity and the self-loop could recycle forever. The
                // adjacent pair is the one deliberate exception, consumed
                // within the 2.2 endgame epoch.
                if (rep != kk.p2) {
                    bool feeds_back = false;
                    for (const auto& [s1, d1] : orbit) {
                        if (!(rep & hc::bit_of(d1))) continue;
                        for (const auto& [s2, d2] : orbit)
                            if (s2 == d1) feeds_back = true;
                    }
                    if (feeds_back) continue;
                }

                ClassCandidates::Candidate cand;
                cand.pairs = std::move(orbit);
                cand.solid_key = solid_key;
                cand.dashed_key = dashed_key;
                cand.dst_occupied = (rep & hc::bit_of(dst)) != 0;
                cc.candidates.push_back(std::move(cand));
            }
        }
        std::stable_sort(cc.candidates.begin(), cc.candidates.end(),
                         [](const auto& a, const auto& b) {
                             if (a.dst_occupied != b.dst_occupied) return a.dst_occupied;
                             return a.pairs.front() < b.pairs.front();
                         });
        classes.push_back(std::move(cc));
    }

    std::map<std::uint64_t, std::set<std::uint64_t>> edges;
    std::map<std::uint64_t, const ClassCandidates::Candidate*> chosen;

    std::function<bool(std::size_t)> assign = [&](std::size_t idx) -> bool {
        if (idx == classes.size()) {
            if (longest_path(edges) > 9) return false;
            // every class must reach the gathered class (the full cube exits)
            for (const auto& cc : classes) {
                if (cc.rep == kk.full || cc.occ == 1) continue;
                std::set<std::uint64_t> visited;
                std::vector<std::uint64_t> stack{cc.rep};
                bool reached = false;
                while (!stack.empty() && !reached) {
                    std::uint64_t n = stack.back();
                    stack.pop_back();
                    if (!visited.insert(n).second) continue;
                    if (n == known_keys().gathered) reached = true;
                    auto it = edges.find(n);
                    if (it != edges.end())
                        for (auto nx : it->second) stack.push_back(nx);
                }
                if (!reached) return false;
            }
            Q3MoveTable candidate_table;
            for (const auto& cc : classes) {
                Q3TableEntry e;
                if (cc.occ == 1)
                    e.kind = Q3TableEntry::Kind::nil_move;
                else if (cc.rep == known_keys().full)
                    e.kind = Q3TableEntry::Kind::exit_move;
                else {
                    e.kind = Q3TableEntry::Kind::pair_move;
                    e.pairs = chosen.at(cc.rep)->pairs;
                }
                candidate_table.entries[cc.rep] = std::move(e);
            }
            return pair22_one_epoch(candidate_table);
        }

        const ClassCandidates& cc = classes[idx];
        if (cc.occ == 1 || cc.rep == known_keys().full) return assign(idx + 1);

        for (const auto& cand : cc.candidates) {
            std::set<std::uint64_t> added;
            if (cand.solid_key != cc.rep) added.insert(cand.solid_key);
            if (cand.dashed_key != cc.rep) added.insert(cand.dashed_key);
            auto& slot = edges[cc.rep];
            std::set<std::uint64_t> saved = slot;
            slot.insert(added.begin(), added.end());
            if (!has_cycle(edges)) {
                chosen[cc.rep] = &cand;
                if (assign(idx + 1)) return true;
                chosen.erase(cc.rep);
            }
            slot = saved;
        }
        return false;
    };

    if (!assign(0))
        throw std::runtime_error("t1 table synthesis found no assignment meeting the certificate");

    Q3MoveTable table;
    for (const auto& cc : classes) {
        Q3TableEntry e;
        if (cc.occ == 1)
            e.kind = Q3TableEntry::Kind::nil_move;
        else if (cc.rep == kk.full)
            e.kind = Q3TableEntry::Kind::exit_move;
        else {
            e.kind = Q3TableEntry::Kind::pair_move;
            e.pairs = chosen.at(cc.rep)->pairs;
        }
        table.entries[cc.rep] = std::move(e);
    }
    return table;
}

namespace {

bool pair22_one_epoch(const Q3MoveTable& table) {
    const KnownKeys& kk = known_keys();
    std::uint32_t u = static_cast<std::uint32_t>(std::countr_zero(kk.pair22));
    std::uint32_t v = static_cast<std::uint32_t>(
        std::countr_zero(kk.pair22 & (kk.pair22 - 1)));

    for (int k = 2; k <= 4; ++k) {
        for (int a = 1; a < k; ++a) {
            int b = k - a;
            if (a > 3 || b > 3) continue;
            std::vector<std::uint32_t> robots;
            for (int i = 0; i < a; ++i) robots.push_back(u);
            for (int i = 0; i < b; ++i) robots.push_back(v);

            std::vector<int> perm(k);
            for (int i = 0; i < k; ++i) perm[i] = i;
            do {
                // branch over every resolver choice in the epoch
                std::function<bool(std::vector<std::uint32_t>, int)> go =
                    [&](std::vector<std::uint32_t> pos, int round) -> bool {
                    OccMask occ = 0;
                    for (auto p : pos) occ |= hc::bit_of(p);
                    if (std::popcount(occ) == 1) return true;
                    if (round > k) return false;
                    std::uint32_t at = pos[perm[round - 1]];
                    std::vector<Vertex> offer = t1_offer(table, 3, occ, hc_vertex(at));
                    if (offer.empty()) offer.push_back(hc_vertex(at));
                    for (Vertex dest : offer) {
                        auto next = pos;
                        next[perm[round - 1]] = hc_mask(dest);
                        if (!go(std::move(next), round + 1)) return false;
                    }
                    return true;
                };
                if (!go(robots, 1)) return false;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    return true;
}

}  // namespace

const Q3MoveTable& default_t1_table() {
    static const Q3MoveTable table = synthesize_t1_table();
    return table;
}

MoveOffer move_h(const Hypercube& cube, OccMask occupied, Vertex at, const Q3MoveTable& table) {
    const int dim = cube.dim();
    if (!(occupied & hc::bit_of(hc_mask(at))))
        throw std::invalid_argument("active robot is not on an occupied vertex");
    if (std::popcount(occupied) == 1) return nil_offer(at, "G");

    HClassification cls = classify_h(dim, occupied);
    std::string label = to_string(cls.task);
    std::vector<Vertex> dests;
    std::uint32_t am = hc_mask(at);

    auto unoccupied = [&](std::uint32_t v) { return !(occupied & hc::bit_of(v)); };

    switch (cls.task) {
        case HTask::t1:
            dests = t1_offer(table, dim, occupied, at);
            break;
        case HTask::t2: {
            const hc::Split& sp = cls.lsets.l2.front();
            if (sp.s_cells & hc::bit_of(am)) dests.push_back(hc_vertex(am ^ (1u << sp.axis)));
            break;
        }
        case HTask::t3:
            for (const auto& sp : cls.lsets.l3) {
                if ((sp.s_cells & hc::bit_of(am)) && unoccupied(am ^ (1u << sp.axis)))
                    dests.push_back(hc_vertex(am ^ (1u << sp.axis)));
            }
            break;
        case HTask::t4:
            for (const auto& sp : cls.lsets.l2) {
                if (!(sp.s_cells & hc::bit_of(am))) continue;
                bool empty_nbr_in_s = false;
                for (int f = 0; f < dim && !empty_nbr_in_s; ++f) {
                    if (f == sp.axis || (cls.bound.frozen_axes & (1u << f))) continue;
                    if (unoccupied(am ^ (1u << f))) empty_nbr_in_s = true;
                }
                if (empty_nbr_in_s) dests.push_back(hc_vertex(am ^ (1u << sp.axis)));
            }
            break;
        case HTask::t5i:
            for (std::size_t i = 0; i < cls.lsets.l1.size(); ++i) {
                const DmaVerdict& ver = cls.lsets.l1_verdicts[i];
                if (ver.status != DmaStatus::fail_a) continue;
                std::uint32_t axis_bit = 1u << cls.lsets.l1[i].axis;
                if (am == (ver.v ^ axis_bit)) dests.push_back(hc_vertex(ver.v));
            }
            break;
        case HTask::t5ii:
            for (std::size_t i = 0; i < cls.lsets.l1.size(); ++i) {
                const DmaVerdict& ver = cls.lsets.l1_verdicts[i];
                if (ver.status != DmaStatus::fail_b || am != ver.v) continue;
                for (int f = 0; f < dim; ++f) {
                    if (f == cls.lsets.l1[i].axis || (cls.bound.frozen_axes & (1u << f))) continue;
                    dests.push_back(hc_vertex(am ^ (1u << f)));
                }
            }
            break;
        case HTask::t5iii:
            for (std::size_t i = 0; i < cls.lsets.l1.size(); ++i) {
                const DmaVerdict& ver = cls.lsets.l1_verdicts[i];
                if (ver.status == DmaStatus::fail_c && am == ver.v)
                    dests.push_back(hc_vertex(ver.v2));
            }
            break;
        case HTask::t6:
            for (const auto& sp : cls.lsets.l0) {
                std::uint32_t axis_bit = 1u << sp.axis;
                if ((sp.s_cells & hc::bit_of(am)) && unoccupied(am ^ axis_bit))
                    dests.push_back(hc_vertex(am ^ axis_bit));
            }
            break;
        case HTask::t7:
            for (int f = 0; f < dim; ++f) {
                if (cls.bound.frozen_axes & (1u << f)) continue;
                if (unoccupied(am ^ (1u << f))) dests.push_back(hc_vertex(am ^ (1u << f)));
            }
            break;
        case HTask::t8:
            for (int f = 0; f < dim; ++f) {
                if (!(cls.bound.frozen_axes & (1u << f))) continue;
                dests.push_back(hc_vertex(am ^ (1u << f)));
            }
            break;
    }

    std::sort(dests.begin(), dests.end());
    dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
    if (dests.empty()) return nil_offer(at, label);
    return MoveOffer{std::move(dests), label};
}

MoveOffer HypercubeGatherer::compute(const Configuration& config, Vertex at) const {
    if (config.topology->kind() != TopologyKind::hypercube)
        throw std::invalid_argument("hypercube algorithm needs a hypercube topology");
    return move_h(*cube_, hc::mask_of(config.occupied), at, *table_);
}

std::uint64_t q3_gathered_key() { return known_keys().gathered; }
std::uint64_t q3_adjacent_pair_key() { return known_keys().p2; }
std::uint64_t q3_distance2_pair_key() { return known_keys().pair22; }
std::uint64_t q3_path3_key() { return known_keys().p3; }
std::uint64_t q3_full_key() { return known_keys().full; }

}  // namespace rrgather::hyper
