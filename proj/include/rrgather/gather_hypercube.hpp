#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rrgather/engine.hpp"
#include "rrgather/hypercube_geometry.hpp"
#include "rrgather/topology.hpp"

// The hypercube gathering algorithm. Configurations whose minimum bounding
// hypercube Q_b has b > 3 are classified into tasks T2..T8 through the nested
// split lists L0..L3 and the direct-move-allowed predicate; b <= 3 is handled
// by a move table over the occupancy classes of Q3, synthesized here under a
// structural certificate and re-checked by the verifier.

namespace rrgather::hyper {

enum class HTask { t1, t2, t3, t4, t5i, t5ii, t5iii, t6, t7, t8 };
const char* to_string(HTask t);

enum class DmaStatus { allowed, fail_a, fail_b, fail_c };

struct DmaVerdict {
    DmaStatus status = DmaStatus::allowed;
    std::uint32_t v = 0;   // lone / first occupied vertex of S, when failing
    std::uint32_t v2 = 0;  // second occupied vertex of S (condition (c))
    std::uint32_t w = 0;   // unique unoccupied vertex of D (conditions (b), (c))
};

// Direct-move-allowed on one ordered split of the current bounding cube.
DmaVerdict dma(const hc::Split& split, hc::OccMask occupied);

struct LSets {
    std::vector<hc::Split> l0, l1, l2, l3;
    std::vector<DmaVerdict> l1_verdicts;  // parallel to l1
};

// Requires the minimum bounding hypercube to have dimension > 3.
LSets l_sets(int dim, hc::OccMask occupied);

enum class UHKind { none, p2, p3, full };

struct UHWitness {
    UHKind kind = UHKind::none;
    bool ungatherable() const { return kind != UHKind::none; }
};
const char* to_string(UHKind k);

UHWitness uh_witness(int dim, hc::OccMask occupied);

struct HClassification {
    HTask task = HTask::t1;
    hc::SubHypercube bound;
    LSets lsets;  // populated when bound.dim() > 3
};

// Total on every configuration with occ >= 1 (U_H members classify too; the
// engine front ends reject them as initial configurations).
HClassification classify_h(int dim, hc::OccMask occupied);

// Move table over the canonical occupancy classes of Q3. A pair-move entry
// stores the designated (mover, destination) orbit in class-representative
// coordinates; exit entries send a robot out of the bounding cube.
struct Q3TableEntry {
    enum class Kind { nil_move, pair_move, exit_move };
    Kind kind = Kind::nil_move;
    std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
};

struct Q3MoveTable {
    std::map<std::uint64_t, Q3TableEntry> entries;  // canonical occupancy key -> entry
};

// Deterministic synthesis; throws if no assignment satisfies the structural
// constraints (acyclic class graph, occupancy monotonicity, no ungatherable
// configuration generated outside the 2.2 endgame, depth bound, gathering
// reachable from every class).
Q3MoveTable synthesize_t1_table();

// Process-wide synthesized table.
const Q3MoveTable& default_t1_table();

// Offer of the task-T1 move table for an active robot; used by move_h for
// every configuration with bounding dimension <= 3.
std::vector<Vertex> t1_offer(const Q3MoveTable& table, int dim, hc::OccMask occupied, Vertex at);

// Full algorithm offer: nil unless the active robot is a designated mover of
// the classified task.
MoveOffer move_h(const Hypercube& cube, hc::OccMask occupied, Vertex at,
                 const Q3MoveTable& table);

class HypercubeGatherer final : public Algorithm {
public:
    explicit HypercubeGatherer(const Hypercube& cube)
        : cube_(&cube), table_(&default_t1_table()) {}
    HypercubeGatherer(const Hypercube& cube, const Q3MoveTable& table)
        : cube_(&cube), table_(&table) {}

    MoveOffer compute(const Configuration& config, Vertex at) const override;
    std::string name() const override { return "hypercube"; }

private:
    const Hypercube* cube_;
    const Q3MoveTable* table_;
};

// Canonical keys of the distinguished Q3 classes.
std::uint64_t q3_gathered_key();
std::uint64_t q3_adjacent_pair_key();       // class 2.1, a P2
std::uint64_t q3_distance2_pair_key();      // class 2.2
std::uint64_t q3_path3_key();               // class 3.3, a P3
std::uint64_t q3_full_key();

}  // namespace rrgather::hyper
