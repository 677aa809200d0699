#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rrgather/adversary.hpp"
#include "rrgather/engine.hpp"
#include "rrgather/gather_grid.hpp"
#include "rrgather/gather_hypercube.hpp"
#include "rrgather/topology.hpp"

// Desk-scale exhaustive model checking: enumerate placements, activation
// permutations and adversarial resolver branches, check gathering, transition
// conformance, the per-instance epoch lower bound, nice-star necessity, and
// certify the synthesized move tables.

namespace rrgather::verify {

struct SweepSpec {
    enum class Target { hypercube, grid };
    Target target = Target::hypercube;
    int dim = 3;          // hypercube dimension
    int rows_cap = 3;     // grid pattern window
    int cols_cap = 3;
    int k_min = 2;
    int k_max = 4;
    int per_vertex_cap = 3;

    enum class Schedules { all, canonical, sampled };
    Schedules schedules = Schedules::all;
    int schedule_samples = 1;

    enum class Resolve { adversarial, canonical };
    Resolve resolver = Resolve::adversarial;

    enum class Placements { exhaustive, random };
    Placements placements = Placements::exhaustive;
    int random_samples = 0;

    std::uint64_t seed = 0;
    int horizon_epochs = 12;
    int workers = 1;  // placement-level partitioning; results merge deterministically
};

struct TransitionPair {
    std::string from;
    std::string to;   // "G" for the gathered configuration
    bool shrunk = false;  // bounding-structure dimension decreased

    auto operator<=>(const TransitionPair&) const = default;
};

struct Violation {
    std::string kind;  // non-gathered | horizon | lower-bound | nice-star | transition
    std::string detail;
    Placement placement;
    Schedule schedule;
};

struct SweepReport {
    long long placements_enumerated = 0;
    long long rejected_initials = 0;  // U-set members, counted as correctly rejected
    long long instances = 0;          // (placement, schedule) pairs checked
    long long gathered = 0;
    long long states_explored = 0;
    int max_epochs = 0;
    double max_ratio = 0.0;  // epochs / diameter proxy (d for Q_d, m+n for grids)
    std::set<TransitionPair> observed_pairs;
    std::vector<Violation> violations;

    bool clean() const { return violations.empty(); }
};

SweepReport sweep(const SweepSpec& spec);

// Expected transition tables. Hypercube rows T2, T3, T4 and T6 accept any
// successor when the bounding dimension shrinks.
const std::map<std::string, std::set<std::string>>& hyper_transition_rows();
const std::map<std::string, std::set<std::string>>& grid_transition_rows();
bool hyper_pair_allowed(const TransitionPair& p);
bool grid_pair_allowed(const TransitionPair& p);
bool pairs_conform(const std::set<TransitionPair>& pairs, SweepSpec::Target target,
                   std::string* offending = nullptr);

// Simple multi-task cycles among the same-dimension hypercube transitions;
// each returned cycle is rotated to start at its smallest label.
std::vector<std::vector<std::string>> task_cycles(const std::set<TransitionPair>& pairs);
const std::vector<std::vector<std::string>>& allowed_hyper_cycles();

// A cycle is sanctioned when every edge belongs to one of the four allowed
// cycles (their union contains composite tours, which are equally covered by
// the termination arguments).
bool cycle_sanctioned(const std::vector<std::string>& cycle);

// Post-hoc conformance check of a recorded trace.
struct TransitionCheck {
    bool pass = true;
    TransitionPair offending;
};
TransitionCheck check_transitions(const Topology& topology, const Trace& trace,
                                  SweepSpec::Target target);

// Epoch lower bound of the trace's initial configuration.
bool check_lower_bound(const Topology& topology, const Trace& trace);

struct ClauseReport {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct TableCertificateReport {
    std::vector<ClauseReport> clauses;
    bool all_pass() const;
};

// Independent certification of the synthesized move tables (the synthesizers
// enforce the same clauses on their own search; this re-derives everything
// from the finished table).
TableCertificateReport certify_q3_table(const hyper::Q3MoveTable& table);
TableCertificateReport certify_grid32_table(const st::Grid32Table& table);

struct EquivarianceWitness {
    std::string detail;
};

// offer(a(snapshot)) == a(offer(snapshot)) over sampled snapshots and the
// full automorphism group (hyperoctahedral / dihedral plus translations).
std::optional<EquivarianceWitness> equivariance_check_hypercube(const Algorithm& algorithm,
                                                                int dim, int samples,
                                                                std::uint64_t seed);
std::optional<EquivarianceWitness> equivariance_check_grid(const Algorithm& algorithm,
                                                           int samples, std::uint64_t seed);

}  // namespace rrgather::verify
