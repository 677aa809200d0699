#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rrgather/engine.hpp"
#include "rrgather/topology.hpp"

// Constructive ungatherability witnesses: the hidden placements and
// activation orders behind the impossibility results, strawman algorithms to
// demonstrate them against, and a non-termination prover that turns infinite
// executions into finite, replayable recurrence certificates.

namespace rrgather::adv {

// Demonstration-only finite graphs (complete and complete bipartite). The
// main algorithms never run on these.
class FiniteGraph final : public Topology {
public:
    static std::shared_ptr<FiniteGraph> complete(int n);
    static std::shared_ptr<FiniteGraph> complete_bipartite(int per_side);

    TopologyKind kind() const override { return TopologyKind::finite_graph; }
    bool is_vertex(Vertex v) const override;
    std::vector<Vertex> neighbors(Vertex v) const override;
    int distance(Vertex u, Vertex v) const override;
    std::string format(Vertex v) const override;
    Vertex parse(const std::string& s) const override;

    int node_count() const { return static_cast<int>(adjacency_.size()); }
    int side_of(Vertex v) const;  // -1 when not bipartite

private:
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> side_;
    std::string name_;
};

// Strawman algorithms for the dichotomy demonstrations. Ungatherability
// holds against every algorithm, which is not machine-checkable; these are
// the representative move policies the constructions defeat.
std::unique_ptr<Algorithm> make_strawman(const std::string& name,
                                         std::shared_ptr<const Topology> topology);
// names: greedy | to-occupied | to-unoccupied | across-bipartite
std::vector<std::string> strawman_names();

struct AdversaryScenario {
    std::string name;
    std::shared_ptr<Topology> topology;
    Placement placement;
    Schedule schedule;
    std::string rationale;
    std::string expected;  // recurrence | gathered | rejected
    std::string algorithm_hint;
    Resolver resolver;  // scenario-chosen branch resolution; canonical if empty
    bool has_resolver = false;
};

AdversaryScenario p2_scenario(std::shared_ptr<Topology> topology);
AdversaryScenario full_graph_scenario();  // fully occupied Q3, n+1 robots
std::vector<AdversaryScenario> clique_bipartite_scenarios(int n);
AdversaryScenario p3_scenario(std::shared_ptr<Topology> topology, const std::string& selector);
// selectors: hypercube | bent | straight

struct RecurrenceCertificate {
    std::vector<Vertex> state;  // robot positions entering the loop
    int schedule_position = 0;
    int first_round = 0;
    int repeat_round = 0;
    std::vector<std::pair<int, Vertex>> moves;  // (robot, destination) per loop round

    int loop_rounds() const { return repeat_round - first_round; }
};

// Applies the certificate's move sequence to its state and checks the loop
// closes exactly; independent of the engine's recurrence bookkeeping.
bool replay_validates(const Topology& topology, const RecurrenceCertificate& cert);

struct NonTermResult {
    enum class Kind { recurrence, gathered, inconclusive } kind = Kind::inconclusive;
    std::optional<RecurrenceCertificate> certificate;
    Trace trace;
};

NonTermResult prove_nontermination(const AdversaryScenario& scenario,
                                   const Algorithm& algorithm, const Resolver& resolve,
                                   int horizon_epochs);

struct NiceStarCheck {
    bool applicable = false;  // initial occ >= 3 and verdict gathered
    bool pass = false;
    int witness_round = -1;  // round after which a nice-star was first seen (0 = initial)
};

// Gathering from three or more occupied vertices necessarily passes through a
// nice-star configuration (with at least two occupied); this checks a trace
// for that mandatory intermediate.
NiceStarCheck check_nice_star_necessity(const Topology& topology, const Trace& trace);

// Mandatory-move check for two-robot configurations: every offered
// destination strictly reduces the pair distance.
bool reduces_pair_distance(const Topology& topology, const Algorithm& algorithm, Vertex u, Vertex v);

}  // namespace rrgather::adv
