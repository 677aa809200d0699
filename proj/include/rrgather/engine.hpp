#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rrgather/topology.hpp"
#include "rrgather/vertex.hpp"

// The OBLOT execution engine: hidden per-robot placements, multiplicity-blind
// configurations, the Round-Robin scheduler and trace recording. A single run
// is strictly sequential; the engine keeps no global state, so independent
// runs may execute in parallel.

namespace rrgather {

// Ground truth: one vertex per robot index. Algorithms never see this.
class Placement {
public:
    Placement() = default;
    explicit Placement(std::vector<Vertex> robots) : robots_(std::move(robots)) {}

    // Robot indices are assigned in vertex order, which makes construction
    // from a count map deterministic.
    static Placement from_counts(const std::vector<std::pair<Vertex, int>>& counts);

    int robot_count() const { return static_cast<int>(robots_.size()); }
    Vertex position(int robot) const { return robots_.at(robot); }
    void move(int robot, Vertex to) { robots_.at(robot) = to; }
    const std::vector<Vertex>& positions() const { return robots_; }

    std::vector<Vertex> occupied() const;  // sorted, unique
    std::vector<std::pair<Vertex, int>> counts() const;

    bool operator==(const Placement&) const = default;

private:
    std::vector<Vertex> robots_;
};

// What a robot can see: the occupancy function lambda, nothing else.
struct Configuration {
    const Topology* topology = nullptr;
    std::vector<Vertex> occupied;  // sorted, unique

    int occ() const { return static_cast<int>(occupied.size()); }
    int delta() const;  // max pairwise distance among occupied vertices
    bool is_occupied(Vertex v) const;
    bool final() const { return occupied.size() == 1; }
};

Configuration configuration_of(const Topology& topology, const Placement& placement);

// Admissible destinations for the active robot. Contains the robot's own
// vertex exactly when the planned move is nil.
struct MoveOffer {
    std::vector<Vertex> destinations;  // sorted, unique, nonempty
    std::string task;                  // classification label, "-" if none

    bool is_nil(Vertex at) const {
        return destinations.size() == 1 && destinations.front() == at;
    }
};

MoveOffer nil_offer(Vertex at, std::string task);

// A gathering algorithm: deterministic function of the snapshot
// (configuration + own vertex). Implementations must be multiplicity-blind
// and equivariant under the topology's automorphisms.
class Algorithm {
public:
    virtual ~Algorithm() = default;
    virtual MoveOffer compute(const Configuration& config, Vertex at) const = 0;
    virtual std::string name() const = 0;
};

// Closes the "arbitrary" choices the algorithms leave open. Receives the
// offered destinations (sorted) and the active robot's vertex.
using Resolver = std::function<Vertex(const std::vector<Vertex>& offer, Vertex at)>;

Resolver canonical_resolver();                 // smallest encoding wins
Resolver seeded_random_resolver(std::uint64_t seed);

// Fixed activation permutation; round r (1-based) activates
// order[(r-1) mod k], and epoch(r) = ceil(r / k).
struct Schedule {
    std::vector<int> order;

    int robots() const { return static_cast<int>(order.size()); }
    int active_robot(int round) const { return order[(round - 1) % robots()]; }
    static Schedule canonical(int k);
    static int epoch_of(int round, int k) { return (round + k - 1) / k; }
};

struct StepRecord {
    int round = 0;
    int epoch = 0;
    int robot = 0;
    Vertex from;
    Vertex to;
    std::string task;
    int occ_after = 0;
    int delta_after = 0;
    int bound_dim_before = -1;  // hypercube mbh dimension of the pre-move configuration
    bool executed = false;      // to != from
    std::vector<Vertex> occupied_before;
    std::vector<Vertex> occupied_after;
};

enum class Verdict { gathered, horizon_exhausted, recurrence_detected };

struct RecurrenceInfo {
    int first_round = 0;  // round at which the repeated state was first seen
    int repeat_round = 0;
    std::vector<Vertex> state_positions;
    int schedule_position = 0;
};

struct Trace {
    Verdict verdict = Verdict::horizon_exhausted;
    int epochs_used = 0;  // epoch of the round that produced the final configuration
    Placement initial;
    Schedule schedule;
    std::vector<StepRecord> steps;
    std::optional<RecurrenceInfo> recurrence;
};

// One LCM cycle of the scheduled robot. Throws on algorithms offering a
// destination that is neither the active vertex nor one of its neighbors.
StepRecord step(const Topology& topology, Placement& placement, const Schedule& schedule,
                int round, const Algorithm& algorithm, const Resolver& resolve);

// Runs until the first gathered configuration (verified by one quiescent
// epoch of nil offers), a state recurrence, or the epoch horizon.
Trace run(const Topology& topology, Placement placement, const Schedule& schedule,
          const Algorithm& algorithm, const Resolver& resolve, int max_epochs);

// All nice-star centers: unoccupied vertices adjacent to every occupied one.
std::vector<Vertex> nice_star_centers(const Configuration& config);

// Per-instance epoch lower bound ceil(delta / 2).
int epochs_lower_bound(const Configuration& config);

}  // namespace rrgather
