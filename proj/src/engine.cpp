#include "rrgather/engine.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "rrgather/hypercube_geometry.hpp"

namespace rrgather {

Placement Placement::from_counts(const std::vector<std::pair<Vertex, int>>& counts) {
    std::vector<std::pair<Vertex, int>> sorted = counts;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Vertex> robots;
    for (const auto& [v, n] : sorted) {
        if (n < 1) throw std::invalid_argument("placement counts must be >= 1");
        for (int i = 0; i < n; ++i) robots.push_back(v);
    }
    return Placement(std::move(robots));
}

std::vector<Vertex> Placement::occupied() const {
    std::vector<Vertex> occ = robots_;
    std::sort(occ.begin(), occ.end());
    occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
    return occ;
}

std::vector<std::pair<Vertex, int>> Placement::counts() const {
    std::vector<Vertex> sorted = robots_;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<Vertex, int>> out;
    for (Vertex v : sorted) {
        if (!out.empty() && out.back().first == v)
            ++out.back().second;
        else
            out.emplace_back(v, 1);
    }
    return out;
}

int Configuration::delta() const {
    int d = 0;
    for (std::size_t i = 0; i < occupied.size(); ++i)
        for (std::size_t j = i + 1; j < occupied.size(); ++j)
            d = std::max(d, topology->distance(occupied[i], occupied[j]));
    return d;
}

bool Configuration::is_occupied(Vertex v) const {
    return std::binary_search(occupied.begin(), occupied.end(), v);
}

Configuration configuration_of(const Topology& topology, const Placement& placement) {
    return Configuration{&topology, placement.occupied()};
}

MoveOffer nil_offer(Vertex at, std::string task) {
    return MoveOffer{{at}, std::move(task)};
}

Resolver canonical_resolver() {
    return [](const std::vector<Vertex>& offer, Vertex) { return offer.front(); };
}

Resolver seeded_random_resolver(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng](const std::vector<Vertex>& offer, Vertex) {
        std::uniform_int_distribution<std::size_t> pick(0, offer.size() - 1);
        return offer[pick(*rng)];
    };
}

Schedule Schedule::canonical(int k) {
    Schedule s;
    s.order.resize(k);
    for (int i = 0; i < k; ++i) s.order[i] = i;
    return s;
}

namespace {

int bound_dim_of(const Configuration& config) {
    if (config.topology->kind() != TopologyKind::hypercube || config.occupied.empty()) return -1;
    const auto& cube = static_cast<const Hypercube&>(*config.topology);
    return hc::mbh(cube.dim(), hc::mask_of(config.occupied)).dim();
}

void validate_offer(const Topology& topology, const MoveOffer& offer, Vertex at) {
    if (offer.destinations.empty())
        throw std::logic_error("algorithm produced an empty move offer");
    for (Vertex d : offer.destinations) {
        if (d == at) continue;
        if (topology.distance(at, d) != 1)
            throw std::logic_error("algorithm offered a non-neighbor destination " +
                                   topology.format(d) + " from " + topology.format(at));
    }
}

}  // namespace

StepRecord step(const Topology& topology, Placement& placement, const Schedule& schedule,
                int round, const Algorithm& algorithm, const Resolver& resolve) {
    if (schedule.robots() != placement.robot_count())
        throw std::invalid_argument("schedule length does not match robot count");
    int robot = schedule.active_robot(round);
    Vertex at = placement.position(robot);

    Configuration config = configuration_of(topology, placement);
    MoveOffer offer = algorithm.compute(config, at);
    validate_offer(topology, offer, at);
    Vertex dest = offer.destinations.size() == 1 ? offer.destinations.front()
                                                 : resolve(offer.destinations, at);

    StepRecord rec;
    rec.round = round;
    rec.epoch = Schedule::epoch_of(round, schedule.robots());
    rec.robot = robot;
    rec.from = at;
    rec.to = dest;
    rec.task = offer.task;
    rec.bound_dim_before = bound_dim_of(config);
    rec.executed = dest != at;
    rec.occupied_before = config.occupied;

    placement.move(robot, dest);
    Configuration after = configuration_of(topology, placement);
    rec.occ_after = after.occ();
    rec.delta_after = after.delta();
    rec.occupied_after = after.occupied;
    return rec;
}

Trace run(const Topology& topology, Placement placement, const Schedule& schedule,
          const Algorithm& algorithm, const Resolver& resolve, int max_epochs) {
    if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
    const int k = placement.robot_count();
    if (k < 1) throw std::invalid_argument("empty placement");

    Trace trace;
    trace.initial = placement;
    trace.schedule = schedule;

    struct SeenState {
        std::vector<Vertex> positions;
        int spos;
        int round;
    };
    std::unordered_map<std::size_t, std::vector<SeenState>> seen;
    auto state_first_round = [&](const std::vector<Vertex>& pos, int spos,
                                 int round) -> std::optional<int> {
        std::size_t h = PositionsHash{}(pos) * 31 + static_cast<std::size_t>(spos);
        auto& bucket = seen[h];
        for (const SeenState& s : bucket)
            if (s.spos == spos && s.positions == pos) return s.round;
        bucket.push_back(SeenState{pos, spos, round});
        return std::nullopt;
    };

    const int horizon_rounds = max_epochs * k;
    int gathered_round = -1;

    if (configuration_of(topology, placement).final()) gathered_round = 0;

    int round = 1;
    while (gathered_round < 0 && round <= horizon_rounds) {
        int spos = (round - 1) % k;
        auto first = state_first_round(placement.positions(), spos, round);
        if (first) {
            trace.verdict = Verdict::recurrence_detected;
            trace.recurrence = RecurrenceInfo{*first, round, placement.positions(), spos};
            return trace;
        }
        trace.steps.push_back(step(topology, placement, schedule, round, algorithm, resolve));
        if (trace.steps.back().occ_after == 1) gathered_round = round;
        ++round;
    }

    if (gathered_round < 0) {
        trace.verdict = Verdict::horizon_exhausted;
        return trace;
    }

    // One full quiescent epoch certifies termination.
    for (int i = 0; i < k; ++i, ++round) {
        StepRecord rec = step(topology, placement, schedule, round, algorithm, resolve);
        if (rec.executed)
            throw std::logic_error("algorithm moved a robot after the final configuration");
        trace.steps.push_back(std::move(rec));
    }

    trace.verdict = Verdict::gathered;
    trace.epochs_used = gathered_round == 0 ? 0 : Schedule::epoch_of(gathered_round, k);
    return trace;
}

std::vector<Vertex> nice_star_centers(const Configuration& config) {
    std::vector<Vertex> centers;
    if (config.occupied.empty()) return centers;
    // Candidate centers all lie in the neighborhood of the first occupied vertex.
    for (Vertex c : config.topology->neighbors(config.occupied.front())) {
        if (config.is_occupied(c)) continue;
        bool covers = true;
        for (Vertex o : config.occupied) {
            if (config.topology->distance(c, o) != 1) {
                covers = false;
                break;
            }
        }
        if (covers) centers.push_back(c);
    }
    std::sort(centers.begin(), centers.end());
    return centers;
}

int epochs_lower_bound(const Configuration& config) {
    return (config.delta() + 1) / 2;
}

}  // namespace rrgather
