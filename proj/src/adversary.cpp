#include "rrgather/adversary.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace rrgather::adv {

// ---------------------------------------------------------------------------
// Finite demonstration graphs.
// ---------------------------------------------------------------------------

std::shared_ptr<FiniteGraph> FiniteGraph::complete(int n) {
    if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
    auto g = std::make_shared<FiniteGraph>();
    g->name_ = "K" + std::to_string(n);
    g->adjacency_.resize(n);
    g->side_.assign(n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) g->adjacency_[i].push_back(j);
    return g;
}

std::shared_ptr<FiniteGraph> FiniteGraph::complete_bipartite(int per_side) {
    if (per_side < 1) throw std::invalid_argument("complete bipartite graph needs n >= 1");
    auto g = std::make_shared<FiniteGraph>();
    g->name_ = "K" + std::to_string(per_side) + "," + std::to_string(per_side);
    int n = 2 * per_side;
    g->adjacency_.resize(n);
    g->side_.resize(n);
    for (int i = 0; i < n; ++i) g->side_[i] = i < per_side ? 0 : 1;
    for (int i = 0; i < per_side; ++i)
        for (int j = per_side; j < n; ++j) {
            g->adjacency_[i].push_back(j);
            g->adjacency_[j].push_back(i);
        }
    return g;
}

bool FiniteGraph::is_vertex(Vertex v) const {
    return v.y == 0 && v.x >= 0 && v.x < node_count();
}

std::vector<Vertex> FiniteGraph::neighbors(Vertex v) const {
    if (!is_vertex(v)) throw std::invalid_argument("malformed finite-graph vertex");
    std::vector<Vertex> out;
    for (int j : adjacency_[v.x]) out.push_back(Vertex{j, 0});
    return out;
}

int FiniteGraph::distance(Vertex u, Vertex v) const {
    if (!is_vertex(u) || !is_vertex(v)) throw std::invalid_argument("malformed finite-graph vertex");
    if (u == v) return 0;
    std::vector<int> dist(node_count(), -1);
    std::queue<int> q;
    dist[u.x] = 0;
    q.push(u.x);
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        for (int b : adjacency_[a]) {
            if (dist[b] >= 0) continue;
            dist[b] = dist[a] + 1;
            if (b == v.x) return dist[b];
            q.push(b);
        }
    }
    return -1;
}

std::string FiniteGraph::format(Vertex v) const { return "n" + std::to_string(v.x); }

Vertex FiniteGraph::parse(const std::string& s) const {
    if (s.size() < 2 || s[0] != 'n') throw std::invalid_argument("bad vertex string: " + s);
    return Vertex{std::stoi(s.substr(1)), 0};
}

int FiniteGraph::side_of(Vertex v) const { return side_.at(v.x); }

// ---------------------------------------------------------------------------
// Strawman algorithms.
// ---------------------------------------------------------------------------

namespace {

class GreedyDistanceReducer final : public Algorithm {
public:
    MoveOffer compute(const Configuration& config, Vertex at) const override {
        if (config.occupied.size() < 2) return nil_offer(at, "greedy");
        auto cost = [&](Vertex x) {
            long long c = 0;
            for (Vertex o : config.occupied)
                if (o != at) c += config.topology->distance(x, o);
            return c;
        };
        long long here = cost(at);
        long long best = here;
        std::vector<Vertex> dests;
        for (Vertex n : config.topology->neighbors(at)) {
            long long c = cost(n);
            if (c < best) {
                best = c;
                dests.clear();
            }
            if (c == best && c < here) dests.push_back(n);
        }
        if (dests.empty()) return nil_offer(at, "greedy");
        std::sort(dests.begin(), dests.end());
        return MoveOffer{std::move(dests), "greedy"};
    }
    std::string name() const override { return "strawman:greedy"; }
};

class MoveToOccupied final : public Algorithm {
public:
    MoveOffer compute(const Configuration& config, Vertex at) const override {
        std::vector<Vertex> dests;
        for (Vertex n : config.topology->neighbors(at))
            if (config.is_occupied(n)) dests.push_back(n);
        if (dests.empty() || config.occupied.size() == 1) return nil_offer(at, "to-occ");
        std::sort(dests.begin(), dests.end());
        return MoveOffer{std::move(dests), "to-occ"};
    }
    std::string name() const override { return "strawman:to-occupied"; }
};

class MoveToUnoccupied final : public Algorithm {
public:
    MoveOffer compute(const Configuration& config, Vertex at) const override {
        std::vector<Vertex> dests;
        for (Vertex n : config.topology->neighbors(at))
            if (!config.is_occupied(n)) dests.push_back(n);
        if (dests.empty() || config.occupied.size() == 1) return nil_offer(at, "to-unocc");
        std::sort(dests.begin(), dests.end());
        return MoveOffer{std::move(dests), "to-unocc"};
    }
    std::string name() const override { return "strawman:to-unoccupied"; }
};

// The strategy for one-side-occupied complete bipartite graphs: the first
// mover crosses, everyone else joins the unique occupied vertex across.
class AcrossBipartite final : public Algorithm {
public:
    explicit AcrossBipartite(std::shared_ptr<const FiniteGraph> graph)
        : graph_(std::move(graph)) {}

    MoveOffer compute(const Configuration& config, Vertex at) const override {
        if (config.occupied.size() == 1 && config.occupied.front() == at)
            return nil_offer(at, "across");
        int my_side = graph_->side_of(at);
        std::vector<Vertex> other_occ;
        for (Vertex o : config.occupied)
            if (graph_->side_of(o) != my_side) other_occ.push_back(o);
        if (other_occ.empty()) {
            std::vector<Vertex> dests = graph_->neighbors(at);
            std::sort(dests.begin(), dests.end());
            return MoveOffer{std::move(dests), "across"};
        }
        return MoveOffer{std::move(other_occ), "across"};
    }
    std::string name() const override { return "strawman:across-bipartite"; }

private:
    std::shared_ptr<const FiniteGraph> graph_;
};

}  // namespace

std::unique_ptr<Algorithm> make_strawman(const std::string& name,
                                         std::shared_ptr<const Topology> topology) {
    if (name == "greedy") return std::make_unique<GreedyDistanceReducer>();
    if (name == "to-occupied") return std::make_unique<MoveToOccupied>();
    if (name == "to-unoccupied") return std::make_unique<MoveToUnoccupied>();
    if (name == "across-bipartite") {
        auto fg = std::dynamic_pointer_cast<const FiniteGraph>(topology);
        if (!fg) throw std::invalid_argument("across-bipartite needs a finite bipartite graph");
        return std::make_unique<AcrossBipartite>(fg);
    }
    throw std::invalid_argument("unknown strawman: " + name);
}

std::vector<std::string> strawman_names() {
    return {"greedy", "to-occupied", "to-unoccupied", "across-bipartite"};
}

// ---------------------------------------------------------------------------
// Scenarios.
// ---------------------------------------------------------------------------

AdversaryScenario p2_scenario(std::shared_ptr<Topology> topology) {
    Vertex u, v;
    switch (topology->kind()) {
        case TopologyKind::hypercube:
            u = hc_vertex(0);
            v = hc_vertex(1);
            break;
        case TopologyKind::square_grid:
            u = Vertex{0, 0};
            v = Vertex{0, 1};
            break;
        case TopologyKind::finite_graph:
            u = Vertex{0, 0};
            v = topology->neighbors(u).front();
            break;
    }
    AdversaryScenario sc;
    sc.name = "p2";
    sc.topology = std::move(topology);
    sc.placement = Placement({u, v, u});
    sc.schedule = Schedule{{0, 1, 2}};
    sc.rationale = "two adjacent occupied vertices, hidden multiplicity at one; distance-reducing "
                   "moves recreate an isomorphic configuration forever";
    sc.expected = "recurrence";
    sc.algorithm_hint = "greedy";
    return sc;
}

AdversaryScenario full_graph_scenario() {
    auto cube = std::make_shared<Hypercube>(3);
    // Gray-code cycle through all 8 vertices; consecutive entries adjacent.
    std::vector<std::uint32_t> gray(8);
    for (std::uint32_t i = 0; i < 8; ++i) gray[i] = i ^ (i >> 1);

    std::vector<Vertex> robots;
    robots.push_back(hc_vertex(gray[0]));  // first activation on the doubled vertex
    for (int i = 1; i < 8; ++i) robots.push_back(hc_vertex(gray[i]));
    robots.push_back(hc_vertex(gray[0]));

    std::map<std::uint32_t, std::uint32_t> succ;
    for (int i = 0; i < 8; ++i) succ[gray[i]] = gray[(i + 1) % 8];

    AdversaryScenario sc;
    sc.name = "full-graph";
    sc.topology = cube;
    sc.placement = Placement(std::move(robots));
    sc.schedule = Schedule{{0, 1, 2, 3, 4, 5, 6, 7, 8}};
    sc.rationale = "fully occupied Q3 with one hidden doubled vertex; each activation chases the "
                   "previous destination along a fixed cycle";
    sc.expected = "recurrence";
    sc.algorithm_hint = "to-occupied";
    sc.resolver = [succ](const std::vector<Vertex>& offer, Vertex at) {
        Vertex want = hc_vertex(succ.at(hc_mask(at)));
        for (Vertex d : offer)
            if (d == want) return d;
        return offer.front();
    };
    sc.has_resolver = true;
    return sc;
}

std::vector<AdversaryScenario> clique_bipartite_scenarios(int n) {
    if (n < 3) throw std::invalid_argument("clique_bipartite_scenarios needs n >= 3");
    std::vector<AdversaryScenario> out;

    auto kn = FiniteGraph::complete(n);
    {
        AdversaryScenario sc;
        sc.name = "kn-occupied";
        sc.topology = kn;
        sc.placement = Placement({Vertex{0, 0}, Vertex{0, 0}, Vertex{1, 0}, Vertex{1, 0}});
        sc.schedule = Schedule{{0, 2, 1, 3}};
        sc.rationale = "multiplicity at each occupied vertex; moves toward occupied vertices "
                       "never empty a vertex";
        sc.expected = "recurrence";
        sc.algorithm_hint = "to-occupied";
        out.push_back(std::move(sc));
    }
    {
        AdversaryScenario sc;
        sc.name = "kn-unoccupied";
        sc.topology = kn;
        std::vector<Vertex> robots{Vertex{0, 0}, Vertex{0, 0}};
        for (int i = 1; i < n - 1; ++i) robots.push_back(Vertex{i, 0});
        Schedule sched;
        for (int i = 0; i < static_cast<int>(robots.size()); ++i) sched.order.push_back(i);
        sc.placement = Placement(std::move(robots));
        sc.schedule = sched;
        sc.rationale = "moves toward unoccupied vertices eventually occupy every vertex, an "
                       "ungatherable dead end";
        sc.expected = "recurrence";
        sc.algorithm_hint = "to-unoccupied";
        out.push_back(std::move(sc));
    }

    auto knn = FiniteGraph::complete_bipartite(n);
    {
        AdversaryScenario sc;
        sc.name = "knn-occupied";
        sc.topology = knn;
        sc.placement = Placement({Vertex{0, 0}, Vertex{0, 0}, Vertex{n, 0}, Vertex{n, 0}});
        sc.schedule = Schedule{{0, 2, 1, 3}};
        sc.rationale = "one occupied vertex per side with hidden multiplicities; cross moves "
                       "refill both sides";
        sc.expected = "recurrence";
        sc.algorithm_hint = "to-occupied";
        out.push_back(std::move(sc));
    }
    {
        AdversaryScenario sc;
        sc.name = "knn-unoccupied";
        sc.topology = knn;
        sc.placement = Placement({Vertex{0, 0}, Vertex{0, 0}, Vertex{n, 0}, Vertex{n, 0}});
        sc.schedule = Schedule{{0, 1, 2, 3}};
        sc.rationale = "occupancy spreads but can never contract to one vertex";
        sc.expected = "recurrence";
        sc.algorithm_hint = "to-unoccupied";
        out.push_back(std::move(sc));
    }
    {
        AdversaryScenario sc;
        sc.name = "knn-one-side";
        sc.topology = knn;
        sc.placement = Placement({Vertex{0, 0}, Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}});
        sc.schedule = Schedule{{0, 1, 2, 3}};
        sc.rationale = "all robots on one side form a nice star; crossing to a single vertex "
                       "gathers within the first epoch";
        sc.expected = "gathered";
        sc.algorithm_hint = "across-bipartite";
        out.push_back(std::move(sc));
    }
    return out;
}

AdversaryScenario p3_scenario(std::shared_ptr<Topology> topology, const std::string& selector) {
    AdversaryScenario sc;
    sc.name = "p3-" + selector;
    sc.topology = std::move(topology);
    if (selector == "hypercube") {
        Vertex end1 = hc_vertex(0), center = hc_vertex(1), end2 = hc_vertex(3);
        sc.placement = Placement({end1, center, center, end2});
        sc.expected = "rejected";
        sc.rationale = "every 3-vertex path on a hypercube is in the same automorphism class; "
                       "such configurations are excluded from the initial set";
    } else if (selector == "bent") {
        Vertex center{0, 0};
        sc.placement = Placement({center, center, Vertex{0, 1}, Vertex{1, 0}});
        sc.expected = "rejected";
        sc.rationale = "the bent 3-vertex path is the path class the grid algorithm generates "
                       "itself, so it is excluded from the initial set";
    } else if (selector == "straight") {
        Vertex center{0, 1};
        sc.placement = Placement({Vertex{0, 0}, center, center, Vertex{0, 2}});
        sc.expected = "gathered";
        sc.rationale = "the straight 3-vertex path is not associated to the grid algorithm and "
                       "remains gatherable";
    } else {
        throw std::invalid_argument("unknown p3 selector: " + selector);
    }
    Schedule sched;
    for (int i = 0; i < sc.placement.robot_count(); ++i) sched.order.push_back(i);
    sc.schedule = sched;
    sc.algorithm_hint = "";
    return sc;
}

// ---------------------------------------------------------------------------
// Non-termination prover.
// ---------------------------------------------------------------------------

bool replay_validates(const Topology& topology, const RecurrenceCertificate& cert) {
    std::vector<Vertex> pos = cert.state;
    for (const auto& [robot, dest] : cert.moves) {
        if (robot < 0 || robot >= static_cast<int>(pos.size())) return false;
        Vertex from = pos[robot];
        if (dest != from && topology.distance(from, dest) != 1) return false;
        pos[robot] = dest;
    }
    if (pos != cert.state) return false;
    return cert.loop_rounds() % static_cast<int>(pos.size()) == 0;
}

NonTermResult prove_nontermination(const AdversaryScenario& scenario,
                                   const Algorithm& algorithm, const Resolver& resolve,
                                   int horizon_epochs) {
    const Resolver& r = scenario.has_resolver ? scenario.resolver : resolve;
    NonTermResult result;
    result.trace = run(*scenario.topology, scenario.placement, scenario.schedule, algorithm, r,
                       horizon_epochs);
    switch (result.trace.verdict) {
        case Verdict::gathered:
            result.kind = NonTermResult::Kind::gathered;
            break;
        case Verdict::horizon_exhausted:
            result.kind = NonTermResult::Kind::inconclusive;
            break;
        case Verdict::recurrence_detected: {
            result.kind = NonTermResult::Kind::recurrence;
            const RecurrenceInfo& info = *result.trace.recurrence;
            RecurrenceCertificate cert;
            cert.state = info.state_positions;
            cert.schedule_position = info.schedule_position;
            cert.first_round = info.first_round;
            cert.repeat_round = info.repeat_round;
            for (int round = info.first_round; round < info.repeat_round; ++round) {
                const StepRecord& s = result.trace.steps.at(round - 1);
                cert.moves.emplace_back(s.robot, s.to);
            }
            result.certificate = std::move(cert);
            break;
        }
    }
    return result;
}

NiceStarCheck check_nice_star_necessity(const Topology& topology, const Trace& trace) {
    NiceStarCheck check;
    Configuration initial = configuration_of(topology, trace.initial);
    if (initial.occ() < 3 || trace.verdict != Verdict::gathered) return check;
    check.applicable = true;

    auto nice = [&](const std::vector<Vertex>& occ) {
        if (occ.size() < 2) return false;
        Configuration c{&topology, occ};
        return !nice_star_centers(c).empty();
    };
    if (nice(initial.occupied)) {
        check.pass = true;
        check.witness_round = 0;
        return check;
    }
    for (const StepRecord& s : trace.steps) {
        if (nice(s.occupied_after)) {
            check.pass = true;
            check.witness_round = s.round;
            return check;
        }
    }
    return check;
}

bool reduces_pair_distance(const Topology& topology, const Algorithm& algorithm, Vertex u, Vertex v) {
    std::vector<Vertex> occ{u, v};
    std::sort(occ.begin(), occ.end());
    Configuration config{&topology, occ};
    int d = topology.distance(u, v);
    for (Vertex at : occ) {
        Vertex other = at == occ.front() ? occ.back() : occ.front();
        MoveOffer offer = algorithm.compute(config, at);
        if (offer.is_nil(at)) return false;
        for (Vertex dest : offer.destinations)
            if (topology.distance(dest, other) >= d) return false;
    }
    return true;
}

}  // namespace rrgather::adv
