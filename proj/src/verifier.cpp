#include "rrgather/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace rrgather::verify {

namespace {

struct StateKey {
    std::vector<Vertex> positions;
    int spos = 0;

    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        return PositionsHash{}(k.positions) * 31u + static_cast<std::size_t>(k.spos);
    }
};

std::string config_label(SweepSpec::Target target, const Configuration& config) {
    if (config.occ() == 1) return "G";
    if (target == SweepSpec::Target::hypercube) {
        const auto& cube = static_cast<const Hypercube&>(*config.topology);
        return hyper::to_string(hyper::classify_h(cube.dim(), hc::mask_of(config.occupied)).task);
    }
    return st::to_string(st::classify_st(config.occupied).task);
}

int bound_proxy(SweepSpec::Target target, const Configuration& config) {
    if (target == SweepSpec::Target::hypercube) {
        const auto& cube = static_cast<const Hypercube&>(*config.topology);
        return hc::mbh(cube.dim(), hc::mask_of(config.occupied)).dim();
    }
    return 0;
}

struct NodeResult {
    int max_rounds = 0;
    int min_rounds = 0;
    bool nice_covered = false;
};

// H3-style safety: executed moves never grow the bounding structure outside
// the sanctioned tasks and never generate a provably unsolvable configuration
// outside the endgame that consumes it.
std::optional<std::string> structural_violation(SweepSpec::Target target,
                                                const std::string& task,
                                                const Configuration& pre,
                                                const Configuration& post) {
    if (target == SweepSpec::Target::hypercube) {
        const auto& cube = static_cast<const Hypercube&>(*pre.topology);
        int b_pre = hc::mbh(cube.dim(), hc::mask_of(pre.occupied)).dim();
        int b_post = hc::mbh(cube.dim(), hc::mask_of(post.occupied)).dim();
        if (b_post > b_pre && task != "T8" && task != "T1")
            return "bounding cube grew during " + task;
        if (post.occ() == (1 << b_post) && b_post > 3)
            return "generated a fully occupied bounding cube of dimension " +
                   std::to_string(b_post);
        auto w = hyper::uh_witness(cube.dim(), hc::mask_of(post.occupied));
        if (w.ungatherable() && task != "T1")
            return std::string("generated U_H member ") + hyper::to_string(w.kind) +
                   " during " + task;
    } else {
        grid::Rectangle rp = grid::mbr(pre.occupied);
        grid::Rectangle rq = grid::mbr(post.occupied);
        if ((rq.long_side() > rp.long_side() || rq.short_side() > rp.short_side()) &&
            task != "T1")
            return "bounding rectangle grew during " + task;
        auto w = st::ust_witness(post.occupied);
        if (w.ungatherable() && task != "T4")
            return std::string("generated U_ST member ") + st::to_string(w.kind) +
                   " during " + task;
    }
    return std::nullopt;
}

// Depth-first exploration of every resolver branch with memoized states.
// Returns nullopt after recording the first violation.
class AdversarialChecker {
public:
    AdversarialChecker(const Topology& topology, const Algorithm& algorithm,
                       SweepSpec::Target target, const Schedule& schedule, int horizon_rounds,
                       SweepReport& report)
        : topology_(topology),
          algorithm_(algorithm),
          target_(target),
          schedule_(schedule),
          horizon_rounds_(horizon_rounds),
          report_(report) {}

    std::optional<NodeResult> check(std::vector<Vertex> positions, int round,
                                    std::string* violation) {
        Configuration config;
        config.topology = &topology_;
        config.occupied = positions;
        std::sort(config.occupied.begin(), config.occupied.end());
        config.occupied.erase(std::unique(config.occupied.begin(), config.occupied.end()),
                              config.occupied.end());
        if (config.occ() == 1) return NodeResult{0, 0, false};

        if (round > horizon_rounds_) {
            *violation = "horizon exhausted at round " + std::to_string(round);
            return std::nullopt;
        }
        const int k = schedule_.robots();
        StateKey key{positions, (round - 1) % k};
        if (on_path_.count(key)) {
            *violation = "adversarial recurrence: state of round " + std::to_string(round) +
                         " already on the activation path";
            return std::nullopt;
        }
        auto memo_it = memo_.find(key);
        if (memo_it != memo_.end()) {
            if (round - 1 + memo_it->second.max_rounds > horizon_rounds_) {
                *violation = "horizon exhausted through memoized state";
                return std::nullopt;
            }
            return memo_it->second;
        }

        on_path_.insert(key);
        ++report_.states_explored;

        int robot = schedule_.active_robot(round);
        Vertex at = positions[robot];
        MoveOffer offer = algorithm_.compute(config, at);
        bool nice_here = !nice_star_centers(config).empty();

        NodeResult agg{0, INT_MAX, true};
        for (Vertex dest : offer.destinations) {
            std::vector<Vertex> next = positions;
            next[robot] = dest;
            if (dest != at) {
                Configuration post;
                post.topology = &topology_;
                post.occupied = next;
                std::sort(post.occupied.begin(), post.occupied.end());
                post.occupied.erase(std::unique(post.occupied.begin(), post.occupied.end()),
                                    post.occupied.end());
                TransitionPair pair;
                pair.from = offer.task;
                pair.to = config_label(target_, post);
                pair.shrunk = target_ == SweepSpec::Target::hypercube &&
                              bound_proxy(target_, post) < bound_proxy(target_, config);
                report_.observed_pairs.insert(pair);
                if (auto bad = structural_violation(target_, offer.task, config, post)) {
                    *violation = *bad;
                    on_path_.erase(key);
                    return std::nullopt;
                }
            }
            auto child = check(std::move(next), round + 1, violation);
            if (!child) {
                on_path_.erase(key);
                return std::nullopt;
            }
            agg.max_rounds = std::max(agg.max_rounds, 1 + child->max_rounds);
            agg.min_rounds = std::min(agg.min_rounds, 1 + child->min_rounds);
            agg.nice_covered = agg.nice_covered && child->nice_covered;
        }
        agg.nice_covered = nice_here || agg.nice_covered;

        on_path_.erase(key);
        memo_.emplace(std::move(key), agg);
        return agg;
    }

private:
    const Topology& topology_;
    const Algorithm& algorithm_;
    SweepSpec::Target target_;
    const Schedule& schedule_;
    int horizon_rounds_;
    SweepReport& report_;
    std::unordered_map<StateKey, NodeResult, StateKeyHash> memo_;
    std::unordered_set<StateKey, StateKeyHash> on_path_;
};

std::set<TransitionPair> extract_pairs(const Topology& topology, const Trace& trace,
                                       SweepSpec::Target target) {
    std::set<TransitionPair> pairs;
    for (const StepRecord& s : trace.steps) {
        if (!s.executed) continue;
        Configuration post{&topology, s.occupied_after};
        Configuration pre{&topology, s.occupied_before};
        TransitionPair pair;
        pair.from = s.task;
        pair.to = config_label(target, post);
        pair.shrunk = target == SweepSpec::Target::hypercube &&
                      bound_proxy(target, post) < bound_proxy(target, pre);
        pairs.insert(pair);
    }
    return pairs;
}

std::vector<Vertex> domain_vertices(const SweepSpec& spec) {
    std::vector<Vertex> out;
    if (spec.target == SweepSpec::Target::hypercube) {
        for (std::uint32_t v = 0; v < (1u << spec.dim); ++v) out.push_back(hc_vertex(v));
    } else {
        for (int y = 0; y < spec.rows_cap; ++y)
            for (int x = 0; x < spec.cols_cap; ++x) out.push_back(Vertex{x, y});
    }
    return out;
}

bool anchored(const std::vector<Vertex>& robots) {
    int min_x = INT_MAX, min_y = INT_MAX;
    for (Vertex v : robots) {
        min_x = std::min(min_x, v.x);
        min_y = std::min(min_y, v.y);
    }
    return min_x == 0 && min_y == 0;
}

// Valid initial configuration or a U-set rejection.
bool valid_initial(const SweepSpec& spec, const Configuration& config) {
    if (config.occ() < 2) return false;
    if (spec.target == SweepSpec::Target::hypercube) {
        return !hyper::uh_witness(spec.dim, hc::mask_of(config.occupied)).ungatherable();
    }
    return !st::ust_witness(config.occupied).ungatherable();
}

void for_each_exhaustive_placement(const SweepSpec& spec,
                                   const std::function<void(const Placement&)>& fn) {
    std::vector<Vertex> domain = domain_vertices(spec);
    std::vector<Vertex> robots;
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t idx, int remaining,
                                                         int run_len) {
        if (remaining == 0) {
            if (spec.target == SweepSpec::Target::grid && !anchored(robots)) return;
            fn(Placement(robots));
            return;
        }
        if (idx >= domain.size()) return;
        rec(idx + 1, remaining, 0);
        if (run_len < spec.per_vertex_cap) {
            robots.push_back(domain[idx]);
            rec(idx, remaining - 1, run_len + 1);
            robots.pop_back();
        }
    };
    for (int k = spec.k_min; k <= spec.k_max; ++k) rec(0, k, 0);
}

std::vector<Schedule> schedules_for(const SweepSpec& spec, const Placement& placement,
                                    std::mt19937_64& rng) {
    const int k = placement.robot_count();
    std::vector<Schedule> out;
    switch (spec.schedules) {
        case SweepSpec::Schedules::canonical:
            out.push_back(Schedule::canonical(k));
            break;
        case SweepSpec::Schedules::sampled: {
            std::vector<int> order(k);
            for (int i = 0; i < k; ++i) order[i] = i;
            for (int s = 0; s < spec.schedule_samples; ++s) {
                std::vector<int> o = order;
                std::shuffle(o.begin(), o.end(), rng);
                out.push_back(Schedule{o});
            }
            break;
        }
        case SweepSpec::Schedules::all: {
            // permutations of identical robots on the same vertex are redundant
            std::set<std::vector<Vertex>> seen_sequences;
            std::vector<int> order(k);
            for (int i = 0; i < k; ++i) order[i] = i;
            do {
                std::vector<Vertex> seq;
                seq.reserve(k);
                for (int i : order) seq.push_back(placement.position(i));
                if (seen_sequences.insert(seq).second) out.push_back(Schedule{order});
            } while (std::next_permutation(order.begin(), order.end()));
            break;
        }
    }
    return out;
}

}  // namespace

namespace {

struct WorkItem {
    Placement placement;
    std::vector<Schedule> schedules;
};

// Everything one placement contributes to the report; merged in enumeration
// order so worker count never changes the result.
struct PlacementResult {
    long long instances = 0;
    long long gathered = 0;
    long long states_explored = 0;
    int max_epochs = 0;
    double max_ratio = 0.0;
    std::set<TransitionPair> observed_pairs;
    std::vector<Violation> violations;
};

PlacementResult check_placement(const SweepSpec& spec, const Topology& topology,
                                const Algorithm& algorithm, const WorkItem& item) {
    PlacementResult out;
    SweepReport scratch;  // observed pairs / state counter sink for the checker
    Configuration initial = configuration_of(topology, item.placement);
    const int k = item.placement.robot_count();
    const int lower = epochs_lower_bound(initial);
    double denom = spec.target == SweepSpec::Target::hypercube
                       ? spec.dim
                       : grid::mbr(initial.occupied).rows() + grid::mbr(initial.occupied).cols();

    for (const Schedule& schedule : item.schedules) {
        ++out.instances;
        int max_epochs = 0, min_epochs = 0;
        bool nice_covered = false;

        if (spec.resolver == SweepSpec::Resolve::adversarial) {
            AdversarialChecker checker(topology, algorithm, spec.target, schedule,
                                       spec.horizon_epochs * k, scratch);
            std::string why;
            auto result = checker.check(item.placement.positions(), 1, &why);
            if (!result) {
                out.violations.push_back(
                    Violation{"non-gathered", why, item.placement, schedule});
                continue;
            }
            max_epochs = (result->max_rounds + k - 1) / k;
            min_epochs = (result->min_rounds + k - 1) / k;
            nice_covered = result->nice_covered;
        } else {
            Trace trace = run(topology, item.placement, schedule, algorithm,
                              canonical_resolver(), spec.horizon_epochs);
            if (trace.verdict != Verdict::gathered) {
                out.violations.push_back(Violation{
                    "non-gathered",
                    trace.verdict == Verdict::recurrence_detected ? "recurrence" : "horizon",
                    item.placement, schedule});
                continue;
            }
            auto pairs = extract_pairs(topology, trace, spec.target);
            scratch.observed_pairs.insert(pairs.begin(), pairs.end());
            bool structurally_sound = true;
            for (const StepRecord& s : trace.steps) {
                if (!s.executed) continue;
                Configuration pre{&topology, s.occupied_before};
                Configuration post{&topology, s.occupied_after};
                if (auto bad = structural_violation(spec.target, s.task, pre, post)) {
                    out.violations.push_back(
                        Violation{"structural", *bad, item.placement, schedule});
                    structurally_sound = false;
                    break;
                }
            }
            if (!structurally_sound) continue;
            max_epochs = min_epochs = trace.epochs_used;
            adv::NiceStarCheck nc = adv::check_nice_star_necessity(topology, trace);
            nice_covered = nc.applicable ? nc.pass : true;
        }

        ++out.gathered;
        out.max_epochs = std::max(out.max_epochs, max_epochs);
        out.max_ratio = std::max(out.max_ratio, static_cast<double>(max_epochs) / denom);
        if (min_epochs < lower)
            out.violations.push_back(Violation{
                "lower-bound",
                "gathered in " + std::to_string(min_epochs) + " epochs, bound " +
                    std::to_string(lower),
                item.placement, schedule});
        if (initial.occ() >= 3 && !nice_covered)
            out.violations.push_back(Violation{"nice-star",
                                               "a gathered branch never met a nice-star "
                                               "configuration",
                                               item.placement, schedule});
    }
    out.observed_pairs = std::move(scratch.observed_pairs);
    out.states_explored = scratch.states_explored;
    return out;
}

}  // namespace

SweepReport sweep(const SweepSpec& spec) {
    if (spec.horizon_epochs < 1) throw std::invalid_argument("sweep horizon must be >= 1 epoch");
    if (spec.placements == SweepSpec::Placements::exhaustive) {
        // multisets of size k over |V| vertices, times the schedule fan-out
        double domain = spec.target == SweepSpec::Target::hypercube
                            ? static_cast<double>(1u << spec.dim)
                            : static_cast<double>(spec.rows_cap) * spec.cols_cap;
        double items = 0;
        for (int k = spec.k_min; k <= spec.k_max; ++k) {
            double multisets = 1;
            for (int i = 0; i < k; ++i) multisets = multisets * (domain + i) / (i + 1);
            double fanout = 1;
            if (spec.schedules == SweepSpec::Schedules::all)
                for (int i = 2; i <= k; ++i) fanout *= i;
            else if (spec.schedules == SweepSpec::Schedules::sampled)
                fanout = spec.schedule_samples;
            items += multisets * fanout;
        }
        if (items > 5e6)
            throw std::invalid_argument(
                "exhaustive sweep would enumerate about " + std::to_string(items) +
                " instances; shrink the instance or switch to random placements");
    }

    SweepReport report;
    std::shared_ptr<Topology> topology;
    std::unique_ptr<Algorithm> algorithm;
    if (spec.target == SweepSpec::Target::hypercube) {
        auto cube = std::make_shared<Hypercube>(spec.dim);
        algorithm = std::make_unique<hyper::HypercubeGatherer>(*cube);
        topology = cube;
    } else {
        topology = std::make_shared<SquareGrid>();
        algorithm = std::make_unique<st::GridGatherer>();
    }
    std::mt19937_64 rng(spec.seed);

    // Phase 1: enumerate work items sequentially (keeps seeding deterministic).
    std::vector<WorkItem> work;
    auto consider_placement = [&](const Placement& placement) {
        ++report.placements_enumerated;
        Configuration config = configuration_of(*topology, placement);
        if (!valid_initial(spec, config)) {
            ++report.rejected_initials;
            return;
        }
        work.push_back(WorkItem{placement, schedules_for(spec, placement, rng)});
    };

    if (spec.placements == SweepSpec::Placements::exhaustive) {
        for_each_exhaustive_placement(spec, consider_placement);
    } else {
        std::vector<Vertex> domain = domain_vertices(spec);
        long long accepted = 0;
        while (accepted < spec.random_samples) {
            int k = spec.k_min +
                    static_cast<int>(rng() % static_cast<std::uint64_t>(spec.k_max - spec.k_min + 1));
            std::vector<Vertex> robots;
            for (int i = 0; i < k; ++i) robots.push_back(domain[rng() % domain.size()]);
            if (spec.target == SweepSpec::Target::grid) {
                int min_x = INT_MAX, min_y = INT_MAX;
                for (Vertex v : robots) {
                    min_x = std::min(min_x, v.x);
                    min_y = std::min(min_y, v.y);
                }
                for (Vertex& v : robots) {
                    v.x -= min_x;
                    v.y -= min_y;
                }
            }
            std::map<Vertex, int> counts;
            bool capped = false;
            for (Vertex v : robots)
                if (++counts[v] > spec.per_vertex_cap) capped = true;
            if (capped) continue;
            Placement placement(robots);
            ++report.placements_enumerated;
            Configuration config = configuration_of(*topology, placement);
            if (!valid_initial(spec, config)) {
                ++report.rejected_initials;
                continue;
            }
            ++accepted;
            work.push_back(WorkItem{placement, schedules_for(spec, placement, rng)});
        }
    }

    // Phase 2: check placements, optionally in parallel; merge in order.
    std::vector<PlacementResult> results(work.size());
    int workers = std::max(1, spec.workers);
    if (workers == 1 || work.size() < 2) {
        for (std::size_t i = 0; i < work.size(); ++i)
            results[i] = check_placement(spec, *topology, *algorithm, work[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= work.size()) return;
                results[i] = check_placement(spec, *topology, *algorithm, work[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const PlacementResult& r : results) {
        report.instances += r.instances;
        report.gathered += r.gathered;
        report.states_explored += r.states_explored;
        report.max_epochs = std::max(report.max_epochs, r.max_epochs);
        report.max_ratio = std::max(report.max_ratio, r.max_ratio);
        report.observed_pairs.insert(r.observed_pairs.begin(), r.observed_pairs.end());
        report.violations.insert(report.violations.end(), r.violations.begin(),
                                 r.violations.end());
    }
    return report;
}

// ---------------------------------------------------------------------------
// Expected transition tables.
// ---------------------------------------------------------------------------

namespace {

const std::map<std::string, std::set<std::string>>& hyper_rows() {
    static const std::map<std::string, std::set<std::string>> rows = {
        {"T1", {"T1", "G"}},
        {"T2", {"T2", "T5i", "T5ii", "T5iii"}},
        {"T3", {"T2", "T3", "T4", "T5i", "T5ii", "T5iii"}},
        {"T4", {"T2", "T4", "T5i", "T5ii", "T5iii"}},
        {"T5i", {"T5i", "T5ii"}},
        {"T5ii", {"T2", "T5iii"}},
        {"T5iii", {"T2", "T5iii"}},
        {"T6", {"T2", "T3", "T4", "T5i", "T5ii", "T5iii"}},
        {"T7", {"T2", "T3", "T4", "T5i", "T5ii", "T5iii", "T6"}},
        {"T8", {"T5i", "T5ii"}},
    };
    return rows;
}

// Rows whose moves can shrink the bounding cube; a shrink re-enters the task
// tree anywhere.
const std::set<std::string>& hyper_shrink_rows() {
    static const std::set<std::string> rows = {"T2", "T3", "T4", "T6"};
    return rows;
}

const std::map<std::string, std::set<std::string>>& grid_rows() {
    static const std::map<std::string, std::set<std::string>> rows = {
        {"T1", {"T2", "T3"}},
        {"T2", {"T2", "T3"}},
        {"T3", {"T3", "T4"}},
        {"T4", {"T4", "G"}},
    };
    return rows;
}

}  // namespace

const std::map<std::string, std::set<std::string>>& hyper_transition_rows() {
    return hyper_rows();
}

const std::map<std::string, std::set<std::string>>& grid_transition_rows() {
    return grid_rows();
}

bool hyper_pair_allowed(const TransitionPair& p) {
    if (p.shrunk && hyper_shrink_rows().count(p.from)) return true;
    auto it = hyper_rows().find(p.from);
    return it != hyper_rows().end() && it->second.count(p.to) > 0;
}

bool grid_pair_allowed(const TransitionPair& p) {
    auto it = grid_rows().find(p.from);
    return it != grid_rows().end() && it->second.count(p.to) > 0;
}

bool pairs_conform(const std::set<TransitionPair>& pairs, SweepSpec::Target target,
                   std::string* offending) {
    for (const TransitionPair& p : pairs) {
        bool ok = target == SweepSpec::Target::hypercube ? hyper_pair_allowed(p)
                                                         : grid_pair_allowed(p);
        if (!ok) {
            if (offending)
                *offending = p.from + " -> " + p.to + (p.shrunk ? " (shrunk)" : "");
            return false;
        }
    }
    return true;
}

std::vector<std::vector<std::string>> task_cycles(const std::set<TransitionPair>& pairs) {
    std::map<std::string, std::set<std::string>> adj;
    for (const TransitionPair& p : pairs) {
        if (p.shrunk || p.from == p.to || p.to == "G") continue;
        adj[p.from].insert(p.to);
    }
    std::set<std::vector<std::string>> cycles;
    std::vector<std::string> nodes;
    for (const auto& [n, _] : adj) nodes.push_back(n);

    std::vector<std::string> path;
    std::set<std::string> on_path;
    std::function<void(const std::string&, const std::string&)> dfs =
        [&](const std::string& start, const std::string& node) {
            auto it = adj.find(node);
            if (it == adj.end()) return;
            for (const std::string& next : it->second) {
                if (next == start) {
                    // rotate so the lexicographically smallest label leads
                    std::vector<std::string> cycle = path;
                    auto min_it = std::min_element(cycle.begin(), cycle.end());
                    std::rotate(cycle.begin(), min_it, cycle.end());
                    cycles.insert(cycle);
                    continue;
                }
                if (next < start || on_path.count(next)) continue;
                path.push_back(next);
                on_path.insert(next);
                dfs(start, next);
                on_path.erase(next);
                path.pop_back();
            }
        };
    for (const std::string& start : nodes) {
        path = {start};
        on_path = {start};
        dfs(start, start);
    }
    return {cycles.begin(), cycles.end()};
}

const std::vector<std::vector<std::string>>& allowed_hyper_cycles() {
    static const std::vector<std::vector<std::string>> cycles = {
        {"T2", "T5i", "T5ii"},
        {"T2", "T5ii"},
        {"T2", "T5ii", "T5iii"},
        {"T2", "T5iii"},
    };
    return cycles;
}

bool cycle_sanctioned(const std::vector<std::string>& cycle) {
    static const std::set<std::pair<std::string, std::string>> edges = [] {
        std::set<std::pair<std::string, std::string>> e;
        for (const auto& c : allowed_hyper_cycles())
            for (std::size_t i = 0; i < c.size(); ++i)
                e.insert({c[i], c[(i + 1) % c.size()]});
        return e;
    }();
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!edges.count({cycle[i], cycle[(i + 1) % cycle.size()]})) return false;
    return true;
}

TransitionCheck check_transitions(const Topology& topology, const Trace& trace,
                                  SweepSpec::Target target) {
    TransitionCheck check;
    for (const TransitionPair& p : extract_pairs(topology, trace, target)) {
        bool ok = target == SweepSpec::Target::hypercube ? hyper_pair_allowed(p)
                                                         : grid_pair_allowed(p);
        if (!ok) {
            check.pass = false;
            check.offending = p;
            return check;
        }
    }
    return check;
}

bool check_lower_bound(const Topology& topology, const Trace& trace) {
    if (trace.verdict != Verdict::gathered) return false;
    Configuration initial = configuration_of(topology, trace.initial);
    return trace.epochs_used >= epochs_lower_bound(initial);
}

// ---------------------------------------------------------------------------
// Table certification.
// ---------------------------------------------------------------------------

bool TableCertificateReport::all_pass() const {
    for (const ClauseReport& c : clauses)
        if (!c.pass) return false;
    return true;
}

namespace {

void add_clause(TableCertificateReport& report, const std::string& name, bool pass,
                std::string detail) {
    report.clauses.push_back(ClauseReport{name, pass, std::move(detail)});
}

bool acyclic_keys(const std::map<std::uint64_t, std::set<std::uint64_t>>& edges,
                  std::uint64_t* cycle_node) {
    std::map<std::uint64_t, int> color;
    std::function<bool(std::uint64_t)> visit = [&](std::uint64_t n) -> bool {
        color[n] = 1;
        auto it = edges.find(n);
        if (it != edges.end()) {
            for (std::uint64_t nx : it->second) {
                int c = color.count(nx) ? color[nx] : 0;
                if (c == 1) {
                    *cycle_node = nx;
                    return false;
                }
                if (c == 0 && !visit(nx)) return false;
            }
        }
        color[n] = 2;
        return true;
    };
    for (const auto& [n, _] : edges)
        if ((color.count(n) ? color[n] : 0) == 0 && !visit(n)) return false;
    return true;
}

int longest_path_keys(const std::map<std::uint64_t, std::set<std::uint64_t>>& edges) {
    std::map<std::uint64_t, int> depth;
    std::function<int(std::uint64_t)> go = [&](std::uint64_t n) -> int {
        auto it = depth.find(n);
        if (it != depth.end()) return it->second;
        int best = 0;
        auto e = edges.find(n);
        if (e != edges.end())
            for (std::uint64_t nx : e->second) best = std::max(best, 1 + go(nx));
        depth[n] = best;
        return best;
    };
    int best = 0;
    for (const auto& [n, _] : edges) best = std::max(best, go(n));
    return best;
}

// Exhaustive one-epoch gathering check from the distance-2 pair, all hidden
// multiplicities up to 3 per vertex, all activation orders, all branches.
bool verify_pair22_epoch(const hyper::Q3MoveTable& table, std::string* detail) {
    std::uint64_t key = hyper::q3_distance2_pair_key();
    auto u = static_cast<std::uint32_t>(std::countr_zero(key));
    auto v = static_cast<std::uint32_t>(std::countr_zero(key & (key - 1)));
    for (int k = 2; k <= 4; ++k) {
        for (int a = 1; a < k; ++a) {
            if (a > 3 || k - a > 3) continue;
            std::vector<std::uint32_t> robots(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) robots[i] = i < a ? u : v;
            std::vector<int> perm(k);
            for (int i = 0; i < k; ++i) perm[i] = i;
            do {
                std::function<bool(std::vector<std::uint32_t>, int)> go =
                    [&](std::vector<std::uint32_t> pos, int round) -> bool {
                    hc::OccMask occ = 0;
                    for (auto p : pos) occ |= hc::bit_of(p);
                    if (std::popcount(occ) == 1) return true;
                    if (round > k) return false;
                    std::uint32_t at = pos[perm[round - 1]];
                    std::vector<Vertex> offer =
                        hyper::t1_offer(table, 3, occ, hc_vertex(at));
                    if (offer.empty()) offer.push_back(hc_vertex(at));
                    for (Vertex d : offer) {
                        auto next = pos;
                        next[perm[round - 1]] = hc_mask(d);
                        if (!go(std::move(next), round + 1)) return false;
                    }
                    return true;
                };
                if (!go(robots, 1)) {
                    *detail = "a placement over the distance-2 pair missed the one-epoch gather";
                    return false;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    return true;
}

}  // namespace

TableCertificateReport certify_q3_table(const hyper::Q3MoveTable& table) {
    TableCertificateReport report;
    const std::uint64_t k_gathered = hyper::q3_gathered_key();
    const std::uint64_t k_p2 = hyper::q3_adjacent_pair_key();
    const std::uint64_t k_22 = hyper::q3_distance2_pair_key();
    const std::uint64_t k_p3 = hyper::q3_path3_key();
    const std::uint64_t k_full = hyper::q3_full_key();

    // totality and well-formedness
    bool total = true;
    std::string total_detail;
    std::set<std::uint64_t> keys;
    for (hc::OccMask m = 1; m <= 0xFF && total; ++m) {
        std::uint64_t key = hc::hc_canonical(3, m);
        keys.insert(key);
        auto it = table.entries.find(key);
        if (it == table.entries.end()) {
            total = false;
            total_detail = "missing class " + std::to_string(key);
            break;
        }
        const hyper::Q3TableEntry& e = it->second;
        int occ = std::popcount(key);
        if (occ == 1 && e.kind != hyper::Q3TableEntry::Kind::nil_move) total = false;
        if (key == k_full && e.kind != hyper::Q3TableEntry::Kind::exit_move) total = false;
        if (occ > 1 && key != k_full) {
            if (e.kind != hyper::Q3TableEntry::Kind::pair_move || e.pairs.empty()) {
                total = false;
                total_detail = "class " + std::to_string(key) + " lacks a move";
            }
            for (const auto& [src, dst] : e.pairs) {
                if (!(key & hc::bit_of(src)) || std::popcount(std::uint32_t(src ^ dst)) != 1) {
                    total = false;
                    total_detail = "malformed pair in class " + std::to_string(key);
                }
            }
            // stabilizer closure keeps the offer equivariant
            std::set<std::pair<std::uint8_t, std::uint8_t>> pair_set(e.pairs.begin(),
                                                                     e.pairs.end());
            for (const auto& g : hc::hc_group(3)) {
                if (g.apply_mask(key) != key) continue;
                for (const auto& [src, dst] : e.pairs) {
                    if (!pair_set.count({static_cast<std::uint8_t>(g.apply(src)),
                                         static_cast<std::uint8_t>(g.apply(dst))})) {
                        total = false;
                        total_detail = "pairs of class " + std::to_string(key) +
                                       " are not stabilizer-closed";
                    }
                }
            }
        }
    }
    add_clause(report, "totality", total, total_detail);

    // self-loops must drain: movers may not be refilled by moves onto
    // occupied vertices (adjacent pair excepted, consumed in the 2.2 endgame)
    bool draining = true;
    std::string drain_detail;
    for (const auto& [key, entry] : table.entries) {
        if (entry.kind != hyper::Q3TableEntry::Kind::pair_move || key == k_p2) continue;
        for (const auto& [s1, d1] : entry.pairs) {
            if (!(key & hc::bit_of(d1))) continue;
            for (const auto& [s2, d2] : entry.pairs) {
                if (s2 == d1) {
                    draining = false;
                    drain_detail = "class " + std::to_string(key) + " feeds its own movers";
                }
            }
        }
    }
    add_clause(report, "self-loops-drain", draining, drain_detail);

    // successor structure
    std::map<std::uint64_t, std::set<std::uint64_t>> edges;
    bool monotone = true, discipline = true;
    std::string mono_detail, disc_detail;
    for (const auto& [key, entry] : table.entries) {
        if (entry.kind != hyper::Q3TableEntry::Kind::pair_move) continue;
        int occ = std::popcount(key);
        for (const auto& [src, dst] : entry.pairs) {
            hc::OccMask solid = (key & ~hc::bit_of(src)) | hc::bit_of(dst);
            hc::OccMask dashed = key | hc::bit_of(dst);
            std::uint64_t solid_key = hc::hc_canonical(3, solid);
            std::uint64_t dashed_key = hc::hc_canonical(3, dashed);
            if (std::popcount(solid) > occ || solid_key == key) {
                monotone = false;
                mono_detail = "solid transition fails to make progress from class " +
                              std::to_string(key);
            }
            if (std::popcount(dashed) > occ + 1) monotone = false;
            for (std::uint64_t succ : {solid_key, dashed_key}) {
                if (succ == key) continue;
                edges[key].insert(succ);
                if (succ == k_full ||
                    (succ == k_p2 && key != k_22 && key != k_p3) ||
                    (succ == k_p3 && key != k_22)) {
                    discipline = false;
                    disc_detail = "class " + std::to_string(key) +
                                  " generates an ungatherable class outside the 2.2 endgame";
                }
            }
        }
    }
    add_clause(report, "occ-monotonicity", monotone, mono_detail);
    add_clause(report, "uh-discipline", discipline, disc_detail);

    std::uint64_t cycle_node = 0;
    bool acyclic = acyclic_keys(edges, &cycle_node);
    add_clause(report, "acyclicity", acyclic,
               acyclic ? "" : "cycle through class " + std::to_string(cycle_node));

    int depth = acyclic ? longest_path_keys(edges) : -1;
    add_clause(report, "depth<=9", acyclic && depth <= 9,
               "longest class path " + std::to_string(depth));

    bool reach = true;
    std::string reach_detail;
    if (acyclic) {
        for (std::uint64_t key : keys) {
            if (key == k_full || std::popcount(key) == 1) continue;
            std::set<std::uint64_t> visited;
            std::vector<std::uint64_t> stack{key};
            bool ok = false;
            while (!stack.empty() && !ok) {
                std::uint64_t n = stack.back();
                stack.pop_back();
                if (!visited.insert(n).second) continue;
                if (n == k_gathered) ok = true;
                auto it = edges.find(n);
                if (it != edges.end())
                    for (std::uint64_t nx : it->second) stack.push_back(nx);
            }
            if (!ok) {
                reach = false;
                reach_detail = "class " + std::to_string(key) + " cannot reach gathering";
                break;
            }
        }
    } else {
        reach = false;
    }
    add_clause(report, "gathering-reachable", reach, reach_detail);

    std::string epoch_detail;
    bool epoch_ok = total && verify_pair22_epoch(table, &epoch_detail);
    add_clause(report, "pair22-one-epoch", epoch_ok, epoch_detail);
    return report;
}

TableCertificateReport certify_grid32_table(const st::Grid32Table& table) {
    TableCertificateReport report;
    const grid::PatternKey terminal = st::diagonal_22_key();

    auto is_t3 = [](const std::vector<Vertex>& pat) {
        if (pat.size() < 2) return false;
        grid::Rectangle box = grid::mbr(pat);
        if (!(box.long_side() == 3 && box.short_side() == 2)) return false;
        int occupied_corners = 0;
        for (Vertex c : box.corners())
            occupied_corners += std::binary_search(pat.begin(), pat.end(), c) ? 1 : 0;
        return occupied_corners < 4;
    };
    auto is_diag = [&](const std::vector<Vertex>& pat) {
        return pat.size() == 2 && grid::grid_canonical(pat) == terminal;
    };

    // enumerate the task's domain
    std::set<grid::PatternKey> keys;
    for (std::uint32_t mask = 1; mask < (1u << 6); ++mask) {
        std::vector<Vertex> pat;
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 2; ++x)
                if (mask & (1u << (x + 2 * y))) pat.push_back(Vertex{x, y});
        std::sort(pat.begin(), pat.end());
        if (!is_t3(pat)) continue;
        keys.insert(grid::grid_canonical(pat));
    }

    bool total = true;
    std::string total_detail;
    for (const grid::PatternKey& key : keys) {
        auto it = table.entries.find(key);
        if (it == table.entries.end() || it->second.pairs.empty()) {
            total = false;
            total_detail = "missing class";
            break;
        }
    }
    add_clause(report, "totality", total, total_detail);

    bool draining = true;
    std::string drain_detail;
    for (const auto& [key, entry] : table.entries) {
        std::vector<Vertex> pat = grid::pattern_vertices(key);
        std::sort(pat.begin(), pat.end());
        for (const auto& [s1, d1] : entry.pairs) {
            if (!std::binary_search(pat.begin(), pat.end(), d1)) continue;
            for (const auto& [s2, d2] : entry.pairs)
                if (s2 == d1) draining = false;
        }
    }
    add_clause(report, "self-loops-drain", draining, drain_detail);

    std::map<grid::PatternKey, std::set<grid::PatternKey>> edges;
    bool domain_ok = true, no_growth = true;
    std::string domain_detail;
    for (const auto& [key, entry] : table.entries) {
        std::vector<Vertex> pat = grid::pattern_vertices(key);
        std::sort(pat.begin(), pat.end());
        for (const auto& [src, dst] : entry.pairs) {
            if (!std::binary_search(pat.begin(), pat.end(), src) ||
                std::abs(src.x - dst.x) + std::abs(src.y - dst.y) != 1) {
                domain_ok = false;
                domain_detail = "malformed pair";
            }
            if (dst.x < 0 || dst.x >= key.width || dst.y < 0 || dst.y >= key.height)
                no_growth = false;

            std::vector<Vertex> solid;
            for (Vertex p : pat)
                if (p != src) solid.push_back(p);
            if (!std::binary_search(pat.begin(), pat.end(), dst)) solid.push_back(dst);
            std::sort(solid.begin(), solid.end());
            solid.erase(std::unique(solid.begin(), solid.end()), solid.end());

            std::vector<Vertex> dashed = pat;
            if (!std::binary_search(pat.begin(), pat.end(), dst)) {
                dashed.push_back(dst);
                std::sort(dashed.begin(), dashed.end());
            }

            if (!(is_t3(solid) || is_diag(solid)) || !is_t3(dashed)) {
                domain_ok = false;
                domain_detail = "successor leaves the task domain";
            }
            for (const std::vector<Vertex>* succ : {&solid, &dashed}) {
                grid::PatternKey sk = grid::grid_canonical(*succ);
                if (sk != key) edges[key].insert(sk);
            }
        }
    }
    add_clause(report, "successors-in-domain", domain_ok, domain_detail);
    add_clause(report, "mbr-no-growth", no_growth, "");

    // acyclicity over pattern keys (reuse integer machinery via an index map)
    std::map<grid::PatternKey, std::uint64_t> index;
    std::uint64_t next_id = 0;
    auto id_of = [&](const grid::PatternKey& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        index[k] = next_id;
        return next_id++;
    };
    std::map<std::uint64_t, std::set<std::uint64_t>> int_edges;
    for (const auto& [from, tos] : edges) {
        std::uint64_t f = id_of(from);
        for (const grid::PatternKey& t : tos) int_edges[f].insert(id_of(t));
    }
    std::uint64_t cycle_node = 0;
    bool acyclic = acyclic_keys(int_edges, &cycle_node);
    add_clause(report, "acyclicity", acyclic, "");

    int depth = acyclic ? longest_path_keys(int_edges) : -1;
    add_clause(report, "depth<=10", acyclic && depth <= 10,
               "longest class path " + std::to_string(depth));

    bool reach = acyclic;
    std::string reach_detail;
    if (acyclic) {
        for (const grid::PatternKey& key : keys) {
            std::set<grid::PatternKey> visited;
            std::vector<grid::PatternKey> stack{key};
            bool ok = false;
            while (!stack.empty() && !ok) {
                grid::PatternKey n = stack.back();
                stack.pop_back();
                if (!visited.insert(n).second) continue;
                if (n == terminal) ok = true;
                auto it = edges.find(n);
                if (it != edges.end())
                    for (const auto& nx : it->second) stack.push_back(nx);
            }
            if (!ok) {
                reach = false;
                reach_detail = "a class cannot reach the diagonal 2x2 terminal";
                break;
            }
        }
    }
    add_clause(report, "terminal-diagonal-reachable", reach, reach_detail);
    return report;
}

// ---------------------------------------------------------------------------
// Equivariance.
// ---------------------------------------------------------------------------

namespace {

std::optional<EquivarianceWitness> equivariance_failure(
    const Topology& topology, const Algorithm& algorithm, const Configuration& config, Vertex at,
    const Configuration& image_config, Vertex image_at,
    const std::function<Vertex(Vertex)>& map) {
    MoveOffer base = algorithm.compute(config, at);
    MoveOffer image = algorithm.compute(image_config, image_at);
    std::vector<Vertex> mapped;
    mapped.reserve(base.destinations.size());
    for (Vertex d : base.destinations) mapped.push_back(map(d));
    std::sort(mapped.begin(), mapped.end());
    if (mapped != image.destinations) {
        EquivarianceWitness w;
        w.detail = "offer not equivariant from " + topology.format(at);
        return w;
    }
    return std::nullopt;
}

}  // namespace

std::optional<EquivarianceWitness> equivariance_check_hypercube(const Algorithm& algorithm,
                                                                int dim, int samples,
                                                                std::uint64_t seed) {
    Hypercube cube(dim);
    std::mt19937_64 rng(seed);
    const auto& group = hc::hc_group(dim);
    for (int s = 0; s < samples; ++s) {
        hc::OccMask mask = 0;
        while (std::popcount(mask) < 2)
            mask = rng() & ((hc::OccMask{1} << cube.vertex_count()) - 1);
        std::vector<Vertex> occupied = hc::vertices_of(dim, mask);
        Vertex at = occupied[rng() % occupied.size()];
        Configuration config{&cube, occupied};
        for (const auto& g : group) {
            Configuration image{&cube, hc::apply_automorphism(g, occupied)};
            auto witness = equivariance_failure(cube, algorithm, config, at, image, g.apply(at),
                                                [&](Vertex v) { return g.apply(v); });
            if (witness) return witness;
        }
    }
    return std::nullopt;
}

std::optional<EquivarianceWitness> equivariance_check_grid(const Algorithm& algorithm,
                                                           int samples, std::uint64_t seed) {
    SquareGrid gridtopo;
    std::mt19937_64 rng(seed);
    const Vertex shifts[3] = {{0, 0}, {4, -3}, {-7, 11}};
    for (int s = 0; s < samples; ++s) {
        std::uint32_t mask = 0;
        while (std::popcount(mask) < 2) mask = rng() & 0xFFFFu;
        std::vector<Vertex> occupied;
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x)
                if (mask & (1u << (x + 4 * y))) occupied.push_back(Vertex{x, y});
        std::sort(occupied.begin(), occupied.end());
        Vertex at = occupied[rng() % occupied.size()];
        Configuration config{&gridtopo, occupied};
        for (int d8 = 0; d8 < 8; ++d8) {
            for (Vertex t : shifts) {
                grid::GridIsometry g{d8, t};
                Configuration image{&gridtopo, g.apply(occupied)};
                auto witness =
                    equivariance_failure(gridtopo, algorithm, config, at, image, g.apply(at),
                                         [&](Vertex v) { return g.apply(v); });
                if (witness) return witness;
            }
        }
    }
    return std::nullopt;
}

}  // namespace rrgather::verify
