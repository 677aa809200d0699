// Command-line front end: single simulations, verification sweeps, adversary
// demonstrations, table certification and graph exports.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "rrgather/adversary.hpp"
#include "rrgather/engine.hpp"
#include "rrgather/gather_grid.hpp"
#include "rrgather/gather_hypercube.hpp"
#include "rrgather/io.hpp"
#include "rrgather/topology.hpp"
#include "rrgather/verifier.hpp"

namespace {

using namespace rrgather;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

std::shared_ptr<Topology> make_topology(const std::string& name, int dim) {
    if (name == "hypercube") return std::make_shared<Hypercube>(dim);
    if (name == "grid") return std::make_shared<SquareGrid>();
    throw std::invalid_argument("unknown topology: " + name);
}

std::unique_ptr<Algorithm> make_algorithm(const std::string& name,
                                          std::shared_ptr<Topology> topology) {
    if (name == "hypercube") {
        auto cube = std::dynamic_pointer_cast<Hypercube>(topology);
        if (!cube) throw std::invalid_argument("hypercube algorithm needs --topology hypercube");
        return std::make_unique<hyper::HypercubeGatherer>(*cube);
    }
    if (name == "grid") {
        if (topology->kind() != TopologyKind::square_grid)
            throw std::invalid_argument("grid algorithm needs --topology grid");
        return std::make_unique<st::GridGatherer>();
    }
    if (name.rfind("strawman:", 0) == 0)
        return adv::make_strawman(name.substr(9), topology);
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

// Rejects U-set initial configurations, printing the witness name.
bool reject_ungatherable(const Topology& topology, const std::string& algorithm,
                         const Configuration& config) {
    if (algorithm == "hypercube") {
        const auto& cube = static_cast<const Hypercube&>(topology);
        auto w = hyper::uh_witness(cube.dim(), hc::mask_of(config.occupied));
        if (w.ungatherable()) {
            std::cout << "ungatherable initial configuration: U_H member " << to_string(w.kind)
                      << "\n";
            return true;
        }
    } else if (algorithm == "grid") {
        auto w = st::ust_witness(config.occupied);
        if (w.ungatherable()) {
            std::cout << "ungatherable initial configuration: U_ST member " << to_string(w.kind)
                      << "\n";
            return true;
        }
    }
    return false;
}

int run_simulate(const std::string& topo_name, int dim, const std::string& algo_name,
                 const std::string& placement_text, const std::string& scenario_path,
                 const std::string& schedule_text, const std::string& resolver_name,
                 std::uint64_t seed, int horizon, const std::string& out_path) {
    std::shared_ptr<Topology> topology;
    Placement placement;
    Schedule schedule;

    if (!scenario_path.empty()) {
        std::ifstream in(scenario_path);
        if (!in) throw std::invalid_argument("cannot read scenario file " + scenario_path);
        io::LoadedScenario loaded = io::read_scenario(in);
        topology = loaded.topology;
        placement = loaded.placement;
        schedule = loaded.schedule;
    } else {
        topology = make_topology(topo_name, dim);
        if (placement_text.rfind("random:", 0) == 0) {
            int k = std::stoi(placement_text.substr(7));
            std::mt19937_64 rng(seed);
            std::vector<Vertex> robots;
            for (int i = 0; i < k; ++i) {
                if (topology->kind() == TopologyKind::hypercube) {
                    auto& cube = static_cast<Hypercube&>(*topology);
                    robots.push_back(hc_vertex(static_cast<std::uint32_t>(
                        rng() % cube.vertex_count())));
                } else {
                    robots.push_back(Vertex{static_cast<int>(rng() % 5),
                                            static_cast<int>(rng() % 5)});
                }
            }
            placement = Placement(robots);
        } else {
            placement = io::parse_placement(*topology, placement_text);
        }
        if (schedule_text == "canonical") {
            schedule = Schedule::canonical(placement.robot_count());
        } else if (schedule_text == "random") {
            std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
            std::vector<int> order(placement.robot_count());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
            std::shuffle(order.begin(), order.end(), rng);
            schedule = Schedule{order};
        } else if (schedule_text.rfind("perm:", 0) == 0) {
            std::istringstream ss(schedule_text.substr(5));
            std::string tok;
            std::vector<int> order;
            while (std::getline(ss, tok, ',')) order.push_back(std::stoi(tok));
            schedule = Schedule{order};
        } else {
            throw std::invalid_argument("unknown schedule: " + schedule_text);
        }
    }

    Configuration initial = configuration_of(*topology, placement);
    if (reject_ungatherable(*topology, algo_name, initial)) return kExitInput;

    auto algorithm = make_algorithm(algo_name, topology);
    Resolver resolver = resolver_name == "random" ? seeded_random_resolver(seed)
                                                  : canonical_resolver();
    Trace trace = run(*topology, placement, schedule, *algorithm, resolver, horizon);

    if (trace.verdict == Verdict::gathered) {
        // export up to the gathering round so the printed epoch count equals
        // the trace's maximum epoch field (quiescence is verified internally)
        std::size_t keep = 0;
        if (trace.epochs_used > 0) {
            for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                if (trace.steps[i].occ_after == 1) {
                    keep = i + 1;
                    break;
                }
            }
        }
        trace.steps.resize(keep);
    }
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        io::write_trace(out, *topology, trace);
    }
    switch (trace.verdict) {
        case Verdict::gathered:
            std::cout << "gathered in " << trace.epochs_used << " epochs\n";
            return kExitPass;
        case Verdict::recurrence_detected:
            std::cout << "recurrence detected: rounds " << trace.recurrence->first_round
                      << ".." << trace.recurrence->repeat_round << " repeat\n";
            return kExitViolation;
        case Verdict::horizon_exhausted:
            std::cout << "horizon exhausted after " << horizon << " epochs\n";
            return kExitViolation;
    }
    return kExitViolation;
}

int run_sweep(const verify::SweepSpec& spec, const std::string& out_path) {
    verify::SweepReport report = verify::sweep(spec);
    std::shared_ptr<Topology> topology =
        spec.target == verify::SweepSpec::Target::hypercube
            ? std::shared_ptr<Topology>(std::make_shared<Hypercube>(spec.dim))
            : std::shared_ptr<Topology>(std::make_shared<SquareGrid>());

    std::string offending;
    bool conform = verify::pairs_conform(report.observed_pairs, spec.target, &offending);

    std::ostringstream text;
    io::write_report(text, spec, report, *topology);
    if (!conform) text << "violation transition | unexpected pair " << offending << "\n";
    std::cout << text.str();
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        out << text.str();
        // every violation is replayable: dump it as a loadable scenario
        for (std::size_t i = 0; i < report.violations.size() && i < 16; ++i) {
            const verify::Violation& v = report.violations[i];
            adv::AdversaryScenario sc;
            sc.name = "violation-" + std::to_string(i);
            sc.topology = topology;
            sc.placement = v.placement;
            sc.schedule = v.schedule;
            sc.rationale = v.kind + ": " + v.detail;
            auto vout = open_out(out_path + ".violation" + std::to_string(i));
            io::write_scenario(vout, sc);
        }
    }
    return report.clean() && conform ? kExitPass : kExitViolation;
}

int run_adversary(const std::string& name, int n, const std::string& algo_override, int horizon,
                  const std::string& out_path) {
    adv::AdversaryScenario scenario;
    if (name == "p2-hypercube") {
        scenario = adv::p2_scenario(std::make_shared<Hypercube>(3));
        scenario.algorithm_hint = "hypercube";
    } else if (name == "p2-grid") {
        scenario = adv::p2_scenario(std::make_shared<SquareGrid>());
        scenario.algorithm_hint = "grid";
    } else if (name == "full-graph") {
        scenario = adv::full_graph_scenario();
    } else if (name == "p3-hypercube") {
        scenario = adv::p3_scenario(std::make_shared<Hypercube>(3), "hypercube");
        scenario.algorithm_hint = "hypercube";
    } else if (name == "p3-bent" || name == "p3-straight") {
        scenario = adv::p3_scenario(std::make_shared<SquareGrid>(), name.substr(3));
        scenario.algorithm_hint = "grid";
    } else {
        bool found = false;
        for (auto& sc : adv::clique_bipartite_scenarios(n)) {
            if (sc.name == name) {
                scenario = std::move(sc);
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("unknown scenario: " + name);
    }

    std::string algo_name = algo_override.empty() ? scenario.algorithm_hint : algo_override;
    if (algo_name != "hypercube" && algo_name != "grid") algo_name = "strawman:" + algo_name;

    if (!out_path.empty()) {
        auto out = open_out(out_path);
        io::write_scenario(out, scenario);
    }

    Configuration initial = configuration_of(*scenario.topology, scenario.placement);
    std::cout << "scenario " << scenario.name << ": " << scenario.rationale << "\n";
    if (scenario.expected == "rejected") {
        bool rejected = reject_ungatherable(*scenario.topology, algo_name, initial);
        std::cout << (rejected ? "rejected as expected\n" : "NOT rejected\n");
        return rejected ? kExitPass : kExitViolation;
    }

    auto algorithm = make_algorithm(algo_name, scenario.topology);
    adv::NonTermResult result =
        adv::prove_nontermination(scenario, *algorithm, canonical_resolver(), horizon);

    switch (result.kind) {
        case adv::NonTermResult::Kind::recurrence: {
            const auto& cert = *result.certificate;
            bool valid = adv::replay_validates(*scenario.topology, cert);
            std::cout << "recurrence certificate: loop of " << cert.loop_rounds()
                      << " rounds from round " << cert.first_round << ", replay "
                      << (valid ? "validates" : "FAILS") << "\n";
            for (const auto& [robot, dest] : cert.moves)
                std::cout << "  robot " << robot << " -> " << scenario.topology->format(dest)
                          << "\n";
            return valid && scenario.expected == "recurrence" ? kExitPass : kExitViolation;
        }
        case adv::NonTermResult::Kind::gathered:
            std::cout << "gathered in " << result.trace.epochs_used << " epochs\n";
            return scenario.expected == "gathered" ? kExitPass : kExitViolation;
        case adv::NonTermResult::Kind::inconclusive:
            std::cout << "inconclusive within " << horizon << " epochs\n";
            return kExitViolation;
    }
    return kExitViolation;
}

int run_certify(const std::string& table_name, const std::string& out_path) {
    verify::TableCertificateReport report;
    if (table_name == "t1") {
        const auto& table = hyper::default_t1_table();
        report = verify::certify_q3_table(table);
        if (!out_path.empty()) {
            auto out = open_out(out_path);
            io::write_q3_table(out, table);
        }
    } else if (table_name == "grid32") {
        const auto& table = st::default_32_table();
        report = verify::certify_grid32_table(table);
        if (!out_path.empty()) {
            auto out = open_out(out_path);
            io::write_grid32_table(out, table);
        }
    } else {
        throw std::invalid_argument("unknown table: " + table_name);
    }
    for (const auto& clause : report.clauses)
        std::cout << (clause.pass ? "[PASS] " : "[FAIL] ") << clause.name
                  << (clause.detail.empty() ? "" : " (" + clause.detail + ")") << "\n";
    return report.all_pass() ? kExitPass : kExitViolation;
}

int run_export(const std::string& graph, const std::string& out_path) {
    auto out = open_out(out_path);
    if (graph == "t1-classes")
        io::write_q3_table_dot(out, hyper::default_t1_table());
    else if (graph == "grid32-classes")
        io::write_grid32_table_dot(out, st::default_32_table());
    else if (graph == "hypercube-tasks")
        io::write_task_graph_dot(out, verify::SweepSpec::Target::hypercube);
    else if (graph == "grid-tasks")
        io::write_task_graph_dot(out, verify::SweepSpec::Target::grid);
    else
        throw std::invalid_argument("unknown graph: " + graph);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gathering of oblivious robots on hypercubes and square grids under round-robin"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one execution and export its trace");
    std::string s_topo = "hypercube", s_algo = "hypercube", s_placement, s_scenario;
    std::string s_schedule = "canonical", s_resolver = "canonical", s_out;
    int s_dim = 3, s_horizon = 64;
    std::uint64_t s_seed = 0;
    sim->add_option("--topology", s_topo, "hypercube | grid");
    sim->add_option("--dim", s_dim, "hypercube dimension");
    sim->add_option("--algorithm", s_algo, "hypercube | grid | strawman:<name>");
    sim->add_option("--placement", s_placement, "counts like 010:2,111:1 or random:<k>");
    sim->add_option("--scenario", s_scenario, "load placement/schedule from a scenario file");
    sim->add_option("--schedule", s_schedule, "canonical | random | perm:i,j,...");
    sim->add_option("--resolver", s_resolver, "canonical | random");
    sim->add_option("--seed", s_seed, "seed for random placement/schedule/resolver");
    sim->add_option("--horizon-epochs", s_horizon, "epoch budget");
    sim->add_option("--out", s_out, "trace output path");

    // sweep
    auto* sw = app.add_subcommand("sweep", "exhaustive or randomized verification sweep");
    std::string w_topo = "hypercube", w_schedule = "all", w_resolver = "adversarial";
    std::string w_placements = "exhaustive", w_out, w_mbr = "3x3";
    int w_dim = 3, w_kmin = 2, w_kmax = 4, w_cap = 3, w_horizon = 12, w_workers = 1;
    std::uint64_t w_seed = 0;
    sw->add_option("--topology", w_topo, "hypercube | grid");
    sw->add_option("--dim", w_dim, "hypercube dimension");
    sw->add_option("--mbr", w_mbr, "grid window cap, e.g. 3x3");
    sw->add_option("--kmin", w_kmin, "minimum robots");
    sw->add_option("--kmax", w_kmax, "maximum robots");
    sw->add_option("--per-vertex-cap", w_cap, "hidden multiplicity cap");
    sw->add_option("--schedule", w_schedule, "all | canonical | sampled:<n>");
    sw->add_option("--resolver", w_resolver, "adversarial | canonical");
    sw->add_option("--placements", w_placements, "exhaustive | random:<n>");
    sw->add_option("--horizon-epochs", w_horizon, "epoch budget per instance");
    sw->add_option("--seed", w_seed, "seed for sampled schedules/placements");
    sw->add_option("--workers", w_workers, "parallel placement partitions");
    sw->add_option("--out", w_out, "report output path");

    // adversary
    auto* ad = app.add_subcommand("adversary", "run an impossibility demonstration");
    std::string a_name = "p2-hypercube", a_algo, a_out;
    int a_n = 5, a_horizon = 2000;
    ad->add_option("--scenario", a_name,
                   "p2-hypercube | p2-grid | full-graph | kn-occupied | kn-unoccupied | "
                   "knn-occupied | knn-unoccupied | knn-one-side | p3-hypercube | p3-bent | "
                   "p3-straight");
    ad->add_option("--n", a_n, "clique/bipartite size for kn/knn scenarios");
    ad->add_option("--algorithm", a_algo, "override the scenario's algorithm");
    ad->add_option("--horizon-epochs", a_horizon, "epoch budget");
    ad->add_option("--out", a_out, "dump the scenario file");

    // certify
    auto* ce = app.add_subcommand("certify", "synthesize and certify a move table");
    std::string c_table = "t1", c_out;
    ce->add_option("--table", c_table, "t1 | grid32");
    ce->add_option("--out", c_out, "table dump path");

    // export-graph
    auto* ex = app.add_subcommand("export-graph", "emit a DOT transition graph");
    std::string e_graph = "t1-classes", e_out = "graph.dot";
    ex->add_option("--graph", e_graph,
                   "t1-classes | grid32-classes | hypercube-tasks | grid-tasks");
    ex->add_option("--out", e_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return run_simulate(s_topo, s_dim, s_algo, s_placement, s_scenario, s_schedule,
                                s_resolver, s_seed, s_horizon, s_out);
        if (sw->parsed()) {
            verify::SweepSpec spec;
            spec.target = w_topo == "grid" ? verify::SweepSpec::Target::grid
                                           : verify::SweepSpec::Target::hypercube;
            spec.dim = w_dim;
            auto x = w_mbr.find('x');
            if (x != std::string::npos) {
                spec.rows_cap = std::stoi(w_mbr.substr(0, x));
                spec.cols_cap = std::stoi(w_mbr.substr(x + 1));
            }
            spec.k_min = w_kmin;
            spec.k_max = w_kmax;
            spec.per_vertex_cap = w_cap;
            if (w_schedule == "all")
                spec.schedules = verify::SweepSpec::Schedules::all;
            else if (w_schedule == "canonical")
                spec.schedules = verify::SweepSpec::Schedules::canonical;
            else if (w_schedule.rfind("sampled:", 0) == 0) {
                spec.schedules = verify::SweepSpec::Schedules::sampled;
                spec.schedule_samples = std::stoi(w_schedule.substr(8));
            } else
                throw std::invalid_argument("unknown schedule policy: " + w_schedule);
            spec.resolver = w_resolver == "canonical" ? verify::SweepSpec::Resolve::canonical
                                                      : verify::SweepSpec::Resolve::adversarial;
            if (w_placements == "exhaustive")
                spec.placements = verify::SweepSpec::Placements::exhaustive;
            else if (w_placements.rfind("random:", 0) == 0) {
                spec.placements = verify::SweepSpec::Placements::random;
                spec.random_samples = std::stoi(w_placements.substr(7));
            } else
                throw std::invalid_argument("unknown placement policy: " + w_placements);
            spec.seed = w_seed;
            spec.horizon_epochs = w_horizon;
            spec.workers = w_workers;
            return run_sweep(spec, w_out);
        }
        if (ad->parsed()) return run_adversary(a_name, a_n, a_algo, a_horizon, a_out);
        if (ce->parsed()) return run_certify(c_table, c_out);
        if (ex->parsed()) return run_export(e_graph, e_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitInput;
}
