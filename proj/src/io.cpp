#include "rrgather/io.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rrgather::io {

void write_trace(std::ostream& out, const Topology& topology, const Trace& trace) {
    for (const StepRecord& s : trace.steps) {
        out << s.round << ' ' << s.epoch << ' ' << s.robot << ' ' << topology.format(s.from)
            << ' ' << topology.format(s.to) << ' ' << s.occ_after << ' ' << s.delta_after << ' '
            << (s.task.empty() ? "-" : s.task) << '\n';
    }
}

void write_report(std::ostream& out, const verify::SweepSpec& spec,
                  const verify::SweepReport& report, const Topology& topology) {
    out << "target " << (spec.target == verify::SweepSpec::Target::hypercube ? "hypercube" : "grid")
        << '\n';
    if (spec.target == verify::SweepSpec::Target::hypercube)
        out << "dim " << spec.dim << '\n';
    else
        out << "mbr-cap " << spec.rows_cap << 'x' << spec.cols_cap << '\n';
    out << "robots " << spec.k_min << ".." << spec.k_max << '\n';
    out << "seed " << spec.seed << '\n';
    out << "placements-enumerated " << report.placements_enumerated << '\n';
    out << "rejected-initials " << report.rejected_initials << '\n';
    out << "instances " << report.instances << '\n';
    out << "gathered " << report.gathered << '\n';
    out << "states-explored " << report.states_explored << '\n';
    out << "max-epochs " << report.max_epochs << '\n';
    out << "max-epoch-ratio " << report.max_ratio << '\n';
    out << "transitions";
    for (const auto& p : report.observed_pairs)
        out << ' ' << p.from << (p.shrunk ? ">>" : ">") << p.to;
    out << '\n';
    out << "violations " << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
        out << "violation " << v.kind << " | " << v.detail << " | placement "
            << placement_to_string(topology, v.placement) << " | schedule";
        for (int r : v.schedule.order) out << ' ' << r;
        out << '\n';
    }
}

namespace {

std::string topology_line(const Topology& topology) {
    switch (topology.kind()) {
        case TopologyKind::hypercube:
            return "topology hypercube " +
                   std::to_string(static_cast<const Hypercube&>(topology).dim());
        case TopologyKind::square_grid:
            return "topology grid";
        case TopologyKind::finite_graph: {
            const auto& fg = static_cast<const adv::FiniteGraph&>(topology);
            if (fg.side_of(Vertex{0, 0}) >= 0)
                return "topology bipartite " + std::to_string(fg.node_count() / 2);
            return "topology complete " + std::to_string(fg.node_count());
        }
    }
    return "topology ?";
}

}  // namespace

void write_scenario(std::ostream& out, const adv::AdversaryScenario& scenario) {
    out << "# " << scenario.name << ": " << scenario.rationale << '\n';
    out << topology_line(*scenario.topology) << '\n';
    out << "robots";
    for (const Vertex& v : scenario.placement.positions())
        out << ' ' << scenario.topology->format(v);
    out << '\n';
    out << "schedule";
    for (int r : scenario.schedule.order) out << ' ' << r;
    out << '\n';
    if (!scenario.expected.empty()) out << "expected " << scenario.expected << '\n';
    if (!scenario.algorithm_hint.empty()) out << "algorithm " << scenario.algorithm_hint << '\n';
}

LoadedScenario read_scenario(std::istream& in) {
    LoadedScenario loaded;
    std::string line;
    std::vector<Vertex> robots;
    std::vector<int> order;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "topology") {
            std::string kind;
            ls >> kind;
            if (kind == "hypercube") {
                int d = 0;
                ls >> d;
                loaded.topology = std::make_shared<Hypercube>(d);
            } else if (kind == "grid") {
                loaded.topology = std::make_shared<SquareGrid>();
            } else if (kind == "complete") {
                int n = 0;
                ls >> n;
                loaded.topology = adv::FiniteGraph::complete(n);
            } else if (kind == "bipartite") {
                int n = 0;
                ls >> n;
                loaded.topology = adv::FiniteGraph::complete_bipartite(n);
            } else {
                throw std::invalid_argument("unknown topology in scenario: " + kind);
            }
        } else if (key == "robots") {
            if (!loaded.topology)
                throw std::invalid_argument("scenario lists robots before the topology");
            std::string tok;
            while (ls >> tok) robots.push_back(loaded.topology->parse(tok));
        } else if (key == "schedule") {
            int r;
            while (ls >> r) order.push_back(r);
        }
        // "expected" and "algorithm" lines are advisory; ignored here
    }
    if (!loaded.topology || robots.empty())
        throw std::invalid_argument("scenario file lacks a topology or robots");
    loaded.placement = Placement(std::move(robots));
    if (order.empty()) {
        loaded.schedule = Schedule::canonical(loaded.placement.robot_count());
    } else {
        if (static_cast<int>(order.size()) != loaded.placement.robot_count())
            throw std::invalid_argument("scenario schedule length mismatch");
        loaded.schedule = Schedule{order};
    }
    return loaded;
}

namespace {

std::string q3_vertex(std::uint32_t v) {
    std::string s(3, '0');
    for (int i = 0; i < 3; ++i)
        if (v & (1u << i)) s[2 - i] = '1';
    return s;
}

std::string q3_class_name(std::uint64_t key) {
    std::string cells;
    for (std::uint32_t v = 0; v < 8; ++v)
        if (key & (std::uint64_t{1} << v)) cells += (cells.empty() ? "" : "+") + q3_vertex(v);
    return cells;
}

std::string g32_vertex(Vertex v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

std::string g32_class_name(const grid::PatternKey& key) {
    std::string cells;
    for (Vertex v : grid::pattern_vertices(key))
        cells += (cells.empty() ? "" : "+") + g32_vertex(v);
    return cells;
}

}  // namespace

void write_q3_table(std::ostream& out, const hyper::Q3MoveTable& table) {
    for (const auto& [key, entry] : table.entries) {
        out << "class " << q3_class_name(key) << " occ " << std::popcount(key) << " ";
        switch (entry.kind) {
            case hyper::Q3TableEntry::Kind::nil_move:
                out << "nil";
                break;
            case hyper::Q3TableEntry::Kind::exit_move:
                out << "exit";
                break;
            case hyper::Q3TableEntry::Kind::pair_move:
                out << "move";
                for (const auto& [src, dst] : entry.pairs)
                    out << ' ' << q3_vertex(src) << "->" << q3_vertex(dst);
                break;
        }
        out << '\n';
    }
}

void write_grid32_table(std::ostream& out, const st::Grid32Table& table) {
    for (const auto& [key, entry] : table.entries) {
        out << "class " << g32_class_name(key) << " occ "
            << grid::pattern_vertices(key).size() << " move";
        for (const auto& [src, dst] : entry.pairs)
            out << ' ' << g32_vertex(src) << "->" << g32_vertex(dst);
        out << '\n';
    }
}

void write_q3_table_dot(std::ostream& out, const hyper::Q3MoveTable& table) {
    out << "digraph q3_classes {\n";
    for (const auto& [key, entry] : table.entries) {
        out << "  \"" << q3_class_name(key) << "\";\n";
        if (entry.kind != hyper::Q3TableEntry::Kind::pair_move) continue;
        std::set<std::pair<std::uint64_t, bool>> succ;
        for (const auto& [src, dst] : entry.pairs) {
            hc::OccMask solid = (key & ~hc::bit_of(src)) | hc::bit_of(dst);
            hc::OccMask dashed = key | hc::bit_of(dst);
            succ.insert({hc::hc_canonical(3, solid), false});
            if (dashed != key) succ.insert({hc::hc_canonical(3, dashed), true});
        }
        for (const auto& [next, is_dashed] : succ) {
            if (next == key) continue;
            out << "  \"" << q3_class_name(key) << "\" -> \"" << q3_class_name(next) << "\""
                << (is_dashed ? " [style=dashed]" : "") << ";\n";
        }
    }
    out << "}\n";
}

void write_grid32_table_dot(std::ostream& out, const st::Grid32Table& table) {
    out << "digraph grid32_classes {\n";
    for (const auto& [key, entry] : table.entries) {
        std::vector<Vertex> pat = grid::pattern_vertices(key);
        std::sort(pat.begin(), pat.end());
        auto occupied = [&](Vertex v) {
            return std::binary_search(pat.begin(), pat.end(), v);
        };
        std::set<std::pair<std::string, bool>> succ;
        for (const auto& [src, dst] : entry.pairs) {
            std::vector<Vertex> solid;
            for (Vertex p : pat)
                if (p != src) solid.push_back(p);
            if (!occupied(dst)) solid.push_back(dst);
            std::sort(solid.begin(), solid.end());
            solid.erase(std::unique(solid.begin(), solid.end()), solid.end());
            succ.insert({g32_class_name(grid::grid_canonical(solid)), false});
            if (!occupied(dst)) {
                std::vector<Vertex> dashed = pat;
                dashed.push_back(dst);
                std::sort(dashed.begin(), dashed.end());
                succ.insert({g32_class_name(grid::grid_canonical(dashed)), true});
            }
        }
        std::string self = g32_class_name(key);
        out << "  \"" << self << "\";\n";
        for (const auto& [next, is_dashed] : succ) {
            if (next == self) continue;
            out << "  \"" << self << "\" -> \"" << next << "\""
                << (is_dashed ? " [style=dashed]" : "") << ";\n";
        }
    }
    out << "}\n";
}

void write_task_graph_dot(std::ostream& out, verify::SweepSpec::Target target) {
    const auto& rows = target == verify::SweepSpec::Target::hypercube
                           ? verify::hyper_transition_rows()
                           : verify::grid_transition_rows();
    out << "digraph tasks {\n";
    for (const auto& [from, tos] : rows)
        for (const std::string& to : tos)
            out << "  \"" << from << "\" -> \"" << to << "\";\n";
    out << "}\n";
}

std::string placement_to_string(const Topology& topology, const Placement& placement) {
    std::string out;
    for (const auto& [v, n] : placement.counts()) {
        if (!out.empty()) out += ',';
        out += topology.format(v) + ":" + std::to_string(n);
    }
    return out;
}

Placement parse_placement(const Topology& topology, const std::string& text) {
    std::vector<std::pair<Vertex, int>> counts;
    std::size_t i = 0;
    while (i < text.size()) {
        int depth = 0;
        std::size_t j = i;
        while (j < text.size() && (depth > 0 || text[j] != ',')) {
            if (text[j] == '(') ++depth;
            if (text[j] == ')') --depth;
            ++j;
        }
        std::string item = text.substr(i, j - i);
        std::size_t colon = item.rfind(':');
        std::string vertex_text = colon == std::string::npos ? item : item.substr(0, colon);
        int count = colon == std::string::npos ? 1 : std::stoi(item.substr(colon + 1));
        counts.emplace_back(topology.parse(vertex_text), count);
        i = j + (j < text.size() ? 1 : 0);
    }
    if (counts.empty()) throw std::invalid_argument("empty placement");
    return Placement::from_counts(counts);
}

}  // namespace rrgather::io
