#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "rrgather/adversary.hpp"
#include "rrgather/engine.hpp"
#include "rrgather/gather_grid.hpp"
#include "rrgather/gather_hypercube.hpp"
#include "rrgather/topology.hpp"
#include "rrgather/verifier.hpp"

// File formats: line-delimited traces (one step per line, fixed field order),
// structured-text scenarios, move-table dumps and DOT transition graphs.

namespace rrgather::io {

// Fields: round epoch robot active_vertex destination occ delta task
void write_trace(std::ostream& out, const Topology& topology, const Trace& trace);

void write_report(std::ostream& out, const verify::SweepSpec& spec,
                  const verify::SweepReport& report, const Topology& topology);

void write_scenario(std::ostream& out, const adv::AdversaryScenario& scenario);

struct LoadedScenario {
    std::shared_ptr<Topology> topology;
    Placement placement;
    Schedule schedule;
};
LoadedScenario read_scenario(std::istream& in);

void write_q3_table(std::ostream& out, const hyper::Q3MoveTable& table);
void write_grid32_table(std::ostream& out, const st::Grid32Table& table);

void write_q3_table_dot(std::ostream& out, const hyper::Q3MoveTable& table);
void write_grid32_table_dot(std::ostream& out, const st::Grid32Table& table);
void write_task_graph_dot(std::ostream& out, verify::SweepSpec::Target target);

std::string placement_to_string(const Topology& topology, const Placement& placement);
Placement parse_placement(const Topology& topology, const std::string& text);

}  // namespace rrgather::io
