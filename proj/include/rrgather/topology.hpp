#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrgather/vertex.hpp"

namespace rrgather {

enum class TopologyKind { hypercube, square_grid, finite_graph };

// Graph interface the execution engine needs. Algorithms downcast to the
// concrete topology they were written for.
class Topology {
public:
    virtual ~Topology() = default;

    virtual TopologyKind kind() const = 0;
    virtual bool is_vertex(Vertex v) const = 0;
    virtual std::vector<Vertex> neighbors(Vertex v) const = 0;
    virtual int distance(Vertex u, Vertex v) const = 0;
    virtual std::string format(Vertex v) const = 0;
    virtual Vertex parse(const std::string& s) const = 0;
};

// d-dimensional hypercube, vertices = bitmasks 0 .. 2^d-1. Occupancy sets are
// manipulated as 64-bit masks elsewhere, which caps d at 6; that covers every
// workload this tool targets (exhaustive checking on Q3/Q4, sampling on Q5).
class Hypercube final : public Topology {
public:
    explicit Hypercube(int dim);

    TopologyKind kind() const override { return TopologyKind::hypercube; }
    bool is_vertex(Vertex v) const override;
    std::vector<Vertex> neighbors(Vertex v) const override;
    int distance(Vertex u, Vertex v) const override;
    std::string format(Vertex v) const override;
    Vertex parse(const std::string& s) const override;

    int dim() const { return dim_; }
    std::uint32_t vertex_count() const { return 1u << dim_; }

private:
    int dim_;
};

// Infinite square tessellation graph over Z^2, unit edges. Never materialized;
// only occupied vertices and bounding-window queries exist.
class SquareGrid final : public Topology {
public:
    TopologyKind kind() const override { return TopologyKind::square_grid; }
    bool is_vertex(Vertex) const override { return true; }
    std::vector<Vertex> neighbors(Vertex v) const override;
    int distance(Vertex u, Vertex v) const override;
    std::string format(Vertex v) const override;
    Vertex parse(const std::string& s) const override;
};

const char* to_string(TopologyKind k);

}  // namespace rrgather
