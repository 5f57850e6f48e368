#pragma once

#include "zxopt/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace zxopt {

using Vertex = int;

/// Reference to a symbolic phase variable. `sign` is the current orientation
/// of the hosted group total (flipped by pi-copy events).
struct VarRef {
    int id = -1;
    int sign = +1;

    friend bool operator==(const VarRef& a, const VarRef& b) {
        return a.id == b.id && a.sign == b.sign;
    }
};

/// Spider phase: exact Clifford part plus at most one variable reference.
struct PhaseExpr {
    Phase cliff;
    std::optional<VarRef> var;

    PhaseExpr() = default;
    explicit PhaseExpr(Phase c) : cliff(c) {}

    bool has_var() const { return var.has_value(); }

    friend bool operator==(const PhaseExpr& a, const PhaseExpr& b) {
        return a.cliff == b.cliff && a.var == b.var;
    }
};

enum class BoundaryKind { None, Input, Output };

struct Boundary {
    BoundaryKind kind = BoundaryKind::None;
    int wire = -1;
};

/// All spiders are Z-spiders; colour is never stored.
struct Spider {
    PhaseExpr phase;
    Boundary boundary;
};

/// Underlying open graph of a diagram: same vertex-id space, Hadamard edges
/// as plain edges, I/O = boundary-attached spiders in wire order.
struct OpenGraph {
    std::vector<bool> alive;
    std::vector<std::vector<Vertex>> adj; // sorted
    std::vector<Vertex> inputs;
    std::vector<Vertex> outputs;

    std::size_t n_vertices() const;
    std::size_t n_edges() const;
    bool has_edge(Vertex u, Vertex v) const;
    bool is_input(Vertex v) const;
    bool is_output(Vertex v) const;
    int degree(Vertex v) const { return static_cast<int>(adj[v].size()); }
};

struct DiagramStats {
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    std::size_t n_internal = 0;
    std::size_t n_nonclifford = 0;
};

/// Graph-like ZX-diagram: Z-spiders with exact phases, Hadamard edges only,
/// no self-loops or parallel edges, at most one boundary wire per spider.
/// Boundary wires carry an optional implicit Hadamard (per-wire flag); the
/// global scalar is dropped throughout.
class ZxDiagram {
public:
    ZxDiagram() = default;
    explicit ZxDiagram(int n_wires);

    Vertex add_spider(PhaseExpr phase = PhaseExpr{});
    Vertex add_spider(Phase phase) { return add_spider(PhaseExpr{phase}); }
    void remove_spider(Vertex v);
    bool alive(Vertex v) const { return v >= 0 && v < static_cast<Vertex>(spiders_.size()) && spiders_[v].has_value(); }

    const Spider& spider(Vertex v) const { return *spiders_.at(v); }
    const PhaseExpr& phase(Vertex v) const { return spiders_.at(v)->phase; }
    void set_phase(Vertex v, PhaseExpr p) { spiders_.at(v)->phase = std::move(p); }
    void add_to_phase(Vertex v, Phase p) { spiders_.at(v)->phase.cliff += p; }

    /// Flip edge membership; u == v is a self-loop error.
    void toggle_edge(Vertex u, Vertex v);
    /// Insert an edge known to be absent.
    void add_edge(Vertex u, Vertex v);
    void remove_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;

    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }

    std::size_t n_vertices() const { return n_vertices_; }
    std::size_t n_edges() const { return n_edges_; }
    /// Largest id ever allocated plus one (ids are stable, never reused).
    Vertex vertex_bound() const { return static_cast<Vertex>(spiders_.size()); }

    void attach_input(Vertex v, int wire, bool hadamard = false);
    void attach_output(Vertex v, int wire, bool hadamard = false);
    /// Move wire attachment (and its flag) from `from` to `to`.
    void move_boundary(Vertex from, Vertex to);

    int n_wires() const { return static_cast<int>(inputs_.size()); }
    const std::vector<Vertex>& inputs() const { return inputs_; }
    const std::vector<Vertex>& outputs() const { return outputs_; }
    bool input_hadamard(int wire) const { return input_had_.at(wire); }
    bool output_hadamard(int wire) const { return output_had_.at(wire); }
    void set_input_hadamard(int wire, bool h) { input_had_.at(wire) = h; }
    void set_output_hadamard(int wire, bool h) { output_had_.at(wire) = h; }

    bool is_boundary(Vertex v) const { return spider(v).boundary.kind != BoundaryKind::None; }
    bool is_internal(Vertex v) const { return !is_boundary(v); }
    /// True if v has at least one boundary-attached neighbour.
    bool has_boundary_neighbor(Vertex v) const;

    /// All live vertex ids in increasing order.
    std::vector<Vertex> vertices() const;
    /// All edges as ordered pairs (u < v), lexicographic.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// N2Q = |E| - |V| + |I| (exact identity on the stored representation).
    long long count_2q() const {
        return static_cast<long long>(n_edges_) - static_cast<long long>(n_vertices_) +
               static_cast<long long>(inputs_.size());
    }

    DiagramStats stats() const;
    OpenGraph underlying_open_graph() const;

    /// The five graph-like conditions that are not structural invariants of
    /// this representation (boundary wiring); throws with a reason on failure.
    void check_graph_like() const;
    bool is_graph_like() const;

    /// Order-independent structural fingerprint (vertices, phases, edges, boundary).
    std::size_t structural_hash() const;

    friend bool operator==(const ZxDiagram& a, const ZxDiagram& b);

private:
    std::vector<std::optional<Spider>> spiders_;
    std::vector<std::vector<Vertex>> adj_; // sorted neighbour lists
    std::vector<Vertex> inputs_, outputs_;
    std::vector<bool> input_had_, output_had_;
    std::size_t n_vertices_ = 0;
    std::size_t n_edges_ = 0;
};

} // namespace zxopt
