#include "zxopt/zx_diagram.hpp"

#include <functional>

namespace zxopt {

std::size_t OpenGraph::n_vertices() const {
    std::size_t n = 0;
    for (bool a : alive)
        n += a ? 1 : 0;
    return n;
}

std::size_t OpenGraph::n_edges() const {
    std::size_t twice = 0;
    for (std::size_t v = 0; v < adj.size(); ++v)
        if (alive[v])
            twice += adj[v].size();
    return twice / 2;
}

bool OpenGraph::has_edge(Vertex u, Vertex v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

bool OpenGraph::is_input(Vertex v) const {
    return std::find(inputs.begin(), inputs.end(), v) != inputs.end();
}

bool OpenGraph::is_output(Vertex v) const {
    return std::find(outputs.begin(), outputs.end(), v) != outputs.end();
}

ZxDiagram::ZxDiagram(int n_wires)
    : inputs_(n_wires, -1), outputs_(n_wires, -1), input_had_(n_wires, false),
      output_had_(n_wires, false) {}

Vertex ZxDiagram::add_spider(PhaseExpr phase) {
    spiders_.push_back(Spider{std::move(phase), Boundary{}});
    adj_.emplace_back();
    ++n_vertices_;
    return static_cast<Vertex>(spiders_.size() - 1);
}

void ZxDiagram::remove_spider(Vertex v) {
    if (!alive(v))
        throw ZxError("remove_spider: vertex not alive");
    if (is_boundary(v))
        throw ZxError("remove_spider: vertex is attached to a boundary wire");
    for (Vertex w : adj_[v]) {
        auto& a = adj_[w];
        a.erase(std::lower_bound(a.begin(), a.end(), v));
        --n_edges_;
    }
    adj_[v].clear();
    spiders_[v].reset();
    --n_vertices_;
}

void ZxDiagram::toggle_edge(Vertex u, Vertex v) {
    if (u == v)
        throw ZxError("toggle_edge: self-loop");
    if (!alive(u) || !alive(v))
        throw ZxError("toggle_edge: vertex not alive");
    if (has_edge(u, v))
        remove_edge(u, v);
    else
        add_edge(u, v);
}

void ZxDiagram::add_edge(Vertex u, Vertex v) {
    if (u == v)
        throw ZxError("add_edge: self-loop");
    auto& au = adj_[u];
    au.insert(std::upper_bound(au.begin(), au.end(), v), v);
    auto& av = adj_[v];
    av.insert(std::upper_bound(av.begin(), av.end(), u), u);
    ++n_edges_;
}

void ZxDiagram::remove_edge(Vertex u, Vertex v) {
    auto& au = adj_[u];
    au.erase(std::lower_bound(au.begin(), au.end(), v));
    auto& av = adj_[v];
    av.erase(std::lower_bound(av.begin(), av.end(), u));
    --n_edges_;
}

bool ZxDiagram::has_edge(Vertex u, Vertex v) const {
    const auto& a = adj_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
}

void ZxDiagram::attach_input(Vertex v, int wire, bool hadamard) {
    if (spider(v).boundary.kind != BoundaryKind::None)
        throw ZxError("attach_input: spider already attached to a boundary wire");
    spiders_[v]->boundary = Boundary{BoundaryKind::Input, wire};
    inputs_.at(wire) = v;
    input_had_.at(wire) = hadamard;
}

void ZxDiagram::attach_output(Vertex v, int wire, bool hadamard) {
    if (spider(v).boundary.kind != BoundaryKind::None)
        throw ZxError("attach_output: spider already attached to a boundary wire");
    spiders_[v]->boundary = Boundary{BoundaryKind::Output, wire};
    outputs_.at(wire) = v;
    output_had_.at(wire) = hadamard;
}

void ZxDiagram::move_boundary(Vertex from, Vertex to) {
    const Boundary b = spider(from).boundary;
    if (b.kind == BoundaryKind::None)
        throw ZxError("move_boundary: source has no boundary wire");
    if (spider(to).boundary.kind != BoundaryKind::None)
        throw ZxError("move_boundary: target already has a boundary wire");
    spiders_[from]->boundary = Boundary{};
    spiders_[to]->boundary = b;
    if (b.kind == BoundaryKind::Input)
        inputs_[b.wire] = to;
    else
        outputs_[b.wire] = to;
}

bool ZxDiagram::has_boundary_neighbor(Vertex v) const {
    for (Vertex w : adj_.at(v))
        if (is_boundary(w))
            return true;
    return false;
}

std::vector<Vertex> ZxDiagram::vertices() const {
    std::vector<Vertex> out;
    out.reserve(n_vertices_);
    for (Vertex v = 0; v < static_cast<Vertex>(spiders_.size()); ++v)
        if (spiders_[v].has_value())
            out.push_back(v);
    return out;
}

std::vector<std::pair<Vertex, Vertex>> ZxDiagram::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(n_edges_);
    for (Vertex v = 0; v < static_cast<Vertex>(spiders_.size()); ++v) {
        if (!spiders_[v].has_value())
            continue;
        for (Vertex w : adj_[v])
            if (v < w)
                out.emplace_back(v, w);
    }
    return out;
}

DiagramStats ZxDiagram::stats() const {
    DiagramStats s;
    s.n_vertices = n_vertices_;
    s.n_edges = n_edges_;
    for (Vertex v = 0; v < static_cast<Vertex>(spiders_.size()); ++v) {
        if (!spiders_[v].has_value())
            continue;
        const Spider& sp = *spiders_[v];
        if (sp.boundary.kind == BoundaryKind::None)
            ++s.n_internal;
        if (sp.phase.has_var() || !sp.phase.cliff.is_clifford())
            ++s.n_nonclifford;
    }
    return s;
}

OpenGraph ZxDiagram::underlying_open_graph() const {
    check_graph_like();
    OpenGraph g;
    g.alive.resize(spiders_.size(), false);
    g.adj.resize(spiders_.size());
    for (Vertex v = 0; v < static_cast<Vertex>(spiders_.size()); ++v) {
        if (!spiders_[v].has_value())
            continue;
        g.alive[v] = true;
        g.adj[v] = adj_[v];
    }
    g.inputs = inputs_;
    g.outputs = outputs_;
    return g;
}

void ZxDiagram::check_graph_like() const {
    for (int w = 0; w < n_wires(); ++w) {
        const Vertex in = inputs_[w];
        const Vertex out = outputs_[w];
        if (in < 0 || !alive(in))
            throw ZxError("graph-like: input wire " + std::to_string(w) + " not attached");
        if (out < 0 || !alive(out))
            throw ZxError("graph-like: output wire " + std::to_string(w) + " not attached");
        if (spider(in).boundary.kind != BoundaryKind::Input || spider(in).boundary.wire != w)
            throw ZxError("graph-like: inconsistent input attachment");
        if (spider(out).boundary.kind != BoundaryKind::Output || spider(out).boundary.wire != w)
            throw ZxError("graph-like: inconsistent output attachment");
    }
    // Spiders carry at most one wire by construction (Boundary is scalar);
    // edge-set semantics rule out loops and parallels.
}

bool ZxDiagram::is_graph_like() const {
    try {
        check_graph_like();
        return true;
    } catch (const ZxError&) {
        return false;
    }
}

std::size_t ZxDiagram::structural_hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t x) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (Vertex v = 0; v < static_cast<Vertex>(spiders_.size()); ++v) {
        if (!spiders_[v].has_value())
            continue;
        const Spider& sp = *spiders_[v];
        mix(static_cast<std::size_t>(v));
        mix(static_cast<std::size_t>(sp.phase.cliff.num) * 31 +
            static_cast<std::size_t>(sp.phase.cliff.den));
        if (sp.phase.var)
            mix(static_cast<std::size_t>(sp.phase.var->id * 2 + (sp.phase.var->sign > 0)));
        mix(static_cast<std::size_t>(sp.boundary.kind) * 131 +
            static_cast<std::size_t>(sp.boundary.wire + 1));
        for (Vertex w : adj_[v])
            mix(static_cast<std::size_t>(w) * 0x85ebca6bULL);
    }
    for (int w = 0; w < n_wires(); ++w)
        mix((input_had_[w] ? 2 : 0) + (output_had_[w] ? 1 : 0));
    return h;
}

bool operator==(const ZxDiagram& a, const ZxDiagram& b) {
    if (a.n_vertices_ != b.n_vertices_ || a.n_edges_ != b.n_edges_)
        return false;
    if (a.inputs_ != b.inputs_ || a.outputs_ != b.outputs_)
        return false;
    if (a.input_had_ != b.input_had_ || a.output_had_ != b.output_had_)
        return false;
    const Vertex bound = std::max(a.vertex_bound(), b.vertex_bound());
    for (Vertex v = 0; v < bound; ++v) {
        const bool av = a.alive(v);
        if (av != b.alive(v))
            return false;
        if (!av)
            continue;
        if (!(a.spider(v).phase == b.spider(v).phase))
            return false;
        if (a.spider(v).boundary.kind != b.spider(v).boundary.kind ||
            a.spider(v).boundary.wire != b.spider(v).boundary.wire)
            return false;
        if (a.adj_[v] != b.adj_[v])
            return false;
    }
    return true;
}

} // namespace zxopt
