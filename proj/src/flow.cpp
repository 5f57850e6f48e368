#include "zxopt/flow.hpp"

#include <algorithm>
#include <deque>

namespace zxopt {
namespace {

/// 0/1/2-colour DFS cycle check over an arc list restricted by `alive`.
bool arcs_acyclic(const std::vector<std::vector<Vertex>>& arcs, const std::vector<bool>& alive) {
    const int n = static_cast<int>(arcs.size());
    std::vector<int> state(n, 0);
    std::vector<std::pair<Vertex, std::size_t>> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (!alive[s] || state[s] != 0)
            continue;
        stack.emplace_back(s, 0);
        state[s] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < arcs[v].size()) {
                const Vertex w = arcs[v][i++];
                if (!alive[w])
                    continue;
                if (state[w] == 1)
                    return false;
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

} // namespace

bool InfluencingDigraph::acyclic() const { return arcs_acyclic(arcs, alive); }

std::optional<CausalFlow> find_cflow(const OpenGraph& g) {
    if (g.inputs.size() != g.outputs.size())
        throw ZxError("find_cflow: |I| != |O| is unsupported");
    const int bound = static_cast<int>(g.adj.size());

    std::vector<bool> is_input(bound, false), is_output(bound, false);
    for (Vertex v : g.inputs)
        is_input[v] = true;
    for (Vertex v : g.outputs)
        is_output[v] = true;

    CausalFlow flow;
    flow.successor.assign(bound, -1);
    flow.depth.assign(bound, -1);

    std::vector<bool> processed(bound, false);
    std::vector<int> unprocessed(bound, 0);
    std::size_t n_alive = 0, n_processed = 0;
    for (Vertex v = 0; v < bound; ++v) {
        if (!g.alive[v])
            continue;
        ++n_alive;
        unprocessed[v] = g.degree(v);
    }
    std::vector<Vertex> correctors;
    for (Vertex v : g.outputs) {
        processed[v] = true;
        flow.depth[v] = 0;
        ++n_processed;
        for (Vertex w : g.adj[v])
            --unprocessed[w];
        if (!is_input[v])
            correctors.push_back(v);
    }

    int d = 1;
    std::vector<Vertex> next_correctors;
    while (n_processed < n_alive) {
        bool assigned = false;
        next_correctors.clear();
        std::vector<Vertex> survivors;
        for (Vertex c : correctors) {
            if (unprocessed[c] != 1) {
                if (unprocessed[c] > 1)
                    survivors.push_back(c); // may become usable later
                continue;
            }
            Vertex u = -1;
            for (Vertex w : g.adj[c]) {
                if (!processed[w]) {
                    u = w;
                    break;
                }
            }
            if (u < 0) { // neighbour was claimed within this round
                continue;
            }
            flow.successor[u] = c;
            flow.depth[u] = d;
            processed[u] = true;
            ++n_processed;
            for (Vertex w : g.adj[u])
                --unprocessed[w];
            if (!is_input[u])
                next_correctors.push_back(u);
            assigned = true;
        }
        if (!assigned)
            return std::nullopt;
        correctors = std::move(survivors);
        correctors.insert(correctors.end(), next_correctors.begin(), next_correctors.end());
        ++d;
    }
    return flow;
}

InfluencingDigraph influencing_digraph(const OpenGraph& g, const CausalFlow& f) {
    InfluencingDigraph ig;
    ig.alive = g.alive;
    ig.arcs.resize(g.adj.size());
    for (Vertex u = 0; u < static_cast<Vertex>(g.adj.size()); ++u) {
        if (!g.alive[u] || g.is_output(u))
            continue;
        const Vertex c = f.successor[u];
        if (c < 0)
            continue;
        ig.arcs[u].push_back(c);
        for (Vertex w : g.adj[c])
            if (w != u)
                ig.arcs[u].push_back(w);
    }
    return ig;
}

bool verify_cflow(const OpenGraph& g, const CausalFlow& f) {
    const int bound = static_cast<int>(g.adj.size());
    if (static_cast<int>(f.successor.size()) < bound)
        return false;
    std::vector<bool> is_input(bound, false), is_output(bound, false);
    for (Vertex v : g.inputs)
        is_input[v] = true;
    for (Vertex v : g.outputs)
        is_output[v] = true;

    std::vector<bool> taken(bound, false);
    for (Vertex u = 0; u < bound; ++u) {
        if (!g.alive[u])
            continue;
        const Vertex c = f.successor[u];
        if (is_output[u]) {
            if (c >= 0)
                return false;
            continue;
        }
        if (c < 0 || !g.alive[c])
            return false; // not total
        if (is_input[c])
            return false; // successor must avoid inputs
        if (!g.has_edge(u, c))
            return false;
        if (taken[c])
            return false; // dipaths would share a vertex
        taken[c] = true;
    }
    return influencing_digraph(g, f).acyclic();
}

bool edge_bound_ok(long long n, long long k, long long m) {
    return m <= k * n - k * (k + 1) / 2;
}

namespace {

/// Kuhn's augmenting-path matching: successor choice for every non-output of
/// the subgraph, injective into the non-inputs.
bool match_successors(const std::vector<Vertex>& members,
                      const OpenGraph& g,
                      const std::vector<bool>& in_set,
                      const std::vector<bool>& is_input_s,
                      const std::vector<bool>& is_output_s,
                      std::vector<Vertex>& succ_out) {
    std::vector<Vertex> owner(g.adj.size(), -1); // candidate successor -> u
    auto try_assign = [&](Vertex u, auto&& self, std::vector<bool>& seen) -> bool {
        for (Vertex c : g.adj[u]) {
            if (!in_set[c] || is_input_s[c] || seen[c])
                continue;
            seen[c] = true;
            if (owner[c] < 0 || self(owner[c], self, seen)) {
                owner[c] = u;
                succ_out[u] = c;
                return true;
            }
        }
        return false;
    };
    for (Vertex u : members) {
        if (is_output_s[u])
            continue;
        std::vector<bool> seen(g.adj.size(), false);
        if (!try_assign(u, try_assign, seen))
            return false;
    }
    return true;
}

} // namespace

LocalPreservation check_local_preservation(const OpenGraph& g, const OpenGraph& g2,
                                           const CausalFlow& f) {
    LocalPreservation out;
    // the underlying theorem assumes the transformation fixes I and O
    if (g.inputs != g2.inputs || g.outputs != g2.outputs)
        return out;
    const int bound = static_cast<int>(std::max(g.adj.size(), g2.adj.size()));

    auto alive_in = [bound](const OpenGraph& gr, Vertex v) {
        return v < static_cast<int>(gr.alive.size()) && gr.alive[v];
    };
    auto has_edge_in = [&](const OpenGraph& gr, Vertex u, Vertex v) {
        return alive_in(gr, u) && alive_in(gr, v) && gr.has_edge(u, v);
    };

    // Transformation vertex set: endpoints of the edge symmetric difference,
    // image side restricted to the new graph.
    std::vector<bool> touched(bound, false);
    for (Vertex v = 0; v < bound; ++v) {
        const bool a = alive_in(g, v), b = alive_in(g2, v);
        if (a != b) {
            touched[v] = true;
            continue;
        }
        if (!b)
            continue;
        for (Vertex w : g2.adj[v])
            if (!has_edge_in(g, v, w))
                touched[v] = true;
        for (Vertex w : g.adj[v])
            if (!has_edge_in(g2, v, w))
                touched[v] = true;
    }
    std::vector<bool> in_s(bound, false);
    std::vector<Vertex> members;
    for (Vertex v = 0; v < bound; ++v) {
        if (touched[v] && alive_in(g2, v)) {
            in_s[v] = true;
            members.push_back(v);
        }
    }
    if (members.empty()) {
        out.verdict = PreservationVerdict::Preserved;
        CausalFlow same = f;
        out.flow = std::move(same);
        return out;
    }

    std::vector<bool> is_input(bound, false), is_output(bound, false);
    for (Vertex v : g2.inputs)
        is_input[v] = true;
    for (Vertex v : g2.outputs)
        is_output[v] = true;

    auto old_succ = [&](Vertex v) -> Vertex {
        return v < static_cast<int>(f.successor.size()) ? f.successor[v] : -1;
    };

    // Open subgraph I/O of the image set for the old successor function.
    std::vector<bool> is_input_s(bound, false), is_output_s(bound, false);
    for (Vertex v : members) {
        if (is_input[v])
            is_input_s[v] = true;
        const Vertex fv = old_succ(v);
        if (is_output[v] || (fv >= 0 && alive_in(g2, fv) && !in_s[fv]))
            is_output_s[v] = true;
    }
    for (Vertex u = 0; u < bound; ++u) {
        if (!alive_in(g2, u) || in_s[u])
            continue;
        const Vertex fu = old_succ(u);
        if (fu >= 0 && fu < bound && in_s[fu])
            is_input_s[fu] = true;
    }
    int n_is = 0, n_os = 0;
    for (Vertex v : members) {
        n_is += is_input_s[v] ? 1 : 0;
        n_os += is_output_s[v] ? 1 : 0;
    }
    if (n_is != n_os)
        return out;

    // Condition (i): disjoint dipath cover via an injective successor choice.
    std::vector<Vertex> succ_t(bound, -1);
    {
        // restrict matching to edges inside the subgraph
        OpenGraph sub;
        sub.alive.assign(bound, false);
        sub.adj.assign(bound, {});
        for (Vertex v : members) {
            sub.alive[v] = true;
            for (Vertex w : g2.adj[v])
                if (in_s[w])
                    sub.adj[v].push_back(w);
        }
        if (!match_successors(members, sub, in_s, is_input_s, is_output_s, succ_t))
            return out;
    }

    // Stitched successor function on the new graph.
    std::vector<Vertex> succ2(bound, -1);
    for (Vertex v = 0; v < bound; ++v) {
        if (!alive_in(g2, v) || is_output[v])
            continue;
        if (in_s[v] && !is_output_s[v])
            succ2[v] = succ_t[v];
        else
            succ2[v] = old_succ(v);
        if (succ2[v] < 0 || !alive_in(g2, succ2[v]))
            return out;
    }

    // Extended neighbourhood of the image set.
    std::vector<bool> in_n(bound, false);
    std::vector<Vertex> hood;
    for (Vertex v : members) {
        if (!in_n[v]) {
            in_n[v] = true;
            hood.push_back(v);
        }
        for (Vertex w : g2.adj[v]) {
            if (!in_n[w]) {
                in_n[w] = true;
                hood.push_back(w);
            }
        }
    }

    // Condition (ii): influencing subdigraph of the hood for f' is acyclic.
    auto subdigraph_arcs = [bound](const OpenGraph& gr, const std::vector<Vertex>& succ,
                                   const std::vector<bool>& keep,
                                   const std::vector<bool>& is_out) {
        std::vector<std::vector<Vertex>> arcs(bound);
        for (Vertex u = 0; u < bound; ++u) {
            if (!keep[u] || u >= static_cast<int>(gr.alive.size()) || !gr.alive[u] || is_out[u])
                continue;
            const Vertex c = succ[u];
            if (c < 0)
                continue;
            if (keep[c] && c < static_cast<int>(gr.alive.size()) && gr.alive[c])
                arcs[u].push_back(c);
            if (c < static_cast<int>(gr.adj.size()))
                for (Vertex w : gr.adj[c])
                    if (w != u && keep[w])
                        arcs[u].push_back(w);
        }
        return arcs;
    };
    {
        auto arcs = subdigraph_arcs(g2, succ2, in_n, is_output);
        if (!arcs_acyclic(arcs, in_n))
            return out;
    }

    // Condition (iii): union of the two pre-order subrelations on hood \ S.
    std::vector<bool> rim(bound, false);
    std::vector<Vertex> rim_list;
    for (Vertex v : hood) {
        if (!in_s[v]) {
            rim[v] = true;
            rim_list.push_back(v);
        }
    }
    if (!rim_list.empty()) {
        std::vector<bool> old_out(bound, false);
        for (Vertex v : g.outputs)
            old_out[v] = true;
        std::vector<Vertex> old_succ_vec(bound, -1);
        for (Vertex v = 0; v < bound; ++v)
            if (alive_in(g, v) && !old_out[v])
                old_succ_vec[v] = old_succ(v);

        auto reach_pairs = [&](const std::vector<std::vector<Vertex>>& arcs,
                               const std::vector<bool>& keep) {
            std::vector<std::pair<Vertex, Vertex>> pairs;
            for (Vertex s : rim_list) {
                std::vector<bool> seen(bound, false);
                std::deque<Vertex> q{s};
                seen[s] = true;
                while (!q.empty()) {
                    const Vertex v = q.front();
                    q.pop_front();
                    for (Vertex w : arcs[v]) {
                        if (keep[w] && !seen[w]) {
                            seen[w] = true;
                            q.push_back(w);
                        }
                    }
                }
                for (Vertex t : rim_list)
                    if (t != s && seen[t])
                        pairs.emplace_back(s, t);
            }
            return pairs;
        };

        std::vector<std::vector<Vertex>> union_arcs(bound);
        // new-side relation: pre-order of f' within the hood subgraph
        {
            auto arcs = subdigraph_arcs(g2, succ2, in_n, is_output);
            for (auto& [a, b] : reach_pairs(arcs, in_n))
                union_arcs[a].push_back(b);
        }
        // old-side relation: the pre-order of f over the whole original
        // graph, restricted to rim pairs (paths may leave the hood)
        {
            std::vector<bool> all(bound, true);
            auto arcs = subdigraph_arcs(g, old_succ_vec, all, old_out);
            for (auto& [a, b] : reach_pairs(arcs, all))
                union_arcs[a].push_back(b);
        }
        if (!arcs_acyclic(union_arcs, rim))
            return out;
    }

    // Preserved: assemble the witness with fresh depth labels from a global
    // topological pass over the influencing digraph.
    CausalFlow nf;
    nf.successor = succ2;
    nf.depth.assign(bound, -1);
    {
        OpenGraph g2c = g2;
        CausalFlow probe;
        probe.successor = succ2;
        probe.depth.assign(bound, -1);
        InfluencingDigraph ig = influencing_digraph(g2c, probe);
        // depth(v) = length of longest arc-path starting at v (outputs are sinks)
        std::vector<int> memo(bound, -2);
        auto depth_of = [&](Vertex v, auto&& self) -> int {
            if (memo[v] != -2)
                return memo[v];
            memo[v] = 0;
            int best = 0;
            for (Vertex w : ig.arcs[v])
                if (w < bound && g2.alive[w])
                    best = std::max(best, 1 + self(w, self));
            return memo[v] = best;
        };
        for (Vertex v = 0; v < bound; ++v)
            if (alive_in(g2, v))
                nf.depth[v] = depth_of(v, depth_of);
    }
    out.verdict = PreservationVerdict::Preserved;
    out.flow = std::move(nf);
    return out;
}

std::optional<CausalFlow> cflow_with_gadgets(const OpenGraph& g,
                                             const std::vector<MeasurementPlane>& label) {
    const int bound = static_cast<int>(g.adj.size());
    std::vector<bool> is_output(bound, false);
    for (Vertex v : g.outputs)
        is_output[v] = true;
    std::vector<bool> is_input(bound, false);
    for (Vertex v : g.inputs)
        is_input[v] = true;

    OpenGraph stripped = g;
    std::vector<Vertex> gadget_vertices;
    for (Vertex v = 0; v < bound; ++v) {
        if (!g.alive[v] || is_output[v])
            continue;
        const MeasurementPlane p = v < static_cast<int>(label.size()) ? label[v]
                                                                      : MeasurementPlane::XY;
        if (p == MeasurementPlane::XZ)
            throw ZxError("cflow_with_gadgets: XZ plane is unsupported");
        if (p == MeasurementPlane::YZ) {
            if (is_input[v])
                throw ZxError("cflow_with_gadgets: YZ-labelled input is unsupported");
            gadget_vertices.push_back(v);
        }
    }
    for (Vertex v : gadget_vertices) {
        stripped.alive[v] = false;
        for (Vertex w : stripped.adj[v]) {
            auto& a = stripped.adj[w];
            a.erase(std::remove(a.begin(), a.end(), v), a.end());
        }
        stripped.adj[v].clear();
    }

    auto base = find_cflow(stripped);
    if (!base)
        return std::nullopt;
    CausalFlow flow = *base;
    for (Vertex v : gadget_vertices) {
        flow.successor[v] = v; // self-successor
        int d = 0;
        for (Vertex w : g.adj[v])
            if (flow.depth[w] >= 0)
                d = std::max(d, flow.depth[w] + 1);
        flow.depth[v] = d;
    }
    return flow;
}

} // namespace zxopt
