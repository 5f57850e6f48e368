#include "zxopt/optimizer.hpp"

#include "zxopt/circuit_zx.hpp"
#include "zxopt/teleport.hpp"

#include <algorithm>

namespace zxopt {
namespace {

/// Dipaths must keep pairing input wire k with output wire k; re-paired
/// flows would force swap gates into the extraction and break the exact
/// 2Q-count accounting.
bool flow_pairing_ok(const ZxDiagram& d, const CausalFlow& flow) {
    for (int k = 0; k < d.n_wires(); ++k) {
        Vertex v = d.inputs()[k];
        std::size_t steps = 0;
        while (flow.successor[v] >= 0) {
            v = flow.successor[v];
            if (++steps > d.n_vertices())
                return false;
        }
        if (v != d.outputs()[k])
            return false;
    }
    return true;
}

int kind_rank(RewriteKind k) {
    switch (k) {
    case RewriteKind::IdFuse:
        return 0;
    case RewriteKind::LComp:
        return 1;
    case RewriteKind::Pivot:
        return 2;
    default:
        return 3;
    }
}

/// Deterministic selection order: score desc, vertex-removal first, then
/// targets, then kind.
bool better(const RewriteMatch& a, const RewriteMatch& b) {
    const long long sa = -a.delta_2q(), sb = -b.delta_2q();
    if (sa != sb)
        return sa > sb;
    if (a.delta_v != b.delta_v)
        return a.delta_v < b.delta_v;
    if (a.v0 != b.v0)
        return a.v0 < b.v0;
    if (a.v1 != b.v1)
        return a.v1 < b.v1;
    if (a.unfuse0 != b.unfuse0)
        return a.unfuse0 < b.unfuse0;
    if (a.unfuse1 != b.unfuse1)
        return a.unfuse1 < b.unfuse1;
    return kind_rank(a.kind) < kind_rank(b.kind);
}

bool plain_phase_is(const ZxDiagram& d, Vertex v, bool (Phase::*pred)() const) {
    const PhaseExpr& p = d.phase(v);
    return !p.var && (p.cliff.*pred)();
}

bool id_fuse_candidate(const ZxDiagram& d, Vertex v) {
    if (!d.alive(v) || !d.is_internal(v) || d.degree(v) != 2)
        return false;
    if (!plain_phase_is(d, v, &Phase::is_zero))
        return false;
    return !(d.is_boundary(d.neighbors(v)[0]) && d.is_boundary(d.neighbors(v)[1]));
}

/// Subsets of `pool` of size <= cap, each combined with the forced prefix.
/// Forced members (boundary-adjacent neighbours, the target's own wire) are
/// base equipment and do not consume the strategic budget.
void enumerate_subsets(const std::vector<Vertex>& forced, const std::vector<Vertex>& pool,
                       int cap, const std::function<void(std::vector<Vertex>)>& yield) {
    const int slack = cap;
    if (slack < 0)
        return;
    std::vector<int> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        std::vector<Vertex> s = forced;
        for (int i : pick)
            s.push_back(pool[i]);
        std::sort(s.begin(), s.end());
        yield(std::move(s));
        if (static_cast<int>(pick.size()) == slack)
            return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            pick.push_back(static_cast<int>(i));
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

void lcomp_matches_at(const ZxDiagram& d, Vertex v, const OptimizerConfig& cfg,
                      std::vector<RewriteMatch>& out) {
    if (!d.alive(v) || d.phase(v).has_var())
        return;
    // any phase qualifies: unfusing splits off the non-(+/-pi/2) remainder,
    // which needs at least one detached neighbour to land on. A wire on the
    // target itself is detached like a neighbour and uses one subset slot.
    const bool needs_split = !d.phase(v).cliff.is_proper_clifford();
    const bool wire = d.is_boundary(v);
    const int cap = cfg.s_max_lcomp;
    std::vector<Vertex> forced, pool;
    for (Vertex w : d.neighbors(v))
        (d.is_boundary(w) ? forced : pool).push_back(w);
    enumerate_subsets(forced, pool, cap, [&](std::vector<Vertex> s) {
        if (needs_split && s.empty() && !wire)
            return;
        out.push_back(make_lcomp_match(d, v, std::move(s), wire));
    });
}

void pivot_matches_at(const ZxDiagram& d, Vertex u, Vertex v, const OptimizerConfig& cfg,
                      std::vector<RewriteMatch>& out) {
    if (u > v)
        std::swap(u, v);
    if (!d.alive(u) || !d.alive(v) || !d.has_edge(u, v))
        return;
    if (d.phase(u).has_var() || d.phase(v).has_var())
        return;
    const bool split_u = !d.phase(u).cliff.is_pauli();
    const bool split_v = !d.phase(v).cliff.is_pauli();
    const bool wire_u = d.is_boundary(u);
    const bool wire_v = d.is_boundary(v);
    const int cap_u = cfg.s_max_pivot;
    const int cap_v = cfg.s_max_pivot;
    std::vector<Vertex> forced_u, pool_u, forced_v, pool_v;
    for (Vertex w : d.neighbors(u)) {
        if (w == v)
            continue;
        (d.is_boundary(w) ? forced_u : pool_u).push_back(w);
    }
    for (Vertex w : d.neighbors(v)) {
        if (w == u)
            continue;
        (d.is_boundary(w) ? forced_v : pool_v).push_back(w);
    }
    enumerate_subsets(forced_u, pool_u, cap_u, [&](std::vector<Vertex> su) {
        if (split_u && su.empty() && !wire_u)
            return;
        enumerate_subsets(forced_v, pool_v, cap_v, [&](std::vector<Vertex> sv) {
            if (split_v && sv.empty() && !wire_v)
                return;
            out.push_back(make_pivot_match(d, u, v, su, std::move(sv), wire_u, wire_v));
        });
    });
}

void matches_with_target_in(const ZxDiagram& d, const std::vector<Vertex>& id_fuse_targets,
                            const std::vector<Vertex>& lcomp_targets,
                            const std::vector<std::pair<Vertex, Vertex>>& pivot_edges,
                            const OptimizerConfig& cfg, std::vector<RewriteMatch>& out) {
    for (Vertex v : id_fuse_targets)
        if (id_fuse_candidate(d, v))
            out.push_back(make_id_fuse_match(d, v));
    for (Vertex v : lcomp_targets)
        lcomp_matches_at(d, v, cfg, out);
    for (auto [u, v] : pivot_edges)
        pivot_matches_at(d, u, v, cfg, out);
}

void sort_canonical(std::vector<RewriteMatch>& ms) {
    std::sort(ms.begin(), ms.end(), better);
}

} // namespace

long long score(const RewriteMatch& m) { return -m.delta_2q(); }

bool accept_match(const RewriteMatch& m) {
    return m.delta_2q() < 0 || (m.delta_2q() == 0 && m.delta_v < 0);
}

MatchList find_matches(const ZxDiagram& d, const OptimizerConfig& cfg) {
    MatchList list;
    const std::vector<Vertex> vs = d.vertices();
    std::vector<std::pair<Vertex, Vertex>> es = d.edges();
    matches_with_target_in(d, vs, vs, es, cfg, list.matches);
    sort_canonical(list.matches);
    return list;
}

MatchList update_matches(const MatchList& list, const ApplyResult& applied,
                         const ZxDiagram& d_new, const OptimizerConfig& cfg) {
    // Region: closed neighbourhood of everything the rewrite touched.
    std::vector<Vertex> region = applied.touched;
    region.insert(region.end(), applied.created.begin(), applied.created.end());
    std::vector<bool> in_hood(d_new.vertex_bound(), false);
    auto mark = [&](Vertex v) {
        if (v >= 0 && v < d_new.vertex_bound())
            in_hood[v] = true;
    };
    for (Vertex v : region) {
        if (!d_new.alive(v))
            continue;
        mark(v);
        for (Vertex w : d_new.neighbors(v))
            mark(w);
    }
    auto hood = [&](Vertex v) { return v >= 0 && v < d_new.vertex_bound() && in_hood[v]; };

    auto core_hits = [&](const RewriteMatch& m) {
        if (!d_new.alive(m.v0) || (m.v1 >= 0 && !d_new.alive(m.v1)))
            return true;
        switch (m.kind) {
        case RewriteKind::IdFuse: {
            if (hood(m.v0))
                return true;
            for (Vertex w : d_new.neighbors(m.v0))
                if (hood(w))
                    return true;
            return false;
        }
        case RewriteKind::LComp:
            return hood(m.v0);
        case RewriteKind::Pivot:
            return hood(m.v0) || hood(m.v1);
        default:
            return true;
        }
    };

    MatchList out;
    for (const RewriteMatch& m : list.matches)
        if (!core_hits(m))
            out.matches.push_back(m);

    // Re-enumerate inside the region: IdFuse needs two hops (its deltas read
    // the fused pair's common neighbours), LComp one, Pivot edges with an
    // endpoint in the hood.
    std::vector<Vertex> lcomp_targets, idf_targets;
    std::vector<std::pair<Vertex, Vertex>> pivot_edges;
    std::vector<bool> seen(d_new.vertex_bound(), false);
    for (Vertex v = 0; v < d_new.vertex_bound(); ++v) {
        if (!in_hood[v] || !d_new.alive(v))
            continue;
        lcomp_targets.push_back(v);
        if (!seen[v]) {
            seen[v] = true;
            idf_targets.push_back(v);
        }
        for (Vertex w : d_new.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                idf_targets.push_back(w);
            }
            if (v < w || !in_hood[w])
                pivot_edges.emplace_back(std::min(v, w), std::max(v, w));
        }
    }
    std::sort(pivot_edges.begin(), pivot_edges.end());
    pivot_edges.erase(std::unique(pivot_edges.begin(), pivot_edges.end()), pivot_edges.end());

    std::vector<RewriteMatch> fresh;
    for (Vertex v : idf_targets) {
        if (!id_fuse_candidate(d_new, v))
            continue;
        // include only if the core really intersects the hood
        bool hit = hood(v);
        for (Vertex w : d_new.neighbors(v))
            hit = hit || hood(w);
        if (hit)
            fresh.push_back(make_id_fuse_match(d_new, v));
    }
    for (Vertex v : lcomp_targets)
        lcomp_matches_at(d_new, v, cfg, fresh);
    for (auto [u, v] : pivot_edges)
        pivot_matches_at(d_new, u, v, cfg, fresh);

    // retained part is already sorted; merge the sorted fresh block in
    sort_canonical(fresh);
    const std::size_t mid = out.matches.size();
    out.matches.insert(out.matches.end(), fresh.begin(), fresh.end());
    std::inplace_merge(out.matches.begin(), out.matches.begin() + static_cast<long>(mid),
                       out.matches.end(), better);
    return out;
}

CausalFlow optimize_diagram(ZxDiagram& d, const OptimizerConfig& cfg, FlowOptStats* stats) {
    FlowOptStats local;
    FlowOptStats& st = stats ? *stats : local;

    auto flow = find_cflow(d.underlying_open_graph());
    if (!flow)
        throw ZxError("optimize_diagram: input diagram admits no causal flow");
    ++st.flow_rechecks;

    MatchList list = find_matches(d, cfg);
    std::vector<RewriteMatch> rejected;
    long long iterations = 0;
    long long last_2q = d.count_2q();

    while (!list.empty()) {
        if (cfg.max_iterations && iterations >= *cfg.max_iterations)
            break;
        // list is kept sorted; the head is the best candidate
        const RewriteMatch m = list.matches.front();
        if (!accept_match(m))
            break;

        ZxDiagram candidate = d;
        ApplyResult res;
        try {
            res = apply_match(candidate, m);
        } catch (const ZxError&) {
            // stale re-admitted candidate; drop it
            list.matches.erase(list.matches.begin());
            continue;
        }

        std::optional<CausalFlow> new_flow;
        if (cfg.use_local_flow_check) {
            LocalPreservation lp = check_local_preservation(
                d.underlying_open_graph(), candidate.underlying_open_graph(), *flow);
            if (lp.verdict == PreservationVerdict::Preserved) {
                new_flow = std::move(lp.flow);
                ++st.local_check_hits;
            }
        }
        if (!new_flow) {
            new_flow = find_cflow(candidate.underlying_open_graph());
            ++st.flow_rechecks;
        }

        if (!new_flow || !flow_pairing_ok(candidate, *new_flow)) {
            // park the match: the flow verdict may change after later
            // accepted rewrites reshape the graph
            rejected.push_back(m);
            list.matches.erase(list.matches.begin());
            ++st.rejected_flow;
            continue;
        }

        const ZxDiagram before = std::move(d);
        d = std::move(candidate);
        flow = std::move(new_flow);
        ++st.accepted;
        ++iterations;

        if (d.count_2q() > last_2q)
            throw ZxError("optimize_diagram: 2Q-count increased");
        last_2q = d.count_2q();

        if (cfg.on_accept && *cfg.on_accept)
            (*cfg.on_accept)(before, d, m, *flow);

        list = update_matches(list, res, d, cfg);
        // re-admit parked matches unless the refresh already regenerated
        // (or invalidated) them; the list then equals a fresh enumeration
        for (const RewriteMatch& r : rejected) {
            if (!d.alive(r.v0) || (r.v1 >= 0 && !d.alive(r.v1)))
                continue;
            const auto pos =
                std::lower_bound(list.matches.begin(), list.matches.end(), r, better);
            if (pos != list.matches.end() && *pos == r)
                continue;
            list.matches.insert(pos, r);
        }
        rejected.clear();
    }
    return *flow;
}

Circuit flow_opt(const Circuit& c, const OptimizerConfig& cfg, FlowOptStats* stats) {
    auto [diagram, table] = teleport_phases(c);
    ZxDiagram d = resolve_all(table, diagram);
    const CausalFlow flow = optimize_diagram(d, cfg, stats);
    return basic_optimize(extract_circuit(d, flow));
}

} // namespace zxopt
