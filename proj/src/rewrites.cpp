#include "zxopt/rewrites.hpp"

#include <algorithm>

namespace zxopt {
namespace {

void require(bool cond, const char* msg) {
    if (!cond)
        throw ZxError(std::string("no-match: ") + msg);
}

/// Consume a spider whose effective phase the rewrite fixed to `eff`.
void consume_phase(const ZxDiagram& d, Vertex v, Phase eff, const PhaseEnv* env) {
    const PhaseExpr& p = d.phase(v);
    if (!p.var)
        return;
    if (!env || !env->force)
        throw ZxError("consuming a variable-hosting spider without a phase table");
    Phase total = eff - p.cliff;
    if (p.var->sign < 0)
        total = -total;
    env->force(*p.var, total);
}

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

long long edges_among(const ZxDiagram& d, const std::vector<Vertex>& set) {
    long long e = 0;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            e += d.has_edge(set[i], set[j]) ? 1 : 0;
    return e;
}

} // namespace

Phase effective_phase(const ZxDiagram& d, Vertex v, const PhaseEnv* env) {
    const PhaseExpr& p = d.phase(v);
    if (!p.var)
        return p.cliff;
    if (!env || !env->group_total)
        throw ZxError("effective_phase: unresolved variable without a phase table");
    const Phase t = env->group_total(p.var->id);
    return p.var->sign > 0 ? p.cliff + t : p.cliff - t;
}

void fuse_phase_exprs(PhaseExpr& a, const PhaseExpr& b, const PhaseEnv* env) {
    a.cliff += b.cliff;
    if (!b.var)
        return;
    if (!a.var) {
        a.var = b.var;
        return;
    }
    if (!env || !env->fuse)
        throw ZxError("phase fusion of two variables without a phase table");
    env->fuse(*a.var, *b.var);
}

std::optional<Vertex> gadget_top(const ZxDiagram& d, Vertex base) {
    if (!d.alive(base) || !d.is_internal(base))
        return std::nullopt;
    Vertex top = -1;
    for (Vertex w : d.neighbors(base)) {
        if (d.degree(w) == 1 && d.is_internal(w)) {
            if (top != -1)
                return std::nullopt; // ambiguous
            top = w;
        }
    }
    if (top == -1 || d.degree(base) < 2)
        return std::nullopt;
    return top;
}

ApplyResult id_fuse(ZxDiagram& d, Vertex v, const PhaseEnv* env) {
    require(d.alive(v), "vertex does not exist");
    require(d.is_internal(v), "identity spider must be internal");
    require(d.degree(v) == 2, "identity spider must have degree 2");
    require(effective_phase(d, v, env).is_zero(), "identity spider must have phase 0");

    const Vertex a = d.neighbors(v)[0];
    const Vertex b = d.neighbors(v)[1];
    require(!(d.is_boundary(a) && d.is_boundary(b)),
            "fusion would attach two boundary wires to one spider");

    Vertex s = a, t = b;
    if (d.is_boundary(b) || (!d.is_boundary(a) && b < a))
        std::swap(s, t);

    const long long e0 = static_cast<long long>(d.n_edges());
    const long long v0 = static_cast<long long>(d.n_vertices());

    consume_phase(d, v, Phase::zero(), env);
    d.remove_spider(v);

    PhaseExpr merged = d.phase(s);
    fuse_phase_exprs(merged, d.phase(t), env);
    d.set_phase(s, merged);

    ApplyResult r;
    r.touched.push_back(s);
    const std::vector<Vertex> tn = d.neighbors(t);
    for (Vertex w : tn) {
        d.remove_edge(t, w);
        if (w == s) {
            d.add_to_phase(s, Phase::pi()); // Hadamard self-loop
        } else {
            d.toggle_edge(s, w);
            r.touched.push_back(w);
        }
    }
    if (d.is_boundary(t))
        d.move_boundary(t, s);
    d.remove_spider(t);

    r.delta_e = static_cast<long long>(d.n_edges()) - e0;
    r.delta_v = static_cast<long long>(d.n_vertices()) - v0;
    r.touched = sorted_unique(std::move(r.touched));
    return r;
}

ApplyResult neighbour_unfuse(ZxDiagram& d, Vertex v, const std::vector<Vertex>& s_n,
                             bool take_wire) {
    require(d.alive(v), "vertex does not exist");
    for (Vertex s : s_n)
        if (!d.has_edge(v, s))
            throw ZxError("neighbour_unfuse: S_N is not a subset of N(v)");
    if (take_wire)
        require(d.is_boundary(v), "take_wire requires a boundary-attached target");

    const Vertex w1 = d.add_spider();
    const Vertex w2 = d.add_spider();
    for (Vertex s : s_n) {
        d.remove_edge(v, s);
        d.add_edge(w2, s);
    }
    if (take_wire)
        d.move_boundary(v, w2);
    d.add_edge(v, w1);
    d.add_edge(w1, w2);

    ApplyResult r;
    r.delta_e = 2;
    r.delta_v = 2;
    r.created = {w1, w2};
    r.touched = s_n;
    r.touched.push_back(v);
    r.touched.push_back(w1);
    r.touched.push_back(w2);
    r.touched = sorted_unique(std::move(r.touched));
    return r;
}

ApplyResult local_comp(ZxDiagram& d, Vertex v, const std::vector<Vertex>& s_n,
                       const PhaseEnv* env, bool strict_boundary, bool take_wire) {
    require(d.alive(v), "vertex does not exist");
    require(take_wire ? d.is_boundary(v) : d.is_internal(v),
            "target must be internal (or have its wire detached)");
    for (Vertex s : s_n)
        require(d.has_edge(v, s), "S_N must be a subset of N(v)");
    if (strict_boundary) {
        for (Vertex w : d.neighbors(v)) {
            if (d.is_boundary(w))
                require(std::find(s_n.begin(), s_n.end(), w) != s_n.end(),
                        "boundary-adjacent neighbours must be unfused");
        }
    }
    // the unfusion may split the phase, leaving a +/-pi/2 residual; the
    // remainder travels to the detached spider (never onto a bare pendant)
    Phase eps = effective_phase(d, v, env);
    Phase moved = Phase::zero();
    if (!eps.is_proper_clifford()) {
        require(!s_n.empty() || take_wire, "residual phase must be +/-pi/2");
        require(!d.phase(v).has_var(), "cannot split a symbolic phase");
        moved = eps - Phase::half_pi();
        eps = Phase::half_pi();
    }

    const long long e0 = static_cast<long long>(d.n_edges());
    const long long v0 = static_cast<long long>(d.n_vertices());

    ApplyResult r;
    if (!s_n.empty() || take_wire) {
        ApplyResult u = neighbour_unfuse(d, v, s_n, take_wire);
        r.touched = u.touched;
        r.created = u.created;
        if (!moved.is_zero()) {
            d.add_to_phase(v, -moved);
            d.add_to_phase(u.created[1], moved);
        }
    }

    const std::vector<Vertex> nbrs = d.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
            d.toggle_edge(nbrs[i], nbrs[j]);
    for (Vertex w : nbrs) {
        d.add_to_phase(w, -eps);
        r.touched.push_back(w);
    }
    consume_phase(d, v, eps, env);
    d.remove_spider(v);

    r.delta_e = static_cast<long long>(d.n_edges()) - e0;
    r.delta_v = static_cast<long long>(d.n_vertices()) - v0;
    r.touched = sorted_unique(std::move(r.touched));
    r.touched.erase(std::remove(r.touched.begin(), r.touched.end(), v), r.touched.end());
    return r;
}

ApplyResult pivot(ZxDiagram& d, Vertex u, Vertex v, const std::vector<Vertex>& s_nu,
                  const std::vector<Vertex>& s_nv, const PhaseEnv* env, bool strict_boundary,
                  bool take_wire_u, bool take_wire_v) {
    require(d.alive(u) && d.alive(v), "vertex does not exist");
    require(u != v && d.has_edge(u, v), "pivot targets must be adjacent");
    require(take_wire_u ? d.is_boundary(u) : d.is_internal(u),
            "pivot target must be internal (or have its wire detached)");
    require(take_wire_v ? d.is_boundary(v) : d.is_internal(v),
            "pivot target must be internal (or have its wire detached)");
    for (Vertex s : s_nu)
        require(s != v && d.has_edge(u, s), "S_Nu must be a subset of N(u) minus v");
    for (Vertex s : s_nv)
        require(s != u && d.has_edge(v, s), "S_Nv must be a subset of N(v) minus u");
    if (strict_boundary) {
        for (Vertex w : d.neighbors(u))
            if (w != v && d.is_boundary(w))
                require(std::find(s_nu.begin(), s_nu.end(), w) != s_nu.end(),
                        "boundary-adjacent neighbours of u must be unfused");
        for (Vertex w : d.neighbors(v))
            if (w != u && d.is_boundary(w))
                require(std::find(s_nv.begin(), s_nv.end(), w) != s_nv.end(),
                        "boundary-adjacent neighbours of v must be unfused");
    }
    Phase pu = effective_phase(d, u, env);
    Phase pv = effective_phase(d, v, env);
    Phase moved_u = Phase::zero(), moved_v = Phase::zero();
    if (!pu.is_pauli()) {
        require(!s_nu.empty() || take_wire_u, "pivot residuals must be Pauli");
        require(!d.phase(u).has_var(), "cannot split a symbolic phase");
        moved_u = pu;
        pu = Phase::zero();
    }
    if (!pv.is_pauli()) {
        require(!s_nv.empty() || take_wire_v, "pivot residuals must be Pauli");
        require(!d.phase(v).has_var(), "cannot split a symbolic phase");
        moved_v = pv;
        pv = Phase::zero();
    }

    const long long e0 = static_cast<long long>(d.n_edges());
    const long long v0 = static_cast<long long>(d.n_vertices());

    ApplyResult r;
    if (!s_nu.empty() || take_wire_u) {
        ApplyResult x = neighbour_unfuse(d, u, s_nu, take_wire_u);
        r.touched.insert(r.touched.end(), x.touched.begin(), x.touched.end());
        r.created.insert(r.created.end(), x.created.begin(), x.created.end());
        if (!moved_u.is_zero()) {
            d.add_to_phase(u, -moved_u);
            d.add_to_phase(x.created[1], moved_u);
        }
    }
    if (!s_nv.empty() || take_wire_v) {
        ApplyResult x = neighbour_unfuse(d, v, s_nv, take_wire_v);
        r.touched.insert(r.touched.end(), x.touched.begin(), x.touched.end());
        r.created.insert(r.created.end(), x.created.begin(), x.created.end());
        if (!moved_v.is_zero()) {
            d.add_to_phase(v, -moved_v);
            d.add_to_phase(x.created[1], moved_v);
        }
    }

    std::vector<Vertex> a_set, b_set, c_set;
    for (Vertex w : d.neighbors(u)) {
        if (w == v)
            continue;
        (d.has_edge(v, w) ? a_set : b_set).push_back(w);
    }
    for (Vertex w : d.neighbors(v)) {
        if (w == u || d.has_edge(u, w))
            continue;
        c_set.push_back(w);
    }

    auto cross_complement = [&d](const std::vector<Vertex>& xs, const std::vector<Vertex>& ys) {
        for (Vertex x : xs)
            for (Vertex y : ys)
                d.toggle_edge(x, y);
    };
    cross_complement(a_set, b_set);
    cross_complement(a_set, c_set);
    cross_complement(b_set, c_set);

    const Phase pi = Phase::pi();
    for (Vertex w : a_set)
        d.add_to_phase(w, pu + pv + pi);
    for (Vertex w : b_set)
        d.add_to_phase(w, pv);
    for (Vertex w : c_set)
        d.add_to_phase(w, pu);

    consume_phase(d, u, pu, env);
    consume_phase(d, v, pv, env);
    d.remove_spider(u);
    d.remove_spider(v);

    for (const auto* s : {&a_set, &b_set, &c_set})
        r.touched.insert(r.touched.end(), s->begin(), s->end());
    r.delta_e = static_cast<long long>(d.n_edges()) - e0;
    r.delta_v = static_cast<long long>(d.n_vertices()) - v0;
    r.touched = sorted_unique(std::move(r.touched));
    r.touched.erase(std::remove_if(r.touched.begin(), r.touched.end(),
                                   [&](Vertex w) { return !d.alive(w); }),
                    r.touched.end());
    return r;
}

ApplyResult gadget_fuse(ZxDiagram& d, Vertex base1, Vertex base2, const PhaseEnv* env) {
    require(d.alive(base1) && d.alive(base2) && base1 != base2, "bad gadget bases");
    const auto t1 = gadget_top(d, base1);
    const auto t2 = gadget_top(d, base2);
    require(t1.has_value() && t2.has_value(), "not phase gadgets");
    require(d.phase(base1).cliff.is_zero() && !d.phase(base1).has_var() &&
                d.phase(base2).cliff.is_zero() && !d.phase(base2).has_var(),
            "gadget bases must carry phase 0");

    std::vector<Vertex> legs1, legs2;
    for (Vertex w : d.neighbors(base1))
        if (w != *t1)
            legs1.push_back(w);
    for (Vertex w : d.neighbors(base2))
        if (w != *t2)
            legs2.push_back(w);
    require(legs1 == legs2, "gadget leg sets differ");

    const long long e0 = static_cast<long long>(d.n_edges());
    const long long v0 = static_cast<long long>(d.n_vertices());

    PhaseExpr merged = d.phase(*t1);
    fuse_phase_exprs(merged, d.phase(*t2), env);
    d.set_phase(*t1, merged);
    d.remove_spider(*t2);
    d.remove_spider(base2);

    ApplyResult r;
    r.delta_e = static_cast<long long>(d.n_edges()) - e0;
    r.delta_v = static_cast<long long>(d.n_vertices()) - v0;
    r.touched = sorted_unique(std::move(legs1));
    return r;
}

ApplyResult gadget_delete(ZxDiagram& d, Vertex base, const PhaseEnv* env) {
    require(d.alive(base), "vertex does not exist");
    const auto top = gadget_top(d, base);
    require(top.has_value(), "not a phase gadget");
    require(!d.phase(base).has_var(), "gadget base hosts a variable");

    ApplyResult r;
    if (d.phase(base).cliff == Phase::pi()) {
        // pi-copy: clear the base, negate the top (multiplier flips)
        d.add_to_phase(base, Phase::pi());
        PhaseExpr p = d.phase(*top);
        p.cliff = -p.cliff;
        if (p.var)
            p.var->sign = -p.var->sign;
        d.set_phase(*top, p);
        r.touched = {base, *top};
        return r;
    }
    require(d.phase(base).cliff.is_zero(), "gadget base must carry 0 or pi");
    require(d.degree(base) == 2, "gadget has more than one leg");

    Vertex leg = -1;
    for (Vertex w : d.neighbors(base))
        if (w != *top)
            leg = w;
    require(leg >= 0, "gadget has no leg");

    const long long e0 = static_cast<long long>(d.n_edges());
    const long long v0 = static_cast<long long>(d.n_vertices());
    PhaseExpr merged = d.phase(leg);
    fuse_phase_exprs(merged, d.phase(*top), env);
    d.set_phase(leg, merged);
    d.remove_spider(*top);
    d.remove_spider(base);
    r.delta_e = static_cast<long long>(d.n_edges()) - e0;
    r.delta_v = static_cast<long long>(d.n_vertices()) - v0;
    r.touched = {leg};
    return r;
}

ApplyResult gadgetize(ZxDiagram& d, Vertex v) {
    require(d.alive(v) && d.is_internal(v), "gadgetize target must be internal");
    const Vertex h = d.add_spider();
    const Vertex w = d.add_spider(d.phase(v));
    d.set_phase(v, PhaseExpr{});
    d.add_edge(v, h);
    d.add_edge(h, w);
    ApplyResult r;
    r.delta_e = 2;
    r.delta_v = 2;
    r.created = {h, w};
    r.touched = {v, h, w};
    return r;
}

ApplyResult detach_boundary(ZxDiagram& d, Vertex v) {
    require(d.alive(v) && d.is_boundary(v), "detach_boundary target must hold a wire");
    const Vertex w1 = d.add_spider();
    const Vertex w2 = d.add_spider(d.phase(v));
    d.set_phase(v, PhaseExpr{});
    d.move_boundary(v, w2);
    d.add_edge(v, w1);
    d.add_edge(w1, w2);
    ApplyResult r;
    r.delta_e = 2;
    r.delta_v = 2;
    r.created = {w1, w2};
    r.touched = {v, w1, w2};
    return r;
}

RewriteMatch make_id_fuse_match(const ZxDiagram& d, Vertex v) {
    RewriteMatch m;
    m.kind = RewriteKind::IdFuse;
    m.v0 = v;
    const Vertex a = d.neighbors(v)[0];
    const Vertex b = d.neighbors(v)[1];
    long long common = 0;
    for (Vertex w : d.neighbors(a))
        if (w != v && w != b && d.has_edge(b, w))
            ++common;
    m.delta_v = -2;
    m.delta_e = -2 - (d.has_edge(a, b) ? 1 : 0) - 2 * common;
    return m;
}

RewriteMatch make_lcomp_match(const ZxDiagram& d, Vertex v, std::vector<Vertex> s_n,
                              bool take_wire) {
    RewriteMatch m;
    m.kind = RewriteKind::LComp;
    m.v0 = v;
    m.detach0 = take_wire;
    std::sort(s_n.begin(), s_n.end());
    if (s_n.empty() && !take_wire) {
        const auto& nbrs = d.neighbors(v);
        const long long deg = d.degree(v);
        const long long e = edges_among(d, nbrs);
        m.delta_v = -1;
        m.delta_e = deg * (deg - 1) / 2 - 2 * e - deg;
    } else {
        std::vector<Vertex> rest;
        for (Vertex w : d.neighbors(v))
            if (!std::binary_search(s_n.begin(), s_n.end(), w))
                rest.push_back(w);
        const long long dprime = static_cast<long long>(rest.size()) + 1; // + w1
        const long long e = edges_among(d, rest);
        m.delta_v = +1;
        m.delta_e = 2 + dprime * (dprime - 1) / 2 - 2 * e - dprime;
    }
    m.unfuse0 = std::move(s_n);
    return m;
}

RewriteMatch make_pivot_match(const ZxDiagram& d, Vertex u, Vertex v,
                              std::vector<Vertex> s_nu, std::vector<Vertex> s_nv,
                              bool take_wire_u, bool take_wire_v) {
    RewriteMatch m;
    m.kind = RewriteKind::Pivot;
    m.v0 = u;
    m.v1 = v;
    m.detach0 = take_wire_u;
    m.detach1 = take_wire_v;
    std::sort(s_nu.begin(), s_nu.end());
    std::sort(s_nv.begin(), s_nv.end());

    // Post-unfusion neighbourhoods; w1u / w1v are fresh private neighbours.
    std::vector<Vertex> nu, nv;
    for (Vertex w : d.neighbors(u))
        if (w != v && !std::binary_search(s_nu.begin(), s_nu.end(), w))
            nu.push_back(w);
    for (Vertex w : d.neighbors(v))
        if (w != u && !std::binary_search(s_nv.begin(), s_nv.end(), w))
            nv.push_back(w);

    std::vector<Vertex> a_set, b_set, c_set;
    for (Vertex w : nu) {
        if (std::find(nv.begin(), nv.end(), w) != nv.end())
            a_set.push_back(w);
        else
            b_set.push_back(w);
    }
    for (Vertex w : nv)
        if (std::find(nu.begin(), nu.end(), w) == nu.end())
            c_set.push_back(w);
    const long long extra_b = (s_nu.empty() && !take_wire_u) ? 0 : 1; // w1u
    const long long extra_c = (s_nv.empty() && !take_wire_v) ? 0 : 1; // w1v

    long long cross_edges = 0;
    auto count_cross = [&d, &cross_edges](const std::vector<Vertex>& xs,
                                          const std::vector<Vertex>& ys) {
        for (Vertex x : xs)
            for (Vertex y : ys)
                cross_edges += d.has_edge(x, y) ? 1 : 0;
    };
    count_cross(a_set, b_set);
    count_cross(a_set, c_set);
    count_cross(b_set, c_set);

    const long long na = static_cast<long long>(a_set.size());
    const long long nb = static_cast<long long>(b_set.size()) + extra_b;
    const long long nc = static_cast<long long>(c_set.size()) + extra_c;
    const long long pairs = na * nb + na * nc + nb * nc;
    const long long unfuse_edges = 2 * (extra_b + extra_c);
    const long long deg_u = na + nb + 1; // + the (u,v) edge
    const long long deg_v = na + nc + 1;

    m.delta_v = 2 * (extra_b + extra_c) - 2;
    m.delta_e = unfuse_edges + (pairs - 2 * cross_edges) - (deg_u + deg_v - 1);
    m.unfuse0 = std::move(s_nu);
    m.unfuse1 = std::move(s_nv);
    return m;
}

ApplyResult apply_match(ZxDiagram& d, const RewriteMatch& m, const PhaseEnv* env) {
    ApplyResult r;
    switch (m.kind) {
    case RewriteKind::IdFuse:
        r = id_fuse(d, m.v0, env);
        break;
    case RewriteKind::LComp:
        r = local_comp(d, m.v0, m.unfuse0, env, true, m.detach0);
        break;
    case RewriteKind::Pivot:
        r = pivot(d, m.v0, m.v1, m.unfuse0, m.unfuse1, env, true, m.detach0, m.detach1);
        break;
    case RewriteKind::NeighbourUnfuse:
        r = neighbour_unfuse(d, m.v0, m.unfuse0, m.detach0);
        break;
    case RewriteKind::GadgetFuse:
        r = gadget_fuse(d, m.v0, m.v1, env);
        break;
    case RewriteKind::GadgetDelete:
        r = gadget_delete(d, m.v0, env);
        break;
    }
    if ((m.delta_e != 0 || m.delta_v != 0 || m.kind == RewriteKind::IdFuse ||
         m.kind == RewriteKind::LComp || m.kind == RewriteKind::Pivot) &&
        (r.delta_e != m.delta_e || r.delta_v != m.delta_v))
        throw ZxError("rewrite deltas did not materialise as recorded");
    return r;
}

} // namespace zxopt
