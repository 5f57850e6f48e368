#include "zxopt/teleport.hpp"

#include "zxopt/circuit_zx.hpp"

#include <algorithm>
#include <random>

namespace zxopt {

int PhaseTable::fresh_var(Phase original) {
    const int id = static_cast<int>(value_.size());
    value_.push_back(original);
    group_of_.push_back(static_cast<int>(groups_.size()));
    Group g;
    g.members = {Member{id, +1}};
    g.live_ref = id;
    groups_.push_back(std::move(g));
    return id;
}

std::vector<int> PhaseTable::live_groups() const {
    std::vector<int> out;
    for (int g = 0; g < static_cast<int>(groups_.size()); ++g)
        if (!groups_[g].dead)
            out.push_back(g);
    return out;
}

Phase PhaseTable::group_total(int gid) const {
    const Group& g = groups_.at(gid);
    if (g.dead)
        throw ZxError("phase table: group is dead");
    Phase t;
    for (const Member& m : g.members)
        t += m.mult > 0 ? value_[m.var] : -value_[m.var];
    return t;
}

Phase PhaseTable::group_total_of_var(int var) const { return group_total(group_of_.at(var)); }

void PhaseTable::fuse_groups(int ga, int gb, int scale) {
    if (ga == gb)
        throw ZxError("phase table: groups overlap");
    Group& a = groups_.at(ga);
    Group& b = groups_.at(gb);
    if (a.dead || b.dead || a.frozen || b.frozen)
        throw ZxError("phase table: fusing a dead or frozen group");
    for (const Member& m : b.members) {
        group_of_[m.var] = ga;
        a.members.push_back(Member{m.var, m.mult * scale});
    }
    b.members.clear();
    b.dead = true;
}

void PhaseTable::fuse_refs(VarRef kept, VarRef absorbed) {
    const int ga = group_of_.at(kept.id);
    const int gb = group_of_.at(absorbed.id);
    if (groups_.at(ga).live_ref != kept.id || groups_.at(gb).live_ref != absorbed.id)
        throw ZxError("phase table: fusing a non-live reference");
    fuse_groups(ga, gb, kept.sign * absorbed.sign);
    groups_.at(ga).live_ref = kept.id;
}

void PhaseTable::fix_phase(int gid, int kappa, Phase beta, int sigma) {
    Group& g = groups_.at(gid);
    if (g.dead)
        throw ZxError("phase table: group is dead");
    const Member* mk = nullptr;
    const Member* ms = nullptr;
    for (const Member& m : g.members) {
        if (m.var == kappa)
            mk = &m;
        if (m.var == sigma)
            ms = &m;
    }
    if (mk == nullptr)
        throw ZxError("phase table: kappa not in group");
    if (ms == nullptr || sigma == kappa)
        throw ZxError("phase table: invalid survivor");
    const Phase total = group_total(gid);
    Phase rest = total - (mk->mult > 0 ? beta : -beta);
    for (const Member& m : g.members) {
        if (m.var == kappa)
            value_[m.var] = beta;
        else if (m.var == sigma)
            value_[m.var] = ms->mult > 0 ? rest : -rest;
        else
            value_[m.var] = Phase::zero();
    }
}

void PhaseTable::force_resolve(VarRef ref, Phase total) {
    const int gid = group_of_.at(ref.id);
    Group& g = groups_.at(gid);
    if (g.dead || g.frozen)
        throw ZxError("phase table: forcing a dead or frozen group");
    if (g.live_ref != ref.id)
        throw ZxError("phase table: forcing a non-live reference");
    if (!(group_total(gid) == total))
        throw ZxError("phase table: forced total disagrees with the numeric total");
    g.frozen = true;
}

void PhaseTable::resolve_defaults() {
    for (int gid = 0; gid < static_cast<int>(groups_.size()); ++gid) {
        Group& g = groups_[gid];
        if (g.dead)
            continue;
        const int sigma = g.live_ref;
        const Phase total = group_total(gid);
        int msig = 0;
        for (const Member& m : g.members)
            if (m.var == sigma)
                msig = m.mult;
        if (msig == 0)
            throw ZxError("phase table: live reference not in group");
        for (const Member& m : g.members)
            value_[m.var] = m.var == sigma ? (msig > 0 ? total : -total) : Phase::zero();
        g.frozen = true;
    }
}

PhaseEnv PhaseTable::env() {
    PhaseEnv e;
    e.group_total = [this](int var) { return group_total_of_var(var); };
    e.fuse = [this](VarRef kept, VarRef absorbed) { fuse_refs(kept, absorbed); };
    e.force = [this](VarRef ref, Phase total) { force_resolve(ref, total); };
    return e;
}

bool in_reduced_gadget_form(const ZxDiagram& d, const PhaseTable& table) {
    PhaseTable& tbl = const_cast<PhaseTable&>(table);
    PhaseEnv env = tbl.env();
    for (Vertex v : d.vertices()) {
        if (!d.is_internal(v))
            continue;
        const Phase eff = effective_phase(d, v, &env);
        if (!eff.is_clifford())
            continue;
        if (d.degree(v) == 1)
            continue; // gadget top
        if (gadget_top(d, v).has_value() && eff.is_zero())
            continue; // gadget base
        bool all_boundary = true;
        for (Vertex w : d.neighbors(v))
            all_boundary = all_boundary && d.is_boundary(w);
        if (all_boundary)
            continue; // terminal fringe spider pinned between wires
        return false;
    }
    return true;
}

void full_reduce(ZxDiagram& d, PhaseTable& table, unsigned order_seed) {
    PhaseEnv env = table.env();
    std::mt19937 rng(order_seed);

    auto candidates = [&](auto&& pred) {
        std::vector<Vertex> out;
        for (Vertex v : d.vertices())
            if (pred(v))
                out.push_back(v);
        if (order_seed != 0)
            std::shuffle(out.begin(), out.end(), rng);
        return out;
    };

    auto eff = [&](Vertex v) { return effective_phase(d, v, &env); };

    std::size_t guard = 16 * (d.n_vertices() + 8) * (d.n_vertices() + 8);
    bool changed = true;
    while (changed) {
        if (guard-- == 0)
            throw ZxError("full_reduce: no fixed point reached");
        changed = false;

        // disconnected scalar fragments (single spiders and detached pairs)
        for (Vertex v : candidates([&](Vertex v) {
                 return d.is_internal(v) && d.degree(v) == 0;
             })) {
            d.remove_spider(v);
            changed = true;
        }
        for (Vertex v : candidates([&](Vertex v) {
                 return d.is_internal(v) && d.degree(v) == 1 &&
                        d.is_internal(d.neighbors(v)[0]) && d.degree(d.neighbors(v)[0]) == 1;
             })) {
            if (!d.alive(v) || d.degree(v) != 1)
                continue;
            const Vertex w = d.neighbors(v)[0];
            if (!d.is_internal(w) || d.degree(w) != 1)
                continue;
            if (d.phase(v).has_var() || d.phase(w).has_var())
                continue; // keep symbolic content visible until resolution
            d.remove_spider(v);
            d.remove_spider(w);
            changed = true;
        }

        // identity fusion
        for (Vertex v : candidates([&](Vertex v) {
                 return d.is_internal(v) && d.degree(v) == 2 && eff(v).is_zero() &&
                        !(d.is_boundary(d.neighbors(v)[0]) && d.is_boundary(d.neighbors(v)[1]));
             })) {
            if (!d.alive(v) || !d.is_internal(v) || d.degree(v) != 2 || !eff(v).is_zero())
                continue;
            if (d.is_boundary(d.neighbors(v)[0]) && d.is_boundary(d.neighbors(v)[1]))
                continue;
            id_fuse(d, v, &env);
            changed = true;
        }
        if (changed)
            continue;

        // local complementation on proper Clifford spiders
        for (Vertex v : candidates([&](Vertex v) {
                 return d.is_internal(v) && eff(v).is_proper_clifford();
             })) {
            if (!d.alive(v) || !d.is_internal(v) || !eff(v).is_proper_clifford())
                continue;
            local_comp(d, v, {}, &env, /*strict_boundary=*/false);
            changed = true;
        }
        if (changed)
            continue;

        // pivot on adjacent internal Pauli pairs
        for (Vertex u : candidates([&](Vertex v) {
                 return d.is_internal(v) && eff(v).is_pauli();
             })) {
            if (!d.alive(u) || !d.is_internal(u) || !eff(u).is_pauli())
                continue;
            Vertex partner = -1;
            for (Vertex w : d.neighbors(u)) {
                if (d.is_internal(w) && eff(w).is_pauli()) {
                    partner = w;
                    break;
                }
            }
            if (partner < 0)
                continue;
            pivot(d, u, partner, {}, {}, &env, /*strict_boundary=*/false);
            changed = true;
        }
        if (changed)
            continue;

        // phase migration along bare wire stubs: a -HH- b is a plain wire, so
        // a's phase (and variable) slides onto b when both ends hold wires
        for (Vertex m : candidates([&](Vertex v) {
                 return d.is_internal(v) && d.degree(v) == 2 && !d.phase(v).has_var() &&
                        d.phase(v).cliff.is_zero() && d.is_boundary(d.neighbors(v)[0]) &&
                        d.is_boundary(d.neighbors(v)[1]);
             })) {
            if (!d.alive(m) || d.degree(m) != 2)
                continue;
            const Vertex a = std::min(d.neighbors(m)[0], d.neighbors(m)[1]);
            const Vertex b = std::max(d.neighbors(m)[0], d.neighbors(m)[1]);
            if (!d.is_boundary(a) || !d.is_boundary(b))
                continue;
            if (d.phase(a).cliff.is_zero() && !d.phase(a).has_var())
                continue;
            PhaseExpr merged = d.phase(b);
            fuse_phase_exprs(merged, d.phase(a), &env);
            d.set_phase(b, merged);
            d.set_phase(a, PhaseExpr{});
            changed = true;
        }
        if (changed)
            continue;

        // boundary pivot: a Pauli spider next to a wire-attached spider is
        // removed by detaching the wire (and phase) and pivoting the pair.
        // The detached spider must have further neighbours, otherwise the
        // rewrite would reproduce its own match pattern forever.
        for (Vertex u : candidates([&](Vertex v) {
                 return d.is_internal(v) && eff(v).is_pauli() && d.degree(v) >= 1;
             })) {
            if (!d.alive(u) || !d.is_internal(u) || !eff(u).is_pauli())
                continue;
            bool u_pendant_adjacent = false;
            for (Vertex x : d.neighbors(u))
                u_pendant_adjacent = u_pendant_adjacent || d.degree(x) == 1;
            if (u_pendant_adjacent)
                continue;
            Vertex w = -1;
            for (Vertex x : d.neighbors(u))
                if (d.is_boundary(x) && d.degree(x) >= 2) {
                    w = x;
                    break;
                }
            if (w < 0)
                continue;
            detach_boundary(d, w);
            pivot(d, u, w, {}, {}, &env, /*strict_boundary=*/false);
            changed = true;
        }
        if (changed)
            continue;

        // gadgetisation: Pauli spider next to an internal non-Clifford spider;
        // pendant-adjacent targets are excluded so existing gadgets survive
        for (Vertex u : candidates([&](Vertex v) {
                 return d.is_internal(v) && eff(v).is_pauli() && d.degree(v) >= 2;
             })) {
            if (!d.alive(u) || !d.is_internal(u) || !eff(u).is_pauli() || d.degree(u) < 2)
                continue;
            bool u_pendant_adjacent = false;
            for (Vertex w : d.neighbors(u))
                u_pendant_adjacent = u_pendant_adjacent || d.degree(w) == 1;
            if (u_pendant_adjacent)
                continue;
            Vertex partner = -1;
            for (Vertex w : d.neighbors(u)) {
                if (!d.is_internal(w) || eff(w).is_clifford() || d.degree(w) < 2)
                    continue;
                bool w_pendant_adjacent = false;
                for (Vertex x : d.neighbors(w))
                    w_pendant_adjacent = w_pendant_adjacent || d.degree(x) == 1;
                if (w_pendant_adjacent)
                    continue;
                partner = w;
                break;
            }
            if (partner < 0)
                continue;
            gadgetize(d, partner);
            pivot(d, u, partner, {}, {}, &env, /*strict_boundary=*/false);
            changed = true;
        }
        if (changed)
            continue;

        // gadget cleanup: pi bases, single-leg gadgets, equal-leg fusion
        std::vector<Vertex> bases;
        for (Vertex v : d.vertices()) {
            if (!d.is_internal(v) || d.phase(v).has_var())
                continue;
            if (!gadget_top(d, v).has_value())
                continue;
            const Phase p = d.phase(v).cliff;
            if (p == Phase::pi()) {
                gadget_delete(d, v, &env);
                changed = true;
            } else if (p.is_zero()) {
                if (d.degree(v) == 2) {
                    gadget_delete(d, v, &env);
                    changed = true;
                } else {
                    bases.push_back(v);
                }
            }
        }
        if (changed)
            continue;
        auto legs = [&](Vertex b) {
            std::vector<Vertex> out;
            const Vertex t = *gadget_top(d, b);
            for (Vertex w : d.neighbors(b))
                if (w != t)
                    out.push_back(w);
            return out;
        };
        std::vector<std::pair<std::vector<Vertex>, Vertex>> keyed;
        keyed.reserve(bases.size());
        for (Vertex b : bases)
            keyed.emplace_back(legs(b), b);
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i + 1 < keyed.size() && !changed; ++i) {
            if (keyed[i].first == keyed[i + 1].first) {
                gadget_fuse(d, keyed[i].second, keyed[i + 1].second, &env);
                changed = true;
            }
        }
        if (changed)
            continue;

        // fallback for Pauli spiders pinned next to pendant-adjacent
        // non-Clifford spiders: gadgetise without the pendant guards
        for (Vertex u : candidates([&](Vertex v) {
                 return d.is_internal(v) && eff(v).is_pauli() && d.degree(v) >= 2;
             })) {
            if (!d.alive(u) || !d.is_internal(u) || !eff(u).is_pauli() || d.degree(u) < 2)
                continue;
            if (gadget_top(d, u).has_value())
                continue;
            bool has_internal = false;
            Vertex partner = -1;
            for (Vertex w : d.neighbors(u)) {
                has_internal = has_internal || d.is_internal(w);
                if (d.is_internal(w) && !eff(w).is_clifford() && d.degree(w) >= 2)
                    partner = std::max(partner, w);
            }
            if (!has_internal || partner < 0)
                continue;
            gadgetize(d, partner);
            pivot(d, u, partner, {}, {}, &env, /*strict_boundary=*/false);
            changed = true;
            break;
        }
    }
}

std::pair<ZxDiagram, PhaseTable> teleport_phases(const Circuit& c) {
    DiagramBuild build = build_diagram(c, /*symbolic=*/true);
    PhaseTable table;
    for (const Phase& p : build.var_phase)
        table.fresh_var(p);

    ZxDiagram scratch = build.diagram;
    const std::size_t h0 = build.diagram.structural_hash();
    full_reduce(scratch, table);
    if (build.diagram.structural_hash() != h0)
        throw ZxError("teleport_phases: original diagram was modified");
    return {std::move(build.diagram), std::move(table)};
}

ZxDiagram resolve_all(const PhaseTable& table, const ZxDiagram& d) {
    PhaseTable finalised = table;
    finalised.resolve_defaults();
    ZxDiagram out = d;
    for (Vertex v : out.vertices()) {
        PhaseExpr p = out.phase(v);
        if (!p.var)
            continue;
        const Phase val = finalised.final_value(p.var->id);
        p.cliff += p.var->sign > 0 ? val : -val;
        p.var.reset();
        out.set_phase(v, p);
    }
    return out;
}

TeleportResult teleport_circuit(const Circuit& c) {
    DiagramBuild build = build_diagram(c, /*symbolic=*/true);
    PhaseTable table;
    for (const Phase& p : build.var_phase)
        table.fresh_var(p);
    ZxDiagram scratch = build.diagram;
    full_reduce(scratch, table);
    table.resolve_defaults();

    std::vector<Phase> gate_phase(c.gates.size());
    std::vector<bool> symbolic(c.gates.size(), false);
    for (int var = 0; var < static_cast<int>(build.var_gate.size()); ++var) {
        gate_phase[build.var_gate[var]] = table.final_value(var);
        symbolic[build.var_gate[var]] = true;
    }

    TeleportResult res;
    res.t_count_before = c.count_t();
    res.circuit.n_qubits = c.n_qubits;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        if (!symbolic[i]) {
            res.circuit.push(g);
            continue;
        }
        const Phase p = gate_phase[i];
        if (p.is_zero())
            continue;
        if (p == Phase::of(1, 4))
            res.circuit.push(Gate::t(g.q0));
        else if (p == Phase::of(-1, 4))
            res.circuit.push(Gate::tdg(g.q0));
        else if (p == Phase::of(1, 2))
            res.circuit.push(Gate::s(g.q0));
        else if (p == Phase::of(-1, 2))
            res.circuit.push(Gate::sdg(g.q0));
        else if (p == Phase::pi())
            res.circuit.push(Gate::z(g.q0));
        else
            res.circuit.push(Gate::rz(g.q0, p));
    }
    res.t_count_after = res.circuit.count_t();
    return res;
}

} // namespace zxopt
