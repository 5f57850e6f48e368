#include "zxopt/circuit_zx.hpp"

#include <algorithm>
#include <deque>

namespace zxopt {
namespace {

struct WireState {
    Vertex frontier = -1;
    bool pending_h = false;
};

} // namespace

DiagramBuild build_diagram(const Circuit& c, bool symbolic) {
    DiagramBuild out;
    ZxDiagram& d = out.diagram;
    d = ZxDiagram(c.n_qubits);

    std::vector<WireState> wire(c.n_qubits);
    for (int w = 0; w < c.n_qubits; ++w) {
        const Vertex v = d.add_spider();
        d.attach_input(v, w);
        wire[w].frontier = v;
    }

    auto flush = [&](int q) {
        if (wire[q].pending_h) {
            const Vertex nv = d.add_spider();
            d.add_edge(wire[q].frontier, nv);
            wire[q].frontier = nv;
            wire[q].pending_h = false;
        }
    };

    auto apply_z_phase = [&](int q, Phase p, int gate_idx) {
        flush(q);
        if (symbolic && !p.is_clifford()) {
            Vertex host = wire[q].frontier;
            if (d.phase(host).has_var()) {
                // keep one variable per spider: splice in an identity pair
                const Vertex mid = d.add_spider();
                const Vertex nv = d.add_spider();
                d.add_edge(host, mid);
                d.add_edge(mid, nv);
                wire[q].frontier = nv;
                host = nv;
            }
            const int id = static_cast<int>(out.var_phase.size());
            out.var_phase.push_back(p);
            out.var_host.push_back(host);
            out.var_gate.push_back(gate_idx);
            PhaseExpr pe = d.phase(host);
            pe.var = VarRef{id, +1};
            d.set_phase(host, pe);
        } else {
            d.add_to_phase(wire[q].frontier, p);
        }
    };

    auto apply_cz = [&](int a, int b) {
        flush(a);
        flush(b);
        d.toggle_edge(wire[a].frontier, wire[b].frontier);
    };

    for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
        const Gate& g = c.gates[i];
        switch (g.kind) {
        case GateKind::H:
            wire[g.q0].pending_h = !wire[g.q0].pending_h;
            break;
        case GateKind::X:
            wire[g.q0].pending_h = !wire[g.q0].pending_h;
            apply_z_phase(g.q0, Phase::pi(), i);
            wire[g.q0].pending_h = !wire[g.q0].pending_h;
            break;
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::Rz:
            apply_z_phase(g.q0, g.z_phase(), i);
            break;
        case GateKind::Cz:
            apply_cz(g.q0, g.q1);
            break;
        case GateKind::Cnot:
            wire[g.q1].pending_h = !wire[g.q1].pending_h;
            apply_cz(g.q0, g.q1);
            wire[g.q1].pending_h = !wire[g.q1].pending_h;
            break;
        }
    }

    for (int w = 0; w < c.n_qubits; ++w) {
        const Vertex f = wire[w].frontier;
        const bool k = wire[w].pending_h;
        if (d.is_boundary(f)) {
            // frontier still holds the input wire; split so that each spider
            // carries at most one boundary wire
            const Vertex nv = d.add_spider();
            d.add_edge(f, nv);
            d.attach_output(nv, w, !k);
        } else {
            d.attach_output(f, w, k);
        }
    }
    return out;
}

ZxDiagram circuit_to_diagram(const Circuit& c) { return build_diagram(c, false).diagram; }

ZxDiagram to_graph_like(const ZxDiagram& d) {
    ZxDiagram out = d;
    out.check_graph_like();
    return out;
}

Circuit extract_circuit(const ZxDiagram& d, const CausalFlow& flow) {
    d.check_graph_like();
    const int n = d.n_wires();
    for (Vertex v : d.vertices()) {
        if (d.phase(v).has_var())
            throw ZxError("extract_circuit: unresolved phase variable");
        if (d.is_internal(v) && d.degree(v) <= 1)
            throw ZxError("extract_circuit: diagram contains a phase gadget");
    }

    // Dipaths from the inputs are the qubit lines.
    const Vertex bound = d.vertex_bound();
    std::vector<int> line(bound, -1);
    std::vector<Vertex> next(bound, -1);
    std::size_t covered = 0;
    for (int k = 0; k < n; ++k) {
        Vertex v = d.inputs()[k];
        while (true) {
            if (line[v] != -1)
                throw ZxError("extract_circuit: flow dipaths are not vertex-disjoint");
            line[v] = k;
            ++covered;
            const Vertex s = flow.successor[v];
            next[v] = s;
            if (s < 0)
                break;
            if (!d.has_edge(v, s))
                throw ZxError("extract_circuit: successor is not a neighbour");
            v = s;
        }
        if (d.spider(v).boundary.kind != BoundaryKind::Output)
            throw ZxError("extract_circuit: dipath does not end at an output");
        if (d.outputs()[k] != v)
            throw ZxError("extract_circuit: dipath ends on a different wire");
    }
    if (covered != d.n_vertices())
        throw ZxError("extract_circuit: flow dipaths do not cover the diagram");

    std::vector<int> cross_left(bound, 0);
    for (auto [u, v] : d.edges()) {
        const bool dipath = next[u] == v || next[v] == u;
        if (!dipath) {
            ++cross_left[u];
            ++cross_left[v];
        }
    }

    Circuit out(n);
    for (int w = 0; w < n; ++w)
        if (d.input_hadamard(w))
            out.push(Gate::h(w));

    std::vector<Vertex> current(n);
    std::vector<bool> arrived(bound, false);

    auto push_phase = [&out](int q, Phase p) {
        if (p.is_zero())
            return;
        if (p == Phase::of(1, 4))
            out.push(Gate::t(q));
        else if (p == Phase::of(-1, 4))
            out.push(Gate::tdg(q));
        else if (p == Phase::of(1, 2))
            out.push(Gate::s(q));
        else if (p == Phase::of(-1, 2))
            out.push(Gate::sdg(q));
        else if (p == Phase::pi())
            out.push(Gate::z(q));
        else
            out.push(Gate::rz(q, p));
    };

    auto arrive = [&](Vertex v) {
        arrived[v] = true;
        current[line[v]] = v;
        push_phase(line[v], d.phase(v).cliff);
        for (Vertex w : d.neighbors(v)) {
            if (next[v] == w || next[w] == v)
                continue; // dipath edge
            if (arrived[w] && current[line[w]] == w) {
                out.push(Gate::cz(line[v], line[w]));
                --cross_left[v];
                --cross_left[w];
            }
        }
    };

    for (int k = 0; k < n; ++k)
        arrive(d.inputs()[k]);

    int lines_done = 0;
    for (int k = 0; k < n; ++k)
        if (next[current[k]] < 0)
            ++lines_done;
    while (lines_done < n) {
        // advance the line whose pending vertex is deepest (ties: wire, id)
        int best = -1;
        for (int k = 0; k < n; ++k) {
            const Vertex v = current[k];
            if (next[v] < 0 || cross_left[v] != 0)
                continue;
            if (best == -1)
                best = k;
            else {
                const Vertex a = next[current[best]], b = next[current[k]];
                if (flow.depth[b] > flow.depth[a] ||
                    (flow.depth[b] == flow.depth[a] && b < a))
                    best = k;
            }
        }
        if (best < 0)
            throw ZxError("extract_circuit: scheduling deadlock (invalid flow)");
        const Vertex v = current[best];
        out.push(Gate::h(best));
        arrive(next[v]);
        if (next[current[best]] < 0)
            ++lines_done;
    }
    for (int k = 0; k < n; ++k)
        if (cross_left[current[k]] != 0)
            throw ZxError("extract_circuit: unemitted cross edge");

    for (int w = 0; w < n; ++w)
        if (d.output_hadamard(w))
            out.push(Gate::h(w));
    return out;
}

namespace {

bool is_z_rotation(const Gate& g) {
    switch (g.kind) {
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::Rz:
        return true;
    default:
        return false;
    }
}

bool touches(const Gate& g, int q) {
    return g.q0 == q || (g.is_two_qubit() && g.q1 == q);
}

Gate canonical_rotation(int q, Phase p) {
    if (p == Phase::of(1, 4))
        return Gate::t(q);
    if (p == Phase::of(-1, 4))
        return Gate::tdg(q);
    if (p == Phase::of(1, 2))
        return Gate::s(q);
    if (p == Phase::of(-1, 2))
        return Gate::sdg(q);
    if (p == Phase::pi())
        return Gate::z(q);
    return Gate::rz(q, p);
}

// Forward pass: append each gate after trying to cancel or fuse it against
// the already-emitted prefix (scanning back over commuting gates only).
bool sweep(std::vector<Gate>& gs) {
    std::vector<Gate> out;
    out.reserve(gs.size());
    bool changed = false;
    for (const Gate& g : gs) {
        bool handled = false;
        if (g.kind == GateKind::H) {
            for (std::size_t j = out.size(); j-- > 0;) {
                if (!touches(out[j], g.q0))
                    continue;
                if (out[j].kind == GateKind::H && out[j].q0 == g.q0) {
                    out.erase(out.begin() + j);
                    handled = true;
                }
                break;
            }
        } else if (is_z_rotation(g)) {
            int sign = +1; // NOT conjugation flips the angle
            for (std::size_t j = out.size(); j-- > 0;) {
                const Gate& h = out[j];
                if (!touches(h, g.q0))
                    continue;
                if (is_z_rotation(h) && h.q0 == g.q0) {
                    const Phase mine = sign > 0 ? g.z_phase() : -g.z_phase();
                    const Phase sum = h.z_phase() + mine;
                    if (sum.is_zero())
                        out.erase(out.begin() + j);
                    else
                        out[j] = canonical_rotation(g.q0, sum);
                    handled = true;
                    break;
                }
                if (h.kind == GateKind::X && h.q0 == g.q0) {
                    sign = -sign;
                    continue;
                }
                if (h.kind == GateKind::Cz)
                    continue; // diagonal on either qubit
                if (h.kind == GateKind::Cnot && h.q0 == g.q0)
                    continue; // past the control
                break;
            }
        } else if (g.kind == GateKind::Cz) {
            for (std::size_t j = out.size(); j-- > 0;) {
                const Gate& h = out[j];
                if (!touches(h, g.q0) && !touches(h, g.q1))
                    continue;
                if (h.kind == GateKind::Cz &&
                    ((h.q0 == g.q0 && h.q1 == g.q1) || (h.q0 == g.q1 && h.q1 == g.q0))) {
                    out.erase(out.begin() + j);
                    handled = true;
                    break;
                }
                if (is_z_rotation(h) && (h.q0 == g.q0 || h.q0 == g.q1))
                    continue;
                if (h.kind == GateKind::Cz)
                    continue; // all CZs are mutually diagonal
                if (h.kind == GateKind::Cnot && h.q1 != g.q0 && h.q1 != g.q1)
                    continue; // target untouched, control is diagonal
                break;
            }
        } else if (g.kind == GateKind::Cnot) {
            for (std::size_t j = out.size(); j-- > 0;) {
                const Gate& h = out[j];
                if (!touches(h, g.q0) && !touches(h, g.q1))
                    continue;
                if (h.kind == GateKind::Cnot && h.q0 == g.q0 && h.q1 == g.q1) {
                    out.erase(out.begin() + j);
                    handled = true;
                    break;
                }
                if (is_z_rotation(h) && h.q0 == g.q0)
                    continue; // rotations slide along the control line
                if (h.kind == GateKind::X && h.q0 == g.q1)
                    continue; // NOT on the target commutes
                if (h.kind == GateKind::Cnot && h.q0 == g.q0 && h.q1 != g.q1)
                    continue; // shared control
                if (h.kind == GateKind::Cnot && h.q1 == g.q1 && h.q0 != g.q0)
                    continue; // shared target
                if (h.kind == GateKind::Cz && h.q0 != g.q1 && h.q1 != g.q1)
                    continue; // diagonal away from the target
                break;
            }
        } else if (g.kind == GateKind::X) {
            for (std::size_t j = out.size(); j-- > 0;) {
                const Gate& h = out[j];
                if (!touches(h, g.q0))
                    continue;
                if (h.kind == GateKind::X && h.q0 == g.q0) {
                    out.erase(out.begin() + j);
                    handled = true;
                    break;
                }
                if (h.kind == GateKind::Cnot && h.q1 == g.q0)
                    continue; // X on a CNOT target commutes
                if (h.kind == GateKind::Z && h.q0 == g.q0)
                    continue; // anticommute: global phase only
                break;
            }
        }
        if (handled)
            changed = true;
        else
            out.push_back(g);
    }
    gs.swap(out);
    return changed;
}

// Euler-angle pushes: H S H -> Sdg H Sdg (one Hadamard fewer), H Z H -> X,
// H X H -> Z. Consecutive means nothing else touches the qubit in between.
bool reduce_hadamards(std::vector<Gate>& gs) {
    const std::size_t n = gs.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (gs[i].kind != GateKind::H)
            continue;
        const int q = gs[i].q0;
        std::size_t j = i + 1;
        while (j < n && !touches(gs[j], q))
            ++j;
        if (j >= n || gs[j].q1 >= 0)
            continue;
        std::size_t k = j + 1;
        while (k < n && !touches(gs[k], q))
            ++k;
        if (k >= n || gs[k].kind != GateKind::H)
            continue;
        const GateKind mid = gs[j].kind;
        if (mid == GateKind::Z) {
            gs[k] = Gate::x(q);
            gs.erase(gs.begin() + j);
            gs.erase(gs.begin() + i);
            return true;
        }
        if (mid == GateKind::X) {
            gs[k] = Gate::z(q);
            gs.erase(gs.begin() + j);
            gs.erase(gs.begin() + i);
            return true;
        }
        if (mid == GateKind::S) {
            gs[i] = Gate::sdg(q);
            gs[j] = Gate::h(q);
            gs[k] = Gate::sdg(q);
            return true;
        }
        if (mid == GateKind::Sdg) {
            gs[i] = Gate::s(q);
            gs[j] = Gate::h(q);
            gs[k] = Gate::s(q);
            return true;
        }
    }
    return false;
}

// Words in {CX(a,b), CZ(a,b), Z(a), Z(b)} on a fixed pair form a small
// group: (linear part k) x (phase alpha*a + beta*b + gamma*ab). Collapse any
// run on one pair to its <= 2 two-qubit normal form. Rz(a) commutes with the
// whole family and is skipped; anything else touching a or b ends the run.
bool normalize_pair_runs(std::vector<Gate>& gs) {
    const std::size_t n = gs.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!gs[i].is_two_qubit())
            continue;
        const int a = gs[i].q0;
        const int b = gs[i].q1; // CX orientation a -> b
        int k = 0, alpha = 0, beta = 0, gamma = 0;
        int two_qubit_seen = 0;
        std::vector<std::size_t> members;
        std::size_t j = i;
        for (; j < n; ++j) {
            const Gate& g = gs[j];
            if (!touches(g, a) && !touches(g, b))
                continue;
            if (g.kind == GateKind::Cnot && g.q0 == a && g.q1 == b) {
                k ^= 1;
                ++two_qubit_seen;
                members.push_back(j);
            } else if (g.kind == GateKind::Cz &&
                       ((g.q0 == a && g.q1 == b) || (g.q0 == b && g.q1 == a))) {
                gamma ^= 1;
                alpha ^= k;
                ++two_qubit_seen;
                members.push_back(j);
            } else if (g.kind == GateKind::Z && g.q0 == a) {
                alpha ^= 1;
                members.push_back(j);
            } else if (g.kind == GateKind::Z && g.q0 == b) {
                beta ^= 1;
                alpha ^= k;
                members.push_back(j);
            } else if (is_z_rotation(g) && g.q0 == a) {
                continue; // diagonal on the control line: floats through
            } else {
                break;
            }
        }
        const int two_qubit_after = k + gamma;
        if (two_qubit_after >= two_qubit_seen || members.empty())
            continue;
        // rebuild: phases first (input-referred), then the linear part
        std::vector<Gate> repl;
        if (alpha)
            repl.push_back(Gate::z(a));
        if (beta)
            repl.push_back(Gate::z(b));
        if (gamma)
            repl.push_back(Gate::cz(a, b));
        if (k)
            repl.push_back(Gate::cnot(a, b));
        std::vector<Gate> next;
        next.reserve(gs.size());
        for (std::size_t t = 0; t < gs.size(); ++t) {
            if (t == members.front()) {
                next.insert(next.end(), repl.begin(), repl.end());
                continue;
            }
            if (std::find(members.begin(), members.end(), t) != members.end())
                continue;
            next.push_back(gs[t]);
        }
        gs.swap(next);
        return true;
    }
    return false;
}

// H(t) CZ(c,t) H(t) with nothing else on t in between -> CNOT(c,t).
bool resynthesize_cnot(std::vector<Gate>& gs) {
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (gs[i].kind != GateKind::Cz)
            continue;
        for (int side = 0; side < 2; ++side) {
            const int t = side == 0 ? gs[i].q1 : gs[i].q0;
            const int c = side == 0 ? gs[i].q0 : gs[i].q1;
            std::size_t before = SIZE_MAX, after = SIZE_MAX;
            for (std::size_t j = i; j-- > 0;) {
                if (!touches(gs[j], t))
                    continue;
                if (gs[j].kind == GateKind::H)
                    before = j;
                break;
            }
            for (std::size_t j = i + 1; j < gs.size(); ++j) {
                if (!touches(gs[j], t))
                    continue;
                if (gs[j].kind == GateKind::H)
                    after = j;
                break;
            }
            if (before != SIZE_MAX && after != SIZE_MAX) {
                gs[i] = Gate::cnot(c, t);
                gs.erase(gs.begin() + after);
                gs.erase(gs.begin() + before);
                return true;
            }
        }
    }
    return false;
}

} // namespace

namespace {

// adjoint in reverse order; scanning it forward mirrors the usual backward
// cancellation scans
void reverse_adjoint(std::vector<Gate>& gs) {
    std::reverse(gs.begin(), gs.end());
    for (Gate& g : gs) {
        switch (g.kind) {
        case GateKind::S:
            g.kind = GateKind::Sdg;
            break;
        case GateKind::Sdg:
            g.kind = GateKind::S;
            break;
        case GateKind::T:
            g.kind = GateKind::Tdg;
            break;
        case GateKind::Tdg:
            g.kind = GateKind::T;
            break;
        case GateKind::Rz:
            g.phase = -g.phase;
            break;
        default:
            break;
        }
    }
}

bool fixed_point_passes(std::vector<Gate>& gs) {
    bool changed = false;
    while (true) {
        if (sweep(gs) || reduce_hadamards(gs) || normalize_pair_runs(gs) ||
            resynthesize_cnot(gs)) {
            changed = true;
            continue;
        }
        break;
    }
    return changed;
}

} // namespace

Circuit basic_optimize(const Circuit& c) {
    Circuit out = c;
    fixed_point_passes(out.gates);
    while (true) {
        reverse_adjoint(out.gates);
        const bool a = fixed_point_passes(out.gates);
        reverse_adjoint(out.gates);
        const bool b = fixed_point_passes(out.gates);
        if (!a && !b)
            break;
    }
    return out;
}

} // namespace zxopt
