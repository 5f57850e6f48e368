#include "zxopt/circuit.hpp"

namespace zxopt {

Phase Gate::z_phase() const {
    switch (kind) {
    case GateKind::Z:
        return Phase::pi();
    case GateKind::S:
        return Phase::half_pi();
    case GateKind::Sdg:
        return Phase::of(-1, 2);
    case GateKind::T:
        return Phase::quarter_pi();
    case GateKind::Tdg:
        return Phase::of(-1, 4);
    case GateKind::Rz:
        return phase;
    default:
        throw ZxError("z_phase: gate is not a Z rotation");
    }
}

void Circuit::push(Gate g) {
    if (g.q0 < 0 || g.q0 >= n_qubits)
        throw ZxError("gate qubit index out of range");
    if (g.is_two_qubit()) {
        if (g.q1 < 0 || g.q1 >= n_qubits)
            throw ZxError("gate qubit index out of range");
        if (g.q0 == g.q1)
            throw ZxError("two-qubit gate on identical qubits");
    }
    gates.push_back(g);
}

int Circuit::count_2q() const {
    int n = 0;
    for (const Gate& g : gates)
        n += g.is_two_qubit() ? 1 : 0;
    return n;
}

int Circuit::count_t() const {
    int n = 0;
    for (const Gate& g : gates) {
        switch (g.kind) {
        case GateKind::T:
        case GateKind::Tdg:
            ++n;
            break;
        case GateKind::Rz:
            if (!g.phase.is_clifford())
                ++n;
            break;
        default:
            break;
        }
    }
    return n;
}

} // namespace zxopt
