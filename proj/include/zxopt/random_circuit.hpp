#pragma once

#include "zxopt/circuit.hpp"

namespace zxopt {

/// Random Clifford+T circuit: each gate is a T on a uniform qubit with
/// probability p_t, otherwise uniform over {H, S, CNOT} on uniform qubits.
/// Deterministic per seed.
Circuit random_circuit(int n_qubits, int n_gates, double p_t, std::uint64_t seed);

} // namespace zxopt
