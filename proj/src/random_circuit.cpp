#include "zxopt/random_circuit.hpp"

#include <random>

namespace zxopt {

Circuit random_circuit(int n_qubits, int n_gates, double p_t, std::uint64_t seed) {
    if (p_t < 0.0 || p_t > 1.0)
        throw ZxError("random_circuit: p_t must lie in [0, 1]");
    if (n_qubits < 1)
        throw ZxError("random_circuit: need at least one qubit");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
    std::uniform_int_distribution<int> clifford(0, 2);

    Circuit c(n_qubits);
    for (int i = 0; i < n_gates; ++i) {
        if (coin(rng) < p_t) {
            c.push(Gate::t(qubit(rng)));
            continue;
        }
        switch (clifford(rng)) {
        case 0:
            c.push(Gate::h(qubit(rng)));
            break;
        case 1:
            c.push(Gate::s(qubit(rng)));
            break;
        default: {
            if (n_qubits == 1) {
                c.push(Gate::h(qubit(rng)));
                break;
            }
            const int a = qubit(rng);
            int b = qubit(rng);
            while (b == a)
                b = qubit(rng);
            c.push(Gate::cnot(a, b));
            break;
        }
        }
    }
    return c;
}

} // namespace zxopt
