#pragma once

#include "zxopt/circuit.hpp"
#include "zxopt/zx_diagram.hpp"

#include <complex>
#include <vector>

namespace zxopt {

/// Dense 2^n x 2^n matrix, row-major, qubit 0 = most significant bit.
/// Desk-scale only: n is hard-capped at 12.
struct DenseUnitary {
    int n_qubits = 0;
    std::vector<std::complex<double>> m;

    static DenseUnitary identity(int n_qubits);
    std::complex<double>& at(std::size_t r, std::size_t c) {
        return m[r * dim() + c];
    }
    std::complex<double> at(std::size_t r, std::size_t c) const {
        return m[r * dim() + c];
    }
    std::size_t dim() const { return std::size_t{1} << n_qubits; }
};

DenseUnitary circuit_unitary(const Circuit& c);

/// Contract the diagram's tensor network (spiders with a Hadamard on every
/// edge, boundary wire flags applied). Requires |inputs| = |outputs| <= 12
/// and no unresolved phase variables.
DenseUnitary diagram_tensor(const ZxDiagram& d);

/// True iff a == c*b entrywise for some unit scalar c, within tol (max norm).
bool equal_up_to_global_phase(const DenseUnitary& a, const DenseUnitary& b,
                              double tol = 1e-8);

} // namespace zxopt
