#pragma once

#include "zxopt/rational.hpp"

#include <string>
#include <vector>

namespace zxopt {

enum class GateKind { H, X, Z, S, Sdg, T, Tdg, Rz, Cnot, Cz };

struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;   // second qubit for Cnot (target) / Cz
    Phase phase;   // Rz only

    static Gate h(int q) { return {GateKind::H, q, -1, {}}; }
    static Gate x(int q) { return {GateKind::X, q, -1, {}}; }
    static Gate z(int q) { return {GateKind::Z, q, -1, {}}; }
    static Gate s(int q) { return {GateKind::S, q, -1, {}}; }
    static Gate sdg(int q) { return {GateKind::Sdg, q, -1, {}}; }
    static Gate t(int q) { return {GateKind::T, q, -1, {}}; }
    static Gate tdg(int q) { return {GateKind::Tdg, q, -1, {}}; }
    static Gate rz(int q, Phase p) { return {GateKind::Rz, q, -1, p}; }
    static Gate cnot(int c, int t) { return {GateKind::Cnot, c, t, {}}; }
    static Gate cz(int a, int b) { return {GateKind::Cz, a, b, {}}; }

    bool is_two_qubit() const { return kind == GateKind::Cnot || kind == GateKind::Cz; }

    /// Z-rotation angle of the gate, for the diagonal single-qubit kinds.
    Phase z_phase() const;

    friend bool operator==(const Gate& a, const Gate& b) {
        return a.kind == b.kind && a.q0 == b.q0 && a.q1 == b.q1 && a.phase == b.phase;
    }
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    void push(Gate g);

    int count_2q() const;
    /// Gates with a non-Clifford phase (T, Tdg, Rz with denominator > 2).
    int count_t() const;
    int total() const { return static_cast<int>(gates.size()); }

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.n_qubits == b.n_qubits && a.gates == b.gates;
    }
};

/// Parse an OpenQASM 2.0 subset: one qreg; h/x/y/z/s/sdg/t/tdg/rz/cx/cz/ccx/ccz;
/// comments, include and creg lines ignored. ccx/ccz expand into the standard
/// 7-T realisation; rz angles must be exact rational multiples of pi.
/// Errors carry the 1-based line number.
Circuit parse_qasm(const std::string& text);
Circuit parse_qasm_file(const std::string& path);

std::string emit_qasm(const Circuit& c);

} // namespace zxopt
