#include "zxopt/verify.hpp"

#include "zxopt/circuit_zx.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>

using namespace zxopt;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TEST_SUITE_BEGIN("verify");

TEST_CASE("hadamard matrix") {
    Circuit c(1);
    c.push(Gate::h(0));
    const DenseUnitary u = circuit_unitary(c);
    CHECK(std::abs(u.at(0, 0) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(u.at(0, 1) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(u.at(1, 0) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(u.at(1, 1) + kInvSqrt2) < 1e-12);
}

TEST_CASE("cnot permutation") {
    Circuit c(2);
    c.push(Gate::cnot(0, 1));
    const DenseUnitary u = circuit_unitary(c);
    // qubit 0 is the most significant bit
    CHECK(std::abs(u.at(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(u.at(1, 1) - 1.0) < 1e-12);
    CHECK(std::abs(u.at(2, 3) - 1.0) < 1e-12);
    CHECK(std::abs(u.at(3, 2) - 1.0) < 1e-12);
}

TEST_CASE("T twice equals S up to global phase") {
    Circuit tt(1);
    tt.push(Gate::t(0));
    tt.push(Gate::t(0));
    Circuit s(1);
    s.push(Gate::s(0));
    CHECK(equal_up_to_global_phase(circuit_unitary(tt), circuit_unitary(s)));
}

TEST_CASE("global phase equivalence") {
    Circuit h(1);
    h.push(Gate::h(0));
    DenseUnitary a = circuit_unitary(h);
    DenseUnitary b = a;
    const std::complex<double> c = std::polar(1.0, M_PI / 7.0);
    for (auto& z : b.m)
        z *= c;
    CHECK(equal_up_to_global_phase(a, b));

    Circuit x(1);
    x.push(Gate::x(0));
    CHECK(!equal_up_to_global_phase(circuit_unitary(h), circuit_unitary(x)));
}

TEST_CASE("CNOT equals H-conjugated CZ") {
    Circuit a(2);
    a.push(Gate::cnot(0, 1));
    Circuit b(2);
    b.push(Gate::h(1));
    b.push(Gate::cz(0, 1));
    b.push(Gate::h(1));
    CHECK(equal_up_to_global_phase(circuit_unitary(a), circuit_unitary(b)));
}

TEST_CASE("dimension mismatch is an error") {
    CHECK_THROWS_AS(equal_up_to_global_phase(DenseUnitary::identity(1), DenseUnitary::identity(2)),
                    ZxError);
}

TEST_CASE("diagram tensor of basic diagrams") {
    // graph-like identity
    const ZxDiagram id2 = circuit_to_diagram(Circuit(2));
    CHECK(equal_up_to_global_phase(diagram_tensor(id2), DenseUnitary::identity(2)));

    // single arity-2 Z spider carrying alpha = diag(1, e^{i alpha});
    // the edge Hadamard is compensated after the phase, on the output wire
    ZxDiagram d(1);
    const Vertex a = d.add_spider(Phase::of(3, 8));
    const Vertex b = d.add_spider();
    d.add_edge(a, b);
    d.attach_input(a, 0);
    d.attach_output(b, 0, /*hadamard=*/true);
    Circuit rz(1);
    rz.push(Gate::rz(0, Phase::of(3, 8)));
    CHECK(equal_up_to_global_phase(diagram_tensor(d), circuit_unitary(rz)));

    // graph-like CNOT
    Circuit cx(2);
    cx.push(Gate::cnot(0, 1));
    CHECK(equal_up_to_global_phase(diagram_tensor(to_graph_like(circuit_to_diagram(cx))),
                                   circuit_unitary(cx)));
}

TEST_CASE("unresolved variables are rejected") {
    ZxDiagram d(1);
    const Vertex a = d.add_spider();
    const Vertex b = d.add_spider();
    d.add_edge(a, b);
    d.attach_input(a, 0, true);
    d.attach_output(b, 0);
    PhaseExpr p;
    p.var = VarRef{0, +1};
    d.set_phase(a, p);
    CHECK_THROWS_AS(diagram_tensor(d), ZxError);
}

TEST_CASE("size cap") {
    CHECK_THROWS_AS(circuit_unitary(Circuit(13)), ZxError);
}

TEST_SUITE_END();
