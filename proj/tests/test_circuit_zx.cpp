#include "zxopt/circuit_zx.hpp"

#include "test_util.hpp"
#include "zxopt/flow.hpp"
#include "zxopt/verify.hpp"

#include "doctest.h"

using namespace zxopt;
using namespace zxopt_test;

namespace {

Circuit extract_pipeline(const Circuit& c) {
    const ZxDiagram d = to_graph_like(circuit_to_diagram(c));
    const auto flow = find_cflow(d.underlying_open_graph());
    REQUIRE(flow.has_value());
    return extract_circuit(d, *flow);
}

} // namespace

TEST_SUITE_BEGIN("circuit-zx");

TEST_CASE("identity circuit becomes bare wires") {
    const ZxDiagram d = circuit_to_diagram(Circuit(3));
    CHECK(d.n_vertices() == 6);
    CHECK(d.n_edges() == 3);
    CHECK(d.stats().n_internal == 0);
    CHECK(diagram_matches_circuit(d, Circuit(3)));
}

TEST_CASE("T gate diagram") {
    Circuit c(1);
    c.push(Gate::t(0));
    const ZxDiagram d = to_graph_like(circuit_to_diagram(c));
    CHECK(d.n_vertices() == 2);
    CHECK(d.n_edges() == 1);
    int quarter = 0;
    for (Vertex v : d.vertices())
        quarter += d.phase(v).cliff == Phase::quarter_pi() ? 1 : 0;
    CHECK(quarter == 1);
    CHECK(diagram_matches_circuit(d, c));
}

TEST_CASE("to_graph_like CNOT shape and tensor") {
    Circuit c(2);
    c.push(Gate::cnot(0, 1));
    const ZxDiagram d = to_graph_like(circuit_to_diagram(c));
    CHECK(d.n_vertices() == 4);
    CHECK(d.n_edges() == 3);
    CHECK(d.underlying_open_graph().inputs.size() == 2);
    CHECK(d.is_graph_like());
    CHECK(diagram_matches_circuit(d, c));
}

TEST_CASE("to_graph_like identity and H") {
    const ZxDiagram id = to_graph_like(circuit_to_diagram(Circuit(1)));
    CHECK(id.n_vertices() == 2);
    CHECK(id.n_edges() == 1);
    CHECK(diagram_matches_circuit(id, Circuit(1)));

    Circuit h(1);
    h.push(Gate::h(0));
    const ZxDiagram dh = to_graph_like(circuit_to_diagram(h));
    CHECK(dh.n_vertices() == 2);
    CHECK(diagram_matches_circuit(dh, h));
    // extraction re-emits a Hadamard
    const auto flow = find_cflow(dh.underlying_open_graph());
    REQUIRE(flow.has_value());
    const Circuit back = extract_circuit(dh, *flow);
    CHECK(equal_up_to_global_phase(circuit_unitary(back), circuit_unitary(h)));
}

TEST_CASE("circuit to diagram tensor equality on random circuits") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const Circuit c = random_circuit(3, 25, 0.2, seed);
        const ZxDiagram d = to_graph_like(circuit_to_diagram(c));
        CHECK(d.is_graph_like());
        CHECK(diagram_matches_circuit(d, c));
    }
}

TEST_CASE("extraction: identity reduces to the empty circuit") {
    const Circuit out = basic_optimize(extract_pipeline(Circuit(2)));
    CHECK(out.total() == 0);
    CHECK(equal_up_to_global_phase(circuit_unitary(out), circuit_unitary(Circuit(2))));
}

TEST_CASE("extraction: CNOT contains exactly one CZ") {
    Circuit c(2);
    c.push(Gate::cnot(0, 1));
    const Circuit out = extract_pipeline(c);
    int cz = 0;
    for (const Gate& g : out.gates)
        cz += g.kind == GateKind::Cz ? 1 : 0;
    CHECK(cz == 1);
    CHECK(out.count_2q() == 1);
    CHECK(equal_up_to_global_phase(circuit_unitary(out), circuit_unitary(c)));
}

TEST_CASE("extraction 2Q-count equals |E| - |V| + |I|") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Circuit c = random_circuit(4, 40, 0.15, seed);
        const ZxDiagram d = to_graph_like(circuit_to_diagram(c));
        const auto flow = find_cflow(d.underlying_open_graph());
        REQUIRE(flow.has_value());
        const Circuit out = extract_circuit(d, *flow);
        CHECK(out.count_2q() == d.count_2q());
    }
}

TEST_CASE("phase gadget blocks extraction") {
    ZxDiagram d(1);
    const Vertex a = d.add_spider();
    const Vertex b = d.add_spider();
    d.add_edge(a, b);
    d.attach_input(a, 0, true);
    d.attach_output(b, 0);
    const Vertex base = d.add_spider();
    const Vertex top = d.add_spider(Phase::quarter_pi());
    d.add_edge(a, base);
    d.add_edge(base, top);
    CausalFlow bogus;
    bogus.successor.assign(d.vertex_bound(), -1);
    bogus.depth.assign(d.vertex_bound(), 0);
    CHECK_THROWS_AS(extract_circuit(d, bogus), ZxError);
}

TEST_CASE("round trip on random circuits up to 6 qubits") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Circuit c = random_circuit(2 + static_cast<int>(seed % 5), 30, 0.2, seed * 11);
        const Circuit out = extract_pipeline(c);
        CHECK(equal_up_to_global_phase(circuit_unitary(out), circuit_unitary(c)));
    }
}

TEST_CASE("basic_optimize rules") {
    SUBCASE("HH cancels") {
        Circuit c(1);
        c.push(Gate::h(0));
        c.push(Gate::h(0));
        CHECK(basic_optimize(c).total() == 0);
    }
    SUBCASE("TT fuses to S") {
        Circuit c(1);
        c.push(Gate::t(0));
        c.push(Gate::t(0));
        const Circuit out = basic_optimize(c);
        REQUIRE(out.total() == 1);
        CHECK(out.gates[0].kind == GateKind::S);
    }
    SUBCASE("CZ Z CZ commutes to Z") {
        Circuit c(2);
        c.push(Gate::cz(0, 1));
        c.push(Gate::z(0));
        c.push(Gate::cz(0, 1));
        const Circuit out = basic_optimize(c);
        REQUIRE(out.total() == 1);
        CHECK(out.gates[0].kind == GateKind::Z);
        CHECK(equal_up_to_global_phase(circuit_unitary(out), circuit_unitary(c)));
    }
    SUBCASE("Rz commutes past CNOT control") {
        Circuit c(2);
        c.push(Gate::t(0));
        c.push(Gate::cnot(0, 1));
        c.push(Gate::tdg(0));
        c.push(Gate::cnot(0, 1));
        const Circuit out = basic_optimize(c);
        CHECK(out.total() == 0);
    }
    SUBCASE("H CZ H resynthesises to CNOT") {
        Circuit c(2);
        c.push(Gate::h(1));
        c.push(Gate::cz(0, 1));
        c.push(Gate::h(1));
        const Circuit out = basic_optimize(c);
        REQUIRE(out.total() == 1);
        CHECK(out.gates[0] == Gate::cnot(0, 1));
        CHECK(out.count_2q() == 1);
    }
}

TEST_CASE("basic_optimize is idempotent and unitary-preserving") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Circuit c = random_circuit(4, 60, 0.25, seed * 3);
        const Circuit once = basic_optimize(c);
        CHECK(basic_optimize(once) == once);
        CHECK(once.count_2q() <= c.count_2q());
        CHECK(once.count_t() <= c.count_t());
        CHECK(equal_up_to_global_phase(circuit_unitary(once), circuit_unitary(c)));
    }
}

TEST_SUITE_END();
