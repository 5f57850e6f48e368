#include "zxopt/rewrites.hpp"

#include "test_util.hpp"
#include "zxopt/verify.hpp"

#include "doctest.h"

#include <random>

using namespace zxopt;
using namespace zxopt_test;

namespace {

/// 2-qubit scaffold with four internal spiders wired in a square, so local
/// rules have room to act; phases chosen per test.
struct Scaffold {
    ZxDiagram d{2};
    Vertex in0, in1, out0, out1;

    Scaffold() {
        in0 = d.add_spider();
        in1 = d.add_spider();
        out0 = d.add_spider();
        out1 = d.add_spider();
        d.attach_input(in0, 0, true);
        d.attach_input(in1, 1, true);
        d.attach_output(out0, 0);
        d.attach_output(out1, 1);
    }
};

std::vector<RewriteMatch> all_matches_everywhere(const ZxDiagram& d) {
    std::vector<RewriteMatch> ms;
    for (Vertex v : d.vertices()) {
        if (d.is_internal(v) && d.degree(v) == 2 && d.phase(v).cliff.is_zero() &&
            !d.phase(v).has_var() &&
            !(d.is_boundary(d.neighbors(v)[0]) && d.is_boundary(d.neighbors(v)[1])))
            ms.push_back(make_id_fuse_match(d, v));
        if (d.is_internal(v) && d.phase(v).cliff.is_proper_clifford() && !d.phase(v).has_var()) {
            std::vector<Vertex> forced;
            for (Vertex w : d.neighbors(v))
                if (d.is_boundary(w))
                    forced.push_back(w);
            if (forced.size() <= 2)
                ms.push_back(make_lcomp_match(d, v, forced));
        }
    }
    for (auto [u, v] : d.edges()) {
        if (!d.is_internal(u) || !d.is_internal(v))
            continue;
        if (!d.phase(u).cliff.is_pauli() || !d.phase(v).cliff.is_pauli())
            continue;
        if (d.phase(u).has_var() || d.phase(v).has_var())
            continue;
        std::vector<Vertex> fu, fv;
        for (Vertex w : d.neighbors(u))
            if (w != v && d.is_boundary(w))
                fu.push_back(w);
        for (Vertex w : d.neighbors(v))
            if (w != u && d.is_boundary(w))
                fv.push_back(w);
        if (fu.size() <= 2 && fv.size() <= 2)
            ms.push_back(make_pivot_match(d, u, v, fu, fv));
    }
    return ms;
}

} // namespace

TEST_SUITE_BEGIN("rewrites");

TEST_CASE("id_fuse merges a phase chain") {
    // Z(pi/4) -H- Z(0) -H- Z(pi/4) collapses to a single Z(pi/2)
    Scaffold s;
    auto& d = s.d;
    const Vertex a = d.add_spider(Phase::quarter_pi());
    const Vertex m = d.add_spider();
    const Vertex b = d.add_spider(Phase::quarter_pi());
    d.add_edge(s.in0, a);
    d.add_edge(a, m);
    d.add_edge(m, b);
    d.add_edge(b, s.out0);
    d.add_edge(s.in1, s.out1);
    const ZxDiagram before = d;

    const ApplyResult r = apply_match(d, make_id_fuse_match(d, m));
    CHECK(r.delta_v == -2);
    CHECK(r.delta_e == -2);
    const Vertex survivor = std::min(a, b);
    CHECK(d.alive(survivor));
    CHECK(d.phase(survivor).cliff == Phase::half_pi());
    CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
}

TEST_CASE("id_fuse with a shared direct edge resolves the self-loop") {
    Scaffold s;
    auto& d = s.d;
    const Vertex a = d.add_spider(Phase::quarter_pi());
    const Vertex m = d.add_spider();
    const Vertex b = d.add_spider();
    d.add_edge(s.in0, a);
    d.add_edge(a, m);
    d.add_edge(m, b);
    d.add_edge(a, b); // direct edge: fusion creates a Hadamard self-loop
    d.add_edge(b, s.out0);
    d.add_edge(s.in1, s.out1);
    const ZxDiagram before = d;

    apply_match(d, make_id_fuse_match(d, m));
    const Vertex survivor = std::min(a, b);
    CHECK(d.phase(survivor).cliff == Phase::quarter_pi() + Phase::pi());
    CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
}

TEST_CASE("id_fuse preconditions") {
    Scaffold s;
    auto& d = s.d;
    const Vertex v = d.add_spider();
    d.add_edge(s.in0, v);
    d.add_edge(v, s.out0);
    d.add_edge(v, s.in1); // degree 3
    d.add_edge(s.in1, s.out1);
    CHECK_THROWS_AS(id_fuse(d, v), ZxError);
}

TEST_CASE("local complementation deltas on 3 neighbours") {
    auto build = [](bool connected) {
        ZxDiagram d(3);
        std::vector<Vertex> ins, outs, mids;
        for (int q = 0; q < 3; ++q) {
            const Vertex i = d.add_spider();
            const Vertex m = d.add_spider();
            const Vertex o = d.add_spider();
            d.attach_input(i, q, true);
            d.attach_output(o, q, true);
            d.add_edge(i, m);
            d.add_edge(m, o);
            ins.push_back(i);
            mids.push_back(m);
            outs.push_back(o);
        }
        const Vertex v = d.add_spider(Phase::half_pi());
        for (Vertex m : mids)
            d.add_edge(v, m);
        if (connected)
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    d.add_edge(mids[i], mids[j]);
        return std::make_pair(d, v);
    };

    SUBCASE("pairwise-unconnected neighbours: triangle created") {
        auto [d, v] = build(false);
        const ZxDiagram before = d;
        const RewriteMatch m = make_lcomp_match(d, v, {});
        CHECK(m.delta_v == -1);
        CHECK(m.delta_e == 0);
        CHECK(m.delta_2q() == 1);
        apply_match(d, m);
        CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
    }
    SUBCASE("pairwise-connected neighbours: clique removed") {
        auto [d, v] = build(true);
        const ZxDiagram before = d;
        const RewriteMatch m = make_lcomp_match(d, v, {});
        CHECK(m.delta_v == -1);
        CHECK(m.delta_e == -6);
        CHECK(m.delta_2q() == -5);
        apply_match(d, m);
        CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
    }
    SUBCASE("non-Clifford residual: no match") {
        auto [d, v] = build(false);
        d.set_phase(v, PhaseExpr{Phase::quarter_pi()});
        CHECK_THROWS_AS(local_comp(d, v, {}), ZxError);
    }
}

TEST_CASE("pivot deltas with private neighbours") {
    // u(0) ~ v(pi), one private neighbour each, no common neighbourhood
    ZxDiagram d(2);
    const Vertex i0 = d.add_spider();
    const Vertex i1 = d.add_spider();
    const Vertex o0 = d.add_spider();
    const Vertex o1 = d.add_spider();
    d.attach_input(i0, 0, true);
    d.attach_input(i1, 1, true);
    d.attach_output(o0, 0, true);
    d.attach_output(o1, 1, true);
    const Vertex b = d.add_spider();
    const Vertex c = d.add_spider();
    d.add_edge(i0, b);
    d.add_edge(i1, c);
    const Vertex u = d.add_spider();
    const Vertex v = d.add_spider(Phase::pi());
    d.add_edge(u, v);
    d.add_edge(u, b);
    d.add_edge(v, c);
    d.add_edge(b, o0);
    d.add_edge(c, o1);
    const ZxDiagram before = d;

    // edges (u,v), (u,b), (v,c) removed; (b,c) created
    const RewriteMatch m = make_pivot_match(d, u, v, {}, {});
    CHECK(m.delta_v == -2);
    CHECK(m.delta_e == -2);
    CHECK(m.delta_2q() == 0);
    apply_match(d, m);
    CHECK(d.has_edge(b, c)); // B-C edge created
    CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
}

TEST_CASE("pivot with identical neighbour sets") {
    ZxDiagram d(2);
    const Vertex i0 = d.add_spider();
    const Vertex i1 = d.add_spider();
    const Vertex o0 = d.add_spider();
    const Vertex o1 = d.add_spider();
    d.attach_input(i0, 0, true);
    d.attach_input(i1, 1, true);
    d.attach_output(o0, 0, true);
    d.attach_output(o1, 1, true);
    const Vertex a1 = d.add_spider();
    const Vertex a2 = d.add_spider();
    d.add_edge(i0, a1);
    d.add_edge(a1, o0);
    d.add_edge(i1, a2);
    d.add_edge(a2, o1);
    const Vertex u = d.add_spider();
    const Vertex v = d.add_spider();
    d.add_edge(u, v);
    d.add_edge(u, a1);
    d.add_edge(u, a2);
    d.add_edge(v, a1);
    d.add_edge(v, a2);
    const ZxDiagram before = d;
    apply_match(d, make_pivot_match(d, u, v, {}, {}));
    CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
}

TEST_CASE("pivot requires Pauli residuals") {
    Scaffold s;
    auto& d = s.d;
    const Vertex u = d.add_spider(Phase::quarter_pi());
    const Vertex v = d.add_spider();
    d.add_edge(u, v);
    d.add_edge(s.in0, u);
    d.add_edge(v, s.out0);
    d.add_edge(s.in1, s.out1);
    CHECK_THROWS_AS(pivot(d, u, v, {}, {}), ZxError);
}

TEST_CASE("neighbour unfusion") {
    Scaffold s;
    auto& d = s.d;
    const Vertex v = d.add_spider(Phase::quarter_pi());
    d.add_edge(s.in0, v);
    d.add_edge(v, s.out0);
    d.add_edge(v, s.in1);
    d.add_edge(s.in1, s.out1);
    const ZxDiagram before = d;

    SUBCASE("empty subset dangles a fresh chain") {
        const ApplyResult r = neighbour_unfuse(d, v, {});
        CHECK(r.delta_v == 2);
        CHECK(r.delta_e == 2);
        CHECK(r.delta_e - r.delta_v == 0);
        REQUIRE(r.created.size() == 2);
        CHECK(d.phase(r.created[0]).cliff.is_zero());
        CHECK(d.phase(r.created[1]).cliff.is_zero());
        CHECK(d.degree(r.created[1]) == 1);
        CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
    }
    SUBCASE("chosen neighbours are re-targeted") {
        const ApplyResult r = neighbour_unfuse(d, v, {s.in1});
        CHECK(!d.has_edge(v, s.in1));
        CHECK(d.has_edge(r.created[1], s.in1));
        CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
    }
    SUBCASE("S_N must be a subset of N(v)") {
        CHECK_THROWS_AS(neighbour_unfuse(d, v, {s.out1}), ZxError);
    }
    SUBCASE("unfuse then fusing both fresh spiders is the identity") {
        const ApplyResult r = neighbour_unfuse(d, v, {s.in1});
        ZxDiagram d2 = d;
        id_fuse(d2, r.created[0]);
        // the second fresh spider fused into v; fuse the remaining stub
        CHECK(d2 == before);
    }
}

TEST_CASE("gadget fusion and deletion") {
    auto gadget_diagram = [](Phase alpha, Phase beta) {
        ZxDiagram d(2);
        const Vertex i0 = d.add_spider();
        const Vertex i1 = d.add_spider();
        const Vertex o0 = d.add_spider();
        const Vertex o1 = d.add_spider();
        d.attach_input(i0, 0, true);
        d.attach_input(i1, 1, true);
        d.attach_output(o0, 0);
        d.attach_output(o1, 1);
        d.add_edge(i0, o0);
        d.add_edge(i1, o1);
        const Vertex b1 = d.add_spider();
        const Vertex t1 = d.add_spider(alpha);
        d.add_edge(b1, t1);
        d.add_edge(b1, i0);
        d.add_edge(b1, i1);
        const Vertex b2 = d.add_spider();
        const Vertex t2 = d.add_spider(beta);
        d.add_edge(b2, t2);
        d.add_edge(b2, i0);
        d.add_edge(b2, i1);
        return std::make_tuple(d, b1, b2, t1);
    };

    SUBCASE("same legs fuse; phases combine") {
        auto [d, b1, b2, t1] = gadget_diagram(Phase::quarter_pi(), Phase::quarter_pi());
        const ZxDiagram before = d;
        gadget_fuse(d, b1, b2);
        CHECK(d.phase(t1).cliff == Phase::half_pi());
        CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
    }
    SUBCASE("different legs do not match") {
        auto [d, b1, b2, t1] = gadget_diagram(Phase::quarter_pi(), Phase::quarter_pi());
        (void)t1;
        const Vertex extra = d.add_spider();
        d.add_edge(extra, d.inputs()[0]);
        d.add_edge(b2, extra);
        CHECK_THROWS_AS(gadget_fuse(d, b1, b2), ZxError);
    }
    SUBCASE("single-leg gadget fuses onto the leg") {
        ZxDiagram d(1);
        const Vertex i = d.add_spider(Phase::quarter_pi()); // leg with beta
        const Vertex o = d.add_spider();
        d.attach_input(i, 0, true);
        d.attach_output(o, 0);
        d.add_edge(i, o);
        const Vertex b = d.add_spider();
        const Vertex t = d.add_spider(Phase::half_pi());
        d.add_edge(b, t);
        d.add_edge(b, i);
        const ZxDiagram before = d;
        gadget_delete(d, b);
        CHECK(d.phase(i).cliff == Phase::of(3, 4)); // alpha + beta
        CHECK(!d.alive(b));
        CHECK(!d.alive(t));
        CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
    }
    SUBCASE("pi on the base flips the top") {
        auto [d, b1, b2, t1] = gadget_diagram(Phase::quarter_pi(), Phase::quarter_pi());
        (void)b2;
        d.add_to_phase(b1, Phase::pi());
        const ZxDiagram before = d;
        gadget_delete(d, b1);
        CHECK(d.phase(b1).cliff.is_zero());
        CHECK(d.phase(t1).cliff == Phase::of(-1, 4));
        CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
    }
    SUBCASE("two-leg zero-base gadget has no delete match") {
        auto [d, b1, b2, t1] = gadget_diagram(Phase::quarter_pi(), Phase::quarter_pi());
        (void)b2;
        (void)t1;
        CHECK_THROWS_AS(gadget_delete(d, b1), ZxError);
    }
}

TEST_CASE("gadgetize and detach_boundary preserve the tensor") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Circuit c = random_circuit(3, 20, 0.3, seed);
        ZxDiagram d = to_graph_like(circuit_to_diagram(c));
        const ZxDiagram before = d;
        Vertex internal = -1, boundary = -1;
        for (Vertex v : d.vertices()) {
            if (d.is_internal(v) && internal < 0)
                internal = v;
            if (d.is_boundary(v) && boundary < 0)
                boundary = v;
        }
        if (internal >= 0) {
            gadgetize(d, internal);
            CHECK(equal_up_to_global_phase(diagram_tensor(d), diagram_tensor(before)));
        }
        ZxDiagram d2 = before;
        if (boundary >= 0) {
            detach_boundary(d2, boundary);
            CHECK(equal_up_to_global_phase(diagram_tensor(d2), diagram_tensor(before)));
        }
    }
}

TEST_CASE("gadget rule fuzz: split, fuse back, flip") {
    std::mt19937_64 rng(2718);
    int exercised = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const int qubits = 2 + static_cast<int>(seed % 3);
        const Circuit c = random_circuit(qubits, 16, 0.3, seed * 5);
        ZxDiagram d = to_graph_like(circuit_to_diagram(c));
        const DenseUnitary ref = circuit_unitary(c);

        Vertex host = -1;
        for (Vertex v : d.vertices())
            if (d.is_internal(v) && d.degree(v) >= 2)
                host = std::max(host, v);
        if (host < 0)
            continue;
        gadgetize(d, host);
        REQUIRE(equal_up_to_global_phase(diagram_tensor(d), ref, 1e-8));

        // the pendant pair now forms a gadget on host's legs; split its top
        // phase across a second gadget with the same legs, then fuse back
        Vertex base = -1;
        for (Vertex v : d.vertices())
            if (d.is_internal(v) && gadget_top(d, v).has_value() &&
                d.phase(v).cliff.is_zero())
                base = v;
        if (base < 0)
            continue;
        const Vertex top = *gadget_top(d, base);
        const Phase part = Phase::of(static_cast<int>(rng() % 7) - 3, 4);
        d.add_to_phase(top, -part);
        const Vertex base2 = d.add_spider();
        const Vertex top2 = d.add_spider(part);
        d.add_edge(base2, top2);
        for (Vertex leg : d.neighbors(base))
            if (leg != top)
                d.add_edge(base2, leg);
        REQUIRE(equal_up_to_global_phase(diagram_tensor(d), ref, 1e-8));

        gadget_fuse(d, std::min(base, base2), std::max(base, base2));
        REQUIRE(equal_up_to_global_phase(diagram_tensor(d), ref, 1e-8));

        // pi on the base flips the top; applying it must keep the tensor
        Vertex remaining = d.alive(base) ? base : base2;
        d.add_to_phase(remaining, Phase::pi());
        ZxDiagram flipped = d;
        gadget_delete(flipped, remaining);
        CHECK(equal_up_to_global_phase(diagram_tensor(flipped), diagram_tensor(d), 1e-8));
        ++exercised;
    }
    CHECK(exercised >= 40);
}

TEST_CASE("tensor-equality fuzz across all rules") {
    std::mt19937_64 rng(99);
    int applications = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const int qubits = 2 + static_cast<int>(seed % 3); // 2..4
        const Circuit c = random_circuit(qubits, 18 + static_cast<int>(seed % 12), 0.25, seed);
        ZxDiagram d = to_graph_like(circuit_to_diagram(c));
        const DenseUnitary ref = circuit_unitary(c);

        for (int step = 0; step < 4; ++step) {
            const std::vector<RewriteMatch> ms = all_matches_everywhere(d);
            if (ms.empty())
                break;
            const RewriteMatch& m = ms[rng() % ms.size()];
            const ApplyResult r = apply_match(d, m); // throws if deltas disagree
            (void)r;
            ++applications;
            CHECK(d.is_graph_like());
            REQUIRE(equal_up_to_global_phase(diagram_tensor(d), ref, 1e-8));
        }
    }
    CHECK(applications > 50);
}

TEST_SUITE_END();
