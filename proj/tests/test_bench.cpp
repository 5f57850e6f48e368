#include "zxopt/bench.hpp"

#include "zxopt/optimizer.hpp"
#include "zxopt/random_circuit.hpp"

#include "doctest.h"

using namespace zxopt;

TEST_SUITE_BEGIN("bench");

TEST_CASE("random circuits are reproducible and well formed") {
    const Circuit a = random_circuit(8, 400, 0.1, 1);
    const Circuit b = random_circuit(8, 400, 0.1, 1);
    CHECK(a == b);
    CHECK(a.total() == 400);
    CHECK(emit_qasm(a) == emit_qasm(b));

    CHECK(random_circuit(5, 200, 0.0, 3).count_t() == 0);
    CHECK_THROWS_AS(random_circuit(4, 10, 1.5, 0), ZxError);
}

TEST_CASE("T fraction tracks p_t over many seeds") {
    // binomial: 100 seeds x 400 gates at p 0.1 -> mean 40 +/- ~5 sigma
    long long t_total = 0;
    const int seeds = 100, gates = 400;
    for (int s = 1; s <= seeds; ++s)
        t_total += random_circuit(8, gates, 0.1, static_cast<std::uint64_t>(s)).count_t();
    const double mean = static_cast<double>(t_total) / seeds;
    CHECK(mean > 40.0 - 5 * 6.0);
    CHECK(mean < 40.0 + 5 * 6.0);
}

TEST_CASE("bench records are deterministic for a fixed configuration") {
    MetricsReport r1, r2;
    BenchOptions opts;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Circuit c = random_circuit(4, 60, 0.1, seed);
        r1.entries.push_back(run_single("c" + std::to_string(seed), c, opts));
        r2.entries.push_back(run_single("c" + std::to_string(seed), c, opts));
    }
    CHECK(format_jsonl(r1) == format_jsonl(r2)); // timing fields excluded
    CHECK(r1.mean_2q_reduction_percent() == r2.mean_2q_reduction_percent());
}

TEST_CASE("Clifford-only circuits never lose to the s_max=0 strategy") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Circuit c = random_circuit(5, 80, 0.0, seed * 7);
        OptimizerConfig base;
        base.s_max_lcomp = 0;
        base.s_max_pivot = 0;
        OptimizerConfig full;
        const Circuit c0 = flow_opt_rounds(c, base, 4);
        const Circuit c2 = flow_opt_rounds(c, full, 4);
        CHECK(c2.count_2q() <= c0.count_2q());
        CHECK(c2.count_2q() <= c.count_2q());
    }
}

TEST_CASE("per-file failures do not abort a bench run") {
    MetricsReport rep;
    BenchEntry bad;
    bad.name = "broken";
    bad.error = "parse error";
    rep.entries.push_back(bad);
    BenchEntry good;
    good.name = "fine";
    good.qubits = 2;
    good.original = {4, 2, 10};
    good.optimized = {3, 2, 8};
    rep.entries.push_back(good);
    const std::string table = format_table(rep);
    CHECK(table.find("ERROR: parse error") != std::string::npos);
    CHECK(table.find("fine") != std::string::npos);
    CHECK(rep.mean_2q_reduction_percent() == doctest::Approx(25.0));
}

TEST_SUITE_END();
