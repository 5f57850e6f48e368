#pragma once

#include "zxopt/circuit.hpp"
#include "zxopt/optimizer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zxopt {

struct CircuitMetrics {
    int two_qubit = 0;
    int t_count = 0;
    int total = 0;
};

struct BenchEntry {
    std::string name;
    int qubits = 0;
    CircuitMetrics original;
    CircuitMetrics optimized;
    double wall_seconds = 0.0;
    std::optional<bool> verified; // set when the equivalence oracle ran
    std::string error;            // nonempty if the circuit failed
};

struct MetricsReport {
    std::vector<BenchEntry> entries;
    /// Mean of per-circuit 2Q reductions, 100*(1 - opt/orig).
    double mean_2q_reduction_percent() const;
};

CircuitMetrics metrics_of(const Circuit& c);

struct BenchOptions {
    OptimizerConfig optimizer;
    bool verify = false;       // unitary oracle on circuits up to 10 qubits
    bool teleport_only = false;
    int max_rounds = 4;        // re-run the pipeline until the counts settle
};

/// Run flow_opt repeatedly until neither the 2Q-count nor the total gate
/// count improves (at most max_rounds passes).
Circuit flow_opt_rounds(const Circuit& c, const OptimizerConfig& cfg, int max_rounds);

/// Optimise every .qasm file in the directory (sorted by name); per-file
/// failures are recorded and the suite continues.
MetricsReport run_bench(const std::string& dir, const BenchOptions& opts);

BenchEntry run_single(const std::string& name, const Circuit& c, const BenchOptions& opts);

std::string format_table(const MetricsReport& report);
/// Line-delimited JSON records, fixed field order, no timing fields (stable
/// across runs for a fixed configuration).
std::string format_jsonl(const MetricsReport& report);

} // namespace zxopt
