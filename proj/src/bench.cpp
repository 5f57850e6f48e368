#include "zxopt/bench.hpp"

#include "zxopt/teleport.hpp"
#include "zxopt/verify.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>

namespace zxopt {

CircuitMetrics metrics_of(const Circuit& c) {
    return CircuitMetrics{c.count_2q(), c.count_t(), c.total()};
}

double MetricsReport::mean_2q_reduction_percent() const {
    double sum = 0.0;
    int n = 0;
    for (const BenchEntry& e : entries) {
        if (!e.error.empty() || e.original.two_qubit == 0)
            continue;
        sum += 100.0 * (1.0 - static_cast<double>(e.optimized.two_qubit) /
                                  static_cast<double>(e.original.two_qubit));
        ++n;
    }
    return n == 0 ? 0.0 : sum / n;
}

Circuit flow_opt_rounds(const Circuit& c, const OptimizerConfig& cfg, int max_rounds) {
    Circuit cur = c;
    for (int round = 0; round < max_rounds; ++round) {
        const Circuit next = flow_opt(cur, cfg);
        if (next.count_2q() >= cur.count_2q() && next.total() >= cur.total()) {
            if (next.count_2q() < cur.count_2q() || next.total() < cur.total())
                cur = next;
            break;
        }
        cur = next;
    }
    return cur;
}

BenchEntry run_single(const std::string& name, const Circuit& c, const BenchOptions& opts) {
    BenchEntry e;
    e.name = name;
    e.qubits = c.n_qubits;
    e.original = metrics_of(c);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Circuit opt;
        if (opts.teleport_only)
            opt = teleport_circuit(c).circuit;
        else
            opt = flow_opt_rounds(c, opts.optimizer, opts.max_rounds);
        e.optimized = metrics_of(opt);
        if (opts.verify && c.n_qubits <= 10)
            e.verified = equal_up_to_global_phase(circuit_unitary(opt), circuit_unitary(c));
    } catch (const std::exception& ex) {
        e.error = ex.what();
    }
    e.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

MetricsReport run_bench(const std::string& dir, const BenchOptions& opts) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".qasm")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    MetricsReport report;
    for (const fs::path& p : files) {
        BenchEntry e;
        try {
            const Circuit c = parse_qasm_file(p.string());
            e = run_single(p.stem().string(), c, opts);
        } catch (const std::exception& ex) {
            e.name = p.stem().string();
            e.error = ex.what();
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

std::string format_table(const MetricsReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(20) << "circuit" << std::right << std::setw(4) << "Q"
        << std::setw(8) << "2Q" << std::setw(7) << "T" << std::setw(8) << "total"
        << std::setw(8) << "2Q'" << std::setw(7) << "T'" << std::setw(8) << "total'"
        << std::setw(9) << "2Q red%" << std::setw(9) << "time(s)" << "  ok\n";
    for (const BenchEntry& e : report.entries) {
        if (!e.error.empty()) {
            out << std::left << std::setw(20) << e.name << "  ERROR: " << e.error << "\n";
            continue;
        }
        const double red = e.original.two_qubit == 0
                               ? 0.0
                               : 100.0 * (1.0 - static_cast<double>(e.optimized.two_qubit) /
                                                    e.original.two_qubit);
        out << std::left << std::setw(20) << e.name << std::right << std::setw(4) << e.qubits
            << std::setw(8) << e.original.two_qubit << std::setw(7) << e.original.t_count
            << std::setw(8) << e.original.total << std::setw(8) << e.optimized.two_qubit
            << std::setw(7) << e.optimized.t_count << std::setw(8) << e.optimized.total
            << std::setw(8) << std::fixed << std::setprecision(2) << red << "%"
            << std::setw(9) << std::setprecision(3) << e.wall_seconds
            << (e.verified ? (*e.verified ? "  yes" : "  NO") : "") << "\n";
    }
    out << std::left << std::setw(20) << "<mean 2Q reduction>" << std::right << std::fixed
        << std::setprecision(2) << report.mean_2q_reduction_percent() << "%\n";
    return out.str();
}

std::string format_jsonl(const MetricsReport& report) {
    std::ostringstream out;
    for (const BenchEntry& e : report.entries) {
        nlohmann::ordered_json j;
        j["name"] = e.name;
        j["qubits"] = e.qubits;
        j["orig_2q"] = e.original.two_qubit;
        j["orig_t"] = e.original.t_count;
        j["orig_total"] = e.original.total;
        j["opt_2q"] = e.optimized.two_qubit;
        j["opt_t"] = e.optimized.t_count;
        j["opt_total"] = e.optimized.total;
        if (e.verified)
            j["verified"] = *e.verified;
        if (!e.error.empty())
            j["error"] = e.error;
        out << j.dump() << "\n";
    }
    return out.str();
}

} // namespace zxopt
