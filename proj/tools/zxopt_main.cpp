#include "zxopt/bench.hpp"
#include "zxopt/circuit.hpp"
#include "zxopt/optimizer.hpp"
#include "zxopt/random_circuit.hpp"
#include "zxopt/teleport.hpp"
#include "zxopt/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

struct CommonOpts {
    int smax = 2;
    int smax_lcomp = -1;
    int smax_pivot = -1;
    unsigned seed = 0;
    bool verify = false;
    bool teleport_only = false;
    bool json = false;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--smax", o.smax, "Unfusion subset cap for both rule families");
    cmd->add_option("--smax-lcomp", o.smax_lcomp, "Override the local-complementation cap");
    cmd->add_option("--smax-pivot", o.smax_pivot, "Override the pivot cap");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_flag("--verify", o.verify, "Check unitary equivalence (<= 10 qubits)");
    cmd->add_flag("--teleport-only", o.teleport_only, "Phase teleportation only");
    cmd->add_flag("--json", o.json, "Machine-readable line-delimited output");
    cmd->add_option("--out", o.out_path, "Output path");
}

zxopt::BenchOptions bench_options(const CommonOpts& o) {
    zxopt::BenchOptions b;
    b.optimizer.s_max_lcomp = o.smax_lcomp >= 0 ? o.smax_lcomp : o.smax;
    b.optimizer.s_max_pivot = o.smax_pivot >= 0 ? o.smax_pivot : o.smax;
    b.optimizer.rng_seed = o.seed;
    b.verify = o.verify;
    b.teleport_only = o.teleport_only;
    return b;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw zxopt::ZxError("cannot write to " + path);
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ZX-calculus quantum circuit optimiser"};
    app.require_subcommand(1);

    CommonOpts opt_o, bench_o, random_o;
    std::string input_path, bench_dir;
    int rnd_qubits = 8, rnd_gates = 400;
    double rnd_pt = 0.1;

    CLI::App* opt = app.add_subcommand("optimize", "Optimise a QASM circuit");
    opt->add_option("input", input_path, "Input .qasm file")->required();
    add_common(opt, opt_o);

    CLI::App* bench = app.add_subcommand("bench", "Run a directory of QASM benchmarks");
    bench->add_option("dir", bench_dir, "Directory containing .qasm files")->required();
    add_common(bench, bench_o);

    CLI::App* rnd = app.add_subcommand("random", "Generate a random Clifford+T circuit");
    rnd->add_option("--qubits", rnd_qubits, "Number of qubits");
    rnd->add_option("--gates", rnd_gates, "Number of gates");
    rnd->add_option("--pt", rnd_pt, "T-gate probability");
    add_common(rnd, random_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (opt->parsed()) {
            zxopt::Circuit c;
            try {
                c = zxopt::parse_qasm_file(input_path);
            } catch (const zxopt::ZxError& e) {
                std::cerr << e.what() << "\n";
                return kExitParse;
            }
            const zxopt::BenchOptions opts = bench_options(opt_o);
            const auto t0 = std::chrono::steady_clock::now();
            zxopt::Circuit optimized;
            if (opts.teleport_only)
                optimized = zxopt::teleport_circuit(c).circuit;
            else
                optimized = zxopt::flow_opt_rounds(c, opts.optimizer, opts.max_rounds);
            zxopt::BenchEntry e;
            e.name = input_path;
            e.qubits = c.n_qubits;
            e.original = zxopt::metrics_of(c);
            e.optimized = zxopt::metrics_of(optimized);
            e.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (opts.verify && c.n_qubits <= 10)
                e.verified = zxopt::equal_up_to_global_phase(zxopt::circuit_unitary(optimized),
                                                             zxopt::circuit_unitary(c));
            write_out(opt_o.out_path, zxopt::emit_qasm(optimized));
            zxopt::MetricsReport rep;
            rep.entries.push_back(e);
            std::cerr << (opt_o.json ? zxopt::format_jsonl(rep) : zxopt::format_table(rep));
            if (e.verified && !*e.verified) {
                std::cerr << "error: optimised circuit failed unitary verification\n";
                return kExitInternal;
            }
            return kExitOk;
        }
        if (bench->parsed()) {
            const zxopt::MetricsReport rep = zxopt::run_bench(bench_dir, bench_options(bench_o));
            write_out(bench_o.out_path,
                      bench_o.json ? zxopt::format_jsonl(rep) : zxopt::format_table(rep));
            return kExitOk;
        }
        if (rnd->parsed()) {
            const zxopt::Circuit c =
                zxopt::random_circuit(rnd_qubits, rnd_gates, rnd_pt, random_o.seed);
            write_out(random_o.out_path, zxopt::emit_qasm(c));
            return kExitOk;
        }
    } catch (const zxopt::ZxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
