#pragma once

#include "zxopt/circuit.hpp"
#include "zxopt/flow.hpp"
#include "zxopt/zx_diagram.hpp"

#include <vector>

namespace zxopt {

/// Diagram build with optional symbolic tracking of non-Clifford phases.
/// In symbolic mode every non-Clifford phase gate owns a fresh variable on
/// its own spider, so later fusions are observable events.
struct DiagramBuild {
    ZxDiagram diagram;
    std::vector<Phase> var_phase; // var id -> original phase
    std::vector<Vertex> var_host; // var id -> hosting spider
    std::vector<int> var_gate;    // var id -> index of the source gate
};

DiagramBuild build_diagram(const Circuit& c, bool symbolic);

/// Translate a circuit into a (graph-like) ZX-diagram.
ZxDiagram circuit_to_diagram(const Circuit& c);

/// Normalise to graph-like form. Diagrams from circuit_to_diagram already
/// satisfy the conditions; this validates and returns the canonical form.
ZxDiagram to_graph_like(const ZxDiagram& d);

/// Extract a {CZ, Rz, H} circuit from a diagram with causal flow. The flow
/// dipaths are the qubit lines; the CZ count equals |E| - |V| + |I| exactly.
Circuit extract_circuit(const ZxDiagram& d, const CausalFlow& flow);

/// Gate cancellation / commutation peephole: fixed point of HH, RzRz fusion,
/// CZCZ and CNOTCNOT cancellation with Rz commuting past CZ and CNOT
/// controls, plus cosmetic H-CZ-H -> CNOT resynthesis.
Circuit basic_optimize(const Circuit& c);

} // namespace zxopt
