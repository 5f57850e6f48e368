#pragma once

#include "zxopt/zx_diagram.hpp"

#include <optional>
#include <vector>

namespace zxopt {

/// Causal flow witness: successor function plus depth labels over the vertex
/// id space. Outputs have depth 0; l(u) > l(v) means u precedes v.
struct CausalFlow {
    std::vector<Vertex> successor; // -1 where undefined (outputs / dead ids)
    std::vector<int> depth;        // -1 for dead ids

    Vertex f(Vertex v) const { return successor[v]; }
};

/// Influencing digraph of a successor function: arcs u -> f(u) and
/// u -> N(f(u)) \ {u} for every non-output u.
struct InfluencingDigraph {
    std::vector<bool> alive;
    std::vector<std::vector<Vertex>> arcs;

    bool acyclic() const;
};

/// Corrector-propagation causal flow search, O(|I||V|). Requires |I| = |O|.
std::optional<CausalFlow> find_cflow(const OpenGraph& g);

/// Dipaths vertex-disjoint and maximal, successor adjacent, influencing
/// digraph acyclic.
bool verify_cflow(const OpenGraph& g, const CausalFlow& f);

InfluencingDigraph influencing_digraph(const OpenGraph& g, const CausalFlow& f);

enum class PreservationVerdict { Preserved, Indeterminate };

struct LocalPreservation {
    PreservationVerdict verdict = PreservationVerdict::Indeterminate;
    std::optional<CausalFlow> flow; // stitched witness when Preserved
};

/// Sufficient local check that the rewrite g -> g2 preserved the flow `f`,
/// examining only the transformation vertex set (edge symmetric difference)
/// and its extended neighbourhood. Sound, not complete: Indeterminate means
/// the caller should fall back to a full find_cflow.
LocalPreservation check_local_preservation(const OpenGraph& g, const OpenGraph& g2,
                                           const CausalFlow& f);

/// Edge-count bound for flow-admitting open graphs: m <= k*n - k(k+1)/2.
bool edge_bound_ok(long long n, long long k, long long m);

enum class MeasurementPlane { XY, YZ, XZ };

/// Causal flow for labelled open graphs: YZ-plane vertices are their own
/// successors and are stripped before the search; XZ labels are unsupported.
std::optional<CausalFlow> cflow_with_gadgets(const OpenGraph& g,
                                             const std::vector<MeasurementPlane>& label);

} // namespace zxopt
