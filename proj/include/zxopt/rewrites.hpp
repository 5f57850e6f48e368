#pragma once

#include "zxopt/zx_diagram.hpp"

#include <functional>
#include <vector>

namespace zxopt {

/// Hooks into the phase-variable table for symbolic diagrams. Rewrites on
/// plain diagrams pass nullptr and reject unresolved variables.
struct PhaseEnv {
    /// Current numeric total of the variable's group (group frame).
    std::function<Phase(int var_id)> group_total;
    /// Merge the absorbed reference's group into the kept one.
    std::function<void(VarRef kept, VarRef absorbed)> fuse;
    /// Pin the group total (group frame) when its host is consumed.
    std::function<void(VarRef ref, Phase total)> force;
};

/// Effective numeric phase of a spider (Clifford part plus group total).
Phase effective_phase(const ZxDiagram& d, Vertex v, const PhaseEnv* env);

/// Fuse b into a: Clifford parts add, variable groups merge through the env.
void fuse_phase_exprs(PhaseExpr& a, const PhaseExpr& b, const PhaseEnv* env);

enum class RewriteKind { IdFuse, LComp, Pivot, NeighbourUnfuse, GadgetFuse, GadgetDelete };

/// A candidate transformation with its exact effect on edge and vertex
/// counts (Delta N2Q = Delta E - Delta V). A boundary wire on a target
/// counts as an unfusable neighbour: detach0/detach1 move it onto the
/// detached spider (and count towards the subset cap).
struct RewriteMatch {
    RewriteKind kind;
    Vertex v0 = -1;
    Vertex v1 = -1;
    std::vector<Vertex> unfuse0; // S_N for LComp / S_Nu for Pivot
    std::vector<Vertex> unfuse1; // S_Nv for Pivot
    bool detach0 = false;        // v0's wire joins the unfused subset
    bool detach1 = false;
    long long delta_e = 0;
    long long delta_v = 0;

    long long delta_2q() const { return delta_e - delta_v; }

    friend bool operator==(const RewriteMatch& a, const RewriteMatch& b) {
        return a.kind == b.kind && a.v0 == b.v0 && a.v1 == b.v1 && a.unfuse0 == b.unfuse0 &&
               a.unfuse1 == b.unfuse1 && a.detach0 == b.detach0 && a.detach1 == b.detach1 &&
               a.delta_e == b.delta_e && a.delta_v == b.delta_v;
    }
};

struct ApplyResult {
    long long delta_e = 0;
    long long delta_v = 0;
    /// Surviving vertices whose neighbourhood changed (the image of the
    /// transformation vertex set).
    std::vector<Vertex> touched;
    std::vector<Vertex> created;
};

/// Remove an internal phase-0 degree-2 spider and fuse its two neighbours.
ApplyResult id_fuse(ZxDiagram& d, Vertex v, const PhaseEnv* env = nullptr);

/// Local complementation, optionally preceded by neighbour unfusion of s_n
/// (which must contain every boundary-attached neighbour of v, and v's own
/// wire via take_wire, unless strict_boundary is false). A residual phase
/// other than +/-pi/2 splits onto the detached spider, which requires a
/// nonempty unfusion.
ApplyResult local_comp(ZxDiagram& d, Vertex v, const std::vector<Vertex>& s_n,
                       const PhaseEnv* env = nullptr, bool strict_boundary = true,
                       bool take_wire = false);

/// Pivot on an edge, with optional neighbour unfusions on each side; the
/// same splitting rules leave Pauli residuals on both targets.
ApplyResult pivot(ZxDiagram& d, Vertex u, Vertex v, const std::vector<Vertex>& s_nu,
                  const std::vector<Vertex>& s_nv, const PhaseEnv* env = nullptr,
                  bool strict_boundary = true, bool take_wire_u = false,
                  bool take_wire_v = false);

/// Split v: insert phase-0 spiders w1, w2 with v-w1-w2 a Hadamard chain and
/// re-target the edges v-S_N (plus v's boundary wire when take_wire) to w2.
/// Exactly +2 vertices, +2 edges.
ApplyResult neighbour_unfuse(ZxDiagram& d, Vertex v, const std::vector<Vertex>& s_n,
                             bool take_wire = false);

/// Fuse two phase gadgets (identified by their base spiders) with identical
/// leg sets.
ApplyResult gadget_fuse(ZxDiagram& d, Vertex base1, Vertex base2,
                        const PhaseEnv* env = nullptr);

/// Remove a single-leg gadget (phase fuses onto the leg) or clear a pi on a
/// gadget base (top phase negates; variable sign flips).
ApplyResult gadget_delete(ZxDiagram& d, Vertex base, const PhaseEnv* env = nullptr);

/// Move v's phase onto a fresh pendant chain (gadgetisation precursor).
ApplyResult gadgetize(ZxDiagram& d, Vertex v);

/// Move a boundary wire (and v's phase) onto a fresh spider pair, leaving v
/// internal with phase 0.
ApplyResult detach_boundary(ZxDiagram& d, Vertex v);

/// Exact deltas without applying (used for match scoring).
RewriteMatch make_id_fuse_match(const ZxDiagram& d, Vertex v);
RewriteMatch make_lcomp_match(const ZxDiagram& d, Vertex v, std::vector<Vertex> s_n,
                              bool take_wire = false);
RewriteMatch make_pivot_match(const ZxDiagram& d, Vertex u, Vertex v,
                              std::vector<Vertex> s_nu, std::vector<Vertex> s_nv,
                              bool take_wire_u = false, bool take_wire_v = false);

/// Dispatch a match; throws if the recorded deltas do not materialise.
ApplyResult apply_match(ZxDiagram& d, const RewriteMatch& m, const PhaseEnv* env = nullptr);

/// Gadget recognition: base spider of a proper phase gadget (internal,
/// Clifford-free base with exactly one pendant top). Returns the top.
std::optional<Vertex> gadget_top(const ZxDiagram& d, Vertex base);

} // namespace zxopt
