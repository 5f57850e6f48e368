#pragma once

#include "zxopt/circuit.hpp"
#include "zxopt/rewrites.hpp"
#include "zxopt/zx_diagram.hpp"

#include <utility>
#include <vector>

namespace zxopt {

/// Bookkeeping for symbolic phase variables: original values, fusion groups
/// with per-member multipliers, and resolution state.
class PhaseTable {
public:
    struct Member {
        int var;
        int mult; // +/-1, group frame
    };
    struct Group {
        std::vector<Member> members;
        int live_ref = -1; // variable whose host spider carries the group
        bool frozen = false;
        bool dead = false; // merged away
    };

    int fresh_var(Phase original);
    int n_vars() const { return static_cast<int>(value_.size()); }
    Phase value(int var) const { return value_.at(var); }
    int group_of(int var) const { return group_of_.at(var); }
    const Group& group(int gid) const { return groups_.at(gid); }
    std::vector<int> live_groups() const;

    /// Numeric total sum(m_j a_j) of the group hosting `var`.
    Phase group_total_of_var(int var) const;
    Phase group_total(int gid) const;

    /// Merge two live groups; `scale` multiplies the absorbed frame.
    void fuse_groups(int ga, int gb, int scale);
    /// Reference-level fuse: kept reference's group absorbs the other.
    void fuse_refs(VarRef kept, VarRef absorbed);

    /// Lemma update: set var kappa := beta; the survivor sigma picks up
    /// m_sigma(total - m_kappa beta); all other members go to 0.
    void fix_phase(int gid, int kappa, Phase beta, int sigma);

    /// Pin a group when its host is consumed by a Clifford rewrite. The
    /// pinned total must match the current numeric total.
    void force_resolve(VarRef ref, Phase total);

    /// Default resolution policy: for every group the surviving variable is
    /// the live reference, every other member is fixed to 0.
    void resolve_defaults();

    /// Final value of a variable (after resolve_defaults / fix_phase).
    Phase final_value(int var) const { return value_.at(var); }

    /// PhaseEnv adapter for the rewrite engine.
    PhaseEnv env();

private:
    std::vector<Phase> value_;
    std::vector<int> group_of_;
    std::vector<Group> groups_;
};

/// Build the symbolic graph-like diagram of a circuit, run full_reduce on a
/// scratch copy, and return the untouched symbolic diagram with the table of
/// discovered fusions. The diagram's structure is never modified.
std::pair<ZxDiagram, PhaseTable> teleport_phases(const Circuit& c);

/// Simplify to reduced gadget form: identity fusion, local complementation
/// on proper Clifford spiders, pivoting on Pauli pairs (with boundary and
/// gadget variants), then gadget fusion/deletion, to a fixed point.
/// `order_seed` shuffles the candidate scan order (0 = canonical order).
void full_reduce(ZxDiagram& d, PhaseTable& table, unsigned order_seed = 0);

/// True if every internal spider is non-Clifford, part of a phase gadget,
/// or a bare identity link between boundary spiders.
bool in_reduced_gadget_form(const ZxDiagram& d, const PhaseTable& table);

/// Replace every variable reference in d by its resolved rational value.
ZxDiagram resolve_all(const PhaseTable& table, const ZxDiagram& d);

struct TeleportResult {
    Circuit circuit;
    int t_count_before = 0;
    int t_count_after = 0;
};

/// Phase teleportation at the circuit level: same gate structure, rotation
/// phases rewritten by the resolved table (zero rotations dropped).
TeleportResult teleport_circuit(const Circuit& c);

} // namespace zxopt
