#pragma once

#include "zxopt/circuit.hpp"
#include "zxopt/flow.hpp"
#include "zxopt/rewrites.hpp"
#include "zxopt/zx_diagram.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace zxopt {

struct OptimizerConfig {
    int s_max_lcomp = 2;
    int s_max_pivot = 2;
    std::optional<long long> max_iterations;
    unsigned rng_seed = 0; // reserved; selection is fully deterministic
    bool use_local_flow_check = false;

    /// Observer invoked after every committed rewrite (instrumentation).
    std::function<void(const ZxDiagram& before, const ZxDiagram& after,
                       const RewriteMatch& match, const CausalFlow& flow)>* on_accept = nullptr;
};

struct MatchList {
    std::vector<RewriteMatch> matches;

    std::size_t size() const { return matches.size(); }
    bool empty() const { return matches.empty(); }
};

/// Enumerate all IdFuse matches, LComp matches with |S_N| <= s_max_lcomp and
/// Pivot matches with per-vertex subsets <= s_max_pivot. Unfusion subsets
/// always contain the boundary-adjacent neighbours of their vertex.
MatchList find_matches(const ZxDiagram& d, const OptimizerConfig& cfg);

/// Match score: -Delta N2Q.
long long score(const RewriteMatch& m);

/// Accept iff the match reduces the 2Q-count, or keeps it while removing
/// vertices.
bool accept_match(const RewriteMatch& m);

/// Incremental refresh after an application: drop matches whose data scope
/// intersects the changed region and re-enumerate there. Equal to a fresh
/// find_matches on the new diagram.
MatchList update_matches(const MatchList& list, const ApplyResult& applied,
                         const ZxDiagram& d_new, const OptimizerConfig& cfg);

struct FlowOptStats {
    long long accepted = 0;
    long long rejected_flow = 0;
    long long flow_rechecks = 0;
    long long local_check_hits = 0;
};

/// Optimise a diagram in place; the final causal flow is returned.
CausalFlow optimize_diagram(ZxDiagram& d, const OptimizerConfig& cfg,
                            FlowOptStats* stats = nullptr);

/// Full pipeline: teleport phases, greedy flow-preserving 2Q reduction,
/// extraction, gate-level cleanup.
Circuit flow_opt(const Circuit& c, const OptimizerConfig& cfg = {},
                 FlowOptStats* stats = nullptr);

} // namespace zxopt
