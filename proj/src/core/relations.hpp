#ifndef LEFKIT_RELATIONS_HPP
#define LEFKIT_RELATIONS_HPP

#include "words.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lefkit {

/****************************************************************************
 * Relator instances. A relator is a pair of twist words with equal mapping
 * class; construction verifies the homology actions agree over Z and that
 * the bound curves satisfy the registered incidence of their kind.
 ****************************************************************************/

enum class RelatorKind { ChainOdd, Lantern, Braid, BraidingLantern, Custom };

struct Relator {
    RelatorKind kind = RelatorKind::Custom;
    std::string name;
    std::string provenance;
    std::vector<TwistLetter> lhs, rhs;
    int chain_h = 0;               // ChainOdd: number of curves is 2h+1
    std::vector<int> braid_caps;   // BraidingLantern: boundary indices braided away
    bool commute_match = false;    // lhs letters pairwise commute: match as multiset
};

/// (t_{d_1} ... t_{d_{2h+1}})^{2h+2} = t_{b_1} t_{b_2}; preconditions per the
/// registered chain pattern.
Relator instantiate_chain(const Registry& reg, const std::vector<std::string>& chain_curves,
                          const std::string& b1, const std::string& b2,
                          const std::string& name = "");

/// t_{u_4} t_{u_3} t_{u_2} t_{u_1} = t_{i_3} t_{i_2} t_{i_1} with the strict
/// registered lantern incidence (boundary x boundary and boundary x interior
/// disjoint, interior pairs meeting twice).
Relator instantiate_lantern(const Registry& reg, const std::vector<std::string>& boundary,
                            const std::vector<std::string>& interior, const std::string& name = "");

/// Braiding lantern: the relation only holds after the two named boundary
/// components are braided into a bisection, so the homology identity is
/// checked on the capped surface. Substituting it caps those boundaries.
Relator instantiate_braiding_lantern(const Registry& reg, const std::vector<std::string>& boundary,
                                     const std::vector<std::string>& interior_capped, int cap1,
                                     int cap2, const std::string& name = "");

/// Arbitrary verified relation lhs = rhs (e.g. commutation consequences the
/// paper derives once and reuses).
Relator instantiate_custom(const Registry& reg,
                           const std::vector<std::pair<std::string, int>>& lhs,
                           const std::vector<std::pair<std::string, int>>& rhs,
                           const std::string& name, const std::string& provenance);

/// Conjugate every bound curve of r by w; the homology identity is re-checked.
Relator transport_relator(const Registry& reg, const Relator& r, const std::vector<SignedLetter>& w);

struct SubstitutionResult {
    Factorization factorization;
    Tier tier = Tier::Syntactic; // weakest per-letter match certificate
    std::vector<std::string> letter_tiers;
};

/// Replace the subword at `pos` (1-based, contiguous) matching r's lhs
/// (forward) or rhs (backward) with the other side. The match is tiered;
/// anything below Rewritten taints the output. The whole word's homology
/// action is asserted unchanged.
SubstitutionResult substitute(const Factorization& f, const Relator& r, int pos, bool forward,
                              int rewrite_depth = 12);

/// Braiding-lantern substitution: matches r.lhs at pos, caps the braided
/// boundary pair, splices in r.rhs on the capped surface and merges the two
/// section records into one bisection.
SubstitutionResult substitute_braiding(const Factorization& f, const Relator& r, int pos,
                                       int rewrite_depth = 12);

/****************************************************************************
 * Derivation scripts: JSON data with loop/affine-expression macros, replayed
 * step by step with per-step certification. See docs in scripts.cpp for the
 * op vocabulary.
 ****************************************************************************/

struct ReplayStepLog {
    std::string op;
    std::string detail;
    Tier tier = Tier::Syntactic;
    bool braid_only = false; // pure Hurwitz bookkeeping step
};

struct ReplayResult {
    bool pass = false;
    std::string failure;
    int step_index = -1;                  // failing step when !pass
    std::vector<ReplayStepLog> log;
    int lantern_substitutions = 0;
    int chain_substitutions = 0;
    Tier taint = Tier::Syntactic;
    Factorization final_factorization;    // the working side when passing
    std::map<std::string, Factorization> checkpoints;
    std::string to_json() const;
};

/// Replay a script given as JSON text. Parameters (g, i, n, ...) are taken
/// from the script's own "params" object unless overridden.
ReplayResult replay_script(const std::string& script_json,
                           const std::map<std::string, int>& param_overrides = {},
                           int rewrite_depth = 12);

/// The named catalog scripts (one per paper lemma); throws on unknown name.
/// Supported: lem1-1, lem1-2, lem1-3, prop41, lem2, thm43, lemA, sevenLS,
/// exotic-chain, stipsicz, inequivalent-1, inequivalent-2.
std::string catalog_script(const std::string& name, const std::map<std::string, int>& params);
std::vector<std::string> catalog_script_names();

/// Evaluate the tiny affine expression language used by scripts ("4*(g-i)+2").
long long eval_expr(const std::string& expr, const std::map<std::string, int>& env);

} // namespace lefkit

#endif
