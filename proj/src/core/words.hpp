#ifndef LEFKIT_WORDS_HPP
#define LEFKIT_WORDS_HPP

#include "surface.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lefkit {

using Registry = std::shared_ptr<const CurveRegistry>;

/****************************************************************************
 * Dehn-twist words. A CurveExpr denotes the image w(base) of a registry
 * curve under a twist word w; words act with the rightmost letter first, so
 * the conjugator letter adjacent to the base acts first.
 ****************************************************************************/

struct SignedLetter {
    int curve = -1; // registry id
    int exp = 1;    // +1 or -1
    bool operator==(const SignedLetter&) const = default;
    bool operator<(const SignedLetter& o) const
    {
        return curve != o.curve ? curve < o.curve : exp < o.exp;
    }
};

struct CurveExpr {
    std::vector<SignedLetter> conj;
    int base = -1;
    bool operator==(const CurveExpr&) const = default;
};

/// Certified equality tiers, strongest first.
enum class Tier { Syntactic = 3, Rewritten = 2, HomologyOnly = 1, Distinct = 0 };

const char* tier_name(Tier t);
Tier min_tier(Tier a, Tier b);

struct TwistLetter {
    CurveExpr curve;
    int exp = 1;
    bool operator==(const TwistLetter&) const = default;
};

TwistLetter make_letter(const Registry& reg, const std::string& name, int exp = 1);
CurveExpr make_expr(const Registry& reg, const std::string& name);

/// Integral class of the curve an expression denotes.
HomologyClass expr_class(const Registry& reg, const CurveExpr& e);

/// Classes agree up to sign (curves are unoriented).
bool classes_equal_up_to_sign(const HomologyClass& x, const HomologyClass& y);

/// True iff the capped integral class vanishes. Total on expressions, since
/// registry curves and their twist images are certified simple closed curves.
bool is_separating(const Registry& reg, const CurveExpr& e);

/// Deterministic, idempotent normal form: free reduction plus removal of
/// conjugator letters disjoint from (or equal to) everything they act on,
/// then a canonical ordering of adjacent commuting letters. Never changes
/// the denoted curve.
CurveExpr normalize(const Registry& reg, CurveExpr e);

struct EqualResult {
    Tier tier = Tier::Distinct;
    std::string detail; // witness / rewrite note
};

/// Tiered equality oracle. `depth` bounds the number of braid/axiom
/// rewrites explored for the Rewritten tier.
EqualResult curve_equal(const Registry& reg, const CurveExpr& a, const CurveExpr& b, int depth = 12);

std::string expr_to_string(const Registry& reg, const CurveExpr& e);

/****************************************************************************
 * Factorizations.
 ****************************************************************************/

struct SectionRecord {
    int multiplicity = 1;      // 1 = section, 2 = bisection, ...
    int self_intersection = -1;
};

struct Factorization {
    Registry reg;
    std::vector<TwistLetter> letters;
    std::map<int, int> target;  // boundary index (1-based) -> exponent; empty = closed
    bool monodromy = true;      // positive factorization of the target multi-twist
    std::vector<SectionRecord> sections;
    Tier taint = Tier::Syntactic; // weakest certification used to produce it

    const Surface& surface() const { return reg->surface(); }
    int base_points() const;
    bool is_pencil() const { return !target.empty(); }
};

/// All-ones pencil target / empty fibration target helpers.
Factorization make_factorization(const Registry& reg, const std::vector<std::string>& names,
                                 bool pencil_target);

/// Flags letters that violate positivity or twist a boundary-parallel curve.
std::vector<std::string> wellformedness_flags(const Factorization& f);

/// Product of the letters' transvections, rightmost letter first.
IMat homology_action(const Factorization& f);
IMat homology_action(const Registry& reg, const std::vector<TwistLetter>& letters);

/// Hurwitz moves. direction left:  (.., t_a, t_b, ..) -> (.., t_b, t_{b^-1(a)}, ..)
///                direction right: (.., t_a, t_b, ..) -> (.., t_{a(b)}, t_a, ..)
/// k is the 1-based index of the left letter of the pair.
Factorization hurwitz_move(const Factorization& f, int k, bool left);

/// Rotate letters left by k (target must be a central multi-twist).
Factorization cyclic_permute(const Factorization& f, int k);

/// Conjugate every letter by w (and transport the target, which is fixed by
/// any mapping class since boundary twists are central).
Factorization global_conjugate(const Factorization& f, const std::vector<SignedLetter>& w);

struct VerificationReport {
    bool pass = false;
    std::string witness;                 // first diverging image, when failing
    Tier taint = Tier::Syntactic;
    std::vector<std::pair<std::string, std::string>> checked; // letter vs name, tier
};

/// Necessary condition: the word acts on H1 exactly as the target multi-twist
/// (identically, since boundary classes are radical).
VerificationReport verify_boundary_multitwist(const Factorization& f);

/// Cap boundary components: removes the given 1-based boundary indices
/// (empty = all), remapping curves onto the smaller surface's registry.
Factorization cap_factorization(const Factorization& f, std::vector<int> boundary_indices = {});

std::string factorization_to_json(const Factorization& f);
Factorization factorization_from_json(const std::string& text);

} // namespace lefkit

#endif
