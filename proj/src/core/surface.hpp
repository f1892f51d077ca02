#ifndef LEFKIT_SURFACE_HPP
#define LEFKIT_SURFACE_HPP

#include "linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lefkit {

/****************************************************************************
 * Compact surfaces S_g^p, their first homology, and the named curve alphabet
 * used by all the factorization families.
 *
 * H1(S_g^p; Z) has rank 2g + max(p-1, 0) with ordered basis
 *   a_1, b_1, ..., a_g, b_g, delta_1, ..., delta_{p-1};
 * the last boundary class delta_p is stored implicitly as minus the sum of
 * the others. Boundary classes lie in the radical of the intersection
 * pairing. On S_g^{2n} the boundary components are named
 * delta_1..delta_n, delta'_1..delta'_n in that order.
 ****************************************************************************/

struct Surface {
    int genus = 0;
    int boundary = 0;

    int rank() const { return 2 * genus + (boundary > 1 ? boundary - 1 : 0); }
    bool operator==(const Surface& o) const = default;
};

struct HomologyClass {
    Surface surface;
    std::vector<Int> coeff; // length = surface.rank()

    bool is_zero() const;
    bool operator==(const HomologyClass& o) const = default;
};

HomologyClass zero_class(const Surface& s);

/// Antisymmetric intersection pairing; <a_i, b_i> = +1, boundary classes
/// pair to zero with everything.
Int intersection_pairing(const HomologyClass& x, const HomologyClass& y);

/// Action of the positive Dehn twist along (the class of) c on x. With the
/// basis orientation fixed above this is x + <c, x> c; it only depends on
/// the class of c up to sign and preserves the pairing.
HomologyClass transvect(const HomologyClass& c, const HomologyClass& x);
HomologyClass transvect_inverse(const HomologyClass& c, const HomologyClass& x);

/// Transvection as a matrix on H1 (exponent +1/-1).
IMat transvection_matrix(const HomologyClass& c, int exponent);

/// Pairing matrix J with J(i,j) = <e_i, e_j> (degenerate in the delta block).
IMat pairing_matrix(const Surface& s);

/// Drop the boundary coordinates: S_g^p -> S_g.
HomologyClass cap_boundaries(const HomologyClass& x);

/// Mod-2 reduction as a bit vector.
std::vector<int> mod2_class(const HomologyClass& x);

/****************************************************************************
 * Curve registry.
 ****************************************************************************/

struct CurveAxiom {
    // conjugator applied to `base` is isotopic to `result`; conjugator is a
    // word of signed registry curve ids, leftmost letter acting last.
    std::vector<std::pair<int, int>> conjugator;
    int base = -1;
    int result = -1;
    std::string provenance;
};

struct NamedCurve {
    std::string name;
    HomologyClass z_class;
    std::optional<std::string> pi1_word;  // word in a_i, b_i; empty = identity
    bool separating = false;              // capped integral class is zero
    bool boundary_parallel = false;
    int boundary_index = 0;               // 1-based, when boundary_parallel
    // curves the figures only pin down as twist images carry their defining
    // word (signed curve ids, leftmost acting last)
    std::vector<std::pair<int, int>> defining_word;
    int defining_base = -1;
};

class CurveRegistry {
  public:
    explicit CurveRegistry(Surface s) : surface_(s) {}

    const Surface& surface() const { return surface_; }

    int add(NamedCurve c);                      // returns curve id
    void add_alias(const std::string& name, int id);
    void register_geometric(int u, int v, int count);

    bool has(const std::string& name) const;
    int id(const std::string& name) const;      // throws on unknown name
    const NamedCurve& curve(int id) const;
    const NamedCurve& curve(const std::string& name) const { return curve(id(name)); }
    int size() const { return static_cast<int>(curves_.size()); }

    /// Registered geometric intersection number, or -1 when unknown.
    int geometric(int u, int v) const;
    bool known_disjoint(int u, int v) const { return u == v || geometric(u, v) == 0; }

    void add_axiom(CurveAxiom ax);
    const std::vector<CurveAxiom>& axioms() const { return axioms_; }

    const std::vector<NamedCurve>& all() const { return curves_; }
    const std::map<std::string, int>& names() const { return name_to_id_; }

  private:
    Surface surface_;
    std::vector<NamedCurve> curves_;
    std::map<std::string, int> name_to_id_;
    std::map<std::pair<int, int>, int> geometric_;
    std::vector<CurveAxiom> axioms_;
};

/// Build the full named-curve registry for S_g^p. Supported here:
///   - chain curves c_1..c_{2g+1} (g >= 1) and boundary curves delta_*;
///   - a, a' (g >= 2), b, b' (g >= 3);
///   - d_j, e_j for j = 4..2g+1 (g >= 2), as transvection images;
///   - for p = 2n >= 2: x_k, x'_k (k <= n), y_k, y'_k, z_k, z'_k and x''_1;
///   - for (g, p) = (3, 0): the genus-3 lantern set x, y, z, x', y', z',
///     s, s', v, w.
/// Throws std::invalid_argument for unsupported (g, p) requests through
/// registry_curve_requires (e.g. x_k with p < 2k).
std::shared_ptr<const CurveRegistry> load_alphabet(Surface s);

/// Parse a pi1 word such as "b_2 a_2^-1 b_1" and abelianize it (capped
/// closed-surface class).
HomologyClass abelianize_pi1(const Surface& s, const std::string& word);

std::string registry_to_json(const CurveRegistry& reg);

} // namespace lefkit

#endif
