#ifndef LEFKIT_SPIN_HPP
#define LEFKIT_SPIN_HPP

#include "words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lefkit {

/****************************************************************************
 * GF(2) quadratic forms on H1(S_g^p; Z/2) with respect to the intersection
 * pairing: q(x+y) = q(x) + q(y) + <x,y>. A form is its basis-value vector;
 * evaluation uses the polarization expansion.
 ****************************************************************************/

struct QuadraticForm {
    Surface surface;
    std::vector<int> basis_values; // length rank, entries 0/1

    int evaluate(const std::vector<int>& mod2) const; // class as bit vector
    int evaluate(const HomologyClass& x) const;
    std::string to_string() const; // bit string over the named basis
};

struct SpinConstraint {
    std::vector<int> mod2_class;
    int value = 0; // required q(class)
    std::string label;
};

struct SolveOutcome {
    std::optional<QuadraticForm> form;
    std::vector<int> inconsistent; // indices of constraints summing to 0 = 1
};

/// Solve q(c_i) = eps_i as an affine GF(2) system in the basis values;
/// free variables are set to zero, so the witness is deterministic.
SolveOutcome solve_constraints(const Surface& s, const std::vector<SpinConstraint>& constraints);

struct SpinVerdict {
    bool spin = false;
    std::optional<QuadraticForm> witness;
    std::vector<int> certificate; // inconsistent combination when not spin
    std::vector<SpinConstraint> constraints;
};

/// Spin criterion for pencils: a quadratic form with q = 1 on every
/// vanishing cycle and on the boundary classes. ("some j" and "all j"
/// coincide for forms satisfying the vanishing-cycle condition.)
SpinVerdict decide_spin(const Factorization& f);

/// Section-decorated version: q(delta_j) = a_j mod 2 with a_j the target
/// exponents (sections of self-intersection -a_j).
SpinVerdict decide_spin_sections(const Factorization& f);

/// All forms satisfying the constraints, by brute force (rank <= 20);
/// test oracle for the solver.
std::vector<QuadraticForm> enumerate_forms(const Surface& s,
                                           const std::vector<SpinConstraint>& constraints);

} // namespace lefkit

#endif
