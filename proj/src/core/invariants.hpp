#ifndef LEFKIT_INVARIANTS_HPP
#define LEFKIT_INVARIANTS_HPP

#include "words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lefkit {

/****************************************************************************
 * Topological invariants of the 4-manifold carried by a factorization:
 * Euler characteristic, signature by Meyer-cocycle accumulation, H1 of the
 * total space by Smith normal form, b1 and b+-, the Kodaira dimension cases
 * and reducible-fiber counts. Everything is exact integer arithmetic.
 ****************************************************************************/

enum class Kodaira { MinusInfinity, Zero, One, Two, Undetermined };
const char* kodaira_name(Kodaira k);

struct InvariantReport {
    int euler = 0;
    int signature = 0;
    std::vector<Int> h1_invariant_factors; // 0 entries are free factors
    int b1 = 0;
    int b_plus = 0;
    int b_minus = 0;
    bool spin = false;
    Kodaira kodaira = Kodaira::Undetermined;
    int reducible_count = 0;
    Tier taint = Tier::Syntactic;
    int sign_convention = 0;  // calibrated epsilon
    int separating_term = 0;  // calibrated s_sep
    std::string to_json() const;
};

/// e = 4 - 4g + l for a closed fibration, minus the base point count for a
/// pencil.
int euler_characteristic(const Factorization& f);

/// Meyer cocycle of two symplectic integer matrices; exact rational
/// signature of the standard form on V_{A,B}. Throws on non-symplectic
/// input. |tau| <= 2g.
int meyer_cocycle(const IMat& a, const IMat& b, const IMat& pairing);

struct SignatureCalibration {
    int epsilon = 0;  // global sign of the accumulated cocycle sum
    int s_sep = 0;    // local term per separating vanishing cycle
};

/// Build-time calibration: epsilon from sigma(Z_3) = -32, s_sep from
/// sigma(X_1) = -19 (the first exotic stage). Cached after the first call.
const SignatureCalibration& signature_calibration();

/// Signature of the total space. Pencils are evaluated through their
/// blown-up fibration: sigma(pencil) = sigma(fibration) + base points.
int signature(const Factorization& f);

/// Raw accumulated cocycle sum over a closed-surface word plus the count of
/// separating letters; exposed for the calibration path and tests.
std::pair<int, int> meyer_accumulation(const Factorization& closed);

/// Invariant factors of H1 of the total space (letters capped first).
std::vector<Int> h1_total_space(const Factorization& f);

/// Theorem cases only: -inf if n > 2g-2; 0 if n = 2g-2 and b+ != 1; 1 if
/// n = 2g-3 and b+ > 3; otherwise undetermined. n is the number of boundary
/// components of the lifted factorization. Requires g >= 2.
Kodaira kodaira_dimension(int g, int n, int b_plus);

/// Letters twisting a separating, non boundary-parallel curve.
int count_reducible(const Factorization& f);

/// Closed-form change (delta_e, delta_sigma) of a C_{2h+1} unchaining.
std::pair<int, int> unchain_delta(int h);

/// Full report; spin is filled in by the caller (spin module) when wanted.
InvariantReport invariant_report(const Factorization& f, bool with_signature = true);

} // namespace lefkit

#endif
