#ifndef LEFKIT_CATALOG_HPP
#define LEFKIT_CATALOG_HPP

#include "invariants.hpp"
#include "relations.hpp"
#include "spin.hpp"
#include "words.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lefkit {

/****************************************************************************
 * Builders for the factorization families and the expected-value tables
 * driving the acceptance checks. Words are generated from the displayed
 * formulas; the braided and lantern families replay their derivation
 * scripts.
 ****************************************************************************/

/// Z'_g: the chain pencil (t_{c_1}...t_{c_{2g+1}})^{2g+2} = t_{delta_1}t_{delta'_1}.
Factorization build_chain_pencil(int g);
/// Z_g: its blow-up, the closed hyperelliptic fibration.
Factorization build_chain_fibration(int g);

/// The Hurwitz-equivalent factorization of Proposition 4.1 (direct word).
Factorization build_prop41(int g);

/// Lemma 4.5's unchained factorization on the twice-holed surface.
Factorization build_lem45(int g, int i);

/// X'_g(i): the lifted pencil on S_g^{2(i+1)}; 0 <= i <= g for odd g,
/// 0 <= i <= g-1 for even g.
Factorization build_xprime(int g, int i);
/// X_g(i): all base points blown up (closed fibration).
Factorization build_xprime_fibration(int g, int i);
/// K_g = X'_g(g-2), the Calabi-Yau homotopy K3 pencil.
Factorization build_kg(int g);

/// Section-free fiber-sum-indecomposable fibrations (g >= 4).
Factorization build_stipsicz(int g);

/// The exotic chain X_k, k = 0..7 (genus-3 fibrations).
Factorization build_exotic(int k);

/// Y^j_g(i), j = 1, 2: the inequivalent pencil pair.
Factorization build_inequivalent(int g, int i, int j);

/// Unified entry: family in {chain, chain-fibration, prop41, lem45, xprime,
/// xprime-fibration, kg, stipsicz, exotic, inequivalent}.
Factorization build_family(const std::string& family, const std::map<std::string, int>& params);

/// Full report including the spin verdict (pencils) for a built family.
InvariantReport full_report(const Factorization& f);

/****************************************************************************
 * Expected values (with citations) and the acceptance driver.
 ****************************************************************************/

struct ExpectedField {
    std::string name;
    long long value = 0;
    std::string citation;
};

struct ExpectedRecord {
    std::string family;
    std::map<std::string, int> params;
    std::vector<ExpectedField> fields;
};

std::vector<ExpectedRecord> expected_records(const std::string& family,
                                             const std::map<std::string, int>& params);

/// The expected-value table over a parameter range, as JSON with citations.
std::string expected_table_json(const std::string& family, std::map<std::string, int> ranges = {});

struct CheckRow {
    std::string family;
    std::map<std::string, int> params;
    std::string field;
    std::string expected;
    std::string computed;
    bool pass = false;
    std::string citation;
};

struct CheckTable {
    std::vector<CheckRow> rows;
    bool all_pass = true;
    std::string to_json() const;
    std::string to_table() const;
};

/// Run one family over a parameter range (defaults are the desk-scale
/// ranges). Recognized range keys: g_min/g_max, i, k, j. Parallelized over
/// tuples, capped by LEFKIT_THREADS.
CheckTable check_family(const std::string& family, std::map<std::string, int> ranges = {});

std::vector<std::string> catalog_families();

} // namespace lefkit

#endif
