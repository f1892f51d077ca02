// Acceptance suite: one pass/fail line per criterion. All comparisons are
// exact integers / booleans; the timing budgets are printed alongside.

#include "catalog.hpp"
#include "invariants.hpp"
#include "relations.hpp"
#include "spin.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lefkit;

namespace {

int g_failures = 0;

double run_criterion(int number, const std::string& label, double budget_seconds,
                     const std::function<bool(std::string&)>& body)
{
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = budget_seconds <= 0 || dt <= budget_seconds;
    if (!ok || !in_budget)
        ++g_failures;
    std::printf("%s criterion %d: %s (%.2fs%s)%s%s\n", ok && in_budget ? "PASS" : "FAIL", number,
                label.c_str(), dt,
                budget_seconds > 0 ? (" / budget " + std::to_string(static_cast<int>(budget_seconds)) + "s").c_str()
                                   : "",
                detail.empty() ? "" : " -- ", detail.c_str());
    return dt;
}

bool expect(std::string& detail, bool cond, const std::string& what)
{
    if (!cond && detail.empty())
        detail = what;
    return cond;
}

std::vector<int> valid_i(int g)
{
    std::vector<int> v;
    for (int i = 0; i <= (g % 2 == 1 ? g : g - 1); ++i)
        v.push_back(i);
    return v;
}

} // namespace

int main()
{
    signature_calibration(); // fix the conventions before timing anything

    // 1. Boundary verification across the whole catalog.
    run_criterion(1, "boundary multi-twist verification (Z'_g, prop41, X'_g(i), K_g, Y^j, X_k)",
                  10.0, [](std::string& detail) {
        bool ok = true;
        for (int g = 3; g <= 7; ++g) {
            ok &= expect(detail, verify_boundary_multitwist(build_chain_pencil(g)).pass,
                         "Z'_" + std::to_string(g));
            ok &= expect(detail, verify_boundary_multitwist(build_prop41(g)).pass,
                         "prop41 g=" + std::to_string(g));
            for (int i : valid_i(g))
                ok &= expect(detail, verify_boundary_multitwist(build_xprime(g, i)).pass,
                             "X'_" + std::to_string(g) + "(" + std::to_string(i) + ")");
            ok &= expect(detail, verify_boundary_multitwist(build_kg(g)).pass,
                         "K_" + std::to_string(g));
        }
        for (int g = 3; g <= 5; ++g)
            for (int i = 0; i <= g - 1; ++i)
                for (int j : {1, 2})
                    ok &= expect(detail, verify_boundary_multitwist(build_inequivalent(g, i, j)).pass,
                                 "Y^" + std::to_string(j));
        for (int k = 0; k <= 7; ++k)
            ok &= expect(detail, verify_boundary_multitwist(build_exotic(k)).pass,
                         "X_" + std::to_string(k));
        return ok;
    });

    // 2. Derivation replays with clean braid bookkeeping.
    run_criterion(2, "derivation scripts replay (prop41, 4.2-4.5, lifting, 6.3, 6.1)", 30.0,
                  [](std::string& detail) {
        bool ok = true;
        auto replay = [&](const std::string& name, std::map<std::string, int> p,
                          int want_lanterns = -1) {
            ReplayResult res = replay_script(catalog_script(name, p), {});
            std::ostringstream tag;
            tag << name;
            for (auto& [k, v] : p)
                tag << " " << k << "=" << v;
            if (!expect(detail, res.pass, tag.str() + ": " + res.failure))
                return;
            for (const ReplayStepLog& s : res.log)
                if (s.braid_only && static_cast<int>(s.tier) < static_cast<int>(Tier::Rewritten))
                    expect(detail, false, tag.str() + ": braid step at " + tier_name(s.tier));
            expect(detail, res.taint == Tier::Syntactic, tag.str() + " tainted");
            if (want_lanterns >= 0)
                expect(detail, res.lantern_substitutions == want_lanterns,
                       tag.str() + ": lantern count");
        };
        for (int g = 3; g <= 5; ++g) {
            replay("prop41", {{"g", g}});
            replay("lem1-1", {{"g", g}});
            replay("lem1-2", {{"g", g}});
            replay("lem1-3", {{"g", g}});
            for (int i : valid_i(g)) {
                replay("lem2", {{"g", g}, {"i", i}});
                replay("thm43", {{"g", g}, {"i", i}});
            }
            for (int i = 0; i <= g - 1; ++i)
                replay("lemA", {{"g", g}, {"i", i}});
        }
        replay("sevenLS", {}, 7);
        ok = detail.empty();
        return ok;
    });

    // 3. Invariant tables.
    run_criterion(3, "invariant tables: e, sigma for X'_g(i), Z'_g, exotic chain", 60.0,
                  [](std::string& detail) {
        for (int g = 3; g <= 6; ++g)
            for (int i : valid_i(g)) {
                Factorization f = build_xprime(g, i);
                expect(detail, euler_characteristic(f) == 12 * (g - i),
                       "e(X'_" + std::to_string(g) + "(" + std::to_string(i) + "))");
                expect(detail, signature(f) == -8 * (g - i),
                       "sigma(X'_" + std::to_string(g) + "(" + std::to_string(i) + "))");
            }
        for (int g = 3; g <= 4; ++g) {
            expect(detail, euler_characteristic(build_chain_pencil(g)) == 4 * g * g + 2 * g + 4,
                   "e(Z'_g)");
            expect(detail, signature(build_chain_pencil(g)) == -2 * (g + 1) * (g + 1) + 2,
                   "sigma(Z'_" + std::to_string(g) + ")");
        }
        for (int k = 0; k <= 7; ++k) {
            expect(detail, euler_characteristic(build_exotic(k)) == 28 - k, "e(X_k)");
            expect(detail, signature(build_exotic(k)) == -20 + k, "sigma(X_k)");
        }
        return detail.empty();
    });

    // 4. H1 of the total spaces.
    run_criterion(4, "H1: trivial for X_g(i), i <= g-1, and X_k; Z+Z for X_g(g)", 0, [](std::string& detail) {
        for (int g = 3; g <= 6; ++g)
            for (int i : valid_i(g))
                if (i <= g - 1)
                    expect(detail, h1_total_space(build_xprime(g, i)).empty(),
                           "H1(X_" + std::to_string(g) + "(" + std::to_string(i) + "))");
        for (int k = 0; k <= 7; ++k)
            expect(detail, h1_total_space(build_exotic(k)).empty(), "H1(X_k)");
        std::vector<Int> zz{0, 0};
        for (int g : {3, 5})
            expect(detail, h1_total_space(build_xprime(g, g)) == zz,
                   "H1(X_" + std::to_string(g) + "(g))");
        return detail.empty();
    });

    // 5. Spin verdicts.
    run_criterion(5, "spin: X'_g(i) iff g+i even, Z'_g iff g even, Rokhlin-consistent", 0,
                  [](std::string& detail) {
        for (int g = 3; g <= 6; ++g) {
            for (int i : valid_i(g)) {
                Factorization f = build_xprime(g, i);
                bool spin = decide_spin(f).spin;
                expect(detail, spin == ((g + i) % 2 == 0),
                       "spin(X'_" + std::to_string(g) + "(" + std::to_string(i) + "))");
                if (spin)
                    expect(detail, signature(f) % 16 == 0, "Rokhlin for X'_g(i)");
            }
            Factorization z = build_chain_pencil(g);
            bool spin = decide_spin(z).spin;
            expect(detail, spin == (g % 2 == 0), "spin(Z'_" + std::to_string(g) + ")");
            if (spin && g <= 4)
                expect(detail, signature(z) % 16 == 0, "Rokhlin for Z'_g");
        }
        return detail.empty();
    });

    // 6. The quadratic-form solver against the explicit construction.
    run_criterion(6, "quadratic form exists iff g+n odd; brute-force oracle agreement", 0,
                  [](std::string& detail) {
        for (int g = 3; g <= 6; ++g)
            for (int n = 1; n <= 3; ++n) {
                auto reg = load_alphabet({g, 2 * n});
                std::vector<SpinConstraint> cs;
                auto add = [&](const std::string& name) {
                    cs.push_back({mod2_class(reg->curve(name).z_class), 1, name});
                };
                for (int j = 1; j <= 2 * g + 1; ++j)
                    add("c_" + std::to_string(j));
                for (int j = 4; j <= 2 * g + 1; ++j) {
                    add("d_" + std::to_string(j));
                    add("e_" + std::to_string(j));
                }
                for (int k = 1; k <= n; ++k) {
                    add("x_" + std::to_string(k));
                    add("x'_" + std::to_string(k));
                }
                for (int k = 1; k <= n; ++k) {
                    add("delta_" + std::to_string(k));
                    add("delta'_" + std::to_string(k));
                }
                SolveOutcome out = solve_constraints(reg->surface(), cs);
                expect(detail, out.form.has_value() == ((g + n) % 2 == 1),
                       "solvability g=" + std::to_string(g) + " n=" + std::to_string(n));
                if (out.form)
                    for (const SpinConstraint& c : cs)
                        expect(detail, out.form->evaluate(c.mod2_class) == c.value,
                               "witness violates " + c.label);
            }
        // brute-force agreement on random systems of rank <= 10
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> bit(0, 1);
        for (Surface s : {Surface{3, 2}, Surface{4, 2}, Surface{3, 4}}) {
            if (s.rank() > 10)
                continue;
            for (int t = 0; t < 40; ++t) {
                std::vector<SpinConstraint> cs;
                for (int c = 0; c < 6; ++c) {
                    std::vector<int> cls(static_cast<std::size_t>(s.rank()), 0);
                    for (auto& b : cls)
                        b = bit(rng);
                    cs.push_back({cls, bit(rng), "r"});
                }
                SolveOutcome out = solve_constraints(s, cs);
                auto all = enumerate_forms(s, cs);
                expect(detail, out.form.has_value() == !all.empty(), "oracle disagreement");
                if (out.form) {
                    bool found = false;
                    for (const QuadraticForm& q : all)
                        found = found || q.basis_values == out.form->basis_values;
                    expect(detail, found, "witness not in the enumerated set");
                }
            }
        }
        return detail.empty();
    });

    // 7. Kodaira dimension cases.
    run_criterion(7, "Kodaira: computed -inf / 0 cases; stored paper values for kappa = 1", 0,
                  [](std::string& detail) {
        for (int g = 3; g <= 6; ++g)
            for (int i : valid_i(g)) {
                InvariantReport r = invariant_report(build_xprime(g, i));
                if (i >= g - 1)
                    expect(detail, r.kodaira == Kodaira::MinusInfinity,
                           "kappa(X'_" + std::to_string(g) + "(" + std::to_string(i) + "))");
                else if (i == g - 2)
                    expect(detail, r.kodaira == Kodaira::Zero, "kappa at i = g-2");
                else if (i == g - 3 || (g - i) % 2 == 0) {
                    // outside Theorem 2.3's cases the operation must not
                    // guess; the catalog's stored value is kappa = 1
                    expect(detail, r.kodaira == Kodaira::Undetermined,
                           "kappa computed outside the theorem cases");
                    auto recs = expected_records("xprime", {{"g", g}, {"i", i}});
                    bool stored_one = false;
                    for (const ExpectedField& f : recs.front().fields)
                        stored_one = stored_one || (f.name == "kodaira" && f.value == 1);
                    expect(detail, stored_one, "stored kappa=1 row missing");
                }
            }
        return detail.empty();
    });

    // 8. Reducible fiber counts.
    run_criterion(8, "reducible fibers: Y^1 has one, Y^2 has none", 0, [](std::string& detail) {
        for (int g = 3; g <= 5; ++g)
            for (int i = 0; i <= g - 1; ++i) {
                expect(detail, count_reducible(build_inequivalent(g, i, 1)) == 1,
                       "Y^1_" + std::to_string(g) + "(" + std::to_string(i) + ")");
                expect(detail, count_reducible(build_inequivalent(g, i, 2)) == 0,
                       "Y^2_" + std::to_string(g) + "(" + std::to_string(i) + ")");
            }
        return detail.empty();
    });

    // 9. Property suites.
    run_criterion(9, "property suites: transvection, cocycle identity, Hurwitz, extension law", 0,
                  [](std::string& detail) {
        std::mt19937_64 rng(1234);
        // transvection pairing preservation, 10^4 random cases
        {
            Surface s{3, 2};
            auto reg = load_alphabet(s);
            std::uniform_int_distribution<int> pick(0, reg->size() - 1);
            std::uniform_int_distribution<int> d(-3, 3);
            for (int t = 0; t < 10000; ++t) {
                HomologyClass x = zero_class(s), y = zero_class(s);
                for (auto& v : x.coeff)
                    v = d(rng);
                for (auto& v : y.coeff)
                    v = d(rng);
                const HomologyClass& c = reg->curve(pick(rng)).z_class;
                if (intersection_pairing(transvect(c, x), transvect(c, y)) !=
                    intersection_pairing(x, y)) {
                    expect(detail, false, "pairing preservation");
                    break;
                }
            }
        }
        // Meyer cocycle identity, 200 random symplectic triples with g <= 3
        {
            int done = 0;
            for (int g = 1; g <= 3 && detail.empty(); ++g) {
                Surface s{g, 0};
                auto reg = load_alphabet(s);
                IMat j = pairing_matrix(s);
                std::uniform_int_distribution<int> pick(0, reg->size() - 1);
                std::uniform_int_distribution<int> sgn(0, 1);
                auto rnd = [&]() {
                    IMat m = IMat::identity(static_cast<std::size_t>(s.rank()));
                    for (int t = 0; t < 4; ++t)
                        m = m * transvection_matrix(reg->curve(pick(rng)).z_class,
                                                    sgn(rng) ? 1 : -1);
                    return m;
                };
                for (int t = 0; t < 67 && detail.empty(); ++t) {
                    IMat a = rnd(), b = rnd(), c = rnd();
                    if (meyer_cocycle(a, b, j) + meyer_cocycle(a * b, c, j) !=
                        meyer_cocycle(a, b * c, j) + meyer_cocycle(b, c, j))
                        expect(detail, false, "cocycle identity");
                    ++done;
                }
            }
            expect(detail, done >= 200 || !detail.empty(), "triple count");
        }
        // Hurwitz invariance of the action and signature, 50 random moves
        {
            Factorization f = build_xprime(3, 1);
            IMat action = homology_action(f);
            int sigma = signature(f);
            std::uniform_int_distribution<int> pos(1, static_cast<int>(f.letters.size()) - 1);
            std::uniform_int_distribution<int> dir(0, 1);
            for (int t = 0; t < 50; ++t)
                f = hurwitz_move(f, pos(rng), dir(rng) == 0);
            expect(detail, homology_action(f) == action, "Hurwitz action invariance");
            expect(detail, signature(f) == sigma, "Hurwitz signature invariance");
        }
        // quadratic extension law, exhaustive at rank <= 8
        {
            Surface s{4, 0};
            const int n = s.rank();
            for (std::uint64_t fv = 0; fv < 256 && detail.empty(); fv += 37) {
                QuadraticForm q{s, {}};
                for (int i = 0; i < n; ++i)
                    q.basis_values.push_back(static_cast<int>(fv >> i & 1));
                for (std::uint64_t xv = 0; xv < 256 && detail.empty(); ++xv)
                    for (std::uint64_t yv = 0; yv < 256; ++yv) {
                        HomologyClass x = zero_class(s), y = zero_class(s), xy = zero_class(s);
                        for (int i = 0; i < n; ++i) {
                            x.coeff[static_cast<std::size_t>(i)] = static_cast<int>(xv >> i & 1);
                            y.coeff[static_cast<std::size_t>(i)] = static_cast<int>(yv >> i & 1);
                            xy.coeff[static_cast<std::size_t>(i)] =
                                static_cast<int>((xv ^ yv) >> i & 1);
                        }
                        int want = q.evaluate(x) ^ q.evaluate(y) ^
                                   static_cast<int>(intersection_pairing(x, y) % 2 != 0);
                        if (q.evaluate(xy) != want) {
                            expect(detail, false, "extension law");
                            break;
                        }
                    }
            }
        }
        return detail.empty();
    });

    std::printf("%s\n", g_failures == 0 ? "acceptance: all criteria passed"
                                        : "acceptance: FAILURES PRESENT");
    return g_failures == 0 ? 0 : 1;
}
