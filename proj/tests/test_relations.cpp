#include "catalog.hpp"
#include "relations.hpp"

#include <doctest.h>

using namespace lefkit;

TEST_CASE("chain relator instances")
{
    auto reg = load_alphabet({4, 2});
    Relator a3 = instantiate_chain(reg, {"c_1", "c_2", "c_3"}, "a", "a'", "A_3");
    CHECK(a3.lhs.size() == 12);
    CHECK(a3.rhs.size() == 2);
    CHECK(a3.chain_h == 1);
    Relator a5 = instantiate_chain(reg, {"c_5", "c_6", "c_7", "c_8", "c_9"}, "b", "b'", "A_5");
    CHECK(a5.lhs.size() == 30);
    Relator gamma = instantiate_chain(
        reg, {"c_1", "c_2", "c_3", "c_4", "c_5", "c_6", "c_7", "c_8", "c_9"}, "delta_1",
        "delta'_1", "Gamma");
    CHECK(gamma.lhs.size() == 90);
    // the intersection pattern is enforced
    CHECK_THROWS_AS(instantiate_chain(reg, {"c_1", "c_2", "c_4"}, "a", "a'"),
                    std::invalid_argument);
}

TEST_CASE("lantern relator instances and the abelianized identity")
{
    auto reg = load_alphabet({3, 6});
    Relator lift = instantiate_lantern(reg, {"z_3", "a", "y_1", "delta_2"},
                                       {"z_2", "y_2", "x_2"}, "lift");
    CHECK(lift.lhs.size() == 4);
    CHECK(lift.rhs.size() == 3);

    auto reg3 = load_alphabet({3, 0});
    Relator l2 = instantiate_lantern(reg3, {"c_7", "c_3", "c_5", "c_1"}, {"a", "y", "z"}, "L_2");
    // [x]+[y]+[z] = [d_1]+[d_2]+[d_3]+[d_4] mod 2
    std::vector<int> lhs(static_cast<std::size_t>(reg3->surface().rank()), 0);
    std::vector<int> rhs = lhs;
    for (const TwistLetter& l : l2.lhs) {
        auto m = mod2_class(expr_class(reg3, l.curve));
        for (std::size_t t = 0; t < lhs.size(); ++t)
            lhs[t] ^= m[t];
    }
    for (const TwistLetter& l : l2.rhs) {
        auto m = mod2_class(expr_class(reg3, l.curve));
        for (std::size_t t = 0; t < rhs.size(); ++t)
            rhs[t] ^= m[t];
    }
    CHECK(lhs == rhs);

    // a fake configuration is rejected on incidence
    CHECK_THROWS_AS(instantiate_lantern(reg3, {"c_1", "c_2", "c_3", "c_5"}, {"a", "y", "z"}),
                    std::invalid_argument);
}

TEST_CASE("substitution: forward, backward, diagnostics")
{
    Factorization f = build_prop41(4);
    auto reg = f.reg;
    Relator a3 = instantiate_chain(reg, {"c_1", "c_2", "c_3"}, "a", "a'", "A_3");
    std::size_t before = f.letters.size();
    SubstitutionResult res = substitute(f, a3, 1, true);
    CHECK(res.factorization.letters.size() == before - 10);
    CHECK(res.tier == Tier::Syntactic);
    CHECK(homology_action(res.factorization) == homology_action(f));
    // substituting back restores the original letter-for-letter
    SubstitutionResult back = substitute(res.factorization, a3, 1, false);
    CHECK(back.factorization.letters == f.letters);
    // a mismatched site reports per-letter diagnostics
    CHECK_THROWS_WITH_AS(substitute(f, a3, 2, true),
                         doctest::Contains("matches nothing"), std::invalid_argument);
}

TEST_CASE("transport of relators")
{
    auto reg = load_alphabet({4, 2});
    Relator a3 = instantiate_chain(reg, {"c_1", "c_2", "c_3"}, "a", "a'", "A_3");
    Relator same = transport_relator(reg, a3, {});
    CHECK(same.lhs == a3.lhs);
    CHECK(same.rhs == a3.rhs);
    // conjugating by a disjoint twist normalizes away
    Relator disj = transport_relator(reg, a3, {{reg->id("c_5"), 1}});
    CHECK(disj.lhs == a3.lhs);
    CHECK(disj.rhs == a3.rhs);
    // the braided lantern transported by (t_{d_4} t_{d_5})^{-1} carries
    // x'_1 to x''_1
    auto reg34 = load_alphabet({3, 4});
    Relator y1 = instantiate_braiding_lantern(reg34, {"c_1", "c_1", "x_1", "x'_1"},
                                              {"x", "y", "z"}, 1, 3, "BL");
    Relator moved = transport_relator(
        reg34, y1, {{reg34->id("d_5"), -1}, {reg34->id("d_4"), -1}});
    EqualResult eq = curve_equal(reg34, moved.lhs[3].curve, make_expr(reg34, "x''_1"));
    CHECK(static_cast<int>(eq.tier) >= static_cast<int>(Tier::Rewritten));
}

TEST_CASE("script expression language")
{
    std::map<std::string, int> env{{"g", 4}, {"i", 1}, {"k", 2}};
    CHECK(eval_expr("4*(g-i)+2", env) == 14);
    CHECK(eval_expr("(2*g+1)*(2*g+2)", env) == 90);
    CHECK(eval_expr("-k+7", env) == 5);
    CHECK(eval_expr("(g-1)/3", env) == 1);
    CHECK_THROWS(eval_expr("(g-2)/3", env)); // non-exact division
    CHECK_THROWS(eval_expr("q+1", env));
}

TEST_CASE("derivation scripts replay and are deterministic")
{
    for (const char* name : {"lem1-1", "lem1-2", "lem1-3", "prop41"}) {
        ReplayResult r1 = replay_script(catalog_script(name, {{"g", 3}}));
        CHECK_MESSAGE(r1.pass, name, ": ", r1.failure);
        ReplayResult r2 = replay_script(catalog_script(name, {{"g", 3}}));
        CHECK(r1.to_json() == r2.to_json());
        CHECK(r1.taint == Tier::Syntactic);
    }
    ReplayResult lem2 = replay_script(catalog_script("lem2", {{"g", 3}, {"i", 2}}));
    CHECK(lem2.pass);
    CHECK(lem2.chain_substitutions == 3); // two A_3 and one A_{2g-3}
    ReplayResult seven = replay_script(catalog_script("sevenLS", {}));
    CHECK(seven.pass);
    CHECK(seven.lantern_substitutions == 7);
    for (const ReplayStepLog& s : seven.log)
        if (s.braid_only)
            CHECK(static_cast<int>(s.tier) >= static_cast<int>(Tier::Rewritten));
}

TEST_CASE("the lifting script certifies the boundary multi-twist target")
{
    ReplayResult res = replay_script(catalog_script("thm43", {{"g", 4}, {"i", 2}}));
    REQUIRE_MESSAGE(res.pass, res.failure);
    const Factorization& f = res.final_factorization;
    CHECK(f.is_pencil());
    CHECK(f.surface().boundary == 6);
    CHECK(verify_boundary_multitwist(f).pass);
    // same word as the direct builder
    CHECK(factorization_to_json(f) == factorization_to_json(build_xprime(4, 2)));
}

TEST_CASE("replay surfaces step failures with the step index")
{
    // sabotage: wrong expected letter
    std::string script = catalog_script("lem1-3", {{"g", 3}});
    auto pos = script.find("c_3");
    script.replace(pos, 3, "c_5");
    ReplayResult res = replay_script(script);
    CHECK_FALSE(res.pass);
    CHECK(res.step_index >= 0);
    CHECK(!res.failure.empty());
}
