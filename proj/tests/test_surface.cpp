#include "surface.hpp"
#include "words.hpp"

#include <doctest.h>

#include <random>

using namespace lefkit;

namespace {

HomologyClass basis_class(const Surface& s, int idx)
{
    HomologyClass c = zero_class(s);
    c.coeff[static_cast<std::size_t>(idx)] = 1;
    return c;
}

HomologyClass random_class(const Surface& s, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-3, 3);
    HomologyClass c = zero_class(s);
    for (auto& v : c.coeff)
        v = d(rng);
    return c;
}

} // namespace

TEST_CASE("intersection pairing on the fixed basis")
{
    Surface s{3, 2};
    CHECK(s.rank() == 7);
    HomologyClass a1 = basis_class(s, 0), b1 = basis_class(s, 1);
    CHECK(intersection_pairing(a1, b1) == 1);
    CHECK(intersection_pairing(b1, a1) == -1);

    auto reg = load_alphabet(s);
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 2; j <= 7; ++j)
            CHECK(intersection_pairing(reg->curve("c_" + std::to_string(i)).z_class,
                                       reg->curve("c_" + std::to_string(j)).z_class) == 0);
    // chain neighbours pair to +-1 and carry geometric intersection one
    for (int i = 1; i <= 6; ++i) {
        Int v = intersection_pairing(reg->curve("c_" + std::to_string(i)).z_class,
                                     reg->curve("c_" + std::to_string(i + 1)).z_class);
        CHECK(abs(v) == 1);
        CHECK(reg->geometric(reg->id("c_" + std::to_string(i)),
                             reg->id("c_" + std::to_string(i + 1))) == 1);
    }
    // boundary classes lie in the radical
    for (const NamedCurve& c : reg->all())
        if (c.boundary_parallel) {
            std::mt19937_64 rng(7);
            for (int t = 0; t < 20; ++t)
                CHECK(intersection_pairing(c.z_class, random_class(s, rng)) == 0);
        }
}

TEST_CASE("x_1 pairs trivially with c_2")
{
    auto reg = load_alphabet({3, 4});
    CHECK(intersection_pairing(reg->curve("x_1").z_class, reg->curve("c_2").z_class) == 0);
}

TEST_CASE("pairing rejects surface mismatch")
{
    HomologyClass x = zero_class({3, 2}), y = zero_class({3, 0});
    CHECK_THROWS_AS(intersection_pairing(x, y), std::invalid_argument);
}

TEST_CASE("transvection basics")
{
    Surface s{3, 2};
    auto reg = load_alphabet(s);
    const HomologyClass c1 = reg->curve("c_1").z_class;
    const HomologyClass c2 = reg->curve("c_2").z_class;
    // t_{c_1}[c_2] = [c_1] + [c_2] over Z/2
    std::vector<int> got = mod2_class(transvect(c1, c2));
    std::vector<int> want = mod2_class(c1);
    std::vector<int> m2 = mod2_class(c2);
    for (std::size_t i = 0; i < want.size(); ++i)
        want[i] ^= m2[i];
    CHECK(got == want);
    // t_c fixes c
    CHECK(transvect(c1, c1) == c1);
    // the inverse twists along d_j reproduce the mod-2 sums of Lemma 5.3
    for (int j = 4; j <= 7; ++j) {
        HomologyClass img = reg->curve("c_" + std::to_string(j)).z_class;
        for (int t = j - 1; t >= j - 3; --t)
            img = transvect_inverse(reg->curve("c_" + std::to_string(t)).z_class, img);
        std::vector<int> sum = mod2_class(reg->curve("c_" + std::to_string(j)).z_class);
        for (int t = j - 3; t <= j - 1; ++t) {
            std::vector<int> m = mod2_class(reg->curve("c_" + std::to_string(t)).z_class);
            for (std::size_t u = 0; u < sum.size(); ++u)
                sum[u] ^= m[u];
        }
        CHECK(mod2_class(img) == sum);
        CHECK(img == reg->curve("d_" + std::to_string(j)).z_class);
    }
}

TEST_CASE("transvection properties, randomized")
{
    Surface s{3, 2};
    auto reg = load_alphabet(s);
    std::mt19937_64 rng(20260809);
    std::uniform_int_distribution<int> pick(0, reg->size() - 1);
    int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const HomologyClass& c = reg->curve(pick(rng)).z_class;
        HomologyClass x = random_class(s, rng), y = random_class(s, rng);
        // pairing preservation
        CHECK(intersection_pairing(transvect(c, x), transvect(c, y)) ==
              intersection_pairing(x, y));
        // inverse
        CHECK(transvect_inverse(c, transvect(c, x)) == x);
        // mod-2 reduction commutes with the transvection
        HomologyClass tx = transvect(c, x);
        std::vector<int> lhs = mod2_class(tx);
        // reduce first, transvect mod 2 by re-lifting the bits
        HomologyClass xr = zero_class(s), cr = zero_class(s);
        std::vector<int> xm = mod2_class(x), cm = mod2_class(c);
        for (std::size_t i = 0; i < xm.size(); ++i) {
            xr.coeff[i] = xm[i];
            cr.coeff[i] = cm[i];
        }
        std::vector<int> rhs = mod2_class(transvect(cr, xr));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("capping boundaries")
{
    Surface s{3, 4};
    auto reg = load_alphabet(s);
    CHECK(cap_boundaries(reg->curve("delta_1").z_class).is_zero());
    // [x_1] = c_1 + c_3 + delta_1 mod 2 caps to [c_1] + [c_3]
    std::vector<int> got = mod2_class(cap_boundaries(reg->curve("x_1").z_class));
    std::vector<int> want = mod2_class(cap_boundaries(reg->curve("c_1").z_class));
    std::vector<int> c3 = mod2_class(cap_boundaries(reg->curve("c_3").z_class));
    for (std::size_t i = 0; i < want.size(); ++i)
        want[i] ^= c3[i];
    CHECK(got == want);
    HomologyClass a1 = basis_class(s, 0);
    CHECK(cap_boundaries(a1) == basis_class({3, 0}, 0));
}

TEST_CASE("separating flags")
{
    auto closed3 = load_alphabet({3, 0});
    CHECK(closed3->curve("s").separating);
    CHECK(closed3->curve("s'").separating);
    CHECK(closed3->curve("v").separating);
    CHECK_FALSE(closed3->curve("c_1").separating);
    CHECK_FALSE(closed3->curve("y").separating); // Figure 8's y is nonseparating
    // the braiding lantern's middle curve is separating on every surface
    auto closed4 = load_alphabet({4, 0});
    CHECK(closed4->curve("y").separating);
    CHECK(is_separating(closed4, make_expr(closed4, "y")));
    CHECK_FALSE(is_separating(closed4, make_expr(closed4, "c_1")));
}

TEST_CASE("alphabet coverage and arity errors")
{
    auto reg32 = load_alphabet({3, 2});
    for (const char* n : {"c_1", "c_7", "a", "a'", "b", "b'", "delta_1", "delta'_1", "d_4", "d_7",
                          "e_4", "e_7", "x_1", "x''_1"})
        CHECK(reg32->has(n));
    auto reg30 = load_alphabet({3, 0});
    for (const char* n : {"x", "y", "z", "x'", "y'", "z'", "s", "s'", "v", "w"})
        CHECK(reg30->has(n));
    auto reg26 = load_alphabet({2, 6});
    CHECK(reg26->has("x_1"));
    CHECK(reg26->has("x_3"));
    CHECK_FALSE(reg26->has("x_4")); // needs p >= 8
    CHECK_THROWS(reg26->id("x_4"));
}

TEST_CASE("registry mod-2 identities of the quadratic-form construction")
{
    for (int g : {3, 4, 5})
        for (int n : {1, 2, 3}) {
            auto reg = load_alphabet({g, 2 * n});
            auto bits = [&](const std::string& name) { return mod2_class(reg->curve(name).z_class); };
            auto add = [](std::vector<int> a, const std::vector<int>& b) {
                for (std::size_t i = 0; i < a.size(); ++i)
                    a[i] ^= b[i];
                return a;
            };
            // c_{2g+1} = c_1 + c_3 + ... + c_{2g-1} + delta_1 + ... + delta_n
            std::vector<int> rhs(static_cast<std::size_t>(reg->surface().rank()), 0);
            for (int j = 1; j <= 2 * g - 1; j += 2)
                rhs = add(rhs, bits("c_" + std::to_string(j)));
            for (int j = 1; j <= n; ++j)
                rhs = add(rhs, bits("delta_" + std::to_string(j)));
            CHECK(bits("c_" + std::to_string(2 * g + 1)) == rhs);
            // d_j = e_j = c_{j-3} + c_{j-2} + c_{j-1} + c_j
            for (int j = 4; j <= 2 * g + 1; ++j) {
                std::vector<int> sum(static_cast<std::size_t>(reg->surface().rank()), 0);
                for (int t = j - 3; t <= j; ++t)
                    sum = add(sum, bits("c_" + std::to_string(t)));
                CHECK(bits("d_" + std::to_string(j)) == sum);
                CHECK(bits("e_" + std::to_string(j)) == sum);
            }
            // x_i = c_1 + c_3 + delta_i and the primed variant
            for (int k = 1; k <= n; ++k) {
                std::vector<int> want = add(add(bits("c_1"), bits("c_3")),
                                            bits("delta_" + std::to_string(k)));
                CHECK(bits("x_" + std::to_string(k)) == want);
                std::vector<int> wantp = add(add(bits("c_1"), bits("c_3")),
                                             bits("delta'_" + std::to_string(k)));
                CHECK(bits("x'_" + std::to_string(k)) == wantp);
            }
            // delta'_1 = delta_1 + ... + delta_n + delta'_2 + ... + delta'_n
            std::vector<int> dsum(static_cast<std::size_t>(reg->surface().rank()), 0);
            for (int j = 1; j <= n; ++j)
                dsum = add(dsum, bits("delta_" + std::to_string(j)));
            for (int j = 2; j <= n; ++j)
                dsum = add(dsum, bits("delta'_" + std::to_string(j)));
            CHECK(bits("delta'_1") == dsum);
        }
}

TEST_CASE("pi1 words abelianize to the stored classes")
{
    for (Surface s : {Surface{3, 2}, Surface{4, 2}, Surface{3, 0}}) {
        auto reg = load_alphabet(s);
        for (const NamedCurve& c : reg->all())
            if (c.pi1_word)
                CHECK(abelianize_pi1(s, *c.pi1_word) == cap_boundaries(c.z_class));
    }
}

TEST_CASE("registry serializes")
{
    auto reg = load_alphabet({3, 2});
    std::string j = registry_to_json(*reg);
    CHECK(j.find("lefkit-registry/1") != std::string::npos);
    CHECK(j.find("\"c_7\"") != std::string::npos);
    CHECK(j.find("pi1_word") != std::string::npos);
}
