#include "catalog.hpp"
#include "invariants.hpp"

#include <doctest.h>

#include <random>

using namespace lefkit;

namespace {

IMat random_symplectic(const Registry& reg, std::mt19937_64& rng, int len)
{
    std::uniform_int_distribution<int> pick(0, reg->size() - 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    IMat m = IMat::identity(static_cast<std::size_t>(reg->surface().rank()));
    for (int t = 0; t < len; ++t)
        m = m * transvection_matrix(reg->curve(pick(rng)).z_class, sgn(rng) ? 1 : -1);
    return m;
}

} // namespace

TEST_CASE("euler characteristics")
{
    CHECK(euler_characteristic(build_chain_pencil(3)) == 46);      // 4g^2+2g+4
    CHECK(euler_characteristic(build_chain_fibration(3)) == 48);   // two blow-ups
    for (int g : {3, 4, 5})
        for (int i = 0; i <= (g % 2 ? g : g - 1); ++i)
            CHECK(euler_characteristic(build_xprime(g, i)) == 12 * (g - i));
    for (int k = 0; k <= 7; ++k)
        CHECK(euler_characteristic(build_exotic(k)) == 28 - k);
}

TEST_CASE("meyer cocycle normalizations and errors")
{
    Surface s{2, 0};
    auto reg = load_alphabet(s);
    IMat j = pairing_matrix(s);
    IMat id = IMat::identity(4);
    std::mt19937_64 rng(2);
    IMat a = random_symplectic(reg, rng, 6);
    CHECK(meyer_cocycle(id, a, j) == 0);
    // tau(A, A^-1) = 0: build the inverse as the reversed inverse letters
    IMat a_inv = j * a.transposed() * j;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            a_inv(r, c) = -a_inv(r, c);
    CHECK(a * a_inv == id);
    CHECK(meyer_cocycle(a, a_inv, j) == 0);
    IMat bad = id;
    bad(0, 0) = 2;
    CHECK_THROWS_AS(meyer_cocycle(bad, a, j), std::invalid_argument);
}

TEST_CASE("meyer cocycle identity on random symplectic triples")
{
    std::mt19937_64 rng(99);
    for (int g = 1; g <= 3; ++g) {
        Surface s{g, 0};
        auto reg = load_alphabet(s);
        IMat j = pairing_matrix(s);
        int trials = g == 3 ? 60 : 70; // 200 triples total
        for (int t = 0; t < trials; ++t) {
            IMat a = random_symplectic(reg, rng, 4);
            IMat b = random_symplectic(reg, rng, 4);
            IMat c = random_symplectic(reg, rng, 4);
            int lhs = meyer_cocycle(a, b, j) + meyer_cocycle(a * b, c, j);
            int rhs = meyer_cocycle(a, b * c, j) + meyer_cocycle(b, c, j);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("genus-1 calibration word")
{
    auto reg = load_alphabet({1, 0});
    std::vector<std::string> w;
    for (int t = 0; t < 6; ++t) {
        w.push_back("c_1");
        w.push_back("c_2");
    }
    Factorization f = make_factorization(reg, w, false);
    auto [raw, sep] = meyer_accumulation(f);
    CHECK(sep == 0);
    const SignatureCalibration& cal = signature_calibration();
    CHECK(cal.epsilon * raw == -8); // E(1) under the fixed convention
    CHECK(signature(f) == -8);
}

TEST_CASE("signatures of the catalog families")
{
    CHECK(signature(build_chain_fibration(3)) == -32);
    CHECK(signature(build_chain_pencil(3)) == -30);
    CHECK(signature(build_chain_pencil(4)) == -48); // validation, not calibration
    CHECK(signature(build_xprime(5, 2)) == -24);
    CHECK(signature(build_exotic(1)) == -19); // one separating letter
}

TEST_CASE("signature is Hurwitz invariant")
{
    Factorization f = build_xprime(3, 1);
    int want = signature(f);
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> pos(1, static_cast<int>(f.letters.size()) - 1);
    std::uniform_int_distribution<int> dir(0, 1);
    for (int t = 0; t < 50; ++t) {
        f = hurwitz_move(f, pos(rng), dir(rng) == 0);
        if (t % 10 == 0)
            CHECK(signature(f) == want);
    }
    CHECK(signature(f) == want);
    CHECK(signature(cyclic_permute(f, 7)) == want);
}

TEST_CASE("H1 of the total spaces")
{
    CHECK(h1_total_space(build_xprime(3, 1)).empty());
    CHECK(h1_total_space(build_xprime(4, 2)).empty());
    std::vector<Int> zz{0, 0};
    CHECK(h1_total_space(build_xprime(3, 3)) == zz);
    CHECK(h1_total_space(build_xprime(5, 5)) == zz);
    for (int k = 0; k <= 7; ++k)
        CHECK(h1_total_space(build_exotic(k)).empty());
}

TEST_CASE("smith normal form against the determinant-divisor oracle")
{
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 3;
        IMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = d(rng);
        std::vector<Int> snf = smith_normal_form(m);
        // oracle: d_1 = gcd of entries, d_1 d_2 = gcd of 2x2 minors,
        // d_1 d_2 d_3 = |det|
        Int g1 = 0, g2 = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                g1 = gcd(g1, m(i, j));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l)
                        if (i < j && k < l)
                            g2 = gcd(g2, m(i, k) * m(j, l) - m(i, l) * m(j, k));
        Int det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                  m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        CHECK(snf[0] == g1);
        if (g1 != 0)
            CHECK(snf[0] * snf[1] == g2);
        if (g2 != 0)
            CHECK(snf[0] * snf[1] * snf[2] == abs(det));
    }
}

TEST_CASE("integer and rational signature paths agree")
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int t = 0; t < 300; ++t) {
        std::size_t n = 1 + t % 6;
        IMat s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                s(i, j) = d(rng);
                s(j, i) = s(i, j);
            }
        RMat r = to_rat_mat(s);
        CHECK(integer_symmetric_signature(s) == symmetric_signature(std::move(r)));
    }
    // kernel dimensions agree too
    for (int t = 0; t < 100; ++t) {
        std::size_t rows = 2 + t % 3, cols = 3 + t % 4;
        IMat m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = d(rng);
        IMat k1 = integer_kernel_basis(m);
        RMat k2 = kernel_basis(to_rat_mat(m));
        CHECK(k1.cols() == k2.cols());
        // each integer basis vector really lies in the kernel
        for (std::size_t c = 0; c < k1.cols(); ++c)
            for (std::size_t i = 0; i < rows; ++i) {
                Int v = 0;
                for (std::size_t j = 0; j < cols; ++j)
                    v += m(i, j) * k1(j, c);
                CHECK(v == 0);
            }
    }
}

TEST_CASE("kodaira cases")
{
    CHECK(kodaira_dimension(5, 12, 1) == Kodaira::MinusInfinity);  // n > 2g-2
    CHECK(kodaira_dimension(5, 8, 3) == Kodaira::Zero);            // n = 2g-2, b+ != 1
    CHECK(kodaira_dimension(5, 8, 1) == Kodaira::Undetermined);
    CHECK(kodaira_dimension(5, 7, 5) == Kodaira::One);             // n = 2g-3, b+ > 3
    CHECK(kodaira_dimension(5, 7, 2) == Kodaira::Undetermined);
    CHECK(kodaira_dimension(5, 6, 9) == Kodaira::Undetermined);
    CHECK_THROWS_AS(kodaira_dimension(1, 0, 1), std::invalid_argument);
}

TEST_CASE("reducible fiber counts and unchaining deltas")
{
    for (int g : {3, 4})
        for (int i = 0; i <= g - 1; ++i) {
            CHECK(count_reducible(build_inequivalent(g, i, 1)) == 1);
            CHECK(count_reducible(build_inequivalent(g, i, 2)) == 0);
        }
    CHECK(unchain_delta(1) == std::make_pair(-10, 6));
    CHECK(unchain_delta(2) == std::make_pair(-28, 16));
    CHECK_THROWS_AS(unchain_delta(0), std::invalid_argument);

    // lantern substitutions move (l, e, sigma) by (-1, -1, +1) along the chain
    for (int k = 0; k < 7; ++k) {
        Factorization a = build_exotic(k), b = build_exotic(k + 1);
        CHECK(b.letters.size() + 1 == a.letters.size());
        CHECK(euler_characteristic(b) + 1 == euler_characteristic(a));
        CHECK(signature(b) - 1 == signature(a));
    }
}

TEST_CASE("unchaining composition identity against the chain fibration")
{
    // X_g(i) is Z_g after i 3-unchainings and one (2g-3)-unchaining
    for (int g : {3, 4})
        for (int i = 0; i <= g - 2; ++i) {
            Factorization zg = build_chain_fibration(g);
            Factorization xg = build_xprime_fibration(g, i);
            auto [de1, ds1] = unchain_delta(1);
            auto [de2, ds2] = unchain_delta(g - 2);
            CHECK(euler_characteristic(xg) ==
                  euler_characteristic(zg) + i * de1 + de2);
            if (g <= 4)
                CHECK(signature(xg) == signature(zg) + i * ds1 + ds2);
        }
}

TEST_CASE("report identities hold on catalog entries")
{
    for (const Factorization& f :
         {build_chain_pencil(3), build_xprime(3, 1), build_xprime(4, 2), build_exotic(3)}) {
        InvariantReport r = invariant_report(f);
        CHECK(r.b_plus - r.b_minus == r.signature);
        CHECK(2 - 2 * r.b1 + r.b_plus + r.b_minus == r.euler);
        CHECK(r.sign_convention == signature_calibration().epsilon);
        CHECK(r.separating_term == signature_calibration().s_sep);
    }
    // K_3 carries the homotopy K3 numbers
    InvariantReport k3 = invariant_report(build_kg(3));
    CHECK(k3.euler == 24);
    CHECK(k3.signature == -16);
    CHECK(k3.b_plus == 3);
    CHECK(k3.b_minus == 19);
    CHECK(k3.kodaira == Kodaira::Zero);
    std::string json = k3.to_json();
    CHECK(json.find("\"euler\": 24") != std::string::npos);
}
