#include "lefkit/lefkit.h"

#include <doctest.h>

#include <cstring>
#include <string>

namespace {

struct Str {
    char* s = nullptr;
    ~Str() { lefkit_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

struct Fact {
    lefkit_factorization* f = nullptr;
    ~Fact() { lefkit_factorization_free(f); }
};

} // namespace

TEST_CASE("version and registry")
{
    CHECK(std::string(lefkit_version()).find("lefkit") == 0);
    Str reg{lefkit_registry_json(3, 2)};
    REQUIRE(reg.s);
    CHECK(reg.str().find("\"c_7\"") != std::string::npos);
    CHECK(lefkit_registry_json(-1, 0) == nullptr);
    CHECK(std::string(lefkit_last_error()).find("bad surface") != std::string::npos);
}

TEST_CASE("build, verify, export, import")
{
    Fact f{lefkit_build("xprime", "{\"g\":3,\"i\":1}")};
    REQUIRE(f.f);
    CHECK(lefkit_genus(f.f) == 3);
    CHECK(lefkit_boundary(f.f) == 4);
    CHECK(lefkit_letter_count(f.f) == 36);

    Str rep;
    CHECK(lefkit_verify(f.f, nullptr, &rep.s) == LEFKIT_OK);
    CHECK(rep.str().find("\"pass\": true") != std::string::npos);

    Str json{lefkit_to_json(f.f)};
    REQUIRE(json.s);
    Fact back{lefkit_from_json(json.s)};
    REQUIRE(back.f);
    Str json2{lefkit_to_json(back.f)};
    CHECK(json.str() == json2.str()); // round trip is stable

    Str cmp;
    CHECK(lefkit_verify(f.f, "[{\"pos\":5,\"name\":\"c_1\"}]", &cmp.s) == LEFKIT_OK);
    CHECK(cmp.str().find("Syntactic") != std::string::npos);

    CHECK(lefkit_build("nonsense", "{}") == nullptr);
    CHECK(std::string(lefkit_last_error()).find("unknown family") != std::string::npos);
}

TEST_CASE("invariants and spin payloads")
{
    Fact f{lefkit_build("kg", "{\"g\":3}")};
    REQUIRE(f.f);
    Str inv{lefkit_invariants(f.f, 1)};
    REQUIRE(inv.s);
    CHECK(inv.str().find("\"euler\": 24") != std::string::npos);
    CHECK(inv.str().find("\"signature\": -16") != std::string::npos);
    CHECK(inv.str().find("\"spin\": true") != std::string::npos);
    Str spin{lefkit_spin(f.f)};
    REQUIRE(spin.s);
    CHECK(spin.str().find("\"spin\": true") != std::string::npos);
    CHECK(spin.str().find("witness") != std::string::npos);

    Fact notspin{lefkit_build("xprime", "{\"g\":3,\"i\":0}")};
    Str spin2{lefkit_spin(notspin.f)};
    CHECK(spin2.str().find("\"spin\": false") != std::string::npos);
    CHECK(spin2.str().find("certificate") != std::string::npos);
}

TEST_CASE("moves and substitution through the C surface")
{
    Fact f{lefkit_build("prop41", "{\"g\":4}")};
    REQUIRE(f.f);
    Fact moved{lefkit_hurwitz(f.f, 1, 1)};
    REQUIRE(moved.f);
    Fact rot{lefkit_cyclic(f.f, 3)};
    REQUIRE(rot.f);

    const char* a3 =
        "{\"kind\":\"chain\",\"curves\":[\"c_1\",\"c_2\",\"c_3\"],"
        "\"boundaries\":[\"a\",\"a'\"],\"name\":\"A_3\"}";
    Str rep;
    Fact sub{lefkit_substitute(f.f, a3, 1, 1, &rep.s)};
    REQUIRE(sub.f);
    CHECK(lefkit_letter_count(sub.f) == lefkit_letter_count(f.f) - 10);
    CHECK(rep.str().find("Syntactic") != std::string::npos);
    CHECK(lefkit_substitute(f.f, a3, 2, 1, nullptr) == nullptr);
}

TEST_CASE("scripts and family checks")
{
    Str src{lefkit_script_json("sevenLS", "{}")};
    REQUIRE(src.s);
    CHECK(src.str().find("\"mode\":\"free\"") != std::string::npos);
    Str log;
    CHECK(lefkit_replay("sevenLS", "{}", 0, &log.s) == LEFKIT_OK);
    CHECK(log.str().find("\"lantern_substitutions\": 7") != std::string::npos);
    CHECK(lefkit_replay("no-such-script", "{}", 0, nullptr) == LEFKIT_USAGE_ERROR);

    Str table;
    CHECK(lefkit_check_family("exotic", "{}", 1, &table.s) == LEFKIT_OK);
    CHECK(table.str().find("all checks passed") != std::string::npos);
}
