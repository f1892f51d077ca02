#include "lefkit/lefkit.h"

#include "catalog.hpp"
#include "invariants.hpp"
#include "relations.hpp"
#include "spin.hpp"
#include "surface.hpp"
#include "words.hpp"

#include <nlohmann/json.hpp>

#include <cstring>
#include <string>

using namespace lefkit;

struct lefkit_factorization {
    Factorization f;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::map<std::string, int> parse_params(const char* params_json)
{
    std::map<std::string, int> p;
    if (!params_json || !*params_json)
        return p;
    nlohmann::json j = nlohmann::json::parse(params_json);
    for (auto it = j.begin(); it != j.end(); ++it)
        p[it.key()] = it.value().get<int>();
    return p;
}

template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return decltype(fn()){};
    }
}

} // namespace

extern "C" {

const char* lefkit_version(void) { return "lefkit 1.0.0"; }

const char* lefkit_last_error(void) { return g_last_error.c_str(); }

void lefkit_string_free(char* s) { std::free(s); }

void lefkit_factorization_free(lefkit_factorization* f) { delete f; }

char* lefkit_registry_json(int genus, int boundary)
{
    return guarded([&]() -> char* {
        return dup_string(registry_to_json(*load_alphabet({genus, boundary})));
    });
}

char* lefkit_families(void)
{
    return guarded([]() -> char* {
        nlohmann::json j = catalog_families();
        return dup_string(j.dump());
    });
}

char* lefkit_scripts(void)
{
    return guarded([]() -> char* {
        nlohmann::json j = catalog_script_names();
        return dup_string(j.dump());
    });
}

lefkit_factorization* lefkit_build(const char* family, const char* params_json)
{
    return guarded([&]() -> lefkit_factorization* {
        if (!family)
            throw std::invalid_argument("build: family is required");
        return new lefkit_factorization{build_family(family, parse_params(params_json))};
    });
}

lefkit_factorization* lefkit_from_json(const char* text)
{
    return guarded([&]() -> lefkit_factorization* {
        if (!text)
            throw std::invalid_argument("from_json: text is required");
        return new lefkit_factorization{factorization_from_json(text)};
    });
}

char* lefkit_to_json(const lefkit_factorization* f)
{
    return guarded([&]() -> char* {
        if (!f)
            throw std::invalid_argument("to_json: null factorization");
        return dup_string(factorization_to_json(f->f));
    });
}

int lefkit_genus(const lefkit_factorization* f) { return f ? f->f.surface().genus : -1; }
int lefkit_boundary(const lefkit_factorization* f) { return f ? f->f.surface().boundary : -1; }
int lefkit_letter_count(const lefkit_factorization* f)
{
    return f ? static_cast<int>(f->f.letters.size()) : -1;
}

lefkit_status lefkit_verify(const lefkit_factorization* f, const char* compare_json,
                            char** report_json)
{
    try {
        if (!f)
            throw std::invalid_argument("verify: null factorization");
        VerificationReport rep = verify_boundary_multitwist(f->f);
        nlohmann::ordered_json j;
        j["pass"] = rep.pass;
        if (!rep.pass)
            j["witness"] = rep.witness;
        j["taint"] = tier_name(rep.taint);
        nlohmann::ordered_json flags = wellformedness_flags(f->f);
        j["flags"] = flags;
        if (compare_json && *compare_json) {
            nlohmann::ordered_json compare = nlohmann::ordered_json::array();
            for (const auto& item : nlohmann::json::parse(compare_json)) {
                int pos = item.at("pos").get<int>();
                std::string name = item.at("name").get<std::string>();
                EqualResult eq =
                    curve_equal(f->f.reg, f->f.letters.at(static_cast<std::size_t>(pos - 1)).curve,
                                make_expr(f->f.reg, name));
                compare.push_back({{"pos", pos}, {"name", name}, {"tier", tier_name(eq.tier)}});
            }
            j["compared"] = compare;
        }
        if (report_json)
            *report_json = dup_string(j.dump(2));
        return rep.pass ? LEFKIT_OK : LEFKIT_VERIFY_FAILED;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LEFKIT_USAGE_ERROR;
    }
}

char* lefkit_invariants(const lefkit_factorization* f, int with_signature)
{
    return guarded([&]() -> char* {
        if (!f)
            throw std::invalid_argument("invariants: null factorization");
        InvariantReport r = invariant_report(f->f, with_signature != 0);
        if (f->f.is_pencil()) {
            bool all_one = true;
            for (auto& [_, e] : f->f.target)
                all_one = all_one && e == 1;
            r.spin = all_one ? decide_spin(f->f).spin : decide_spin_sections(f->f).spin;
        }
        return dup_string(r.to_json());
    });
}

char* lefkit_spin(const lefkit_factorization* f)
{
    return guarded([&]() -> char* {
        if (!f)
            throw std::invalid_argument("spin: null factorization");
        bool all_one = true;
        for (auto& [_, e] : f->f.target)
            all_one = all_one && e == 1;
        SpinVerdict v = all_one ? decide_spin(f->f) : decide_spin_sections(f->f);
        nlohmann::ordered_json j;
        j["spin"] = v.spin;
        if (v.witness)
            j["witness"] = v.witness->to_string();
        if (!v.spin) {
            nlohmann::ordered_json cert = nlohmann::ordered_json::array();
            for (int idx : v.certificate)
                cert.push_back(v.constraints.at(static_cast<std::size_t>(idx)).label);
            j["certificate"] = cert;
        }
        return dup_string(j.dump(2));
    });
}

lefkit_factorization* lefkit_hurwitz(const lefkit_factorization* f, int k, int to_the_left)
{
    return guarded([&]() -> lefkit_factorization* {
        if (!f)
            throw std::invalid_argument("hurwitz: null factorization");
        return new lefkit_factorization{hurwitz_move(f->f, k, to_the_left != 0)};
    });
}

lefkit_factorization* lefkit_cyclic(const lefkit_factorization* f, int k)
{
    return guarded([&]() -> lefkit_factorization* {
        if (!f)
            throw std::invalid_argument("cyclic: null factorization");
        return new lefkit_factorization{cyclic_permute(f->f, k)};
    });
}

lefkit_factorization* lefkit_substitute(const lefkit_factorization* f, const char* relator_json,
                                        int pos, int forward, char** report_json)
{
    return guarded([&]() -> lefkit_factorization* {
        if (!f || !relator_json)
            throw std::invalid_argument("substitute: null argument");
        nlohmann::json spec = nlohmann::json::parse(relator_json);
        const Registry& reg = f->f.reg;
        std::string kind = spec.at("kind").get<std::string>();
        auto names = [&](const char* field) {
            std::vector<std::string> v;
            for (const auto& item : spec.at(field))
                v.push_back(item.get<std::string>());
            return v;
        };
        Relator r;
        if (kind == "chain") {
            auto b = names("boundaries");
            r = instantiate_chain(reg, names("curves"), b.at(0), b.at(1), spec.value("name", ""));
        } else if (kind == "lantern") {
            r = instantiate_lantern(reg, names("boundary"), names("interior"),
                                    spec.value("name", ""));
        } else if (kind == "braiding") {
            r = instantiate_braiding_lantern(reg, names("boundary"), names("interior"),
                                             spec.value("cap1", 0), spec.value("cap2", 0),
                                             spec.value("name", ""));
        } else if (kind == "custom") {
            std::vector<std::pair<std::string, int>> l, rr;
            for (const auto& item : spec.at("lhs"))
                l.emplace_back(item.at("name").get<std::string>(), item.value("exp", 1));
            for (const auto& item : spec.at("rhs"))
                rr.emplace_back(item.at("name").get<std::string>(), item.value("exp", 1));
            r = instantiate_custom(reg, l, rr, spec.value("name", "custom"),
                                   spec.value("provenance", ""));
        } else {
            throw std::invalid_argument("substitute: unknown relator kind " + kind);
        }
        SubstitutionResult res = r.kind == RelatorKind::BraidingLantern
                                     ? substitute_braiding(f->f, r, pos)
                                     : substitute(f->f, r, pos, forward != 0);
        if (report_json) {
            nlohmann::ordered_json j;
            j["tier"] = tier_name(res.tier);
            j["letters"] = res.letter_tiers;
            *report_json = dup_string(j.dump(2));
        }
        return new lefkit_factorization{std::move(res.factorization)};
    });
}

char* lefkit_script_json(const char* name, const char* params_json)
{
    return guarded([&]() -> char* {
        if (!name)
            throw std::invalid_argument("script: name is required");
        return dup_string(catalog_script(name, parse_params(params_json)));
    });
}

lefkit_status lefkit_replay(const char* name, const char* params_json, int depth, char** log_json)
{
    try {
        if (!name)
            throw std::invalid_argument("replay: name is required");
        ReplayResult res = replay_script(catalog_script(name, parse_params(params_json)), {},
                                         depth > 0 ? depth : 12);
        if (log_json)
            *log_json = dup_string(res.to_json());
        if (!res.pass)
            g_last_error = res.failure;
        return res.pass ? LEFKIT_OK : LEFKIT_VERIFY_FAILED;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LEFKIT_USAGE_ERROR;
    }
}

char* lefkit_expected_json(const char* family, const char* ranges_json)
{
    return guarded([&]() -> char* {
        if (!family)
            throw std::invalid_argument("expected: family is required");
        return dup_string(expected_table_json(family, parse_params(ranges_json)));
    });
}

lefkit_status lefkit_check_family(const char* family, const char* ranges_json, int as_table,
                                  char** out)
{
    try {
        if (!family)
            throw std::invalid_argument("check: family is required");
        CheckTable t = check_family(family, parse_params(ranges_json));
        if (out)
            *out = dup_string(as_table ? t.to_table() : t.to_json());
        return t.all_pass ? LEFKIT_OK : LEFKIT_VERIFY_FAILED;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LEFKIT_USAGE_ERROR;
    }
}

} // extern "C"
