// lefkit: command-line front end for the Lefschetz factorization workbench.
// Everything goes through the C API; see include/lefkit/lefkit.h.

#include "lefkit/lefkit.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { lefkit_string_free(s); }
};

struct FactGuard {
    lefkit_factorization* f = nullptr;
    ~FactGuard() { lefkit_factorization_free(f); }
};

int fail_usage(const std::string& msg)
{
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::string params_json(int g, int i, int k, int j)
{
    std::ostringstream out;
    out << "{";
    bool first = true;
    auto put = [&](const char* key, int v) {
        if (v < 0)
            return;
        out << (first ? "" : ",") << "\"" << key << "\":" << v;
        first = false;
    };
    put("g", g);
    put("i", i);
    put("k", k);
    put("j", j);
    out << "}";
    return out.str();
}

lefkit_factorization* obtain(const std::string& family, const std::string& input, int g, int i,
                             int k, int j)
{
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in)
            return nullptr;
        std::stringstream buf;
        buf << in.rdbuf();
        return lefkit_from_json(buf.str().c_str());
    }
    if (family.empty())
        return nullptr;
    return lefkit_build(family.c_str(), params_json(g, i, k, j).c_str());
}

int emit(const std::string& text, const std::string& output)
{
    if (output.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream out(output);
    if (!out) {
        std::cerr << "error: cannot write " << output << "\n";
        return 2;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lefkit - positive factorizations of Dehn twists: catalog, verification, "
                 "invariants, derivation replay"};
    app.require_subcommand(1);

    std::string family, input, output, format = "json", script, relator, compare;
    int g = -1, i = -1, k = -1, j = -1, depth = 12, at = 0;
    int g_min = -1, g_max = -1;
    bool forward = true;
    bool with_signature = true;

    auto add_params = [&](CLI::App* cmd, bool with_range = false) {
        cmd->add_option("--family", family, "catalog family name");
        cmd->add_option("--g", g, "genus");
        cmd->add_option("--i", i, "unchaining count parameter");
        cmd->add_option("--k", k, "exotic chain index");
        cmd->add_option("--j", j, "inequivalent pencil index (1 or 2)");
        cmd->add_option("--input", input, "read a factorization JSON file instead of building");
        cmd->add_option("--output", output, "write result to a file");
        cmd->add_option("--format", format, "json or table")
            ->check(CLI::IsMember({"json", "table"}));
        cmd->add_option("--depth", depth, "rewrite search bound");
        if (with_range) {
            cmd->add_option("--g-min", g_min, "first genus of the sweep");
            cmd->add_option("--g-max", g_max, "last genus of the sweep");
        }
    };

    CLI::App* c_catalog = app.add_subcommand("catalog", "list families, scripts and registries");
    std::string catalog_what = "families";
    c_catalog->add_option("what", catalog_what, "families | scripts | registry | script");
    add_params(c_catalog);
    c_catalog->add_option("--script", script, "script name for 'script'");

    CLI::App* c_build = app.add_subcommand("build", "build a catalog factorization and export it");
    add_params(c_build);

    CLI::App* c_verify = app.add_subcommand("verify", "check the boundary multi-twist identity");
    add_params(c_verify);
    c_verify->add_option("--compare", compare,
                         "letters to certify, e.g. [{\"pos\":3,\"name\":\"c_5\"}]");

    CLI::App* c_inv = app.add_subcommand("invariants", "Euler, signature, H1, b+-, spin, Kodaira");
    add_params(c_inv);
    c_inv->add_flag("--no-signature{false}", with_signature, "skip the Meyer accumulation");

    CLI::App* c_spin = app.add_subcommand("spin", "spin decision with witness form");
    add_params(c_spin);

    CLI::App* c_subst = app.add_subcommand("substitute", "monodromy substitution by a relator");
    add_params(c_subst);
    c_subst->add_option("--relator", relator, "relator spec JSON")->required();
    c_subst->add_option("--at", at, "1-based position of the subword")->required();
    c_subst->add_flag("--backward{false}", forward, "replace the relator's right side");

    CLI::App* c_replay = app.add_subcommand("replay", "replay a derivation script");
    add_params(c_replay);
    c_replay->add_option("--script", script, "script name")->required();

    CLI::App* c_check = app.add_subcommand("check", "sweep a family against the expected tables");
    add_params(c_check, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_catalog)) {
            if (catalog_what == "families") {
                StringGuard s{lefkit_families()};
                return emit(s.s ? s.s : "", output);
            }
            if (catalog_what == "scripts") {
                StringGuard s{lefkit_scripts()};
                return emit(s.s ? s.s : "", output);
            }
            if (catalog_what == "registry") {
                if (g < 0)
                    return fail_usage("catalog registry needs --g (and the boundary count via --i)");
                StringGuard s{lefkit_registry_json(g, i < 0 ? 2 : i)};
                if (!s.s)
                    return fail_usage(lefkit_last_error());
                return emit(s.s, output);
            }
            if (catalog_what == "script") {
                if (script.empty())
                    return fail_usage("catalog script needs --script");
                StringGuard s{lefkit_script_json(script.c_str(), params_json(g, i, k, j).c_str())};
                if (!s.s)
                    return fail_usage(lefkit_last_error());
                return emit(s.s, output);
            }
            if (catalog_what == "export") {
                FactGuard f{obtain(family, input, g, i, k, j)};
                if (!f.f)
                    return fail_usage(lefkit_last_error());
                StringGuard s{lefkit_to_json(f.f)};
                return emit(s.s ? s.s : "", output);
            }
            if (catalog_what == "expected") {
                if (family.empty())
                    return fail_usage("catalog expected needs --family");
                std::string ranges = "{";
                if (g >= 0)
                    ranges += "\"g_min\":" + std::to_string(g) + ",\"g_max\":" + std::to_string(g);
                ranges += "}";
                StringGuard s{lefkit_expected_json(family.c_str(), ranges.c_str())};
                if (!s.s)
                    return fail_usage(lefkit_last_error());
                return emit(s.s, output);
            }
            return fail_usage("unknown catalog item " + catalog_what);
        }

        if (app.got_subcommand(c_build)) {
            FactGuard f{obtain(family, input, g, i, k, j)};
            if (!f.f)
                return fail_usage(lefkit_last_error());
            StringGuard s{lefkit_to_json(f.f)};
            return emit(s.s ? s.s : "", output);
        }

        if (app.got_subcommand(c_verify)) {
            FactGuard f{obtain(family, input, g, i, k, j)};
            if (!f.f)
                return fail_usage(lefkit_last_error());
            StringGuard rep;
            lefkit_status st =
                lefkit_verify(f.f, compare.empty() ? nullptr : compare.c_str(), &rep.s);
            if (st == LEFKIT_USAGE_ERROR)
                return fail_usage(lefkit_last_error());
            emit(rep.s ? rep.s : "", output);
            return st == LEFKIT_OK ? 0 : 1;
        }

        if (app.got_subcommand(c_inv)) {
            FactGuard f{obtain(family, input, g, i, k, j)};
            if (!f.f)
                return fail_usage(lefkit_last_error());
            StringGuard s{lefkit_invariants(f.f, with_signature ? 1 : 0)};
            if (!s.s)
                return fail_usage(lefkit_last_error());
            return emit(s.s, output);
        }

        if (app.got_subcommand(c_spin)) {
            FactGuard f{obtain(family, input, g, i, k, j)};
            if (!f.f)
                return fail_usage(lefkit_last_error());
            StringGuard s{lefkit_spin(f.f)};
            if (!s.s)
                return fail_usage(lefkit_last_error());
            return emit(s.s, output);
        }

        if (app.got_subcommand(c_subst)) {
            FactGuard f{obtain(family, input, g, i, k, j)};
            if (!f.f)
                return fail_usage(lefkit_last_error());
            StringGuard rep;
            FactGuard out_f{lefkit_substitute(f.f, relator.c_str(), at, forward ? 1 : 0, &rep.s)};
            if (!out_f.f)
                return fail_usage(lefkit_last_error());
            if (rep.s)
                std::cerr << rep.s << "\n";
            StringGuard s{lefkit_to_json(out_f.f)};
            return emit(s.s ? s.s : "", output);
        }

        if (app.got_subcommand(c_replay)) {
            StringGuard log;
            lefkit_status st =
                lefkit_replay(script.c_str(), params_json(g, i, k, j).c_str(), depth, &log.s);
            if (st == LEFKIT_USAGE_ERROR)
                return fail_usage(lefkit_last_error());
            emit(log.s ? log.s : "", output);
            return st == LEFKIT_OK ? 0 : 1;
        }

        if (app.got_subcommand(c_check)) {
            if (family.empty())
                return fail_usage("check needs --family");
            std::ostringstream ranges;
            ranges << "{";
            bool first = true;
            auto put = [&](const char* key, int v) {
                if (v < 0)
                    return;
                ranges << (first ? "" : ",") << "\"" << key << "\":" << v;
                first = false;
            };
            put("g_min", g_min);
            put("g_max", g_max);
            put("i", i);
            put("k", k);
            put("j", j);
            ranges << "}";
            StringGuard out_s;
            lefkit_status st = lefkit_check_family(family.c_str(), ranges.str().c_str(),
                                                   format == "table" ? 1 : 0, &out_s.s);
            if (st == LEFKIT_USAGE_ERROR)
                return fail_usage(lefkit_last_error());
            emit(out_s.s ? out_s.s : "", output);
            return st == LEFKIT_OK ? 0 : 1;
        }
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    return 2;
}
