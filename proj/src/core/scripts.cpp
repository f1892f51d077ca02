#include "relations.hpp"

#include <nlohmann/json.hpp>

namespace lefkit {

/****************************************************************************
 * Writers for the catalog derivation scripts, one per paper lemma. Scripts
 * are parameterized JSON: positions and counts are affine expressions in the
 * parameters, loops mirror the inductions. The replay engine re-verifies
 * every elementary move, so the schedules below carry expect/certify guards
 * at each curve identification.
 *
 * Move vocabulary (see relations.cpp):
 *   pass   - the moved letter is conjugated, passed letters stay;
 *   carry  - the moved letter stays, passed letters are conjugated
 *            (and normalize cleans them when disjointness is registered);
 *   swap   - validated commutation of two adjacent letters;
 *   sort   - a schedule of validated swaps to a target arrangement;
 *   interleave - the runs-to-blocks shuffle of disjoint chain segments.
 ****************************************************************************/

namespace {

using json = nlohmann::json;

json L(const std::string& name, int times = 1, int exp = 1)
{
    json j;
    j["name"] = name;
    if (times != 1)
        j["times"] = times;
    if (exp != 1)
        j["exp"] = exp;
    return j;
}

json LT(const std::string& name, const std::string& times)
{
    json j;
    j["name"] = name;
    j["times"] = times;
    return j;
}

json loop(const std::string& var, const json& from, const json& to, json body, int step = 0)
{
    json j;
    j["loop"] = {{"var", var}, {"from", from}, {"to", to}, {"body", std::move(body)}};
    if (step != 0)
        j["loop"]["step"] = step;
    return j;
}

json rep(const std::string& var, const json& from, const json& to, json body, int step = 0)
{
    json j;
    j["op"] = "repeat";
    j["var"] = var;
    j["from"] = from;
    j["to"] = to;
    j["body"] = std::move(body);
    if (step != 0)
        j["step"] = step;
    return j;
}

json pass(const json& pos, const json& count, const char* dir, const char* expect = nullptr,
          const char* certify = nullptr)
{
    json j;
    j["op"] = "pass";
    j["pos"] = pos;
    j["count"] = count;
    j["dir"] = dir;
    if (expect)
        j["expect"] = expect;
    if (certify)
        j["certify"] = certify;
    return j;
}

json carry(const json& pos, const json& count, const char* dir, const char* side = nullptr)
{
    json j;
    j["op"] = "carry";
    j["pos"] = pos;
    j["count"] = count;
    j["dir"] = dir;
    if (side)
        j["side"] = side;
    return j;
}

json swap_at(const json& pos)
{
    return json{{"op", "swap"}, {"pos", pos}};
}

json sort_range(const json& from, const json& to, json order)
{
    return json{{"op", "sort"}, {"from", from}, {"to", to}, {"order", std::move(order)}};
}

json subst(const json& pos, json relator, const char* dir = "forward")
{
    return json{{"op", "subst"}, {"pos", pos}, {"relator", std::move(relator)}, {"dir", dir}};
}

json checkpoint(const std::string& label)
{
    return json{{"op", "checkpoint"}, {"label", label}};
}

// word (c_1 c_2 ... c_{2g+1}) repeated `times`
json chain_word(const json& times)
{
    return loop("t_", 1, times, json::array({loop("j_", 1, "2*g+1", json::array({L("c_{j_}")}))}));
}

json block123(const json& times)
{
    json body = json::array({L("c_1"), L("c_2"), L("c_3")});
    return loop("t_", 1, times, std::move(body));
}

json block321(const json& times)
{
    json body = json::array({L("c_3"), L("c_2"), L("c_1")});
    return loop("t_", 1, times, std::move(body));
}

json d_word() // t_{d_4} ... t_{d_{2g+1}}
{
    return loop("j_", 4, "2*g+1", json::array({L("d_{j_}")}));
}

json e_word() // t_{e_{2g+1}} ... t_{e_4}
{
    return loop("j_", "2*g+1", 4, json::array({L("e_{j_}")}), -1);
}

json c5run(const json& times) // (t_{c_5} ... t_{c_{2g+1}})^times
{
    return loop("t_", 1, times, json::array({loop("j_", 5, "2*g+1", json::array({L("c_{j_}")}))}));
}

json relator_A3()
{
    return json{{"kind", "chain"},
                {"curves", {"c_1", "c_2", "c_3"}},
                {"boundaries", {"a", "a'"}},
                {"name", "A_3"}};
}

// the engine expects explicit name lists for relators; emit c_5..c_{2g+1}
// through a small helper the generators call with the actual g
json relator_chain_c5(int g)
{
    json curves = json::array();
    for (int j = 5; j <= 2 * g + 1; ++j)
        curves.push_back("c_" + std::to_string(j));
    return json{{"kind", "chain"}, {"curves", curves}, {"boundaries", {"b", "b'"}},
                {"name", "A_2g-3"}};
}

/* ------------------------- lem1-1 (Lemma 4.2) -------------------------- */

json lem11_steps()
{
    json steps = json::array();
    // stage A: the tails of copies 1..3 jump over the later copies
    steps.push_back(rep("t", 1, "2*g-2",
                        json::array({pass("2*g+2-t", "2*g+1", "right", "c_{2*g+2-t}", "c_{2*g+1-t}"),
                                     pass("2*g+2-t+(2*g+1)", "2*g+1", "right", nullptr, "c_{2*g-t}"),
                                     pass("2*g+2-t+2*(2*g+1)", "2*g+1", "right", nullptr,
                                          "c_{2*g-1-t}")})));
    steps.push_back(rep("t", 1, "2*g-2",
                        json::array({pass("2*g+5-t", "2*g+1", "right", "c_{2*g+2-t}", "c_{2*g+1-t}"),
                                     pass("2*g+5-t+(2*g+1)", "2*g+1", "right", nullptr,
                                          "c_{2*g-t}")})));
    steps.push_back(rep("t", 1, "2*g-2",
                        json::array({pass("2*g+8-t", "2*g+1", "right", "c_{2*g+2-t}",
                                          "c_{2*g+1-t}")})));
    // stage B: shuffle the four runs into descending 4-blocks
    steps.push_back(json{{"op", "interleave"}, {"start", 13}, {"runs", 4}, {"runlen", "2*g-2"}});
    // stage C: convert blocks right-to-left, emitting the d_j letters
    steps.push_back(pass("8*g+1", 3, "right", "c_{2*g+1}", "d_{2*g+1}"));
    steps.push_back(rep(
        "k", "2*g-3", 1,
        json::array(
            {rep("b", 1, "2*g-2-k",
                 json::array({pass("4*k+9+3*(b-1)+4", 4, "left", "c_{k+3}", "c_{k+2}"),
                              pass("4*k+9+3*(b-1)+5", 4, "left", "c_{k+2}", "c_{k+1}"),
                              pass("4*k+9+3*(b-1)+6", 4, "left", "c_{k+1}", "c_{k}")})),
             pass("4*k+9+3*(2*g-2-k)", 3, "right", "c_{k+3}", "d_{k+3}")}),
        -1));
    return steps;
}

json lem11_final()
{
    return json::array({block123(4), block321("2*g-2"), d_word()});
}

/* ------------------------- lem1-2 (Lemma 4.3) -------------------------- */

json lem12_steps(const std::string& off)
{
    // `off` is an affine offset added to every position (0 standalone, the
    // length of the lem1-1 output when run inside prop41)
    auto P = [&](const std::string& e) { return off + "+(" + e + ")"; };
    json steps = json::array();
    steps.push_back(rep(
        "s", 1, "2*g-3",
        json::array(
            {rep("j", 1, 4,
                 json::array(
                     {pass(P("4*(s-1)+(2*g-2-s)*(2*g+1)+j"), "2*g+1", "left", "c_{j}", "c_{j+1}"),
                      rep("f", 2, "2*g-2-s",
                          json::array({pass(P("4*(s-1)+(2*g-2-s)*(2*g+1)+j-(f-1)*(2*g+1)"),
                                            "2*g+1", "left", nullptr, "c_{j+f}")}))}))})));
    steps.push_back(pass(P("4"), 3, "left", "c_{2*g+1}", "e_{2*g+1}"));
    steps.push_back(rep(
        "k", "2*g-3", 1,
        json::array(
            {rep("b", "2*g-2-k", 1,
                 json::array({pass(P("(2*g-2-k)+3*b"), 4, "right", "c_{k+3}", "c_{k+2}"),
                              pass(P("(2*g-2-k)+3*b-1"), 4, "right", "c_{k+2}", "c_{k+1}"),
                              pass(P("(2*g-2-k)+3*b-2"), 4, "right", "c_{k+1}", "c_{k}")}),
                 -1),
             pass(P("(2*g-2-k)+4"), 3, "left", "c_{k+3}", "e_{k+3}")}),
        -1));
    return steps;
}

json lem12_final()
{
    return json::array({e_word(), block123("2*g-2"), c5run("2*g-2")});
}

/* ------------------------- lem1-3 (Lemma 4.4) -------------------------- */

json lem13_steps(const std::string& off)
{
    auto P = [&](int e) { return off + "+" + std::to_string(e); };
    json steps = json::array();
    steps.push_back(swap_at(P(3)));
    steps.push_back(swap_at(P(6)));
    steps.push_back(swap_at(P(9)));
    steps.push_back(pass(P(3), 3, "right", "c_3", "c_2"));
    steps.push_back(pass(P(2), 3, "right", "c_2", "c_1"));
    steps.push_back(pass(P(1), 3, "right", "c_3", "c_2"));
    steps.push_back(pass(P(10), 3, "left", "c_1", "c_2"));
    steps.push_back(pass(P(11), 3, "left", "c_2", "c_3"));
    steps.push_back(pass(P(12), 3, "left", "c_1", "c_2"));
    steps.push_back(pass(P(4), 2, "right", "c_2", "c_1"));
    steps.push_back(pass(P(7), 2, "right", "c_2", "c_3"));
    steps.push_back(swap_at(P(6)));
    return steps;
}

/* ----------------------------- prop41 ---------------------------------- */

std::string prop41_script(int g)
{
    json j;
    j["name"] = "prop41";
    j["params"] = {{"g", g}};
    j["surface"] = {{"g", "g"}, {"p", 2}};
    j["mode"] = "factorization";
    j["initial"] = {{"letters", json::array({chain_word("2*g+2")})}, {"target", "pencil"}};
    json steps = json::array();
    for (auto& s : lem11_steps())
        steps.push_back(s);
    for (auto& s : lem12_steps("(8*g+4)"))
        steps.push_back(s);
    // move the trailing (c_1 c_2 c_3)^{2g-2} past the (c_5..)^{2g-2} powers
    {
        json order = json::array({c5run("2*g-2"), block123("2*g-2")});
        steps.push_back(sort_range("10*g+3", "(2*g+1)*(2*g+2)", std::move(order)));
    }
    steps.push_back(json{{"op", "cyclic"}, {"k", "4*g*g+8"}});
    // (t_{c_3}t_{c_2}t_{c_1})^4 ~ (t_{c_1}t_{c_2}t_{c_3})^4, chunk by chunk
    int apps = (2 * g - 2) / 4;
    for (int r = 1; r <= apps; ++r)
        for (auto& s : lem13_steps("(6*g+6)+" + std::to_string(12 * (r - 1))))
            steps.push_back(s);
    j["steps"] = steps;
    json fin = json::array();
    if (g % 2 == 1) {
        fin.push_back(block123("4*g"));
    } else {
        fin.push_back(block123("4*(g-1)+2"));
        fin.push_back(block321(2));
    }
    fin.push_back(d_word());
    fin.push_back(e_word());
    fin.push_back(c5run("2*g-2"));
    j["final"] = {{"letters", fin}};
    return j.dump();
}

/* ------------------------------ lem2 ----------------------------------- */

json prop41_word(int g)
{
    json w = json::array();
    if (g % 2 == 1) {
        w.push_back(block123("4*g"));
    } else {
        w.push_back(block123("4*(g-1)+2"));
        w.push_back(block321(2));
    }
    w.push_back(d_word());
    w.push_back(e_word());
    w.push_back(c5run("2*g-2"));
    return w;
}

std::string lem2_script(int g, int i)
{
    json j;
    j["name"] = "lem2";
    j["params"] = {{"g", g}, {"i", i}};
    j["surface"] = {{"g", "g"}, {"p", 2}};
    j["mode"] = "factorization";
    j["initial"] = {{"letters", prop41_word(g)}, {"target", "pencil"}};
    json steps = json::array();
    steps.push_back(rep("r", 1, "i", json::array({subst("2*(r-1)+1", relator_A3())})));
    steps.push_back(subst("16*g-10*i-3", relator_chain_c5(g)));
    steps.push_back(json{{"op", "cyclic"}, {"k", "16*g-10*i-4"}});
    {
        json order = json::array({L("b"), LT("a", "i"), L("b'"), LT("a'", "i")});
        steps.push_back(sort_range(1, "2*i+2", std::move(order)));
    }
    j["steps"] = steps;
    json fin = json::array({L("b"), LT("a", "i"), L("b'"), LT("a'", "i")});
    if (g % 2 == 1) {
        fin.push_back(block123("4*(g-i)"));
    } else {
        fin.push_back(block123("4*(g-1-i)+2"));
        fin.push_back(block321(2));
    }
    fin.push_back(d_word());
    fin.push_back(e_word());
    j["final"] = {{"letters", fin}};
    return j.dump();
}

/* ------------------------------ thm43 ---------------------------------- */

json lem45_word(int g)
{
    json w = json::array({L("b"), LT("a", "i"), L("b'"), LT("a'", "i")});
    if (g % 2 == 1) {
        w.push_back(block123("4*(g-i)"));
    } else {
        w.push_back(block123("4*(g-1-i)+2"));
        w.push_back(block321(2));
    }
    w.push_back(d_word());
    w.push_back(e_word());
    return w;
}

json xprime_word(int g)
{
    json w = json::array();
    w.push_back(loop("k_", "i+1", 1, json::array({L("x_{k_}")}), -1));
    w.push_back(loop("k_", "i+1", 1, json::array({L("x'_{k_}")}), -1));
    if (g % 2 == 1) {
        w.push_back(block123("4*(g-i)"));
    } else {
        w.push_back(block123("4*(g-1-i)+2"));
        w.push_back(block321(2));
    }
    w.push_back(d_word());
    w.push_back(e_word());
    return w;
}

std::string thm43_script(int g, int i)
{
    const int n = i + 1;
    json j;
    j["name"] = "thm43";
    j["params"] = {{"g", g}, {"i", i}, {"n", n}};
    j["surface"] = {{"g", "g"}, {"p", "2*n"}};
    j["mode"] = "equation";
    j["initial"] = {{"lhs", json::array({L("z_1"), L("z'_1")})}, {"letters", lem45_word(g)}};
    json steps = json::array();
    steps.push_back(json{{"op", "assert_equation_homology"}});
    steps.push_back(sort_range(1, "2*i+2",
                               json::array({L("b"), L("b'"), LT("a", "i"), LT("a'", "i")})));
    json lantern1 = json{{"kind", "lantern"},
                         {"boundary", {"z_{k+1}", "a", "y_{k-1}", "delta_{k}"}},
                         {"interior", {"z_{k}", "y_{k}", "x_{k}"}},
                         {"name", "lift-lantern"}};
    json lantern2 = json{{"kind", "lantern"},
                         {"boundary", {"z'_{k+1}", "a'", "y'_{k-1}", "delta'_{k}"}},
                         {"interior", {"z'_{k}", "y'_{k}", "x'_{k}"}},
                         {"name", "lift-lantern'"}};
    json body = json::array();
    body.push_back(carry("2*k+1", "2*k", "left"));
    body.push_back(carry("n+k+1", "n-1", "left"));
    body.push_back(json{{"op", "lmul"},
                        {"letters",
                         json::array({L("z_{k+1}"), L("delta_{k}"), L("z'_{k+1}"), L("delta'_{k}")})}});
    body.push_back(carry(2, 4, "right"));
    body.push_back(carry(2, "k+3", "right"));
    body.push_back(carry(2, "k+5", "right"));
    body.push_back(carry(5, 4, "left", "L"));
    body.push_back(subst(1, lantern1));
    body.push_back(subst("k+3", lantern2));
    body.push_back(json{{"op", "cancel"}});
    body.push_back(carry("k+4", "k+3", "left", "L"));
    body.push_back(carry("k+2", "k+1", "left"));
    body.push_back(json{{"op", "cancel"}});
    body.push_back(carry(4, "k-1", "right", "L"));
    body.push_back(carry(3, "k-1", "right", "L"));
    steps.push_back(rep("k", 1, "n-1", std::move(body)));
    steps.push_back(json{{"op", "finish_equation"}});
    j["steps"] = steps;
    j["final"] = {{"letters", xprime_word(g)}};
    return j.dump();
}

/* ------------------------------ lemA ----------------------------------- */

json lemA_steps()
{
    json steps = json::array();
    steps.push_back(sort_range(1, "2*n", json::array({loop(
                                             "k_", "n", 1,
                                             json::array({L("x_{k_}"), L("x'_{k_}")}), -1)})));
    steps.push_back(carry("2*n+1", "2*n", "left"));
    steps.push_back(carry("2*n+1", "12*(g-i)-1", "right"));
    steps.push_back(carry("2*n", "12*(g-i)-1", "right"));
    steps.push_back(json{{"op", "cyclic"}, {"k", 1}});
    steps.push_back(pass("2*n+12*(g-i)-1", 2, "right", "x'_1", "x''_1"));
    steps.push_back(pass("16*g-10*i-2", 2, "left", "c_1", "c_5"));
    return steps;
}

json lemA_final(int g)
{
    json fin = json::array();
    fin.push_back(loop("k_", "n", 2, json::array({L("x_{k_}"), L("x'_{k_}")}), -1));
    fin.push_back(L("c_2"));
    fin.push_back(L("c_3"));
    if (g % 2 == 1) {
        fin.push_back(block123("4*(g-i)-1"));
    } else {
        fin.push_back(block123("4*(g-1-i)+1"));
        fin.push_back(block321(2));
    }
    fin.push_back(L("x_1"));
    fin.push_back(L("d_4"));
    fin.push_back(L("d_5"));
    fin.push_back(L("x''_1"));
    fin.push_back(loop("j_", 6, "2*g+1", json::array({L("d_{j_}")})));
    fin.push_back(loop("j_", "2*g+1", 6, json::array({L("e_{j_}")}), -1));
    fin.push_back(L("c_5"));
    fin.push_back(L("e_5"));
    fin.push_back(L("e_4"));
    return fin;
}

std::string lemA_script(int g, int i)
{
    json j;
    j["name"] = "lemA";
    j["params"] = {{"g", g}, {"i", i}, {"n", i + 1}};
    j["surface"] = {{"g", "g"}, {"p", "2*n"}};
    j["mode"] = "factorization";
    j["initial"] = {{"letters", xprime_word(g)}, {"target", "pencil"}};
    j["steps"] = lemA_steps();
    j["final"] = {{"letters", lemA_final(g)}};
    return j.dump();
}

/* ----------------------- genus-3 lantern chain ------------------------- */

json g3_relator(const char* name)
{
    if (std::string(name) == "L_1")
        return json{{"kind", "lantern"}, {"boundary", {"a'", "c_1", "c_1", "a"}},
                    {"interior", {"c_3", "s", "x"}}, {"name", "L_1"}};
    if (std::string(name) == "L'_1")
        return json{{"kind", "lantern"}, {"boundary", {"c_7", "a'", "a", "c_7"}},
                    {"interior", {"c_5", "s'", "x'"}}, {"name", "L'_1"}};
    if (std::string(name) == "L_2")
        return json{{"kind", "lantern"}, {"boundary", {"c_7", "c_3", "c_5", "c_1"}},
                    {"interior", {"a", "y", "z"}}, {"name", "L_2"}};
    if (std::string(name) == "L'_2")
        return json{{"kind", "lantern"}, {"boundary", {"c_7", "c_3", "c_5", "c_1"}},
                    {"interior", {"a'", "y'", "z'"}}, {"name", "L'_2"}};
    if (std::string(name) == "L_3")
        return json{{"kind", "lantern"}, {"boundary", {"a", "s'", "s", "a"}},
                    {"interior", {"a'", "v", "w"}}, {"name", "L_3"}};
    throw std::invalid_argument("unknown genus-3 relator");
}

json cr1_relator() // t_a t_y t_z = t_y t_z t_a (a is disjoint from the odd chain)
{
    return json{{"kind", "custom"},
                {"lhs", json::array({L("a"), L("y"), L("z")})},
                {"rhs", json::array({L("y"), L("z"), L("a")})},
                {"name", "ayz-cycle"},
                {"provenance", "t_a t_y t_z = t_{c_1}t_{c_3}t_{c_5}t_{c_7} commutes with t_a"}};
}

// the seven-substitution schedule on the 22-letter product, with checkpoints
json sevenls_core(bool with_checkpoints)
{
    json steps = json::array();
    json w1 = json::array({LT("c_1", "4"), LT("c_3", "3"), LT("c_5", "3"), LT("c_7", "4"), L("c_7"),
                           L("a'"), L("a"), L("c_7"), L("a'"), L("c_1"), L("c_1"), L("a")});
    steps.push_back(sort_range(1, 22, std::move(w1)));
    steps.push_back(subst(19, g3_relator("L_1")));
    if (with_checkpoints)
        steps.push_back(checkpoint("X_1"));
    steps.push_back(carry(19, 4, "left"));
    {
        json order = json::array();
        order.push_back(loop("t_", 1, 3,
                             json::array({L("c_7"), L("c_5"), L("c_3"), L("c_1")})));
        order.push_back(L("c_1"));
        order.push_back(L("c_3"));
        order.push_back(L("c_7"));
        steps.push_back(sort_range(1, 15, std::move(order)));
    }
    steps.push_back(subst(1, g3_relator("L_2")));
    if (with_checkpoints)
        steps.push_back(checkpoint("X_2"));
    steps.push_back(subst(4, g3_relator("L_2")));
    if (with_checkpoints)
        steps.push_back(checkpoint("X_3"));
    steps.push_back(subst(7, g3_relator("L'_2")));
    if (with_checkpoints)
        steps.push_back(checkpoint("X_4"));
    steps.push_back(subst(13, g3_relator("L'_1")));
    if (with_checkpoints)
        steps.push_back(checkpoint("X_5"));
    steps.push_back(subst(10, g3_relator("L'_2")));
    if (with_checkpoints)
        steps.push_back(checkpoint("X_6"));
    steps.push_back(subst(1, cr1_relator()));
    steps.push_back(subst(4, cr1_relator()));
    steps.push_back(subst(3, cr1_relator()));
    steps.push_back(carry(6, 6, "right"));
    steps.push_back(carry(5, 6, "right"));
    steps.push_back(sort_range(13, 16, json::array({L("s"), L("s'"), L("x"), L("x'")})));
    steps.push_back(subst(11, g3_relator("L_3")));
    if (with_checkpoints)
        steps.push_back(checkpoint("X_7"));
    return steps;
}

json sevenls_final()
{
    return json::array({L("y"), L("z"), L("y"), L("z"), L("a'"), L("y'"), L("z'"), L("a'"),
                        L("y'"), L("z'"), L("a'"), L("v"), L("w"), L("x"), L("x'")});
}

std::string sevenls_script()
{
    json j;
    j["name"] = "sevenLS";
    j["params"] = {{"g", 3}};
    j["surface"] = {{"g", 3}, {"p", 0}};
    j["mode"] = "free";
    j["initial"] = {{"letters",
                     json::array({LT("a", "2"), LT("a'", "2"), LT("c_1", "6"), LT("c_3", "3"),
                                  LT("c_5", "3"), LT("c_7", "6")})}};
    j["steps"] = sevenls_core(false);
    j["final"] = {{"letters", sevenls_final()}};
    return j.dump();
}

std::string exotic_script()
{
    json j;
    j["name"] = "exotic-chain";
    j["params"] = {{"g", 3}};
    j["surface"] = {{"g", 3}, {"p", 0}};
    j["mode"] = "factorization";
    j["initial"] = {{"letters",
                     json::array({LT("a", "2"), LT("a'", "2"), block123(8), d_word(), e_word()})},
                    {"target", "none"},
                    {"sections", 4}};
    json steps = json::array();
    steps.push_back(checkpoint("X_0"));
    // slide the second (123)^4 through D with the certified d-identities
    steps.push_back(rep("b", 4, 1,
                        json::array({rep("j", 3, 1,
                                         json::array({pass("16+3*(b-1)+j", 4, "right", "c_{j}",
                                                           "c_{j+4}")}),
                                         -1)}),
                        -1));
    // (123)^4 -> (c_1^2 c_2 c_3)^3
    steps.push_back(pass(7, 3, "right", "c_3", "c_2"));
    steps.push_back(pass(10, 3, "right", "c_2", "c_1"));
    steps.push_back(pass(6, 3, "right", "c_2", "c_1"));
    // (567)^4 -> (c_5 c_6 c_7^2)^3
    steps.push_back(pass(30, 3, "left", "c_5", "c_6"));
    steps.push_back(pass(27, 3, "left", "c_6", "c_7"));
    steps.push_back(pass(31, 3, "left", "c_6", "c_7"));
    // expose c_1^6 c_3^3 / c_5^3 c_7^6 with the conjugated c_2 / c_6 letters
    steps.push_back(pass(15, 1, "right", "c_2"));
    steps.push_back(pass(11, 4, "right", "c_2"));
    steps.push_back(pass(7, 7, "right", "c_2"));
    steps.push_back(pass(22, 1, "left", "c_6"));
    steps.push_back(pass(26, 4, "left", "c_6"));
    steps.push_back(pass(30, 7, "left", "c_6"));
    steps.push_back(sort_range(5, 13, json::array({LT("c_1", "6"), LT("c_3", "3")})));
    steps.push_back(sort_range(24, 32, json::array({LT("c_5", "3"), LT("c_7", "6")})));
    // bring c_5^3 c_7^6 next to the other powers
    steps.push_back(rep("t", 0, 8, json::array({carry("24+t", 10, "left")})));
    for (auto& s : sevenls_core(true))
        steps.push_back(s);
    j["steps"] = steps;
    j["final"] = {{"count", 29}};
    return j.dump();
}

/* ---------------------- braided builders ------------------------------- */

json braiding_relator_y1(int g, int i)
{
    json interior = (g == 3 && i == 0) ? json::array({"x", "s", "c_3"})
                                       : json::array({"x", "y", "z"});
    return json{{"kind", "braiding"},
                {"boundary", {"c_1", "c_1", "x_1", "x'_1"}},
                {"interior", interior},
                {"cap1", 1},
                {"cap2", "n+1"},
                {"name", "braiding-x1"}};
}

json braiding_relator_y2(int g, int i)
{
    json interior = (g == 3 && i == 0) ? json::array({"xb", "yb", "zb"})
                                       : json::array({"x'", "y'", "z'"});
    return json{{"kind", "braiding"},
                {"boundary", {"c_1", "x_1", "x''_1", "c_5"}},
                {"interior", interior},
                {"cap1", 1},
                {"cap2", "n+1"},
                {"name", "braiding-x1''"}};
}

std::string inequivalent1_script(int g, int i)
{
    json j;
    j["name"] = "inequivalent-1";
    j["params"] = {{"g", g}, {"i", i}, {"n", i + 1}};
    j["surface"] = {{"g", "g"}, {"p", "2*n"}};
    j["mode"] = "factorization";
    j["initial"] = {{"letters", xprime_word(g)}, {"target", "pencil"},
                    {"sections", 2 * (i + 1)}};
    json steps = json::array();
    steps.push_back(sort_range(1, "2*n", json::array({loop(
                                             "k_", "n", 1,
                                             json::array({L("x_{k_}"), L("x'_{k_}")}), -1)})));
    steps.push_back(swap_at("2*n+3"));
    steps.push_back(carry("2*n+3", 1, "left"));
    steps.push_back(carry("2*n+1", 2, "left"));
    steps.push_back(carry("2*n+2", 2, "left"));
    steps.push_back(subst("2*n-1", braiding_relator_y1(g, i)));
    j["steps"] = steps;
    j["final"] = {{"count", "16*g-10*i-3"}};
    return j.dump();
}

std::string inequivalent2_script(int g, int i)
{
    json j;
    j["name"] = "inequivalent-2";
    j["params"] = {{"g", g}, {"i", i}, {"n", i + 1}};
    j["surface"] = {{"g", "g"}, {"p", "2*n"}};
    j["mode"] = "factorization";
    j["initial"] = {{"letters", xprime_word(g)}, {"target", "pencil"},
                    {"sections", 2 * (i + 1)}};
    json steps = lemA_steps();
    // x''_1 crosses the d/e tail, so contiguity is created by walking the
    // letters in between leftward, conjugated; the four lantern curves stay
    // clean. Q is the last position of the c prefix.
    const std::string Q = "(2*n-2+12*(g-i)-1)";
    steps.push_back(rep("r", 1, "4*g-8", json::array({pass(Q + "+4+r", 1, "left")})));
    steps.push_back(rep("r", 1, "4*g-6", json::array({pass(Q + "+1+r", 1, "left")})));
    int blen = g % 2 == 1 ? 4 * g - 4 : 4 * g - 6;
    std::string A = g % 2 == 1 ? Q + "-2" : Q;
    steps.push_back(rep("r", 1, std::to_string(blen),
                        json::array({pass("(" + A + ")+r", 1, "left")})));
    steps.push_back(subst("(" + A + ")+" + std::to_string(blen), braiding_relator_y2(g, i)));
    j["steps"] = steps;
    j["final"] = {{"count", "16*g-10*i-3"}};
    return j.dump();
}

std::string stipsicz_script(int g)
{
    json j;
    j["name"] = "stipsicz";
    j["params"] = {{"g", g}};
    j["surface"] = {{"g", "g"}, {"p", 0}};
    j["mode"] = "factorization";
    json steps = json::array();
    json braid_c1_closed = json{{"kind", "braiding"},
                                {"boundary", {"c_1", "c_1", "a", "a'"}},
                                {"interior", {"x", "y", "z"}},
                                {"cap1", 0},
                                {"cap2", 0},
                                {"name", "braiding-c1"}};
    json braid_c3_closed = json{{"kind", "braiding"},
                                {"boundary", {"c_3", "c_3", "a", "a'"}},
                                {"interior", {"x_c3", "y_c3", "z_c3"}},
                                {"cap1", 0},
                                {"cap2", 0},
                                {"name", "braiding-c3"}};
    if (g % 2 == 0) {
        j["initial"] = {{"letters", json::array({L("a"), L("a'"), block123("4*(g-1)+2"),
                                                 block321(2), d_word(), e_word()})},
                        {"target", "none"},
                        {"sections", 2}};
        steps.push_back(swap_at(5));
        steps.push_back(carry(5, 1, "left"));
        steps.push_back(subst(1, braid_c1_closed));
        j["final"] = {{"count", "16*g-3"}};
    } else {
        j["initial"] = {{"letters", json::array({LT("a", "2"), LT("a'", "2"),
                                                 block123("4*(g-1)"), d_word(), e_word()})},
                        {"target", "none"},
                        {"sections", 4}};
        steps.push_back(swap_at(7));
        steps.push_back(carry(7, 1, "left"));
        steps.push_back(pass(7, 1, "right"));
        steps.push_back(carry(10, 1, "left"));
        steps.push_back(carry(9, 1, "left"));
        steps.push_back(swap_at(2));
        steps.push_back(carry(4, 2, "right"));
        steps.push_back(carry(3, 2, "right"));
        steps.push_back(subst(1, braid_c1_closed));
        steps.push_back(subst(4, braid_c3_closed));
        j["final"] = {{"count", "16*g-14"}};
    }
    j["steps"] = steps;
    return j.dump();
}

std::string lem11_script(int g)
{
    json j;
    j["name"] = "lem1-1";
    j["params"] = {{"g", g}};
    j["surface"] = {{"g", "g"}, {"p", 2}};
    j["mode"] = "free";
    j["initial"] = {{"letters", json::array({chain_word(4)})}};
    j["steps"] = lem11_steps();
    j["final"] = {{"letters", lem11_final()}};
    return j.dump();
}

std::string lem12_script(int g)
{
    json j;
    j["name"] = "lem1-2";
    j["params"] = {{"g", g}};
    j["surface"] = {{"g", "g"}, {"p", 2}};
    j["mode"] = "free";
    j["initial"] = {{"letters", json::array({chain_word("2*g-2")})}};
    j["steps"] = lem12_steps("0");
    j["final"] = {{"letters", lem12_final()}};
    return j.dump();
}

std::string lem13_script(int g)
{
    json j;
    j["name"] = "lem1-3";
    j["params"] = {{"g", g}};
    j["surface"] = {{"g", "g"}, {"p", 2}};
    j["mode"] = "free";
    j["initial"] = {{"letters", json::array({block321(4)})}};
    j["steps"] = lem13_steps("0");
    j["final"] = {{"letters", json::array({block123(4)})}};
    return j.dump();
}

} // namespace

std::vector<std::string> catalog_script_names()
{
    return {"lem1-1", "lem1-2", "lem1-3", "prop41", "lem2", "thm43",
            "lemA",   "sevenLS", "exotic-chain", "stipsicz", "inequivalent-1", "inequivalent-2"};
}

std::string catalog_script(const std::string& name, const std::map<std::string, int>& params)
{
    auto geti = [&](const char* key, int dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    int g = geti("g", 3);
    int i = geti("i", 0);
    if (name == "lem1-1")
        return lem11_script(g);
    if (name == "lem1-2")
        return lem12_script(g);
    if (name == "lem1-3")
        return lem13_script(g);
    if (name == "prop41")
        return prop41_script(g);
    if (name == "lem2")
        return lem2_script(g, i);
    if (name == "thm43")
        return thm43_script(g, i);
    if (name == "lemA")
        return lemA_script(g, i);
    if (name == "sevenLS")
        return sevenls_script();
    if (name == "exotic-chain")
        return exotic_script();
    if (name == "stipsicz")
        return stipsicz_script(g);
    if (name == "inequivalent-1")
        return inequivalent1_script(g, i);
    if (name == "inequivalent-2")
        return inequivalent2_script(g, i);
    throw std::invalid_argument("unknown script '" + name + "'");
}

} // namespace lefkit
