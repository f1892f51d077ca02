#include "relations.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lefkit {

/****************************************************************************
 * Relators
 ****************************************************************************/

namespace {

IMat side_action(const Registry& reg, const std::vector<TwistLetter>& w)
{
    return homology_action(reg, w);
}

void check_actions_agree(const Registry& reg, const Relator& r)
{
    if (side_action(reg, r.lhs) != side_action(reg, r.rhs))
        throw std::logic_error("relator '" + r.name + "': homology actions of the sides differ");
}

bool pairwise_commuting(const Registry& reg, const std::vector<TwistLetter>& w)
{
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (!w[i].curve.conj.empty() || !w[j].curve.conj.empty())
                return false;
            int u = w[i].curve.base, v = w[j].curve.base;
            if (u != v && reg->geometric(u, v) != 0)
                return false;
        }
    return true;
}

} // namespace

Relator instantiate_chain(const Registry& reg, const std::vector<std::string>& chain_curves,
                          const std::string& b1, const std::string& b2, const std::string& name)
{
    if (chain_curves.size() % 2 == 0)
        throw std::invalid_argument("instantiate_chain: even chain");
    const int len = static_cast<int>(chain_curves.size());
    const int h = (len - 1) / 2;
    std::vector<int> ids;
    for (const std::string& c : chain_curves)
        ids.push_back(reg->id(c));
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) {
            int want = j - i == 1 ? 1 : 0;
            if (reg->geometric(ids[i], ids[j]) != want)
                throw std::invalid_argument("instantiate_chain: chain intersection pattern violated at " +
                                            chain_curves[i] + ", " + chain_curves[j]);
        }
    for (const std::string& b : {b1, b2})
        for (int id : ids)
            if (reg->geometric(reg->id(b), id) != 0)
                throw std::invalid_argument("instantiate_chain: boundary " + b + " meets the chain");

    Relator r;
    r.kind = RelatorKind::ChainOdd;
    r.chain_h = h;
    r.name = name.empty() ? "chain(" + chain_curves.front() + ".." + chain_curves.back() + ")" : name;
    r.provenance = "odd chain relation";
    for (int rep = 0; rep < 2 * h + 2; ++rep)
        for (const std::string& c : chain_curves)
            r.lhs.push_back(make_letter(reg, c));
    r.rhs.push_back(make_letter(reg, b1));
    r.rhs.push_back(make_letter(reg, b2));
    check_actions_agree(reg, r);
    return r;
}

Relator instantiate_lantern(const Registry& reg, const std::vector<std::string>& boundary,
                            const std::vector<std::string>& interior, const std::string& name)
{
    if (boundary.size() != 4 || interior.size() != 3)
        throw std::invalid_argument("instantiate_lantern: need 4 boundary and 3 interior curves");
    std::vector<int> b, in;
    for (auto& s : boundary)
        b.push_back(reg->id(s));
    for (auto& s : interior)
        in.push_back(reg->id(s));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (b[i] != b[j] && reg->geometric(b[i], b[j]) != 0)
                throw std::invalid_argument("instantiate_lantern: boundary curves must be disjoint");
    for (std::size_t i = 0; i < in.size(); ++i)
        for (std::size_t j = i + 1; j < in.size(); ++j)
            if (reg->geometric(in[i], in[j]) != 2)
                throw std::invalid_argument("instantiate_lantern: interior curves " + interior[i] +
                                            ", " + interior[j] + " must meet twice");
    for (int u : in)
        for (int v : b)
            if (reg->geometric(u, v) != 0)
                throw std::invalid_argument("instantiate_lantern: interior curve meets the boundary");

    Relator r;
    r.kind = RelatorKind::Lantern;
    r.name = name.empty() ? "lantern" : name;
    r.provenance = "lantern relation";
    for (auto& s : boundary)
        r.lhs.push_back(make_letter(reg, s));
    for (auto& s : interior)
        r.rhs.push_back(make_letter(reg, s));
    r.commute_match = true;
    check_actions_agree(reg, r);
    return r;
}

Relator instantiate_braiding_lantern(const Registry& reg, const std::vector<std::string>& boundary,
                                     const std::vector<std::string>& interior_capped, int cap1,
                                     int cap2, const std::string& name)
{
    if (boundary.size() != 4 || interior_capped.size() != 3)
        throw std::invalid_argument("instantiate_braiding_lantern: need 4 + 3 curves");
    Relator r;
    r.kind = RelatorKind::BraidingLantern;
    r.name = name.empty() ? "braiding-lantern" : name;
    r.provenance = "braiding lantern substitution";
    for (auto& s : boundary)
        r.lhs.push_back(make_letter(reg, s));
    r.commute_match = pairwise_commuting(reg, r.lhs);
    if (cap1 > 0) {
        r.braid_caps = {cap1, cap2};
        // the relation holds after braiding the two base points; check it on
        // the capped surface
        Factorization probe;
        probe.reg = reg;
        probe.letters = r.lhs;
        probe.monodromy = false;
        Factorization capped = cap_factorization(probe, {cap1, cap2});
        std::vector<TwistLetter> rhs;
        for (auto& s : interior_capped)
            rhs.push_back(make_letter(capped.reg, s));
        if (homology_action(capped.reg, capped.letters) != homology_action(capped.reg, rhs))
            throw std::logic_error("braiding lantern '" + r.name +
                                   "': capped homology actions differ");
        r.rhs = rhs; // letters on the capped registry
    } else {
        // already a closed fibration: only section bookkeeping changes
        for (auto& s : interior_capped)
            r.rhs.push_back(make_letter(reg, s));
        check_actions_agree(reg, r);
    }
    return r;
}

Relator instantiate_custom(const Registry& reg,
                           const std::vector<std::pair<std::string, int>>& lhs,
                           const std::vector<std::pair<std::string, int>>& rhs,
                           const std::string& name, const std::string& provenance)
{
    Relator r;
    r.kind = RelatorKind::Custom;
    r.name = name;
    r.provenance = provenance;
    for (auto& [n, e] : lhs)
        r.lhs.push_back(make_letter(reg, n, e));
    for (auto& [n, e] : rhs)
        r.rhs.push_back(make_letter(reg, n, e));
    check_actions_agree(reg, r);
    return r;
}

Relator transport_relator(const Registry& reg, const Relator& r, const std::vector<SignedLetter>& w)
{
    Relator t = r;
    auto conj_side = [&](std::vector<TwistLetter>& side) {
        for (TwistLetter& l : side) {
            std::vector<SignedLetter> nc = w;
            nc.insert(nc.end(), l.curve.conj.begin(), l.curve.conj.end());
            l.curve.conj = std::move(nc);
            l.curve = normalize(reg, l.curve);
        }
    };
    conj_side(t.lhs);
    if (t.kind == RelatorKind::BraidingLantern && !t.braid_caps.empty()) {
        // the right side lives on the braided (capped) surface and transports
        // by the capped image of w
        Factorization wprobe;
        wprobe.reg = reg;
        wprobe.monodromy = false;
        for (const SignedLetter& s : w)
            wprobe.letters.push_back(TwistLetter{CurveExpr{{}, s.curve}, s.exp});
        Factorization wcap = cap_factorization(wprobe, t.braid_caps);
        std::vector<SignedLetter> wc;
        for (const TwistLetter& l : wcap.letters) {
            for (const SignedLetter& c : l.curve.conj)
                wc.push_back(c);
            wc.push_back({l.curve.base, l.exp});
            for (auto it = l.curve.conj.rbegin(); it != l.curve.conj.rend(); ++it)
                wc.push_back({it->curve, -it->exp});
        }
        const Registry& creg = wcap.reg;
        for (TwistLetter& l : t.rhs) {
            std::vector<SignedLetter> nc = wc;
            nc.insert(nc.end(), l.curve.conj.begin(), l.curve.conj.end());
            l.curve.conj = std::move(nc);
            l.curve = normalize(creg, l.curve);
        }
        Factorization probe;
        probe.reg = reg;
        probe.letters = t.lhs;
        probe.monodromy = false;
        Factorization capped = cap_factorization(probe, t.braid_caps);
        if (homology_action(creg, capped.letters) != homology_action(creg, t.rhs))
            throw std::logic_error("transport_relator: capped homology check failed");
    } else {
        conj_side(t.rhs);
        check_actions_agree(reg, t); // impossible to fail for valid input
    }
    t.commute_match = false;
    return t;
}

/****************************************************************************
 * Substitution
 ****************************************************************************/

namespace {

struct MatchResult {
    bool ok = false;
    Tier tier = Tier::Syntactic;
    std::vector<std::string> detail;
    std::vector<int> order; // subword position of each pattern letter
};

MatchResult match_subword(const Registry& reg, const std::vector<TwistLetter>& word, int pos,
                          const std::vector<TwistLetter>& pattern, bool commute_match, int depth)
{
    MatchResult m;
    const std::size_t n = pattern.size();
    if (pos < 1 || pos - 1 + n > word.size()) {
        m.detail.push_back("subword out of range");
        return m;
    }
    std::vector<bool> used(n, false);
    m.order.resize(n, -1);
    m.tier = Tier::Syntactic;
    for (std::size_t i = 0; i < n; ++i) {
        const TwistLetter& have = word[static_cast<std::size_t>(pos - 1) + i];
        int best = -1;
        Tier best_tier = Tier::Distinct;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j])
                continue;
            if (!commute_match && j != i)
                continue;
            const TwistLetter& want = pattern[j];
            if (have.exp != want.exp)
                continue;
            EqualResult eq = curve_equal(reg, have.curve, want.curve, depth);
            if (eq.tier == Tier::Distinct)
                continue;
            if (best < 0 || static_cast<int>(eq.tier) > static_cast<int>(best_tier)) {
                best = static_cast<int>(j);
                best_tier = eq.tier;
                if (best_tier == Tier::Syntactic)
                    break;
            }
        }
        if (best < 0) {
            m.detail.push_back("letter " + std::to_string(pos + static_cast<int>(i)) + " = " +
                               expr_to_string(reg, have.curve) + " matches nothing in the relator");
            return m;
        }
        used[static_cast<std::size_t>(best)] = true;
        m.order[static_cast<std::size_t>(best)] = static_cast<int>(i);
        m.tier = min_tier(m.tier, best_tier);
        m.detail.push_back(expr_to_string(reg, have.curve) + " ~ " +
                           expr_to_string(reg, pattern[static_cast<std::size_t>(best)].curve) +
                           " [" + tier_name(best_tier) + "]");
    }
    m.ok = true;
    return m;
}

} // namespace

SubstitutionResult substitute(const Factorization& f, const Relator& r, int pos, bool forward,
                              int rewrite_depth)
{
    const std::vector<TwistLetter>& from = forward ? r.lhs : r.rhs;
    const std::vector<TwistLetter>& to = forward ? r.rhs : r.lhs;
    if (r.kind == RelatorKind::BraidingLantern)
        throw std::invalid_argument("substitute: use substitute_braiding for braiding lanterns");
    MatchResult m = match_subword(f.reg, f.letters, pos, from, r.commute_match, rewrite_depth);
    if (!m.ok) {
        std::string msg = "substitute(" + r.name + ") at " + std::to_string(pos) + ": ";
        for (auto& d : m.detail)
            msg += d + "; ";
        throw std::invalid_argument(msg);
    }
    SubstitutionResult res;
    res.tier = m.tier;
    res.letter_tiers = m.detail;
    res.factorization = f;
    auto& letters = res.factorization.letters;
    IMat before = homology_action(f.reg, std::vector<TwistLetter>(
                                             letters.begin() + (pos - 1),
                                             letters.begin() + (pos - 1) + static_cast<long>(from.size())));
    letters.erase(letters.begin() + (pos - 1),
                  letters.begin() + (pos - 1) + static_cast<long>(from.size()));
    letters.insert(letters.begin() + (pos - 1), to.begin(), to.end());
    IMat after = homology_action(f.reg, to);
    if (before != after)
        throw std::logic_error("substitute(" + r.name + "): homology action changed");
    if (static_cast<int>(m.tier) < static_cast<int>(Tier::Rewritten))
        res.factorization.taint = min_tier(res.factorization.taint, m.tier);
    return res;
}

SubstitutionResult substitute_braiding(const Factorization& f, const Relator& r, int pos,
                                       int rewrite_depth)
{
    if (r.kind != RelatorKind::BraidingLantern)
        throw std::invalid_argument("substitute_braiding: wrong relator kind");
    MatchResult m = match_subword(f.reg, f.letters, pos, r.lhs, r.commute_match, rewrite_depth);
    if (!m.ok) {
        std::string msg = "substitute_braiding(" + r.name + ") at " + std::to_string(pos) + ": ";
        for (auto& d : m.detail)
            msg += d + "; ";
        throw std::invalid_argument(msg);
    }
    SubstitutionResult res;
    res.tier = m.tier;
    res.letter_tiers = m.detail;

    Factorization work = f;
    if (!r.braid_caps.empty())
        work = cap_factorization(work, r.braid_caps);
    // splice the capped relator output over the capped subword
    auto& letters = work.letters;
    IMat before = homology_action(work.reg, std::vector<TwistLetter>(
                                                letters.begin() + (pos - 1),
                                                letters.begin() + (pos - 1) + 4));
    IMat after = homology_action(work.reg, r.rhs);
    if (before != after)
        throw std::logic_error("substitute_braiding(" + r.name + "): capped homology action changed");
    letters.erase(letters.begin() + (pos - 1), letters.begin() + (pos - 1) + 4);
    letters.insert(letters.begin() + (pos - 1), r.rhs.begin(), r.rhs.end());
    // two sections braid into one bisection
    int found = 0;
    for (auto it = work.sections.begin(); it != work.sections.end() && found < 2;) {
        if (it->multiplicity == 1) {
            it = work.sections.erase(it);
            ++found;
        } else
            ++it;
    }
    if (found == 2)
        work.sections.push_back(SectionRecord{2, -1});
    if (static_cast<int>(m.tier) < static_cast<int>(Tier::Rewritten))
        work.taint = min_tier(work.taint, m.tier);
    res.factorization = std::move(work);
    return res;
}

/****************************************************************************
 * Expression language: integers, parameters, + - * / and parentheses.
 ****************************************************************************/

namespace {

struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;
    const std::map<std::string, int>& env;

    void skip()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    long long parse_expr()
    {
        long long v = parse_term();
        while (true) {
            skip();
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                char op = s[pos++];
                long long t = parse_term();
                v = op == '+' ? v + t : v - t;
            } else
                return v;
        }
    }
    long long parse_term()
    {
        long long v = parse_factor();
        while (true) {
            skip();
            if (pos < s.size() && (s[pos] == '*' || s[pos] == '/')) {
                char op = s[pos++];
                long long t = parse_factor();
                if (op == '*')
                    v *= t;
                else {
                    if (t == 0 || v % t != 0)
                        throw std::invalid_argument("script expression: non-exact division in " + s);
                    v /= t;
                }
            } else
                return v;
        }
    }
    long long parse_factor()
    {
        skip();
        if (pos >= s.size())
            throw std::invalid_argument("script expression: unexpected end in " + s);
        if (s[pos] == '(') {
            ++pos;
            long long v = parse_expr();
            skip();
            if (pos >= s.size() || s[pos] != ')')
                throw std::invalid_argument("script expression: missing ')' in " + s);
            ++pos;
            return v;
        }
        if (s[pos] == '-') {
            ++pos;
            return -parse_factor();
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            long long v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                v = v * 10 + (s[pos++] - '0');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_') {
            std::string name;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                name += s[pos++];
            auto it = env.find(name);
            if (it == env.end())
                throw std::invalid_argument("script expression: unknown parameter '" + name + "'");
            return it->second;
        }
        throw std::invalid_argument("script expression: bad character in " + s);
    }
};

} // namespace

long long eval_expr(const std::string& expr, const std::map<std::string, int>& env)
{
    ExprParser p{expr, 0, env};
    long long v = p.parse_expr();
    p.skip();
    if (p.pos != expr.size())
        throw std::invalid_argument("script expression: trailing input in " + expr);
    return v;
}

namespace {

long long eval_field(const nlohmann::json& j, const char* key, const std::map<std::string, int>& env,
                     long long dflt)
{
    if (!j.contains(key))
        return dflt;
    const auto& v = j.at(key);
    if (v.is_number_integer())
        return v.get<long long>();
    return eval_expr(v.get<std::string>(), env);
}

std::string expand_name(const std::string& tpl, const std::map<std::string, int>& env)
{
    std::string out;
    std::size_t i = 0;
    while (i < tpl.size()) {
        if (tpl[i] == '{') {
            std::size_t close = tpl.find('}', i);
            if (close == std::string::npos)
                throw std::invalid_argument("bad name template: " + tpl);
            out += std::to_string(eval_expr(tpl.substr(i + 1, close - i - 1), env));
            i = close + 1;
        } else
            out += tpl[i++];
    }
    return out;
}

} // namespace

/****************************************************************************
 * Script replay engine.
 ****************************************************************************/

namespace {

struct Engine {
    Registry reg;
    Factorization rhs;            // the working word
    Factorization lhs;            // equation mode only
    bool equation = false;
    int depth = 12;
    ReplayResult* out = nullptr;
    std::map<std::string, int> env;
    std::map<std::string, Relator> relator_cache;

    Factorization& side(const std::string& s)
    {
        if (s == "L") {
            if (!equation)
                throw std::invalid_argument("script: no L side outside equation mode");
            return lhs;
        }
        return rhs;
    }

    void log(const std::string& op, const std::string& detail, Tier tier, bool braid)
    {
        out->log.push_back({op, detail, tier, braid});
    }

    void expect_letter(const Factorization& f, int pos, const std::string& name)
    {
        if (pos < 1 || pos > static_cast<int>(f.letters.size()))
            throw std::invalid_argument("expect: position " + std::to_string(pos) + " out of range");
        CurveExpr want = make_expr(reg, name);
        CurveExpr have = normalize(reg, f.letters[static_cast<std::size_t>(pos - 1)].curve);
        if (!(have == want))
            throw std::invalid_argument("expect: letter " + std::to_string(pos) + " is " +
                                        expr_to_string(reg, have) + ", wanted " + name);
    }

    Tier certify_letter(Factorization& f, int pos, const std::string& name, Tier min_required)
    {
        if (pos < 1 || pos > static_cast<int>(f.letters.size()))
            throw std::invalid_argument("certify: position " + std::to_string(pos) +
                                        " out of range");
        TwistLetter& l = f.letters[static_cast<std::size_t>(pos - 1)];
        CurveExpr want = make_expr(reg, name);
        EqualResult eq = curve_equal(reg, l.curve, want, depth);
        if (static_cast<int>(eq.tier) < static_cast<int>(min_required))
            throw std::invalid_argument("certify: letter " + std::to_string(pos) + " = " +
                                        expr_to_string(reg, l.curve) + " vs " + name + " only at " +
                                        tier_name(eq.tier) + " [" + eq.detail + "]");
        l.curve = want;
        return eq.tier;
    }

    // mover conjugated, passed letters intact
    void pass(Factorization& f, int pos, int count, bool dir_right)
    {
        for (int t = 0; t < count; ++t) {
            int k = dir_right ? pos + t : pos - 1 - t;
            f = hurwitz_move(f, k, dir_right);
        }
    }

    // mover intact, passed letters conjugated (and normalized)
    void carry(Factorization& f, int pos, int count, bool dir_right)
    {
        for (int t = 0; t < count; ++t) {
            int k = dir_right ? pos + t : pos - 1 - t;
            f = hurwitz_move(f, k, !dir_right);
        }
    }

    void validated_swap(Factorization& f, int pos)
    {
        TwistLetter a = f.letters[static_cast<std::size_t>(pos - 1)];
        TwistLetter b = f.letters[static_cast<std::size_t>(pos)];
        f = hurwitz_move(f, pos, true);
        const TwistLetter& moved = f.letters[static_cast<std::size_t>(pos)];
        if (!(normalize(reg, moved.curve) == normalize(reg, a.curve)) || moved.exp != a.exp ||
            !(f.letters[static_cast<std::size_t>(pos - 1)] == b))
            throw std::invalid_argument("swap at " + std::to_string(pos) +
                                        ": letters do not commute (" +
                                        expr_to_string(reg, a.curve) + " vs " +
                                        expr_to_string(reg, b.curve) + ")");
    }

    // rearrange [from..to] into the given clean-letter order by validated swaps
    void sort_range(Factorization& f, int from, int to, const std::vector<SignedLetter>& order)
    {
        if (to - from + 1 != static_cast<int>(order.size()))
            throw std::invalid_argument("sort: order length mismatch");
        for (int t = from; t <= to; ++t) {
            const SignedLetter& want = order[static_cast<std::size_t>(t - from)];
            int found = -1;
            for (int q = t; q <= to && found < 0; ++q) {
                const TwistLetter& l = f.letters[static_cast<std::size_t>(q - 1)];
                if (l.curve.conj.empty() && l.curve.base == want.curve && l.exp == want.exp)
                    found = q;
            }
            if (found < 0)
                throw std::invalid_argument("sort: required letter " + reg->curve(want.curve).name +
                                            " not found in range");
            for (int q = found; q > t; --q)
                validated_swap(f, q - 1);
        }
    }

    void interleave(Factorization& f, int start, int runs, int runlen)
    {
        // [R1 | R2 | ... | Rr] -> blocks (R1[j], R2[j], ..., Rr[j]) for each j
        std::vector<int> cur(static_cast<std::size_t>(runs * runlen));
        for (int t = 0; t < runs * runlen; ++t)
            cur[static_cast<std::size_t>(t)] = start + t; // current position of original letter t
        int slot = start;
        for (int j = 0; j < runlen; ++j)
            for (int r = 0; r < runs; ++r) {
                int orig = r * runlen + j;
                int p = cur[static_cast<std::size_t>(orig)];
                for (int q = p; q > slot; --q) {
                    validated_swap(f, q - 1);
                    for (auto& c : cur)
                        if (c == q - 1)
                            c = q;
                    cur[static_cast<std::size_t>(orig)] = q - 1;
                }
                ++slot;
            }
    }

    Relator resolve_relator(const nlohmann::json& spec);
    void run_steps(const nlohmann::json& steps);
    void run_step(const nlohmann::json& st);

    std::vector<TwistLetter> word_spec(const nlohmann::json& items);
};

std::vector<TwistLetter> Engine::word_spec(const nlohmann::json& items)
{
    std::vector<TwistLetter> out;
    std::function<void(const nlohmann::json&)> emit = [&](const nlohmann::json& item) {
        if (item.contains("loop")) {
            const auto& lp = item.at("loop");
            std::string var = lp.at("var").get<std::string>();
            long long from = eval_field(lp, "from", env, 0);
            long long to = eval_field(lp, "to", env, 0);
            long long step = eval_field(lp, "step", env, 1);
            for (long long v = from; step > 0 ? v <= to : v >= to; v += step) {
                env[var] = static_cast<int>(v);
                for (const auto& sub : lp.at("body"))
                    emit(sub);
            }
            env.erase(var);
            return;
        }
        long long times = eval_field(item, "times", env, 1);
        int exp = static_cast<int>(eval_field(item, "exp", env, 1));
        std::string name = expand_name(item.at("name").get<std::string>(), env);
        TwistLetter l = make_letter(reg, name, exp);
        if (item.contains("conj"))
            for (const auto& c : item.at("conj")) {
                std::string cn = expand_name(c.at("name").get<std::string>(), env);
                int ce = static_cast<int>(eval_field(c, "exp", env, 1));
                int reps = std::abs(ce);
                for (int t = 0; t < reps; ++t)
                    l.curve.conj.push_back({reg->id(cn), ce > 0 ? 1 : -1});
            }
        l.curve = normalize(reg, l.curve);
        for (long long t = 0; t < times; ++t)
            out.push_back(l);
    };
    for (const auto& item : items)
        emit(item);
    return out;
}

Relator Engine::resolve_relator(const nlohmann::json& spec)
{
    std::string key = spec.dump();
    for (auto& [k, v] : env)
        key += "|" + k + "=" + std::to_string(v);
    auto it = relator_cache.find(key);
    if (it != relator_cache.end())
        return it->second;
    std::string kind = spec.at("kind").get<std::string>();
    Relator r;
    auto names = [&](const char* field) {
        std::vector<std::string> v;
        for (const auto& item : spec.at(field))
            v.push_back(expand_name(item.get<std::string>(), env));
        return v;
    };
    if (kind == "chain") {
        auto canvas = names("curves");
        auto bs = names("boundaries");
        r = instantiate_chain(reg, canvas, bs.at(0), bs.at(1), spec.value("name", ""));
    } else if (kind == "lantern") {
        r = instantiate_lantern(reg, names("boundary"), names("interior"), spec.value("name", ""));
    } else if (kind == "braiding") {
        int c1 = static_cast<int>(eval_field(spec, "cap1", env, 0));
        int c2 = static_cast<int>(eval_field(spec, "cap2", env, 0));
        r = instantiate_braiding_lantern(reg, names("boundary"), names("interior"), c1, c2,
                                         spec.value("name", ""));
    } else if (kind == "custom") {
        std::vector<std::pair<std::string, int>> l, rr;
        for (const auto& item : spec.at("lhs"))
            l.emplace_back(expand_name(item.at("name").get<std::string>(), env),
                           static_cast<int>(eval_field(item, "exp", env, 1)));
        for (const auto& item : spec.at("rhs"))
            rr.emplace_back(expand_name(item.at("name").get<std::string>(), env),
                            static_cast<int>(eval_field(item, "exp", env, 1)));
        r = instantiate_custom(reg, l, rr, spec.value("name", "custom"),
                               spec.value("provenance", ""));
    } else {
        throw std::invalid_argument("unknown relator kind " + kind);
    }
    relator_cache.emplace(std::move(key), r);
    return r;
}

void Engine::run_step(const nlohmann::json& st)
{
    std::string op = st.at("op").get<std::string>();
    if (op == "note")
        return;
    if (op == "repeat") {
        std::string var = st.at("var").get<std::string>();
        long long from = eval_field(st, "from", env, 0);
        long long to = eval_field(st, "to", env, 0);
        long long step = eval_field(st, "step", env, 1); // descending loops say so
        if ((step > 0 && from > to) || (step < 0 && from < to))
            return;
        for (long long v = from; step > 0 ? v <= to : v >= to; v += step) {
            env[var] = static_cast<int>(v);
            run_steps(st.at("body"));
        }
        env.erase(var);
        return;
    }

    Factorization& f = side(st.value("side", "R"));
    if (op == "pass" || op == "carry") {
        int pos = static_cast<int>(eval_field(st, "pos", env, 0));
        int count = static_cast<int>(eval_field(st, "count", env, 1));
        bool right = st.value("dir", "right") == std::string("right");
        if (st.contains("expect"))
            expect_letter(f, pos, expand_name(st.at("expect").get<std::string>(), env));
        Tier tier = Tier::Syntactic;
        if (op == "pass") {
            pass(f, pos, count, right);
            if (st.contains("certify")) {
                std::string want = expand_name(st.at("certify").get<std::string>(), env);
                Tier min_req = Tier::Rewritten;
                if (st.value("min_tier", "") == std::string("HomologyOnly"))
                    min_req = Tier::HomologyOnly;
                tier = certify_letter(f, right ? pos + count : pos - count, want, min_req);
            }
        } else {
            carry(f, pos, count, right);
        }
        log(op, "pos " + std::to_string(pos) + " count " + std::to_string(count), tier, true);
        return;
    }
    if (op == "swap") {
        int pos = static_cast<int>(eval_field(st, "pos", env, 0));
        validated_swap(f, pos);
        log(op, "pos " + std::to_string(pos), Tier::Syntactic, true);
        return;
    }
    if (op == "sort") {
        int from = static_cast<int>(eval_field(st, "from", env, 0));
        int to = static_cast<int>(eval_field(st, "to", env, 0));
        std::vector<TwistLetter> ord = word_spec(st.at("order"));
        std::vector<SignedLetter> order;
        for (const TwistLetter& l : ord) {
            if (!l.curve.conj.empty())
                throw std::invalid_argument("sort: order must be plain letters");
            order.push_back({l.curve.base, l.exp});
        }
        sort_range(f, from, to, order);
        log(op, "range " + std::to_string(from) + ".." + std::to_string(to), Tier::Syntactic, true);
        return;
    }
    if (op == "interleave") {
        int start = static_cast<int>(eval_field(st, "start", env, 0));
        int runs = static_cast<int>(eval_field(st, "runs", env, 0));
        int runlen = static_cast<int>(eval_field(st, "runlen", env, 0));
        interleave(f, start, runs, runlen);
        log(op, "start " + std::to_string(start), Tier::Syntactic, true);
        return;
    }
    if (op == "cyclic") {
        int k = static_cast<int>(eval_field(st, "k", env, 0));
        f = cyclic_permute(f, k);
        log(op, "k " + std::to_string(k), Tier::Syntactic, true);
        return;
    }
    if (op == "conjugate") {
        std::vector<TwistLetter> w = word_spec(st.at("letters"));
        std::vector<SignedLetter> ws;
        for (const TwistLetter& l : w)
            ws.push_back({l.curve.base, l.exp});
        rhs = global_conjugate(rhs, ws);
        if (equation)
            lhs = global_conjugate(lhs, ws);
        log(op, std::to_string(ws.size()) + " letters", Tier::Syntactic, true);
        return;
    }
    if (op == "lmul") {
        if (!equation)
            throw std::invalid_argument("lmul: equation mode only");
        std::vector<TwistLetter> w = word_spec(st.at("letters"));
        lhs.letters.insert(lhs.letters.begin(), w.begin(), w.end());
        rhs.letters.insert(rhs.letters.begin(), w.begin(), w.end());
        log(op, std::to_string(w.size()) + " letters", Tier::Syntactic, false);
        return;
    }
    if (op == "cancel") {
        if (!equation)
            throw std::invalid_argument("cancel: equation mode only");
        if (lhs.letters.empty() || rhs.letters.empty())
            throw std::invalid_argument("cancel: empty side");
        const TwistLetter& a = lhs.letters.front();
        const TwistLetter& b = rhs.letters.front();
        EqualResult eq = curve_equal(reg, a.curve, b.curve, depth);
        if (eq.tier != Tier::Syntactic || a.exp != b.exp)
            throw std::invalid_argument("cancel: leading letters differ (" +
                                        expr_to_string(reg, a.curve) + " vs " +
                                        expr_to_string(reg, b.curve) + ", " + tier_name(eq.tier) +
                                        ")");
        lhs.letters.erase(lhs.letters.begin());
        rhs.letters.erase(rhs.letters.begin());
        log(op, "leading " + expr_to_string(reg, a.curve), Tier::Syntactic, false);
        return;
    }
    if (op == "subst") {
        int pos = static_cast<int>(eval_field(st, "pos", env, 0));
        bool forward = st.value("dir", "forward") == std::string("forward");
        Relator r = resolve_relator(st.at("relator"));
        std::size_t before = f.letters.size();
        if (r.kind == RelatorKind::BraidingLantern) {
            SubstitutionResult sres = substitute_braiding(f, r, pos, depth);
            if (&f == &rhs) {
                rhs = std::move(sres.factorization);
                reg = rhs.reg;
            } else
                throw std::invalid_argument("braiding substitution only on the working side");
            out->lantern_substitutions += 1;
            log(op, r.name + " at " + std::to_string(pos), sres.tier, false);
        } else {
            SubstitutionResult sres = substitute(f, r, pos, forward, depth);
            f = std::move(sres.factorization);
            if (r.kind == RelatorKind::Lantern)
                out->lantern_substitutions += 1;
            if (r.kind == RelatorKind::ChainOdd)
                out->chain_substitutions += 1;
            log(op, r.name + " at " + std::to_string(pos), sres.tier, false);
            // spec invariant: unchaining drops (2h+1)(2h+2)-2 letters, a
            // lantern drops one
            long delta = static_cast<long>(f.letters.size()) - static_cast<long>(before);
            long magnitude = r.kind == RelatorKind::ChainOdd
                                 ? (2L * r.chain_h + 1) * (2L * r.chain_h + 2) - 2
                             : r.kind == RelatorKind::Lantern ? 1
                                                              : -delta * (forward ? -1 : 1);
            if (r.kind != RelatorKind::Custom && delta != (forward ? -magnitude : magnitude))
                throw std::logic_error("subst: unexpected letter count change");
        }
        return;
    }
    if (op == "assert_letter") {
        int pos = static_cast<int>(eval_field(st, "pos", env, 0));
        std::string name = expand_name(st.at("name").get<std::string>(), env);
        EqualResult eq = curve_equal(reg, f.letters.at(static_cast<std::size_t>(pos - 1)).curve,
                                     make_expr(reg, name), depth);
        if (eq.tier == Tier::Distinct)
            throw std::invalid_argument("assert_letter " + std::to_string(pos) + " != " + name);
        log(op, name + " [" + tier_name(eq.tier) + "]", eq.tier, false);
        return;
    }
    if (op == "assert_word") {
        std::vector<TwistLetter> want = word_spec(st.at("letters"));
        if (want.size() != f.letters.size())
            throw std::invalid_argument("assert_word: length " + std::to_string(f.letters.size()) +
                                        " vs expected " + std::to_string(want.size()));
        Tier worst = Tier::Syntactic;
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (want[i].exp != f.letters[i].exp)
                throw std::invalid_argument("assert_word: exponent differs at " + std::to_string(i + 1));
            EqualResult eq = curve_equal(reg, f.letters[i].curve, want[i].curve, depth);
            if (eq.tier == Tier::Distinct)
                throw std::invalid_argument("assert_word: letter " + std::to_string(i + 1) + " is " +
                                            expr_to_string(reg, f.letters[i].curve) + ", expected " +
                                            expr_to_string(reg, want[i].curve));
            worst = min_tier(worst, eq.tier);
        }
        log(op, "matched " + std::to_string(want.size()) + " letters", worst, false);
        return;
    }
    if (op == "assert_count") {
        long long v = eval_field(st, "value", env, -1);
        if (static_cast<long long>(f.letters.size()) != v)
            throw std::invalid_argument("assert_count: " + std::to_string(f.letters.size()) +
                                        " letters, expected " + std::to_string(v));
        log(op, std::to_string(v), Tier::Syntactic, false);
        return;
    }
    if (op == "assert_equation_homology") {
        if (!equation)
            throw std::invalid_argument("assert_equation_homology: equation mode only");
        if (homology_action(lhs) != homology_action(rhs))
            throw std::invalid_argument("equation sides act differently on H1");
        log(op, "sides agree on H1", Tier::Syntactic, false);
        return;
    }
    if (op == "finish_equation") {
        if (!equation)
            throw std::invalid_argument("finish_equation: equation mode only");
        // the L side must be exactly the boundary multi-twist
        std::map<int, int> tgt;
        for (const TwistLetter& l : lhs.letters) {
            CurveExpr n = normalize(reg, l.curve);
            if (!n.conj.empty() || l.exp != 1 || !reg->curve(n.base).boundary_parallel)
                throw std::invalid_argument("finish_equation: lhs is not a boundary multi-twist");
            tgt[reg->curve(n.base).boundary_index] += 1;
        }
        rhs.target = tgt;
        rhs.monodromy = true;
        rhs.sections.clear();
        for (auto& [bidx, e] : tgt)
            for (int t = 0; t < e; ++t)
                rhs.sections.push_back(SectionRecord{1, -1});
        equation = false;
        log(op, "target has " + std::to_string(tgt.size()) + " boundary twists", Tier::Syntactic,
            false);
        return;
    }
    if (op == "checkpoint") {
        out->checkpoints[st.at("label").get<std::string>()] = rhs;
        log(op, st.at("label").get<std::string>(), Tier::Syntactic, false);
        return;
    }
    throw std::invalid_argument("unknown script op '" + op + "'");
}

void Engine::run_steps(const nlohmann::json& steps)
{
    for (const auto& st : steps) {
        out->step_index += 1;
        try {
            run_step(st);
        } catch (const std::exception& e) {
            if (st.value("op", "") == std::string("repeat"))
                throw; // inner step already annotated
            std::ostringstream env_str;
            for (auto& [k, v] : env)
                env_str << k << "=" << v << " ";
            throw std::runtime_error(std::string(e.what()) + " | step " + st.dump() + " | env " +
                                     env_str.str());
        }
    }
}

} // namespace

std::string ReplayResult::to_json() const
{
    nlohmann::ordered_json j;
    j["pass"] = pass;
    if (!pass) {
        j["failure"] = failure;
        j["failed_step"] = step_index;
    }
    j["lantern_substitutions"] = lantern_substitutions;
    j["chain_substitutions"] = chain_substitutions;
    j["taint"] = tier_name(taint);
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const ReplayStepLog& s : log) {
        nlohmann::ordered_json e;
        e["op"] = s.op;
        e["detail"] = s.detail;
        e["tier"] = tier_name(s.tier);
        e["braid_only"] = s.braid_only;
        steps.push_back(std::move(e));
    }
    j["steps"] = steps;
    return j.dump(2);
}

ReplayResult replay_script(const std::string& script_json,
                           const std::map<std::string, int>& param_overrides, int rewrite_depth)
{
    ReplayResult result;
    nlohmann::json j = nlohmann::json::parse(script_json);
    Engine eng;
    eng.out = &result;
    eng.depth = rewrite_depth;
    if (j.contains("params"))
        for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
            eng.env[it.key()] = it.value().get<int>();
    for (auto& [k, v] : param_overrides)
        eng.env[k] = v;

    try {
        Surface s{static_cast<int>(eval_field(j.at("surface"), "g", eng.env, 0)),
                  static_cast<int>(eval_field(j.at("surface"), "p", eng.env, 0))};
        eng.reg = load_alphabet(s);
        const auto& init = j.at("initial");
        eng.rhs.reg = eng.reg;
        eng.rhs.letters = eng.word_spec(init.at("letters"));
        std::string mode = j.value("mode", "factorization");
        if (mode == "factorization") {
            std::string tgt = init.value("target", "pencil");
            if (tgt == "pencil")
                for (int b = 1; b <= s.boundary; ++b)
                    eng.rhs.target[b] = 1;
            eng.rhs.monodromy = true;
        } else if (mode == "free") {
            eng.rhs.monodromy = false;
        } else if (mode == "equation") {
            eng.equation = true;
            eng.rhs.monodromy = false;
            eng.lhs.reg = eng.reg;
            eng.lhs.monodromy = false;
            eng.lhs.letters = eng.word_spec(init.at("lhs"));
        } else {
            throw std::invalid_argument("unknown script mode " + mode);
        }
        if (init.contains("sections")) {
            int count = static_cast<int>(eval_field(init, "sections", eng.env, 0));
            for (int t = 0; t < count; ++t)
                eng.rhs.sections.push_back(SectionRecord{1, -1});
        }
        eng.run_steps(j.at("steps"));
        if (j.contains("final")) {
            const auto& fin = j.at("final");
            if (fin.contains("letters")) {
                nlohmann::json check = {{"op", "assert_word"}, {"letters", fin.at("letters")}};
                eng.out->step_index += 1;
                eng.run_step(check);
            }
            if (fin.contains("count")) {
                nlohmann::json check = {{"op", "assert_count"}, {"value", fin.at("count")}};
                eng.out->step_index += 1;
                eng.run_step(check);
            }
        }
        result.final_factorization = eng.rhs;
        result.pass = true;
    } catch (const std::exception& e) {
        result.pass = false;
        result.failure = e.what();
        result.final_factorization = eng.rhs; // state at failure, for diagnostics
    }
    // only HomologyOnly certifications taint (Rewritten is a word certificate)
    for (const ReplayStepLog& s : result.log)
        if (static_cast<int>(s.tier) < static_cast<int>(Tier::Rewritten))
            result.taint = min_tier(result.taint, s.tier);
    return result;
}

} // namespace lefkit
