#include "words.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace lefkit {

const char* tier_name(Tier t)
{
    switch (t) {
    case Tier::Syntactic: return "Syntactic";
    case Tier::Rewritten: return "Rewritten";
    case Tier::HomologyOnly: return "HomologyOnly";
    case Tier::Distinct: return "Distinct";
    }
    return "?";
}

Tier min_tier(Tier a, Tier b) { return static_cast<int>(a) < static_cast<int>(b) ? a : b; }

TwistLetter make_letter(const Registry& reg, const std::string& name, int exp)
{
    return TwistLetter{make_expr(reg, name), exp};
}

CurveExpr make_expr(const Registry& reg, const std::string& name)
{
    return CurveExpr{{}, reg->id(name)};
}

HomologyClass expr_class(const Registry& reg, const CurveExpr& e)
{
    HomologyClass v = reg->curve(e.base).z_class;
    for (auto it = e.conj.rbegin(); it != e.conj.rend(); ++it) {
        const HomologyClass& c = reg->curve(it->curve).z_class;
        v = it->exp >= 0 ? transvect(c, v) : transvect_inverse(c, v);
    }
    return v;
}

bool is_separating(const Registry& reg, const CurveExpr& e)
{
    return cap_boundaries(expr_class(reg, e)).is_zero();
}

bool classes_equal_up_to_sign(const HomologyClass& x, const HomologyClass& y)
{
    if (!(x.surface == y.surface))
        return false;
    if (x.coeff == y.coeff)
        return true;
    for (std::size_t i = 0; i < x.coeff.size(); ++i)
        if (x.coeff[i] != -y.coeff[i])
            return false;
    return true;
}

/****************************************************************************
 * Normalization. Sound rewrites only:
 *  - free reduction of adjacent inverse conjugator letters;
 *  - dropping a conjugator letter that is registered disjoint from every
 *    letter below it and from the base (or equals the base while being
 *    disjoint from everything below) -- it then fixes the inner image;
 *  - sorting adjacent commuting conjugator letters into a canonical order.
 ****************************************************************************/

namespace {

bool strictly_disjoint(const Registry& reg, int u, int v)
{
    return u != v && reg->geometric(u, v) == 0;
}

bool commuting_letters(const Registry& reg, int u, int v)
{
    return u == v || reg->geometric(u, v) == 0;
}

bool free_reduce_once(std::vector<SignedLetter>& w)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].curve == w[i + 1].curve && w[i].exp == -w[i + 1].exp) {
            w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
            return true;
        }
    return false;
}

bool drop_fixing_letter(const Registry& reg, CurveExpr& e)
{
    for (std::size_t t = 0; t < e.conj.size(); ++t) {
        bool ok = true;
        for (std::size_t s = t + 1; s < e.conj.size() && ok; ++s)
            ok = strictly_disjoint(reg, e.conj[t].curve, e.conj[s].curve);
        if (!ok)
            continue;
        if (e.conj[t].curve == e.base || strictly_disjoint(reg, e.conj[t].curve, e.base)) {
            e.conj.erase(e.conj.begin() + static_cast<long>(t));
            return true;
        }
    }
    return false;
}

bool sort_pass(const Registry& reg, std::vector<SignedLetter>& w)
{
    bool changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!commuting_letters(reg, w[i].curve, w[i + 1].curve))
            continue;
        if (w[i + 1] < w[i]) {
            std::swap(w[i], w[i + 1]);
            changed = true;
        }
    }
    return changed;
}

} // namespace

CurveExpr normalize(const Registry& reg, CurveExpr e)
{
    bool changed = true;
    while (changed) {
        changed = false;
        while (free_reduce_once(e.conj))
            changed = true;
        while (drop_fixing_letter(reg, e))
            changed = true;
        while (sort_pass(reg, e.conj))
            changed = true;
    }
    return e;
}

std::string expr_to_string(const Registry& reg, const CurveExpr& e)
{
    std::ostringstream out;
    for (const SignedLetter& l : e.conj) {
        out << "t[" << reg->curve(l.curve).name << "]";
        if (l.exp != 1)
            out << "^" << l.exp;
        out << " ";
    }
    out << "(" << reg->curve(e.base).name << ")";
    return out.str();
}

/****************************************************************************
 * Tiered equality. The Rewritten tier explores, breadth-first and within a
 * rewrite budget, the sound moves
 *   (w . t_u^e, B)  ->  (w . t_B^-e, u)     when |u ^ B| = 1 (braid relation)
 * together with the registry's certified identities used as suffix rewrites
 * in either direction, normalizing after each step.
 ****************************************************************************/

namespace {

std::string expr_key(const CurveExpr& e)
{
    std::ostringstream k;
    for (const SignedLetter& l : e.conj)
        k << l.curve << "^" << l.exp << ".";
    k << "|" << e.base;
    return k.str();
}

std::vector<SignedLetter> inverse_word(const std::vector<SignedLetter>& w)
{
    std::vector<SignedLetter> r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        r.push_back({it->curve, -it->exp});
    return r;
}

bool has_suffix(const std::vector<SignedLetter>& w, const std::vector<SignedLetter>& suf)
{
    if (suf.size() > w.size())
        return false;
    return std::equal(suf.begin(), suf.end(), w.end() - static_cast<long>(suf.size()));
}

std::vector<CurveExpr> rewrite_neighbors(const Registry& reg, const CurveExpr& e)
{
    std::vector<CurveExpr> out;
    if (!e.conj.empty()) {
        const SignedLetter inner = e.conj.back();
        if (reg->geometric(inner.curve, e.base) == 1) {
            CurveExpr n = e;
            n.conj.back() = {e.base, -inner.exp};
            n.base = inner.curve;
            out.push_back(normalize(reg, n));
        }
    }
    for (const CurveAxiom& ax : reg->axioms()) {
        std::vector<SignedLetter> w;
        for (auto& [c, x] : ax.conjugator)
            w.push_back({c, x});
        if (e.base == ax.base && has_suffix(e.conj, w)) {
            CurveExpr n = e;
            n.conj.resize(n.conj.size() - w.size());
            n.base = ax.result;
            out.push_back(normalize(reg, n));
        }
        std::vector<SignedLetter> wi = inverse_word(w);
        if (e.base == ax.result && has_suffix(e.conj, wi)) {
            CurveExpr n = e;
            n.conj.resize(n.conj.size() - wi.size());
            n.base = ax.base;
            out.push_back(normalize(reg, n));
        }
    }
    return out;
}

} // namespace

EqualResult curve_equal(const Registry& reg, const CurveExpr& a, const CurveExpr& b, int depth)
{
    CurveExpr na = normalize(reg, a), nb = normalize(reg, b);
    if (na == nb)
        return {Tier::Syntactic, "identical normal forms"};

    const std::size_t node_cap = 4096;
    std::set<std::string> seen_a{expr_key(na)}, seen_b{expr_key(nb)};
    std::deque<std::pair<CurveExpr, int>> qa{{na, 0}}, qb{{nb, 0}};
    auto meets = [&](const std::set<std::string>& s, const CurveExpr& e) {
        return s.count(expr_key(e)) != 0;
    };
    if (meets(seen_b, na) || meets(seen_a, nb))
        return {Tier::Syntactic, "identical normal forms"};
    bool found = false;
    while ((!qa.empty() || !qb.empty()) && !found) {
        for (int side = 0; side < 2 && !found; ++side) {
            auto& q = side == 0 ? qa : qb;
            auto& mine = side == 0 ? seen_a : seen_b;
            auto& theirs = side == 0 ? seen_b : seen_a;
            if (q.empty())
                continue;
            auto [cur, d] = q.front();
            q.pop_front();
            if (d >= depth)
                continue;
            for (CurveExpr& n : rewrite_neighbors(reg, cur)) {
                std::string key = expr_key(n);
                if (mine.count(key))
                    continue;
                if (theirs.count(key) || mine.size() >= node_cap) {
                    if (theirs.count(key))
                        found = true;
                    if (found)
                        break;
                    continue;
                }
                mine.insert(key);
                q.emplace_back(std::move(n), d + 1);
            }
        }
    }
    if (found)
        return {Tier::Rewritten, "braid/certified rewrite"};

    HomologyClass ca = expr_class(reg, a), cb = expr_class(reg, b);
    if (classes_equal_up_to_sign(ca, cb))
        return {Tier::HomologyOnly, "equal integral classes, no word certificate"};
    std::ostringstream w;
    w << "integral classes differ: [";
    for (const Int& v : ca.coeff)
        w << v << " ";
    w << "] vs [";
    for (const Int& v : cb.coeff)
        w << v << " ";
    w << "]";
    return {Tier::Distinct, w.str()};
}

/****************************************************************************
 * Factorizations.
 ****************************************************************************/

int Factorization::base_points() const
{
    int n = 0;
    for (auto& [_, e] : target)
        n += e;
    return n;
}

Factorization make_factorization(const Registry& reg, const std::vector<std::string>& names,
                                 bool pencil_target)
{
    Factorization f;
    f.reg = reg;
    for (const std::string& n : names)
        f.letters.push_back(make_letter(reg, n));
    if (pencil_target)
        for (int j = 1; j <= reg->surface().boundary; ++j)
            f.target[j] = 1;
    return f;
}

std::vector<std::string> wellformedness_flags(const Factorization& f)
{
    std::vector<std::string> flags;
    for (std::size_t i = 0; i < f.letters.size(); ++i) {
        const TwistLetter& l = f.letters[i];
        if (f.monodromy && l.exp != 1)
            flags.push_back("letter " + std::to_string(i + 1) + " is not a positive twist");
        if (l.curve.conj.empty() && f.reg->curve(l.curve.base).boundary_parallel)
            flags.push_back("letter " + std::to_string(i + 1) + " twists a boundary-parallel curve");
    }
    return flags;
}

IMat homology_action(const Registry& reg, const std::vector<TwistLetter>& letters)
{
    IMat m = IMat::identity(static_cast<std::size_t>(reg->surface().rank()));
    for (const TwistLetter& l : letters) {
        HomologyClass c = expr_class(reg, l.curve);
        m = m * transvection_matrix(c, l.exp);
    }
    return m;
}

IMat homology_action(const Factorization& f) { return homology_action(f.reg, f.letters); }

namespace {

std::vector<SignedLetter> concat(std::initializer_list<const std::vector<SignedLetter>*> parts)
{
    std::vector<SignedLetter> r;
    for (const auto* p : parts)
        r.insert(r.end(), p->begin(), p->end());
    return r;
}

} // namespace

Factorization hurwitz_move(const Factorization& f, int k, bool left)
{
    if (k < 1 || k >= static_cast<int>(f.letters.size()))
        throw std::invalid_argument("hurwitz_move: index out of range");
    Factorization r = f;
    if (left) {
        // (A, B) -> (B, t_{B^-1}(A))
        TwistLetter A0 = r.letters[static_cast<std::size_t>(k - 1)];
        TwistLetter B0 = r.letters[static_cast<std::size_t>(k)];
        std::vector<SignedLetter> binv = inverse_word(B0.curve.conj);
        std::vector<SignedLetter> mid{{B0.curve.base, -B0.exp}};
        TwistLetter na;
        na.exp = A0.exp;
        na.curve.base = A0.curve.base;
        na.curve.conj = concat({&B0.curve.conj, &mid, &binv, &A0.curve.conj});
        na.curve = normalize(f.reg, na.curve);
        r.letters[static_cast<std::size_t>(k - 1)] = B0;
        r.letters[static_cast<std::size_t>(k)] = na;
    } else {
        // (A, B) -> (t_A(B), A)
        TwistLetter A0 = r.letters[static_cast<std::size_t>(k - 1)];
        TwistLetter B0 = r.letters[static_cast<std::size_t>(k)];
        std::vector<SignedLetter> ainv = inverse_word(A0.curve.conj);
        std::vector<SignedLetter> mid{{A0.curve.base, A0.exp}};
        TwistLetter nb;
        nb.exp = B0.exp;
        nb.curve.base = B0.curve.base;
        nb.curve.conj = concat({&A0.curve.conj, &mid, &ainv, &B0.curve.conj});
        nb.curve = normalize(f.reg, nb.curve);
        r.letters[static_cast<std::size_t>(k - 1)] = nb;
        r.letters[static_cast<std::size_t>(k)] = A0;
    }
    return r;
}

Factorization cyclic_permute(const Factorization& f, int k)
{
    if (!f.monodromy)
        throw std::invalid_argument("cyclic_permute: target is not a central multi-twist");
    const int l = static_cast<int>(f.letters.size());
    if (l == 0)
        return f;
    k = ((k % l) + l) % l;
    Factorization r = f;
    std::rotate(r.letters.begin(), r.letters.begin() + k, r.letters.end());
    return r;
}

Factorization global_conjugate(const Factorization& f, const std::vector<SignedLetter>& w)
{
    Factorization r = f;
    for (TwistLetter& l : r.letters) {
        std::vector<SignedLetter> nc = w;
        nc.insert(nc.end(), l.curve.conj.begin(), l.curve.conj.end());
        l.curve.conj = std::move(nc);
        l.curve = normalize(f.reg, l.curve);
    }
    return r;
}

VerificationReport verify_boundary_multitwist(const Factorization& f)
{
    VerificationReport rep;
    rep.taint = f.taint;
    IMat m = homology_action(f);
    IMat id = IMat::identity(m.rows());
    if (m == id) {
        rep.pass = true;
        return rep;
    }
    rep.pass = false;
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m(i, j) != (i == j ? 1 : 0)) {
                std::ostringstream w;
                w << "basis vector " << j + 1 << " is moved";
                rep.witness = w.str();
                return rep;
            }
    return rep;
}

/****************************************************************************
 * Capping.
 ****************************************************************************/

namespace {

// name remap for capping the boundary components in `removed` (sorted)
std::string capped_name(const Registry& oldreg, const std::string& name, int old_n, int new_n,
                        const std::set<int>& removed)
{
    auto renumber = [&](int j) {
        int shift = 0;
        for (int r : removed)
            if (r < j)
                ++shift;
        return j - shift;
    };
    auto tail_num = [&](std::size_t at) { return std::stoi(name.substr(at)); };

    if (name.rfind("delta'_", 0) == 0) {
        int k = tail_num(7);
        int nj = renumber(old_n + k);
        return new_n > 0 ? "delta'_" + std::to_string(nj - new_n) : throw std::invalid_argument(
            "cap_factorization: boundary twist survives capping");
    }
    if (name.rfind("delta_", 0) == 0) {
        int k = tail_num(6);
        if (new_n == 0)
            throw std::invalid_argument("cap_factorization: boundary twist survives capping");
        return "delta_" + std::to_string(renumber(k));
    }
    if (name.rfind("x''", 0) == 0)
        return std::string(); // expand via the defining word instead
    if (name.rfind("x'_", 0) == 0) {
        int k = tail_num(3);
        if (!removed.count(old_n + k))
            return new_n > 0 ? "x'_" + std::to_string(renumber(old_n + k) - new_n) : "a'";
        return "a'";
    }
    if (name.rfind("x_", 0) == 0) {
        int k = tail_num(2);
        if (!removed.count(k))
            return new_n > 0 ? "x_" + std::to_string(renumber(k)) : "a";
        return "a";
    }
    if (name.rfind("y'_", 0) == 0) {
        int k = tail_num(3);
        if (new_n == 0)
            return "a'";
        return k == 1 && removed.count(old_n + 1) ? "b'" : "y'_" + std::to_string(k - 1);
    }
    if (name.rfind("y_", 0) == 0) {
        int k = tail_num(2);
        if (new_n == 0)
            return "a";
        return k == 1 && removed.count(1) ? "b" : "y_" + std::to_string(k - 1);
    }
    if (name.rfind("z'_", 0) == 0 || name.rfind("z_", 0) == 0)
        throw std::invalid_argument("cap_factorization: no image for " + name);
    (void)oldreg;
    return name; // chain curves, a, b, lantern curves keep their names
}

} // namespace

Factorization cap_factorization(const Factorization& f, std::vector<int> boundary_indices)
{
    const Surface old = f.surface();
    if (boundary_indices.empty())
        for (int j = 1; j <= old.boundary; ++j)
            boundary_indices.push_back(j);
    std::set<int> removed(boundary_indices.begin(), boundary_indices.end());
    Surface ns{old.genus, old.boundary - static_cast<int>(removed.size())};
    Registry nreg = load_alphabet(ns);
    const int old_n = old.boundary / 2;
    const int new_n = ns.boundary / 2;

    // maps a curve to its capped image; curves pinned down only as twist
    // images (x''_1) expand through their defining word
    std::function<CurveExpr(int)> map_curve = [&](int id) -> CurveExpr {
        const NamedCurve& c = f.reg->curve(id);
        const std::string mapped = capped_name(f.reg, c.name, old_n, new_n, removed);
        if (!mapped.empty())
            return CurveExpr{{}, nreg->id(mapped)};
        if (c.defining_base < 0)
            throw std::invalid_argument("cap_factorization: no image for " + c.name);
        CurveExpr e;
        for (auto& [cid, exp] : c.defining_word) {
            CurveExpr sub = map_curve(cid);
            if (!sub.conj.empty())
                throw std::invalid_argument("cap_factorization: nested defining word");
            e.conj.push_back({sub.base, exp});
        }
        e.base = map_curve(c.defining_base).base;
        return e;
    };

    Factorization r;
    r.reg = nreg;
    r.monodromy = f.monodromy;
    r.taint = f.taint;
    r.sections = f.sections;
    for (const TwistLetter& l : f.letters) {
        TwistLetter nl;
        nl.exp = l.exp;
        CurveExpr tail;
        for (const SignedLetter& s : l.curve.conj) {
            const NamedCurve& c = f.reg->curve(s.curve);
            if (c.boundary_parallel && removed.count(c.boundary_index))
                continue; // capped boundary twists are trivial
            CurveExpr img = map_curve(s.curve);
            if (img.conj.empty()) {
                tail.conj.push_back({img.base, s.exp});
            } else {
                // conjugated twist: w t_c^e w^-1
                for (const SignedLetter& t : img.conj)
                    tail.conj.push_back(t);
                tail.conj.push_back({img.base, s.exp});
                for (auto it = img.conj.rbegin(); it != img.conj.rend(); ++it)
                    tail.conj.push_back({it->curve, -it->exp});
            }
        }
        CurveExpr img = map_curve(l.curve.base);
        nl.curve.conj = tail.conj;
        nl.curve.conj.insert(nl.curve.conj.end(), img.conj.begin(), img.conj.end());
        nl.curve.base = img.base;
        nl.curve = normalize(nreg, nl.curve);
        r.letters.push_back(std::move(nl));
    }
    auto renumber = [&](int j) {
        int shift = 0;
        for (int rm : removed)
            if (rm < j)
                ++shift;
        return j - shift;
    };
    for (auto& [j, e] : f.target)
        if (!removed.count(j))
            r.target[renumber(j)] = e;
    return r;
}

/****************************************************************************
 * JSON
 ****************************************************************************/

namespace {

nlohmann::ordered_json expr_to_json(const Registry& reg, const CurveExpr& e)
{
    nlohmann::ordered_json j;
    j["base"] = reg->curve(e.base).name;
    nlohmann::ordered_json conj = nlohmann::ordered_json::array();
    for (const SignedLetter& l : e.conj) {
        nlohmann::ordered_json c;
        c["base"] = reg->curve(l.curve).name;
        c["conjugator"] = nlohmann::ordered_json::array();
        c["exp"] = l.exp;
        conj.push_back(std::move(c));
    }
    j["conjugator"] = conj;
    return j;
}

void flatten_conj(const Registry& reg, const nlohmann::json& item, int sign,
                  std::vector<SignedLetter>& out)
{
    // accepts nested conjugated letters and flattens w t_c^e w^-1
    std::vector<SignedLetter> w;
    if (item.contains("conjugator"))
        for (const auto& sub : item.at("conjugator"))
            flatten_conj(reg, sub, 1, w);
    int exp = item.value("exp", 1) * sign;
    out.insert(out.end(), w.begin(), w.end());
    out.push_back({reg->id(item.at("base").get<std::string>()), exp});
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back({it->curve, -it->exp});
}

} // namespace

std::string factorization_to_json(const Factorization& f)
{
    nlohmann::ordered_json j;
    j["schema"] = "lefkit-factorization/1";
    j["surface"] = {{"g", f.surface().genus}, {"p", f.surface().boundary}};
    nlohmann::ordered_json letters = nlohmann::ordered_json::array();
    for (const TwistLetter& l : f.letters) {
        nlohmann::ordered_json e = expr_to_json(f.reg, l.curve);
        e["exp"] = l.exp;
        letters.push_back(std::move(e));
    }
    j["letters"] = letters;
    nlohmann::ordered_json tgt = nlohmann::ordered_json::object();
    for (auto& [k, v] : f.target)
        tgt[std::to_string(k)] = v;
    j["target"] = tgt;
    if (!f.sections.empty()) {
        nlohmann::ordered_json s = nlohmann::ordered_json::array();
        for (const SectionRecord& rec : f.sections)
            s.push_back({{"multiplicity", rec.multiplicity},
                         {"self_intersection", rec.self_intersection}});
        j["sections"] = s;
    }
    j["taint"] = tier_name(f.taint);
    return j.dump(2);
}

Factorization factorization_from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    Surface s{j.at("surface").at("g").get<int>(), j.at("surface").at("p").get<int>()};
    Factorization f;
    f.reg = load_alphabet(s);
    for (const auto& item : j.at("letters")) {
        TwistLetter l;
        l.exp = item.value("exp", 1);
        l.curve.base = f.reg->id(item.at("base").get<std::string>());
        if (item.contains("conjugator"))
            for (const auto& sub : item.at("conjugator"))
                flatten_conj(f.reg, sub, 1, l.curve.conj);
        l.curve = normalize(f.reg, l.curve);
        f.letters.push_back(std::move(l));
    }
    if (j.contains("target"))
        for (auto it = j.at("target").begin(); it != j.at("target").end(); ++it)
            f.target[std::stoi(it.key())] = it.value().get<int>();
    if (j.contains("taint")) {
        std::string t = j.at("taint").get<std::string>();
        for (Tier tier : {Tier::Syntactic, Tier::Rewritten, Tier::HomologyOnly, Tier::Distinct})
            if (t == tier_name(tier))
                f.taint = tier;
    }
    if (j.contains("sections"))
        for (const auto& rec : j.at("sections"))
            f.sections.push_back({rec.at("multiplicity").get<int>(),
                                  rec.at("self_intersection").get<int>()});
    return f;
}

} // namespace lefkit
