#include "surface.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace lefkit {

namespace {

int a_index(int k) { return 2 * (k - 1); }
int b_index(int k) { return 2 * (k - 1) + 1; }
int delta_index(const Surface& s, int j) { return 2 * s.genus + (j - 1); }

void check_same_surface(const HomologyClass& x, const HomologyClass& y, const char* who)
{
    if (!(x.surface == y.surface))
        throw std::invalid_argument(std::string(who) + ": surface mismatch");
}

} // namespace

bool HomologyClass::is_zero() const
{
    for (const Int& c : coeff)
        if (c != 0)
            return false;
    return true;
}

HomologyClass zero_class(const Surface& s)
{
    return HomologyClass{s, std::vector<Int>(static_cast<std::size_t>(s.rank()))};
}

Int intersection_pairing(const HomologyClass& x, const HomologyClass& y)
{
    check_same_surface(x, y, "intersection_pairing");
    Int v = 0;
    for (int k = 1; k <= x.surface.genus; ++k)
        v += x.coeff[a_index(k)] * y.coeff[b_index(k)] - x.coeff[b_index(k)] * y.coeff[a_index(k)];
    return v; // delta coordinates lie in the radical
}

HomologyClass transvect(const HomologyClass& c, const HomologyClass& x)
{
    check_same_surface(c, x, "transvect");
    Int k = intersection_pairing(c, x);
    HomologyClass r = x;
    if (k != 0)
        for (std::size_t i = 0; i < r.coeff.size(); ++i)
            r.coeff[i] += k * c.coeff[i];
    return r;
}

HomologyClass transvect_inverse(const HomologyClass& c, const HomologyClass& x)
{
    check_same_surface(c, x, "transvect");
    Int k = intersection_pairing(c, x);
    HomologyClass r = x;
    if (k != 0)
        for (std::size_t i = 0; i < r.coeff.size(); ++i)
            r.coeff[i] -= k * c.coeff[i];
    return r;
}

IMat transvection_matrix(const HomologyClass& c, int exponent)
{
    const int n = c.surface.rank();
    IMat m = IMat::identity(n);
    // column j of the matrix is the image of basis vector e_j
    for (int j = 0; j < n; ++j) {
        HomologyClass e = zero_class(c.surface);
        e.coeff[j] = 1;
        HomologyClass img = exponent >= 0 ? transvect(c, e) : transvect_inverse(c, e);
        for (int i = 0; i < n; ++i)
            m(i, j) = img.coeff[i];
    }
    return m;
}

IMat pairing_matrix(const Surface& s)
{
    const int n = s.rank();
    IMat j(n, n);
    for (int k = 1; k <= s.genus; ++k) {
        j(a_index(k), b_index(k)) = 1;
        j(b_index(k), a_index(k)) = -1;
    }
    return j;
}

HomologyClass cap_boundaries(const HomologyClass& x)
{
    Surface closed{x.surface.genus, 0};
    HomologyClass r = zero_class(closed);
    for (int i = 0; i < 2 * x.surface.genus; ++i)
        r.coeff[i] = x.coeff[i];
    return r;
}

std::vector<int> mod2_class(const HomologyClass& x)
{
    std::vector<int> r(x.coeff.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = static_cast<int>(x.coeff[i] % 2 != 0);
    return r;
}

/****************************************************************************
 * CurveRegistry
 ****************************************************************************/

int CurveRegistry::add(NamedCurve c)
{
    if (static_cast<int>(c.z_class.coeff.size()) != surface_.rank() || !(c.z_class.surface == surface_))
        throw std::invalid_argument("CurveRegistry::add: class on wrong surface");
    c.separating = cap_boundaries(c.z_class).is_zero();
    int id = static_cast<int>(curves_.size());
    if (name_to_id_.count(c.name))
        throw std::invalid_argument("CurveRegistry::add: duplicate name " + c.name);
    name_to_id_[c.name] = id;
    curves_.push_back(std::move(c));
    return id;
}

void CurveRegistry::add_alias(const std::string& name, int id)
{
    if (name_to_id_.count(name))
        throw std::invalid_argument("CurveRegistry::add_alias: duplicate name " + name);
    name_to_id_[name] = id;
}

void CurveRegistry::register_geometric(int u, int v, int count)
{
    if (u > v)
        std::swap(u, v);
    auto it = geometric_.find({u, v});
    if (it != geometric_.end() && it->second != count)
        throw std::logic_error("CurveRegistry: conflicting geometric intersection for " +
                               curves_[u].name + ", " + curves_[v].name);
    Int alg = intersection_pairing(curves_[u].z_class, curves_[v].z_class);
    if (abs(alg) > count)
        throw std::logic_error("CurveRegistry: |algebraic| > geometric for " + curves_[u].name +
                               ", " + curves_[v].name);
    geometric_[{u, v}] = count;
}

bool CurveRegistry::has(const std::string& name) const { return name_to_id_.count(name) != 0; }

int CurveRegistry::id(const std::string& name) const
{
    auto it = name_to_id_.find(name);
    if (it == name_to_id_.end())
        throw std::invalid_argument("unknown curve '" + name + "' on this surface");
    return it->second;
}

const NamedCurve& CurveRegistry::curve(int id) const { return curves_.at(static_cast<std::size_t>(id)); }

int CurveRegistry::geometric(int u, int v) const
{
    if (u == v)
        return 0;
    if (u > v)
        std::swap(u, v);
    auto it = geometric_.find({u, v});
    return it == geometric_.end() ? -1 : it->second;
}

void CurveRegistry::add_axiom(CurveAxiom ax)
{
    // every axiom must hold on homology before it may be used for rewriting
    HomologyClass img = curves_.at(ax.base).z_class;
    for (auto it = ax.conjugator.rbegin(); it != ax.conjugator.rend(); ++it) {
        const HomologyClass& c = curves_.at(it->first).z_class;
        img = it->second >= 0 ? transvect(c, img) : transvect_inverse(c, img);
    }
    const HomologyClass& want = curves_.at(ax.result).z_class;
    bool same = img == want;
    if (!same) {
        HomologyClass neg = img;
        for (auto& co : neg.coeff)
            co = -co;
        same = neg == want;
    }
    if (!same)
        throw std::logic_error("CurveAxiom fails homology check: " + ax.provenance);
    axioms_.push_back(std::move(ax));
}

/****************************************************************************
 * pi1 words
 ****************************************************************************/

HomologyClass abelianize_pi1(const Surface& s, const std::string& word)
{
    Surface closed{s.genus, 0};
    HomologyClass r = zero_class(closed);
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) {
        int exp = 1;
        auto caret = tok.find('^');
        std::string head = tok;
        if (caret != std::string::npos) {
            head = tok.substr(0, caret);
            exp = std::stoi(tok.substr(caret + 1));
        }
        if (head.size() < 3 || head[1] != '_')
            throw std::invalid_argument("bad pi1 token: " + tok);
        int k = std::stoi(head.substr(2));
        if (head[0] == 'g') // gamma_k = prod of commutators, abelianizes to 0
            continue;
        if (k < 1 || k > s.genus)
            throw std::invalid_argument("pi1 token out of range: " + tok);
        int idx = head[0] == 'a' ? a_index(k) : b_index(k);
        if (head[0] != 'a' && head[0] != 'b')
            throw std::invalid_argument("bad pi1 token: " + tok);
        r.coeff[idx] += exp;
    }
    return r;
}

/****************************************************************************
 * Alphabet construction
 ****************************************************************************/

namespace {

struct Builder {
    Surface s;
    CurveRegistry* reg;
    int n; // half the boundary count when p is even

    HomologyClass cls() const { return zero_class(s); }

    HomologyClass basis(int idx) const
    {
        HomologyClass c = cls();
        c.coeff[idx] = 1;
        return c;
    }

    HomologyClass a(int k) const { return basis(a_index(k)); }
    HomologyClass b(int k) const { return basis(b_index(k)); }

    HomologyClass delta(int j) const
    {
        // 1-based boundary index; the last one is minus the sum of the others
        HomologyClass c = cls();
        if (s.boundary <= 1)
            return c; // a single boundary is null-homologous
        if (j < s.boundary) {
            c.coeff[delta_index(s, j)] = 1;
        } else {
            for (int i = 1; i < s.boundary; ++i)
                c.coeff[delta_index(s, i)] = -1;
        }
        return c;
    }

    HomologyClass delta_sum(int from, int to) const
    {
        HomologyClass c = cls();
        for (int j = from; j <= to; ++j)
            for (std::size_t i = 0; i < c.coeff.size(); ++i)
                c.coeff[i] += delta(j).coeff[i];
        return c;
    }

    HomologyClass chain(int i) const
    {
        // classes of the chain c_1..c_{2g+1}; the last one closes up through
        // the delta side of the pants decomposition
        const int g = s.genus;
        if (i == 2 * g + 1) {
            HomologyClass c = a(g);
            for (int j = 1; j <= s.boundary / 2; ++j)
                for (std::size_t t = 0; t < c.coeff.size(); ++t)
                    c.coeff[t] -= delta(j).coeff[t];
            return c;
        }
        if (i % 2 == 0)
            return b(i / 2);
        if (i == 1)
            return a(1);
        HomologyClass c = a((i + 1) / 2);
        const HomologyClass lower = a((i - 1) / 2);
        for (std::size_t t = 0; t < c.coeff.size(); ++t)
            c.coeff[t] -= lower.coeff[t];
        return c;
    }

    int add(const std::string& name, HomologyClass z, std::optional<std::string> pi1 = {})
    {
        NamedCurve c;
        c.name = name;
        c.z_class = std::move(z);
        if (pi1)
            c.pi1_word = oriented_word(*pi1, c.z_class);
        return reg->add(std::move(c));
    }

    // words are stored oriented to match the stored class exactly
    std::string oriented_word(const std::string& word, const HomologyClass& z) const
    {
        HomologyClass ab = abelianize_pi1(s, word);
        HomologyClass capped = cap_boundaries(z);
        if (ab == capped)
            return word;
        HomologyClass neg = ab;
        for (auto& co : neg.coeff)
            co = -co;
        if (neg != capped)
            throw std::logic_error("pi1 word does not abelianize to +-class");
        return invert_word(word);
    }

    static std::string invert_word(const std::string& w)
    {
        std::istringstream in(w);
        std::vector<std::string> toks;
        std::string t;
        while (in >> t)
            toks.push_back(t);
        std::string out;
        for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
            std::string tok = *it;
            auto caret = tok.find('^');
            if (caret == std::string::npos)
                tok += "^-1";
            else {
                int e = std::stoi(tok.substr(caret + 1));
                tok = tok.substr(0, caret);
                if (e != -1)
                    tok += "^" + std::to_string(-e);
            }
            if (!out.empty())
                out += " ";
            out += tok;
        }
        return out;
    }
};

// planar P-side model: curves are identified with the set of holes they
// enclose inside the region bounded by a, b and the unprimed (or primed)
// boundary components; two such curves are disjoint iff their hole sets are
// nested, disjoint or complementary, and meet in two points otherwise.
struct PlanarSide {
    std::set<int> universe;                           // hole ids
    std::map<int, std::set<int>> curve_holes;         // curve id -> holes

    static bool subset(const std::set<int>& x, const std::set<int>& y)
    {
        return std::includes(y.begin(), y.end(), x.begin(), x.end());
    }

    int intersections(int u, int v) const
    {
        const auto& su = curve_holes.at(u);
        const auto& sv = curve_holes.at(v);
        std::set<int> inter;
        std::set_intersection(su.begin(), su.end(), sv.begin(), sv.end(),
                              std::inserter(inter, inter.begin()));
        std::set<int> uni;
        std::set_union(su.begin(), su.end(), sv.begin(), sv.end(), std::inserter(uni, uni.begin()));
        if (inter.empty() || subset(su, sv) || subset(sv, su) || uni == universe)
            return 0;
        return 2;
    }
};

} // namespace

namespace {
std::shared_ptr<const CurveRegistry> build_alphabet(Surface s);
} // namespace

std::shared_ptr<const CurveRegistry> load_alphabet(Surface s)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const CurveRegistry>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(s.genus, s.boundary);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto reg = build_alphabet(s);
    cache[key] = reg;
    return reg;
}

namespace {

std::shared_ptr<const CurveRegistry> build_alphabet(Surface s)
{
    if (s.genus < 0 || s.boundary < 0)
        throw std::invalid_argument("load_alphabet: bad surface");
    auto reg = std::make_shared<CurveRegistry>(s);
    Builder B{s, reg.get(), s.boundary / 2};
    const int g = s.genus;
    const int p = s.boundary;
    const int n = p / 2;

    // boundary curves
    std::vector<int> delta_id(p + 1, -1);
    for (int j = 1; j <= p; ++j) {
        std::string name;
        if (p == 2 * n && n > 0)
            name = j <= n ? "delta_" + std::to_string(j) : "delta'_" + std::to_string(j - n);
        else
            name = "delta_" + std::to_string(j);
        NamedCurve c;
        c.name = name;
        c.z_class = B.delta(j);
        c.boundary_parallel = true;
        c.boundary_index = j;
        delta_id[j] = reg->add(std::move(c));
    }

    // chain curves
    std::vector<int> c_id(2 * g + 2, -1);
    for (int i = 1; i <= 2 * g + 1 && g >= 1; ++i) {
        std::optional<std::string> pi1;
        if (i == 1)
            pi1 = "a_1";
        else if (i == 2)
            pi1 = "b_1";
        else if (i == 3 && g >= 2)
            pi1 = "b_1 a_1^-1 b_1^-1 a_2";
        c_id[i] = B.add("c_" + std::to_string(i), B.chain(i), pi1);
    }

    int a_id = -1, ap_id = -1, b_id = -1, bp_id = -1;
    if (g >= 2) {
        a_id = B.add("a", B.a(2), std::string("a_2"));
        ap_id = B.add("a'", B.a(2), std::string("a_1 b_1 a_1^-1 b_1^-1 a_2"));
    }
    if (g >= 3) {
        if (p == 0) {
            // capping the pants between a and b turns it into an annulus, so
            // the closed surface sees b as a and b' as a'
            b_id = a_id;
            bp_id = ap_id;
            reg->add_alias("b", a_id);
            reg->add_alias("b'", ap_id);
        } else {
            // the pants bounded by a, b and the delta side gives
            // b = a_2 - (delta_1 + ... + delta_n); b' is the same vector
            // since the primed boundary classes sum to the negative
            HomologyClass bc = B.a(2);
            for (std::size_t t = 0; t < bc.coeff.size(); ++t)
                bc.coeff[t] -= B.delta_sum(1, n).coeff[t];
            b_id = B.add("b", bc);
            bp_id = B.add("b'", bc);
        }
    }

    // d_j, e_j as transvection images of c_j along the three preceding chain
    // curves; pi1 words from the monodromy computation, oriented to match.
    auto de_word = [&](bool is_d, int j) -> std::string {
        auto A = [](int k) { return "a_" + std::to_string(k); };
        auto Bw = [](int k) { return "b_" + std::to_string(k); };
        auto G = [](int k) { return "g_" + std::to_string(k); };
        std::ostringstream w;
        if (j % 2 == 0) {
            int k = j / 2;
            if (is_d) {
                w << Bw(k) << " " << A(k) << "^-1 " << Bw(k - 1);
                if (k - 2 >= 1)
                    w << " " << Bw(k - 2) << " " << A(k - 2) << " " << Bw(k - 2) << "^-1";
            } else {
                w << G(k) << " " << A(k) << " " << Bw(k) << " " << Bw(k - 1);
                if (k - 2 >= 1)
                    w << " " << A(k - 2) << "^-1 " << G(k - 2) << "^-1";
            }
        } else {
            int k = (j - 1) / 2;
            if (is_d) {
                if (k + 1 <= g)
                    w << A(k + 1) << "^-1 ";
                w << Bw(k) << " " << Bw(k - 1) << " " << A(k - 1);
            } else {
                w << G(k + 1) << " ";
                if (k + 1 <= g)
                    w << A(k + 1) << " ";
                w << Bw(k) << " " << Bw(k - 1);
                if (k - 1 >= 1)
                    w << " " << A(k - 1) << "^-1 " << G(k - 1) << "^-1";
            }
        }
        return w.str();
    };

    std::vector<int> d_id(2 * g + 2, -1), e_id(2 * g + 2, -1);
    for (int j = 4; j <= 2 * g + 1 && g >= 2; ++j) {
        HomologyClass dj = B.chain(j), ej = B.chain(j);
        for (int t = j - 1; t >= j - 3; --t) {
            dj = transvect_inverse(B.chain(t), dj);
            ej = transvect(B.chain(t), ej);
        }
        std::vector<std::pair<int, int>> dword = {{c_id[j - 3], -1}, {c_id[j - 2], -1},
                                                  {c_id[j - 1], -1}};
        std::vector<std::pair<int, int>> eword = {{c_id[j - 3], 1}, {c_id[j - 2], 1},
                                                  {c_id[j - 1], 1}};
        NamedCurve dc;
        dc.name = "d_" + std::to_string(j);
        dc.z_class = dj;
        dc.pi1_word = B.oriented_word(de_word(true, j), dj);
        dc.defining_word = dword;
        dc.defining_base = c_id[j];
        d_id[j] = reg->add(std::move(dc));
        NamedCurve ec;
        ec.name = "e_" + std::to_string(j);
        ec.z_class = ej;
        ec.pi1_word = B.oriented_word(de_word(false, j), ej);
        ec.defining_word = eword;
        ec.defining_base = c_id[j];
        e_id[j] = reg->add(std::move(ec));
        // their defining identities feed the rewrite search
        reg->add_axiom({dword, c_id[j], d_id[j],
                        "d_j = t_{c_{j-3}}^{-1}t_{c_{j-2}}^{-1}t_{c_{j-1}}^{-1}(c_j)"});
        reg->add_axiom({eword, c_id[j], e_id[j], "e_j = t_{c_{j-3}}t_{c_{j-2}}t_{c_{j-1}}(c_j)"});
    }

    // planar curves on the two multi-hole sides (p = 2n >= 2)
    std::vector<int> x_id(n + 1, -1), xp_id(n + 1, -1);
    std::vector<int> y_id(n, -1), yp_id(n, -1), z_id(n + 1, -1), zp_id(n + 1, -1);
    if (n >= 1 && g >= 2) {
        for (int k = 1; k <= n; ++k) {
            if (k == 1 && n == 1 && b_id >= 0) {
                // on S_g^2 the curves x_1, x'_1 are b, b' themselves
                x_id[1] = b_id;
                xp_id[1] = bp_id;
                reg->add_alias("x_1", b_id);
                reg->add_alias("x'_1", bp_id);
                continue;
            }
            HomologyClass xk = B.a(2);
            for (std::size_t t = 0; t < xk.coeff.size(); ++t)
                xk.coeff[t] -= B.delta(k).coeff[t];
            x_id[k] = B.add("x_" + std::to_string(k), xk);
            HomologyClass xpk = B.a(2);
            for (std::size_t t = 0; t < xpk.coeff.size(); ++t)
                xpk.coeff[t] += B.delta(n + k).coeff[t];
            xp_id[k] = B.add("x'_" + std::to_string(k), xpk);
        }
        for (int k = 1; k <= n - 1; ++k) {
            if (k == n - 1) { // y_{n-1} is the curve x_n
                y_id[k] = x_id[n];
                reg->add_alias("y_" + std::to_string(k), x_id[n]);
                yp_id[k] = xp_id[n];
                reg->add_alias("y'_" + std::to_string(k), xp_id[n]);
            } else {
                HomologyClass yk = B.a(2);
                for (std::size_t t = 0; t < yk.coeff.size(); ++t)
                    yk.coeff[t] -= B.delta_sum(k + 1, n).coeff[t];
                y_id[k] = B.add("y_" + std::to_string(k), yk);
                HomologyClass ypk = B.a(2);
                for (std::size_t t = 0; t < ypk.coeff.size(); ++t)
                    ypk.coeff[t] += B.delta_sum(n + k + 1, 2 * n).coeff[t];
                yp_id[k] = B.add("y'_" + std::to_string(k), ypk);
            }
        }
        for (int k = 1; k <= n; ++k) {
            if (k == n) { // z_n is boundary-parallel
                z_id[k] = delta_id[n];
                zp_id[k] = delta_id[2 * n];
                reg->add_alias("z_" + std::to_string(k), delta_id[n]);
                reg->add_alias("z'_" + std::to_string(k), delta_id[2 * n]);
            } else {
                z_id[k] = B.add("z_" + std::to_string(k), B.delta_sum(k, n));
                zp_id[k] = B.add("z'_" + std::to_string(k), B.delta_sum(n + k, 2 * n));
            }
        }
        if (b_id >= 0) { // the level-one lantern sees b and b' as y_0, y'_0
            reg->add_alias("y_0", b_id);
            reg->add_alias("y'_0", bp_id);
        }
    }

    // x''_1 = (t_{d_4} t_{d_5})^{-1}(x'_1)
    int xpp_id = -1;
    if (n >= 1 && g >= 3) {
        HomologyClass v = reg->curve(xp_id[1]).z_class;
        v = transvect_inverse(reg->curve(d_id[4]).z_class, v);
        v = transvect_inverse(reg->curve(d_id[5]).z_class, v);
        NamedCurve c;
        c.name = "x''_1";
        c.z_class = v;
        c.defining_word = {{d_id[5], -1}, {d_id[4], -1}};
        c.defining_base = xp_id[1];
        xpp_id = reg->add(std::move(c));
    }

    // genus-3 closed-surface lantern alphabet
    if (g == 3 && p == 0) {
        auto diff = [&](HomologyClass u, const HomologyClass& v) {
            for (std::size_t t = 0; t < u.coeff.size(); ++t)
                u.coeff[t] -= v.coeff[t];
            return u;
        };
        auto sum = [&](HomologyClass u, const HomologyClass& v) {
            for (std::size_t t = 0; t < u.coeff.size(); ++t)
                u.coeff[t] += v.coeff[t];
            return u;
        };
        int xg = B.add("x", sum(B.a(1), B.a(2)), std::string("a_1 a_2"));
        int xgp = B.add("x'", sum(B.a(2), B.a(3)));
        int yg = B.add("y", diff(B.a(3), B.a(1)));
        int ygp = B.add("y'", diff(B.a(3), B.a(1)));
        int zg = B.add("z", diff(sum(B.a(1), B.a(3)), B.a(2)));
        int zgp = B.add("z'", diff(sum(B.a(1), B.a(3)), B.a(2)));
        int sg = B.add("s", B.cls());
        int sgp = B.add("s'", B.cls());
        int vg = B.add("v", B.cls());
        int wg = B.add("w", B.a(2));

        // lantern incidence from Figure 8: interior triples meet pairwise in
        // two points, everything else in the five configurations is disjoint
        auto two = [&](int u, int v2) { reg->register_geometric(u, v2, 2); };
        auto zero = [&](int u, int v2) { reg->register_geometric(u, v2, 0); };
        // L_1 = {a', c_1, c_1, a | c_3, s, x}
        two(c_id[3], sg);
        two(c_id[3], xg);
        two(sg, xg);
        for (int bdy : {a_id, ap_id, c_id[1]})
            for (int in : {sg, xg})
                zero(bdy, in);
        zero(c_id[1], c_id[3]); // already chain data, harmless
        // L'_1 = {c_7, a, a', c_7 | c_5, s', x'}
        two(c_id[5], sgp);
        two(c_id[5], xgp);
        two(sgp, xgp);
        for (int bdy : {a_id, ap_id, c_id[7]})
            for (int in : {sgp, xgp})
                zero(bdy, in);
        // L_2 = {c_1, c_3, c_5, c_7 | a, y, z}, L'_2 with a', y', z'
        two(a_id, yg);
        two(a_id, zg);
        two(yg, zg);
        two(ap_id, ygp);
        two(ap_id, zgp);
        two(ygp, zgp);
        for (int odd : {1, 3, 5, 7})
            for (int in : {yg, zg, ygp, zgp})
                zero(c_id[odd], in);
        // L_3 = {a, a, s, s' | a', v, w}
        two(ap_id, vg);
        two(ap_id, wg);
        two(vg, wg);
        zero(sg, sgp);
        for (int bdy : {a_id, sg, sgp})
            for (int in : {vg, wg})
                zero(bdy, in);
        zero(ap_id, sg);
        zero(ap_id, sgp);
        // the two complementary four-holed spheres keep their interiors apart
        for (int u : {xg, sg, yg, zg, a_id})
            for (int v2 : {xgp, sgp, ygp, zgp, ap_id})
                zero(u, v2);
        zero(xg, c_id[5]);
        zero(xgp, c_id[1]);
        zero(sg, c_id[5]);
        zero(sgp, c_id[1]);
        zero(sg, c_id[7]);
        zero(sgp, c_id[3]);
        zero(xg, c_id[7]);
        zero(xgp, c_id[3]);
        (void)wg;
        (void)vg;
    }

    // braiding-lantern interior curves (outputs of the braided substitutions).
    // On S_3^0 the first triple is already present as x, s, c_3.
    auto add_or_get = [&](const std::string& name, const HomologyClass& cl) {
        if (reg->has(name))
            return reg->id(name);
        NamedCurve nc;
        nc.name = name;
        nc.z_class = cl;
        return reg->add(std::move(nc));
    };
    if (g >= 2) {
        auto sum2 = [&](HomologyClass u, const HomologyClass& v, int sgn) {
            for (std::size_t t = 0; t < u.coeff.size(); ++t)
                u.coeff[t] += sgn * v.coeff[t];
            return u;
        };
        if (!(g == 3 && p == 0)) {
            add_or_get("x", sum2(B.a(1), B.a(2), +1));
            add_or_get("y", B.cls());
            add_or_get("z", sum2(B.a(1), B.a(2), -1));
        }
        if (g >= 3) {
            HomologyClass ypb = B.a(3);
            HomologyClass zpb = sum2(sum2(B.a(1), B.a(2), +1), B.a(3), -1);
            HomologyClass xpb = sum2(B.a(1), B.a(2), -1);
            if (g == 3 && p == 0) {
                B.add("xb", xpb);
                B.add("yb", ypb);
                B.add("zb", zpb);
            } else {
                add_or_get("x'", xpb);
                add_or_get("y'", ypb);
                add_or_get("z'", zpb);
            }
        }
        // braiding at c_3 (used by the odd-genus section-free fibrations)
        HomologyClass u3 = sum2(B.cls(), B.a(2), +2);
        u3 = sum2(u3, B.a(1), -1);
        add_or_get("x_c3", u3);
        add_or_get("y_c3", B.cls());
        add_or_get("z_c3", B.a(1));
    }

    /* geometric intersection data */

    // chain pattern
    for (int i = 1; i <= 2 * g + 1 && g >= 1; ++i)
        for (int j = i + 1; j <= 2 * g + 1; ++j)
            reg->register_geometric(c_id[i], c_id[j], j - i == 1 ? 1 : 0);

    // boundary curves are disjoint from everything
    for (int j = 1; j <= p; ++j)
        for (int u = 0; u < reg->size(); ++u)
            if (u != delta_id[j])
                reg->register_geometric(delta_id[j], u, 0);

    // a, a', b, b' against the chain
    for (int id : {a_id, ap_id, b_id, bp_id}) {
        if (id < 0)
            continue;
        for (int i = 1; i <= 2 * g + 1; ++i)
            reg->register_geometric(id, c_id[i], i == 4 ? 1 : 0);
    }
    if (a_id >= 0)
        reg->register_geometric(a_id, ap_id, 0);
    if (b_id >= 0) {
        reg->register_geometric(b_id, bp_id, 0);
        for (int id : {a_id, ap_id}) {
            reg->register_geometric(id, b_id, 0);
            reg->register_geometric(id, bp_id, 0);
        }
    }

    // the planar sides: holes are a(0), b(1), delta_j (j+1); a curve around a
    // hole set; the b-parallel curve is the complement of everything else
    if (n >= 1 && g >= 2) {
        for (int side = 0; side < 2; ++side) {
            PlanarSide P;
            P.universe.insert(0);
            P.universe.insert(1);
            for (int j = 1; j <= n; ++j)
                P.universe.insert(1 + j);
            auto hole = [&](int j) { return 1 + j; }; // delta_j within this side
            int aa = side == 0 ? a_id : ap_id;
            int bb = side == 0 ? b_id : bp_id;
            if (aa >= 0)
                P.curve_holes[aa] = {0};
            if (bb >= 0)
                P.curve_holes[bb] = {1};
            auto xs = side == 0 ? x_id : xp_id;
            auto ys = side == 0 ? y_id : yp_id;
            auto zs = side == 0 ? z_id : zp_id;
            for (int k = 1; k <= n; ++k)
                P.curve_holes[xs[k]] = {0, hole(k)};
            for (int k = 1; k <= n - 1; ++k) {
                std::set<int> h{0};
                for (int j = k + 1; j <= n; ++j)
                    h.insert(hole(j));
                P.curve_holes[ys[k]] = h;
            }
            for (int k = 1; k <= n - 1; ++k) {
                std::set<int> h;
                for (int j = k; j <= n; ++j)
                    h.insert(hole(j));
                P.curve_holes[zs[k]] = h;
            }
            std::vector<int> members;
            for (auto& [cid, _] : P.curve_holes)
                members.push_back(cid);
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j)
                    reg->register_geometric(members[i], members[j],
                                            P.intersections(members[i], members[j]));
            // curves of one side are disjoint from the whole other side and
            // from the genus pieces
            for (int cid : members) {
                if (cid == aa || cid == bb)
                    continue;
                for (int i = 1; i <= 2 * g + 1; ++i)
                    if (i <= 3 || i >= 5)
                        reg->register_geometric(cid, c_id[i], 0);
            }
        }
        // opposite sides never meet
        for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l) {
                reg->register_geometric(x_id[k], xp_id[l], 0);
                if (l <= n - 1)
                    reg->register_geometric(x_id[k], zp_id[l], 0);
                if (k <= n - 1)
                    reg->register_geometric(z_id[k], xp_id[l], 0);
                if (k <= n - 1 && l <= n - 1) {
                    reg->register_geometric(z_id[k], zp_id[l], 0);
                    reg->register_geometric(y_id[k], yp_id[l], 0);
                    reg->register_geometric(y_id[k], zp_id[l], 0);
                    reg->register_geometric(z_id[k], yp_id[l], 0);
                }
                if (l <= n - 1)
                    reg->register_geometric(x_id[k], yp_id[l], 0);
                if (k <= n - 1)
                    reg->register_geometric(y_id[k], xp_id[l], 0);
            }
        if (b_id >= 0)
            for (int k = 1; k <= n; ++k) {
                reg->register_geometric(b_id, xp_id[k], 0);
                reg->register_geometric(bp_id, x_id[k], 0);
                if (k <= n - 1) {
                    reg->register_geometric(b_id, yp_id[k], 0);
                    reg->register_geometric(b_id, zp_id[k], 0);
                    reg->register_geometric(bp_id, y_id[k], 0);
                    reg->register_geometric(bp_id, z_id[k], 0);
                }
            }
        if (a_id >= 0)
            for (int k = 1; k <= n; ++k) {
                reg->register_geometric(a_id, xp_id[k], 0);
                reg->register_geometric(ap_id, x_id[k], 0);
                if (k <= n - 1) {
                    reg->register_geometric(a_id, yp_id[k], 0);
                    reg->register_geometric(a_id, zp_id[k], 0);
                    reg->register_geometric(ap_id, y_id[k], 0);
                    reg->register_geometric(ap_id, z_id[k], 0);
                }
            }
    }

    // Figure 11 data: x''_1 is disjoint from the curves it co-bounds the
    // six-holed sphere with
    if (xpp_id >= 0) {
        reg->register_geometric(xpp_id, c_id[1], 0);
        reg->register_geometric(xpp_id, c_id[5], 0);
        reg->register_geometric(xpp_id, x_id[1], 0);
    }

    /* certified identities declared in the paper */
    if (g == 3) {
        for (int i = 1; i <= 3; ++i) {
            CurveAxiom ax;
            ax.conjugator = {{d_id[4], 1}, {d_id[5], 1}, {d_id[6], 1}, {d_id[7], 1}};
            ax.base = c_id[i + 4];
            ax.result = c_id[i];
            ax.provenance = "t_{d_4}t_{d_5}t_{d_6}t_{d_7}(c_{i+4}) = c_i";
            reg->add_axiom(std::move(ax));
        }
    }
    if (g >= 3) {
        CurveAxiom ax;
        ax.conjugator = {{e_id[5], 1}, {e_id[4], 1}};
        ax.base = c_id[1];
        ax.result = c_id[5];
        ax.provenance = "c_5 = (t_{e_5}t_{e_4})(c_1)";
        reg->add_axiom(std::move(ax));
    }
    if (xpp_id >= 0) {
        CurveAxiom ax;
        ax.conjugator = {{d_id[5], -1}, {d_id[4], -1}};
        ax.base = xp_id[1];
        ax.result = xpp_id;
        ax.provenance = "x''_1 = (t_{d_4}t_{d_5})^{-1}(x'_1)";
        reg->add_axiom(std::move(ax));
    }

    return reg;
}

} // namespace

std::string registry_to_json(const CurveRegistry& reg)
{
    nlohmann::ordered_json j;
    j["schema"] = "lefkit-registry/1";
    j["surface"] = {{"g", reg.surface().genus}, {"p", reg.surface().boundary}};
    nlohmann::ordered_json curves = nlohmann::ordered_json::array();
    for (int i = 0; i < reg.size(); ++i) {
        const NamedCurve& c = reg.curve(i);
        nlohmann::ordered_json e;
        e["name"] = c.name;
        std::vector<long long> z;
        for (const Int& v : c.z_class.coeff)
            z.push_back(v.convert_to<long long>());
        e["z_class"] = z;
        if (c.pi1_word)
            e["pi1_word"] = *c.pi1_word;
        e["separating"] = c.separating;
        if (c.boundary_parallel)
            e["boundary_index"] = c.boundary_index;
        nlohmann::ordered_json inter = nlohmann::ordered_json::object();
        for (int k = 0; k < reg.size(); ++k) {
            if (k == i)
                continue;
            int v = reg.geometric(i, k);
            if (v >= 0)
                inter[reg.curve(k).name] = v;
        }
        e["intersections"] = inter;
        curves.push_back(std::move(e));
    }
    j["curves"] = curves;
    return j.dump(2);
}

} // namespace lefkit
