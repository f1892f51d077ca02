#include "spin.hpp"

#include "linalg.hpp"

#include <sstream>

namespace lefkit {

namespace {

// mod-2 intersection pairing of basis vectors: <a_k, b_k> = 1, else 0
int basis_pairing_mod2(const Surface& s, int i, int j)
{
    if (i > j)
        std::swap(i, j);
    if (j < 2 * s.genus && i / 2 == j / 2 && i % 2 == 0 && j % 2 == 1)
        return 1;
    return 0;
}

std::uint64_t to_bits(const std::vector<int>& mod2)
{
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < mod2.size(); ++i)
        if (mod2[i] & 1)
            b |= std::uint64_t(1) << i;
    return b;
}

} // namespace

int QuadraticForm::evaluate(const std::vector<int>& mod2) const
{
    if (static_cast<int>(mod2.size()) != surface.rank())
        throw std::invalid_argument("QuadraticForm::evaluate: rank mismatch");
    int v = 0;
    const int n = surface.rank();
    for (int i = 0; i < n; ++i)
        if (mod2[static_cast<std::size_t>(i)] & 1)
            v ^= basis_values[static_cast<std::size_t>(i)] & 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((mod2[static_cast<std::size_t>(i)] & 1) && (mod2[static_cast<std::size_t>(j)] & 1))
                v ^= basis_pairing_mod2(surface, i, j);
    return v;
}

int QuadraticForm::evaluate(const HomologyClass& x) const
{
    if (!(x.surface == surface))
        throw std::invalid_argument("QuadraticForm::evaluate: surface mismatch");
    return evaluate(mod2_class(x));
}

std::string QuadraticForm::to_string() const
{
    std::ostringstream out;
    for (int b : basis_values)
        out << (b & 1);
    return out.str();
}

SolveOutcome solve_constraints(const Surface& s, const std::vector<SpinConstraint>& constraints)
{
    const int n = s.rank();
    if (n > 63)
        throw std::invalid_argument("solve_constraints: rank too large");
    GF2System sys;
    sys.unknowns = n;
    for (const SpinConstraint& c : constraints) {
        if (static_cast<int>(c.mod2_class.size()) != n)
            throw std::invalid_argument("solve_constraints: class length mismatch");
        // q(sum x_i e_i) = sum x_i q(e_i) + sum_{i<j} x_i x_j <e_i,e_j>
        int quad = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((c.mod2_class[static_cast<std::size_t>(i)] & 1) &&
                    (c.mod2_class[static_cast<std::size_t>(j)] & 1))
                    quad ^= basis_pairing_mod2(s, i, j);
        sys.rows.push_back(to_bits(c.mod2_class));
        sys.rhs.push_back((c.value ^ quad) & 1);
    }
    SolveOutcome out;
    std::vector<int> sol, cert;
    if (sys.solve(sol, cert)) {
        out.form = QuadraticForm{s, sol};
    } else {
        out.inconsistent = cert;
    }
    return out;
}

namespace {

std::vector<SpinConstraint> pencil_constraints(const Factorization& f, bool use_target_exponents)
{
    std::vector<SpinConstraint> cs;
    for (std::size_t k = 0; k < f.letters.size(); ++k) {
        HomologyClass c = expr_class(f.reg, f.letters[k].curve);
        cs.push_back({mod2_class(c), 1, "letter " + std::to_string(k + 1)});
    }
    const Surface s = f.surface();
    for (int j = 1; j <= s.boundary; ++j) {
        // the registry's boundary curve for index j
        for (int id = 0; id < f.reg->size(); ++id) {
            const NamedCurve& c = f.reg->curve(id);
            if (c.boundary_parallel && c.boundary_index == j) {
                int want = 1;
                if (use_target_exponents) {
                    auto it = f.target.find(j);
                    want = (it == f.target.end() ? 0 : it->second) & 1;
                }
                cs.push_back({mod2_class(c.z_class), want, c.name});
                break;
            }
        }
    }
    return cs;
}

} // namespace

SpinVerdict decide_spin(const Factorization& f)
{
    if (f.surface().boundary < 1)
        throw std::invalid_argument("decide_spin: needs a pencil; use decide_spin_sections");
    for (auto& [j, e] : f.target)
        if (e != 1)
            throw std::invalid_argument("decide_spin: target exponent != 1; use decide_spin_sections");
    if (static_cast<int>(f.target.size()) != f.surface().boundary)
        throw std::invalid_argument("decide_spin: not a pencil factorization");
    SpinVerdict v;
    v.constraints = pencil_constraints(f, false);
    SolveOutcome out = solve_constraints(f.surface(), v.constraints);
    if (out.form) {
        v.spin = true;
        v.witness = out.form;
    } else {
        v.spin = false;
        v.certificate = out.inconsistent;
    }
    return v;
}

SpinVerdict decide_spin_sections(const Factorization& f)
{
    if (f.surface().boundary < 1)
        throw std::invalid_argument("decide_spin_sections: needs boundary components");
    SpinVerdict v;
    v.constraints = pencil_constraints(f, true);
    SolveOutcome out = solve_constraints(f.surface(), v.constraints);
    if (out.form) {
        v.spin = true;
        v.witness = out.form;
    } else {
        v.spin = false;
        v.certificate = out.inconsistent;
    }
    return v;
}

std::vector<QuadraticForm> enumerate_forms(const Surface& s,
                                           const std::vector<SpinConstraint>& constraints)
{
    const int n = s.rank();
    if (n > 20)
        throw std::invalid_argument("enumerate_forms: rank too large for brute force");
    std::vector<QuadraticForm> out;
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
        QuadraticForm q{s, {}};
        q.basis_values.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            q.basis_values[static_cast<std::size_t>(i)] = static_cast<int>(v >> i & 1);
        bool ok = true;
        for (const SpinConstraint& c : constraints)
            if (q.evaluate(c.mod2_class) != (c.value & 1)) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(std::move(q));
    }
    return out;
}

} // namespace lefkit
