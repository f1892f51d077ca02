#include "invariants.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace lefkit {

const char* kodaira_name(Kodaira k)
{
    switch (k) {
    case Kodaira::MinusInfinity: return "-inf";
    case Kodaira::Zero: return "0";
    case Kodaira::One: return "1";
    case Kodaira::Two: return "2";
    case Kodaira::Undetermined: return "undetermined";
    }
    return "?";
}

int euler_characteristic(const Factorization& f)
{
    return 4 - 4 * f.surface().genus + static_cast<int>(f.letters.size()) - f.base_points();
}

int meyer_cocycle(const IMat& a, const IMat& b, const IMat& pairing)
{
    const std::size_t n = pairing.rows();
    if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
        throw std::invalid_argument("meyer_cocycle: dimension mismatch");
    if (a.transposed() * pairing * a != pairing || b.transposed() * pairing * b != pairing)
        throw std::invalid_argument("meyer_cocycle: input is not symplectic");

    // symplectic inverse: A^T J A = J and J^2 = -I give A^-1 = -J A^T J
    IMat a_inv = pairing * a.transposed() * pairing;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a_inv(i, j) = -a_inv(i, j);

    // V_{A,B} = { (x, y) : (A^-1 - I) x + (B - I) y = 0 }
    IMat m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int id = i == j ? 1 : 0;
            m(i, j) = a_inv(i, j) - id;
            m(i, n + j) = b(i, j) - id;
        }
    IMat kernel = integer_kernel_basis(std::move(m));
    const std::size_t d = kernel.cols();
    if (d == 0)
        return 0;

    // bilinear form ((x,y),(x',y')) -> (x+y)^T J (I - B) y', symmetrized;
    // integer scaling does not change the signature
    IMat jb(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            jb(i, j) = (i == j ? 1 : 0) - b(i, j);
    jb = pairing * jb;

    IMat g(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Int> xy(n);
        for (std::size_t i = 0; i < n; ++i)
            xy[i] = kernel(i, k) + kernel(n + i, k);
        std::vector<Int> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            Int v = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (jb(i, j) != 0)
                    v += xy[i] * jb(i, j);
            row[j] = v;
        }
        for (std::size_t l = 0; l < d; ++l) {
            Int v = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (row[j] != 0)
                    v += row[j] * kernel(n + j, l);
            g(k, l) = v;
        }
    }
    IMat s(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            s(i, j) = g(i, j) + g(j, i);
    int sig = integer_symmetric_signature(std::move(s));
    if (sig > static_cast<int>(n) || sig < -static_cast<int>(n))
        throw std::logic_error("meyer_cocycle: |tau| exceeds 2g");
    return sig;
}

std::pair<int, int> meyer_accumulation(const Factorization& closed)
{
    if (closed.surface().boundary != 0)
        throw std::invalid_argument("meyer_accumulation: closed fibration expected");
    const IMat j = pairing_matrix(closed.surface());
    int separating = 0;
    std::vector<IMat> rho;
    rho.reserve(closed.letters.size());
    for (const TwistLetter& l : closed.letters) {
        HomologyClass c = expr_class(closed.reg, l.curve);
        if (c.is_zero())
            ++separating;
        rho.push_back(transvection_matrix(c, l.exp));
    }
    int sum = 0;
    if (!rho.empty()) {
        IMat pi = rho.front();
        for (std::size_t k = 1; k < rho.size(); ++k) {
            sum += meyer_cocycle(pi, rho[k], j);
            pi = pi * rho[k];
        }
    }
    return {sum, separating};
}

int signature(const Factorization& f)
{
    const SignatureCalibration& cal = signature_calibration();
    Factorization closed = f.surface().boundary == 0 ? f : cap_factorization(f);
    auto [raw, separating] = meyer_accumulation(closed);
    int sigma = cal.epsilon * raw + cal.s_sep * separating;
    return sigma + f.base_points();
}

std::vector<Int> h1_total_space(const Factorization& f)
{
    Factorization closed = f.surface().boundary == 0 ? f : cap_factorization(f);
    const int n = closed.surface().rank();
    IMat m(static_cast<std::size_t>(n), closed.letters.size());
    for (std::size_t k = 0; k < closed.letters.size(); ++k) {
        HomologyClass c = expr_class(closed.reg, closed.letters[k].curve);
        for (int i = 0; i < n; ++i)
            m(static_cast<std::size_t>(i), k) = c.coeff[static_cast<std::size_t>(i)];
    }
    std::vector<Int> diag = smith_normal_form(std::move(m));
    std::vector<Int> factors;
    int nonzero = 0;
    for (const Int& d : diag)
        if (d != 0) {
            ++nonzero;
            if (d != 1)
                factors.push_back(d);
        }
    for (int k = 0; k < n - nonzero; ++k)
        factors.push_back(0);
    return factors;
}

Kodaira kodaira_dimension(int g, int n, int b_plus)
{
    if (g < 2)
        throw std::invalid_argument("kodaira_dimension: needs genus >= 2");
    if (n > 2 * g - 2)
        return Kodaira::MinusInfinity;
    if (n == 2 * g - 2 && b_plus != 1)
        return Kodaira::Zero;
    if (n == 2 * g - 3 && b_plus > 3)
        return Kodaira::One;
    return Kodaira::Undetermined;
}

int count_reducible(const Factorization& f)
{
    int count = 0;
    for (const TwistLetter& l : f.letters) {
        if (l.curve.conj.empty() && f.reg->curve(l.curve.base).boundary_parallel)
            continue;
        HomologyClass c = cap_boundaries(expr_class(f.reg, l.curve));
        if (c.is_zero())
            ++count;
    }
    return count;
}

std::pair<int, int> unchain_delta(int h)
{
    if (h < 1)
        throw std::invalid_argument("unchain_delta: h >= 1");
    return {-2 * h * (2 * h + 3), 2 * h * (h + 2)};
}

InvariantReport invariant_report(const Factorization& f, bool with_signature)
{
    InvariantReport r;
    r.taint = f.taint;
    r.euler = euler_characteristic(f);
    r.h1_invariant_factors = h1_total_space(f);
    r.b1 = 0;
    for (const Int& d : r.h1_invariant_factors)
        if (d == 0)
            ++r.b1;
    if (with_signature) {
        const SignatureCalibration& cal = signature_calibration();
        r.sign_convention = cal.epsilon;
        r.separating_term = cal.s_sep;
        r.signature = signature(f);
        int twice_bplus = r.euler - 2 + 2 * r.b1 + r.signature;
        if (twice_bplus % 2 != 0)
            throw std::logic_error("invariant_report: b+ is not an integer");
        r.b_plus = twice_bplus / 2;
        r.b_minus = r.b_plus - r.signature;
        if (2 - 2 * r.b1 + r.b_plus + r.b_minus != r.euler)
            throw std::logic_error("invariant_report: Betti identity fails");
    }
    r.reducible_count = count_reducible(f);
    if (f.surface().genus >= 2 && with_signature)
        r.kodaira = kodaira_dimension(f.surface().genus,
                                      f.is_pencil() ? f.surface().boundary : 0, r.b_plus);
    return r;
}

std::string InvariantReport::to_json() const
{
    nlohmann::ordered_json j;
    j["euler"] = euler;
    j["signature"] = signature;
    std::vector<std::string> h1;
    for (const Int& d : h1_invariant_factors)
        h1.push_back(d.str());
    j["h1_invariant_factors"] = h1;
    j["b1"] = b1;
    j["b_plus"] = b_plus;
    j["b_minus"] = b_minus;
    j["spin"] = spin;
    j["kodaira"] = kodaira_name(kodaira);
    j["reducible_count"] = reducible_count;
    j["taint"] = tier_name(taint);
    j["calibration"] = {{"epsilon", sign_convention}, {"s_sep", separating_term}};
    return j.dump(2);
}

} // namespace lefkit
