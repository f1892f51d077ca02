#include "linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace lefkit {

IMat to_int_mat(const RMat& m)
{
    IMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (denominator(m(i, j)) != 1)
                throw std::invalid_argument("to_int_mat: non-integral entry");
            r(i, j) = numerator(m(i, j));
        }
    return r;
}

RMat to_rat_mat(const IMat& m)
{
    RMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rat(m(i, j));
    return r;
}

RMat inverse(const RMat& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: not square");
    const std::size_t n = m.rows();
    RMat a = m;
    RMat inv = RMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0)
            ++piv;
        if (piv == n)
            throw std::invalid_argument("inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        Rat d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0)
                continue;
            Rat f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

RMat kernel_basis(const RMat& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    RMat a = m;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a(piv, c) == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(a(piv, j), a(r, j));
        Rat d = a(r, c);
        for (std::size_t j = 0; j < cols; ++j)
            a(r, j) /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0)
                continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < cols; ++j)
                a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col)
        is_pivot[c] = true;
    std::size_t free_count = cols - pivot_col.size();
    RMat basis(cols, free_count);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c])
            continue;
        basis(c, k) = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            basis(pivot_col[i], k) = -a(i, c);
        ++k;
    }
    return basis;
}

int symmetric_signature(RMat s)
{
    if (s.rows() != s.cols())
        throw std::invalid_argument("symmetric_signature: not square");
    const std::size_t n = s.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (s(i, j) != s(j, i))
                throw std::invalid_argument("symmetric_signature: not symmetric");

    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (s(i, i) == 0) {
            // find usable pivot: a later nonzero diagonal, else fold in a row
            // with s(i,j) != 0 so the diagonal becomes 2*s(i,j).
            std::size_t d = i;
            for (std::size_t j = i + 1; j < n; ++j)
                if (s(j, j) != 0) {
                    d = j;
                    break;
                }
            if (d != i) {
                for (std::size_t k = 0; k < n; ++k)
                    std::swap(s(i, k), s(d, k));
                for (std::size_t k = 0; k < n; ++k)
                    std::swap(s(k, i), s(k, d));
            } else {
                std::size_t j = i;
                for (std::size_t k = i + 1; k < n; ++k)
                    if (s(i, k) != 0) {
                        j = k;
                        break;
                    }
                if (j == i)
                    continue; // row and column are zero; contributes nothing
                for (std::size_t k = 0; k < n; ++k)
                    s(i, k) += s(j, k);
                for (std::size_t k = 0; k < n; ++k)
                    s(k, i) += s(k, j);
            }
        }
        if (s(i, i) == 0)
            continue;
        if (s(i, i) > 0)
            ++pos;
        else
            ++neg;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (s(i, j) == 0)
                continue;
            Rat f = s(i, j) / s(i, i);
            for (std::size_t k = 0; k < n; ++k)
                s(j, k) -= f * s(i, k);
            for (std::size_t k = 0; k < n; ++k)
                s(k, j) -= f * s(k, i);
        }
    }
    return pos - neg;
}

std::vector<Int> smith_normal_form(IMat m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t n = std::min(rows, cols);
    std::vector<Int> diag;

    std::size_t t = 0;
    while (t < n) {
        // locate smallest nonzero |entry| in the remaining block
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (m(i, j) == 0)
                    continue;
                Int v = abs(m(i, j));
                if (!found || v < best) {
                    found = true;
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (!found)
            break;
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(m(pi, j), m(t, j));
        for (std::size_t i = 0; i < rows; ++i)
            std::swap(m(i, pj), m(i, t));

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0)
                    continue;
                Int q = m(i, t) / m(t, t);
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) -= q * m(t, j);
                if (m(i, t) != 0) { // remainder smaller than pivot: swap up
                    for (std::size_t j = 0; j < cols; ++j)
                        std::swap(m(i, j), m(t, j));
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0)
                    continue;
                Int q = m(t, j) / m(t, t);
                for (std::size_t i = 0; i < rows; ++i)
                    m(i, j) -= q * m(i, t);
                if (m(t, j) != 0) {
                    for (std::size_t i = 0; i < rows; ++i)
                        std::swap(m(i, j), m(i, t));
                    dirty = true;
                }
            }
        }
        diag.push_back(abs(m(t, t)));
        ++t;
    }

    // enforce divisibility d_k | d_{k+1}
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j)
            if (diag[j] % diag[i] != 0) {
                Int a = diag[i], b = diag[j];
                Int g = gcd(a, b);
                diag[i] = g;
                diag[j] = a / g * b;
            }
    std::sort(diag.begin(), diag.end(), [](const Int& a, const Int& b) {
        return a < b;
    });
    while (diag.size() < n)
        diag.push_back(0);
    return diag;
}

namespace {

void gcd_reduce(std::vector<Int>& v)
{
    Int g = 0;
    for (const Int& x : v)
        g = gcd(g, x);
    if (g > 1)
        for (Int& x : v)
            x /= g;
}

} // namespace

IMat integer_kernel_basis(IMat m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> pivot_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(piv, j), m(r, j));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Int p = m(r, c), q = m(i, c);
            Int g = gcd(p, q);
            Int pp = p / g, qq = q / g;
            std::vector<Int> nr(cols);
            for (std::size_t j = 0; j < cols; ++j)
                nr[j] = pp * m(i, j) - qq * m(r, j);
            gcd_reduce(nr);
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = nr[j];
        }
        pivot_col.push_back(c);
        pivot_row.push_back(r);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col)
        is_pivot[c] = true;
    const std::size_t free_count = cols - pivot_col.size();
    IMat basis(cols, free_count);
    std::size_t k = 0;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        Int scale = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            scale = scale / gcd(scale, m(pivot_row[i], pivot_col[i])) *
                    m(pivot_row[i], pivot_col[i]); // lcm
        if (scale < 0)
            scale = -scale;
        std::vector<Int> v(cols);
        v[f] = scale;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = -m(pivot_row[i], f) * (scale / m(pivot_row[i], pivot_col[i]));
        gcd_reduce(v);
        for (std::size_t j = 0; j < cols; ++j)
            basis(j, k) = v[j];
        ++k;
    }
    return basis;
}

int integer_symmetric_signature(IMat s)
{
    const std::size_t n = s.rows();
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (s(i, i) == 0) {
            std::size_t d = i;
            for (std::size_t j = i + 1; j < n; ++j)
                if (s(j, j) != 0) {
                    d = j;
                    break;
                }
            if (d != i) {
                for (std::size_t k = 0; k < n; ++k)
                    std::swap(s(i, k), s(d, k));
                for (std::size_t k = 0; k < n; ++k)
                    std::swap(s(k, i), s(k, d));
            } else {
                std::size_t j = i;
                for (std::size_t k = i + 1; k < n; ++k)
                    if (s(i, k) != 0) {
                        j = k;
                        break;
                    }
                if (j == i)
                    continue;
                for (std::size_t k = 0; k < n; ++k)
                    s(i, k) += s(j, k);
                for (std::size_t k = 0; k < n; ++k)
                    s(k, i) += s(k, j);
            }
        }
        if (s(i, i) == 0)
            continue;
        if (s(i, i) > 0)
            ++pos;
        else
            ++neg;
        Int p = s(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (s(i, j) == 0)
                continue;
            Int q = s(i, j);
            // congruence: scale the j-th basis vector by p and subtract q
            // times the i-th; the diagonal rescales by p^2 > 0
            for (std::size_t k = 0; k < n; ++k)
                s(j, k) = p * s(j, k) - q * s(i, k);
            for (std::size_t k = 0; k < n; ++k)
                s(k, j) = p * s(k, j) - q * s(k, i);
            Int g = 0;
            for (std::size_t k = 0; k < n; ++k)
                g = gcd(g, s(j, k));
            if (g > 1) {
                // symmetric scaling of one basis vector: divide row and
                // column by g (diagonal by g^2 when possible, else leave)
                bool sq_ok = s(j, j) % (g * g) == 0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == j)
                        continue;
                    if (s(j, k) % g != 0 || s(k, j) % g != 0) {
                        sq_ok = false;
                        break;
                    }
                }
                if (sq_ok) {
                    for (std::size_t k = 0; k < n; ++k)
                        if (k != j) {
                            s(j, k) /= g;
                            s(k, j) /= g;
                        }
                    s(j, j) /= g * g;
                }
            }
        }
    }
    return pos - neg;
}

bool GF2System::solve(std::vector<int>& solution, std::vector<int>& certificate) const
{
    const std::size_t m = rows.size();
    const std::size_t prov_words = (m + 63) / 64;
    struct Row {
        std::uint64_t bits;
        int rhs;
        std::vector<std::uint64_t> prov;
    };
    std::vector<Row> work(m);
    for (std::size_t i = 0; i < m; ++i) {
        work[i].bits = rows[i];
        work[i].rhs = rhs[i] & 1;
        work[i].prov.assign(prov_words, 0);
        work[i].prov[i / 64] = std::uint64_t(1) << (i % 64);
    }

    std::vector<int> pivot_of(unknowns, -1);
    std::size_t r = 0;
    for (int c = 0; c < unknowns && r < m; ++c) {
        std::size_t piv = r;
        while (piv < m && !(work[piv].bits >> c & 1))
            ++piv;
        if (piv == m)
            continue;
        std::swap(work[piv], work[r]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || !(work[i].bits >> c & 1))
                continue;
            work[i].bits ^= work[r].bits;
            work[i].rhs ^= work[r].rhs;
            for (std::size_t w = 0; w < prov_words; ++w)
                work[i].prov[w] ^= work[r].prov[w];
        }
        pivot_of[c] = static_cast<int>(r);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i) {
        if (work[i].bits == 0 && work[i].rhs == 1) {
            certificate.clear();
            for (std::size_t k = 0; k < m; ++k)
                if (work[i].prov[k / 64] >> (k % 64) & 1)
                    certificate.push_back(static_cast<int>(k));
            return false;
        }
    }
    solution.assign(unknowns, 0);
    for (int c = 0; c < unknowns; ++c)
        if (pivot_of[c] >= 0)
            solution[c] = work[pivot_of[c]].rhs;
    return true;
}

std::vector<std::vector<int>> gf2_enumerate_solutions(const GF2System& sys)
{
    std::vector<std::vector<int>> out;
    if (sys.unknowns > 20)
        throw std::invalid_argument("gf2_enumerate_solutions: too many unknowns");
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << sys.unknowns); ++v) {
        bool ok = true;
        for (std::size_t i = 0; i < sys.rows.size() && ok; ++i) {
            int lhs = __builtin_parityll(sys.rows[i] & v);
            ok = lhs == (sys.rhs[i] & 1);
        }
        if (!ok)
            continue;
        std::vector<int> sol(sys.unknowns);
        for (int j = 0; j < sys.unknowns; ++j)
            sol[j] = static_cast<int>(v >> j & 1);
        out.push_back(std::move(sol));
    }
    return out;
}

} // namespace lefkit
