#ifndef LEFKIT_LINALG_HPP
#define LEFKIT_LINALG_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lefkit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/****************************************************************************
 * Dense matrices over exact integers / rationals.
 *
 * Everything in this toolkit is small (rank <= 2g + p - 1 <= ~30), so the
 * representation is a plain row-major vector. No floating point anywhere:
 * signatures and invariant factors are integers and must come out exact.
 ****************************************************************************/

template <typename T>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator*(const Mat& o) const
    {
        if (cols_ != o.rows_)
            throw std::invalid_argument("Mat: dimension mismatch in product");
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& x = (*this)(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += x * o(k, j);
            }
        return r;
    }

    Mat transposed() const
    {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const
    {
        if (v.size() != cols_)
            throw std::invalid_argument("Mat: dimension mismatch in apply");
        std::vector<T> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0)
                    r[i] += (*this)(i, j) * v[j];
        return r;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IMat = Mat<Int>;
using RMat = Mat<Rat>;

IMat to_int_mat(const RMat&); // entries must be integral
RMat to_rat_mat(const IMat&);

/// Exact inverse of a nonsingular rational matrix (Gauss-Jordan).
RMat inverse(const RMat& m);

/// Basis of the right kernel of m, as columns of the returned matrix.
RMat kernel_basis(const RMat& m);

/// Signature (p - q) of a symmetric rational matrix, by exact congruence
/// diagonalization. Throws if the matrix is not symmetric.
int symmetric_signature(RMat s);

/// Smith normal form diagonal of an integer matrix: nonnegative d_1 | d_2 | ...
/// including trailing zeros up to min(rows, cols).
std::vector<Int> smith_normal_form(IMat m);

/// Basis of the rational right kernel of an integer matrix, as gcd-reduced
/// integer columns (fraction-free elimination).
IMat integer_kernel_basis(IMat m);

/// Signature of a symmetric integer matrix by integer congruence steps.
int integer_symmetric_signature(IMat s);

/****************************************************************************
 * GF(2) linear algebra on word-packed rows. Ranks here never exceed ~30,
 * so one 64-bit word per row block is plenty; provenance masks for
 * inconsistency certificates use a small vector of words.
 ****************************************************************************/

struct GF2System {
    int unknowns = 0;
    std::vector<std::uint64_t> rows;   // bit j = coefficient of unknown j
    std::vector<int> rhs;              // 0/1
    // Solve; returns true and writes a particular solution (free vars = 0).
    // On inconsistency returns false and writes the indices of input
    // equations whose sum is 0 = 1 into certificate.
    bool solve(std::vector<int>& solution, std::vector<int>& certificate) const;
};

/// All solutions by brute force (unknowns <= 20); used as a test oracle.
std::vector<std::vector<int>> gf2_enumerate_solutions(const GF2System& sys);

} // namespace lefkit

#endif
