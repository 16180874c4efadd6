#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace drmsim {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

// exp(2*pi*j*k/n), exact on the real and imaginary axes.
cplx root_of_unity(long long k, long long n);

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Dense row-major complex matrix. Sized for the small blocks used by the
// link simulator (K, N_r, N up to ~16), so everything is held by value.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const cplx> entries);
    static CMatrix column(std::span<const cplx> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> entries() noexcept { return data_; }
    std::span<const cplx> entries() const noexcept { return data_; }

    std::vector<cplx> col(std::size_t c) const;
    void set_col(std::size_t c, std::span<const cplx> values);

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx scale);

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, cplx scale);
CMatrix operator*(cplx scale, CMatrix a);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);

// Sum of the real parts of the diagonal.
double trace_re(const CMatrix& a);
cplx trace(const CMatrix& a);
double frob_norm_sq(const CMatrix& a);

// Re tr(a * b) without forming the product. Shapes: a is m x n, b is n x m.
double re_trace_product(const CMatrix& a, const CMatrix& b);

// Block-diagonal assembly of square or rectangular blocks.
CMatrix block_diagonal(std::span<const CMatrix> blocks);
CMatrix hstack(std::span<const CMatrix> blocks);

bool approx_eq(const CMatrix& a, const CMatrix& b, double tol = kDefaultTol);

// 0/1 entries with exactly one 1 per row and per column.
bool is_permutation(const CMatrix& a, double tol = kDefaultTol);
bool is_diagonal(const CMatrix& a, double tol = kDefaultTol);
bool is_unitary(const CMatrix& a, double tol = kDefaultTol);
// Exactly one nonzero per row and column, each of unit magnitude
// (a permutation times a unit-modulus diagonal).
bool is_monomial_unit(const CMatrix& a, double tol = kDefaultTol);

std::string to_string(const CMatrix& a, int precision = 4);

}  // namespace drmsim
