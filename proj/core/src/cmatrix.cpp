#include "drmsim/cmatrix.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace drmsim {

namespace {

void require_finite(std::span<const cplx> values) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument("CMatrix: non-finite entry");
        }
    }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

}  // namespace

cplx root_of_unity(long long k, long long n) {
    if (n <= 0) throw std::invalid_argument("root_of_unity: n must be positive");
    k %= n;
    if (k < 0) k += n;
    if ((4 * k) % n == 0) {
        switch ((4 * k) / n) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(phase), std::sin(phase)};
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("CMatrix: entry count does not match shape");
    }
    require_finite(data_);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("CMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> entries) {
    require_finite(entries);
    CMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

CMatrix CMatrix::column(std::span<const cplx> entries) {
    return CMatrix(entries.size(), 1, std::vector<cplx>(entries.begin(), entries.end()));
}

std::vector<cplx> CMatrix::col(std::size_t c) const {
    std::vector<cplx> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void CMatrix::set_col(std::size_t c, std::span<const cplx> values) {
    if (values.size() != rows_ || c >= cols_) {
        throw DimensionError("CMatrix::set_col: bad column");
    }
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, cplx scale) { return a *= scale; }
CMatrix operator*(cplx scale, CMatrix a) { return a *= scale; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

CMatrix transpose(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

cplx trace(const CMatrix& a) {
    if (!a.is_square()) throw DimensionError("trace: matrix is not square");
    cplx s{};
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

double trace_re(const CMatrix& a) { return trace(a).real(); }

double frob_norm_sq(const CMatrix& a) {
    double s = 0.0;
    for (const auto& v : a.entries()) s += std::norm(v);
    return s;
}

double re_trace_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("re_trace_product: shapes do not form a square product");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx p = a(i, k) * b(k, i);
            s += p.real();
        }
    return s;
}

CMatrix block_diagonal(std::span<const CMatrix> blocks) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    CMatrix out(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

CMatrix hstack(std::span<const CMatrix> blocks) {
    if (blocks.empty()) return {};
    const std::size_t rows = blocks.front().rows();
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw DimensionError("hstack: row count mismatch");
        cols += b.cols();
    }
    CMatrix out(rows, cols);
    std::size_t c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, c0 + j) = b(i, j);
        c0 += b.cols();
    }
    return out;
}

bool approx_eq(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (std::abs(ea[i].real() - eb[i].real()) > tol) return false;
        if (std::abs(ea[i].imag() - eb[i].imag()) > tol) return false;
    }
    return true;
}

bool is_permutation(const CMatrix& a, double tol) {
    if (!a.is_square()) return false;
    const std::size_t n = a.rows();
    std::vector<int> col_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        int row_count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const cplx v = a(i, j);
            if (std::abs(v - 1.0) <= tol) {
                ++row_count;
                ++col_count[j];
            } else if (std::abs(v) > tol) {
                return false;
            }
        }
        if (row_count != 1) return false;
    }
    for (int c : col_count)
        if (c != 1) return false;
    return true;
}

bool is_diagonal(const CMatrix& a, double tol) {
    if (!a.is_square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j && std::abs(a(i, j)) > tol) return false;
    return true;
}

bool is_unitary(const CMatrix& a, double tol) {
    if (!a.is_square()) return false;
    const CMatrix gram = matmul(a, adjoint(a));
    const double k = static_cast<double>(a.rows());
    return frob_norm_sq(gram - CMatrix::identity(a.rows())) < tol * k;
}

bool is_monomial_unit(const CMatrix& a, double tol) {
    if (!a.is_square()) return false;
    const std::size_t n = a.rows();
    std::vector<int> col_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        int row_count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double mag = std::abs(a(i, j));
            if (std::abs(mag - 1.0) <= tol) {
                ++row_count;
                ++col_count[j];
            } else if (mag > tol) {
                return false;
            }
        }
        if (row_count != 1) return false;
    }
    for (int c : col_count)
        if (c != 1) return false;
    return true;
}

std::string to_string(const CMatrix& a, int precision) {
    std::ostringstream os;
    os.precision(precision);
    os << "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx v = a(i, j);
            os << (j ? ", " : "") << v.real();
            if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "j";
        }
    }
    os << "]";
    return os.str();
}

}  // namespace drmsim
