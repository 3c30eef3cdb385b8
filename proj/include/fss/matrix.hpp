#pragma once

#include "fss/field.hpp"

#include <cassert>
#include <vector>

namespace fss {

// Dense matrix over an exact field. Row-major storage.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Scalar(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& at(int r, int c) {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return a_[size_t(r) * cols_ + c];
    }
    const Scalar& at(int r, int c) const {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return a_[size_t(r) * cols_ + c];
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    std::vector<Scalar> col(int c) const {
        std::vector<Scalar> v(rows_);
        for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
        return v;
    }

    void set_col(int c, const std::vector<Scalar>& v) {
        assert(int(v.size()) == rows_);
        for (int r = 0; r < rows_; ++r) at(r, c) = v[r];
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

inline Matrix mul(const Field& F, const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.rows());
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (b.at(k, j) != 0) c.at(i, j) = F.reduce(c.at(i, j) + aik * b.at(k, j));
        }
    return c;
}

inline Matrix add(const Field& F, const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = F.add(a.at(i, j), b.at(i, j));
    return c;
}

inline Matrix sub(const Field& F, const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = F.sub(a.at(i, j), b.at(i, j));
    return c;
}

inline Matrix scale(const Field& F, const Scalar& s, const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = F.mul(s, a.at(i, j));
    return c;
}

inline Matrix neg(const Field& F, const Matrix& a) { return scale(F, Scalar(-1), a); }

inline std::vector<Scalar> apply(const Field& F, const Matrix& m, const std::vector<Scalar>& v) {
    assert(int(v.size()) == m.cols());
    std::vector<Scalar> out(m.rows(), Scalar(0));
    for (int i = 0; i < m.rows(); ++i) {
        Scalar acc(0);
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && v[j] != 0) acc += m.at(i, j) * v[j];
        out[i] = F.reduce(acc);
    }
    return out;
}

// [a | b] side by side.
inline Matrix hcat(const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows());
    Matrix c(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

// [a; b] stacked.
inline Matrix vcat(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.cols());
    Matrix c(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(a.rows() + i, j) = b.at(i, j);
    return c;
}

inline Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix c(int(rows.size()), int(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) c.at(int(i), int(j)) = m.at(rows[i], cols[j]);
    return c;
}

} // namespace fss
