#pragma once

#include "fss/matrix.hpp"

#include <optional>
#include <utility>

namespace fss {

struct flag_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Rref {
    Matrix m;                    // reduced row echelon form
    std::vector<int> pivot_cols; // one per nonzero row, increasing
    int rank = 0;
};

// Gauss-Jordan with deterministic pivoting: first nonzero entry scanning
// rows top to bottom within the leftmost unfinished column.
inline Rref rref(const Field& F, Matrix m) {
    Rref out;
    int rows = m.rows(), cols = m.cols(), lead = 0;
    for (int c = 0; c < cols && lead < rows; ++c) {
        int piv = -1;
        for (int r = lead; r < rows; ++r)
            if (m.at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != lead)
            for (int j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(lead, j));
        Scalar inv = F.inv(m.at(lead, c));
        for (int j = c; j < cols; ++j) m.at(lead, j) = F.mul(inv, m.at(lead, j));
        for (int r = 0; r < rows; ++r) {
            if (r == lead || m.at(r, c) == 0) continue;
            Scalar f = m.at(r, c);
            for (int j = c; j < cols; ++j) m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(lead, j)));
        }
        out.pivot_cols.push_back(c);
        ++lead;
    }
    out.rank = int(out.pivot_cols.size());
    out.m = std::move(m);
    return out;
}

inline int rank(const Field& F, const Matrix& m) { return rref(F, m).rank; }

// Nullspace basis from the reduced echelon form; one column per free
// variable, in ascending free-column order. Deterministic and canonical.
inline Matrix kernel(const Field& F, const Matrix& m) {
    Rref r = rref(F, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix basis(m.cols(), int(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, int(k)) = 1;
        for (size_t i = 0; i < r.pivot_cols.size(); ++i)
            basis.at(r.pivot_cols[i], int(k)) = F.neg(r.m.at(int(i), fc));
    }
    return basis;
}

// Particular solution of m x = target, pivot-based; nullopt when unsolvable.
inline std::optional<std::vector<Scalar>> solve(const Field& F, const Matrix& m, const std::vector<Scalar>& target) {
    assert(int(target.size()) == m.rows());
    Matrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = target[i];
    }
    Rref r = rref(F, aug);
    for (int c : r.pivot_cols)
        if (c == m.cols()) return std::nullopt;
    std::vector<Scalar> x(m.cols(), Scalar(0));
    for (size_t i = 0; i < r.pivot_cols.size(); ++i) x[r.pivot_cols[i]] = r.m.at(int(i), m.cols());
    return x;
}

// Columnwise solve of m X = B; nullopt if any column is unsolvable.
inline std::optional<Matrix> solve_matrix(const Field& F, const Matrix& m, const Matrix& b) {
    assert(b.rows() == m.rows());
    Matrix x(m.cols(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        auto s = solve(F, m, b.col(c));
        if (!s) return std::nullopt;
        x.set_col(c, *s);
    }
    return x;
}

// Subspace of an ambient coordinate space, held as a canonical reduced
// column echelon basis (unique per subspace, so == is subspace equality).
struct Subspace {
    int ambient = 0;
    Matrix basis; // ambient x dim, independent columns

    int dim() const { return basis.cols(); }
    bool operator==(const Subspace&) const = default;
};

// Canonical column echelon form of the span of the given columns.
inline Matrix column_echelon(const Field& F, const Matrix& gens) {
    Matrix t(gens.cols(), gens.rows());
    for (int i = 0; i < gens.rows(); ++i)
        for (int j = 0; j < gens.cols(); ++j) t.at(j, i) = gens.at(i, j);
    Rref r = rref(F, t);
    Matrix basis(gens.rows(), r.rank);
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < gens.rows(); ++j) basis.at(j, i) = r.m.at(i, j);
    return basis;
}

inline Subspace span(const Field& F, int ambient, const Matrix& gens) {
    assert(gens.rows() == ambient || gens.cols() == 0);
    Matrix g = gens.rows() == ambient ? gens : Matrix(ambient, 0);
    return Subspace{ambient, column_echelon(F, g)};
}

inline Subspace zero_subspace(int ambient) { return Subspace{ambient, Matrix(ambient, 0)}; }

inline Subspace full_subspace(int ambient) { return Subspace{ambient, Matrix::identity(ambient)}; }

inline Subspace image(const Field& F, const Matrix& m) { return span(F, m.rows(), m); }

inline Subspace kernel_subspace(const Field& F, const Matrix& m) { return span(F, m.cols(), kernel(F, m)); }

inline bool contains(const Field& F, const Subspace& s, const std::vector<Scalar>& v) {
    return solve(F, s.basis, v).has_value();
}

inline bool subspace_leq(const Field& F, const Subspace& a, const Subspace& b) {
    if (a.dim() > b.dim()) return false;
    return rank(F, hcat(b.basis, a.basis)) == b.dim();
}

inline Subspace subspace_sum(const Field& F, const Subspace& a, const Subspace& b) {
    assert(a.ambient == b.ambient);
    return span(F, a.ambient, hcat(a.basis, b.basis));
}

inline Subspace subspace_intersect(const Field& F, const Subspace& a, const Subspace& b) {
    assert(a.ambient == b.ambient);
    if (a.dim() == 0 || b.dim() == 0) return zero_subspace(a.ambient);
    // Solutions of a x + b y = 0 give vectors a x in the intersection.
    Matrix k = kernel(F, hcat(a.basis, b.basis));
    Matrix gens(a.ambient, k.cols());
    for (int c = 0; c < k.cols(); ++c) {
        std::vector<Scalar> x(a.dim());
        for (int i = 0; i < a.dim(); ++i) x[i] = k.at(i, c);
        gens.set_col(c, apply(F, a.basis, x));
    }
    return span(F, a.ambient, gens);
}

// {x : m x in s}
inline Subspace preimage(const Field& F, const Matrix& m, const Subspace& s) {
    assert(s.ambient == m.rows());
    Matrix k = kernel(F, hcat(m, neg(F, s.basis)));
    Matrix gens(m.cols(), k.cols());
    for (int c = 0; c < k.cols(); ++c)
        for (int i = 0; i < m.cols(); ++i) gens.at(i, c) = k.at(i, c);
    return span(F, m.cols(), gens);
}

inline Subspace image_of_subspace(const Field& F, const Matrix& m, const Subspace& s) {
    assert(s.ambient == m.cols());
    return image(F, mul(F, m, s.basis));
}

// Representatives of num/den, den <= num required. Reps are the columns of
// num.basis at the pivot positions found after den's columns, so coords of
// a vector split deterministically as (den part, rep part).
struct QuotientBasis {
    Subspace den;
    Matrix reps; // ambient x dim(num/den)
    int dim() const { return reps.cols(); }
};

inline QuotientBasis quotient_basis(const Field& F, const Subspace& num, const Subspace& den) {
    assert(num.ambient == den.ambient);
    Rref r = rref(F, hcat(den.basis, num.basis));
    std::vector<int> rep_cols;
    for (int c : r.pivot_cols)
        if (c >= den.dim()) rep_cols.push_back(c - den.dim());
    Matrix reps(num.ambient, int(rep_cols.size()));
    for (size_t k = 0; k < rep_cols.size(); ++k) reps.set_col(int(k), num.basis.col(rep_cols[k]));
    return QuotientBasis{den, reps};
}

// Coordinates of [v] in the representative basis; v must lie in den + reps.
inline std::vector<Scalar> quotient_coords(const Field& F, const QuotientBasis& q, const std::vector<Scalar>& v) {
    auto s = solve(F, hcat(q.den.basis, q.reps), v);
    assert(s.has_value());
    std::vector<Scalar> out(q.reps.cols());
    for (int i = 0; i < q.reps.cols(); ++i) out[i] = (*s)[q.den.dim() + i];
    return out;
}

struct FlagBasis {
    Matrix basis;              // ambient x ambient, invertible
    std::vector<long> weights; // one per column
};

// Rebase an exhaustive increasing flag: returns a basis whose weight <= p
// prefix spans the flag member at p, weights minimal. When the original
// coordinate vectors are themselves flag-adapted they are kept in their
// original order, which makes the operation involutive on based input.
inline FlagBasis flag_quotient(const Field& F, int ambient, const std::vector<std::pair<long, Subspace>>& flag) {
    if (flag.empty()) {
        if (ambient != 0) throw flag_error("flag_quotient: empty flag on nonzero ambient space");
        return FlagBasis{Matrix(0, 0), {}};
    }
    for (size_t i = 0; i + 1 < flag.size(); ++i) {
        if (flag[i].first >= flag[i + 1].first) throw flag_error("flag_quotient: weights not strictly increasing");
        if (!subspace_leq(F, flag[i].second, flag[i + 1].second))
            throw flag_error("flag_quotient: flag member not contained in the next (FlagNotIncreasing)");
    }
    if (flag.back().second.dim() != ambient) throw flag_error("flag_quotient: flag is not exhaustive");

    // Fast path: test whether the coordinate vectors are flag-adapted.
    std::vector<long> wt(ambient);
    bool adapted = true;
    for (int i = 0; i < ambient && adapted; ++i) {
        std::vector<Scalar> e(ambient, Scalar(0));
        e[i] = 1;
        bool found = false;
        for (const auto& [w, s] : flag)
            if (contains(F, s, e)) {
                wt[i] = w;
                found = true;
                break;
            }
        adapted = found;
    }
    if (adapted) {
        for (const auto& [w, s] : flag) {
            int count = 0;
            for (int i = 0; i < ambient; ++i)
                if (wt[i] <= w) ++count;
            if (count != s.dim()) {
                adapted = false;
                break;
            }
        }
    }
    if (adapted) return FlagBasis{Matrix::identity(ambient), wt};

    // General path: grow a basis stage by stage, canonical candidates first.
    Matrix chosen(ambient, 0);
    std::vector<long> weights;
    for (const auto& [w, s] : flag) {
        for (int c = 0; c < s.dim(); ++c) {
            Matrix cand = hcat(chosen, Matrix(ambient, 1));
            cand.set_col(chosen.cols(), s.basis.col(c));
            if (rank(F, cand) > chosen.cols()) {
                chosen = cand;
                weights.push_back(w);
            }
        }
    }
    assert(chosen.cols() == ambient);
    return FlagBasis{chosen, weights};
}

} // namespace fss
