#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fss/complex.hpp"

namespace fss {

// Unknown entries of a filtration-preserving degree-0 map src -> tgt:
// one variable per admissible entry (target weight <= source weight),
// indexed per degree. Everything downstream (chain-map spaces, lifting
// problems, isomorphism searches) is linear algebra over these variables.
struct MapVars {
    const BasedFilteredComplex* src = nullptr;
    const BasedFilteredComplex* tgt = nullptr;
    std::map<int, std::vector<std::vector<int>>> idx;  // degree -> [i][j] var or -1
    int total = 0;

    int var(int n, int i, int j) const {
        auto it = idx.find(n);
        if (it == idx.end()) return -1;
        return it->second[i][j];
    }
};

inline MapVars build_map_vars(const BasedFilteredComplex& src, const BasedFilteredComplex& tgt) {
    MapVars v;
    v.src = &src;
    v.tgt = &tgt;
    for (int n = std::min(src.n_min(), tgt.n_min()); n <= std::max(src.n_max(), tgt.n_max()); ++n) {
        int rs = src.rank(n), rt = tgt.rank(n);
        if (rs == 0 || rt == 0) continue;
        std::vector<std::vector<int>> grid(rt, std::vector<int>(rs, -1));
        for (int i = 0; i < rt; ++i)
            for (int j = 0; j < rs; ++j)
                if (tgt.weight(n, i) <= src.weight(n, j)) grid[i][j] = v.total++;
        v.idx.emplace(n, std::move(grid));
    }
    return v;
}

inline FilteredMorphism morphism_from_vars(const MapVars& v, const std::vector<Scalar>& coeffs) {
    const Field& F = v.src->field();
    std::map<int, Matrix> maps;
    for (const auto& [n, grid] : v.idx) {
        Matrix m(int(grid.size()), int(grid[0].size()));
        for (size_t i = 0; i < grid.size(); ++i)
            for (size_t j = 0; j < grid[i].size(); ++j)
                if (grid[i][j] >= 0) m.at(int(i), int(j)) = F.reduce(coeffs[grid[i][j]]);
        maps.emplace(n, std::move(m));
    }
    return FilteredMorphism(*v.src, *v.tgt, std::move(maps));
}

// Rows encoding d^tgt f - f d^src = 0 over the variables of v, optionally
// written into a wider system at column offset.
inline void append_chain_rows(const Field& F, const MapVars& v, int offset,
                              std::vector<std::vector<Scalar>>& rows, int width) {
    const auto& A = *v.src;
    const auto& B = *v.tgt;
    for (int n = std::min(A.n_min(), B.n_min()) - 1; n <= std::max(A.n_max(), B.n_max()); ++n) {
        int ra = A.rank(n), rb1 = B.rank(n + 1);
        if (ra == 0 || rb1 == 0) continue;
        Matrix dB = B.d(n), dA = A.d(n);
        for (int i = 0; i < rb1; ++i)
            for (int j = 0; j < ra; ++j) {
                std::vector<Scalar> row(width, Scalar(0));
                bool nonzero = false;
                for (int k = 0; k < B.rank(n); ++k) {
                    int x = v.var(n, k, j);
                    if (x >= 0 && dB.at(i, k) != 0) {
                        row[offset + x] = F.add(row[offset + x], dB.at(i, k));
                        nonzero = true;
                    }
                }
                for (int l = 0; l < A.rank(n + 1); ++l) {
                    int x = v.var(n + 1, i, l);
                    if (x >= 0 && dA.at(l, j) != 0) {
                        row[offset + x] = F.sub(row[offset + x], dA.at(l, j));
                        nonzero = true;
                    }
                }
                if (nonzero) rows.push_back(std::move(row));
            }
    }
}

// Basis of the space of filtration-preserving chain maps src -> tgt.
struct ChainMapSpace {
    MapVars vars;
    Matrix basis;  // vars.total x dim

    int dim() const { return basis.cols(); }
    FilteredMorphism morphism(int k) const { return morphism_from_vars(vars, basis.col(k)); }
    FilteredMorphism from_coords(const std::vector<Scalar>& c) const {
        const Field& F = vars.src->field();
        std::vector<Scalar> coeffs(vars.total, Scalar(0));
        for (int k = 0; k < basis.cols(); ++k) {
            if (c[k] == 0) continue;
            for (int i = 0; i < vars.total; ++i)
                coeffs[i] = F.add(coeffs[i], F.mul(c[k], basis.at(i, k)));
        }
        return morphism_from_vars(vars, coeffs);
    }
};

inline ChainMapSpace chain_map_space(const BasedFilteredComplex& A, const BasedFilteredComplex& B) {
    const Field& F = A.field();
    MapVars v = build_map_vars(A, B);
    std::vector<std::vector<Scalar>> rows;
    append_chain_rows(F, v, 0, rows, v.total);
    Matrix sys(int(rows.size()), v.total);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < v.total; ++j) sys.at(int(i), j) = rows[i][j];
    Matrix basis = v.total == 0 ? Matrix(0, 0) : kernel(F, sys);
    return ChainMapSpace{std::move(v), std::move(basis)};
}

// Coordinates of a given chain map in the raw variable space of v;
// nullopt when f has an entry outside the admissible pattern.
inline std::optional<std::vector<Scalar>> vars_of_morphism(const MapVars& v,
                                                           const FilteredMorphism& f) {
    std::vector<Scalar> out(v.total, Scalar(0));
    for (int n = f.n_min(); n <= f.n_max(); ++n) {
        Matrix m = f.map(n);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (m.at(i, j) == 0) continue;
                int x = v.var(n, i, j);
                if (x < 0) return std::nullopt;
                out[x] = m.at(i, j);
            }
    }
    return out;
}

struct LiftingProblem {
    FilteredMorphism i;  // A -> B
    FilteredMorphism p;  // X -> Y
    FilteredMorphism f;  // A -> X
    FilteredMorphism g;  // B -> Y, with p f = g i
};

// Exact affine solve for h : B -> X with h i = f, p h = g. The absence of
// a solution is conclusive: the constraints are linear over the field.
inline std::optional<FilteredMorphism> solve_lifting(const LiftingProblem& prob) {
    const Field& F = prob.i.field();
    const auto& A = prob.i.source();
    const auto& B = prob.i.target();
    const auto& X = prob.p.source();
    const auto& Y = prob.p.target();
    if (prob.f.source() != A || prob.f.target() != X || prob.g.source() != B ||
        prob.g.target() != Y)
        throw input_error("solve_lifting: square shape mismatch");
    if (!morphisms_equal(compose(prob.p, prob.f), compose(prob.g, prob.i)))
        throw input_error("solve_lifting: square does not commute");

    MapVars v = build_map_vars(B, X);
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    append_chain_rows(F, v, 0, rows, v.total);
    rhs.assign(rows.size(), Scalar(0));

    // h i = f
    for (int n = std::min(A.n_min(), X.n_min()); n <= std::max(A.n_max(), X.n_max()); ++n) {
        int ra = A.rank(n), rx = X.rank(n);
        if (ra == 0 || rx == 0) continue;
        Matrix in = prob.i.map(n), fn = prob.f.map(n);
        for (int a = 0; a < rx; ++a)
            for (int c = 0; c < ra; ++c) {
                std::vector<Scalar> row(v.total, Scalar(0));
                bool nonzero = false;
                for (int b = 0; b < B.rank(n); ++b) {
                    int x = v.var(n, a, b);
                    if (x >= 0 && in.at(b, c) != 0) {
                        row[x] = F.add(row[x], in.at(b, c));
                        nonzero = true;
                    }
                }
                if (nonzero || fn.at(a, c) != 0) {
                    rows.push_back(std::move(row));
                    rhs.push_back(fn.at(a, c));
                }
            }
    }
    // p h = g
    for (int n = std::min(B.n_min(), Y.n_min()); n <= std::max(B.n_max(), Y.n_max()); ++n) {
        int rb = B.rank(n), ry = Y.rank(n);
        if (rb == 0 || ry == 0) continue;
        Matrix pn = prob.p.map(n), gn = prob.g.map(n);
        for (int y = 0; y < ry; ++y)
            for (int b = 0; b < rb; ++b) {
                std::vector<Scalar> row(v.total, Scalar(0));
                bool nonzero = false;
                for (int x0 = 0; x0 < X.rank(n); ++x0) {
                    int x = v.var(n, x0, b);
                    if (x >= 0 && pn.at(y, x0) != 0) {
                        row[x] = F.add(row[x], pn.at(y, x0));
                        nonzero = true;
                    }
                }
                if (nonzero || gn.at(y, b) != 0) {
                    rows.push_back(std::move(row));
                    rhs.push_back(gn.at(y, b));
                }
            }
    }

    Matrix sys(int(rows.size()), v.total);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < v.total; ++j) sys.at(int(i), j) = rows[i][j];
    auto sol = solve(F, sys, rhs);
    if (!sol) return std::nullopt;
    return morphism_from_vars(v, *sol);
}

// Per-degree inverse when f is degreewise invertible AND the inverse
// preserves weights; nullopt otherwise. With the forward map this forms
// an isomorphism certificate.
inline std::optional<FilteredMorphism> filtered_inverse(const FilteredMorphism& f) {
    const Field& F = f.field();
    const auto& A = f.source();
    const auto& B = f.target();
    std::map<int, Matrix> inv;
    for (int n = std::min(A.n_min(), B.n_min()); n <= std::max(A.n_max(), B.n_max()); ++n) {
        int ra = A.rank(n), rb = B.rank(n);
        if (ra != rb) return std::nullopt;
        if (ra == 0) continue;
        auto m = solve_matrix(F, f.map(n), Matrix::identity(rb));
        if (!m) return std::nullopt;
        for (int i = 0; i < ra; ++i)
            for (int j = 0; j < rb; ++j)
                if (m->at(i, j) != 0 && A.weight(n, i) > B.weight(n, j)) return std::nullopt;
        inv.emplace(n, std::move(*m));
    }
    FilteredMorphism g(B, A, std::move(inv));
    if (!validate_morphism(g).empty()) return std::nullopt;
    return g;
}

}  // namespace fss
