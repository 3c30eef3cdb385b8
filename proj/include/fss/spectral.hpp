#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fss/complex.hpp"
#include "fss/constructors.hpp"

namespace fss {

struct Window {
    long p_lo = 0, p_hi = -1;
    int n_lo = 0, n_hi = -1;

    bool empty() const { return p_lo > p_hi || n_lo > n_hi; }
    bool contains(long p, int n) const {
        return p >= p_lo && p <= p_hi && n >= n_lo && n <= n_hi;
    }
};

// Joint support of the given complexes padded in both directions. Page
// entries vanish at bidegrees whose weight is absent from the degree, so
// any nonnegative padding yields a complete sweep; predicates pad by r+1
// in p and 1 in n to keep the bound visibly safe.
inline Window auto_window(const std::vector<const BasedFilteredComplex*>& xs, long pad_p,
                          int pad_n) {
    Window w;
    bool any = false;
    for (const auto* A : xs) {
        for (int n = A->n_min(); n <= A->n_max(); ++n) {
            if (A->rank(n) == 0) continue;
            if (!any || n < w.n_lo) w.n_lo = n;
            if (!any || n > w.n_hi) w.n_hi = n;
            for (long p : A->weights(n)) {
                if (!any || p < w.p_lo) w.p_lo = p;
                if (!any || p > w.p_hi) w.p_hi = p;
                any = true;
            }
            any = true;
        }
    }
    if (!any) return Window{};
    w.p_lo -= pad_p;
    w.p_hi += pad_p;
    w.n_lo -= pad_n;
    w.n_hi += pad_n;
    return w;
}

inline Window page_window(const BasedFilteredComplex& A, int r) {
    return auto_window({&A}, r + 1, 1);
}

inline Window joint_page_window(const FilteredMorphism& f, int r) {
    return auto_window({&f.source(), &f.target()}, r + 1, 1);
}

// Memoizing calculator for the subspaces Z_r, B_r and the page entries
// E_r = Z_r/B_r of one complex. All values are exact subspaces of the
// relevant graded piece.
class SpectralCalc {
  public:
    explicit SpectralCalc(const BasedFilteredComplex& A) : A_(A), F_(A.field()) {}

    const BasedFilteredComplex& complex() const { return A_; }

    // Z_r^{p,p+n} = F_p A^n intersect d^{-1}(F_{p-r} A^{n+1})
    const Subspace& cycles(int r, long p, int n) {
        auto key = std::make_tuple(r, p, n);
        auto it = zc_.find(key);
        if (it != zc_.end()) return it->second;

        int ra = A_.rank(n);
        const auto& ws = A_.weights(n);
        std::vector<int> cols;
        for (int j = 0; j < ra; ++j)
            if (ws[j] <= p) cols.push_back(j);
        std::vector<int> rows;
        const auto& wt_next = A_.weights(n + 1);
        for (int i = 0; i < A_.rank(n + 1); ++i)
            if (wt_next[i] > p - r) rows.push_back(i);

        Subspace z;
        if (rows.empty()) {
            z = filtration_subspace(A_, p, n);
        } else {
            Matrix m = submatrix(A_.d(n), rows, cols);
            Matrix k = kernel(F_, m);
            Matrix gens(ra, k.cols());
            for (int c = 0; c < k.cols(); ++c)
                for (size_t j = 0; j < cols.size(); ++j) gens.at(cols[j], c) = k.at(int(j), c);
            z = span(F_, ra, gens);
        }
        return zc_.emplace(key, std::move(z)).first->second;
    }

    // B_r^{p,p+n} = d Z_{r-1}^{p+r-1} (from degree n-1) + Z_{r-1}^{p-1,p-1+n};
    // B_0^{p,p+n} = F_{p-1} A^n.
    const Subspace& boundaries(int r, long p, int n) {
        auto key = std::make_tuple(r, p, n);
        auto it = bc_.find(key);
        if (it != bc_.end()) return it->second;

        Subspace b;
        if (r == 0) {
            b = filtration_subspace(A_, p - 1, n);
        } else {
            Subspace dz = image_of_subspace(F_, A_.d(n - 1), cycles(r - 1, p + r - 1, n - 1));
            b = subspace_sum(F_, dz, cycles(r - 1, p - 1, n));
        }
        return bc_.emplace(key, std::move(b)).first->second;
    }

    const QuotientBasis& entry(int r, long p, int n) {
        auto key = std::make_tuple(r, p, n);
        auto it = ec_.find(key);
        if (it != ec_.end()) return it->second;
        QuotientBasis q = quotient_basis(F_, cycles(r, p, n), boundaries(r, p, n));
        return ec_.emplace(key, std::move(q)).first->second;
    }

    int dim(int r, long p, int n) { return entry(r, p, n).dim(); }

    // d_r : E_r^{p,p+n} -> E_r^{p-r, p-r+n+1}, class [a] -> [da].
    Matrix page_differential(int r, long p, int n) {
        const QuotientBasis& src = entry(r, p, n);
        const QuotientBasis& tgt = entry(r, p - r, n + 1);
        Matrix m(tgt.dim(), src.dim());
        if (src.dim() == 0 || tgt.dim() == 0) return m;
        Matrix d = A_.d(n);
        for (int c = 0; c < src.dim(); ++c) {
            auto coords = quotient_coords(F_, tgt, apply(F_, d, src.reps.col(c)));
            for (int i = 0; i < tgt.dim(); ++i) m.at(i, c) = coords[i];
        }
        return m;
    }

  private:
    const BasedFilteredComplex& A_;
    const Field& F_;
    std::map<std::tuple<int, long, int>, Subspace> zc_, bc_;
    std::map<std::tuple<int, long, int>, QuotientBasis> ec_;
};

inline Subspace r_cycles(const BasedFilteredComplex& A, int r, long p, int n) {
    SpectralCalc c(A);
    return c.cycles(r, p, n);
}

inline Subspace r_boundaries(const BasedFilteredComplex& A, int r, long p, int n) {
    SpectralCalc c(A);
    return c.boundaries(r, p, n);
}

struct PageEntry {
    long p = 0;
    int n = 0;
    int dim = 0;
    Matrix d_r;  // into (p-r, n+1), in page bases
    int d_r_rank = 0;
};

struct SpectralPage {
    int r = 0;
    Window window;
    std::vector<PageEntry> entries;  // nonzero entries, ordered by (p, n)

    const PageEntry* find(long p, int n) const {
        for (const auto& e : entries)
            if (e.p == p && e.n == n) return &e;
        return nullptr;
    }
    int dim(long p, int n) const {
        const PageEntry* e = find(p, n);
        return e ? e->dim : 0;
    }
};

inline SpectralPage page(const BasedFilteredComplex& A, int r, const Window& w) {
    SpectralPage out;
    out.r = r;
    out.window = w;
    SpectralCalc calc(A);
    for (long p = w.p_lo; p <= w.p_hi; ++p)
        for (int n = w.n_lo; n <= w.n_hi; ++n) {
            int d = calc.dim(r, p, n);
            if (d == 0) continue;
            PageEntry e;
            e.p = p;
            e.n = n;
            e.dim = d;
            e.d_r = calc.page_differential(r, p, n);
            e.d_r_rank = rank(A.field(), e.d_r);
            out.entries.push_back(std::move(e));
        }
    return out;
}

struct PageMap {
    int r = 0;
    Window window;
    std::map<std::pair<long, int>, Matrix> blocks;  // (p,n) -> matrix in page bases

    Matrix block(long p, int n, int rows, int cols) const {
        auto it = blocks.find({p, n});
        if (it != blocks.end()) return it->second;
        return Matrix(rows, cols);
    }
};

// Matrix of E_r(f) per bidegree; f carries Z_r into Z_r and B_r into B_r,
// so the class of f(rep) is well defined.
inline PageMap induced_page_map(const FilteredMorphism& f, int r, const Window& w) {
    PageMap out;
    out.r = r;
    out.window = w;
    const Field& F = f.field();
    SpectralCalc src(f.source()), tgt(f.target());
    for (long p = w.p_lo; p <= w.p_hi; ++p)
        for (int n = w.n_lo; n <= w.n_hi; ++n) {
            const QuotientBasis& s = src.entry(r, p, n);
            const QuotientBasis& t = tgt.entry(r, p, n);
            if (s.dim() == 0 && t.dim() == 0) continue;
            Matrix m(t.dim(), s.dim());
            Matrix fn = f.map(n);
            for (int c = 0; c < s.dim(); ++c) {
                auto coords = quotient_coords(F, t, apply(F, fn, s.reps.col(c)));
                for (int i = 0; i < t.dim(); ++i) m.at(i, c) = coords[i];
            }
            out.blocks.emplace(std::make_pair(p, n), std::move(m));
        }
    return out;
}

struct Verdict {
    bool ok = true;
    std::vector<std::string> witnesses;

    void fail(std::string w) {
        ok = false;
        witnesses.push_back(std::move(w));
    }
};

inline std::string bidegree_str(long p, int n) {
    return "(p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")";
}

// f is an r-quasi-isomorphism iff E_{r+1}(f) is invertible at every
// bidegree of the window.
inline Verdict is_r_quasi_iso(const FilteredMorphism& f, int r, const Window& w) {
    Verdict v;
    const Field& F = f.field();
    SpectralCalc src(f.source()), tgt(f.target());
    for (long p = w.p_lo; p <= w.p_hi; ++p)
        for (int n = w.n_lo; n <= w.n_hi; ++n) {
            const QuotientBasis& s = src.entry(r + 1, p, n);
            const QuotientBasis& t = tgt.entry(r + 1, p, n);
            if (s.dim() == 0 && t.dim() == 0) continue;
            if (s.dim() != t.dim()) {
                v.fail("page dims differ at " + bidegree_str(p, n) + ": " +
                       std::to_string(s.dim()) + " vs " + std::to_string(t.dim()));
                continue;
            }
            Matrix m(t.dim(), s.dim());
            Matrix fn = f.map(n);
            for (int c = 0; c < s.dim(); ++c) {
                auto coords = quotient_coords(F, t, apply(F, fn, s.reps.col(c)));
                for (int i = 0; i < t.dim(); ++i) m.at(i, c) = coords[i];
            }
            if (rank(F, m) != t.dim())
                v.fail("page map not invertible at " + bidegree_str(p, n));
        }
    return v;
}

inline Verdict is_r_acyclic(const BasedFilteredComplex& A, int r, const Window& w) {
    Verdict v;
    SpectralCalc calc(A);
    for (long p = w.p_lo; p <= w.p_hi; ++p)
        for (int n = w.n_lo; n <= w.n_hi; ++n)
            if (calc.dim(r + 1, p, n) != 0)
                v.fail("E_{r+1} nonzero at " + bidegree_str(p, n) + ", dim " +
                       std::to_string(calc.dim(r + 1, p, n)));
    return v;
}

struct ConeCriterionResult {
    Verdict weq;      // is_r_quasi_iso(f, r)
    Verdict acyclic;  // is_r_acyclic(cone(f, r), r)
    bool agree = false;
};

// f is an r-quasi-isomorphism iff its r-cone is r-acyclic. Both sides are
// computed on their own padded support windows, which cover every nonzero
// page entry.
inline ConeCriterionResult cone_criterion_cross_check(const FilteredMorphism& f, int r) {
    ConeCriterionResult out;
    out.weq = is_r_quasi_iso(f, r, joint_page_window(f, r + 1));
    BasedFilteredComplex C = cone(f, r).complex;
    out.acyclic = is_r_acyclic(C, r, page_window(C, r + 1));
    out.agree = out.weq.ok == out.acyclic.ok;
    return out;
}

// Independent oracle for the page-turning isomorphism: the dimension of
// E_{r+1} at (p,n) must equal dim ker(d_r at (p,n)) - rank(d_r into (p,n)).
inline Verdict page_homology_check(const BasedFilteredComplex& A, int r, const Window& w) {
    Verdict v;
    const Field& F = A.field();
    SpectralCalc calc(A);
    for (long p = w.p_lo; p <= w.p_hi; ++p)
        for (int n = w.n_lo; n <= w.n_hi; ++n) {
            Matrix out = calc.page_differential(r, p, n);
            Matrix in = calc.page_differential(r, p + r, n - 1);
            int h = calc.dim(r, p, n) - rank(F, out) - rank(F, in);
            if (h != calc.dim(r + 1, p, n))
                v.fail("homology of (E_r, d_r) at " + bidegree_str(p, n) + " has dim " +
                       std::to_string(h) + " but E_{r+1} has dim " +
                       std::to_string(calc.dim(r + 1, p, n)));
        }
    return v;
}

// S^r reindexes the filtration: a degree-n vector of weight w gets weight
// w - r*n. Basis and differential are untouched.
inline BasedFilteredComplex shift(const BasedFilteredComplex& A, int r) {
    std::vector<std::vector<long>> ws;
    std::vector<Matrix> ds;
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        std::vector<long> w = A.weights(n);
        for (long& x : w) x -= long(r) * n;
        ws.push_back(std::move(w));
        ds.push_back(A.d(n));
    }
    return BasedFilteredComplex(A.field(), A.n_min(), std::move(ws), std::move(ds));
}

// Dec^r assigns F_p(Dec^r A)^n = Z_r^{p-rn, p-rn+n}(A). The degreewise
// flags are rebased with flag_quotient; when the input basis is already
// adapted (in particular for Dec^r(S^r A)) the identity basis is kept, so
// decalage(shift(A, r), r) is bit-identical to A.
inline BasedFilteredComplex decalage(const BasedFilteredComplex& A, int r) {
    const Field& F = A.field();
    SpectralCalc calc(A);
    std::vector<std::vector<long>> new_ws;
    std::vector<FlagBasis> bases;
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        int ra = A.rank(n);
        if (ra == 0) {
            new_ws.push_back({});
            bases.push_back(FlagBasis{Matrix(0, 0), {}});
            continue;
        }
        long q_lo = *std::min_element(A.weights(n).begin(), A.weights(n).end());
        long q_hi = *std::max_element(A.weights(n).begin(), A.weights(n).end());
        if (A.rank(n + 1) > 0) {
            long m = *std::max_element(A.weights(n + 1).begin(), A.weights(n + 1).end());
            q_hi = std::max(q_hi, m + r);
        }
        std::vector<std::pair<long, Subspace>> flag;
        int last_dim = 0;
        for (long q = q_lo; q <= q_hi; ++q) {
            const Subspace& z = calc.cycles(r, q, n);
            if (z.dim() > last_dim) {
                flag.emplace_back(q + long(r) * n, z);
                last_dim = z.dim();
            }
            if (last_dim == ra) break;
        }
        if (last_dim != ra)
            throw flag_error("decalage: flag is not exhaustive (FlagNotExhaustive)");
        FlagBasis fb = flag_quotient(F, ra, flag);
        new_ws.push_back(fb.weights);
        bases.push_back(std::move(fb));
    }

    std::vector<Matrix> ds;
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        int k = n - A.n_min();
        const Matrix& c_n = bases[k].basis;
        Matrix dc = mul(F, A.d(n), c_n);
        if (n + 1 <= A.n_max()) {
            auto next = solve_matrix(F, bases[k + 1].basis, dc);
            assert(next.has_value());
            ds.push_back(std::move(*next));
        } else {
            ds.push_back(Matrix(0, A.rank(n)));
        }
    }
    BasedFilteredComplex out(F, A.n_min(), std::move(new_ws), std::move(ds));
    if (!validate(out).empty())
        throw flag_error("decalage: rebased differential violates the filtration");
    return out;
}

}  // namespace fss
