#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fss/complex.hpp"

namespace fss {

// R_(p)^n: rank one, pure weight p, concentrated in degree n.
inline BasedFilteredComplex make_sphere(const Field& F, long p, int n) {
    return BasedFilteredComplex(F, n, {{p}}, {Matrix(0, 1)});
}

// Z_r(p,n): generators x (degree n, weight p) and y (degree n+1, weight
// p-r) with dx = y. Represents the r-cycle functor Z_r^{p,p+n}.
inline BasedFilteredComplex make_cycle_rep(const Field& F, int r, long p, int n) {
    if (r < 0) throw input_error("make_cycle_rep: r must be >= 0");
    Matrix d0(1, 1);
    d0.at(0, 0) = 1;
    return BasedFilteredComplex(F, n, {{p}, {p - r}}, {d0, Matrix(0, 1)});
}

// B_r(p,n): generators in degree n-1 (weight p+r-1), degree n (weights p
// and p-1) and degree n+1 (weight p-r); the degree-(n-1) generator maps to
// the weight-p generator, which is closed, while the weight-(p-1)
// generator maps to the degree-(n+1) one.
inline BasedFilteredComplex make_boundary_rep(const Field& F, int r, long p, int n) {
    if (r < 1) throw input_error("make_boundary_rep: r must be >= 1");
    Matrix d0(2, 1), d1(1, 2);
    d0.at(0, 0) = 1;
    d1.at(0, 1) = 1;
    return BasedFilteredComplex(F, n - 1, {{p + r - 1}, {p, p - 1}, {p - r}},
                                {d0, d1, Matrix(0, 1)});
}

// phi_r: Z_r(p,n) -> B_r(p,n), the generating cofibration shape: x maps
// diagonally onto both degree-n generators, y onto the degree-(n+1) one.
inline FilteredMorphism make_phi(const Field& F, int r, long p, int n) {
    BasedFilteredComplex src = make_cycle_rep(F, r, p, n);
    BasedFilteredComplex tgt = make_boundary_rep(F, r, p, n);
    Matrix fn(2, 1), fn1(1, 1);
    fn.at(0, 0) = 1;
    fn.at(1, 0) = 1;
    fn1.at(0, 0) = 1;
    return FilteredMorphism(src, tgt, {{n, fn}, {n + 1, fn1}});
}

enum class Suspension { sigma, omega };

// Sigma^r: degree n of the result is degree n+1 of A with weights raised
// by r and the differential negated (F_p(Sigma^r A)^n = F_{p-r}A^{n+1}).
// Omega^r is the inverse reindexing, so omega(sigma(A)) is bit-identical
// to A.
inline BasedFilteredComplex suspend(const BasedFilteredComplex& A, int r,
                                    Suspension dir = Suspension::sigma) {
    const Field& F = A.field();
    int shift_n = dir == Suspension::sigma ? 1 : -1;
    long shift_w = dir == Suspension::sigma ? r : -long(r);
    std::vector<std::vector<long>> ws;
    std::vector<Matrix> ds;
    for (int n = A.n_min() - shift_n; n <= A.n_max() - shift_n; ++n) {
        std::vector<long> w = A.weights(n + shift_n);
        for (long& x : w) x += shift_w;
        ws.push_back(std::move(w));
        ds.push_back(neg(F, A.d(n + shift_n)));
    }
    return BasedFilteredComplex(F, A.n_min() - shift_n, std::move(ws), std::move(ds));
}

// Reindex a morphism along the suspension; no extra sign is needed.
inline FilteredMorphism suspend_morphism(const FilteredMorphism& f, int r,
                                         Suspension dir = Suspension::sigma) {
    BasedFilteredComplex src = suspend(f.source(), r, dir);
    BasedFilteredComplex tgt = suspend(f.target(), r, dir);
    int shift_n = dir == Suspension::sigma ? 1 : -1;
    std::map<int, Matrix> maps;
    for (int n = std::min(src.n_min(), tgt.n_min()); n <= std::max(src.n_max(), tgt.n_max()); ++n) {
        Matrix m = f.map(n + shift_n);
        if (m.rows() > 0 && m.cols() > 0) maps.emplace(n, std::move(m));
    }
    return FilteredMorphism(std::move(src), std::move(tgt), std::move(maps));
}

struct ConeResult {
    BasedFilteredComplex complex;
    FilteredMorphism incl;  // target -> cone
    FilteredMorphism proj;  // cone -> Sigma^r(source)
};

// C_r(f) for f : A -> B: underlying module Sigma^r A (+) B with
// d(a,b) = (-da, fa + db); filtration F_p C^n = F_{p-r}A^{n+1} (+) F_p B^n.
inline ConeResult cone(const FilteredMorphism& f, int r) {
    const Field& F = f.field();
    const auto& A = f.source();
    const auto& B = f.target();
    BasedFilteredComplex SA = suspend(A, r);
    int lo = std::min(SA.n_min(), B.n_min());
    int hi = std::max(SA.n_max(), B.n_max());
    std::vector<std::vector<long>> ws;
    std::vector<Matrix> ds;
    for (int n = lo; n <= hi; ++n) {
        std::vector<long> w = SA.weights(n);
        const auto& wb = B.weights(n);
        w.insert(w.end(), wb.begin(), wb.end());
        ws.push_back(std::move(w));

        int sa = SA.rank(n), sb = B.rank(n);
        Matrix d(SA.rank(n + 1) + B.rank(n + 1), sa + sb);
        Matrix dtop = SA.d(n);          // already -d^A
        Matrix fmid = f.map(n + 1);     // A^{n+1} -> B^{n+1}
        Matrix dbot = B.d(n);
        for (int i = 0; i < dtop.rows(); ++i)
            for (int j = 0; j < sa; ++j) d.at(i, j) = dtop.at(i, j);
        for (int i = 0; i < fmid.rows(); ++i)
            for (int j = 0; j < sa; ++j) d.at(SA.rank(n + 1) + i, j) = fmid.at(i, j);
        for (int i = 0; i < dbot.rows(); ++i)
            for (int j = 0; j < sb; ++j) d.at(SA.rank(n + 1) + i, sa + j) = dbot.at(i, j);
        ds.push_back(std::move(d));
    }
    BasedFilteredComplex C(F, lo, std::move(ws), std::move(ds));

    std::map<int, Matrix> incl_maps, proj_maps;
    for (int n = lo; n <= hi; ++n) {
        int sa = SA.rank(n), sb = B.rank(n);
        if (sb > 0) {
            Matrix m(sa + sb, sb);
            for (int i = 0; i < sb; ++i) m.at(sa + i, i) = 1;
            incl_maps.emplace(n, std::move(m));
        }
        if (sa > 0) {
            Matrix m(sa, sa + sb);
            for (int i = 0; i < sa; ++i) m.at(i, i) = 1;
            proj_maps.emplace(n, std::move(m));
        }
    }
    FilteredMorphism incl(B, C, std::move(incl_maps));
    FilteredMorphism proj(C, SA, std::move(proj_maps));
    return ConeResult{std::move(C), std::move(incl), std::move(proj)};
}

inline ConeResult cone_of_identity(const BasedFilteredComplex& A, int r) {
    return cone(identity_morphism(A), r);
}

struct TwistedSumResult {
    BasedFilteredComplex complex;
    FilteredMorphism incl;  // A -> A (+)_tau C, first-summand inclusion
};

// A (+)_tau C: direct sum with differential ((d^A, tau), (0, d^C)). The
// twist must anticommute (d^A tau + tau d^C = 0) and respect weights.
inline TwistedSumResult twisted_sum(const BasedFilteredComplex& A, const BasedFilteredComplex& C,
                                    const std::map<int, Matrix>& tau) {
    const Field& F = A.field();
    if (!(F.id() == C.field().id())) throw input_error("twisted_sum: fields differ");
    auto tau_at = [&](int n) {
        auto it = tau.find(n);
        if (it != tau.end()) {
            if (it->second.rows() != A.rank(n + 1) || it->second.cols() != C.rank(n))
                throw input_error("twisted_sum: twist shape mismatch in degree " + std::to_string(n));
            return reduced(F, it->second);
        }
        return Matrix(A.rank(n + 1), C.rank(n));
    };
    int lo = std::min(A.n_min(), C.n_min());
    int hi = std::max(A.n_max(), C.n_max());
    for (int n = lo - 1; n <= hi; ++n) {
        Matrix tn = tau_at(n);
        for (int i = 0; i < tn.rows(); ++i)
            for (int j = 0; j < tn.cols(); ++j)
                if (tn.at(i, j) != 0 && A.weight(n + 1, i) > C.weight(n, j))
                    throw input_error("twisted_sum: TwistBreaksFiltration at degree " +
                                      std::to_string(n) + " entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
        Matrix anti = add(F, mul(F, A.d(n + 1), tn), mul(F, tau_at(n + 1), C.d(n)));
        if (!anti.is_zero())
            throw input_error("twisted_sum: TwistNotAnticommuting out of degree " + std::to_string(n));
    }

    std::vector<std::vector<long>> ws;
    std::vector<Matrix> ds;
    for (int n = lo; n <= hi; ++n) {
        std::vector<long> w = A.weights(n);
        const auto& wc = C.weights(n);
        w.insert(w.end(), wc.begin(), wc.end());
        ws.push_back(std::move(w));

        int ra = A.rank(n), rc = C.rank(n);
        Matrix d(A.rank(n + 1) + C.rank(n + 1), ra + rc);
        Matrix da = A.d(n), tn = tau_at(n), dc = C.d(n);
        for (int i = 0; i < da.rows(); ++i)
            for (int j = 0; j < ra; ++j) d.at(i, j) = da.at(i, j);
        for (int i = 0; i < tn.rows(); ++i)
            for (int j = 0; j < rc; ++j) d.at(i, ra + j) = tn.at(i, j);
        for (int i = 0; i < dc.rows(); ++i)
            for (int j = 0; j < rc; ++j) d.at(A.rank(n + 1) + i, ra + j) = dc.at(i, j);
        ds.push_back(std::move(d));
    }
    BasedFilteredComplex D(F, lo, std::move(ws), std::move(ds));

    std::map<int, Matrix> incl_maps;
    for (int n = lo; n <= hi; ++n) {
        int ra = A.rank(n);
        if (ra == 0) continue;
        Matrix m(ra + C.rank(n), ra);
        for (int i = 0; i < ra; ++i) m.at(i, i) = 1;
        incl_maps.emplace(n, std::move(m));
    }
    FilteredMorphism incl(A, D, std::move(incl_maps));
    return TwistedSumResult{std::move(D), std::move(incl)};
}

struct StaircaseResult {
    BasedFilteredComplex Q;
    FilteredMorphism pi;  // projection onto the weight-0 degree-0 generator
};

// Truncated staircase Q_rS at depth N: degree-0 generators 1_(-i) for
// 0 <= i <= N and degree-1 generators 1_(-r-j) for 1 <= j <= N, with
// d 1_(0) = 1_(-r-1) and d 1_(-i) = 1_(-i-r) + 1_(-i-r-1); the last
// differential drops its out-of-range term. Checks against the infinite
// object are faithful for bidegrees with p >= -N + r + 2.
inline StaircaseResult staircase(const Field& F, int r, int N) {
    if (N < 1) throw input_error("staircase: N must be >= 1");
    std::vector<long> w0(N + 1), w1(N);
    for (int i = 0; i <= N; ++i) w0[i] = -i;
    for (int j = 1; j <= N; ++j) w1[j - 1] = -r - j;
    Matrix d0(N, N + 1);
    d0.at(0, 0) = 1;
    for (int i = 1; i < N; ++i) {
        d0.at(i - 1, i) = 1;
        d0.at(i, i) = 1;
    }
    d0.at(N - 1, N) = 1;
    BasedFilteredComplex Q(F, 0, {w0, w1}, {d0, Matrix(0, N)});

    Matrix p0(1, N + 1);
    p0.at(0, 0) = 1;
    FilteredMorphism pi(Q, make_sphere(F, 0, 0), {{0, p0}});
    return StaircaseResult{std::move(Q), std::move(pi)};
}

// Kernel of the staircase projection, truncated openly: degree-0
// generators of weight -i for 1 <= i <= M each map to the sum of two
// degree-1 generators, of which there are M+1 (weights -r-1 .. -r-M-1).
// Its (r+1)-page vanishes except for one class at (p,n) = (-r-M-1, 1)
// left by the truncation, so it is r-acyclic on any window avoiding that
// bidegree.
inline BasedFilteredComplex staircase_kernel(const Field& F, int r, int M) {
    if (M < 1) throw input_error("staircase_kernel: M must be >= 1");
    std::vector<long> w0(M), w1(M + 1);
    for (int i = 1; i <= M; ++i) w0[i - 1] = -i;
    for (int j = 1; j <= M + 1; ++j) w1[j - 1] = -r - j;
    Matrix d0(M + 1, M);
    for (int i = 1; i <= M; ++i) {
        d0.at(i - 1, i - 1) = 1;
        d0.at(i, i - 1) = 1;
    }
    return BasedFilteredComplex(F, 0, {w0, w1}, {d0, Matrix(0, M + 1)});
}

// Left summand first, preserving each summand's internal basis order.
struct DirectSumResult {
    BasedFilteredComplex complex;
    FilteredMorphism inj_left, inj_right;
    FilteredMorphism proj_left, proj_right;
};

inline DirectSumResult direct_sum(const BasedFilteredComplex& A, const BasedFilteredComplex& B) {
    TwistedSumResult t = twisted_sum(A, B, {});
    const BasedFilteredComplex& D = t.complex;
    std::map<int, Matrix> ir, pl, pr;
    for (int n = D.n_min(); n <= D.n_max(); ++n) {
        int ra = A.rank(n), rb = B.rank(n);
        if (rb > 0) {
            Matrix m(ra + rb, rb);
            for (int i = 0; i < rb; ++i) m.at(ra + i, i) = 1;
            ir.emplace(n, std::move(m));
        }
        if (ra > 0) {
            Matrix m(ra, ra + rb);
            for (int i = 0; i < ra; ++i) m.at(i, i) = 1;
            pl.emplace(n, std::move(m));
        }
        if (rb > 0) {
            Matrix m(rb, ra + rb);
            for (int i = 0; i < rb; ++i) m.at(i, ra + i) = 1;
            pr.emplace(n, std::move(m));
        }
    }
    return DirectSumResult{D, t.incl, FilteredMorphism(B, D, std::move(ir)),
                           FilteredMorphism(D, A, std::move(pl)),
                           FilteredMorphism(D, B, std::move(pr))};
}

}  // namespace fss
