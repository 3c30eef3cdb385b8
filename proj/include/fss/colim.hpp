#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fss/constructors.hpp"
#include "fss/hom.hpp"

namespace fss {

namespace detail {

// Distinct weights of a degree, ascending; the flag stages of derived
// objects are evaluated at exactly these thresholds.
inline std::vector<long> weight_thresholds(const BasedFilteredComplex& S, int n) {
    std::vector<long> ws = S.weights(n);
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    return ws;
}

struct QuotientComplex {
    BasedFilteredComplex complex;
    std::map<int, Matrix> proj;     // S^n -> Q^n coordinates
    std::map<int, Matrix> section;  // Q^n coordinates -> representative in S^n
};

// Degreewise quotient of S by the span of the given columns, carrying the
// image filtration F_p(Q) = im(F_p(S)); weights are reassigned minimally.
inline QuotientComplex quotient_complex(const BasedFilteredComplex& S,
                                        const std::map<int, Matrix>& kill) {
    const Field& F = S.field();
    std::map<int, Matrix> proj, section;
    std::vector<std::vector<long>> ws;
    for (int n = S.n_min(); n <= S.n_max(); ++n) {
        int dim = S.rank(n);
        auto it = kill.find(n);
        Subspace den = it == kill.end() ? zero_subspace(dim) : span(F, dim, it->second);
        QuotientBasis qb = quotient_basis(F, full_subspace(dim), den);
        int q = qb.dim();

        Matrix pr(q, dim);
        for (int j = 0; j < dim; ++j) {
            std::vector<Scalar> e(dim, Scalar(0));
            e[j] = 1;
            auto coords = quotient_coords(F, qb, e);
            for (int i = 0; i < q; ++i) pr.at(i, j) = coords[i];
        }

        std::vector<long> wn;
        Matrix sec = qb.reps;
        if (q > 0) {
            std::vector<std::pair<long, Subspace>> flag;
            Subspace prev = zero_subspace(q);
            for (long w : weight_thresholds(S, n)) {
                Subspace st = image_of_subspace(F, pr, filtration_subspace(S, w, n));
                if (st.dim() > prev.dim()) {
                    flag.emplace_back(w, st);
                    prev = st;
                }
            }
            FlagBasis fb = flag_quotient(F, q, flag);
            wn = fb.weights;
            // Rebase: replace representatives and projection coordinates.
            sec = mul(F, qb.reps, fb.basis);
            pr = *solve_matrix(F, fb.basis, pr);
        }
        ws.push_back(std::move(wn));
        proj.emplace(n, std::move(pr));
        section.emplace(n, std::move(sec));
    }

    std::vector<Matrix> ds;
    for (int n = S.n_min(); n <= S.n_max(); ++n) {
        Matrix nextp = n + 1 <= S.n_max() ? proj.at(n + 1) : Matrix(0, S.rank(n + 1));
        ds.push_back(mul(F, nextp, mul(F, S.d(n), section.at(n))));
    }
    BasedFilteredComplex Q(F, S.n_min(), std::move(ws), std::move(ds));
    return QuotientComplex{std::move(Q), std::move(proj), std::move(section)};
}

struct SubComplex {
    BasedFilteredComplex complex;
    std::map<int, Matrix> incl;  // K^n coordinates -> S^n
};

// Degreewise subcomplex spanned by the given columns (must be closed under
// d), with the restricted filtration F_p(K) = K cap F_p(S).
inline SubComplex sub_complex(const BasedFilteredComplex& S, const std::map<int, Matrix>& gens) {
    const Field& F = S.field();
    std::map<int, Matrix> incl;
    std::vector<std::vector<long>> ws;
    for (int n = S.n_min(); n <= S.n_max(); ++n) {
        auto it = gens.find(n);
        Subspace K = it == gens.end() ? zero_subspace(S.rank(n)) : span(F, S.rank(n), it->second);
        int k = K.dim();
        std::vector<long> wn;
        Matrix in = K.basis;
        if (k > 0) {
            std::vector<std::pair<long, Subspace>> flag;
            Subspace prev = zero_subspace(k);
            for (long w : weight_thresholds(S, n)) {
                Subspace st = preimage(F, K.basis, filtration_subspace(S, w, n));
                if (st.dim() > prev.dim()) {
                    flag.emplace_back(w, st);
                    prev = st;
                }
            }
            FlagBasis fb = flag_quotient(F, k, flag);
            wn = fb.weights;
            in = mul(F, K.basis, fb.basis);
        }
        ws.push_back(std::move(wn));
        incl.emplace(n, std::move(in));
    }

    std::vector<Matrix> ds;
    for (int n = S.n_min(); n <= S.n_max(); ++n) {
        Matrix nexti = n + 1 <= S.n_max() ? incl.at(n + 1) : Matrix(S.rank(n + 1), 0);
        auto dn = solve_matrix(F, nexti, mul(F, S.d(n), incl.at(n)));
        if (!dn) throw input_error("sub_complex: generators are not closed under d");
        ds.push_back(std::move(*dn));
    }
    BasedFilteredComplex K(F, S.n_min(), std::move(ws), std::move(ds));
    return SubComplex{std::move(K), std::move(incl)};
}

}  // namespace detail

struct PushoutResult {
    BasedFilteredComplex object;
    FilteredMorphism leg_left;    // B -> P
    FilteredMorphism leg_right;   // C -> P
    FilteredMorphism along_left;  // the input span f: A -> B
    FilteredMorphism along_right; // the input span g: A -> C
    std::map<int, Matrix> section;  // P coordinates -> B (+) C representative

    // The unique h: P -> T with h leg_left = u and h leg_right = v.
    FilteredMorphism induce(const FilteredMorphism& u, const FilteredMorphism& v) const {
        if (u.source() != leg_left.source() || v.source() != leg_right.source() ||
            u.target() != v.target())
            throw input_error("pushout induce: cocone shape mismatch");
        if (!morphisms_equal(compose(u, along_left), compose(v, along_right)))
            throw input_error("pushout induce: not a cocone over the span");
        const Field& F = u.field();
        const auto& B = leg_left.source();
        std::map<int, Matrix> maps;
        for (int n = object.n_min(); n <= object.n_max(); ++n) {
            if (object.rank(n) == 0) continue;
            Matrix uv = hcat(u.map(n), v.map(n));
            maps.emplace(n, mul(F, uv, section.at(n)));
        }
        return FilteredMorphism(object, u.target(), std::move(maps));
    }
};

// P = (B (+) C) / im(f, -g) with the image filtration.
inline PushoutResult pushout(const FilteredMorphism& f, const FilteredMorphism& g) {
    if (f.source() != g.source()) throw input_error("pushout: span sources differ");
    const Field& F = f.field();
    const auto& A = f.source();
    const auto& B = f.target();
    const auto& C = g.target();
    DirectSumResult S = direct_sum(B, C);

    std::map<int, Matrix> kill;
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        if (A.rank(n) == 0 || S.complex.rank(n) == 0) continue;
        kill.emplace(n, vcat(f.map(n), neg(F, g.map(n))));
    }
    detail::QuotientComplex Q = detail::quotient_complex(S.complex, kill);

    std::map<int, Matrix> lb, lc;
    for (int n = Q.complex.n_min(); n <= Q.complex.n_max(); ++n) {
        if (B.rank(n) > 0) lb.emplace(n, mul(F, Q.proj.at(n), S.inj_left.map(n)));
        if (C.rank(n) > 0) lc.emplace(n, mul(F, Q.proj.at(n), S.inj_right.map(n)));
    }
    return PushoutResult{Q.complex,
                         FilteredMorphism(B, Q.complex, std::move(lb)),
                         FilteredMorphism(C, Q.complex, std::move(lc)),
                         f,
                         g,
                         std::move(Q.section)};
}

inline DirectSumResult coproduct(const BasedFilteredComplex& A, const BasedFilteredComplex& B) {
    return direct_sum(A, B);
}

struct PullbackResult {
    BasedFilteredComplex object;
    FilteredMorphism proj_left;   // P -> B
    FilteredMorphism proj_right;  // P -> C
};

// Fiber product of f: B -> D and g: C -> D, computed degreewise and
// filtration degreewise.
inline PullbackResult pullback(const FilteredMorphism& f, const FilteredMorphism& g) {
    if (f.target() != g.target()) throw input_error("pullback: cospan targets differ");
    const Field& F = f.field();
    const auto& B = f.source();
    const auto& C = g.source();
    DirectSumResult S = direct_sum(B, C);

    std::map<int, Matrix> gens;
    for (int n = S.complex.n_min(); n <= S.complex.n_max(); ++n) {
        if (S.complex.rank(n) == 0) continue;
        Matrix sys = hcat(f.map(n), neg(F, g.map(n)));
        gens.emplace(n, kernel(F, sys));
    }
    detail::SubComplex K = detail::sub_complex(S.complex, gens);

    std::map<int, Matrix> pb, pc;
    for (int n = K.complex.n_min(); n <= K.complex.n_max(); ++n) {
        if (K.complex.rank(n) == 0) continue;
        pb.emplace(n, mul(F, S.proj_left.map(n), K.incl.at(n)));
        pc.emplace(n, mul(F, S.proj_right.map(n), K.incl.at(n)));
    }
    return PullbackResult{K.complex, FilteredMorphism(K.complex, B, std::move(pb)),
                          FilteredMorphism(K.complex, C, std::move(pc))};
}

struct KernelResult {
    BasedFilteredComplex complex;
    FilteredMorphism incl;  // kernel -> source of f
};

inline KernelResult kernel_complex(const FilteredMorphism& f) {
    const Field& F = f.field();
    const auto& B = f.source();
    std::map<int, Matrix> gens;
    for (int n = B.n_min(); n <= B.n_max(); ++n)
        if (B.rank(n) > 0) gens.emplace(n, kernel(F, f.map(n)));
    detail::SubComplex K = detail::sub_complex(B, gens);
    std::map<int, Matrix> in;
    for (int n = K.complex.n_min(); n <= K.complex.n_max(); ++n)
        if (K.complex.rank(n) > 0) in.emplace(n, K.incl.at(n));
    return KernelResult{K.complex, FilteredMorphism(K.complex, B, std::move(in))};
}

struct CokernelResult {
    BasedFilteredComplex complex;
    FilteredMorphism proj;  // target of f -> cokernel
};

inline CokernelResult cokernel_complex(const FilteredMorphism& f) {
    const auto& B = f.target();
    std::map<int, Matrix> kill;
    for (int n = B.n_min(); n <= B.n_max(); ++n) {
        Matrix m = f.map(n);
        if (m.rows() > 0 && m.cols() > 0) kill.emplace(n, std::move(m));
    }
    detail::QuotientComplex Q = detail::quotient_complex(B, kill);
    std::map<int, Matrix> pr;
    for (int n = Q.complex.n_min(); n <= Q.complex.n_max(); ++n)
        if (B.rank(n) > 0) pr.emplace(n, Q.proj.at(n));
    return CokernelResult{Q.complex, FilteredMorphism(B, Q.complex, std::move(pr))};
}

// Block sum f (+) g acting summandwise between the coproducts.
inline FilteredMorphism direct_sum_morphisms(const FilteredMorphism& f,
                                             const FilteredMorphism& g) {
    DirectSumResult s = direct_sum(f.source(), g.source());
    DirectSumResult t = direct_sum(f.target(), g.target());
    return morphism_sum(compose(t.inj_left, compose(f, s.proj_left)),
                        compose(t.inj_right, compose(g, s.proj_right)));
}

}  // namespace fss
