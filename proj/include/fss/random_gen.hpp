#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "fss/constructors.hpp"
#include "fss/hom.hpp"

namespace fss {

using Rng = std::mt19937_64;

// Seed from the FSS_SEED environment variable when set, else the fallback.
inline std::uint64_t seed_from_env(std::uint64_t fallback = 20260814) {
    if (const char* s = std::getenv("FSS_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && end != s) return v;
    }
    return fallback;
}

inline Scalar random_scalar(const Field& F, Rng& rng, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> pick(lo, hi);
    return F.from_long(pick(rng));
}

struct RandomComplexOptions {
    int atoms = 4;
    int n_lo = -2, n_hi = 2;
    long p_lo = -3, p_hi = 3;
    int r_max = 3;
    bool conjugate = true;
};

// Direct sum of random spheres and cycle representers.
inline BasedFilteredComplex random_atom_sum(const Field& F, Rng& rng,
                                            const RandomComplexOptions& opt = {}) {
    std::uniform_int_distribution<int> deg(opt.n_lo, opt.n_hi);
    std::uniform_int_distribution<long> wt(opt.p_lo, opt.p_hi);
    std::uniform_int_distribution<int> rr(0, opt.r_max);
    std::uniform_int_distribution<int> kind(0, 2);
    BasedFilteredComplex acc = BasedFilteredComplex::empty(F);
    for (int k = 0; k < opt.atoms; ++k) {
        BasedFilteredComplex atom = kind(rng) == 0
                                        ? make_sphere(F, wt(rng), deg(rng))
                                        : make_cycle_rep(F, rr(rng), wt(rng), deg(rng));
        acc = acc.total_rank() == 0 ? atom : direct_sum(acc, atom).complex;
    }
    return acc;
}

struct BasedIso {
    BasedFilteredComplex complex;
    FilteredMorphism iso;  // original -> conjugated, a filtered isomorphism
};

// Change of basis by a random unipotent filtered automorphism g (entries
// only where the row weight is strictly below the column weight, ones on
// the diagonal); the result keeps the weights and carries g d g^{-1}.
inline BasedIso random_conjugation(const BasedFilteredComplex& A, Rng& rng, int density_pct = 40) {
    const Field& F = A.field();
    std::uniform_int_distribution<int> pct(0, 99);
    std::map<int, Matrix> gs, ginv;
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        int m = A.rank(n);
        if (m == 0) continue;
        Matrix g = Matrix::identity(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (A.weight(n, i) < A.weight(n, j) && pct(rng) < density_pct)
                    g.at(i, j) = random_scalar(F, rng, -2, 2);
        auto inv = solve_matrix(F, g, Matrix::identity(m));
        ginv.emplace(n, std::move(*inv));
        gs.emplace(n, std::move(g));
    }
    auto block = [&](const std::map<int, Matrix>& ms, int n) {
        auto it = ms.find(n);
        if (it != ms.end()) return it->second;
        return Matrix::identity(A.rank(n));
    };
    std::vector<std::vector<long>> ws;
    std::vector<Matrix> ds;
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        ws.push_back(A.weights(n));
        ds.push_back(mul(F, block(gs, n + 1), mul(F, A.d(n), block(ginv, n))));
    }
    BasedFilteredComplex B(F, A.n_min(), std::move(ws), std::move(ds));
    FilteredMorphism iso(A, B, std::move(gs));
    return BasedIso{std::move(B), std::move(iso)};
}

inline BasedFilteredComplex random_complex(const Field& F, Rng& rng,
                                           const RandomComplexOptions& opt = {}) {
    BasedFilteredComplex A = random_atom_sum(F, rng, opt);
    if (!opt.conjugate || A.total_rank() == 0) return A;
    return random_conjugation(A, rng).complex;
}

// Random element of the chain-map space, small integer coordinates.
inline FilteredMorphism random_morphism(const BasedFilteredComplex& A,
                                        const BasedFilteredComplex& B, Rng& rng) {
    ChainMapSpace S = chain_map_space(A, B);
    if (S.dim() == 0) return zero_morphism(A, B);
    std::vector<Scalar> c(S.dim());
    for (auto& x : c) x = random_scalar(A.field(), rng, -2, 2);
    return S.from_coords(c);
}

}  // namespace fss
