#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fss/modelcat.hpp"
#include "fss/random_gen.hpp"

namespace fss {

namespace checks {

inline RandomComplexOptions small_opts() {
    return RandomComplexOptions{.atoms = 3, .n_lo = -1, .n_hi = 1, .p_lo = -2, .p_hi = 2,
                                .r_max = 2};
}

// Containment, d_r . d_r = 0, and the page-turning identity on random
// complexes, all r <= 4 at once from one memoized calculator.
inline Verdict page_calculus(const Field& F, Rng& rng) {
    Verdict v;
    RandomComplexOptions opt{.atoms = 5};
    for (int t = 0; t < 100 && v.ok; ++t) {
        BasedFilteredComplex A = random_complex(F, rng, opt);
        SpectralCalc calc(A);
        Window w = page_window(A, 5);
        for (int r = 0; r <= 4; ++r)
            for (long p = w.p_lo; p <= w.p_hi && v.ok; ++p)
                for (int n = w.n_lo; n <= w.n_hi && v.ok; ++n) {
                    const Subspace& z = calc.cycles(r, p, n);
                    const Subspace& b = calc.boundaries(r, p, n);
                    if (subspace_sum(F, z, b).dim() != z.dim())
                        v.fail("boundaries escape the cycles at " + bidegree_str(p, n) +
                               ", r=" + std::to_string(r) + ", sample " + std::to_string(t));
                    Matrix out = calc.page_differential(r, p, n);
                    Matrix in = calc.page_differential(r, p + r, n - 1);
                    if (!mul(F, out, in).is_zero())
                        v.fail("d_r composes nonzero through " + bidegree_str(p, n) +
                               ", r=" + std::to_string(r) + ", sample " + std::to_string(t));
                    int h = calc.dim(r, p, n) - rank(F, out) - rank(F, in);
                    if (h != calc.dim(r + 1, p, n))
                        v.fail("page turn is not homology at " + bidegree_str(p, n) +
                               ", r=" + std::to_string(r) + ", sample " + std::to_string(t));
                }
    }
    return v;
}

// is_r_quasi_iso(f, r) agrees with is_r_acyclic(cone(f, r), r); every fifth
// sample is a filtered isomorphism so both truth values occur.
inline Verdict cone_detects_equivalences(const Field& F, Rng& rng) {
    Verdict v;
    RandomComplexOptions opt = small_opts();
    int seen_true = 0, seen_false = 0;
    for (int t = 0; t < 50 && v.ok; ++t) {
        int r = t % 3;
        BasedFilteredComplex A = random_complex(F, rng, opt);
        FilteredMorphism f = t % 5 == 0 ? random_conjugation(A, rng).iso
                                        : random_morphism(A, random_complex(F, rng, opt), rng);
        ConeCriterionResult res = cone_criterion_cross_check(f, r);
        if (!res.agree)
            v.fail("cone verdict disagrees with the page verdict on sample " + std::to_string(t) +
                   ", r=" + std::to_string(r));
        (res.weq.ok ? seen_true : seen_false)++;
    }
    if (seen_true == 0) v.fail("no equivalence occurred among the samples");
    if (seen_false == 0) v.fail("no non-equivalence occurred among the samples");
    return v;
}

// Truncated staircase at depth 6: pages below the index carry no
// differential, the index page differential is an isomorphism along the
// diagonal, and the projection is an acyclic fibration on the safe window.
inline Verdict staircase_pages(const Field& F, Rng&) {
    Verdict v;
    for (int r : {1, 2}) {
        StaircaseResult st = staircase(F, r, 6);
        for (int k = 0; k < r; ++k) {
            SpectralPage pg = page(st.Q, k, page_window(st.Q, k));
            for (const PageEntry& e : pg.entries)
                if (e.d_r_rank != 0)
                    v.fail("d_" + std::to_string(k) + " nonzero at " + bidegree_str(e.p, e.n) +
                           ", r=" + std::to_string(r));
        }
        SpectralCalc calc(st.Q);
        for (long p = -3; p <= -1; ++p) {
            if (calc.dim(r, p, 0) != 1 || rank(F, calc.page_differential(r, p, 0)) != 1)
                v.fail("index-page differential is not an isomorphism at " + bidegree_str(p, 0) +
                       ", r=" + std::to_string(r));
        }
        SSpec spec{r, {r}};
        Window safe{r - 4, 2, -1, 2};
        Verdict fib = is_S_fibration(st.pi, spec, joint_page_window(st.pi, r));
        Verdict weq = is_r_quasi_iso(st.pi, r, safe);
        if (!fib.ok) v.fail("projection is not a fibration, r=" + std::to_string(r));
        if (!weq.ok) v.fail("projection is not an equivalence on the safe window, r=" +
                            std::to_string(r));
    }
    return v;
}

// Sphere (x) sphere lands on the sphere of summed bidegree; cycle (x) cycle
// splits as the certified two-term sum.
inline Verdict tensor_atoms(const Field& F, Rng& rng) {
    Verdict v;
    std::uniform_int_distribution<long> wt(-3, 3);
    std::uniform_int_distribution<int> deg(-2, 2);
    for (int t = 0; t < 10 && v.ok; ++t) {
        long p = wt(rng), q = wt(rng);
        int n = deg(rng), m = deg(rng);
        BasedFilteredComplex T = tensor(make_sphere(F, p, n), make_sphere(F, q, m));
        auto cert = find_filtered_isomorphism(T, make_sphere(F, p + q, n + m));
        if (!cert || !certificate_valid(*cert))
            v.fail("sphere tensor is not the expected sphere at p=" + std::to_string(p) +
                   ", q=" + std::to_string(q));
    }
    for (int off = 0; off < 5 && v.ok; ++off) {
        long p = wt(rng), q = wt(rng);
        int n = deg(rng), m = deg(rng);
        for (int tt = 0; tt <= 2; ++tt)
            for (int s = 0; s <= tt; ++s) {
                Verdict d = tensor_decomposition_check(F, s, tt, p, n, q, m);
                if (!d.ok)
                    v.fail("cycle tensor decomposition fails for s=" + std::to_string(s) +
                           ", t=" + std::to_string(tt) + ": " + d.witnesses.front());
            }
    }
    return v;
}

// Pushout products of the generating maps: against a cycle inclusion the
// product is isomorphic, as a morphism, to a four-summand inclusion;
// against another generating cofibration it is a recognized inclusion
// whose cokernel splits into two cycle representatives.
inline Verdict pushout_products(const Field& F, Rng& rng) {
    Verdict v;
    std::uniform_int_distribution<long> wt(-1, 1);
    std::uniform_int_distribution<int> deg(-1, 1);
    BasedFilteredComplex none = BasedFilteredComplex::empty(F);
    for (int r : {1, 2}) {
        for (int s = 0; s <= r && v.ok; ++s) {
            long p = wt(rng), q = wt(rng);
            int n = deg(rng), m = deg(rng);
            FilteredMorphism u = pushout_product(
                make_phi(F, r + 1, p, n), zero_morphism(none, make_cycle_rep(F, s, q, m)));
            long pq = p + q;
            int nm = n + m;
            FilteredMorphism w = direct_sum_morphisms(
                direct_sum_morphisms(
                    direct_sum_morphisms(
                        zero_morphism(none, make_cycle_rep(F, s, pq + r, nm - 1)),
                        zero_morphism(none, make_cycle_rep(F, s, pq - 1, nm))),
                    identity_morphism(make_cycle_rep(F, s, pq - r - 1, nm + 1))),
                identity_morphism(make_cycle_rep(F, s, pq, nm)));
            auto cert = find_filtered_isomorphism_of_morphisms(u, w);
            bool ok = cert && certificate_valid(cert->source_iso) &&
                      certificate_valid(cert->target_iso) &&
                      morphisms_equal(compose(cert->target_iso.forward, u),
                                      compose(w, cert->source_iso.forward));
            if (!ok)
                v.fail("product with a cycle inclusion misses the four-summand shape, r=" +
                       std::to_string(r) + ", s=" + std::to_string(s));
        }
        long p = wt(rng), q = wt(rng);
        int n = deg(rng), m = deg(rng);
        FilteredMorphism u =
            pushout_product(make_phi(F, r + 1, p, n), make_phi(F, r + 1, q, m));
        auto inc = is_r_suppressive_inclusion(u, r);
        if (!inc.verdict.ok)
            v.fail("product of two generating cofibrations is not a recognized inclusion, r=" +
                   std::to_string(r));
        BasedFilteredComplex C = cokernel_complex(u).complex;
        BasedFilteredComplex R =
            direct_sum(make_cycle_rep(F, r + 1, p + q + 2 * r, n + m - 2),
                       make_cycle_rep(F, r + 1, p + q + r - 1, n + m - 1))
                .complex;
        auto cert = find_filtered_isomorphism(C, R);
        if (!cert || !certificate_valid(*cert))
            v.fail("cokernel of the double product is not two cycle representatives, r=" +
                   std::to_string(r));
    }
    return v;
}

// Lifting against the acyclic generators recognizes the fibrations, and
// lifting against the full generator set recognizes the acyclic
// fibrations; samples mix plain random maps with known fibrations.
inline Verdict lifting_identities(const Field& F, Rng& rng) {
    Verdict v;
    RandomComplexOptions opt = small_opts();
    std::vector<SSpec> specs = {{1, {1}}, {2, {0, 2}}, {2, {0, 1, 2}}};
    for (int t = 0; t < 20 && v.ok; ++t) {
        const SSpec& spec = specs[size_t(t) % specs.size()];
        BasedFilteredComplex A = random_complex(F, rng, opt);
        FilteredMorphism f = [&] {
            switch (t % 4) {
                case 0: return random_morphism(A, random_complex(F, rng, opt), rng);
                case 1: return cone_of_identity(make_cycle_rep(F, spec.r, 0, 0), spec.r).proj;
                case 2: return identity_morphism(A);
                default:
                    return cone_of_identity(make_cycle_rep(F, spec.r + 1, 0, 0), spec.r).proj;
            }
        }();
        Window w = rlp_window(f, spec);
        bool rlpJ = has_rlp_against(f, J_shapes(spec), w).ok;
        bool fib = is_S_fibration(f, spec, joint_page_window(f, spec.r)).ok;
        if (rlpJ != fib)
            v.fail("acyclic-generator lifting disagrees with the fibration predicate on sample " +
                   std::to_string(t));
        bool rlpI = has_rlp_against(f, I_shapes(spec), w).ok;
        bool weq = is_r_quasi_iso(f, spec.r, joint_page_window(f, spec.r + 1)).ok;
        if (rlpI != (fib && weq))
            v.fail("full-generator lifting disagrees with acyclic fibration on sample " +
                   std::to_string(t));
    }
    return v;
}

// Pushouts along a generating cofibration match the closed form: the
// target plus one new generator killing the attached cycle and one
// bookkeeping generator below it.
inline Verdict attachment_pushouts(const Field& F, Rng& rng) {
    Verdict v;
    RandomComplexOptions opt = small_opts();
    int done = 0;
    for (int t = 0; done < 10 && t < 40 && v.ok; ++t) {
        int r = t % 3;
        BasedFilteredComplex A = random_complex(F, rng, opt);
        BasedFilteredComplex z = make_cycle_rep(F, r + 1, 0, 0);
        ChainMapSpace maps = chain_map_space(z, A);
        if (maps.dim() == 0) continue;
        std::vector<Scalar> c(size_t(maps.dim()));
        for (auto& x : c) x = random_scalar(F, rng);
        FilteredMorphism attach = maps.from_coords(c);
        PushoutResult P = pushout(attach, make_phi(F, r + 1, 0, 0));
        BasedFilteredComplex closed = attachment_closed_form(attach);
        auto cert = find_filtered_isomorphism(P.object, closed);
        if (!cert || !certificate_valid(*cert))
            v.fail("pushout along the generator misses the closed form on sample " +
                   std::to_string(t));
        ++done;
    }
    if (done < 10) v.fail("only " + std::to_string(done) + " attaching maps were nontrivial");
    return v;
}

// Tensoring with the resolved unit is an equivalence, including for
// complexes that are themselves not cofibrant.
inline Verdict unit_resolution(const Field& F, Rng& rng) {
    Verdict v;
    RandomComplexOptions opt = small_opts();
    for (int t = 0; t < 10 && v.ok; ++t) {
        BasedFilteredComplex A =
            t == 0 ? make_sphere(F, 0, 0) : random_complex(F, rng, opt);
        for (int r : {1, 2}) {
            Verdict u = unit_axiom_check(A, r, 8);
            if (!u.ok)
                v.fail("unit resolution fails on sample " + std::to_string(t) +
                       ", r=" + std::to_string(r) + ": " + u.witnesses.front());
        }
    }
    return v;
}

// Reindexing: decalage inverts shift on the nose; the suppressive round
// trip recovers the input; decalage identifies cycle representatives that
// are not isomorphic beforehand.
inline Verdict reindexing(const Field& F, Rng& rng) {
    Verdict v;
    RandomComplexOptions opt = small_opts();
    for (int t = 0; t < 50 && v.ok; ++t) {
        int l = 1 + t % 2;
        BasedFilteredComplex A = random_complex(F, rng, opt);
        if (!(decalage(shift(A, l), l) == A))
            v.fail("decalage does not invert shift on sample " + std::to_string(t) +
                   ", l=" + std::to_string(l));
    }
    std::uniform_int_distribution<long> wt(-2, 2);
    std::uniform_int_distribution<int> deg(-1, 1);
    for (auto [k, l] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}}) {
        BasedFilteredComplex A =
            direct_sum(make_cycle_rep(F, k + l, wt(rng), deg(rng)),
                       direct_sum(make_cycle_rep(F, k + l + 1, wt(rng), deg(rng)),
                                  make_sphere(F, wt(rng), deg(rng)))
                           .complex)
                .complex;
        DecShiftReport rep = dec_shift_equivalence_check(A, k, l);
        if (!rep.verdict.ok || !rep.roundtrip_ran || !(rep.roundtrip_bitwise || rep.roundtrip_iso))
            v.fail("suppressive round trip fails for k=" + std::to_string(k) +
                   ", l=" + std::to_string(l));
    }
    for (int t = 0; t < 5 && v.ok; ++t) {
        long p = wt(rng);
        int n = deg(rng);
        BasedFilteredComplex a = make_cycle_rep(F, 0, p, n);
        BasedFilteredComplex b = make_cycle_rep(F, 1, p + 1, n);
        if (find_filtered_isomorphism(a, b))
            v.fail("distinct cycle representatives admit a certificate at p=" +
                   std::to_string(p));
        if (!(decalage(a, 1) == decalage(b, 1)))
            v.fail("decalage fails to identify the pair at p=" + std::to_string(p));
    }
    return v;
}

// Cycle representatives and the staircase pass the cofibrancy conditions;
// the unit sphere fails the probe lifting; the page-vanishing check
// separates the index sets.
inline Verdict cofibrancy_diagnostics(const Field& F, Rng& rng) {
    Verdict v;
    std::uniform_int_distribution<long> wt(-1, 2);
    std::uniform_int_distribution<int> deg(-1, 1);
    for (int r : {1, 2}) {
        SSpec spec{r, {r}};
        auto rep = cofibrant_conditions(make_cycle_rep(F, r + 1, wt(rng), deg(rng)), spec);
        if (!rep.subclass_cofibrant || rep.probes_used == 0)
            v.fail("cycle representative fails the conditions, r=" + std::to_string(r));
        auto stair = cofibrant_conditions(staircase(F, r, 6).Q, spec);
        if (!stair.subclass_cofibrant || stair.probes_used == 0)
            v.fail("staircase fails the conditions, r=" + std::to_string(r));
        auto unit = cofibrant_conditions(make_sphere(F, 0, 0), spec);
        if (unit.lifting || unit.subclass_cofibrant)
            v.fail("unit sphere passes the probe lifting it should fail, r=" + std::to_string(r));
    }
    BasedFilteredComplex z = make_cycle_rep(F, 1, 0, 0);
    Window w = page_window(z, 3);
    if (page_zero_check(z, {2, {2}}, w).ok)
        v.fail("page-vanishing check accepts an index set it should reject");
    if (page_zero_check(z, {2, {0, 2}}, w).ok)
        v.fail("page-vanishing check accepts a gapped index set it should reject");
    if (!page_zero_check(z, {2, {0, 1, 2}}, w).ok)
        v.fail("page-vanishing check rejects the full index set");
    return v;
}

// The unit factorization: the composite recovers the projection-plus-
// identity map, the second factor is an equivalence, and the first factor
// is a recognized cofibration.
inline Verdict unit_factorization(const Field& F, Rng&) {
    Verdict v;
    MuroFactorization mf = muro_factorization(F, 1, 6);
    StaircaseResult st = staircase(F, 1, 6);
    DirectSumResult X = direct_sum(st.Q, make_sphere(F, 0, 0));
    Matrix m0 = hcat(st.pi.map(0), Matrix::identity(1));
    FilteredMorphism expected(X.complex, make_sphere(F, 0, 0), {{0, std::move(m0)}});
    if (!morphisms_equal(compose(mf.q, mf.j), expected))
        v.fail("composite of the factorization is not the projection-plus-identity map");
    if (!is_r_quasi_iso(mf.q, 1, Window{-3, 2, -2, 2}).ok)
        v.fail("second factor is not an equivalence on the safe window");
    auto rep = subclass_cofibration_check(mf.j, SSpec{1, {1}});
    if (!rep.verdict.ok) v.fail("first factor is not a recognized cofibration");
    return v;
}

// Tensoring an acyclic generator with an arbitrary complex stays an
// equivalence, with the codomain certified as a shifted cone.
inline Verdict monoid_spot_checks(const Field& F, Rng& rng) {
    Verdict v;
    RandomComplexOptions opt = small_opts();
    std::uniform_int_distribution<long> wt(-2, 2);
    std::uniform_int_distribution<int> deg(-1, 1);
    for (int t = 0; t < 10 && v.ok; ++t) {
        int r = t % 3;
        int s = r == 0 ? 0 : t % (r + 1);
        BasedFilteredComplex A = random_complex(F, rng, opt);
        MonoidAxiomReport rep = monoid_axiom_spot_check(s, wt(rng), deg(rng), A, r);
        if (!rep.verdict.ok)
            v.fail("tensored generator fails on sample " + std::to_string(t) + ", s=" +
                   std::to_string(s) + ", r=" + std::to_string(r) + ": " +
                   rep.verdict.witnesses.front());
    }
    return v;
}

}  // namespace checks

struct CriterionResult {
    int number = 0;
    std::string name;
    std::string title;
    Verdict verdict;
};

struct Criterion {
    std::string name;
    std::string title;
    std::function<Verdict(const Field&, Rng&)> run;
};

inline const std::vector<Criterion>& verification_criteria() {
    static const std::vector<Criterion> cs = {
        {"pages", "page calculus is internally consistent", checks::page_calculus},
        {"cone", "cone acyclicity detects equivalences", checks::cone_detects_equivalences},
        {"staircase", "staircase pages and projection", checks::staircase_pages},
        {"tensor", "sphere tensor law and cycle decompositions", checks::tensor_atoms},
        {"pushout-product", "pushout products of generating maps", checks::pushout_products},
        {"lifting", "lifting properties match the predicates", checks::lifting_identities},
        {"attachment", "pushouts along generators match the closed form",
         checks::attachment_pushouts},
        {"unit", "tensoring with the resolved unit is an equivalence", checks::unit_resolution},
        {"dec-shift", "shift and decalage reindexing", checks::reindexing},
        {"cofibrancy", "cofibrancy diagnostics separate the examples",
         checks::cofibrancy_diagnostics},
        {"factorization", "unit factorization through the staircase",
         checks::unit_factorization},
        {"monoid", "tensored acyclic generators stay equivalences", checks::monoid_spot_checks},
    };
    return cs;
}

// Runs the named criterion, or all of them when name is empty. Unknown
// names raise input_error listing what exists.
inline std::vector<CriterionResult> run_verification(std::uint64_t seed,
                                                     const std::string& name = "") {
    const Field F = Field::rationals();
    std::vector<CriterionResult> out;
    bool found = false;
    int number = 0;
    for (const Criterion& c : verification_criteria()) {
        ++number;
        if (!name.empty() && c.name != name) continue;
        found = true;
        Rng rng(seed + std::uint64_t(number) * 0x9e3779b97f4a7c15ULL);
        CriterionResult res{number, c.name, c.title, {}};
        try {
            res.verdict = c.run(F, rng);
        } catch (const std::exception& e) {
            res.verdict.fail(std::string("exception: ") + e.what());
        }
        out.push_back(std::move(res));
    }
    if (!name.empty() && !found) {
        std::string known;
        for (const Criterion& c : verification_criteria())
            known += (known.empty() ? "" : ", ") + c.name;
        throw input_error("unknown suite \"" + name + "\" (known: " + known + ")");
    }
    return out;
}

inline void print_verification_table(std::ostream& os,
                                     const std::vector<CriterionResult>& results) {
    size_t name_w = 0;
    for (const CriterionResult& res : results) name_w = std::max(name_w, res.name.size());
    int passed = 0;
    for (const CriterionResult& res : results) {
        std::string num = std::to_string(res.number);
        if (num.size() < 2) num = " " + num;
        os << num << "  " << res.name << std::string(name_w - res.name.size(), ' ') << "  "
           << (res.verdict.ok ? "pass" : "FAIL") << "  " << res.title << "\n";
        if (res.verdict.ok)
            ++passed;
        else
            for (const std::string& w : res.verdict.witnesses) os << "      " << w << "\n";
    }
    os << passed << "/" << results.size() << " passed\n";
}

}  // namespace fss
