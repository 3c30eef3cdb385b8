#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fss/colim.hpp"
#include "fss/monoidal.hpp"

namespace fss {

// ---------------------------------------------------------------------------
// Model structure parameters and generating maps
// ---------------------------------------------------------------------------

enum class GeneratorKind { cofibration, acyclic_cofibration };

// One generating map: phi_index(p, n) for kind cofibration (index >= 1), or
// the inclusion 0 -> Z_index(p, n) for kind acyclic_cofibration (index >= 0).
struct GeneratorId {
    GeneratorKind kind = GeneratorKind::cofibration;
    int index = 1;
    long p = 0;
    int n = 0;
};

// Parameters (r, S): weak equivalences are the r-quasi-isomorphisms and
// fibrations are the maps surjective on Z_s elements for every s in S.
struct SSpec {
    int r = 0;
    std::set<int> S = {0};
};

inline void validate_spec(const SSpec& spec) {
    if (spec.r < 0) throw input_error("spec: r must be >= 0");
    if (spec.S.count(spec.r) == 0) throw input_error("spec: S must contain r");
    for (int s : spec.S)
        if (s < 0 || s > spec.r)
            throw input_error("spec: S must be a subset of {0, ..., r}");
}

inline std::string generator_str(const GeneratorId& id) {
    std::string at = "(p=" + std::to_string(id.p) + ", n=" + std::to_string(id.n) + ")";
    if (id.kind == GeneratorKind::cofibration)
        return "phi_" + std::to_string(id.index) + at;
    return "0->Z_" + std::to_string(id.index) + at;
}

inline FilteredMorphism generating_map(const Field& F, const GeneratorId& id) {
    if (id.kind == GeneratorKind::cofibration) {
        if (id.index < 1) throw input_error("generating_map: cofibration index must be >= 1");
        return make_phi(F, id.index, id.p, id.n);
    }
    if (id.index < 0) throw input_error("generating_map: cycle index must be >= 0");
    return zero_morphism(BasedFilteredComplex::empty(F),
                         make_cycle_rep(F, id.index, id.p, id.n));
}

// Shapes of the acyclic generating maps; the (p, n) fields are placeholders
// that the RLP sweep replaces by every bidegree of its window.
inline std::vector<GeneratorId> J_shapes(const SSpec& spec) {
    validate_spec(spec);
    std::vector<GeneratorId> out;
    for (int s : spec.S) out.push_back({GeneratorKind::acyclic_cofibration, s, 0, 0});
    return out;
}

inline std::vector<GeneratorId> I_shapes(const SSpec& spec) {
    std::vector<GeneratorId> out = J_shapes(spec);
    out.insert(out.begin(), GeneratorId{GeneratorKind::cofibration, spec.r + 1, 0, 0});
    return out;
}

// ---------------------------------------------------------------------------
// Fibration predicates
// ---------------------------------------------------------------------------

// f surjects onto Z_s at every bidegree of the window, for each s in S.
// The window must cover the joint support padded by max(S) + 1; beyond the
// padding the surjectivity pattern has stabilized degreewise.
inline Verdict is_S_fibration(const FilteredMorphism& f, const SSpec& spec, const Window& w) {
    validate_spec(spec);
    Verdict v;
    const Field& F = f.field();
    SpectralCalc src(f.source()), tgt(f.target());
    for (int s : spec.S)
        for (long p = w.p_lo; p <= w.p_hi; ++p)
            for (int n = w.n_lo; n <= w.n_hi; ++n) {
                const Subspace& zt = tgt.cycles(s, p, n);
                if (zt.dim() == 0) continue;
                Subspace img = image_of_subspace(F, f.map(n), src.cycles(s, p, n));
                if (img.dim() != zt.dim())
                    v.fail("Z_" + std::to_string(s) + " not surjective at " + bidegree_str(p, n));
            }
    return v;
}

// Bidegreewise surjectivity of the induced map on k-page entries.
inline Verdict is_E_surjective(const FilteredMorphism& f, int k, const Window& w) {
    Verdict v;
    const Field& F = f.field();
    SpectralCalc src(f.source()), tgt(f.target());
    for (long p = w.p_lo; p <= w.p_hi; ++p)
        for (int n = w.n_lo; n <= w.n_hi; ++n) {
            const QuotientBasis& t = tgt.entry(k, p, n);
            if (t.dim() == 0) continue;
            const QuotientBasis& s = src.entry(k, p, n);
            Matrix m(t.dim(), s.dim());
            Matrix fn = f.map(n);
            for (int c = 0; c < s.dim(); ++c) {
                auto coords = quotient_coords(F, t, apply(F, fn, s.reps.col(c)));
                for (int i = 0; i < t.dim(); ++i) m.at(i, c) = coords[i];
            }
            if (rank(F, m) != t.dim())
                v.fail("E_" + std::to_string(k) + " not surjective at " + bidegree_str(p, n));
        }
    return v;
}

// ---------------------------------------------------------------------------
// Right lifting properties
// ---------------------------------------------------------------------------

// Bidegree sweep for RLP tests. Generators with p below the window hit only
// zero filtration pieces and generators above it repeat the stabilized
// degreewise pattern, so the swept instances decide the property.
inline Window rlp_window(const FilteredMorphism& f, const SSpec& spec) {
    return auto_window({&f.source(), &f.target()}, spec.r + 2, 2);
}

// RLP of f against one concrete map i0. The commuting squares (u, v) form a
// vector space and lifts add, so f has the RLP iff the linear map sending a
// chain map h : B -> X to the square (h i0, f h) is onto that space.
inline Verdict has_rlp_against_map(const FilteredMorphism& f, const FilteredMorphism& i0,
                                   const std::string& label = "generator") {
    Verdict v;
    const Field& F = f.field();
    const auto& A = i0.source();
    const auto& B = i0.target();
    const auto& X = f.source();
    const auto& Y = f.target();

    MapVars vu = build_map_vars(A, X);
    MapVars vv = build_map_vars(B, Y);
    int total = vu.total + vv.total;
    if (total == 0) return v;

    std::vector<std::vector<Scalar>> rows;
    append_chain_rows(F, vu, 0, rows, total);
    append_chain_rows(F, vv, vu.total, rows, total);
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        int ra = A.rank(n), ry = Y.rank(n);
        if (ra == 0 || ry == 0) continue;
        Matrix fn = f.map(n), in = i0.map(n);
        for (int y = 0; y < ry; ++y)
            for (int a = 0; a < ra; ++a) {
                std::vector<Scalar> row(total, Scalar(0));
                bool nonzero = false;
                for (int x = 0; x < X.rank(n); ++x) {
                    int k = vu.var(n, x, a);
                    if (k >= 0 && fn.at(y, x) != 0) {
                        row[k] = F.add(row[k], fn.at(y, x));
                        nonzero = true;
                    }
                }
                for (int b = 0; b < B.rank(n); ++b) {
                    int k = vv.var(n, y, b);
                    if (k >= 0 && in.at(b, a) != 0) {
                        row[vu.total + k] = F.sub(row[vu.total + k], in.at(b, a));
                        nonzero = true;
                    }
                }
                if (nonzero) rows.push_back(std::move(row));
            }
    }
    Matrix sys(int(rows.size()), total);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < total; ++j) sys.at(int(i), j) = rows[i][j];
    Matrix squares = kernel(F, sys);
    if (squares.cols() == 0) return v;

    ChainMapSpace H = chain_map_space(B, X);
    Matrix images(total, H.dim());
    for (int k = 0; k < H.dim(); ++k) {
        FilteredMorphism h = H.morphism(k);
        auto cu = vars_of_morphism(vu, compose(h, i0));
        auto cv = vars_of_morphism(vv, compose(f, h));
        if (!cu || !cv) {
            v.fail(label + ": composite leaves the admissible pattern");
            return v;
        }
        for (int i = 0; i < vu.total; ++i) images.at(i, k) = (*cu)[i];
        for (int i = 0; i < vv.total; ++i) images.at(vu.total + i, k) = (*cv)[i];
    }
    auto coords = solve_matrix(F, squares, images);
    if (!coords) {
        v.fail(label + ": image of the lift map escapes the square space");
        return v;
    }
    if (rank(F, *coords) == squares.cols()) return v;

    // name one basis square that has no lift, re-deciding it directly
    for (int c = 0; c < squares.cols(); ++c) {
        std::vector<Scalar> full = squares.col(c);
        std::vector<Scalar> cu(full.begin(), full.begin() + vu.total);
        std::vector<Scalar> cv(full.begin() + vu.total, full.end());
        FilteredMorphism u = morphism_from_vars(vu, cu);
        FilteredMorphism w = morphism_from_vars(vv, cv);
        if (!solve_lifting(LiftingProblem{i0, f, u, w})) {
            v.fail(label + ": square " + std::to_string(c) + " of " +
                   std::to_string(squares.cols()) + " admits no lift");
            return v;
        }
    }
    v.fail(label + ": square space has unliftable members");
    return v;
}

// RLP of f against every instance of the given shapes with bidegree in the
// window. Stops at the first failing instance.
inline Verdict has_rlp_against(const FilteredMorphism& f, const std::vector<GeneratorId>& shapes,
                               const Window& w) {
    Verdict v;
    const Field& F = f.field();
    for (const GeneratorId& shape : shapes)
        for (long p = w.p_lo; p <= w.p_hi; ++p)
            for (int n = w.n_lo; n <= w.n_hi; ++n) {
                GeneratorId id = shape;
                id.p = p;
                id.n = n;
                FilteredMorphism i0 = generating_map(F, id);
                Verdict one = has_rlp_against_map(f, i0, generator_str(id));
                if (!one.ok) {
                    for (auto& wit : one.witnesses) v.fail(std::move(wit));
                    return v;
                }
            }
    return v;
}

// ---------------------------------------------------------------------------
// Suppressive objects and inclusions
// ---------------------------------------------------------------------------

// Every nonzero entry of the differential drops weight by at least k.
inline Verdict is_k_suppressive(const BasedFilteredComplex& A, int k) {
    Verdict v;
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        Matrix d = A.d(n);
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j) {
                if (d.at(i, j) == 0) continue;
                long drop = A.weight(n, j) - A.weight(n + 1, i);
                if (drop < k)
                    v.fail("d drops weight by " + std::to_string(drop) + " < " +
                           std::to_string(k) + " out of degree " + std::to_string(n));
            }
    }
    return v;
}

// Suppressiveness of a twist is known only for the generating cofibrations
// and their cell composites; reports must flag a small drop as inconclusive
// for cofibrancy rather than as a refutation.
inline const char* twist_conjecture_note() {
    return "a twist drop below r is conjectured impossible for cofibrations "
           "but does not by itself certify that the map is not one";
}

struct SuppressiveInclusionResult {
    Verdict verdict;      // inclusion_ok and the twist drops weight by >= r
    bool inclusion_ok = false;  // strict degreewise split inclusion
    std::optional<BasedFilteredComplex> complement;
    std::map<int, Matrix> tau;        // complement^n -> source^{n+1}
    std::optional<long> min_drop;     // least weight drop of a nonzero twist entry
    std::optional<IsoCertificate> iso;  // source (+)_tau complement -> target
    std::string note;
};

// Decides whether f is a strict split inclusion and exhibits the target as a
// twisted sum source (+)_tau complement. The complement is grown greedily
// from the target's basis in ascending weight order; the final certificate
// is what the verdict rests on, not the greedy choice.
inline SuppressiveInclusionResult is_r_suppressive_inclusion(const FilteredMorphism& f, int r) {
    SuppressiveInclusionResult out;
    const Field& F = f.field();
    const auto& A = f.source();
    const auto& B = f.target();

    for (int n = f.n_min(); n <= f.n_max(); ++n)
        if (rank(F, f.map(n)) != A.rank(n)) {
            out.verdict.fail("not injective in degree " + std::to_string(n));
            return out;
        }
    for (int n = f.n_min(); n <= f.n_max(); ++n) {
        if (B.rank(n) == 0) continue;
        Subspace im = image(F, f.map(n));
        std::set<long> ps(B.weights(n).begin(), B.weights(n).end());
        for (long w : A.weights(n)) ps.insert(w);
        for (long p : ps) {
            Subspace fa = filtration_subspace(A, p, n);
            Subspace left = image_of_subspace(F, f.map(n), fa);
            Subspace right = subspace_intersect(F, im, filtration_subspace(B, p, n));
            if (left.dim() != right.dim()) {
                out.verdict.fail("image is not a strict subobject at weight " +
                                 std::to_string(p) + ", degree " + std::to_string(n));
                return out;
            }
        }
    }

    // complement columns, ascending weight so the twist points downward
    std::map<int, std::vector<int>> picked;
    for (int n = f.n_min(); n <= f.n_max(); ++n) {
        if (B.rank(n) == 0) continue;
        std::vector<int> order(B.rank(n));
        for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return B.weight(n, a) < B.weight(n, b); });
        Subspace cur = image(F, f.map(n));
        for (int j : order) {
            std::vector<Scalar> e(B.rank(n), Scalar(0));
            e[j] = 1;
            if (contains(F, cur, e)) continue;
            picked[n].push_back(j);
            Matrix g(B.rank(n), 1);
            g.at(j, 0) = 1;
            cur = subspace_sum(F, cur, span(F, B.rank(n), g));
        }
        if (cur.dim() != B.rank(n)) {
            out.verdict.fail("no basis complement in degree " + std::to_string(n));
            return out;
        }
        std::sort(picked[n].begin(), picked[n].end());
    }

    auto complement_cols = [&](int n) {
        auto it = picked.find(n);
        int c = it == picked.end() ? 0 : int(it->second.size());
        Matrix j(B.rank(n), c);
        for (int k = 0; k < c; ++k) j.at(it->second[size_t(k)], k) = 1;
        return j;
    };

    // d^B [i | j] = [i | j] [[d^A, tau], [0, d^C]] determines tau and d^C
    int lo = f.n_min(), hi = f.n_max();
    std::vector<std::vector<long>> cw(size_t(hi - lo + 1));
    std::vector<Matrix> cd;
    std::map<int, Matrix> tau;
    for (int n = lo; n <= hi; ++n) {
        auto it = picked.find(n);
        if (it == picked.end()) continue;
        for (int j : it->second) cw[size_t(n - lo)].push_back(B.weight(n, j));
    }
    for (int n = lo; n < hi; ++n) {
        Matrix jn = complement_cols(n);
        int cn = jn.cols(), cn1 = complement_cols(n + 1).cols();
        if (B.rank(n + 1) == 0) {
            tau.emplace(n, Matrix(A.rank(n + 1), cn));
            cd.push_back(Matrix(cn1, cn));
            continue;
        }
        auto x = solve_matrix(F, hcat(f.map(n + 1), complement_cols(n + 1)),
                              mul(F, B.d(n), jn));
        if (!x) {
            out.verdict.fail("complement is not closed under d in degree " + std::to_string(n));
            return out;
        }
        Matrix tn(A.rank(n + 1), cn), dn(cn1, cn);
        for (int i = 0; i < A.rank(n + 1); ++i)
            for (int j = 0; j < cn; ++j) tn.at(i, j) = x->at(i, j);
        for (int i = 0; i < cn1; ++i)
            for (int j = 0; j < cn; ++j) dn.at(i, j) = x->at(A.rank(n + 1) + i, j);
        tau.emplace(n, std::move(tn));
        cd.push_back(std::move(dn));
    }
    cd.push_back(Matrix(0, complement_cols(hi).cols()));

    BasedFilteredComplex C(F, lo, cw, cd);
    auto bad = validate(C);
    if (!bad.empty()) {
        out.verdict.fail("complement fails validation: " + bad.front());
        return out;
    }

    std::optional<long> drop;
    bool raises = false;
    for (const auto& [n, tn] : tau)
        for (int i = 0; i < tn.rows(); ++i)
            for (int j = 0; j < tn.cols(); ++j) {
                if (tn.at(i, j) == 0) continue;
                long d = C.weight(n, j) - A.weight(n + 1, i);
                if (d < 0) raises = true;
                if (!drop || d < *drop) drop = d;
            }
    if (raises) {
        out.verdict.fail("twist raises filtration");
        return out;
    }

    TwistedSumResult D = twisted_sum(A, C, tau);
    std::map<int, Matrix> sig;
    for (int n = lo; n <= hi; ++n) {
        if (B.rank(n) == 0) continue;
        sig.emplace(n, hcat(f.map(n), complement_cols(n)));
    }
    FilteredMorphism sigma = make_morphism(D.complex, B, std::move(sig));
    auto inv = filtered_inverse(sigma);
    if (!inv) {
        out.verdict.fail("no filtered isomorphism onto the twisted sum");
        return out;
    }

    out.inclusion_ok = true;
    out.complement = std::move(C);
    out.tau = std::move(tau);
    out.min_drop = drop;
    out.iso = IsoCertificate{sigma, *inv};
    if (drop && *drop < r) {
        out.verdict.fail("twist drops weight by " + std::to_string(*drop) + " < " +
                         std::to_string(r));
        out.note = twist_conjecture_note();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cofibrancy condition reports
// ---------------------------------------------------------------------------

struct Probe {
    std::string name;
    BasedFilteredComplex complex;
};

inline std::vector<Probe> default_probes(const Field& F, int r) {
    return {Probe{"staircase_kernel(" + std::to_string(r) + ",9)", staircase_kernel(F, r, 9)},
            Probe{"cycle_rep(" + std::to_string(r) + ",0,0)", make_cycle_rep(F, r, 0, 0)}};
}

// Bidegrees through which a lifting problem out of A can see a probe. A
// probe whose (r+1)-page vanishes here is decisive for A even if truncation
// leaves a nonzero class further out.
inline Window probe_window(const BasedFilteredComplex& A, int r) {
    if (A.total_rank() == 0) return Window{0, 0, 0, 0};
    return Window{*A.min_weight() - (2 * r + 2), *A.max_weight() + (2 * r + 2),
                  A.n_min() - 2, A.n_max() + 2};
}

struct ProbeReport {
    std::string name;
    bool legitimate = false;  // r-acyclic on the decisive window
    bool used = false;
    bool lifts = false;
    std::vector<std::string> witnesses;
};

struct CofibrantConditions {
    bool projective = true;   // automatic over a field
    bool exhaustive = true;   // automatic for a finite basis
    Verdict suppressive;      // the differential drops weight by >= r
    std::vector<ProbeReport> probes;
    int probes_used = 0;
    bool lifting = true;      // every used probe lifts
    bool bounded_below = true;  // automatic at finite rank
    bool subclass_cofibrant = false;
};

// Reports the five member conditions of the cofibrant subclass. The first,
// second and fifth hold automatically here; the third is suppressiveness;
// the fourth is tested by lifting a basis of maps into each suspended probe
// against the projection from the probe's identity cone. Probes that are
// not r-acyclic on the decisive window are reported and skipped.
inline CofibrantConditions cofibrant_conditions(const BasedFilteredComplex& A, const SSpec& spec,
                                                const std::vector<Probe>& extra = {}) {
    validate_spec(spec);
    CofibrantConditions out;
    const Field& F = A.field();
    int r = spec.r;
    out.suppressive = is_k_suppressive(A, r);

    std::vector<Probe> probes = default_probes(F, r);
    probes.insert(probes.end(), extra.begin(), extra.end());
    FilteredMorphism from_zero = zero_morphism(BasedFilteredComplex::empty(F), A);
    for (const Probe& probe : probes) {
        ProbeReport rep;
        rep.name = probe.name;
        Verdict acyclic = is_r_acyclic(probe.complex, r, probe_window(A, r));
        rep.legitimate = acyclic.ok;
        if (!rep.legitimate) {
            rep.witnesses = acyclic.witnesses;
            rep.witnesses.push_back("probe skipped: not r-acyclic on the decisive window");
            out.probes.push_back(std::move(rep));
            continue;
        }
        rep.used = true;
        ++out.probes_used;
        ConeResult ck = cone_of_identity(probe.complex, r);
        Verdict lifted = has_rlp_against_map(ck.proj, from_zero, "probe " + probe.name);
        rep.lifts = lifted.ok;
        for (auto& wtn : lifted.witnesses) rep.witnesses.push_back(std::move(wtn));
        if (!rep.lifts) out.lifting = false;
        out.probes.push_back(std::move(rep));
    }
    out.subclass_cofibrant = out.suppressive.ok && out.lifting;
    return out;
}

// d_k vanishes on the window for every k < r outside S.
inline Verdict page_zero_check(const BasedFilteredComplex& A, const SSpec& spec, const Window& w) {
    validate_spec(spec);
    Verdict v;
    SpectralCalc calc(A);
    for (int k = 0; k < spec.r; ++k) {
        if (spec.S.count(k) > 0) continue;
        for (long p = w.p_lo; p <= w.p_hi; ++p)
            for (int n = w.n_lo; n <= w.n_hi; ++n)
                if (!calc.page_differential(k, p, n).is_zero())
                    v.fail("d_" + std::to_string(k) + " nonzero at " + bidegree_str(p, n));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Shift / decalage round trips
// ---------------------------------------------------------------------------

struct DecShiftReport {
    bool suppressive_k = false;      // input is k-suppressive
    bool suppressive_kl = false;     // input is (k+l)-suppressive
    bool unit_identity = false;      // decalage(shift(A, l), l) == A, always checked
    bool shift_suppressive = false;  // shift lands in the (k+l)-suppressive class
    bool roundtrip_ran = false;      // only defined on (k+l)-suppressive inputs
    bool roundtrip_bitwise = false;
    bool roundtrip_iso = false;
    Verdict verdict;
};

inline DecShiftReport dec_shift_equivalence_check(const BasedFilteredComplex& A, int k, int l) {
    if (l < 1) throw input_error("dec_shift_equivalence_check: l must be >= 1");
    DecShiftReport out;
    out.suppressive_k = is_k_suppressive(A, k).ok;
    out.suppressive_kl = is_k_suppressive(A, k + l).ok;

    BasedFilteredComplex sa = shift(A, l);
    out.unit_identity = decalage(sa, l) == A;
    if (!out.unit_identity) out.verdict.fail("decalage(shift(A)) differs from A");

    if (out.suppressive_k) {
        out.shift_suppressive = is_k_suppressive(sa, k + l).ok;
        if (!out.shift_suppressive)
            out.verdict.fail("shift is not (k+l)-suppressive");
    }
    if (out.suppressive_kl) {
        out.roundtrip_ran = true;
        BasedFilteredComplex back = shift(decalage(A, l), l);
        out.roundtrip_bitwise = back == A;
        out.roundtrip_iso = out.roundtrip_bitwise;
        if (!out.roundtrip_iso) {
            auto cert = find_filtered_isomorphism(back, A);
            out.roundtrip_iso = cert.has_value() && certificate_valid(*cert);
        }
        if (!out.roundtrip_iso) out.verdict.fail("shift(decalage(A)) is not isomorphic to A");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monoid axiom spot checks
// ---------------------------------------------------------------------------

struct MonoidAxiomReport {
    bool weq = false;               // (0 -> Z_s(p,n)) (x) id_A is an r-weq
    bool codomain_matches = false;  // Z_s(p,n) (x) A is the s-cone on a reindexed A
    Verdict verdict;
};

inline MonoidAxiomReport monoid_axiom_spot_check(int s, long p, int n,
                                                 const BasedFilteredComplex& A, int r,
                                                 Window w = {}) {
    if (s < 0 || s > r) throw input_error("monoid_axiom_spot_check: need 0 <= s <= r");
    MonoidAxiomReport out;
    const Field& F = A.field();
    BasedFilteredComplex z = make_cycle_rep(F, s, p, n);
    FilteredMorphism j = tensor_morphisms(zero_morphism(BasedFilteredComplex::empty(F), z),
                                          identity_morphism(A));
    if (w.empty()) w = joint_page_window(j, r + 1);
    Verdict weq = is_r_quasi_iso(j, r, w);
    out.weq = weq.ok;
    for (auto& wit : weq.witnesses) out.verdict.fail(std::move(wit));

    if (A.total_rank() == 0) {
        out.codomain_matches = j.target().total_rank() == 0;
    } else {
        // Z_s(p,n) (x) A is the identity cone on A reindexed by n+1 in
        // degree and p-s in weight, with the differential sign (-1)^{n+1}
        std::vector<std::vector<long>> ws(size_t(A.n_max() - A.n_min() + 1));
        std::vector<Matrix> ds;
        bool flip = (n + 1) % 2 != 0;
        for (int m = A.n_min(); m <= A.n_max(); ++m) {
            for (long q : A.weights(m)) ws[size_t(m - A.n_min())].push_back(q + p - s);
            ds.push_back(flip ? neg(F, A.d(m)) : A.d(m));
        }
        BasedFilteredComplex core(F, A.n_min() + n + 1, ws, ds);
        BasedFilteredComplex cand = cone_of_identity(core, s).complex;
        auto cert = find_filtered_isomorphism(j.target(), cand);
        out.codomain_matches = cert.has_value() && certificate_valid(*cert);
        if (!out.codomain_matches) out.verdict.fail("codomain does not match the shifted cone");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cell attachment closed form
// ---------------------------------------------------------------------------

// Shape of the pushout of attach : Z_{r+1}(p, n) -> A along phi_{r+1}(p, n):
// A with a generator gamma (degree n-1, weight p+r, d gamma = a - alpha) and
// a generator alpha (degree n, weight p-1, d alpha = da) appended.
inline BasedFilteredComplex attachment_closed_form(const FilteredMorphism& attach) {
    const Field& F = attach.field();
    const auto& src = attach.source();
    const auto& A = attach.target();
    int n = src.n_min();
    if (src.total_rank() != 2 || src.rank(n) != 1 || src.rank(n + 1) != 1)
        throw input_error("attachment_closed_form: source is not a cycle representative");
    long p = src.weight(n, 0);
    long drop = p - src.weight(n + 1, 0);
    if (drop < 1 || src != make_cycle_rep(F, int(drop), p, n))
        throw input_error("attachment_closed_form: source is not a cycle representative");
    long pr = p + drop - 1;

    std::vector<Scalar> a = attach.map(n).col(0);
    std::vector<Scalar> da = apply(F, A.d(n), a);

    int lo = std::min(A.n_min(), n - 1), hi = std::max(A.n_max(), n + 1);
    auto nrank = [&](int m) { return A.rank(m) + (m == n - 1 ? 1 : 0) + (m == n ? 1 : 0); };
    std::vector<std::vector<long>> ws(size_t(hi - lo + 1));
    std::vector<Matrix> ds;
    for (int m = lo; m <= hi; ++m) {
        auto& w = ws[size_t(m - lo)];
        for (long q : A.weights(m)) w.push_back(q);
        if (m == n - 1) w.push_back(pr);
        if (m == n) w.push_back(p - 1);
    }
    for (int m = lo; m <= hi; ++m) {
        Matrix d(nrank(m + 1), nrank(m));
        Matrix base = A.d(m);
        for (int i = 0; i < A.rank(m + 1); ++i)
            for (int j = 0; j < A.rank(m); ++j) d.at(i, j) = base.at(i, j);
        if (m == n - 1) {
            for (int i = 0; i < A.rank(n); ++i) d.at(i, A.rank(m)) = a[size_t(i)];
            d.at(A.rank(n), A.rank(m)) = F.neg(Scalar(1));
        }
        if (m == n)
            for (int i = 0; i < A.rank(n + 1); ++i) d.at(i, A.rank(m)) = da[size_t(i)];
        ds.push_back(std::move(d));
    }
    return BasedFilteredComplex(F, lo, ws, ds);
}

// ---------------------------------------------------------------------------
// Combined cofibration membership check
// ---------------------------------------------------------------------------

struct SubclassCofibrationReport {
    SuppressiveInclusionResult inclusion;
    CofibrantConditions cokernel;
    bool subclass_cofibration = false;
    Verdict verdict;
};

// A map is recognized when it is an r-suppressive strict split inclusion
// whose cokernel satisfies the reported member conditions.
inline SubclassCofibrationReport subclass_cofibration_check(const FilteredMorphism& f,
                                                            const SSpec& spec,
                                                            const std::vector<Probe>& extra = {}) {
    validate_spec(spec);
    SubclassCofibrationReport out{is_r_suppressive_inclusion(f, spec.r),
                                  cofibrant_conditions(cokernel_complex(f).complex, spec, extra),
                                  false,
                                  {}};
    out.subclass_cofibration = out.inclusion.verdict.ok && out.cokernel.subclass_cofibrant;
    for (const auto& w : out.inclusion.verdict.witnesses) out.verdict.fail(w);
    for (const auto& w : out.cokernel.suppressive.witnesses)
        out.verdict.fail("cokernel: " + w);
    if (!out.cokernel.lifting) out.verdict.fail("cokernel: a used probe does not lift");
    return out;
}

}  // namespace fss
