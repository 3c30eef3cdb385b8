#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fss/colim.hpp"
#include "fss/random_gen.hpp"
#include "fss/spectral.hpp"

using namespace fss;

namespace {
const Field Q = Field::rationals();

// Window-insensitive equality: same weights and differentials degreewise.
bool same_content(const BasedFilteredComplex& A, const BasedFilteredComplex& B) {
    int lo = std::min(A.n_min(), B.n_min()), hi = std::max(A.n_max(), B.n_max());
    for (int n = lo; n <= hi; ++n) {
        if (A.weights(n) != B.weights(n)) return false;
        if (A.rank(n) > 0 && A.d(n) != B.d(n)) return false;
    }
    return true;
}

std::multiset<long> weight_multiset(const BasedFilteredComplex& A, int n) {
    const auto& w = A.weights(n);
    return {w.begin(), w.end()};
}
}  // namespace

TEST_CASE("pushout legs commute with the span") {
    Rng rng(seed_from_env());
    for (int t = 0; t < 10; ++t) {
        BasedFilteredComplex A = random_complex(Q, rng, {.atoms = 2});
        BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 2});
        BasedFilteredComplex C = random_complex(Q, rng, {.atoms = 2});
        FilteredMorphism f = random_morphism(A, B, rng);
        FilteredMorphism g = random_morphism(A, C, rng);
        PushoutResult P = pushout(f, g);
        CHECK(validate(P.object).empty());
        CHECK(validate_morphism(P.leg_left).empty());
        CHECK(validate_morphism(P.leg_right).empty());
        CHECK(morphisms_equal(compose(P.leg_left, f), compose(P.leg_right, g)));

        // The legs are jointly surjective in every degree, which pins the
        // induced map of any cocone uniquely.
        for (int n = P.object.n_min(); n <= P.object.n_max(); ++n)
            CHECK(rank(Q, hcat(P.leg_left.map(n), P.leg_right.map(n))) == P.object.rank(n));
    }
}

TEST_CASE("pushout universal property") {
    Rng rng(seed_from_env());
    for (int t = 0; t < 25; ++t) {
        BasedFilteredComplex A = random_complex(Q, rng, {.atoms = 2});
        BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 2});
        BasedFilteredComplex C = random_complex(Q, rng, {.atoms = 2});
        PushoutResult P = pushout(random_morphism(A, B, rng), random_morphism(A, C, rng));
        BasedFilteredComplex T = random_complex(Q, rng, {.atoms = 2});

        FilteredMorphism h0 = random_morphism(P.object, T, rng);
        FilteredMorphism u = compose(h0, P.leg_left);
        FilteredMorphism v = compose(h0, P.leg_right);
        FilteredMorphism h = P.induce(u, v);
        CHECK(validate_morphism(h).empty());
        CHECK(morphisms_equal(h, h0));
        CHECK(morphisms_equal(compose(h, P.leg_left), u));
        CHECK(morphisms_equal(compose(h, P.leg_right), v));
    }
}

TEST_CASE("pushout along the empty span is the coproduct") {
    Rng rng(seed_from_env());
    BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 3});
    BasedFilteredComplex C = random_complex(Q, rng, {.atoms = 3});
    BasedFilteredComplex none = BasedFilteredComplex::empty(Q);
    PushoutResult P = pushout(zero_morphism(none, B), zero_morphism(none, C));
    CHECK(P.object == coproduct(B, C).complex);
}

TEST_CASE("pushout of an isomorphism is an isomorphism") {
    Rng rng(seed_from_env());
    for (int t = 0; t < 5; ++t) {
        BasedFilteredComplex A = random_atom_sum(Q, rng, {.atoms = 3});
        BasedIso conj = random_conjugation(A, rng);
        BasedFilteredComplex C = random_complex(Q, rng, {.atoms = 2});
        PushoutResult P = pushout(conj.iso, random_morphism(A, C, rng));
        CHECK(filtered_inverse(P.leg_right).has_value());
    }
}

TEST_CASE("pushout along the generating cofibration adds two generators") {
    // Attaching Z_{r+1}(p,n) -> A along phi_{r+1} frees the cycle: the
    // result is A plus gamma (degree n-1, weight p+r) and alpha (degree n,
    // weight p-1) with d gamma = a - alpha.
    BasedFilteredComplex A = make_sphere(Q, 0, 0);
    BasedFilteredComplex Z = make_cycle_rep(Q, 2, 0, 0);
    Matrix ax(1, 1);
    ax.at(0, 0) = 1;
    FilteredMorphism attach(Z, A, {{0, ax}});
    REQUIRE(validate_morphism(attach).empty());
    PushoutResult P = pushout(attach, make_phi(Q, 2, 0, 0));
    CHECK(validate(P.object).empty());
    CHECK(weight_multiset(P.object, -1) == std::multiset<long>{1});
    CHECK(weight_multiset(P.object, 0) == (std::multiset<long>{0, -1}));
    CHECK(P.object.rank(1) == 0);

    Rng rng(seed_from_env());
    for (int t = 0; t < 10; ++t) {
        int r = int(rng() % 3);
        long p = long(rng() % 5) - 2;
        int n = int(rng() % 3) - 1;
        BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 3});
        BasedFilteredComplex zr = make_cycle_rep(Q, r + 1, p, n);
        FilteredMorphism a = random_morphism(zr, B, rng);
        PushoutResult Pb = pushout(a, make_phi(Q, r + 1, p, n));
        CHECK(validate(Pb.object).empty());
        for (int m = Pb.object.n_min(); m <= Pb.object.n_max(); ++m) {
            std::multiset<long> expect = weight_multiset(B, m);
            if (m == n - 1) expect.insert(p + r);
            if (m == n) expect.insert(p - 1);
            CHECK(weight_multiset(Pb.object, m) == expect);
        }
    }
}

TEST_CASE("coproduct ranks and page additivity") {
    BasedFilteredComplex two = coproduct(make_sphere(Q, 0, 0), make_sphere(Q, 0, 0)).complex;
    CHECK(two.rank(0) == 2);
    CHECK(validate(two).empty());

    Rng rng(seed_from_env());
    for (int t = 0; t < 5; ++t) {
        BasedFilteredComplex A = random_complex(Q, rng, {.atoms = 2});
        BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 2});
        BasedFilteredComplex S = coproduct(A, B).complex;
        for (int r = 0; r <= 2; ++r) {
            Window w = page_window(S, r);
            SpectralCalc cs(S), ca(A), cb(B);
            for (long p = w.p_lo; p <= w.p_hi; ++p)
                for (int n = w.n_lo; n <= w.n_hi; ++n)
                    CHECK(cs.dim(r, p, n) == ca.dim(r, p, n) + cb.dim(r, p, n));
        }
    }
}

TEST_CASE("pullback over the zero object is the product") {
    Rng rng(seed_from_env());
    BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 2});
    BasedFilteredComplex C = random_complex(Q, rng, {.atoms = 2});
    BasedFilteredComplex none = BasedFilteredComplex::empty(Q);
    PullbackResult P = pullback(zero_morphism(B, none), zero_morphism(C, none));
    CHECK(same_content(P.object, direct_sum(B, C).complex));
    CHECK(validate_morphism(P.proj_left).empty());
    CHECK(validate_morphism(P.proj_right).empty());
}

TEST_CASE("pullback of the identity along the identity") {
    Rng rng(seed_from_env());
    BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 3});
    PullbackResult P = pullback(identity_morphism(B), identity_morphism(B));
    CHECK(filtered_inverse(P.proj_left).has_value());
    CHECK(morphisms_equal(P.proj_left, P.proj_right));
}

TEST_CASE("kernel as a pullback along zero") {
    Rng rng(seed_from_env());
    for (int t = 0; t < 8; ++t) {
        BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 2});
        BasedFilteredComplex D = random_complex(Q, rng, {.atoms = 2});
        FilteredMorphism f = random_morphism(B, D, rng);
        KernelResult K = kernel_complex(f);
        CHECK(validate(K.complex).empty());
        CHECK(validate_morphism(K.incl).empty());
        CHECK(morphisms_equal(compose(f, K.incl), zero_morphism(K.complex, D)));

        PullbackResult P = pullback(f, zero_morphism(BasedFilteredComplex::empty(Q), D));
        CHECK(same_content(P.object, K.complex));

        // Rank count: dim ker f_n = rank B_n - rank f_n.
        for (int n = B.n_min(); n <= B.n_max(); ++n)
            CHECK(K.complex.rank(n) == B.rank(n) - rank(Q, f.map(n)));
    }
}

TEST_CASE("cokernel kills exactly the image") {
    Rng rng(seed_from_env());
    for (int t = 0; t < 8; ++t) {
        BasedFilteredComplex B = random_complex(Q, rng, {.atoms = 2});
        BasedFilteredComplex D = random_complex(Q, rng, {.atoms = 2});
        FilteredMorphism f = random_morphism(B, D, rng);
        CokernelResult C = cokernel_complex(f);
        CHECK(validate(C.complex).empty());
        CHECK(validate_morphism(C.proj).empty());
        CHECK(morphisms_equal(compose(C.proj, f), zero_morphism(B, C.complex)));
        for (int n = D.n_min(); n <= D.n_max(); ++n) {
            CHECK(C.complex.rank(n) == D.rank(n) - rank(Q, f.map(n)));
            CHECK(rank(Q, C.proj.map(n)) == C.complex.rank(n));
        }
    }
}
