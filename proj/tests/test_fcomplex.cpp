#include <catch2/catch_amalgamated.hpp>

#include "fss/constructors.hpp"
#include "fss/random_gen.hpp"

using namespace fss;
using Catch::Matchers::ContainsSubstring;

namespace {
const Field Q = Field::rationals();

Matrix mat(int rows, int cols, const std::vector<long>& entries) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = entries[size_t(i) * cols + j];
    return m;
}
}  // namespace

TEST_CASE("sphere is rank one in its degree") {
    BasedFilteredComplex unit = make_sphere(Q, 0, 0);
    CHECK(unit.n_min() == 0);
    CHECK(unit.n_max() == 0);
    CHECK(unit.rank(0) == 1);
    CHECK(unit.weight(0, 0) == 0);
    CHECK(validate(unit).empty());

    BasedFilteredComplex s = make_sphere(Q, 3, -2);
    CHECK(s.rank(-2) == 1);
    CHECK(s.weight(-2, 0) == 3);
    CHECK(s.rank(0) == 0);

    Rng rng(seed_from_env());
    for (int t = 0; t < 20; ++t) {
        long p = long(rng() % 21) - 10;
        int n = int(rng() % 9) - 4;
        CHECK(validate(make_sphere(Q, p, n)).empty());
    }
}

TEST_CASE("cycle representer") {
    BasedFilteredComplex z = make_cycle_rep(Q, 1, 0, 0);
    CHECK(z.weights(0) == std::vector<long>{0});
    CHECK(z.weights(1) == std::vector<long>{-1});
    CHECK(z.d(0).at(0, 0) == 1);
    CHECK(validate(z).empty());

    BasedFilteredComplex z0 = make_cycle_rep(Q, 0, 4, 2);
    CHECK(z0.weight(2, 0) == 4);
    CHECK(z0.weight(3, 0) == 4);

    CHECK_THROWS_AS(make_cycle_rep(Q, -1, 0, 0), input_error);
}

TEST_CASE("boundary representer") {
    BasedFilteredComplex b = make_boundary_rep(Q, 1, 0, 0);
    CHECK(b.n_min() == -1);
    CHECK(b.weights(-1) == std::vector<long>{0});
    CHECK(b.weights(0) == (std::vector<long>{0, -1}));
    CHECK(b.weights(1) == std::vector<long>{-1});
    CHECK(b.d(-1) == mat(2, 1, {1, 0}));
    CHECK(b.d(0) == mat(1, 2, {0, 1}));
    CHECK(mul(Q, b.d(0), b.d(-1)).is_zero());
    CHECK(validate(b).empty());

    CHECK_THROWS_AS(make_boundary_rep(Q, 0, 0, 0), input_error);
}

TEST_CASE("phi hits both weight components of the boundary representer") {
    FilteredMorphism phi = make_phi(Q, 1, 0, 0);
    CHECK(validate_morphism(phi).empty());
    CHECK(phi.map(0) == mat(2, 1, {1, 1}));
    CHECK(phi.map(1) == mat(1, 1, {1}));

    // Projecting off the lower-weight summand recovers the identity
    // coordinate on the cycle generator.
    Matrix P(1, 2);
    P.at(0, 0) = 1;
    CHECK(mul(Q, P, phi.map(0)) == Matrix::identity(1));

    // No nonzero entry raises weight; the diagonal hits both the equal
    // weight and the weight p-1 generator.
    for (int n = 0; n <= 1; ++n) {
        Matrix m = phi.map(n);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(i, j) != 0)
                    CHECK(phi.target().weight(n, i) <= phi.source().weight(n, j));
    }

    Rng rng(seed_from_env());
    for (int t = 0; t < 20; ++t) {
        int r = 1 + int(rng() % 4);
        long p = long(rng() % 13) - 6;
        int n = int(rng() % 7) - 3;
        CHECK(validate_morphism(make_phi(Q, r, p, n)).empty());
    }
}

TEST_CASE("suspension reindexing") {
    CHECK(suspend(make_sphere(Q, 0, 1), 1) == make_sphere(Q, 1, 0));

    BasedFilteredComplex s = suspend(make_cycle_rep(Q, 1, 0, 0), 2);
    CHECK(s.weights(-1) == std::vector<long>{2});
    CHECK(s.weights(0) == std::vector<long>{1});
    CHECK(s.d(-1).at(0, 0) == -1);

    Rng rng(seed_from_env());
    for (int t = 0; t < 5; ++t) {
        BasedFilteredComplex A = random_complex(Q, rng);
        int r = int(rng() % 4);
        CHECK(suspend(suspend(A, r), r, Suspension::omega) == A);
        CHECK(validate(suspend(A, r)).empty());
    }
}

TEST_CASE("cone of the identity on a sphere") {
    ConeResult c = cone_of_identity(make_sphere(Q, 0, 0), 1);
    CHECK(c.complex.n_min() == -1);
    CHECK(c.complex.weights(-1) == std::vector<long>{1});
    CHECK(c.complex.weights(0) == std::vector<long>{0});
    CHECK(c.complex.d(-1) == mat(1, 1, {1}));
    CHECK(validate(c.complex).empty());
    CHECK(validate_morphism(c.incl).empty());
    CHECK(validate_morphism(c.proj).empty());
}

TEST_CASE("cone of a random morphism is a valid complex") {
    Rng rng(seed_from_env());
    for (int t = 0; t < 5; ++t) {
        BasedFilteredComplex A = random_complex(Q, rng);
        BasedFilteredComplex B = random_complex(Q, rng);
        FilteredMorphism f = random_morphism(A, B, rng);
        REQUIRE(validate_morphism(f).empty());
        int r = int(rng() % 3);
        ConeResult c = cone(f, r);
        CHECK(validate(c.complex).empty());
        CHECK(validate_morphism(c.incl).empty());
        CHECK(validate_morphism(c.proj).empty());
        // The projection kills the included target.
        CHECK(morphisms_equal(compose(c.proj, c.incl), zero_morphism(B, suspend(A, r))));
    }
}

TEST_CASE("twisted sum with zero twist is the plain direct sum") {
    BasedFilteredComplex A = make_cycle_rep(Q, 1, 0, 0);
    BasedFilteredComplex B = make_sphere(Q, 2, 1);
    TwistedSumResult t = twisted_sum(A, B, {});
    CHECK(t.complex.weights(0) == std::vector<long>{0});
    CHECK(t.complex.weights(1) == (std::vector<long>{-1, 2}));
    CHECK(t.complex.d(0) == mat(2, 1, {1, 0}));
    CHECK(validate_morphism(t.incl).empty());

    DirectSumResult ds = direct_sum(A, B);
    CHECK(ds.complex == t.complex);
    CHECK(morphisms_equal(compose(ds.proj_left, ds.inj_left), identity_morphism(A)));
    CHECK(morphisms_equal(compose(ds.proj_right, ds.inj_right), identity_morphism(B)));
    CHECK(morphisms_equal(compose(ds.proj_right, ds.inj_left), zero_morphism(A, B)));
}

TEST_CASE("cone is a twisted sum of the target with the shifted source") {
    int r = 2;
    FilteredMorphism f = make_phi(Q, 2, 1, 0);
    ConeResult c = cone(f, r);

    BasedFilteredComplex SA = suspend(f.source(), r);
    std::map<int, Matrix> tau;
    for (int n = SA.n_min(); n <= SA.n_max(); ++n) {
        Matrix m = f.map(n + 1);
        if (m.rows() > 0 && m.cols() > 0) tau.emplace(n, std::move(m));
    }
    TwistedSumResult ts = twisted_sum(f.target(), SA, tau);

    // Same complex up to swapping the two blocks of the basis.
    auto perm = [&](int n) {
        int sa = SA.rank(n), sb = f.target().rank(n);
        Matrix P(sa + sb, sa + sb);  // cone order (SA, B) -> sum order (B, SA)
        for (int i = 0; i < sa; ++i) P.at(sb + i, i) = 1;
        for (int i = 0; i < sb; ++i) P.at(i, sa + i) = 1;
        return P;
    };
    for (int n = c.complex.n_min(); n <= c.complex.n_max(); ++n) {
        CHECK(mul(Q, perm(n + 1), c.complex.d(n)) == mul(Q, ts.complex.d(n), perm(n)));
        for (int i = 0; i < c.complex.rank(n); ++i) {
            int sa = SA.rank(n);
            int image = i < sa ? f.target().rank(n) + i : i - sa;
            CHECK(c.complex.weight(n, i) == ts.complex.weight(n, image));
        }
    }
}

TEST_CASE("twist validation") {
    BasedFilteredComplex C0 = make_sphere(Q, 0, 0);
    CHECK_THROWS_WITH(twisted_sum(make_sphere(Q, 0, 1), make_sphere(Q, -1, 0), {{0, mat(1, 1, {1})}}),
                      ContainsSubstring("TwistBreaksFiltration"));
    CHECK_THROWS_WITH(twisted_sum(make_cycle_rep(Q, 1, 0, 1), C0, {{0, mat(1, 1, {1})}}),
                      ContainsSubstring("TwistNotAnticommuting"));
}

TEST_CASE("staircase weight lists and step sizes") {
    StaircaseResult s = staircase(Q, 1, 4);
    CHECK(s.Q.weights(0) == (std::vector<long>{0, -1, -2, -3, -4}));
    CHECK(s.Q.weights(1) == (std::vector<long>{-2, -3, -4, -5}));
    CHECK(validate(s.Q).empty());
    CHECK(validate_morphism(s.pi).empty());

    // Each degree-0 generator drops weight by exactly r or r+1.
    for (int r : {1, 2, 3}) {
        StaircaseResult t = staircase(Q, r, 5);
        Matrix d0 = t.Q.d(0);
        for (int j = 0; j < d0.cols(); ++j)
            for (int i = 0; i < d0.rows(); ++i)
                if (d0.at(i, j) != 0) {
                    long drop = t.Q.weight(0, j) - t.Q.weight(1, i);
                    CHECK((drop == r || drop == r + 1));
                }
    }

    CHECK_THROWS_AS(staircase(Q, 1, 0), input_error);
}

TEST_CASE("staircase kernel shape") {
    BasedFilteredComplex k = staircase_kernel(Q, 2, 3);
    CHECK(k.weights(0) == (std::vector<long>{-1, -2, -3}));
    CHECK(k.weights(1) == (std::vector<long>{-3, -4, -5, -6}));
    CHECK(validate(k).empty());
}

TEST_CASE("complex validator reports violations") {
    BasedFilteredComplex raising(Q, 0, {{0}, {1}}, {mat(1, 1, {1}), Matrix(0, 1)});
    auto bad = validate(raising);
    REQUIRE(bad.size() == 1);
    CHECK_THAT(bad[0], ContainsSubstring("raises weight"));

    BasedFilteredComplex notsquare(Q, 0, {{0}, {0}, {0}},
                                   {mat(1, 1, {1}), mat(1, 1, {1}), Matrix(0, 1)});
    auto bad2 = validate(notsquare);
    REQUIRE(bad2.size() == 1);
    CHECK_THAT(bad2[0], ContainsSubstring("d*d != 0"));
}

TEST_CASE("morphism validator reports violations") {
    FilteredMorphism raising(make_sphere(Q, 0, 0), make_sphere(Q, 1, 0), {{0, mat(1, 1, {1})}});
    auto bad = validate_morphism(raising);
    REQUIRE_FALSE(bad.empty());
    CHECK_THAT(bad[0], ContainsSubstring("map raises weight"));

    BasedFilteredComplex z = make_cycle_rep(Q, 1, 0, 0);
    FilteredMorphism broken(z, z, {{0, mat(1, 1, {1})}});
    auto bad2 = validate_morphism(broken);
    REQUIRE_FALSE(bad2.empty());
    CHECK_THAT(bad2[0], ContainsSubstring("chain condition fails"));
}

TEST_CASE("random conjugation produces filtered isomorphisms") {
    Rng rng(seed_from_env());
    for (int t = 0; t < 5; ++t) {
        BasedFilteredComplex A = random_atom_sum(Q, rng);
        BasedIso c = random_conjugation(A, rng);
        CHECK(validate(c.complex).empty());
        CHECK(validate_morphism(c.iso).empty());
        for (int n = A.n_min(); n <= A.n_max(); ++n)
            CHECK(rank(Q, c.iso.map(n)) == A.rank(n));
    }
}
