#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fss/linalg.hpp"

using namespace fss;

namespace {

Matrix mat(int rows, int cols, const std::vector<long>& entries) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = entries[size_t(i) * cols + j];
    return m;
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, int lo = -4, int hi = 4) {
    std::uniform_int_distribution<int> pick(lo, hi);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = pick(rng);
    return m;
}

}  // namespace

TEST_CASE("kernel of the identity is zero") {
    Field F = Field::rationals();
    Matrix k = kernel(F, Matrix::identity(2));
    CHECK(k.cols() == 0);
}

TEST_CASE("kernel of a single relation") {
    Field F = Field::rationals();
    Matrix k = kernel(F, mat(1, 2, {1, 1}));
    REQUIRE(k.cols() == 1);
    CHECK(span(F, 2, k) == span(F, 2, mat(2, 1, {1, -1})));
}

TEST_CASE("kernel of a rank-3 matrix has nullity 3") {
    Field F = Field::rationals();
    std::mt19937_64 rng(7);
    Matrix m = mul(F, random_matrix(rng, 4, 3), random_matrix(rng, 3, 6));
    REQUIRE(rank(F, m) == 3);
    Matrix k = kernel(F, m);
    CHECK(k.cols() == 3);
    CHECK(mul(F, m, k).is_zero());
}

TEST_CASE("rank plus nullity equals column count") {
    Field F = Field::rationals();
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        Matrix m = random_matrix(rng, 1 + t % 5, 1 + (t * 3) % 7);
        CHECK(rank(F, m) + kernel(F, m).cols() == m.cols());
    }
}

TEST_CASE("solve: identity, zero matrix, dependent system") {
    Field F = Field::rationals();
    auto x = solve(F, Matrix::identity(2), {Scalar(1), Scalar(0)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 0);

    CHECK_FALSE(solve(F, Matrix(2, 2), {Scalar(1), Scalar(0)}).has_value());

    Matrix m = mat(2, 2, {1, 2, 2, 4});
    auto y = solve(F, m, {Scalar(1), Scalar(2)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + 2 * (*y)[1] == 1);
}

TEST_CASE("solve recovers any consistent target") {
    Field F = Field::rationals();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 15; ++t) {
        Matrix m = random_matrix(rng, 3, 4);
        std::vector<Scalar> x(4);
        for (auto& v : x) v = int(rng() % 9) - 4;
        auto target = apply(F, m, x);
        auto sol = solve(F, m, target);
        REQUIRE(sol.has_value());
        CHECK(apply(F, m, *sol) == target);
    }
}

TEST_CASE("subspace equality is basis independent") {
    Field F = Field::rationals();
    Subspace a = span(F, 3, mat(3, 2, {1, 0, 1, 1, 0, 2}));
    Subspace b = span(F, 3, mat(3, 2, {2, 1, 3, 2, 2, 2}));
    CHECK(a == b);
    CHECK(subspace_leq(F, a, b));
    CHECK(subspace_intersect(F, a, full_subspace(3)) == a);
    CHECK(subspace_sum(F, a, zero_subspace(3)) == a);
}

TEST_CASE("preimage and image are adjoint on subspaces") {
    Field F = Field::rationals();
    std::mt19937_64 rng(19);
    Matrix m = random_matrix(rng, 3, 5);
    Subspace s = span(F, 3, random_matrix(rng, 3, 2));
    Subspace pre = preimage(F, m, s);
    CHECK(subspace_leq(F, image_of_subspace(F, m, pre), s));
    CHECK(subspace_leq(F, kernel_subspace(F, m), pre));
}

TEST_CASE("flag_quotient: two-stage flag in the plane") {
    Field F = Field::rationals();
    Subspace first = span(F, 2, mat(2, 1, {1, 0}));
    FlagBasis fb = flag_quotient(F, 2, {{0, first}, {1, full_subspace(2)}});
    REQUIRE(fb.weights == std::vector<long>({0, 1}));
    CHECK(fb.basis == Matrix::identity(2));
}

TEST_CASE("flag_quotient: single stage assigns one weight") {
    Field F = Field::rationals();
    FlagBasis fb = flag_quotient(F, 2, {{5, full_subspace(2)}});
    CHECK(fb.weights == std::vector<long>({5, 5}));
}

TEST_CASE("flag_quotient: dims 1,1,3 at weights -1,0,1") {
    Field F = Field::rationals();
    Subspace s1 = span(F, 3, mat(3, 1, {1, 1, 0}));
    FlagBasis fb = flag_quotient(F, 3, {{-1, s1}, {0, s1}, {1, full_subspace(3)}});
    REQUIRE(fb.weights.size() == 3);
    CHECK(std::count(fb.weights.begin(), fb.weights.end(), -1) == 1);
    CHECK(std::count(fb.weights.begin(), fb.weights.end(), 1) == 2);

    // span{weight <= p} must equal the flag member at p, both inclusions.
    std::vector<std::pair<long, Subspace>> flag = {{-1, s1}, {0, s1}, {1, full_subspace(3)}};
    for (const auto& [w, member] : flag) {
        std::vector<int> cols;
        for (int i = 0; i < 3; ++i)
            if (fb.weights[i] <= w) cols.push_back(i);
        Matrix gens(3, int(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) gens.set_col(int(c), fb.basis.col(cols[c]));
        CHECK(span(F, 3, gens) == member);
    }
}

TEST_CASE("flag_quotient rejects non-nested flags") {
    Field F = Field::rationals();
    Subspace a = span(F, 2, mat(2, 1, {1, 0}));
    Subspace b = span(F, 2, mat(2, 1, {0, 1}));
    CHECK_THROWS_AS(flag_quotient(F, 2, {{0, a}, {1, b}}), flag_error);
}

TEST_CASE("rational arithmetic is exact") {
    Field F = Field::rationals();
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        long a = long(rng() % 2000) - 1000, b = long(rng() % 999) + 1;
        if (a == 0) a = 17;
        Scalar x = F.div(F.from_long(a), F.from_long(b));
        CHECK(F.mul(x, F.inv(x)) == F.one());
    }
    CHECK(F.parse("2/4") == F.parse("1/2"));
    CHECK(F.to_string(F.parse("-6/4")) == "-3/2");
}

TEST_CASE("prime field arithmetic reduces canonically") {
    Field F = Field::prime(7);
    CHECK(F.reduce(Scalar(-1)) == Scalar(6));
    CHECK(F.mul(Scalar(3), Scalar(5)) == Scalar(1));
    CHECK(F.inv(Scalar(3)) == Scalar(5));
    CHECK_THROWS_AS(Field::prime(6), input_error);
    Matrix k = kernel(F, mat(1, 2, {1, 1}));
    REQUIRE(k.cols() == 1);
    CHECK(F.reduce(k.at(0, 0)) == F.neg(k.at(1, 0)));
}
