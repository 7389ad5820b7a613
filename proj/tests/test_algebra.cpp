#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chom/algebra.hpp"

using namespace chom;

namespace {

SparseVec uv(int i) {
    SparseVec v;
    v.ents.emplace_back(i, Rat(1));
    return v;
}

} // namespace

TEST_CASE("validate_algebra accepts Q and the 27-triple check passes for 2x2 upper triangular") {
    CHECK(validate_algebra(rationals()).ok);
    CHECK(validate_algebra(upper_triangular_2x2()).ok);
}

TEST_CASE("validate_algebra reports the first failing triple") {
    // unit e0; e1 e1 = e2, e1 e2 = e0 but e2 e1 = 0, so (e1 e1) e1 != e1 (e1 e1)
    Algebra a;
    a.dim = 3;
    a.basis_labels = {"e0", "e1", "e2"};
    a.table.assign(3, std::vector<SparseVec>(3));
    for (int i = 0; i < 3; ++i) {
        a.table[0][i] = uv(i);
        a.table[i][0] = uv(i);
    }
    a.table[1][1] = uv(2);
    a.table[1][2] = uv(0);
    a.unit = uv(0);
    auto rep = validate_algebra(a);
    CHECK(!rep.ok);
    CHECK(rep.what.find("associativity") != std::string::npos);
    CHECK(rep.what.find("(1,1,1)") != std::string::npos);
}

TEST_CASE("truncated polynomial algebras") {
    auto [a1, i1] = truncated_polynomial(1);
    CHECK(a1.dim == 1);
    CHECK(i1.dim() == 0);

    auto [a2, i2] = truncated_polynomial(2);
    CHECK(a2.dim == 2);
    CHECK(a2.mul(uv(1), uv(1)).empty()); // x^2 = 0

    auto [a3, i3sub] = truncated_polynomial(3);
    Ideal i3{&a3, i3sub};
    CHECK(a3.dim == 3);
    CHECK(ideal_power(i3, 3).dim() == 0);
    CHECK(ideal_power(i3, 2).dim() == 1); // span{x^2}
    CHECK(nilpotency_degree(i3) == 3);
    CHECK_THROWS_AS(truncated_polynomial(0), std::invalid_argument);
}

TEST_CASE("square-zero extensions") {
    // B = Q, M = Q gives the dual numbers
    Bimodule m1;
    m1.dim = 1;
    m1.left = {SparseMatrix::identity(1)};
    m1.right = {SparseMatrix::identity(1)};
    auto [e1, id1] = square_zero_extension(rationals(), m1);
    CHECK(e1.dim == 2);
    CHECK(validate_algebra(e1).ok);
    CHECK(e1.mul(uv(1), uv(1)).empty());

    // B = Q, M = Q^2
    Bimodule m2;
    m2.dim = 2;
    m2.left = {SparseMatrix::identity(2)};
    m2.right = {SparseMatrix::identity(2)};
    auto [e2, id2] = square_zero_extension(rationals(), m2);
    CHECK(e2.dim == 3);
    CHECK(id2.dim() == 2);
    Ideal ideal2{&e2, id2};
    CHECK(ideal_power(ideal2, 2).dim() == 0);

    // B = Q[x]/(x^2), M = B as a bimodule over itself
    auto [b, bsub] = truncated_polynomial(2);
    (void)bsub;
    Bimodule reg = regular_bimodule(b);
    auto [e3, id3] = square_zero_extension(b, reg);
    CHECK(e3.dim == 4);
    CHECK(validate_algebra(e3).ok);
    Ideal ideal3{&e3, id3};
    CHECK(ideal_power(ideal3, 2).dim() == 0);
}

TEST_CASE("ideal powers are monotone and multiplicative") {
    auto [a, isub] = truncated_polynomial(4);
    Ideal i{&a, isub};
    std::vector<Ideal> pw;
    for (int n = 0; n <= 5; ++n)
        pw.push_back(ideal_power(i, n));
    for (int n = 0; n < 5; ++n)
        CHECK(pw[n].dim() >= pw[n + 1].dim());
    // I^a . I^b inside I^{a+b}
    for (int x = 1; x <= 2; ++x)
        for (int y = 1; y <= 2; ++y) {
            Echelon target(pw[x + y].basis.basis, true);
            for (int p = 0; p < pw[x].dim(); ++p)
                for (int q = 0; q < pw[y].dim(); ++q)
                    CHECK(target.in_image(
                        a.mul(pw[x].basis.basis.col(p), pw[y].basis.basis.col(q))));
        }
    // ideal_power with n = 0 gives the whole algebra
    CHECK(ideal_power(i, 0).dim() == a.dim);
}

TEST_CASE("quotients") {
    auto [a2, i2sub] = truncated_polynomial(2);
    Ideal i2{&a2, i2sub};
    auto q = quotient_by_ideal(a2, i2);
    CHECK(q.algebra.dim == 1);

    // A by 0 is A with the identity projection
    Algebra ut = upper_triangular_2x2();
    Ideal zero = ideal_from_generators(ut, {});
    auto qz = quotient_by_ideal(ut, zero);
    CHECK(qz.algebra.dim == 3);
    CHECK(qz.projection.is_identity());

    // upper triangular by the strict part: Q x Q
    Ideal strict = ideal_from_generators(ut, {uv(2)});
    CHECK(strict.dim() == 1);
    auto qs = quotient_by_ideal(ut, strict);
    CHECK(qs.algebra.dim == 2);
    // two orthogonal idempotents
    CHECK(qs.algebra.mul(uv(0), uv(0)) == uv(0));
    CHECK(qs.algebra.mul(uv(1), uv(1)) == uv(1));
    CHECK(qs.algebra.mul(uv(0), uv(1)).empty());
    CHECK(qs.algebra.mul(uv(1), uv(0)).empty());
}

TEST_CASE("split squares") {
    auto [qe, se] = truncated_polynomial(2);
    auto [qd, sd] = truncated_polynomial(2);
    (void)se;
    (void)sd;
    Algebra q = rationals();
    SparseMatrix f(1, 2);
    f.set(0, 0, rat(1));

    SUBCASE("dual numbers over Q") {
        SplitSquare sq = split_square(qe, qd, q, f, f);
        CHECK(sq.a0.dim == 3);
        CHECK(sq.dim0 == 1);
        CHECK(sq.dim1 == 1);
        CHECK(sq.dim2 == 1);
        CHECK(validate_algebra(sq.a0).ok);
        // eps * delta = delta * eps = 0, eps^2 = delta^2 = 0
        CHECK(sq.a0.mul(uv(1), uv(2)).empty());
        CHECK(sq.a0.mul(uv(2), uv(1)).empty());
        CHECK(sq.a0.mul(uv(1), uv(1)).empty());
        CHECK(sq.a0.mul(uv(2), uv(2)).empty());
        CHECK(sq.sections_multiplicative);
        // the projections recover f o pr on both routes
        AlgebraMap p1{&sq.a0, &qe, sq.pr1};
        CHECK(validate_algebra_map(p1).ok);
    }
    SUBCASE("identity square collapses") {
        SplitSquare sq =
            split_square(q, q, q, SparseMatrix::identity(1), SparseMatrix::identity(1));
        CHECK(sq.a0.dim == 1);
        CHECK(sq.dim1 == 0);
        CHECK(sq.dim2 == 0);
    }
    SUBCASE("pullback along the identity on Q keeps A1") {
        auto [a3, s3] = truncated_polynomial(3);
        (void)s3;
        SparseMatrix f3(1, 3);
        f3.set(0, 0, rat(1));
        SplitSquare sq = split_square(a3, q, q, f3, SparseMatrix::identity(1));
        CHECK(sq.a0.dim == 3);
        CHECK(sq.dim2 == 0);
        CHECK(rank_of(sq.pr1) == 3); // A0 -> A1 is an isomorphism
    }
    SUBCASE("non-surjective maps are rejected") {
        SparseMatrix zero(1, 2);
        CHECK_THROWS_AS(split_square(qe, qd, q, zero, f), std::invalid_argument);
    }
    SUBCASE("dimension count dim A0 = dim A1 + dim A2 - dim A12") {
        SplitSquare sq = split_square(qe, qd, q, f, f);
        CHECK(sq.a0.dim == qe.dim + qd.dim - q.dim);
    }
}

TEST_CASE("associated graded") {
    auto [a3, i3sub] = truncated_polynomial(3);
    Ideal i3{&a3, i3sub};
    GradedAlgebra g = associated_graded(a3, i3);
    auto pd = g.piece_dims();
    REQUIRE(pd.size() == 3);
    CHECK(pd[0] == 1);
    CHECK(pd[1] == 1);
    CHECK(pd[2] == 1);
    CHECK(validate_graded(g).ok);

    // trivial ideal: everything in degree 0
    Algebra ut = upper_triangular_2x2();
    Ideal zero = ideal_from_generators(ut, {});
    GradedAlgebra gz = associated_graded(ut, zero);
    CHECK(gz.max_degree == 0);
    CHECK(gz.piece_dims()[0] == 3);

    // dual numbers: dims 1, 1
    auto [a2, i2sub] = truncated_polynomial(2);
    Ideal i2{&a2, i2sub};
    GradedAlgebra g2 = associated_graded(a2, i2);
    auto pd2 = g2.piece_dims();
    REQUIRE(pd2.size() == 2);
    CHECK(pd2[0] == 1);
    CHECK(pd2[1] == 1);
}

TEST_CASE("bimodule validation catches broken actions") {
    Bimodule bad;
    bad.dim = 1;
    bad.left = {SparseMatrix::identity(1) * rat(2)}; // unit must act as identity
    bad.right = {SparseMatrix::identity(1)};
    CHECK(!validate_bimodule(rationals(), bad).ok);
}
