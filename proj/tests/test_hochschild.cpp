#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chom/hochschild.hpp"
#include "chom/nerve.hpp"

#include <map>

using namespace chom;

namespace {

// Independent bar-complex oracle: dense matrices over Rat with a plain
// row-reduction rank, built straight from the structure constants and
// never touching the engine's sparse types beyond reading the algebra.
struct Dense {
    int r = 0, c = 0;
    std::vector<Rat> a;
    Dense(int rr, int cc) : r(rr), c(cc), a(static_cast<size_t>(rr) * cc) {}
    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }
};

int dense_rank(Dense m) {
    int rank = 0;
    for (int col = 0; col < m.c && rank < m.r; ++col) {
        int piv = -1;
        for (int row = rank; row < m.r; ++row)
            if (m.at(row, col) != 0) {
                piv = row;
                break;
            }
        if (piv < 0)
            continue;
        for (int j = 0; j < m.c; ++j)
            std::swap(m.at(rank, j), m.at(piv, j));
        Rat p = m.at(rank, col);
        for (int row = 0; row < m.r; ++row) {
            if (row == rank || m.at(row, col) == 0)
                continue;
            Rat f = m.at(row, col) / p;
            for (int j = 0; j < m.c; ++j)
                m.at(row, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

// coordinates of e_i e_j as a dense column
std::vector<Rat> dense_mul(const Algebra& alg, int i, int j) {
    std::vector<Rat> out(alg.dim);
    for (const auto& [k, v] : alg.table[i][j].ents)
        out[k] = v;
    return out;
}

Dense bar_differential(const Algebra& alg, int q) {
    const int d = alg.dim;
    auto pw = [&](int e) {
        long long r = 1;
        for (int i = 0; i < e; ++i)
            r *= d;
        return r;
    };
    Dense m(static_cast<int>(pw(q)), static_cast<int>(pw(q + 1)));
    std::vector<int> w(q + 1);
    for (long long col = 0; col < pw(q + 1); ++col) {
        long long tmp = col;
        for (int i = 0; i <= q; ++i) {
            w[i] = static_cast<int>(tmp % d);
            tmp /= d;
        }
        Rat sign(1);
        for (int i = 0; i <= q; ++i) {
            std::vector<Rat> prod =
                i < q ? dense_mul(alg, w[i], w[i + 1]) : dense_mul(alg, w[q], w[0]);
            for (int k = 0; k < d; ++k) {
                if (prod[k] == 0)
                    continue;
                long long row = 0, stride = 1;
                for (int s = 0; s < q; ++s) {
                    int letter;
                    if (i < q)
                        letter = s < i ? w[s] : (s == i ? k : w[s + 1]);
                    else
                        letter = s == 0 ? k : w[s];
                    row += stride * letter;
                    stride *= d;
                }
                m.at(static_cast<int>(row), static_cast<int>(col)) += sign * prod[k];
            }
            sign = -sign;
        }
    }
    return m;
}

std::vector<int> bar_homology_dims(const Algebra& alg, int D) {
    // ranks[q] = rank of b_q out of degree q; H_n = dim ker b_n - rank b_{n+1}
    std::vector<int> ranks(D + 1, 0), dims;
    auto pw = [&](int e) {
        long long r = 1;
        for (int i = 0; i < e; ++i)
            r *= alg.dim;
        return r;
    };
    for (int q = 1; q <= D; ++q)
        ranks[q] = dense_rank(bar_differential(alg, q));
    for (int n = 0; n <= D - 1; ++n)
        dims.push_back(static_cast<int>(pw(n + 1)) - ranks[n] - ranks[n + 1]);
    return dims;
}

Bimodule trivial_line() {
    Bimodule m;
    m.dim = 1;
    m.left = {SparseMatrix::identity(1)};
    m.right = {SparseMatrix::identity(1)};
    return m;
}

} // namespace

TEST_CASE("hh dimensions and the identity case") {
    HochschildModule hq = hh(rationals(), 4);
    for (int q = 0; q <= 4; ++q) {
        CHECK(hq.mod.dim(q) == 1);
        CHECK(hq.mod.t[q].is_identity());
        for (int i = 0; q >= 1 && i <= q; ++i)
            CHECK(hq.mod.d(q, i).is_identity());
    }
    auto [de, des] = truncated_polynomial(2);
    (void)des;
    HochschildModule he = hh(de, 3);
    for (int q = 0; q <= 3; ++q)
        CHECK(he.mod.dim(q) == (1 << (q + 1)));
    CHECK(validate_cyclic(he.mod).ok);
}

TEST_CASE("hh rejects blown budgets") {
    auto [a, sub] = truncated_polynomial(3);
    (void)sub;
    CHECK_THROWS_AS(hh(a, 6, 100), std::invalid_argument);
}

TEST_CASE("bar-complex oracle matches the engine on Q[eps]") {
    auto [de, des] = truncated_polynomial(2);
    (void)des;
    std::vector<int> oracle = bar_homology_dims(de, 6);
    REQUIRE(oracle.size() == 6);
    CHECK(oracle == std::vector<int>{2, 1, 1, 1, 1, 1});

    HochschildModule h = hh(de, 6);
    ChainComplex moore = moore_complex(h.mod.sim);
    for (int n = 0; n <= 5; ++n)
        CHECK(moore.homology(n).dim == oracle[n]);
}

TEST_CASE("weight decomposition of HH(B |x M)") {
    WeightDecomposition wd = weight_decompose(rationals(), trivial_line(), 6);
    auto binom = [](int n, int k) {
        long long r = 1;
        for (int i = 0; i < k; ++i)
            r = r * (n - i) / (i + 1);
        return static_cast<int>(r);
    };
    for (const auto& ws : wd.pieces) {
        for (int q = 0; q <= 6; ++q)
            CHECK(ws.H.dim(q) == binom(q + 1, ws.k));
        CHECK(ws.retract.map_is_cyclic);
        CHECK(ws.retract.composite_is_scalar);
        CHECK(ws.retract.scalar == ws.k);
        CHECK(validate_cyclic(ws.H).ok);
        CHECK(validate_simplicial(ws.G).ok);
        CHECK(validate_cyclic(ws.retract.jG).ok);
    }
    // H(0) = HH(B): all structure maps the identity here
    CHECK(wd.pieces[0].H.dim(4) == 1);
    // the word bases match the weight pieces Q(k) of the monoid nerve
    for (int k = 0; k <= 3; ++k) {
        WeightPiece qk = nerve_weight_piece(k, 6);
        for (int q = 0; q <= 6; ++q)
            CHECK(wd.pieces[k].H.dim(q) == static_cast<int>(qk.words[q].size()));
    }
    // direct-sum audit
    for (int q = 0; q <= 6; ++q) {
        int total = 0;
        for (const auto& ws : wd.pieces)
            total += ws.H.dim(q);
        CHECK(total == wd.ambient.mod.dim(q));
    }
}

TEST_CASE("the weight pieces of HH(Q |x Q) are literally the linearized nerve pieces") {
    // two independent constructions: structure constants of the extension
    // on one side, smash words of the pointed monoid on the other; both
    // encode weight-k words with the same mixed-radix indices
    WeightDecomposition wd = weight_decompose(rationals(), trivial_line(), 6);
    for (int k = 0; k <= 4; ++k) {
        WeightPiece qk = nerve_weight_piece(k, 6);
        const CyclicModule& a = wd.pieces[k].H;
        const CyclicModule& b = qk.linearization;
        REQUIRE(a.D() == b.D());
        for (int q = 0; q <= a.D(); ++q)
            REQUIRE(a.dim(q) == b.dim(q));
        for (int q = 1; q <= a.D(); ++q)
            for (int i = 0; i <= q; ++i)
                CHECK(a.d(q, i) == b.d(q, i));
        for (int q = 0; q < a.D(); ++q)
            for (int i = 0; i <= q; ++i)
                CHECK(a.s(q, i) == b.s(q, i));
        for (int q = 0; q <= a.D(); ++q)
            CHECK(a.t[q] == b.t[q]);
    }
}

TEST_CASE("partition pieces H(P)") {
    PartitionSystem sys =
        partition_system(rationals(), {trivial_line(), trivial_line()}, 6);

    SUBCASE("P = (1,...,1) with l = 1 matches the weight piece") {
        PartitionSystem sys1 = partition_system(rationals(), {trivial_line()}, 6);
        WeightDecomposition wd = weight_decompose(rationals(), trivial_line(), 6);
        for (int k = 1; k <= 3; ++k) {
            Partition p;
            p.parts.assign(k, 1);
            PartitionSummand ps = partition_decompose(sys1, p);
            for (int q = 0; q <= 6; ++q)
                CHECK(ps.H.dim(q) == wd.pieces[k].H.dim(q));
            CHECK(ps.retract.composite_is_scalar);
            CHECK(ps.retract.scalar == k);
        }
    }
    SUBCASE("P = (k) has retract factor 1") {
        for (int k = 1; k <= 2; ++k) {
            PartitionSummand ps = partition_decompose(sys, Partition{{k}});
            CHECK(ps.retract.map_is_cyclic);
            CHECK(ps.retract.composite_is_scalar);
            CHECK(ps.retract.scalar == 1);
        }
    }
    SUBCASE("P = (2,1) counts marked placements (q+1)q") {
        PartitionSummand ps = partition_decompose(sys, Partition{{2, 1}});
        for (int q = 0; q <= 6; ++q)
            CHECK(ps.H.dim(q) == (q + 1) * q);
        CHECK(ps.retract.scalar == 2);
        CHECK(ps.retract.composite_is_scalar);
    }
    SUBCASE("parts above l are rejected") {
        CHECK_THROWS_AS(partition_decompose(sys, Partition{{3}}), std::invalid_argument);
    }
}

TEST_CASE("partitions are ordered by descending norm") {
    auto ps = partitions(4);
    REQUIRE(ps.size() == 5);
    CHECK(ps[0] == Partition{{4}});
    CHECK(ps[1] == Partition{{3, 1}});
    CHECK(ps[2] == Partition{{2, 2}});
    CHECK(ps[3] == Partition{{2, 1, 1}});
    CHECK(ps[4] == Partition{{1, 1, 1, 1}});
    std::vector<long> norms = {256, 208, 160, 148, 85};
    for (size_t i = 0; i < ps.size(); ++i)
        CHECK(ps[i].norm() == norms[i]);

    auto p0 = partitions(0);
    REQUIRE(p0.size() == 1);
    CHECK(p0[0].parts.empty());
}

TEST_CASE("ideal filtration") {
    auto [a3, i3sub] = truncated_polynomial(3);
    Ideal i3{&a3, i3sub};
    IdealFiltration filt = ideal_filtration(a3, i3, 5);

    SUBCASE("vanishing bound F^k_q = 0 for k >= 3(q+1)") {
        for (int k = 0; k <= filt.kmax; ++k) {
            auto ds = filt.dims(k);
            for (int q = 0; q <= 5; ++q)
                if (k >= 3 * (q + 1))
                    CHECK(ds[q] == 0);
        }
        // just below the bound the spaces are nonzero
        CHECK(filt.dims(3 * 1 + 2)[0] == 0);
        CHECK(filt.dims(2)[0] == 1);
    }
    SUBCASE("the zero ideal gives F^k = 0 for k >= 1") {
        Ideal zero = ideal_from_generators(a3, {});
        IdealFiltration fz = ideal_filtration(a3, zero, 3);
        CHECK(fz.kmax == 1);
        for (int q = 0; q <= 3; ++q)
            CHECK(fz.dims(1)[q] == 0);
    }
    SUBCASE("dual numbers: dim(F^1/F^2)_q = q+1") {
        auto [a2, i2sub] = truncated_polynomial(2);
        Ideal i2{&a2, i2sub};
        IdealFiltration f2 = ideal_filtration(a2, i2, 5);
        CyclicModule sq = f2.subquotient(1);
        for (int q = 0; q <= 5; ++q)
            CHECK(sq.dim(q) == q + 1);
    }
}

TEST_CASE("partition chain stages resolve the graded subquotient") {
    auto [a3, i3sub] = truncated_polynomial(3);
    Ideal i3{&a3, i3sub};
    GradedAlgebra gr = associated_graded(a3, i3);

    PartitionChain c1 = partition_chain(gr, 1, 5);
    REQUIRE(c1.stages.size() == 1);
    CHECK(c1.stages[0].kernel_matches_model);
    CHECK(c1.stages[0].model.retract.composite_is_scalar);
    CHECK(c1.stages[0].model.retract.scalar == 1);
    CHECK(c1.ends_at_zero);

    PartitionChain c2 = partition_chain(gr, 2, 5);
    REQUIRE(c2.stages.size() == 2);
    CHECK(c2.stages[0].P == Partition{{2}});
    CHECK(c2.stages[1].P == Partition{{1, 1}});
    CHECK(c2.stages[0].model.retract.scalar == 1);
    CHECK(c2.stages[1].model.retract.scalar == 2);
    for (const auto& st : c2.stages) {
        CHECK(st.kernel_matches_model);
        CHECK(st.model.retract.composite_is_scalar);
    }
    CHECK(c2.ends_at_zero);
}

TEST_CASE("filtration subquotients agree with the associated graded") {
    auto [a3, i3sub] = truncated_polynomial(3);
    Ideal i3{&a3, i3sub};
    for (int k = 1; k <= 3; ++k) {
        GradedComparison cmp = compare_filtration_with_graded(a3, i3, k, 4);
        CHECK(cmp.dims_equal);
        CHECK(cmp.maps_equal);
    }
    // a non-graded instance: Q[x]/(x^4)
    auto [a4, i4sub] = truncated_polynomial(4);
    Ideal i4{&a4, i4sub};
    GradedComparison cmp = compare_filtration_with_graded(a4, i4, 2, 3);
    CHECK(cmp.dims_equal);
    CHECK(cmp.maps_equal);
}

TEST_CASE("gap sets") {
    CHECK(gap_set({2, 2, 0, 1, 2, 1, 1, 0, 2, 0, 1}) == std::set<int>{0, 4, 8});
    CHECK(gap_set({2, 2, 0, 1, 2, 1, 1, 0, 2, 0, 2}) == std::set<int>{4, 8});
    CHECK(gap_set({0, 0, 0}).empty());
    CHECK(gap_set({2, 2}).empty());
    CHECK(gap_set({1, 2}) == std::set<int>{1});
    CHECK_THROWS_AS(gap_set({0, 3}), std::invalid_argument);

    // rotation equivariance
    std::vector<int> f = {1, 0, 2, 2, 0, 1, 2};
    auto a = gap_set(f);
    const int n = static_cast<int>(f.size());
    std::vector<int> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = f[((i - 1) % n + n) % n];
    std::set<int> shifted;
    for (int x : a)
        shifted.insert((x + 1) % n);
    CHECK(gap_set(g) == shifted);
}

TEST_CASE("split square iterated fiber") {
    auto [qe, se] = truncated_polynomial(2);
    auto [qd, sd] = truncated_polynomial(2);
    (void)se;
    (void)sd;
    Algebra q = rationals();
    SparseMatrix f(1, 2);
    f.set(0, 0, rat(1));
    SplitSquare sq = split_square(qe, qd, q, f, f);
    SplitSquareIfib ifb = split_square_ifib(sq, 5);

    CHECK(ifb.routes_agree);
    CHECK(ifb.ifib.dim(1) == 2); // eps (x) delta and delta (x) eps
    CHECK(validate_cyclic(ifb.ifib).ok);

    // inclusion-exclusion count of the labeled span
    for (int qd2 = 0; qd2 <= 5; ++qd2) {
        auto pw = [&](int base) {
            long long r = 1;
            for (int i = 0; i <= qd2; ++i)
                r *= base;
            return r;
        };
        CHECK(ifb.ifib.dim(qd2) == pw(3) - 2 * pw(2) + pw(1));
    }

    // weight pieces: direct-sum audit and the scalar retracts
    for (int qd2 = 0; qd2 <= 5; ++qd2) {
        int total = 0;
        for (const auto& pc : ifb.pieces)
            total += pc.H.dim(qd2);
        CHECK(total == ifb.ifib.dim(qd2));
    }
    REQUIRE(ifb.pieces.size() >= 2);
    CHECK(ifb.pieces[0].k == 1);
    CHECK(ifb.pieces[0].retract.composite_is_scalar);
    CHECK(ifb.pieces[1].k == 2);
    CHECK(ifb.pieces[1].retract.composite_is_scalar);
    for (const auto& pc : ifb.pieces)
        CHECK(pc.retract.map_is_cyclic);

    // trivial square: empty fiber
    SplitSquare sqt =
        split_square(q, q, q, SparseMatrix::identity(1), SparseMatrix::identity(1));
    SplitSquareIfib ifbt = split_square_ifib(sqt, 4);
    for (int qd2 = 0; qd2 <= 4; ++qd2)
        CHECK(ifbt.ifib.dim(qd2) == 0);
}

TEST_CASE("a noncommutative algebra: upper triangular 2x2") {
    Algebra ut = upper_triangular_2x2();
    HochschildModule h = hh(ut, 4);
    CHECK(validate_cyclic(h.mod).ok);
    // the bar oracle agrees here too
    std::vector<int> oracle = bar_homology_dims(ut, 4);
    ChainComplex moore = moore_complex(h.mod.sim);
    for (int n = 0; n <= 3; ++n)
        CHECK(moore.homology(n).dim == oracle[n]);
}

TEST_CASE("faces move partition pieces only toward larger norms") {
    // inside F^k/F^{k+1} of gr(Q[x]/(x^3)), the face image of an H(P) word
    // meets only partitions P' with |P'| >= |P|
    auto [a3, i3sub] = truncated_polynomial(3);
    Ideal i3{&a3, i3sub};
    GradedAlgebra gr = associated_graded(a3, i3);
    HochschildModule h = hh(gr.algebra, 4);

    const int k = 2;
    for (int q = 1; q <= 4; ++q) {
        for (int c = 0; c < h.mod.dim(q); ++c) {
            std::vector<int> w = h.decode(c, q);
            int total = 0;
            Partition p;
            for (int x : w)
                total += gr.degree[x];
            if (total != k)
                continue;
            for (int x : w)
                if (gr.degree[x] > 0)
                    p.parts.push_back(gr.degree[x]);
            std::sort(p.parts.begin(), p.parts.end(), std::greater<int>());
            for (int i = 0; i <= q; ++i)
                for (const auto& [row, v] : h.mod.d(q, i).col(c).ents) {
                    std::vector<int> w2 = h.decode(row, q - 1);
                    Partition p2;
                    for (int x : w2)
                        if (gr.degree[x] > 0)
                            p2.parts.push_back(gr.degree[x]);
                    std::sort(p2.parts.begin(), p2.parts.end(), std::greater<int>());
                    CHECK(p2.norm() >= p.norm());
                }
        }
    }
}
