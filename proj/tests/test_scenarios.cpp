#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chom/scenarios.hpp"
#include "chom/specfile.hpp"

using namespace chom;

TEST_CASE("nilpotent invariance scenarios") {
    RunOptions opt;
    opt.max_degree = 5;
    opt.window = 1;

    SUBCASE("(Q[eps], (eps)) passes") {
        auto [a, sub] = truncated_polynomial(2);
        Ideal id{&a, sub};
        ScenarioReport rep = check_nilpotent_invariance(a, id, opt);
        CHECK(rep.pass());
    }
    SUBCASE("(A, 0) passes trivially") {
        Algebra a = upper_triangular_2x2();
        Ideal zero = ideal_from_generators(a, {});
        ScenarioReport rep = check_nilpotent_invariance(a, zero, opt);
        CHECK(rep.pass());
    }
    SUBCASE("a non-nilpotent ideal is refused with a verdict") {
        Algebra a = upper_triangular_2x2();
        // the two-sided ideal generated by e11 is idempotent
        SparseVec gen;
        gen.ents.emplace_back(0, Rat(1));
        Ideal id = ideal_from_generators(a, {gen});
        ScenarioReport rep = check_nilpotent_invariance(a, id, opt);
        CHECK(!rep.pass());
        CHECK(rep.claims.size() == 1);
        CHECK(rep.claims[0].id == "ideal-nilpotent");
    }
}

TEST_CASE("nilpotent invariance for upper triangular matrices: HP = HP(QxQ)") {
    RunOptions opt;
    opt.max_degree = 6;
    opt.window = 1;
    Algebra ut = upper_triangular_2x2();
    SparseVec e12;
    e12.ents.emplace_back(2, Rat(1));
    Ideal strict = ideal_from_generators(ut, {e12});
    ScenarioReport rep = check_nilpotent_invariance(ut, strict, opt);
    CHECK(rep.pass());
    for (const auto& c : rep.claims)
        if (c.id == "towers-stabilized")
            CHECK(c.note.find("HP(A) = (2,0), HP(A/I) = (2,0)") != std::string::npos);
}

TEST_CASE("nilpotent invariance at larger nilpotency degrees") {
    RunOptions opt;
    opt.max_degree = 5;
    opt.window = 1;
    SUBCASE("Q[x]/(x^4)") {
        auto [a, sub] = truncated_polynomial(4);
        Ideal id{&a, sub};
        CHECK(check_nilpotent_invariance(a, id, opt).pass());
    }
    SUBCASE("the square-zero extension of Q[eps] by itself") {
        auto [b, bs] = truncated_polynomial(2);
        (void)bs;
        auto [e, msub] = square_zero_extension(b, regular_bimodule(b));
        Ideal id{&e, msub};
        CHECK(check_nilpotent_invariance(e, id, opt).pass());
    }
}

TEST_CASE("invariance survives a change of basis with dense rationals") {
    // conjugating spreads fractions through every structure constant
    auto [a, sub] = truncated_polynomial(3);
    SparseMatrix g(3, 3);
    g.set(0, 0, rat(2, 3));
    g.set(1, 0, rat(1, 5));
    g.set(2, 0, rat(-1, 2));
    g.set(0, 1, rat(1, 7));
    g.set(1, 1, rat(3, 4));
    g.set(2, 1, rat(2));
    g.set(1, 2, rat(-5, 6));
    g.set(2, 2, rat(1, 3));
    REQUIRE(rank_of(g) == 3);
    Algebra b = conjugate(a, g);
    REQUIRE(validate_algebra(b).ok);
    Ideal id = ideal_from_generators(b, {inverse(g).apply(sub.basis.col(0))});
    REQUIRE(id.dim() == 2);
    RunOptions opt;
    opt.max_degree = 5;
    opt.window = 1;
    CHECK(check_nilpotent_invariance(b, id, opt).pass());
}

TEST_CASE("mayer-vietoris degenerate square collapses to a vacuous pass") {
    RunOptions opt;
    opt.max_degree = 5;
    opt.window = 1;
    Algebra q = rationals();
    SplitSquare sq =
        split_square(q, q, q, SparseMatrix::identity(1), SparseMatrix::identity(1));
    ScenarioReport rep = check_mayer_vietoris(sq, opt);
    CHECK(rep.pass());
}

TEST_CASE("mayer-vietoris with A1 = Q[x]/(x^3)") {
    RunOptions opt;
    opt.max_degree = 5;
    opt.window = 1;
    auto [a3, s3] = truncated_polynomial(3);
    (void)s3;
    Algebra q = rationals();
    SparseMatrix f1(1, 3);
    f1.set(0, 0, rat(1));
    SplitSquare sq = split_square(a3, q, q, f1, SparseMatrix::identity(1));
    ScenarioReport rep = check_mayer_vietoris(sq, opt);
    CHECK(rep.pass());
}

TEST_CASE("free vanishing: N = 0 is a vacuous pass") {
    RunOptions opt;
    opt.max_degree = 5;
    opt.window = 1;
    ScenarioReport rep = check_free_vanishing(constant_simplicial(0, 5), opt, "zero");
    CHECK(rep.pass());
}

TEST_CASE("the lemma suite passes") {
    RunOptions opt;
    opt.max_degree = 6;
    CHECK(run_lemma_suite(opt).pass());
}

TEST_CASE("scenario reports are reproducible") {
    RunOptions opt;
    opt.max_degree = 5;
    opt.window = 1;
    opt.seed = 1234;
    auto r1 = check_free_vanishing_suite(3, opt);
    auto r2 = check_free_vanishing_suite(3, opt);
    REQUIRE(r1.claims.size() == r2.claims.size());
    for (size_t i = 0; i < r1.claims.size(); ++i) {
        CHECK(r1.claims[i].id == r2.claims[i].id);
        CHECK((r1.claims[i].verdict == r2.claims[i].verdict));
        CHECK(r1.claims[i].statement == r2.claims[i].statement);
    }
    CHECK(r1.seed == 1234);
}

TEST_CASE("spec files parse and validate") {
    SUBCASE("algebra round-trip") {
        auto [a, sub] = truncated_polynomial(2);
        nlohmann::json j = algebra_to_json(a, {{"rad", sub}});
        ParsedInput in = parse_spec(j);
        CHECK(in.kind == ParsedInput::Kind::Algebra);
        CHECK(in.algebra.dim == 2);
        REQUIRE(in.ideals.count("rad") == 1);
        CHECK(in.ideals["rad"].dim() == 1);
    }
    SUBCASE("zero denominators are named") {
        nlohmann::json j = nlohmann::json::parse(R"({
            "kind": "algebra", "basis": ["1"], "unit": ["1/0"],
            "table": [[["1"]]]
        })");
        try {
            parse_spec(j);
            CHECK(false);
        } catch (const std::invalid_argument& e) {
            std::string msg = e.what();
            CHECK(msg.find("$.unit[0]") != std::string::npos);
            CHECK(msg.find("1/0") != std::string::npos);
        }
    }
    SUBCASE("non-associative tables are rejected") {
        // a*a = b, a*b = 1, b*a = 0: (a a) a != a (a a)
        nlohmann::json j = nlohmann::json::parse(R"({
            "kind": "algebra", "basis": ["1", "a", "b"], "unit": ["1", "0", "0"],
            "table": [
              [["1","0","0"], ["0","1","0"], ["0","0","1"]],
              [["0","1","0"], ["0","0","1"], ["1","0","0"]],
              [["0","0","1"], ["0","0","0"], ["0","0","0"]]
            ]
        })");
        CHECK_THROWS_AS(parse_spec(j), std::invalid_argument);
    }
    SUBCASE("square files build the fiber product") {
        nlohmann::json j = nlohmann::json::parse(R"({
            "kind": "square",
            "a1":  {"basis": ["1","x"], "unit": ["1","0"],
                    "table": [[["1","0"],["0","1"]], [["0","1"],["0","0"]]]},
            "a2":  {"basis": ["1","x"], "unit": ["1","0"],
                    "table": [[["1","0"],["0","1"]], [["0","1"],["0","0"]]]},
            "a12": {"basis": ["1"], "unit": ["1"], "table": [[["1"]]]},
            "f1": [["1", "0"]],
            "f2": [["1", "0"]]
        })");
        ParsedInput in = parse_spec(j);
        CHECK(in.kind == ParsedInput::Kind::Square);
        CHECK(in.square.a0.dim == 3);
    }
}
