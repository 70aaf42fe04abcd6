#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include <symgraph/symgraph.hpp>

#include "test_util.hpp"

using namespace symgraph;

TEST_CASE("rational parsing and formatting") {
    CHECK(rat_parse("3/6") == Rat(1, 2));
    CHECK(rat_parse("-4") == Rat(-4));
    CHECK(rat_str(make_rat(-3, 9)) == "-1/3");
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("abc"), std::invalid_argument);
}

TEST_CASE("sym_dim basic values") {
    for (int N = 0; N <= 6; ++N) CHECK(sym_dim(1, N) == 1);
    CHECK(sym_dim(2, 2) == 3);
    // enumerate all degree-2 exponent vectors of length 3
    CHECK(sym_dim(3, 2) == 6);
}

TEST_CASE("monomial_basis order and contents") {
    CHECK(monomial_basis(1, 3) == std::vector<ExpVec>{{3}});
    CHECK(monomial_basis(2, 1) == std::vector<ExpVec>{{1, 0}, {0, 1}});
    CHECK(monomial_basis(2, 2) == std::vector<ExpVec>{{2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("basis size equals sym_dim for d <= 4, N <= 6") {
    for (int d = 1; d <= 4; ++d)
        for (int N = 0; N <= 6; ++N) {
            auto basis = monomial_basis(d, N);
            CHECK(static_cast<long>(basis.size()) == sym_dim(d, N));
            // all degrees right, no duplicates, strictly decreasing lex
            for (std::size_t i = 0; i < basis.size(); ++i) {
                CHECK(expvec_degree(basis[i]) == N);
                if (i > 0) CHECK(basis[i - 1] > basis[i]);
            }
        }
}

TEST_CASE("matrix rank, trace, product examples") {
    CHECK(Matrix::identity(3).rank() == 3);
    CHECK(Matrix(4, 4).trace() == 0);
    Matrix m(2, 2);
    m(0, 0) = 1; m(0, 1) = 2; m(1, 0) = 2; m(1, 1) = 4;
    CHECK(m.rank() == 1);  // second row is twice the first
    Matrix a(2, 3), b(3, 2);
    a(0, 0) = 1; a(0, 2) = Rat(1, 2);
    b(0, 1) = 2; b(2, 1) = 4;
    Matrix p = a * b;
    CHECK(p(0, 1) == 4);
    CHECK_THROWS_AS(a * a, std::invalid_argument);
    CHECK_THROWS_AS(a.trace(), std::invalid_argument);
}

TEST_CASE("rank invariant under row permutation and scaling") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = testutil::random_matrix(rng, 4, 5);
        std::size_t r = m.rank();
        Matrix p(4, 5);
        std::vector<int> perm{2, 0, 3, 1};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 5; ++j) p(i, j) = m(perm[i], j) * Rat(3 + i);
        CHECK(p.rank() == r);
    }
}

TEST_CASE("trace cyclic invariance") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = testutil::random_matrix(rng, 4, 4);
        Matrix b = testutil::random_matrix(rng, 4, 4);
        CHECK((a * b).trace() == (b * a).trace());
    }
}

TEST_CASE("null space and solve") {
    Matrix m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    auto ns = m.null_space();
    CHECK(ns.size() == 2);
    for (const auto& v : ns) {
        Rat acc = 0;
        for (int j = 0; j < 3; ++j) acc += m(0, j) * v[j];
        CHECK(acc == 0);
    }
    Matrix a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 1;
    auto x = a.solve({Rat(3), Rat(2)});
    CHECK(x[0] == 1);
    CHECK(x[1] == 1);
}

TEST_CASE("sympoly arithmetic and evaluation") {
    SymPoly p(2, 1);
    p.add_term({1, 0}, 1);
    SymPoly q = p * p;  // x1^2
    CHECK(q.coeff({2, 0}) == 1);
    CHECK(q.degree == 2);
    q.add_term({2, 0}, -1);
    CHECK(q.is_zero());  // zero coefficients are dropped

    SymPoly s = power_of_linear({Rat(1), Rat(1)}, 2);  // (x1+x2)^2
    CHECK(s.coeff({1, 1}) == 2);
    CHECK(s.eval({Rat(1), Rat(2)}) == 9);
}

TEST_CASE("linear substitution") {
    // x1 -> x1', x2 -> 0 kills cross terms
    SymPoly s = power_of_linear({Rat(1), Rat(1)}, 2);
    Matrix proj(1, 2);
    proj(0, 0) = 1;
    SymPoly t = s.substitute_linear(proj);
    CHECK(t.dim == 1);
    CHECK(t.coeff({2}) == 1);
    CHECK(t.terms.size() == 1);
}
