#include "nilform/errors.hpp"
#include "nilform/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace nilform;

namespace {

SparseMatrix random_matrix(Index rows, Index cols, std::mt19937& rng, int density = 3) {
    std::uniform_int_distribution<int> pick(0, density), value(-4, 4);
    SparseMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        std::vector<Rational> col(rows, 0);
        for (auto& x : col)
            if (pick(rng) == 0) x = value(rng);
        m.set_column(j, SparseVector::from_dense(col));
    }
    return m;
}

}  // namespace

TEST_CASE("rationals parse exactly") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == -7);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(to_string(parse_rational("-4/6")) == "-2/3");
}

TEST_CASE("kernel vectors are annihilated and rank-nullity holds") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const Index rows = 1 + trial % 7, cols = 1 + (trial * 5) % 9;
        const auto m = random_matrix(rows, cols, rng);
        const auto ker = kernel(m);
        for (const auto& v : ker) CHECK(m.apply(v).empty());
        CHECK(rank(m) + ker.size() == cols);
    }
}

TEST_CASE("solve finds preimages of images and rejects the rest") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_matrix(6, 4, rng, 1);
        std::vector<Rational> x(4);
        for (auto& v : x) v = static_cast<int>(rng() % 5) - 2;
        const auto b = m.apply(SparseVector::from_dense(x));
        const auto sol = solve(m, b);
        REQUIRE(sol);
        CHECK(m.apply(*sol) == b);
    }
    SparseMatrix zero(2, 2);
    CHECK(!solve(zero, SparseVector::unit(0)));
}

TEST_CASE("echelon form tracks combinations") {
    EchelonForm e;
    CHECK(e.insert(SparseVector::from_dense(std::vector<Rational>{1, 1, 0})).independent);
    CHECK(e.insert(SparseVector::from_dense(std::vector<Rational>{0, 1, 1})).independent);
    CHECK(!e.insert(SparseVector::from_dense(std::vector<Rational>{1, 2, 1})).independent);
    CHECK(e.rank() == 2);
    CHECK(e.contains(SparseVector::from_dense(std::vector<Rational>{2, 3, 1})));
    CHECK(!e.contains(SparseVector::unit(2)));
}

TEST_CASE("subquotient classifies modulo boundaries") {
    // cycles = <e0, e1>, boundaries = <e0 + e1>: one class
    std::vector<SparseVector> boundaries{SparseVector::from_dense(std::vector<Rational>{1, 1, 0})};
    std::vector<SparseVector> cycles{SparseVector::unit(0), SparseVector::unit(1)};
    Subquotient h(boundaries, cycles);
    CHECK(h.dimension() == 1);
    const auto c0 = h.classify(SparseVector::unit(0));
    const auto c1 = h.classify(SparseVector::unit(1));
    REQUIRE(c0);
    REQUIRE(c1);
    CHECK(*c0 == Rational(-1) * *c1);
    CHECK(h.classify(boundaries[0])->empty());
    CHECK(!h.classify(SparseVector::unit(2)));
}
