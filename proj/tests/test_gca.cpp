#include "nilform/errors.hpp"
#include "nilform/gca.hpp"

#include <doctest.h>

#include <random>

using namespace nilform;

namespace {

AlgebraPtr odd(std::vector<std::string> names) { return Algebra::exterior(names); }

Multivector parse(const AlgebraPtr& a, const char* text) { return parse_multivector(a, text); }

Multivector random_homogeneous(const AlgebraPtr& a, int q, std::mt19937& rng) {
    std::uniform_int_distribution<int> c(-3, 3);
    Multivector v(a);
    for (const auto& m : a->basis(q)) v += Multivector::monomial(a, m, c(rng));
    return v;
}

}  // namespace

TEST_CASE("wedge follows graded commutativity in degree 1") {
    const auto a = odd({"x1", "y1"});
    const auto x = Multivector::generator(a, "x1");
    const auto y = Multivector::generator(a, "y1");
    CHECK(wedge(x, y) == parse(a, "x1*y1"));
    CHECK(wedge(y, x) == parse(a, "-x1*y1"));
    CHECK(wedge(x, x).is_zero());
}

TEST_CASE("product of the two quadrics of the rank-2 extension") {
    const auto a = odd({"x1", "x2", "y1", "y2", "z"});
    const auto w1 = parse(a, "x1*y1 + x2*z");
    const auto w2 = parse(a, "x2*y2 + x1*z");
    CHECK(wedge(w1, w2) == parse(a, "x1*y1*x2*y2"));
    const auto sq = wedge(w1, w1);
    CHECK(sq == parse(a, "2*x1*y1*x2*z"));
    // in the order x1,y1,x2,y2,z the square is a single basis monomial with coefficient 2
    const auto b = odd({"x1", "y1", "x2", "y2", "z"});
    const auto coords = sparse_coordinates(wedge(parse(b, "x1*y1 + x2*z"), parse(b, "x1*y1 + x2*z")), 4);
    REQUIRE(coords.nonzeros() == 1);
    CHECK(coords.entries()[0].value == 2);
}

TEST_CASE("basis sizes") {
    CHECK(odd({"x1", "y1", "x2", "y2"})->basis(2).size() == 6);
    const auto h1 = odd({"x1", "y1", "z"});
    REQUIRE(h1->basis(3).size() == 1);
    CHECK(h1->to_string(h1->basis(3)[0]) == "x1*y1*z");
    CHECK(odd({"x1", "y1", "x2", "y2", "x3", "y3"})->basis(7).empty());
    for (std::size_t n = 0; n <= 7; ++n) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
        const auto a = odd(names);
        std::size_t total = 0;
        for (int q = 0; q <= static_cast<int>(n); ++q) total += a->basis(q).size();
        CHECK(total == (std::size_t{1} << n));
    }
}

TEST_CASE("coordinates") {
    const auto a = odd({"x1", "x2", "y1", "y2", "z"});
    const auto v = parse(a, "x1*y1 + x2*z");
    const auto coords = sparse_coordinates(v, 2);
    CHECK(coords.nonzeros() == 2);
    for (const auto& e : coords.entries()) CHECK(e.value == 1);
    CHECK(a->to_string(a->basis(2)[coords.entries()[0].index]) == "x1*y1");
    CHECK(a->to_string(a->basis(2)[coords.entries()[1].index]) == "x2*z");
    CHECK(sparse_coordinates(Multivector(a), 2).empty());
    CHECK(from_coordinates(a, 2, coords) == v);
}

TEST_CASE("wedge is associative and graded commutative on random elements") {
    const auto a = odd({"a", "b", "c", "d", "e", "f"});
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int p = 1 + trial % 3, q = 1 + (trial / 3) % 2, r = 1 + (trial / 6) % 2;
        const auto u = random_homogeneous(a, p, rng);
        const auto v = random_homogeneous(a, q, rng);
        const auto w = random_homogeneous(a, r, rng);
        CHECK(wedge(u, wedge(v, w)) == wedge(wedge(u, v), w));
        const Rational sign = (p * q) % 2 ? -1 : 1;
        CHECK(wedge(u, v) == sign * wedge(v, u));
    }
}

TEST_CASE("coordinates are a bijection on each degree") {
    const auto a = odd({"a", "b", "c", "d", "e"});
    std::mt19937 rng(11);
    for (int q = 0; q <= 5; ++q) {
        const auto v = random_homogeneous(a, q, rng);
        const auto dense = coordinates(v, q);
        CHECK(dense.size() == a->basis(q).size());
        CHECK(from_coordinates(a, q, std::span<const Rational>(dense)) == v);
    }
}

TEST_CASE("even generators carry powers") {
    const auto a = Algebra::create({{"x", 1, std::nullopt}, {"c", 2, std::nullopt}});
    const auto c = Multivector::generator(a, "c");
    CHECK(wedge(c, c) == parse(a, "c^2"));
    CHECK(parse(a, "c^2").degree() == 4);
    CHECK(!a->top_degree());
    CHECK(a->basis(4).size() == 1);
    CHECK(a->basis(5).size() == 1);
}

TEST_CASE("parser errors") {
    const auto a = odd({"x", "y"});
    CHECK_THROWS_AS(parse(a, "x*w"), ParseError);
    CHECK_THROWS_AS(parse(a, "1/0*x"), ParseError);
    CHECK_THROWS_AS(parse(a, "x +"), ParseError);
    CHECK(parse(a, "1/2*x - 3/4*y").to_string() == "1/2*x - 3/4*y");
    CHECK(parse(a, "x*x").is_zero());
}

TEST_CASE("algebras with different generators do not mix") {
    const auto a = odd({"x"});
    const auto b = odd({"y"});
    CHECK_THROWS_AS(wedge(Multivector::generator(a, "x"), Multivector::generator(b, "y")), AlgebraMismatch);
}

TEST_CASE("relabel moves terms along an index map") {
    const auto a = odd({"x", "y"});
    const auto b = odd({"u", "x", "y"});
    const std::vector<std::size_t> map{1, 2};
    CHECK(relabel(parse(a, "x*y"), b, map) == parse(b, "x*y"));
}
