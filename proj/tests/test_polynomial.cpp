#include "nilform/polynomial.hpp"

#include <doctest.h>

#include <random>

using namespace nilform;

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial cst(std::size_t n, const Rational& c) { return Polynomial::constant(n, c); }

Exponent lcm(const Exponent& a, const Exponent& b) {
    Exponent out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const auto l = lcm(f.leading_exponent(), g.leading_exponent());
    Exponent mf(l.size()), mg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        mf[i] = l[i] - f.leading_exponent()[i];
        mg[i] = l[i] - g.leading_exponent()[i];
    }
    return f.times_term(mf, 1 / f.leading_coefficient()) - g.times_term(mg, 1 / g.leading_coefficient());
}

}  // namespace

TEST_CASE("grevlex order") {
    // x^2 > xy > y^2 > x > y > 1 in grevlex with x > y
    const std::vector<Exponent> order{{2, 0}, {1, 1}, {0, 2}, {1, 0}, {0, 1}, {0, 0}};
    for (std::size_t i = 0; i + 1 < order.size(); ++i) CHECK(grevlex_greater(order[i], order[i + 1]));
    // degree 3 in three variables: x*z^2 < y^3 since the last variable breaks the tie
    CHECK(grevlex_greater({0, 3, 0}, {1, 0, 2}));
}

TEST_CASE("arithmetic and evaluation") {
    const auto x = var(2, 0), y = var(2, 1);
    const auto p = (x + y) * (x - y);
    CHECK(p == x * x - y * y);
    const std::vector<Rational> pt{3, 2};
    CHECK(p.evaluate(pt) == 5);
    CHECK(p.substitute(1, 2) == x * x - cst(2, 4));
    CHECK(p.total_degree() == 2);
    const std::vector<std::string> names{"x", "y"};
    CHECK(p.to_string(names) == "x^2 - y^2");
}

TEST_CASE("unit and zero-dimensional ideals") {
    const std::size_t n = 2;
    const auto x = var(n, 0), y = var(n, 1);
    auto gb = groebner_basis({x * y - cst(n, 1), x});
    CHECK(gb.complete);
    CHECK(is_unit_ideal(gb.basis));

    gb = groebner_basis({x * x, x * y, y * y});
    CHECK(!is_unit_ideal(gb.basis));
    CHECK(is_zero_dimensional(gb.basis));

    gb = groebner_basis({x * y});
    CHECK(!is_zero_dimensional(gb.basis));

    // the quadric system {2c1^2, 2c1c2, 2c2^2} has only the origin as a root
    gb = groebner_basis({Rational(2) * x * x, Rational(2) * x * y, Rational(2) * y * y});
    CHECK(is_zero_dimensional(gb.basis));
}

TEST_CASE("Groebner bases satisfy the Buchberger criterion") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> c(-2, 2), e(0, 2);
    const std::size_t n = 3;
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Polynomial> gens;
        for (int k = 0; k < 3; ++k) {
            Polynomial p(n);
            for (int t = 0; t < 3; ++t) p.add_term({static_cast<std::uint32_t>(e(rng)), static_cast<std::uint32_t>(e(rng)),
                                                    static_cast<std::uint32_t>(e(rng))},
                                                   c(rng));
            if (!p.is_zero()) gens.push_back(p);
        }
        const auto gb = groebner_basis(gens);
        REQUIRE(gb.complete);
        for (const auto& g : gens) CHECK(normal_form(g, gb.basis).is_zero());
        for (std::size_t i = 0; i < gb.basis.size(); ++i)
            for (std::size_t j = i + 1; j < gb.basis.size(); ++j)
                CHECK(normal_form(s_polynomial(gb.basis[i], gb.basis[j]), gb.basis).is_zero());
    }
}
