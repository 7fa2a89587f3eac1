#include "nilform/catalog.hpp"
#include "nilform/cdga.hpp"
#include "nilform/errors.hpp"

#include <doctest.h>

#include <thread>

using namespace nilform;

namespace {

std::vector<GeneratorSpec> odd(std::vector<std::string> names) {
    std::vector<GeneratorSpec> out;
    for (auto& n : names) out.push_back({n, 1, std::nullopt});
    return out;
}

std::vector<std::size_t> betti(const Cdga& c) {
    std::vector<std::size_t> out;
    for (int q = 0; q <= *c.algebra()->top_degree(); ++q) out.push_back(c.betti(q));
    return out;
}

Multivector parse(const Cdga& c, const char* text) { return parse_multivector(c.algebra(), text); }

}  // namespace

TEST_CASE("validation") {
    const auto h1 = Cdga::from_strings(odd({"x1", "y1", "z"}), {{"z", "x1*y1"}});
    CHECK(h1.is_minimal());
    CHECK(h1.is_degree_one_generated());
    CHECK_THROWS_AS(Cdga::from_strings(odd({"x1", "y1", "z"}), {{"z", "x1"}}), DegreeError);
    // d(d(w)) = x*y*t
    CHECK_THROWS_AS(Cdga::from_strings(odd({"x", "y", "t", "z", "w"}), {{"z", "x*y"}, {"w", "z*t"}}),
                    NotADifferential);
    CHECK_THROWS_AS(Cdga::from_strings(odd({"x", "y"}), {{"u", "x*y"}}), ParseError);
    const auto contr = catalog::example_contr("y1*y2");
    CHECK(contr.is_minimal());
}

TEST_CASE("differential matrices") {
    const auto h1 = catalog::heisenberg(1);
    CHECK(rank(h1.differential_matrix(1)) == 1);
    CHECK(rank(catalog::heisenberg(2).differential_matrix(1)) == 1);
    const auto& m = h1.differential_matrix(4);
    CHECK(m.cols() == 0);
}

TEST_CASE("d^2 = 0 at matrix level") {
    for (const auto& c : {catalog::heisenberg(2), catalog::example_initial(), catalog::example_contr("y1*y2")}) {
        const int top = *c.algebra()->top_degree();
        for (int q = 0; q + 1 <= top; ++q) {
            const auto& a = c.differential_matrix(q);
            const auto& b = c.differential_matrix(q + 1);
            for (Index j = 0; j < a.cols(); ++j) CHECK(b.apply(a.column(j)).empty());
        }
    }
}

TEST_CASE("Heisenberg Betti numbers") {
    CHECK(betti(catalog::heisenberg(1)) == std::vector<std::size_t>{1, 2, 2, 1});
    CHECK(betti(catalog::heisenberg(2)) == std::vector<std::size_t>{1, 4, 5, 5, 4, 1});
    CHECK(betti(catalog::heisenberg(3)) == std::vector<std::size_t>{1, 6, 14, 14, 14, 14, 6, 1});
}

TEST_CASE("Euler characteristic and Poincare duality") {
    for (const auto& c : {catalog::heisenberg(3), catalog::example_initial(), catalog::example_contr("y1*y2"),
                          catalog::heisenberg_type(2, 6)}) {
        const auto b = betti(c);
        const int top = *c.algebra()->top_degree();
        long chi_h = 0, chi_c = 0;
        for (int q = 0; q <= top; ++q) {
            const long sign = q % 2 ? -1 : 1;
            chi_h += sign * static_cast<long>(b[q]);
            chi_c += sign * static_cast<long>(c.algebra()->basis(q).size());
        }
        CHECK(chi_h == chi_c);
        CHECK(b[top] == 1);
        for (int q = 0; q <= top; ++q) CHECK(b[q] == b[top - q]);
    }
}

TEST_CASE("cohomology representatives are independent cocycles") {
    const auto c = catalog::example_initial();
    for (int q = 0; q <= 7; ++q) {
        const auto& h = c.cohomology(q);
        for (std::size_t i = 0; i < h.dimension(); ++i) {
            const auto& rep = h.representatives()[i];
            CHECK(c.differential(rep).is_zero());
            CHECK(h.reduce_coordinates(sparse_coordinates(rep, q)) == SparseVector::unit(i));
        }
        for (const auto& m : c.algebra()->basis(q > 0 ? q - 1 : 0)) {
            if (q == 0) break;
            const auto dm = c.differential(Multivector::monomial(c.algebra(), m));
            CHECK(h.reduce_coordinates(sparse_coordinates(dm, q)).empty());
        }
    }
}

TEST_CASE("coboundary witnesses") {
    const auto h1 = catalog::heisenberg(1);
    const auto w = h1.is_coboundary(parse(h1, "x1*y1"));
    REQUIRE(w);
    CHECK(*w == parse(h1, "z"));
    CHECK(!h1.is_coboundary(parse(h1, "x1*z")));
    const auto zero = h1.is_coboundary(Multivector(h1.algebra()));
    REQUIRE(zero);
    CHECK(zero->is_zero());
    CHECK_THROWS_AS(h1.is_coboundary(parse(h1, "z")), NotACocycle);
    CHECK_THROWS_AS(h1.is_coboundary(parse(h1, "x1 + x1*y1")), InhomogeneousError);
}

TEST_CASE("Hirsch extensions") {
    const auto base = Cdga::free(Algebra::exterior(std::vector<std::string>{"x1", "y1"}));
    const auto ext = hirsch_extend(base, {{{"z", 1, std::nullopt}, parse(base, "x1*y1")}});
    CHECK(betti(ext) == betti(catalog::heisenberg(1)));
    CHECK(ext.d(2) == parse(ext, "x1*y1"));

    const auto free = hirsch_extend(base, {{{"t", 1, std::nullopt}, Multivector(base.algebra())}});
    CHECK(betti(free) == std::vector<std::size_t>{1, 3, 3, 1});

    const auto init = catalog::example_initial();
    const auto b = hirsch_extend(init, {{{"alpha", 1, std::nullopt}, parse(init, "x1*omega1 + x2*omega2")}});
    CHECK(betti(b) == betti(catalog::example_contr()));

    CHECK_THROWS_AS(hirsch_extend(catalog::heisenberg(2), {{{"w", 1, std::nullopt}, parse(catalog::heisenberg(2), "x1*z")}}),
                    NotACocycle);
}

TEST_CASE("tensor products and Kunneth") {
    const auto t = Cdga::free(Algebra::exterior(std::vector<std::string>{"t"}));
    const auto h1t = tensor(catalog::heisenberg(1), t);
    CHECK(h1t.betti(1) == 3);

    const auto ground = Cdga::free(Algebra::create({}));
    CHECK(betti(tensor(catalog::heisenberg(2), ground)) == betti(catalog::heisenberg(2)));

    const auto pairs = std::vector<std::pair<Cdga, Cdga>>{
        {catalog::heisenberg(2), Cdga::free(Algebra::exterior(std::vector<std::string>{"t5"}))},
        {catalog::heisenberg(1), catalog::heisenberg(1)},
        {catalog::example_initial(), catalog::heisenberg(1)}};
    for (const auto& [a, b] : pairs) {
        const auto ab = tensor(a, b);
        const auto ba = betti(a), bb = betti(b), bab = betti(ab);
        for (std::size_t q = 0; q < bab.size(); ++q) {
            std::size_t sum = 0;
            for (std::size_t m = 0; m <= q; ++m)
                if (m < ba.size() && q - m < bb.size()) sum += ba[m] * bb[q - m];
            CHECK(bab[q] == sum);
        }
    }
    const auto sq = tensor(catalog::heisenberg(1), catalog::heisenberg(1));
    CHECK(sq.algebra()->find("x1'"));
}

TEST_CASE("copies share the cohomology cache across threads") {
    const auto c = catalog::heisenberg(3);
    std::vector<std::size_t> seen(8);
    std::vector<std::thread> threads;
    for (int q = 0; q < 8; ++q) threads.emplace_back([&, q] { seen[q] = Cdga(c).betti(q); });
    for (auto& t : threads) t.join();
    CHECK(seen == std::vector<std::size_t>{1, 6, 14, 14, 14, 14, 6, 1});
}
