#include "nilform/catalog.hpp"
#include "nilform/errors.hpp"
#include "nilform/formality.hpp"

#include <doctest.h>

using namespace nilform;

TEST_CASE("Heisenberg presets") {
    const auto h1 = catalog::heisenberg(1);
    CHECK(h1.algebra()->size() == 3);
    CHECK(h1.d(2) == parse_multivector(h1.algebra(), "x1*y1"));
    CHECK(catalog::heisenberg(2).algebra()->size() == 5);
    CHECK_THROWS_AS(catalog::heisenberg(0), PreconditionError);
    for (int n = 1; n <= 4; ++n) CHECK(is_two_step(catalog::heisenberg(n)));
}

TEST_CASE("Heisenberg-type presets") {
    const auto t = catalog::heisenberg_type(2, 5);
    std::vector<std::string> names;
    for (const auto& g : t.algebra()->generators()) names.push_back(g.name);
    CHECK(names == std::vector<std::string>{"x1", "y1", "x2", "y2", "z", "t5"});
    CHECK(catalog::heisenberg_type(2, 4).algebra()->size() == catalog::heisenberg(2).algebra()->size());
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 5}, {2, 6}, {3, 7}})
        CHECK(catalog::heisenberg_type(m, n).betti(1) == static_cast<std::size_t>(n));
    CHECK_THROWS_AS(catalog::heisenberg_type(3, 5), PreconditionError);
}

TEST_CASE("central extensions") {
    const auto init = catalog::central_extension({"x1", "x2", "y1", "y2", "z"},
                                                 {{"omega1", "x1*y1 + x2*z"}, {"omega2", "x2*y2 + x1*z"}});
    for (int q = 0; q <= 7; ++q) CHECK(init.betti(q) == catalog::example_initial().betti(q));
    const auto ab = catalog::central_extension({"a", "b"}, {{"c", "0"}});
    CHECK(ab.is_zero_differential());
    const auto renamed = catalog::central_extension({"p1", "q1", "p2", "q2"}, {{"w", "p1*q1 + p2*q2"}});
    for (int q = 0; q <= 5; ++q) CHECK(renamed.betti(q) == catalog::heisenberg(2).betti(q));
    CHECK_THROWS_AS(catalog::central_extension({"a", "b"}, {{"c", "a"}}), DegreeError);
}

TEST_CASE("example_contr") {
    const auto b = catalog::example_contr();
    const auto m = catalog::example_contr("y1*y2");
    for (int q = 0; q <= 2; ++q) CHECK(b.betti(q) == m.betti(q));
    CHECK(b.betti(1) == 5);
    CHECK(b.betti(2) == 8);
    CHECK_THROWS_AS(catalog::example_contr("y1"), DegreeError);
}

TEST_CASE("preset grammar") {
    CHECK(catalog::parse_preset("heisenberg:2").algebra()->size() == 5);
    CHECK(catalog::parse_preset("heisenberg_type:2,5").algebra()->size() == 6);
    CHECK(catalog::parse_preset("example_contr:p=y1*y2").d(7) == catalog::example_contr("y1*y2").d(7));
    CHECK(catalog::parse_preset("example_contr").algebra()->size() == 8);
    CHECK(catalog::parse_preset("example_initial").algebra()->size() == 7);
    CHECK(catalog::parse_preset("central_extension:a,b;c=a*b").betti(1) == 2);
    for (const char* bad : {"heisenberg", "heisenberg:x", "heisenberg:0", "heisenberg_type:2", "nope", "example_initial:1",
                            "example_contr:q=1"})
        CHECK_THROWS_AS(catalog::parse_preset(bad), ParseError);
    CHECK(catalog::preset_list().size() == 5);
}

TEST_CASE("rank oracles") {
    const std::vector<std::vector<std::size_t>> expected{
        {1, 2, 2, 1}, {1, 4, 5, 5, 4, 1}, {1, 6, 14, 14, 14, 14, 6, 1}, {1, 8, 27, 48, 42, 42, 48, 27, 8, 1}};
    for (int n = 1; n <= 4; ++n)
        for (int q = 0; q <= 2 * n + 1; ++q) {
            CHECK(catalog::heisenberg_betti_oracle(n, q) == expected[n - 1][q]);
            CHECK(catalog::heisenberg(n).betti(q) == catalog::heisenberg_betti_oracle(n, q));
        }
    const auto s = catalog::heisenberg_betti_split(2, 3);
    CHECK(s.quotient == 0);
    CHECK(s.kernel == 5);
    CHECK_THROWS_AS(catalog::heisenberg_betti_oracle(2, 6), PreconditionError);

    CHECK(catalog::lefschetz_corank(2, 1) == 0);
    CHECK(catalog::lefschetz_corank(3, 2) == 0);
    CHECK(catalog::lefschetz_corank(1, 1) == 2);
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i <= n - 1; ++i) CHECK(catalog::lefschetz_corank(n, i) == 0);
}

TEST_CASE("random 2-step extensions") {
    std::size_t zero = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = catalog::random_two_step_extension(seed);
        const auto b = catalog::random_two_step_extension(seed);
        CHECK(a.forms == b.forms);
        CHECK(is_two_step(a.model));
        CHECK(a.model.is_zero_differential() == a.all_zero);
        zero += a.all_zero;
    }
    CHECK(zero > 0);
    CHECK(zero < 20);
}
