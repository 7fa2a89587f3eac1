#include "nilform/catalog.hpp"
#include "nilform/errors.hpp"
#include "nilform/ring.hpp"

#include <doctest.h>

using namespace nilform;

namespace {

SparseVector cls(const RingPresentation& r, const char* text) { return r.classify(parse_multivector(r.algebra(), text)); }

}  // namespace

TEST_CASE("products of classes") {
    const auto r1 = RingPresentation::from_cdga(catalog::heisenberg(1), 3);
    CHECK(r1.product(1, cls(r1, "x1"), 1, cls(r1, "y1")).empty());
    const auto top = r1.product(1, cls(r1, "x1"), 2, cls(r1, "y1*z"));
    CHECK(!top.empty());
    CHECK(top == cls(r1, "x1*y1*z"));

    const auto r2 = RingPresentation::from_cdga(catalog::heisenberg(2), 2);
    CHECK(!r2.product(1, cls(r2, "x1"), 1, cls(r2, "y1")).empty());

    const auto free = RingPresentation::from_cdga(Cdga::free(Algebra::exterior(std::vector<std::string>{"a", "b", "c"})), 3);
    CHECK(free.betti() == std::vector<std::size_t>{1, 3, 3, 1});
    CHECK(free.product(1, cls(free, "a"), 1, cls(free, "b")) == cls(free, "a*b"));
}

TEST_CASE("cutoff") {
    const auto r = RingPresentation::from_cdga(catalog::heisenberg(3), 2);
    CHECK(r.dimension(2) == 14);
    CHECK(!r.complete());
    CHECK_THROWS_AS(r.dimension(3), PreconditionError);
    CHECK_THROWS_AS(generated_in_degree_one_upto(r, 3), PreconditionError);
}

TEST_CASE("structure constants are graded commutative and associative") {
    for (const auto& c : {catalog::heisenberg(2), catalog::example_initial(), catalog::example_contr("y1*y2")}) {
        const int top = *c.algebra()->top_degree();
        const auto r = RingPresentation::from_cdga(c, top);
        for (int p = 0; p <= top; ++p)
            for (int q = 0; p + q <= top; ++q)
                for (Index i = 0; i < r.dimension(p); ++i)
                    for (Index j = 0; j < r.dimension(q); ++j) {
                        const Rational sign = (p * q) % 2 ? -1 : 1;
                        CHECK(r.product(p, i, q, j) == sign * r.product(q, j, p, i));
                    }
        for (Index i = 0; i < r.dimension(1); ++i)
            for (Index j = 0; j < r.dimension(1); ++j)
                for (Index k = 0; k < r.dimension(2); ++k) {
                    const auto a = SparseVector::unit(i), b = SparseVector::unit(j), d = SparseVector::unit(k);
                    CHECK(r.product(2, r.product(1, a, 1, b), 2, d) == r.product(1, a, 3, r.product(1, b, 2, d)));
                }
        CHECK(r.product(0, SparseVector::unit(0), 1, SparseVector::unit(0)) == SparseVector::unit(0));
    }
}

TEST_CASE("generation in degree one") {
    auto v = generated_in_degree_one_upto(RingPresentation::from_cdga(catalog::heisenberg(1), 2), 2);
    CHECK(!v.generated);
    CHECK(v.failing_degree == 2);
    CHECK(v.cokernel_dimension == 2);

    const auto r2 = RingPresentation::from_cdga(catalog::heisenberg(2), 3);
    CHECK(generated_in_degree_one_upto(r2, 2).generated);
    v = generated_in_degree_one_upto(r2, 3);
    CHECK(v.failing_degree == 3);
    CHECK(v.cokernel_dimension == 5);

    v = generated_in_degree_one_upto(RingPresentation::from_cdga(catalog::example_initial(), 2), 2);
    CHECK(v.failing_degree == 2);
    CHECK(v.cokernel_dimension == 1);
}

TEST_CASE("generation failure is monotone in m") {
    const auto r = RingPresentation::from_cdga(catalog::heisenberg(3), 7);
    bool failed = false;
    for (int m = 0; m <= 7; ++m) {
        const auto v = generated_in_degree_one_upto(r, m);
        if (failed) CHECK(!v.generated);
        failed = failed || !v.generated;
    }
    CHECK(failed);
}

TEST_CASE("Heisenberg-type rings generate exactly up to m") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 5}, {2, 6}, {3, 7}}) {
        const auto r = RingPresentation::from_cdga(catalog::heisenberg_type(m, n), m + 1);
        CHECK(generated_in_degree_one_upto(r, m).generated);
        CHECK(generated_in_degree_one_upto(r, m + 1).failing_degree == m + 1);
    }
}

TEST_CASE("characteristic subspace") {
    for (int n = 1; n <= 3; ++n) {
        const auto k = characteristic_subspace(RingPresentation::from_cdga(catalog::heisenberg(n), 2));
        CHECK(k.dimension() == 1);
        for (const auto& b : k.basis) CHECK(b.degree() == 2);
    }
    const auto free = RingPresentation::from_cdga(Cdga::free(Algebra::exterior(std::vector<std::string>{"a", "b", "c"})), 2);
    CHECK(characteristic_subspace(free).dimension() == 0);
    const auto ri = RingPresentation::from_cdga(catalog::example_initial(), 2);
    const auto k = characteristic_subspace(ri);
    CHECK(k.dimension() == 2);
    for (const auto& b : k.basis) CHECK(multiply_symbols(ri, b).empty());
    CHECK(ri.dimension(2) == 9);
    CHECK(degree_one_span(ri, 2).size() == 8);
}
