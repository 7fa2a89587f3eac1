#include "nilform/catalog.hpp"
#include "nilform/kernels.hpp"
#include "nilform/resonance.hpp"
#include "nilform/ring.hpp"

#include <doctest.h>

using namespace nilform;

TEST_CASE("parallel differential matrices equal the serial reference") {
    for (const auto& c : {catalog::heisenberg(3), catalog::example_contr("y1*y2"), catalog::heisenberg_type(2, 6)})
        for (int q = 0; q <= *c.algebra()->top_degree(); ++q)
            CHECK(kernels::differential_matrix_parallel(c, q) == kernels::differential_matrix_serial(c, q));
}

TEST_CASE("parallel products equal the serial reference") {
    const auto c = catalog::heisenberg(3);
    std::vector<kernels::ProductTask> tasks;
    for (int p = 1; p <= 3; ++p) {
        const auto& left = c.cohomology(p).representatives();
        const auto& right = c.cohomology(4 - p).representatives();
        for (const auto& a : left)
            for (const auto& b : right) tasks.push_back({&a, &b, &c.cohomology(4)});
    }
    CHECK(kernels::evaluate_products_parallel(tasks) == kernels::evaluate_products_serial(tasks));
}

TEST_CASE("parallel resonance dimensions equal the serial reference") {
    const auto r = RingPresentation::from_cdga(catalog::heisenberg(3), 4);
    const auto points = sample_points(6, 60, 40, 1);
    for (int q = 0; q <= 3; ++q) CHECK(kernels::mu_dims_parallel(r, points, q) == kernels::mu_dims_serial(r, points, q));
}

TEST_CASE("kernel errors propagate out of parallel regions") {
    const auto r = RingPresentation::from_cdga(catalog::heisenberg(2), 2);
    const std::vector<std::vector<Rational>> bad{{1, 0}};
    CHECK_THROWS(kernels::mu_dims_parallel(r, bad, 1));
}
