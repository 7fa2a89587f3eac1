#pragma once

// Data-parallel kernels. Each has an OpenMP version used by the library and a
// serial reference kept for tests and benchmarks; both return identical
// results for identical input.

#include "nilform/linalg.hpp"
#include "nilform/rational.hpp"

#include <span>
#include <vector>

namespace nilform {

class Cdga;
class CohomologyBasis;
class Multivector;
class RingPresentation;

namespace kernels {

/// Matrix of d on basis(q) -> basis(q+1), one column per source monomial.
SparseMatrix differential_matrix_serial(const Cdga& c, int q);
SparseMatrix differential_matrix_parallel(const Cdga& c, int q);

/// One cup product: left * right reduced to class coordinates in `target`.
struct ProductTask {
    const Multivector* left;
    const Multivector* right;
    const CohomologyBasis* target;
};

std::vector<SparseVector> evaluate_products_serial(std::span<const ProductTask> tasks);
std::vector<SparseVector> evaluate_products_parallel(std::span<const ProductTask> tasks);

/// dim H^q(H, mu_w) for a batch of points w.
std::vector<std::size_t> mu_dims_serial(const RingPresentation& r, std::span<const std::vector<Rational>> points, int q);
std::vector<std::size_t> mu_dims_parallel(const RingPresentation& r, std::span<const std::vector<Rational>> points,
                                          int q);

}  // namespace kernels
}  // namespace nilform
