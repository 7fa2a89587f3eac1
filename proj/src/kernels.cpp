#include "nilform/kernels.hpp"

#include "nilform/cdga.hpp"
#include "nilform/resonance.hpp"
#include "nilform/ring.hpp"

#include <exception>

namespace nilform::kernels {

namespace {

SparseVector differential_column(const Cdga& c, int q, const Monomial& m) {
    const auto& alg = c.algebra();
    return sparse_coordinates(c.differential(Multivector::monomial(alg, m)), q + 1);
}

SparseVector product_column(const ProductTask& t) {
    const auto v = wedge(*t.left, *t.right);
    return t.target->reduce_coordinates(sparse_coordinates(v, t.target->degree()));
}

// OpenMP regions must not let exceptions escape; the first one is rethrown.
class ExceptionSlot {
public:
    template <typename F>
    void run(F&& f) {
        try {
            f();
        } catch (...) {
#pragma omp critical(nilform_exception_slot)
            if (!error_) error_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::exception_ptr error_;
};

}  // namespace

SparseMatrix differential_matrix_serial(const Cdga& c, int q) {
    const auto& source = c.algebra()->basis(q);
    SparseMatrix m(c.algebra()->basis(q + 1).size(), source.size());
    for (Index j = 0; j < source.size(); ++j) m.set_column(j, differential_column(c, q, source[j]));
    return m;
}

SparseMatrix differential_matrix_parallel(const Cdga& c, int q) {
    const auto& source = c.algebra()->basis(q);
    (void)c.algebra()->basis(q + 1);
    std::vector<SparseVector> columns(source.size());
    ExceptionSlot slot;
    const auto n = static_cast<std::ptrdiff_t>(source.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        slot.run([&] { columns[static_cast<std::size_t>(j)] = differential_column(c, q, source[static_cast<std::size_t>(j)]); });
    slot.rethrow();
    SparseMatrix m(c.algebra()->basis(q + 1).size(), source.size());
    for (Index j = 0; j < columns.size(); ++j) m.set_column(j, std::move(columns[j]));
    return m;
}

std::vector<SparseVector> evaluate_products_serial(std::span<const ProductTask> tasks) {
    std::vector<SparseVector> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) out.push_back(product_column(t));
    return out;
}

std::vector<SparseVector> evaluate_products_parallel(std::span<const ProductTask> tasks) {
    std::vector<SparseVector> out(tasks.size());
    ExceptionSlot slot;
    const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        slot.run([&] { out[static_cast<std::size_t>(i)] = product_column(tasks[static_cast<std::size_t>(i)]); });
    slot.rethrow();
    return out;
}

std::vector<std::size_t> mu_dims_serial(const RingPresentation& r, std::span<const std::vector<Rational>> points,
                                        int q) {
    std::vector<std::size_t> out;
    out.reserve(points.size());
    for (const auto& w : points) out.push_back(mu_complex_dim(r, w, q));
    return out;
}

std::vector<std::size_t> mu_dims_parallel(const RingPresentation& r, std::span<const std::vector<Rational>> points,
                                          int q) {
    std::vector<std::size_t> out(points.size());
    ExceptionSlot slot;
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        slot.run([&] { out[static_cast<std::size_t>(i)] = mu_complex_dim(r, points[static_cast<std::size_t>(i)], q); });
    slot.rethrow();
    return out;
}

}  // namespace nilform::kernels
