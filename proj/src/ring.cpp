#include "nilform/ring.hpp"

#include "nilform/errors.hpp"
#include "nilform/kernels.hpp"

#include <set>

namespace nilform {

namespace {

const SparseVector kZero;

std::string class_label(const Algebra& alg, const Multivector& rep, int q, std::size_t i) {
    if (rep.terms().size() == 1) {
        const auto& [m, c] = *rep.terms().begin();
        if (c == 1 && m.length() == 1) return alg.generator(m.factors.front()).name;
    }
    return "h" + std::to_string(q) + "_" + std::to_string(i);
}

}  // namespace

RingPresentation RingPresentation::from_cdga(const Cdga& c, int max_degree) {
    if (max_degree < 0) throw PreconditionError("ring cutoff must be non-negative");
    RingPresentation r;
    r.source_ = std::make_shared<const Cdga>(c);
    r.max_degree_ = max_degree;
    const auto top = c.algebra()->top_degree();
    r.complete_ = top && *top <= max_degree;

    std::size_t offset = 0;
    for (int q = 0; q <= max_degree; ++q) {
        const auto& h = c.cohomology(q);
        r.dims_.push_back(h.dimension());
        r.offsets_.push_back(offset);
        offset += h.dimension();
        std::vector<std::string> labels;
        std::set<std::string> used;
        for (std::size_t i = 0; i < h.dimension(); ++i) {
            std::string label = class_label(*c.algebra(), h.representatives()[i], q, i);
            while (!used.insert(label).second) label += '\'';
            labels.push_back(std::move(label));
        }
        r.labels_.push_back(std::move(labels));
    }
    r.symbols_ = Algebra::exterior(r.labels_.size() > 1 ? std::span<const std::string>(r.labels_[1])
                                                        : std::span<const std::string>());

    // unit
    if (!r.dims_.empty() && r.dims_[0] > 0)
        for (int q = 0; q <= max_degree; ++q)
            for (std::size_t j = 0; j < r.dims_[q]; ++j) {
                r.products_.emplace(std::make_pair(r.offsets_[0], r.offsets_[q] + j), SparseVector::unit(j));
                r.products_.emplace(std::make_pair(r.offsets_[q] + j, r.offsets_[0]), SparseVector::unit(j));
            }

    std::vector<kernels::ProductTask> tasks;
    std::vector<std::pair<std::size_t, std::size_t>> keys;
    for (int p = 1; p <= max_degree; ++p)
        for (int q = 1; p + q <= max_degree; ++q) {
            const auto& target = c.cohomology(p + q);
            const auto& left = c.cohomology(p).representatives();
            const auto& right = c.cohomology(q).representatives();
            for (std::size_t i = 0; i < left.size(); ++i)
                for (std::size_t j = 0; j < right.size(); ++j) {
                    tasks.push_back({&left[i], &right[j], &target});
                    keys.emplace_back(r.offsets_[p] + i, r.offsets_[q] + j);
                }
        }
    auto values = kernels::evaluate_products_parallel(tasks);
    for (std::size_t t = 0; t < keys.size(); ++t)
        if (!values[t].empty()) r.products_.emplace(keys[t], std::move(values[t]));
    return r;
}

std::size_t RingPresentation::dimension(int q) const {
    if (q < 0) return 0;
    if (q <= max_degree_) return dims_[static_cast<std::size_t>(q)];
    if (complete_) return 0;
    throw PreconditionError("degree " + std::to_string(q) + " exceeds the ring cutoff " + std::to_string(max_degree_));
}

std::vector<std::size_t> RingPresentation::betti() const { return dims_; }

const std::vector<Multivector>& RingPresentation::representatives(int q) const {
    static const std::vector<Multivector> none;
    if (dimension(q) == 0) return none;
    return source_->cohomology(q).representatives();
}

const std::vector<std::string>& RingPresentation::labels(int q) const {
    static const std::vector<std::string> none;
    if (dimension(q) == 0) return none;
    return labels_[static_cast<std::size_t>(q)];
}

const SparseVector& RingPresentation::product(int p, Index i, int q, Index j) const {
    if (i >= dimension(p) || j >= dimension(q)) throw PreconditionError("class index out of range");
    if (p + q > max_degree_) {
        if (complete_) return kZero;
        throw PreconditionError("product of degree " + std::to_string(p + q) + " exceeds the ring cutoff " +
                                std::to_string(max_degree_));
    }
    auto it = products_.find({offsets_[p] + i, offsets_[q] + j});
    return it == products_.end() ? kZero : it->second;
}

SparseVector RingPresentation::product(int p, const SparseVector& a, int q, const SparseVector& b) const {
    SparseVector out;
    for (const auto& ea : a.entries())
        for (const auto& eb : b.entries()) {
            const auto& v = product(p, ea.index, q, eb.index);
            if (!v.empty()) out.axpy(ea.value * eb.value, v);
        }
    return out;
}

SparseMatrix RingPresentation::multiplication_matrix(int p, const SparseVector& a, int q) const {
    SparseMatrix m(dimension(p + q), dimension(q));
    for (Index j = 0; j < dimension(q); ++j) m.set_column(j, product(p, a, q, SparseVector::unit(j)));
    return m;
}

SparseVector RingPresentation::classify(const Multivector& cocycle) const {
    if (cocycle.is_zero()) return {};
    const auto q = cocycle.degree();
    if (!q) throw InhomogeneousError("classify: inhomogeneous element");
    if (dimension(*q) == 0 && *q > max_degree_) {
        if (!source_->differential(cocycle).is_zero()) throw NotACocycle(cocycle.to_string() + " is not a cocycle");
        return {};
    }
    if (!cocycle.algebra()->same_generators(*algebra())) throw AlgebraMismatch("classify: foreign algebra");
    return source_->cohomology(*q).reduce_coordinates(sparse_coordinates(cocycle, *q));
}

std::vector<SparseVector> degree_one_span(const RingPresentation& r, int q) {
    if (q < 0) return {};
    if (q == 0) return r.dimension(0) ? std::vector<SparseVector>{SparseVector::unit(0)} : std::vector<SparseVector>{};
    std::vector<SparseVector> current;
    for (Index i = 0; i < r.dimension(1); ++i) current.push_back(SparseVector::unit(i));
    for (int d = 2; d <= q; ++d) {
        if (current.empty()) break;
        std::vector<SparseVector> next;
        for (const auto& s : current)
            for (Index i = 0; i < r.dimension(1); ++i) {
                auto v = r.product(d - 1, s, 1, SparseVector::unit(i));
                if (!v.empty()) next.push_back(std::move(v));
            }
        current = row_reduce(next);
    }
    return current;
}

GenerationVerdict generated_in_degree_one_upto(const RingPresentation& r, int m) {
    if (!r.degree_available(m)) throw PreconditionError("generation test up to degree " + std::to_string(m) +
                                                        " exceeds the ring cutoff " + std::to_string(r.max_degree()));
    GenerationVerdict verdict;
    std::vector<SparseVector> current;
    for (int q = 0; q <= m; ++q) {
        if (q == 0) {
            current = degree_one_span(r, 0);
        } else if (q == 1) {
            current.clear();
            for (Index i = 0; i < r.dimension(1); ++i) current.push_back(SparseVector::unit(i));
        } else {
            std::vector<SparseVector> next;
            for (const auto& s : current)
                for (Index i = 0; i < r.dimension(1); ++i) {
                    auto v = r.product(q - 1, s, 1, SparseVector::unit(i));
                    if (!v.empty()) next.push_back(std::move(v));
                }
            current = row_reduce(next);
        }
        verdict.product_dimensions.push_back(current.size());
        if (verdict.generated && current.size() != r.dimension(q)) {
            verdict.generated = false;
            verdict.failing_degree = q;
            verdict.cokernel_dimension = r.dimension(q) - current.size();
        }
    }
    return verdict;
}

SparseVector multiply_symbols(const RingPresentation& r, const Multivector& form) {
    SparseVector out;
    for (const auto& [m, c] : form.terms()) {
        if (m.length() != 2) throw DegreeError("expected a degree-2 symbol element");
        out.axpy(c, r.product(1, m.factors[0], 1, m.factors[1]));
    }
    return out;
}

CharacteristicSubspace characteristic_subspace(const RingPresentation& r) {
    if (!r.degree_available(2)) throw PreconditionError("characteristic subspace needs a cutoff of at least 2");
    const auto& symbols = r.degree_one_symbols();
    const auto& pairs = symbols->basis(2);
    SparseMatrix mu(r.dimension(2), pairs.size());
    for (Index col = 0; col < pairs.size(); ++col)
        mu.set_column(col, r.product(1, pairs[col].factors[0], 1, pairs[col].factors[1]));
    CharacteristicSubspace k{symbols, {}};
    for (const auto& v : kernel(mu)) k.basis.push_back(from_coordinates(symbols, 2, v));
    return k;
}

}  // namespace nilform
