#include "nilform/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilform {

SparseVector SparseVector::unit(Index i, Rational value) {
    SparseVector v;
    v.push_back(i, std::move(value));
    return v;
}

SparseVector SparseVector::from_dense(std::span<const Rational> dense) {
    SparseVector v;
    for (Index i = 0; i < dense.size(); ++i)
        if (!is_zero(dense[i])) v.entries_.push_back({i, dense[i]});
    return v;
}

Rational SparseVector::at(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index k) { return e.index < k; });
    if (it == entries_.end() || it->index != i) return 0;
    return it->value;
}

void SparseVector::push_back(Index i, Rational value) {
    if (!entries_.empty() && entries_.back().index >= i)
        throw std::logic_error("SparseVector::push_back: indices must increase");
    if (!is_zero(value)) entries_.push_back({i, std::move(value)});
}

void SparseVector::axpy(const Rational& factor, const SparseVector& other) {
    if (is_zero(factor) || other.empty()) return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
            merged.push_back(std::move(*a++));
        } else if (a == entries_.end() || b->index < a->index) {
            merged.push_back({b->index, factor * b->value});
            ++b;
        } else {
            Rational sum = a->value + factor * b->value;
            if (!is_zero(sum)) merged.push_back({a->index, std::move(sum)});
            ++a;
            ++b;
        }
    }
    entries_ = std::move(merged);
}

void SparseVector::scale(const Rational& factor) {
    if (is_zero(factor)) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_) e.value *= factor;
}

std::vector<Rational> SparseVector::to_dense(Index length) const {
    std::vector<Rational> dense(length);
    for (const auto& e : entries_) {
        if (e.index >= length) throw std::out_of_range("SparseVector::to_dense: index past length");
        dense[e.index] = e.value;
    }
    return dense;
}

SparseVector operator+(SparseVector a, const SparseVector& b) {
    a.axpy(1, b);
    return a;
}

SparseVector operator-(SparseVector a, const SparseVector& b) {
    a.axpy(-1, b);
    return a;
}

SparseVector operator*(const Rational& factor, SparseVector v) {
    v.scale(factor);
    return v;
}

SparseMatrix::SparseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), columns_(cols) {}

void SparseMatrix::set_column(Index j, SparseVector v) {
    if (!v.empty() && v.entries().back().index >= rows_)
        throw std::out_of_range("SparseMatrix::set_column: row index out of range");
    columns_.at(j) = std::move(v);
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
    SparseVector y;
    for (const auto& e : x.entries()) y.axpy(e.value, columns_.at(e.index));
    return y;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("SparseMatrix: dimension mismatch");
    SparseMatrix product(rows_, other.cols_);
    for (Index j = 0; j < other.cols_; ++j) product.columns_[j] = apply(other.columns_[j]);
    return product;
}

bool SparseMatrix::is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const SparseVector& c) { return c.empty(); });
}

EchelonForm::Reduction EchelonForm::reduce(SparseVector v) const {
    SparseVector combination;
    for (const auto& row : rows_) {
        if (v.empty()) break;
        const Index pivot = row.vec.leading();
        if (v.entries().back().index < pivot) break;
        const Rational c = v.at(pivot);
        if (is_zero(c)) continue;
        v.axpy(-c, row.vec);
        combination.axpy(c, row.tag);
    }
    return {std::move(v), std::move(combination)};
}

EchelonForm::Insertion EchelonForm::insert(SparseVector v, SparseVector tag) {
    auto [remainder, combination] = reduce(std::move(v));
    tag.axpy(-1, combination);
    if (remainder.empty()) return {false, std::move(tag)};

    const Rational inverse = 1 / remainder.entries().front().value;
    remainder.scale(inverse);
    tag.scale(inverse);
    const Index pivot = remainder.leading();
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                [](const Row& r, Index p) { return r.vec.leading() < p; });
    rows_.insert(pos, Row{std::move(remainder), std::move(tag)});
    return {true, {}};
}

std::vector<Index> EchelonForm::pivots() const {
    std::vector<Index> result;
    result.reserve(rows_.size());
    for (const auto& r : rows_) result.push_back(r.vec.leading());
    return result;
}

std::vector<SparseVector> EchelonForm::reduced_basis() const {
    std::vector<SparseVector> basis;
    basis.reserve(rows_.size());
    for (const auto& r : rows_) basis.push_back(r.vec);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Index pivot = basis[i].leading();
        for (std::size_t j = 0; j < i; ++j) {
            const Rational c = basis[j].at(pivot);
            if (!is_zero(c)) basis[j].axpy(-c, basis[i]);
        }
    }
    return basis;
}

std::size_t rank(const SparseMatrix& m) {
    EchelonForm ech;
    for (Index j = 0; j < m.cols(); ++j) ech.insert(m.column(j));
    return ech.rank();
}

std::vector<SparseVector> kernel(const SparseMatrix& m) {
    EchelonForm ech;
    std::vector<SparseVector> relations;
    for (Index j = 0; j < m.cols(); ++j) {
        auto ins = ech.insert(m.column(j), SparseVector::unit(j));
        if (!ins.independent) relations.push_back(std::move(ins.relation));
    }
    return row_reduce(relations);
}

std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b) {
    EchelonForm ech;
    for (Index j = 0; j < m.cols(); ++j) ech.insert(m.column(j), SparseVector::unit(j));
    auto red = ech.reduce(b);
    if (!red.remainder.empty()) return std::nullopt;
    return std::move(red.combination);
}

std::vector<SparseVector> row_reduce(std::span<const SparseVector> vectors) {
    EchelonForm ech;
    for (const auto& v : vectors) ech.insert(v);
    return ech.reduced_basis();
}

Subquotient::Subquotient(std::span<const SparseVector> boundaries, std::span<const SparseVector> cycles) {
    for (const auto& b : boundaries) {
        boundaries_.insert(b);
        combined_.insert(b);
    }
    std::vector<SparseVector> reduced;
    reduced.reserve(cycles.size());
    for (const auto& z : cycles) {
        auto r = boundaries_.reduce(z).remainder;
        if (!r.empty()) reduced.push_back(std::move(r));
    }
    representatives_ = row_reduce(reduced);
    for (Index i = 0; i < representatives_.size(); ++i) {
        auto ins = combined_.insert(representatives_[i], SparseVector::unit(i));
        if (!ins.independent) throw std::logic_error("Subquotient: representative fell into the boundaries");
    }
}

std::optional<SparseVector> Subquotient::classify(const SparseVector& v) const {
    auto red = combined_.reduce(v);
    if (!red.remainder.empty()) return std::nullopt;
    return std::move(red.combination);
}

std::string to_string(const SparseVector& v) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& e : v.entries()) {
        if (!first) os << ", ";
        first = false;
        os << e.index << ": " << to_string(e.value);
    }
    os << '}';
    return os.str();
}

}  // namespace nilform
