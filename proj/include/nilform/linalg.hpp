#pragma once

// Sparse exact linear algebra over Q: vectors, column-major matrices and an
// incremental echelon form that also records how each row was obtained.

#include "nilform/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nilform {

using Index = std::size_t;

struct Entry {
    Index index;
    Rational value;

    bool operator==(const Entry&) const = default;
};

/// Sorted by index, no stored zeros.
class SparseVector {
public:
    SparseVector() = default;

    static SparseVector unit(Index i, Rational value = 1);
    static SparseVector from_dense(std::span<const Rational> dense);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t nonzeros() const noexcept { return entries_.size(); }

    Rational at(Index i) const;
    /// Index of the first nonzero entry; the vector must be nonempty.
    Index leading() const { return entries_.front().index; }

    /// Appends an entry; indices must arrive in increasing order.
    void push_back(Index i, Rational value);

    /// this += factor * other
    void axpy(const Rational& factor, const SparseVector& other);
    void scale(const Rational& factor);

    std::vector<Rational> to_dense(Index length) const;

    bool operator==(const SparseVector&) const = default;

private:
    std::vector<Entry> entries_;
};

SparseVector operator+(SparseVector a, const SparseVector& b);
SparseVector operator-(SparseVector a, const SparseVector& b);
SparseVector operator*(const Rational& factor, SparseVector v);

/// Column-major sparse matrix.
class SparseMatrix {
public:
    SparseMatrix(Index rows, Index cols);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }

    const SparseVector& column(Index j) const { return columns_.at(j); }
    void set_column(Index j, SparseVector v);

    SparseVector apply(const SparseVector& x) const;
    SparseMatrix operator*(const SparseMatrix& other) const;
    bool is_zero() const;

    bool operator==(const SparseMatrix&) const = default;

private:
    Index rows_;
    Index cols_;
    std::vector<SparseVector> columns_;
};

/// Row echelon form built one vector at a time. Every stored row carries a
/// tag, a vector in an arbitrary label space, and the map row -> tag is kept
/// linear, so reductions report how a vector decomposes over inserted data.
class EchelonForm {
public:
    struct Reduction {
        SparseVector remainder;    ///< v minus the eliminated part
        SparseVector combination;  ///< sum of row tags times the multipliers used
    };

    struct Insertion {
        bool independent;
        /// For a dependent insertion: tag - combination, a linear relation
        /// among the inserted tags.
        SparseVector relation;
    };

    EchelonForm() = default;

    Insertion insert(SparseVector v, SparseVector tag = {});
    Reduction reduce(SparseVector v) const;
    bool contains(const SparseVector& v) const { return reduce(v).remainder.empty(); }

    std::size_t rank() const noexcept { return rows_.size(); }
    std::vector<Index> pivots() const;

    /// Reduced row echelon basis of the row space, sorted by pivot.
    std::vector<SparseVector> reduced_basis() const;

private:
    struct Row {
        SparseVector vec;
        SparseVector tag;
    };
    // sorted by pivot
    std::vector<Row> rows_;
};

std::size_t rank(const SparseMatrix& m);

/// Basis of {x : m x = 0}, in reduced row echelon form.
std::vector<SparseVector> kernel(const SparseMatrix& m);

/// Some x with m x = b, or nullopt.
std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b);

/// Reduced row echelon basis of span(vectors).
std::vector<SparseVector> row_reduce(std::span<const SparseVector> vectors);

/// Z / B for subspaces B <= Z of some Q^n. Representatives are reduced
/// against B and then put in reduced echelon form among themselves.
class Subquotient {
public:
    Subquotient(std::span<const SparseVector> boundaries, std::span<const SparseVector> cycles);

    std::size_t dimension() const noexcept { return representatives_.size(); }
    const std::vector<SparseVector>& representatives() const noexcept { return representatives_; }

    /// Coordinates of the class of v in the representative basis, or nullopt
    /// if v is not in Z.
    std::optional<SparseVector> classify(const SparseVector& v) const;
    bool is_boundary(const SparseVector& v) const { return boundaries_.contains(v); }

private:
    EchelonForm boundaries_;
    EchelonForm combined_;  // B rows tagged 0, representative i tagged e_i
    std::vector<SparseVector> representatives_;
};

std::string to_string(const SparseVector& v);

}  // namespace nilform
