#pragma once

// Cohomology rings H^*(c) truncated at a degree cutoff.

#include "nilform/cdga.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilform {

/// Per-degree class bases and structure constants for every product of basis
/// classes of total degree <= max_degree. Class i of degree q is
/// representatives(q)[i]; products are class coordinates in the target degree.
class RingPresentation {
public:
    static RingPresentation from_cdga(const Cdga& c, int max_degree);

    int max_degree() const noexcept { return max_degree_; }
    /// H^q = 0 for every q > max_degree, so the truncation loses nothing.
    bool complete() const noexcept { return complete_; }
    bool degree_available(int q) const { return q >= 0 && (q <= max_degree_ || complete_); }

    std::size_t dimension(int q) const;
    std::vector<std::size_t> betti() const;
    const std::vector<Multivector>& representatives(int q) const;
    /// Class names: the generator name when the class is represented by a
    /// single generator, otherwise "h<q>_<i>".
    const std::vector<std::string>& labels(int q) const;

    /// [a_i][b_j] for basis classes i in degree p and j in degree q.
    const SparseVector& product(int p, Index i, int q, Index j) const;
    /// Bilinear extension to arbitrary class coordinates.
    SparseVector product(int p, const SparseVector& a, int q, const SparseVector& b) const;
    /// Matrix of left multiplication by a degree-p class: H^q -> H^{p+q}.
    SparseMatrix multiplication_matrix(int p, const SparseVector& a, int q) const;

    /// Class coordinates of a cocycle of the underlying algebra.
    SparseVector classify(const Multivector& cocycle) const;

    /// Exterior algebra on the degree-1 labels; used to write elements of
    /// the exterior powers of H^1.
    const AlgebraPtr& degree_one_symbols() const noexcept { return symbols_; }
    const AlgebraPtr& algebra() const noexcept { return source_->algebra(); }
    const Cdga& source() const noexcept { return *source_; }

private:
    RingPresentation() = default;

    std::shared_ptr<const Cdga> source_;
    int max_degree_ = 0;
    bool complete_ = false;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::size_t> offsets_;
    // keyed by global class indices (offset of degree + index)
    std::map<std::pair<std::size_t, std::size_t>, SparseVector> products_;
    AlgebraPtr symbols_;
};

/// Result of comparing (H^1)^q with H^q.
struct GenerationVerdict {
    bool generated = true;
    /// First degree where (H^1)^q != H^q.
    std::optional<int> failing_degree;
    std::size_t cokernel_dimension = 0;
    /// dim (H^1)^q for q = 0..m.
    std::vector<std::size_t> product_dimensions;
};

GenerationVerdict generated_in_degree_one_upto(const RingPresentation& r, int m);

/// Basis of the products of q degree-1 classes, as class coordinate vectors
/// in reduced echelon form.
std::vector<SparseVector> degree_one_span(const RingPresentation& r, int q);

/// Kernel of multiplication on the second exterior power of H^1.
struct CharacteristicSubspace {
    AlgebraPtr symbols;
    /// Reduced echelon basis over the degree-2 symbol monomials.
    std::vector<Multivector> basis;

    std::size_t dimension() const noexcept { return basis.size(); }
};

CharacteristicSubspace characteristic_subspace(const RingPresentation& r);

/// The product of two degree-1 classes, given as a degree-2 symbol element.
SparseVector multiply_symbols(const RingPresentation& r, const Multivector& form);

}  // namespace nilform
