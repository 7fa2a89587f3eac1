#pragma once

#include "nilform/gca.hpp"
#include "nilform/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilform {

/// Degree-q cohomology of a CDGA: cocycle representatives and the map taking
/// a cocycle to its class coordinates.
class CohomologyBasis {
public:
    CohomologyBasis(AlgebraPtr algebra, int degree, Subquotient quotient);

    int degree() const noexcept { return degree_; }
    std::size_t dimension() const noexcept { return quotient_.dimension(); }
    const std::vector<Multivector>& representatives() const noexcept { return representatives_; }

    /// Class coordinates of a degree-q cocycle. Throws NotACocycle otherwise.
    std::vector<Rational> reduce(const Multivector& cocycle) const;
    SparseVector reduce_coordinates(const SparseVector& cocycle) const;
    std::optional<SparseVector> try_reduce_coordinates(const SparseVector& v) const { return quotient_.classify(v); }

private:
    AlgebraPtr algebra_;
    int degree_;
    Subquotient quotient_;
    std::vector<Multivector> representatives_;
};

using Metadata = std::map<std::string, std::string>;

/// Free graded-commutative algebra with a differential given on generators.
/// Construction validates: d raises degree by one and d^2 = 0. Values are
/// immutable; copies share a lazily filled, synchronized cohomology cache.
class Cdga {
public:
    /// Validating constructor; `differential[i]` is d of generator i.
    static Cdga create(AlgebraPtr algebra, std::vector<Multivector> differential, Metadata metadata = {});
    /// d = 0 on every generator.
    static Cdga free(AlgebraPtr algebra, Metadata metadata = {});
    /// Convenience: generators plus "name -> expression" differentials (missing names get d = 0).
    static Cdga from_strings(std::vector<GeneratorSpec> generators,
                             const std::vector<std::pair<std::string, std::string>>& differential,
                             Metadata metadata = {});

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const std::vector<Multivector>& differentials() const noexcept { return differential_; }
    const Multivector& d(std::size_t generator) const { return differential_.at(generator); }
    const Metadata& metadata() const noexcept { return metadata_; }
    Cdga with_metadata(Metadata metadata) const;

    /// d extended by the graded Leibniz rule. Accepts inhomogeneous input.
    Multivector differential(const Multivector& v) const;

    /// d(generator) lies in the ideal of products of at least two generators.
    bool is_minimal() const noexcept { return minimal_; }
    bool is_degree_one_generated() const;
    bool is_zero_differential() const;

    /// Matrix of d: basis(q) -> basis(q+1) in the algebra's deterministic bases.
    const SparseMatrix& differential_matrix(int q) const;
    const CohomologyBasis& cohomology(int q) const;
    std::size_t betti(int q) const { return cohomology(q).dimension(); }

    /// Some u with d(u) = v when v is exact. Throws NotACocycle when d(v) != 0.
    std::optional<Multivector> is_coboundary(const Multivector& v) const;

private:
    struct Cache;

    Cdga(AlgebraPtr algebra, std::vector<Multivector> differential, Metadata metadata, bool minimal);

    AlgebraPtr algebra_;
    std::vector<Multivector> differential_;
    Metadata metadata_;
    bool minimal_ = true;
    std::shared_ptr<Cache> cache_;
};

/// Adjoins generators with prescribed cocycle transgressions (given in c's
/// algebra). Old generators keep their indices and differentials.
Cdga hirsch_extend(const Cdga& c, const std::vector<std::pair<GeneratorSpec, Multivector>>& new_generators);

/// Tensor product; b's generators follow a's and are renamed with a "'"
/// suffix on a name clash.
Cdga tensor(const Cdga& a, const Cdga& b);

/// Generator index maps a -> tensor(a, b) and b -> tensor(a, b).
std::vector<std::size_t> left_embedding(const Cdga& a, const Cdga& b);
std::vector<std::size_t> right_embedding(const Cdga& a, const Cdga& b);

}  // namespace nilform
