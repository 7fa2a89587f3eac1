#pragma once

// Free graded-commutative algebras on named generators over Q.
//
// Generators are totally ordered by declaration; a monomial is the sorted
// list of its generator indices (even generators may repeat, odd ones may
// not) and monomials compare lexicographically. Moving a generator of
// degree p past one of degree q costs (-1)^{pq}.

#include "nilform/linalg.hpp"
#include "nilform/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nilform {

struct GeneratorSpec {
    std::string name;
    int upper_degree = 1;
    /// Word/stage degree for bigraded models.
    std::optional<int> lower_degree;

    bool operator==(const GeneratorSpec&) const = default;
};

struct Monomial {
    std::vector<std::uint32_t> factors;

    bool is_unit() const noexcept { return factors.empty(); }
    std::size_t length() const noexcept { return factors.size(); }

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Immutable generator list. Per-degree bases are computed on first use and
/// cached; the cache is internally synchronized.
class Algebra {
public:
    static AlgebraPtr create(std::vector<GeneratorSpec> generators);
    /// All generators of degree 1.
    static AlgebraPtr exterior(std::span<const std::string> names);

    const std::vector<GeneratorSpec>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return generators_.size(); }
    const GeneratorSpec& generator(std::size_t i) const { return generators_.at(i); }
    int degree(std::size_t i) const { return generators_.at(i).upper_degree; }
    bool is_odd(std::size_t i) const { return degree(i) % 2 != 0; }
    bool all_odd() const;
    std::optional<std::size_t> find(std::string_view name) const;

    /// Highest degree with a nonzero monomial, when finite (no even generators).
    std::optional<int> top_degree() const;

    int degree(const Monomial& m) const;

    /// All degree-q monomials, sorted. Empty for q < 0.
    const std::vector<Monomial>& basis(int q) const;
    std::optional<Index> index_of(const Monomial& m, int q) const;

    bool same_generators(const Algebra& other) const { return generators_ == other.generators_; }

    std::string to_string(const Monomial& m) const;

private:
    explicit Algebra(std::vector<GeneratorSpec> generators);

    std::vector<GeneratorSpec> generators_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::vector<Monomial>> basis_cache_;
};

/// Product of two monomials as (sign, monomial), or nullopt when an odd
/// generator repeats.
std::optional<std::pair<int, Monomial>> multiply(const Algebra& algebra, const Monomial& a, const Monomial& b);

/// Exact element of a free graded-commutative algebra in canonical form.
class Multivector {
public:
    using Terms = std::map<Monomial, Rational>;

    explicit Multivector(AlgebraPtr algebra);

    static Multivector scalar(AlgebraPtr algebra, const Rational& value);
    static Multivector generator(AlgebraPtr algebra, std::size_t index);
    static Multivector generator(AlgebraPtr algebra, std::string_view name);
    static Multivector monomial(AlgebraPtr algebra, Monomial m, const Rational& coefficient = 1);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Common degree of all terms; nullopt for zero and for inhomogeneous values.
    std::optional<int> degree() const;
    bool is_homogeneous() const;
    std::map<int, Multivector> homogeneous_parts() const;
    /// Every term is a product of at least two generators.
    bool is_decomposable() const;
    Rational coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& coefficient);

    Multivector& operator+=(const Multivector& other);
    Multivector& operator-=(const Multivector& other);
    Multivector& operator*=(const Rational& factor);

    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator-(Multivector a) { return a *= Rational(-1); }
    friend Multivector operator*(const Rational& f, Multivector a) { return a *= f; }

    bool operator==(const Multivector& other) const;

    std::string to_string() const;

private:
    AlgebraPtr algebra_;
    Terms terms_;
};

/// Graded-commutative product.
Multivector wedge(const Multivector& a, const Multivector& b);
Multivector power(const Multivector& a, unsigned exponent);

/// Coordinates over basis(q). Zero maps to the zero vector.
std::vector<Rational> coordinates(const Multivector& v, int q);
SparseVector sparse_coordinates(const Multivector& v, int q);
Multivector from_coordinates(const AlgebraPtr& algebra, int q, const SparseVector& coords);
Multivector from_coordinates(const AlgebraPtr& algebra, int q, std::span<const Rational> coords);

/// Re-expresses v over `target`, sending generator i to generator index_map[i].
/// Degrees must agree.
Multivector relabel(const Multivector& v, const AlgebraPtr& target, std::span<const std::size_t> index_map);

/// Parses sums of terms like "2*x1*y1 - 3/4*z + x1^2". Names must be
/// generators of the algebra; '^' is only meaningful for even generators.
Multivector parse_multivector(const AlgebraPtr& algebra, std::string_view text);

}  // namespace nilform
