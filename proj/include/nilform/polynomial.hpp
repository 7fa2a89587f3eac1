#pragma once

// Multivariate polynomials over Q with graded reverse lexicographic order, and
// a bounded Buchberger completion.

#include "nilform/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nilform {

using Exponent = std::vector<std::uint32_t>;

/// a > b in grevlex.
bool grevlex_greater(const Exponent& a, const Exponent& b);

struct GrevlexDescending {
    bool operator()(const Exponent& a, const Exponent& b) const { return grevlex_greater(a, b); }
};

class Polynomial {
public:
    using Terms = std::map<Exponent, Rational, GrevlexDescending>;

    explicit Polynomial(std::size_t variables);

    static Polynomial constant(std::size_t variables, const Rational& value);
    static Polynomial variable(std::size_t variables, std::size_t index);

    std::size_t variables() const noexcept { return variables_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    int total_degree() const;

    /// Largest term in grevlex; the polynomial must be nonzero.
    const Exponent& leading_exponent() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    void add_term(const Exponent& e, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    bool operator==(const Polynomial&) const = default;

    /// Same polynomial scaled to leading coefficient 1.
    Polynomial monic() const;
    Polynomial times_term(const Exponent& e, const Rational& c) const;

    Rational evaluate(std::span<const Rational> point) const;
    /// Replaces variable `index` by `value`; the variable count is unchanged.
    Polynomial substitute(std::size_t index, const Rational& value) const;
    /// Indices of variables that occur.
    std::vector<std::size_t> support() const;

    std::string to_string(std::span<const std::string> names) const;

private:
    std::size_t variables_;
    Terms terms_;
};

/// Remainder of p on division by `divisors` (full reduction).
Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors);

struct GroebnerResult {
    /// Reduced, monic and sorted by leading exponent (ascending) when complete.
    std::vector<Polynomial> basis;
    /// False when the S-pair budget ran out.
    bool complete = true;
};

GroebnerResult groebner_basis(std::vector<Polynomial> generators, std::size_t max_pairs = 50000);

/// The basis contains a nonzero constant.
bool is_unit_ideal(std::span<const Polynomial> basis);

/// The quotient ring is finite dimensional: every variable has a pure power
/// among the leading exponents. Expects a Groebner basis.
bool is_zero_dimensional(std::span<const Polynomial> basis);

}  // namespace nilform
