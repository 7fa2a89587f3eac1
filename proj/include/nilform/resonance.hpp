#pragma once

// Resonance varieties of a cohomology ring: the complexes (H^*, w) for degree-1
// classes w, membership, and the exact test for the first variety.

#include "nilform/polynomial.hpp"
#include "nilform/ring.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nilform {

/// A degree-1 class in coordinates of the H^1 basis.
using ResonancePoint = std::vector<Rational>;

/// dim H^q(H^*, w). Needs degree q+1 inside the cutoff (or a complete ring).
std::size_t mu_complex_dim(const RingPresentation& r, const ResonancePoint& w, int q);

bool in_resonance(const RingPresentation& r, const ResonancePoint& w, int q, std::size_t k = 1);

/// Reads "2*x1 - 1/3*y2" as a degree-1 cocycle and returns its class coordinates.
ResonancePoint parse_point(const RingPresentation& r, const std::string& text);
std::string point_to_string(const RingPresentation& r, const ResonancePoint& w);

/// Coordinates of (sum c_i k_i)^2 in the fourth exterior power of H^1, one
/// quadratic form in c per basis monomial (zero forms dropped, sign
/// normalized so the leading coefficient is positive).
struct QuadricSystem {
    std::size_t variables = 0;
    std::vector<Polynomial> equations;
};

QuadricSystem r11_quadric_system(const CharacteristicSubspace& k);

enum class Triviality { CertifiedTrivial, Witness, Inconclusive };

std::string to_string(Triviality t);

struct TrivialityVerdict {
    Triviality kind = Triviality::Inconclusive;
    /// Nonzero point of the variety (for Witness).
    ResonancePoint witness;
    /// Decomposable element of K with witness as first factor (degree 1 only).
    std::optional<Multivector> form;
    std::string note;
};

struct SearchOptions {
    /// Exact decision up to this dim K.
    std::size_t max_exact_dimension = 6;
    std::size_t grid_budget = 64;
    std::size_t random_budget = 64;
    std::uint64_t seed = 0;
};

/// Exact over the algebraic closure when dim K <= max_exact_dimension.
TrivialityVerdict decide_r11_trivial(const RingPresentation& r, const SearchOptions& options = {});

/// Searches for a nonzero w with dim H^q(H^*, w) >= k. Never certifies triviality.
TrivialityVerdict search_resonance_witness(const RingPresentation& r, int q, std::size_t k = 1,
                                           const SearchOptions& options = {});

/// The deterministic sample sequence used by the witness search: unit
/// vectors, pairwise sums, then small-integer vectors, then seeded random
/// rationals. Sample i depends only on (seed, i).
std::vector<ResonancePoint> sample_points(std::size_t dimension, std::size_t grid, std::size_t random,
                                          std::uint64_t seed);

/// Product formula membership for a tensor product; k = 1 only.
bool kunneth_membership(const RingPresentation& a, const RingPresentation& b, const ResonancePoint& wa,
                        const ResonancePoint& wb, int q, std::size_t k = 1);

struct ResonanceReport {
    std::optional<ResonancePoint> point;
    /// dim H^q(H^*, w) per degree, when a point was given.
    std::map<int, std::size_t> dimensions;
    std::map<int, TrivialityVerdict> triviality;
};

/// Dimensions at `point` for q <= q_max, and triviality verdicts for q <= q_max.
ResonanceReport resonance_report(const RingPresentation& r, std::optional<ResonancePoint> point, int q_max,
                                 const SearchOptions& options = {});

}  // namespace nilform
