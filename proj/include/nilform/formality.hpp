#pragma once

// Partial formality of nilpotent models: obstructions, certificates, the
// exact decision for 2-step models, minimal-model extension towers and a
// solver for DGA morphisms with unknown coefficients.

#include "nilform/cdga.hpp"
#include "nilform/polynomial.hpp"
#include "nilform/resonance.hpp"
#include "nilform/ring.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nilform {

// ---------------------------------------------------------------------------
// Structure of degree-1 generated models

/// V_0 = ker d on V^1, V_{j+1} = {v : dv in the square of V_j}; each entry is
/// a basis over generator coordinates. Stops when the filtration stabilizes.
std::vector<std::vector<SparseVector>> nilpotency_filtration(const Cdga& c);
bool is_nilpotent_model(const Cdga& c);
/// d(V^1) lies in the square of ker d.
bool is_two_step(const Cdga& c);
/// Throws NotNilpotentModel unless c is degree-1 generated, minimal and nilpotent.
void require_nilpotent_model(const Cdga& c);

/// V^1 = C + N with C = ker d. N is spanned by generators.
struct Decomposition {
    std::vector<SparseVector> closed;
    std::vector<std::size_t> complement;
};

/// N = generators at the non-pivot positions of the reduced echelon basis of C.
Decomposition default_decomposition(const Cdga& c);
Decomposition decomposition_from_names(const Cdga& c, const std::vector<std::string>& names);
/// Throws PreconditionError unless C + N = V^1 is direct with d injective on N.
void validate_decomposition(const Cdga& c, const Decomposition& dec);

// ---------------------------------------------------------------------------
// Evidence and reports

enum class Verdict { CertifiedKFormal, CertifiedNotKFormal, Inconclusive };
std::string to_string(Verdict v);

/// One conclusion of one rule. `formal` says which direction; `k` empty
/// means full formality.
struct Evidence {
    std::string rule;
    std::optional<int> k;
    bool formal = false;
    std::string detail;
};

struct FormalityReport {
    int k_max = 0;
    std::vector<Verdict> verdicts;
    std::optional<bool> formal;
    std::vector<Evidence> evidence;
    bool bound_exceeded = false;
    std::vector<std::string> notes;

    explicit FormalityReport(int k_max = 0);

    /// Merges evidence under the monotonicity rules; a contradiction throws
    /// std::logic_error.
    void apply(const Evidence& e);
    std::optional<int> best_formal() const;
    std::optional<int> least_not_formal() const;
};

std::optional<Evidence> obstruction_generation(const Cdga& c, int k);
std::optional<Evidence> obstruction_resonance(const Cdga& c, int s, const SearchOptions& options = {});
std::optional<Evidence> certify_prop_art(const Cdga& c, int k, const Decomposition& dec);
/// Exact for 2-step models; throws NotTwoStep otherwise.
Evidence decide_twostep(const Cdga& c, int k);
Evidence full_formality(const Cdga& c);
/// Upgrade to full formality when the report certifies k and H^{>=k+2} = 0.
std::optional<Evidence> infer_prop_k2(const FormalityReport& report, const RingPresentation& r, int k);

// ---------------------------------------------------------------------------
// Targets, maps and minimal-model extension

/// Either a CDGA or a cohomology ring with zero differential. Elements are
/// coordinate vectors: over monomial bases for a CDGA, over class bases for
/// a ring.
class TargetAlgebra {
public:
    static TargetAlgebra of(const Cdga& c);
    static TargetAlgebra of(const RingPresentation& r);

    bool is_ring() const noexcept { return static_cast<bool>(ring_); }
    const Cdga* cdga() const noexcept { return cdga_.get(); }
    const RingPresentation* ring() const noexcept { return ring_.get(); }

    std::size_t dimension(int q) const;
    SparseVector product(int p, const SparseVector& a, int q, const SparseVector& b) const;
    SparseVector differential(int q, const SparseVector& a) const;

    std::size_t cohomology_dimension(int q) const;
    /// Class coordinates of a cocycle.
    SparseVector classify(int q, const SparseVector& cocycle) const;
    /// Cocycle representing class i.
    SparseVector representative(int q, Index i) const;
    /// Some a with d(a) = b, when b is exact.
    std::optional<SparseVector> preimage(int q, const SparseVector& b) const;

    std::string to_string(int q, const SparseVector& a) const;

private:
    std::shared_ptr<const Cdga> cdga_;
    std::shared_ptr<const RingPresentation> ring_;
};

/// A free CDGA with a multiplicative map to a target, given on generators.
struct ModelMap {
    Cdga stage;
    std::vector<SparseVector> images;
};

SparseVector map_element(const ModelMap& phi, const TargetAlgebra& target, const Multivector& v);
/// H^q(stage) -> H^q(target) in class coordinates.
SparseMatrix induced_cohomology_map(const ModelMap& phi, const TargetAlgebra& target, int q);
/// d_T phi(g) = phi(d g) on every generator.
bool is_dga_map(const ModelMap& phi, const TargetAlgebra& target);
/// H^{<=k}(phi) iso and H^{k+1}(phi) injective.
bool is_k_model_map(const ModelMap& phi, const TargetAlgebra& target, int k);

struct ExtensionResult {
    ModelMap model;
    /// Model after each stage; stages[i] contains V_0, ..., V_i.
    std::vector<ModelMap> stages;
    std::vector<std::size_t> stage_dimensions;
    bool truncated = false;
};

/// Adds degree k+1 generators: V_0 from the cokernel of H^{k+1}(phi), then
/// V_{i+1} from the kernel of H^{k+2}(phi_i) with transgression given by the
/// inclusion, for at most stage_cap further stages. New generators are named
/// <prefix><stage>_<j>; names_for_first_stage overrides stage 0 names.
ExtensionResult extend_minimal_model(const ModelMap& phi, const TargetAlgebra& target, int k, std::size_t stage_cap,
                                     const std::string& prefix = "v",
                                     const std::vector<std::string>& names_for_first_stage = {});

struct BigradedTower {
    std::vector<ModelMap> stages;
    std::vector<std::size_t> stage_dimensions;
    std::vector<std::size_t> cumulative_dimensions;
    bool stabilized = false;
};

/// Degree-1 part of the bigraded model of (H^*, 0), stage by stage.
BigradedTower bigraded_tower(const RingPresentation& r, std::size_t stage_cap);

// ---------------------------------------------------------------------------
// DGA morphism solver

/// phi(g) = fixed + sum_j u_j * free[j] with fresh unknowns u_j; the unknowns
/// listed in `nonzero` must not vanish.
struct ImageTemplate {
    SparseVector fixed;
    std::vector<SparseVector> free;
    std::vector<std::size_t> nonzero;
};

/// Keyed by source generator name; generators without a template get a
/// fully general image.
using MapConstraints = std::map<std::string, ImageTemplate>;

enum class MapStatus { Solution, Unsatisfiable, Inconclusive };
std::string to_string(MapStatus s);

struct SolverOptions {
    std::size_t max_unknowns = 12;
    std::size_t max_pairs = 20000;
};

struct MapSolveResult {
    MapStatus status = MapStatus::Inconclusive;
    std::optional<ModelMap> map;
    std::string certificate;
    std::vector<std::string> residual;
    std::size_t unknowns = 0;
    bool bound_exceeded = false;
};

MapSolveResult dga_map_solve(const Cdga& source, const TargetAlgebra& target, const MapConstraints& constraints,
                             const SolverOptions& options = {});

/// Template helpers over a CDGA target.
ImageTemplate fixed_image(const Multivector& value);
/// value + unknown multiples of each generator named in `free_generators`.
ImageTemplate affine_image(const Multivector& value, const std::vector<std::string>& free_generators);

// ---------------------------------------------------------------------------

struct FormalityOptions {
    std::optional<std::vector<std::string>> complement;
    SearchOptions search;
    SolverOptions solver;
};

struct RuleOutcome {
    std::optional<Evidence> evidence;
    bool bound_exceeded = false;
    std::string note;
};

/// Searches for a DGA map c -> (H^*, 0) that sends each closed generator to
/// its class. None exists: not 1-formal. One exists and H^{<=k+1} is
/// generated by H^1: k-formal. Needs ker d spanned by generators.
RuleOutcome morphism_solver_rule(const Cdga& c, const RingPresentation& r, const SolverOptions& options = {});

FormalityReport formality_report(const Cdga& c, int k_max, const FormalityOptions& options = {});

}  // namespace nilform
