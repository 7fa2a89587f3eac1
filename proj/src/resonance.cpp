#include "nilform/resonance.hpp"

#include "nilform/errors.hpp"
#include "nilform/kernels.hpp"

#include <random>
#include <set>

namespace nilform {

namespace {

void require_point(const RingPresentation& r, const ResonancePoint& w) {
    if (w.size() != r.dimension(1))
        throw PreconditionError("point has " + std::to_string(w.size()) + " coordinates, H^1 has dimension " +
                                std::to_string(r.dimension(1)));
}

bool is_nonzero(const ResonancePoint& w) {
    for (const auto& x : w)
        if (!nilform::is_zero(x)) return true;
    return false;
}

Multivector symbol_element(const RingPresentation& r, const ResonancePoint& w) {
    return from_coordinates(r.degree_one_symbols(), 1, std::span<const Rational>(w));
}

}  // namespace

std::size_t mu_complex_dim(const RingPresentation& r, const ResonancePoint& w, int q) {
    require_point(r, w);
    if (q < 0) return 0;
    if (!r.degree_available(q + 1))
        throw PreconditionError("dim H^" + std::to_string(q) + "(H, w) needs degree " + std::to_string(q + 1) +
                                ", beyond the ring cutoff " + std::to_string(r.max_degree()));
    const auto a = SparseVector::from_dense(w);
    const std::size_t outgoing = r.dimension(q + 1) ? rank(r.multiplication_matrix(1, a, q)) : 0;
    const std::size_t incoming = q >= 1 && r.dimension(q - 1) ? rank(r.multiplication_matrix(1, a, q - 1)) : 0;
    return r.dimension(q) - outgoing - incoming;
}

bool in_resonance(const RingPresentation& r, const ResonancePoint& w, int q, std::size_t k) {
    if (k < 1) throw PreconditionError("resonance depth must be at least 1");
    return mu_complex_dim(r, w, q) >= k;
}

ResonancePoint parse_point(const RingPresentation& r, const std::string& text) {
    SparseVector coords;
    try {
        auto v = parse_multivector(r.algebra(), text);
        if (!v.is_zero() && v.degree() != 1) throw ParseError("point '" + text + "' is not of degree 1");
        if (!r.source().differential(v).is_zero()) throw ParseError("point '" + text + "' is not a cocycle");
        coords = r.classify(v);
    } catch (const ParseError&) {
        // class labels that are not generator names
        auto v = parse_multivector(r.degree_one_symbols(), text);
        if (!v.is_zero() && v.degree() != 1) throw ParseError("point '" + text + "' is not of degree 1");
        coords = v.is_zero() ? SparseVector{} : sparse_coordinates(v, 1);
    }
    return coords.to_dense(r.dimension(1));
}

std::string point_to_string(const RingPresentation& r, const ResonancePoint& w) {
    return symbol_element(r, w).to_string();
}

QuadricSystem r11_quadric_system(const CharacteristicSubspace& k) {
    const std::size_t n = k.dimension();
    QuadricSystem system{n, {}};
    const auto& quartic = k.symbols->basis(4);
    std::vector<Polynomial> eqs(quartic.size(), Polynomial(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const auto prod = wedge(k.basis[i], k.basis[j]);
            if (prod.is_zero()) continue;
            Exponent e(n, 0);
            ++e[i];
            ++e[j];
            const Rational factor = i == j ? 1 : 2;
            for (const auto& [m, c] : prod.terms()) eqs[*k.symbols->index_of(m, 4)].add_term(e, factor * c);
        }
    for (auto& eq : eqs) {
        if (eq.is_zero()) continue;
        if (sgn(eq.leading_coefficient()) < 0) eq *= Rational(-1);
        system.equations.push_back(std::move(eq));
    }
    return system;
}

std::string to_string(Triviality t) {
    switch (t) {
        case Triviality::CertifiedTrivial: return "CertifiedTrivial";
        case Triviality::Witness: return "Witness";
        case Triviality::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::vector<ResonancePoint> sample_points(std::size_t dimension, std::size_t grid, std::size_t random,
                                          std::uint64_t seed) {
    std::vector<ResonancePoint> out;
    if (dimension == 0) return out;
    std::set<ResonancePoint> seen;
    auto offer = [&](ResonancePoint p) {
        if (out.size() >= grid || !is_nonzero(p) || !seen.insert(p).second) return;
        out.push_back(std::move(p));
    };
    for (std::size_t i = 0; i < dimension; ++i) {
        ResonancePoint p(dimension, 0);
        p[i] = 1;
        offer(std::move(p));
    }
    for (int sign : {1, -1})
        for (std::size_t i = 0; i < dimension; ++i)
            for (std::size_t j = i + 1; j < dimension; ++j) {
                ResonancePoint p(dimension, 0);
                p[i] = 1;
                p[j] = sign;
                offer(std::move(p));
            }
    // odometer over {-2..2}^dimension
    std::vector<int> digits(dimension, -2);
    while (out.size() < grid) {
        ResonancePoint p(dimension);
        for (std::size_t i = 0; i < dimension; ++i) p[i] = digits[i];
        offer(std::move(p));
        std::size_t i = 0;
        while (i < dimension && digits[i] == 2) digits[i++] = -2;
        if (i == dimension) break;
        ++digits[i];
    }
    const auto lo = static_cast<std::uint32_t>(seed), hi = static_cast<std::uint32_t>(seed >> 32);
    for (std::size_t s = 0; s < random; ++s) {
        std::seed_seq seq{lo, hi, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
        ResonancePoint p(dimension);
        for (auto& x : p) {
            const int n = num(rng);
            const int d = den(rng);
            x = Rational(n, d);
            x.canonicalize();
        }
        if (!is_nonzero(p)) p[0] = 1;
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

/// alpha, beta with alpha ^ beta = form for a decomposable 2-form in the symbols.
std::pair<ResonancePoint, ResonancePoint> factor_decomposable(const Multivector& form, std::size_t n) {
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, 0));
    for (const auto& [m, c] : form.terms()) {
        w[m.factors[0]][m.factors[1]] = c;
        w[m.factors[1]][m.factors[0]] = -c;
    }
    const auto& [lead, coeff] = *form.terms().begin();
    const auto i = lead.factors[0], j = lead.factors[1];
    ResonancePoint alpha(n), beta(n);
    for (std::size_t k = 0; k < n; ++k) {
        alpha[k] = w[k][j] / coeff;
        beta[k] = w[i][k];
    }
    return {alpha, beta};
}

TrivialityVerdict witness_from_form(const RingPresentation& r, Multivector form) {
    const std::size_t n = r.dimension(1);
    auto [alpha, beta] = factor_decomposable(form, n);
    const auto check = wedge(symbol_element(r, alpha), symbol_element(r, beta));
    if (!(check == form)) throw std::logic_error("factorization of a decomposable form failed");
    if (!multiply_symbols(r, form).empty()) throw std::logic_error("witness form does not lie in K");
    Rational lead = 0;
    for (const auto& x : alpha)
        if (!nilform::is_zero(x)) {
            lead = x;
            break;
        }
    for (auto& x : alpha) x /= lead;
    if (mu_complex_dim(r, alpha, 1) < 1) throw std::logic_error("factor of a form in K is not resonant");
    TrivialityVerdict v;
    v.kind = Triviality::Witness;
    v.witness = std::move(alpha);
    v.form = std::move(form);
    return v;
}

}  // namespace

TrivialityVerdict decide_r11_trivial(const RingPresentation& r, const SearchOptions& options) {
    const auto k = characteristic_subspace(r);
    const std::size_t n = k.dimension();
    if (n == 0) return {Triviality::CertifiedTrivial, {}, std::nullopt, "characteristic subspace is zero"};
    const auto system = r11_quadric_system(k);

    bool exact_nontrivial = false;
    std::string note;
    if (n <= options.max_exact_dimension) {
        const auto gb = groebner_basis(system.equations);
        if (gb.complete && is_zero_dimensional(gb.basis))
            return {Triviality::CertifiedTrivial, {}, std::nullopt,
                    "quadric system on K (dim " + std::to_string(n) +
                        ") has only the zero solution over the algebraic closure"};
        if (gb.complete) exact_nontrivial = true;
        else note = "Groebner basis budget exhausted; ";
    } else {
        note = "dim K = " + std::to_string(n) + " exceeds the exact bound; ";
    }

    const auto candidates = sample_points(n, options.grid_budget, options.random_budget, options.seed);
    for (const auto& c : candidates) {
        bool vanishes = true;
        for (const auto& eq : system.equations)
            if (!nilform::is_zero(eq.evaluate(c))) {
                vanishes = false;
                break;
            }
        if (!vanishes) continue;
        Multivector form(k.symbols);
        for (std::size_t i = 0; i < n; ++i) form += c[i] * k.basis[i];
        return witness_from_form(r, std::move(form));
    }
    TrivialityVerdict v;
    v.kind = Triviality::Inconclusive;
    v.note = note + (exact_nontrivial ? "decomposables exist over the algebraic closure, " : "") +
             "no rational witness among " + std::to_string(candidates.size()) + " sampled points";
    return v;
}

TrivialityVerdict search_resonance_witness(const RingPresentation& r, int q, std::size_t k,
                                           const SearchOptions& options) {
    if (q == 0) {
        // multiplication by w != 0 is injective on H^0
        return {Triviality::CertifiedTrivial, {}, std::nullopt, "w is injective on H^0"};
    }
    const auto samples = sample_points(r.dimension(1), options.grid_budget, options.random_budget, options.seed);
    const auto dims = kernels::mu_dims_parallel(r, samples, q);
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (dims[i] >= k) return {Triviality::Witness, samples[i], std::nullopt, "sample " + std::to_string(i)};
    return {Triviality::Inconclusive, {}, std::nullopt,
            "sampling only: no witness among " + std::to_string(samples.size()) + " points"};
}

bool kunneth_membership(const RingPresentation& a, const RingPresentation& b, const ResonancePoint& wa,
                        const ResonancePoint& wb, int q, std::size_t k) {
    if (k != 1) throw Unsupported("the product formula is implemented for depth 1 only");
    for (int m = 0; m <= q; ++m)
        if (mu_complex_dim(a, wa, m) >= 1 && mu_complex_dim(b, wb, q - m) >= 1) return true;
    return false;
}

ResonanceReport resonance_report(const RingPresentation& r, std::optional<ResonancePoint> point, int q_max,
                                 const SearchOptions& options) {
    ResonanceReport report;
    report.point = std::move(point);
    for (int q = 0; q <= q_max; ++q) {
        if (report.point) report.dimensions[q] = mu_complex_dim(r, *report.point, q);
        report.triviality[q] = q == 1 ? decide_r11_trivial(r, options) : search_resonance_witness(r, q, 1, options);
    }
    return report;
}

}  // namespace nilform
