#include "nilform/formality.hpp"

#include "nilform/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace nilform {

// ---------------------------------------------------------------------------
// Structure of degree-1 generated models

std::vector<std::vector<SparseVector>> nilpotency_filtration(const Cdga& c) {
    if (!c.is_degree_one_generated()) throw NotNilpotentModel("model is not generated in degree 1");
    const auto& alg = c.algebra();
    const std::size_t n = alg->size();
    const auto& d1 = c.differential_matrix(1);
    std::vector<std::vector<SparseVector>> out{kernel(d1)};
    while (out.back().size() < n) {
        const auto& last = out.back();
        EchelonForm square;
        for (std::size_t i = 0; i < last.size(); ++i)
            for (std::size_t j = i + 1; j < last.size(); ++j)
                square.insert(sparse_coordinates(
                    wedge(from_coordinates(alg, 1, last[i]), from_coordinates(alg, 1, last[j])), 2));
        SparseMatrix m(alg->basis(2).size(), n);
        for (Index g = 0; g < n; ++g) m.set_column(g, square.reduce(d1.column(g)).remainder);
        auto next = kernel(m);
        if (next.size() == last.size()) break;
        out.push_back(std::move(next));
    }
    return out;
}

bool is_nilpotent_model(const Cdga& c) {
    return c.is_degree_one_generated() && nilpotency_filtration(c).back().size() == c.algebra()->size();
}

bool is_two_step(const Cdga& c) {
    const auto f = nilpotency_filtration(c);
    return f.back().size() == c.algebra()->size() && f.size() <= 2;
}

void require_nilpotent_model(const Cdga& c) {
    if (!c.is_degree_one_generated()) throw NotNilpotentModel("model is not generated in degree 1");
    if (!c.is_minimal()) throw NotNilpotentModel("differential is not decomposable");
    if (!is_nilpotent_model(c)) throw NotNilpotentModel("differential is not nilpotent");
}

Decomposition default_decomposition(const Cdga& c) {
    Decomposition dec;
    dec.closed = kernel(c.differential_matrix(1));
    std::set<Index> pivots;
    for (const auto& v : dec.closed) pivots.insert(v.leading());
    for (std::size_t g = 0; g < c.algebra()->size(); ++g)
        if (!pivots.count(g)) dec.complement.push_back(g);
    return dec;
}

Decomposition decomposition_from_names(const Cdga& c, const std::vector<std::string>& names) {
    Decomposition dec;
    dec.closed = kernel(c.differential_matrix(1));
    for (const auto& name : names) {
        auto idx = c.algebra()->find(name);
        if (!idx) throw PreconditionError("complement names unknown generator '" + name + "'");
        dec.complement.push_back(*idx);
    }
    std::sort(dec.complement.begin(), dec.complement.end());
    dec.complement.erase(std::unique(dec.complement.begin(), dec.complement.end()), dec.complement.end());
    return dec;
}

void validate_decomposition(const Cdga& c, const Decomposition& dec) {
    const std::size_t n = c.algebra()->size();
    const auto& d1 = c.differential_matrix(1);
    for (const auto& v : dec.closed)
        if (!d1.apply(v).empty()) throw PreconditionError("decomposition: closed part contains a non-cocycle");
    if (dec.closed.size() != kernel(d1).size()) throw PreconditionError("decomposition: closed part is not ker d");
    if (dec.closed.size() + dec.complement.size() != n)
        throw PreconditionError("decomposition: dimensions do not add up to dim V^1");
    EchelonForm span;
    for (const auto& v : dec.closed) span.insert(v);
    for (auto g : dec.complement)
        if (!span.insert(SparseVector::unit(g)).independent)
            throw PreconditionError("decomposition: complement meets the closed part");
    SparseMatrix dn(d1.rows(), dec.complement.size());
    for (Index j = 0; j < dec.complement.size(); ++j) dn.set_column(j, d1.column(dec.complement[j]));
    if (rank(dn) != dec.complement.size()) throw PreconditionError("decomposition: d is not injective on N");
}

// ---------------------------------------------------------------------------
// Reports

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedKFormal: return "CertifiedKFormal";
        case Verdict::CertifiedNotKFormal: return "CertifiedNotKFormal";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

FormalityReport::FormalityReport(int k_max_) : k_max(k_max_), verdicts(static_cast<std::size_t>(k_max_ + 1)) {
    std::fill(verdicts.begin(), verdicts.end(), Verdict::Inconclusive);
}

void FormalityReport::apply(const Evidence& e) {
    auto conflict = [&](int k) {
        throw std::logic_error("rule " + e.rule + " contradicts earlier evidence at k = " + std::to_string(k));
    };
    if (e.formal) {
        if (!e.k) {
            if (formal == false) conflict(-1);
            formal = true;
        }
        const int upto = e.k ? std::min(*e.k, k_max) : k_max;
        for (int j = 0; j <= upto; ++j) {
            if (verdicts[j] == Verdict::CertifiedNotKFormal) conflict(j);
            verdicts[j] = Verdict::CertifiedKFormal;
        }
    } else {
        if (formal == true) conflict(-1);
        formal = false;
        if (e.k)
            for (int j = std::max(*e.k, 0); j <= k_max; ++j) {
                if (verdicts[j] == Verdict::CertifiedKFormal) conflict(j);
                verdicts[j] = Verdict::CertifiedNotKFormal;
            }
    }
    evidence.push_back(e);
}

std::optional<int> FormalityReport::best_formal() const {
    std::optional<int> best;
    for (int k = 0; k <= k_max; ++k)
        if (verdicts[k] == Verdict::CertifiedKFormal) best = k;
    return best;
}

std::optional<int> FormalityReport::least_not_formal() const {
    for (int k = 0; k <= k_max; ++k)
        if (verdicts[k] == Verdict::CertifiedNotKFormal) return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rules

namespace {

RingPresentation ring_for(const Cdga& c, int degree) {
    const int n = static_cast<int>(c.algebra()->size());
    return RingPresentation::from_cdga(c, std::max(0, std::min(degree, n)));
}

std::optional<Evidence> generation_rule(const RingPresentation& r, int k) {
    const auto v = generated_in_degree_one_upto(r, k + 1);
    if (v.generated) return std::nullopt;
    const int q = *v.failing_degree;
    return Evidence{"generation", q - 1, false,
                    "H^" + std::to_string(q) + " is not generated by H^1 (cokernel dimension " +
                        std::to_string(v.cokernel_dimension) + ")"};
}

std::optional<Evidence> resonance_rule(const RingPresentation& r, int s, const SearchOptions& options) {
    for (int i = 1; i <= s; ++i) {
        const auto v = i == 1 ? decide_r11_trivial(r, options) : search_resonance_witness(r, i, 1, options);
        if (v.kind == Triviality::Witness) {
            std::string detail = "w = " + point_to_string(r, v.witness) + " lies in R^" + std::to_string(i) + "_1";
            if (v.form) detail += " (decomposable " + v.form->to_string() + " in K)";
            return Evidence{"resonance", i, false, detail};
        }
    }
    return std::nullopt;
}

Evidence twostep_rule(const RingPresentation& r, int k) {
    const auto v = generated_in_degree_one_upto(r, k + 1);
    if (v.generated)
        return {"two-step-decision", k, true,
                "2-step model with H^{<=" + std::to_string(k + 1) + "} generated by H^1"};
    return {"two-step-decision", k, false,
            "2-step model; H^" + std::to_string(*v.failing_degree) + " is not generated by H^1"};
}

std::string join_names(const Algebra& alg, const std::vector<std::size_t>& gens) {
    std::string s;
    for (auto g : gens) s += (s.empty() ? "" : ",") + alg.generator(g).name;
    return s;
}

}  // namespace

std::optional<Evidence> obstruction_generation(const Cdga& c, int k) {
    require_nilpotent_model(c);
    return generation_rule(ring_for(c, k + 1), k);
}

std::optional<Evidence> obstruction_resonance(const Cdga& c, int s, const SearchOptions& options) {
    require_nilpotent_model(c);
    if (s < 1) return std::nullopt;
    return resonance_rule(ring_for(c, std::max(s + 1, 2)), s, options);
}

std::optional<Evidence> certify_prop_art(const Cdga& c, int k, const Decomposition& dec) {
    require_nilpotent_model(c);
    validate_decomposition(c, dec);
    if (k < 0) throw PreconditionError("k must be non-negative");
    const auto& alg = c.algebra();
    const int top = static_cast<int>(alg->size());
    std::vector<bool> in_n(alg->size(), false);
    for (auto g : dec.complement) in_n[g] = true;
    for (int q = 2; q <= std::min(k + 1, top); ++q) {
        const auto& basis = alg->basis(q);
        std::vector<Index> cols;
        for (Index j = 0; j < basis.size(); ++j)
            if (std::any_of(basis[j].factors.begin(), basis[j].factors.end(), [&](auto g) { return in_n[g]; }))
                cols.push_back(j);
        const auto& dq = c.differential_matrix(q);
        SparseMatrix restricted(dq.rows(), cols.size());
        for (Index j = 0; j < cols.size(); ++j) restricted.set_column(j, dq.column(cols[j]));
        EchelonForm exact;
        const auto& prev = c.differential_matrix(q - 1);
        for (Index j = 0; j < prev.cols(); ++j)
            if (!prev.column(j).empty()) exact.insert(prev.column(j));
        for (const auto& v : kernel(restricted)) {
            SparseVector full;
            for (const auto& e : v.entries()) full.push_back(cols[e.index], e.value);
            if (!exact.contains(full)) return std::nullopt;
        }
    }
    return Evidence{"prop-art-certificate", k, true,
                    "N = <" + join_names(*alg, dec.complement) + ">: closed elements of the ideal of N are exact up to degree " +
                        std::to_string(k + 1)};
}

Evidence decide_twostep(const Cdga& c, int k) {
    require_nilpotent_model(c);
    if (!is_two_step(c)) throw NotTwoStep("model is not 2-step nilpotent");
    if (k < 0) throw PreconditionError("k must be non-negative");
    return twostep_rule(ring_for(c, k + 1), k);
}

Evidence full_formality(const Cdga& c) {
    require_nilpotent_model(c);
    if (c.is_zero_differential()) return {"rationally-abelian", std::nullopt, true, "d = 0"};
    return {"rationally-abelian", std::nullopt, false, "d != 0: not rationally abelian"};
}

std::optional<Evidence> infer_prop_k2(const FormalityReport& report, const RingPresentation& r, int k) {
    if (k < 0 || k > report.k_max || report.verdicts[k] != Verdict::CertifiedKFormal) return std::nullopt;
    const auto top = r.algebra()->top_degree();
    if (!top) return std::nullopt;
    for (int q = k + 2; q <= *top; ++q)
        if (r.source().betti(q) != 0) return std::nullopt;
    return Evidence{"prop-k+2", std::nullopt, true,
                    std::to_string(k) + "-formal with H^{>=" + std::to_string(k + 2) + "} = 0"};
}

// ---------------------------------------------------------------------------
// Targets and maps

TargetAlgebra TargetAlgebra::of(const Cdga& c) {
    TargetAlgebra t;
    t.cdga_ = std::make_shared<const Cdga>(c);
    return t;
}

TargetAlgebra TargetAlgebra::of(const RingPresentation& r) {
    TargetAlgebra t;
    t.ring_ = std::make_shared<const RingPresentation>(r);
    return t;
}

std::size_t TargetAlgebra::dimension(int q) const {
    return ring_ ? ring_->dimension(q) : cdga_->algebra()->basis(q).size();
}

SparseVector TargetAlgebra::product(int p, const SparseVector& a, int q, const SparseVector& b) const {
    if (ring_) return ring_->product(p, a, q, b);
    const auto& alg = cdga_->algebra();
    return sparse_coordinates(wedge(from_coordinates(alg, p, a), from_coordinates(alg, q, b)), p + q);
}

SparseVector TargetAlgebra::differential(int q, const SparseVector& a) const {
    if (ring_) return {};
    return cdga_->differential_matrix(q).apply(a);
}

std::size_t TargetAlgebra::cohomology_dimension(int q) const {
    return ring_ ? ring_->dimension(q) : cdga_->betti(q);
}

SparseVector TargetAlgebra::classify(int q, const SparseVector& cocycle) const {
    if (ring_) return cocycle;
    return cdga_->cohomology(q).reduce_coordinates(cocycle);
}

SparseVector TargetAlgebra::representative(int q, Index i) const {
    if (ring_) return SparseVector::unit(i);
    return sparse_coordinates(cdga_->cohomology(q).representatives().at(i), q);
}

std::optional<SparseVector> TargetAlgebra::preimage(int q, const SparseVector& b) const {
    if (ring_) return b.empty() ? std::optional<SparseVector>(SparseVector{}) : std::nullopt;
    if (b.empty()) return SparseVector{};
    if (q < 1) return std::nullopt;
    return solve(cdga_->differential_matrix(q - 1), b);
}

std::string TargetAlgebra::to_string(int q, const SparseVector& a) const {
    if (!ring_) return from_coordinates(cdga_->algebra(), q, a).to_string();
    if (a.empty()) return "0";
    const auto& labels = ring_->labels(q);
    std::string s;
    for (const auto& e : a.entries()) {
        const bool negative = sgn(e.value) < 0;
        const Rational mag = abs(e.value);
        std::string term = "[" + labels.at(e.index) + "]";
        if (mag != 1) term = nilform::to_string(mag) + "*" + term;
        if (s.empty()) s = negative ? "-" + term : term;
        else s += (negative ? " - " : " + ") + term;
    }
    return s;
}

SparseVector map_element(const ModelMap& phi, const TargetAlgebra& target, const Multivector& v) {
    SparseVector out;
    const auto& alg = *phi.stage.algebra();
    for (const auto& [m, c] : v.terms()) {
        SparseVector acc = SparseVector::unit(0);
        int deg = 0;
        for (auto g : m.factors) {
            acc = target.product(deg, acc, alg.degree(g), phi.images.at(g));
            deg += alg.degree(g);
            if (acc.empty()) break;
        }
        if (!acc.empty()) out.axpy(c, acc);
    }
    return out;
}

SparseMatrix induced_cohomology_map(const ModelMap& phi, const TargetAlgebra& target, int q) {
    const auto& h = phi.stage.cohomology(q);
    SparseMatrix m(target.cohomology_dimension(q), h.dimension());
    for (Index i = 0; i < h.dimension(); ++i)
        m.set_column(i, target.classify(q, map_element(phi, target, h.representatives()[i])));
    return m;
}

bool is_dga_map(const ModelMap& phi, const TargetAlgebra& target) {
    const auto& alg = *phi.stage.algebra();
    if (phi.images.size() != alg.size()) return false;
    for (std::size_t g = 0; g < alg.size(); ++g)
        if (!(target.differential(alg.degree(g), phi.images[g]) == map_element(phi, target, phi.stage.d(g))))
            return false;
    return true;
}

bool is_k_model_map(const ModelMap& phi, const TargetAlgebra& target, int k) {
    for (int q = 0; q <= k + 1; ++q) {
        const auto m = induced_cohomology_map(phi, target, q);
        const auto rk = rank(m);
        if (rk != m.cols()) return false;
        if (q <= k && rk != m.rows()) return false;
    }
    return true;
}

namespace {

std::string fresh_name(const Algebra& alg, std::set<std::string>& taken, std::string name) {
    while (alg.find(name) || taken.count(name)) name += '\'';
    taken.insert(name);
    return name;
}

ModelMap adjoin(const ModelMap& phi, const std::vector<std::pair<GeneratorSpec, Multivector>>& gens,
                std::vector<SparseVector> images) {
    ModelMap out{hirsch_extend(phi.stage, gens), phi.images};
    for (auto& v : images) out.images.push_back(std::move(v));
    return out;
}

}  // namespace

ExtensionResult extend_minimal_model(const ModelMap& phi, const TargetAlgebra& target, int k, std::size_t stage_cap,
                                     const std::string& prefix, const std::vector<std::string>& names_for_first_stage) {
    if (k < 0) throw PreconditionError("k must be non-negative");
    if (!is_dga_map(phi, target)) throw PreconditionError("stage map does not commute with the differentials");
    if (!is_k_model_map(phi, target, k))
        throw PreconditionError("stage map must induce isomorphisms up to degree " + std::to_string(k) +
                                " and a monomorphism in degree " + std::to_string(k + 1));
    const int deg = k + 1;
    ExtensionResult result{phi, {}, {}, false};
    ModelMap& cur = result.model;
    std::set<std::string> taken;

    // stage 0: cokernel of H^{k+1}(phi), closed generators
    {
        EchelonForm image;
        const auto h = induced_cohomology_map(cur, target, deg);
        for (Index j = 0; j < h.cols(); ++j) image.insert(h.column(j));
        const auto pivots = image.pivots();
        const std::set<Index> pivot_set(pivots.begin(), pivots.end());
        std::vector<std::pair<GeneratorSpec, Multivector>> gens;
        std::vector<SparseVector> images;
        std::size_t j = 0;
        for (Index cls = 0; cls < target.cohomology_dimension(deg); ++cls) {
            if (pivot_set.count(cls)) continue;
            std::string name = j < names_for_first_stage.size() ? names_for_first_stage[j]
                                                                : prefix + "0_" + std::to_string(j);
            gens.push_back({{fresh_name(*cur.stage.algebra(), taken, name), deg, 0}, Multivector(cur.stage.algebra())});
            images.push_back(target.representative(deg, cls));
            ++j;
        }
        cur = adjoin(cur, gens, std::move(images));
        result.stages.push_back(cur);
        result.stage_dimensions.push_back(gens.size());
    }

    for (std::size_t stage = 1;; ++stage) {
        const auto h = induced_cohomology_map(cur, target, deg + 1);
        const auto ker = kernel(h);
        if (ker.empty()) break;
        if (stage > stage_cap) {
            result.truncated = true;
            break;
        }
        const auto& reps = cur.stage.cohomology(deg + 1).representatives();
        std::vector<std::pair<GeneratorSpec, Multivector>> gens;
        std::vector<SparseVector> images;
        for (std::size_t j = 0; j < ker.size(); ++j) {
            Multivector b(cur.stage.algebra());
            for (const auto& e : ker[j].entries()) b += e.value * reps[e.index];
            auto a = target.preimage(deg + 1, map_element(cur, target, b));
            if (!a) throw std::logic_error("class in the kernel of H(phi) has no preimage");
            std::string name = prefix + std::to_string(stage) + "_" + std::to_string(j);
            gens.push_back({{fresh_name(*cur.stage.algebra(), taken, name), deg, static_cast<int>(stage)}, b});
            images.push_back(std::move(*a));
        }
        cur = adjoin(cur, gens, std::move(images));
        result.stages.push_back(cur);
        result.stage_dimensions.push_back(gens.size());
    }
    return result;
}

BigradedTower bigraded_tower(const RingPresentation& r, std::size_t stage_cap) {
    if (!r.degree_available(2)) throw PreconditionError("bigraded tower needs a ring cutoff of at least 2");
    const auto target = TargetAlgebra::of(r);
    ModelMap ground{Cdga::free(Algebra::create({})), {}};
    auto ext = extend_minimal_model(ground, target, 0, stage_cap, "z", r.labels(1));
    BigradedTower tower;
    tower.stages = std::move(ext.stages);
    tower.stage_dimensions = ext.stage_dimensions;
    std::size_t total = 0;
    for (auto d : tower.stage_dimensions) tower.cumulative_dimensions.push_back(total += d);
    tower.stabilized = !ext.truncated;
    return tower;
}

// ---------------------------------------------------------------------------
// Morphism solver

std::string to_string(MapStatus s) {
    switch (s) {
        case MapStatus::Solution: return "Solution";
        case MapStatus::Unsatisfiable: return "Unsatisfiable";
        case MapStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

ImageTemplate fixed_image(const Multivector& value) {
    ImageTemplate t;
    if (!value.is_zero()) t.fixed = sparse_coordinates(value, *value.degree());
    return t;
}

ImageTemplate affine_image(const Multivector& value, const std::vector<std::string>& free_generators) {
    ImageTemplate t = fixed_image(value);
    const auto& alg = value.algebra();
    for (const auto& name : free_generators) {
        const auto g = Multivector::generator(alg, name);
        t.free.push_back(sparse_coordinates(g, *g.degree()));
    }
    return t;
}

namespace {

using SymbolicVector = std::map<Index, Polynomial>;

Polynomial power(const Polynomial& p, std::uint32_t e) {
    Polynomial r = Polynomial::constant(p.variables(), 1);
    for (std::uint32_t i = 0; i < e; ++i) r = r * p;
    return r;
}

Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& expr) {
    Polynomial out(p.variables());
    std::map<std::uint32_t, Polynomial> powers;
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) {
            out.add_term(e, c);
            continue;
        }
        auto it = powers.find(e[var]);
        if (it == powers.end()) it = powers.emplace(e[var], power(expr, e[var])).first;
        Exponent rest = e;
        rest[var] = 0;
        out += it->second.times_term(rest, c);
    }
    return out;
}

class Symbolic {
public:
    Symbolic(const TargetAlgebra& target, std::size_t variables) : target_(target), variables_(variables) {}

    SymbolicVector constant(const SparseVector& v) const {
        SymbolicVector out;
        for (const auto& e : v.entries()) out.emplace(e.index, Polynomial::constant(variables_, e.value));
        return out;
    }

    static void add(SymbolicVector& acc, Index i, const Polynomial& p) {
        auto [it, inserted] = acc.try_emplace(i, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) acc.erase(it);
        }
    }

    SymbolicVector product(int p, const SymbolicVector& a, int q, const SymbolicVector& b) {
        SymbolicVector out;
        for (const auto& [i, pa] : a)
            for (const auto& [j, pb] : b) {
                const auto& prod = basis_product(p, i, q, j);
                if (prod.empty()) continue;
                const Polynomial coeff = pa * pb;
                for (const auto& e : prod.entries()) add(out, e.index, e.value * coeff);
            }
        return out;
    }

    SymbolicVector differential(int q, const SymbolicVector& a) const {
        SymbolicVector out;
        for (const auto& [i, p] : a) {
            const auto image = target_.differential(q, SparseVector::unit(i));
            for (const auto& e : image.entries()) add(out, e.index, e.value * p);
        }
        return out;
    }

private:
    const SparseVector& basis_product(int p, Index i, int q, Index j) {
        const auto key = std::make_tuple(p, i, q, j);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, target_.product(p, SparseVector::unit(i), q, SparseVector::unit(j))).first;
        return it->second;
    }

    const TargetAlgebra& target_;
    std::size_t variables_;
    std::map<std::tuple<int, Index, int, Index>, SparseVector> cache_;
};

/// Polynomial system with pending substitutions u_i := expression.
struct System {
    std::size_t unknowns = 0;  // variables 0..unknowns-1; one extra slot for Rabinowitsch
    std::vector<Polynomial> equations;
    std::vector<Polynomial> nonzero;
    std::vector<std::optional<Polynomial>> assigned;
    std::vector<std::string> names;

    enum class State { Open, Contradiction };
    std::string reason;

    void substitute_everywhere(std::size_t var, const Polynomial& expr) {
        for (auto& e : equations) e = substitute(e, var, expr);
        for (auto& c : nonzero) c = substitute(c, var, expr);
        for (auto& a : assigned)
            if (a) a = substitute(*a, var, expr);
        assigned[var] = expr;
        std::erase_if(equations, [](const Polynomial& p) { return p.is_zero(); });
    }

    State check_conditions() {
        for (const auto& c : nonzero)
            if (c.is_zero()) {
                reason = "a coefficient required to be nonzero is forced to vanish";
                return State::Contradiction;
            }
        std::erase_if(nonzero, [](const Polynomial& p) { return p.is_constant(); });
        return State::Open;
    }

    /// Solves linear equations until none are left.
    State eliminate_linear() {
        for (;;) {
            if (check_conditions() == State::Contradiction) return State::Contradiction;
            auto it = std::find_if(equations.begin(), equations.end(),
                                   [](const Polynomial& p) { return p.total_degree() <= 1; });
            if (it == equations.end()) return State::Open;
            Polynomial eq = *it;
            equations.erase(it);
            if (eq.is_constant()) {
                reason = "linear elimination derives 1 = 0";
                return State::Contradiction;
            }
            // pivot on the highest-index variable for reproducibility
            const auto support = eq.support();
            const std::size_t var = support.back();
            Exponent unit(eq.variables(), 0);
            unit[var] = 1;
            const Rational a = eq.terms().at(unit);
            Polynomial rest = eq;
            rest.add_term(unit, -a);
            substitute_everywhere(var, Rational(-1) / a * rest);
        }
    }

    std::set<std::size_t> open_variables() const {
        std::set<std::size_t> vars;
        for (const auto& e : equations)
            for (auto v : e.support()) vars.insert(v);
        return vars;
    }
};

std::vector<Rational> small_values() { return {0, 1, -1, 2, -2, 3, -3, Rational(1, 2), Rational(-1, 2)}; }

bool infeasible_by_groebner(const System& s, std::size_t max_pairs, bool* complete) {
    std::vector<Polynomial> gens = s.equations;
    if (!s.nonzero.empty()) {
        const std::size_t t = s.unknowns;  // Rabinowitsch variable
        Polynomial prod = Polynomial::variable(s.unknowns + 1, t);
        for (const auto& c : s.nonzero) prod = prod * c;
        gens.push_back(prod - Polynomial::constant(s.unknowns + 1, 1));
    }
    const auto gb = groebner_basis(std::move(gens), max_pairs);
    *complete = gb.complete;
    return gb.complete && is_unit_ideal(gb.basis);
}

/// Depth-first search for a rational point, pruned by Groebner infeasibility.
bool search_point(System& s, std::size_t max_pairs, std::size_t& budget) {
    if (s.eliminate_linear() == System::State::Contradiction) return false;
    if (s.equations.empty()) {
        // choose free values so the side conditions hold
        std::set<std::size_t> vars;
        for (const auto& c : s.nonzero)
            for (auto v : c.support()) vars.insert(v);
        if (vars.empty()) return true;
        const std::vector<std::size_t> order(vars.begin(), vars.end());
        const auto samples = sample_points(order.size(), 512, 64, 0);
        for (const auto& p : samples) {
            bool ok = true;
            for (const auto& c : s.nonzero) {
                Polynomial x = c;
                for (std::size_t i = 0; i < order.size(); ++i) x = x.substitute(order[i], p[i]);
                if (x.is_zero()) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (std::size_t i = 0; i < order.size(); ++i)
                s.substitute_everywhere(order[i], Polynomial::constant(s.unknowns + 1, p[i]));
            s.nonzero.clear();
            return true;
        }
        return false;
    }
    bool complete = true;
    if (infeasible_by_groebner(s, max_pairs, &complete)) return false;
    const std::size_t var = *s.open_variables().begin();
    for (const auto& value : small_values()) {
        if (budget == 0) return false;
        --budget;
        System branch = s;
        branch.substitute_everywhere(var, Polynomial::constant(s.unknowns + 1, value));
        if (search_point(branch, max_pairs, budget)) {
            s = std::move(branch);
            return true;
        }
    }
    return false;
}

}  // namespace

MapSolveResult dga_map_solve(const Cdga& source, const TargetAlgebra& target, const MapConstraints& constraints,
                             const SolverOptions& options) {
    const auto& alg = *source.algebra();
    for (const auto& [name, t] : constraints)
        if (!alg.find(name)) throw PreconditionError("constraint for unknown source generator '" + name + "'");

    // unknowns: one per free direction of each image
    struct Slot {
        ImageTemplate tmpl;
        std::size_t first_unknown;
    };
    std::vector<Slot> slots;
    std::vector<std::string> names;
    for (std::size_t g = 0; g < alg.size(); ++g) {
        const auto& spec = alg.generator(g);
        ImageTemplate t;
        if (auto it = constraints.find(spec.name); it != constraints.end()) {
            t = it->second;
        } else {
            for (Index i = 0; i < target.dimension(spec.upper_degree); ++i) t.free.push_back(SparseVector::unit(i));
        }
        slots.push_back({t, names.size()});
        for (const auto& f : t.free) names.push_back(spec.name + "[" + target.to_string(spec.upper_degree, f) + "]");
    }
    const std::size_t n = names.size();
    const std::size_t vars = n + 1;

    Symbolic sym(target, vars);
    std::vector<SymbolicVector> images;
    for (std::size_t g = 0; g < alg.size(); ++g) {
        SymbolicVector img = sym.constant(slots[g].tmpl.fixed);
        for (std::size_t j = 0; j < slots[g].tmpl.free.size(); ++j) {
            const auto u = Polynomial::variable(vars, slots[g].first_unknown + j);
            for (const auto& e : slots[g].tmpl.free[j].entries()) Symbolic::add(img, e.index, e.value * u);
        }
        images.push_back(std::move(img));
    }

    System system;
    system.unknowns = n;
    system.assigned.resize(n);
    system.names = names;
    for (std::size_t g = 0; g < alg.size(); ++g) {
        const int deg = alg.degree(g);
        SymbolicVector lhs = sym.differential(deg, images[g]);
        for (const auto& [m, c] : source.d(g).terms()) {
            SymbolicVector acc = sym.constant(SparseVector::unit(0));
            int p = 0;
            for (auto f : m.factors) {
                acc = sym.product(p, acc, alg.degree(f), images[f]);
                p += alg.degree(f);
            }
            for (const auto& [i, poly] : acc) Symbolic::add(lhs, i, Rational(-c) * poly);
        }
        for (auto& [i, poly] : lhs) system.equations.push_back(std::move(poly));
    }
    for (std::size_t g = 0; g < alg.size(); ++g)
        for (auto j : slots[g].tmpl.nonzero) system.nonzero.push_back(Polynomial::variable(vars, slots[g].first_unknown + j));

    MapSolveResult result;
    result.unknowns = n;
    auto finish_unsat = [&](std::string why) {
        result.status = MapStatus::Unsatisfiable;
        result.certificate = std::move(why);
        return result;
    };

    if (system.eliminate_linear() == System::State::Contradiction) return finish_unsat(system.reason);
    const auto open = system.open_variables();
    if (open.size() > options.max_unknowns) {
        result.status = MapStatus::Inconclusive;
        result.bound_exceeded = true;
        result.certificate = std::to_string(open.size()) + " unknowns remain in nonlinear equations (bound " +
                             std::to_string(options.max_unknowns) + ")";
        for (const auto& e : system.equations) result.residual.push_back(e.to_string(names) + " = 0");
        return result;
    }
    if (!system.equations.empty()) {
        bool complete = true;
        if (infeasible_by_groebner(system, options.max_pairs, &complete))
            return finish_unsat("Groebner basis of the equations and nonvanishing conditions is {1}");
        if (!complete) {
            result.status = MapStatus::Inconclusive;
            result.bound_exceeded = true;
            result.certificate = "Groebner basis budget exhausted";
            for (const auto& e : system.equations) result.residual.push_back(e.to_string(names) + " = 0");
            return result;
        }
    }
    std::size_t budget = 4096;
    System solved = system;
    if (!search_point(solved, options.max_pairs, budget)) {
        if (solved.eliminate_linear() == System::State::Contradiction && system.equations.empty())
            return finish_unsat(solved.reason);
        result.status = MapStatus::Inconclusive;
        result.certificate = "system is consistent over the algebraic closure but no rational solution was found";
        for (const auto& e : system.equations) result.residual.push_back(e.to_string(names) + " = 0");
        return result;
    }

    std::vector<Rational> values(n, 0);
    const std::vector<Rational> zeros(vars, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (solved.assigned[i]) values[i] = solved.assigned[i]->evaluate(zeros);
    ModelMap phi{source, {}};
    for (std::size_t g = 0; g < alg.size(); ++g) {
        SparseVector img = slots[g].tmpl.fixed;
        for (std::size_t j = 0; j < slots[g].tmpl.free.size(); ++j)
            img.axpy(values[slots[g].first_unknown + j], slots[g].tmpl.free[j]);
        phi.images.push_back(std::move(img));
    }
    if (!is_dga_map(phi, target)) throw std::logic_error("solver produced a map that is not a DGA map");
    for (std::size_t g = 0; g < alg.size(); ++g)
        for (auto j : slots[g].tmpl.nonzero)
            if (nilform::is_zero(values[slots[g].first_unknown + j]))
                throw std::logic_error("solver violated a nonvanishing condition");
    result.status = MapStatus::Solution;
    result.map = std::move(phi);
    return result;
}

RuleOutcome morphism_solver_rule(const Cdga& c, const RingPresentation& r, const SolverOptions& options) {
    require_nilpotent_model(c);
    RuleOutcome out;
    const auto& alg = c.algebra();
    std::size_t closed_generators = 0;
    for (std::size_t g = 0; g < alg->size(); ++g)
        if (c.d(g).is_zero()) ++closed_generators;
    if (closed_generators != kernel(c.differential_matrix(1)).size()) {
        out.note = "morphism solver skipped: ker d is not spanned by generators";
        return out;
    }
    if (!r.degree_available(2)) {
        out.note = "morphism solver skipped: ring cutoff below 2";
        return out;
    }
    MapConstraints constraints;
    for (std::size_t g = 0; g < alg->size(); ++g)
        if (c.d(g).is_zero()) constraints[alg->generator(g).name] = {r.classify(Multivector::generator(alg, g)), {}, {}};
    const auto result = dga_map_solve(c, TargetAlgebra::of(r), constraints, options);
    switch (result.status) {
        case MapStatus::Unsatisfiable:
            out.evidence = Evidence{"morphism-solver", 1, false,
                                    "no DGA map to (H^*, 0) that is the identity on closed generators: " +
                                        result.certificate};
            break;
        case MapStatus::Solution: {
            const auto gen = generated_in_degree_one_upto(r, r.max_degree());
            const int k = gen.generated ? r.max_degree() - 1 : *gen.failing_degree - 2;
            if (k >= 1)
                out.evidence = Evidence{"morphism-solver", k, true,
                                        "DGA map to (H^*, 0) inducing the identity on H^{<=" + std::to_string(k + 1) +
                                            "}"};
            else
                out.note = "morphism solver found a map, but H^2 is not generated by H^1";
            break;
        }
        case MapStatus::Inconclusive:
            out.bound_exceeded = result.bound_exceeded;
            out.note = "morphism solver inconclusive: " + result.certificate;
            break;
    }
    return out;
}

FormalityReport formality_report(const Cdga& c, int k_max, const FormalityOptions& options) {
    if (k_max < 0) throw PreconditionError("k_max must be non-negative");
    require_nilpotent_model(c);
    FormalityReport report(k_max);
    const auto ring = ring_for(c, std::max(k_max + 1, 2));
    std::vector<Evidence> found{full_formality(c)};

    if (!c.is_zero_differential()) {
        if (is_two_step(c)) {
            for (int k = 0; k <= k_max; ++k) found.push_back(twostep_rule(ring, k));
        } else {
            const auto dec = options.complement ? decomposition_from_names(c, *options.complement)
                                                : default_decomposition(c);
            for (int k = k_max; k >= 0; --k)
                if (auto e = certify_prop_art(c, k, dec)) {
                    found.push_back(*e);
                    break;
                }
            if (auto e = generation_rule(ring, k_max)) found.push_back(*e);
            if (auto e = resonance_rule(ring, k_max, options.search)) found.push_back(*e);
            auto outcome = morphism_solver_rule(c, ring, options.solver);
            if (outcome.evidence) found.push_back(*outcome.evidence);
            if (!outcome.note.empty()) report.notes.push_back(outcome.note);
            report.bound_exceeded = report.bound_exceeded || outcome.bound_exceeded;
        }
    }

    std::stable_sort(found.begin(), found.end(), [](const Evidence& a, const Evidence& b) { return a.rule < b.rule; });
    for (const auto& e : found) report.apply(e);
    if (auto best = report.best_formal(); best && report.formal != true)
        if (auto e = infer_prop_k2(report, ring, *best)) {
            report.apply(*e);
            std::stable_sort(report.evidence.begin(), report.evidence.end(),
                             [](const Evidence& a, const Evidence& b) { return a.rule < b.rule; });
        }
    return report;
}

}  // namespace nilform
