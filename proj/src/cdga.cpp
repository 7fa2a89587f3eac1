#include "nilform/cdga.hpp"

#include "nilform/errors.hpp"
#include "nilform/kernels.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>

namespace nilform {

CohomologyBasis::CohomologyBasis(AlgebraPtr algebra, int degree, Subquotient quotient)
    : algebra_(std::move(algebra)), degree_(degree), quotient_(std::move(quotient)) {
    representatives_.reserve(quotient_.dimension());
    for (const auto& r : quotient_.representatives()) representatives_.push_back(from_coordinates(algebra_, degree_, r));
}

SparseVector CohomologyBasis::reduce_coordinates(const SparseVector& cocycle) const {
    auto cls = quotient_.classify(cocycle);
    if (!cls) throw NotACocycle("element of degree " + std::to_string(degree_) + " is not a cocycle");
    return std::move(*cls);
}

std::vector<Rational> CohomologyBasis::reduce(const Multivector& cocycle) const {
    if (!cocycle.is_zero() && cocycle.degree() != degree_)
        throw InhomogeneousError("reduce: expected an element of degree " + std::to_string(degree_));
    return reduce_coordinates(sparse_coordinates(cocycle, degree_)).to_dense(dimension());
}

struct Cdga::Cache {
    template <typename T>
    struct Slot {
        std::once_flag once;
        std::unique_ptr<const T> value;
    };

    std::mutex mutex;
    std::map<int, std::shared_ptr<Slot<SparseMatrix>>> matrices;
    std::map<int, std::shared_ptr<Slot<CohomologyBasis>>> cohomology;

    template <typename T>
    std::shared_ptr<Slot<T>> slot(std::map<int, std::shared_ptr<Slot<T>>>& table, int q) {
        std::lock_guard lock(mutex);
        auto& s = table[q];
        if (!s) s = std::make_shared<Slot<T>>();
        return s;
    }
};

Cdga::Cdga(AlgebraPtr algebra, std::vector<Multivector> differential, Metadata metadata, bool minimal)
    : algebra_(std::move(algebra)),
      differential_(std::move(differential)),
      metadata_(std::move(metadata)),
      minimal_(minimal),
      cache_(std::make_shared<Cache>()) {}

Cdga Cdga::create(AlgebraPtr algebra, std::vector<Multivector> differential, Metadata metadata) {
    if (!algebra) throw std::invalid_argument("Cdga::create: null algebra");
    if (differential.size() != algebra->size())
        throw PreconditionError("differential must be given on every generator");
    bool minimal = true;
    for (std::size_t i = 0; i < differential.size(); ++i) {
        const auto& dg = differential[i];
        const auto& name = algebra->generator(i).name;
        if (!dg.algebra()->same_generators(*algebra))
            throw AlgebraMismatch("differential of " + name + " lives in another algebra");
        if (dg.is_zero()) continue;
        const auto deg = dg.degree();
        if (!deg || *deg != algebra->degree(i) + 1)
            throw DegreeError("d(" + name + ") = " + dg.to_string() + " does not have degree " +
                              std::to_string(algebra->degree(i) + 1));
        if (!dg.is_decomposable()) minimal = false;
    }
    // rebind every value to the canonical algebra pointer
    for (auto& dg : differential) {
        Multivector rebound(algebra);
        rebound += dg;
        dg = std::move(rebound);
    }
    Cdga c(algebra, std::move(differential), std::move(metadata), minimal);
    for (std::size_t i = 0; i < c.differential_.size(); ++i) {
        auto dd = c.differential(c.differential_[i]);
        if (!dd.is_zero()) throw NotADifferential(algebra->generator(i).name, dd.to_string());
    }
    return c;
}

Cdga Cdga::free(AlgebraPtr algebra, Metadata metadata) {
    std::vector<Multivector> zero(algebra->size(), Multivector(algebra));
    return create(algebra, std::move(zero), std::move(metadata));
}

Cdga Cdga::from_strings(std::vector<GeneratorSpec> generators,
                        const std::vector<std::pair<std::string, std::string>>& differential, Metadata metadata) {
    auto algebra = Algebra::create(std::move(generators));
    std::vector<Multivector> diff(algebra->size(), Multivector(algebra));
    std::set<std::string> assigned;
    for (const auto& [name, expr] : differential) {
        auto idx = algebra->find(name);
        if (!idx) throw ParseError("differential given for unknown generator '" + name + "'");
        if (!assigned.insert(name).second) throw ParseError("differential of '" + name + "' given twice");
        diff[*idx] = parse_multivector(algebra, expr);
    }
    return create(algebra, std::move(diff), std::move(metadata));
}

Cdga Cdga::with_metadata(Metadata metadata) const {
    Cdga copy = *this;
    copy.metadata_ = std::move(metadata);
    return copy;
}

Multivector Cdga::differential(const Multivector& v) const {
    Multivector result(algebra_);
    for (const auto& [m, c] : v.terms()) {
        int prefix_degree = 0;
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            const auto g = m.factors[i];
            const auto& dg = differential_[g];
            if (!dg.is_zero()) {
                Monomial prefix{{m.factors.begin(), m.factors.begin() + static_cast<std::ptrdiff_t>(i)}};
                Monomial suffix{{m.factors.begin() + static_cast<std::ptrdiff_t>(i) + 1, m.factors.end()}};
                Multivector term = wedge(wedge(Multivector::monomial(algebra_, prefix), dg),
                                         Multivector::monomial(algebra_, suffix));
                Rational coeff = prefix_degree % 2 ? Rational(-c) : c;
                result += coeff * std::move(term);
            }
            prefix_degree += algebra_->degree(g);
        }
    }
    return result;
}

bool Cdga::is_degree_one_generated() const {
    for (std::size_t i = 0; i < algebra_->size(); ++i)
        if (algebra_->degree(i) != 1) return false;
    return true;
}

bool Cdga::is_zero_differential() const {
    return std::all_of(differential_.begin(), differential_.end(), [](const Multivector& v) { return v.is_zero(); });
}

const SparseMatrix& Cdga::differential_matrix(int q) const {
    auto slot = cache_->slot(cache_->matrices, q);
    std::call_once(slot->once, [&] {
        slot->value = std::make_unique<const SparseMatrix>(kernels::differential_matrix_parallel(*this, q));
    });
    return *slot->value;
}

const CohomologyBasis& Cdga::cohomology(int q) const {
    auto slot = cache_->slot(cache_->cohomology, q);
    std::call_once(slot->once, [&] {
        std::vector<SparseVector> boundaries;
        if (q >= 1) {
            const auto& prev = differential_matrix(q - 1);
            for (Index j = 0; j < prev.cols(); ++j)
                if (!prev.column(j).empty()) boundaries.push_back(prev.column(j));
        }
        std::vector<SparseVector> cycles;
        if (q >= 0) cycles = kernel(differential_matrix(q));
        slot->value = std::make_unique<const CohomologyBasis>(algebra_, q, Subquotient(boundaries, cycles));
    });
    return *slot->value;
}

std::optional<Multivector> Cdga::is_coboundary(const Multivector& v) const {
    if (v.is_zero()) return Multivector(algebra_);
    const auto deg = v.degree();
    if (!deg) throw InhomogeneousError("is_coboundary: inhomogeneous input");
    if (!differential(v).is_zero()) throw NotACocycle(v.to_string() + " is not a cocycle");
    if (*deg == 0) return std::nullopt;
    auto x = solve(differential_matrix(*deg - 1), sparse_coordinates(v, *deg));
    if (!x) return std::nullopt;
    return from_coordinates(algebra_, *deg - 1, *x);
}

Cdga hirsch_extend(const Cdga& c, const std::vector<std::pair<GeneratorSpec, Multivector>>& new_generators) {
    const auto& old = *c.algebra();
    std::vector<GeneratorSpec> gens = old.generators();
    for (const auto& [spec, transgression] : new_generators) {
        if (!transgression.algebra()->same_generators(old))
            throw AlgebraMismatch("transgression for " + spec.name + " is not in the base algebra");
        if (!transgression.is_zero() && transgression.degree() != spec.upper_degree + 1)
            throw DegreeError("transgression for " + spec.name + " must have degree " +
                              std::to_string(spec.upper_degree + 1));
        if (!c.differential(transgression).is_zero())
            throw NotACocycle("transgression " + transgression.to_string() + " for " + spec.name + " is not a cocycle");
        gens.push_back(spec);
    }
    auto algebra = Algebra::create(std::move(gens));
    std::vector<std::size_t> identity(old.size());
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<Multivector> diff;
    diff.reserve(algebra->size());
    for (const auto& dg : c.differentials()) diff.push_back(relabel(dg, algebra, identity));
    for (const auto& [spec, transgression] : new_generators) diff.push_back(relabel(transgression, algebra, identity));
    return Cdga::create(algebra, std::move(diff), c.metadata());
}

namespace {

std::vector<std::string> tensor_names(const Algebra& a, const Algebra& b) {
    std::set<std::string> used;
    for (const auto& g : a.generators()) used.insert(g.name);
    for (const auto& g : b.generators()) used.insert(g.name);
    std::vector<std::string> names;
    std::set<std::string> taken;
    for (const auto& g : a.generators()) taken.insert(g.name);
    for (const auto& g : b.generators()) {
        std::string n = g.name;
        if (taken.count(n)) {
            do n += '\'';
            while (used.count(n) || taken.count(n));
        }
        taken.insert(n);
        names.push_back(n);
    }
    return names;
}

}  // namespace

std::vector<std::size_t> left_embedding(const Cdga& a, const Cdga&) {
    std::vector<std::size_t> m(a.algebra()->size());
    std::iota(m.begin(), m.end(), 0);
    return m;
}

std::vector<std::size_t> right_embedding(const Cdga& a, const Cdga& b) {
    std::vector<std::size_t> m(b.algebra()->size());
    std::iota(m.begin(), m.end(), a.algebra()->size());
    return m;
}

Cdga tensor(const Cdga& a, const Cdga& b) {
    std::vector<GeneratorSpec> gens = a.algebra()->generators();
    const auto renamed = tensor_names(*a.algebra(), *b.algebra());
    for (std::size_t i = 0; i < renamed.size(); ++i) {
        GeneratorSpec g = b.algebra()->generator(i);
        g.name = renamed[i];
        gens.push_back(std::move(g));
    }
    auto algebra = Algebra::create(std::move(gens));
    const auto left = left_embedding(a, b);
    const auto right = right_embedding(a, b);
    std::vector<Multivector> diff;
    diff.reserve(algebra->size());
    for (const auto& dg : a.differentials()) diff.push_back(relabel(dg, algebra, left));
    for (const auto& dg : b.differentials()) diff.push_back(relabel(dg, algebra, right));
    Metadata meta = a.metadata();
    for (const auto& [k, v] : b.metadata()) meta.try_emplace(k, v);
    return Cdga::create(algebra, std::move(diff), std::move(meta));
}

}  // namespace nilform
