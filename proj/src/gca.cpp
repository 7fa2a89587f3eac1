#include "nilform/gca.hpp"

#include "nilform/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace nilform {

Algebra::Algebra(std::vector<GeneratorSpec> generators) : generators_(std::move(generators)) {}

AlgebraPtr Algebra::create(std::vector<GeneratorSpec> generators) {
    std::set<std::string> seen;
    for (const auto& g : generators) {
        if (g.name.empty()) throw PreconditionError("generator names must be nonempty");
        if (g.upper_degree < 1) throw PreconditionError("generator " + g.name + " must have degree >= 1");
        if (g.lower_degree && *g.lower_degree < 0)
            throw PreconditionError("generator " + g.name + " has a negative lower degree");
        if (!seen.insert(g.name).second) throw PreconditionError("duplicate generator name " + g.name);
    }
    return AlgebraPtr(new Algebra(std::move(generators)));
}

AlgebraPtr Algebra::exterior(std::span<const std::string> names) {
    std::vector<GeneratorSpec> gens;
    gens.reserve(names.size());
    for (const auto& n : names) gens.push_back({n, 1, std::nullopt});
    return create(std::move(gens));
}

bool Algebra::all_odd() const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [](const GeneratorSpec& g) { return g.upper_degree % 2 != 0; });
}

std::optional<std::size_t> Algebra::find(std::string_view name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name) return i;
    return std::nullopt;
}

std::optional<int> Algebra::top_degree() const {
    if (!all_odd()) return std::nullopt;
    return std::accumulate(generators_.begin(), generators_.end(), 0,
                           [](int acc, const GeneratorSpec& g) { return acc + g.upper_degree; });
}

int Algebra::degree(const Monomial& m) const {
    int d = 0;
    for (auto f : m.factors) d += degree(f);
    return d;
}

namespace {

void enumerate(const Algebra& alg, std::size_t start, int remaining, std::vector<std::uint32_t>& prefix,
               std::vector<Monomial>& out) {
    if (remaining == 0) {
        out.push_back(Monomial{prefix});
        return;
    }
    for (std::size_t j = start; j < alg.size(); ++j) {
        const int deg = alg.degree(j);
        if (deg > remaining) continue;
        if (!prefix.empty() && prefix.back() == j && alg.is_odd(j)) continue;
        prefix.push_back(static_cast<std::uint32_t>(j));
        enumerate(alg, j, remaining - deg, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

const std::vector<Monomial>& Algebra::basis(int q) const {
    std::lock_guard lock(cache_mutex_);
    auto it = basis_cache_.find(q);
    if (it != basis_cache_.end()) return it->second;
    std::vector<Monomial> out;
    if (q >= 0) {
        std::vector<std::uint32_t> prefix;
        enumerate(*this, 0, q, prefix, out);
        std::sort(out.begin(), out.end());
    }
    return basis_cache_.emplace(q, std::move(out)).first->second;
}

std::optional<Index> Algebra::index_of(const Monomial& m, int q) const {
    const auto& b = basis(q);
    auto it = std::lower_bound(b.begin(), b.end(), m);
    if (it == b.end() || *it != m) return std::nullopt;
    return static_cast<Index>(it - b.begin());
}

std::string Algebra::to_string(const Monomial& m) const {
    if (m.is_unit()) return "1";
    std::string s;
    std::size_t i = 0;
    while (i < m.factors.size()) {
        std::size_t j = i;
        while (j < m.factors.size() && m.factors[j] == m.factors[i]) ++j;
        if (!s.empty()) s += '*';
        s += generators_.at(m.factors[i]).name;
        if (j - i > 1) s += '^' + std::to_string(j - i);
        i = j;
    }
    return s;
}

std::optional<std::pair<int, Monomial>> multiply(const Algebra& algebra, const Monomial& a, const Monomial& b) {
    int parity = 0;
    for (auto g : b.factors) {
        if (!algebra.is_odd(g)) continue;
        for (auto f : a.factors) {
            if (f == g) return std::nullopt;
            if (f > g && algebra.is_odd(f)) parity ^= 1;
        }
    }
    Monomial product;
    product.factors.reserve(a.factors.size() + b.factors.size());
    std::merge(a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end(),
               std::back_inserter(product.factors));
    return std::make_pair(parity ? -1 : 1, std::move(product));
}

Multivector::Multivector(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
    if (!algebra_) throw std::invalid_argument("Multivector: null algebra");
}

Multivector Multivector::scalar(AlgebraPtr algebra, const Rational& value) {
    Multivector v(std::move(algebra));
    v.add_term(Monomial{}, value);
    return v;
}

Multivector Multivector::generator(AlgebraPtr algebra, std::size_t index) {
    if (index >= algebra->size()) throw std::out_of_range("Multivector::generator: index out of range");
    return monomial(std::move(algebra), Monomial{{static_cast<std::uint32_t>(index)}});
}

Multivector Multivector::generator(AlgebraPtr algebra, std::string_view name) {
    auto idx = algebra->find(name);
    if (!idx) throw ParseError("unknown generator '" + std::string(name) + "'");
    return generator(std::move(algebra), *idx);
}

Multivector Multivector::monomial(AlgebraPtr algebra, Monomial m, const Rational& coefficient) {
    Multivector v(std::move(algebra));
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
        if (m.factors[i] >= v.algebra_->size()) throw std::out_of_range("Multivector::monomial: bad generator");
        if (i > 0 && m.factors[i - 1] > m.factors[i]) throw std::invalid_argument("Multivector::monomial: unsorted");
        if (i > 0 && m.factors[i - 1] == m.factors[i] && v.algebra_->is_odd(m.factors[i])) return v;
    }
    v.add_term(m, coefficient);
    return v;
}

std::optional<int> Multivector::degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        const int dm = algebra_->degree(m);
        if (d && *d != dm) return std::nullopt;
        d = dm;
    }
    return d;
}

bool Multivector::is_homogeneous() const { return is_zero() || degree().has_value(); }

std::map<int, Multivector> Multivector::homogeneous_parts() const {
    std::map<int, Multivector> parts;
    for (const auto& [m, c] : terms_) {
        auto [it, inserted] = parts.try_emplace(algebra_->degree(m), algebra_);
        it->second.add_term(m, c);
    }
    return parts;
}

bool Multivector::is_decomposable() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.length() >= 2; });
}

Rational Multivector::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Multivector::add_term(const Monomial& m, const Rational& coefficient) {
    if (nilform::is_zero(coefficient)) return;
    auto [it, inserted] = terms_.try_emplace(m, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (nilform::is_zero(it->second)) terms_.erase(it);
    }
}

namespace {

void require_same(const Multivector& a, const Multivector& b) {
    if (a.algebra() != b.algebra() && !a.algebra()->same_generators(*b.algebra()))
        throw AlgebraMismatch("operands belong to different algebras");
}

}  // namespace

Multivector& Multivector::operator+=(const Multivector& other) {
    require_same(*this, other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
    require_same(*this, other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Multivector& Multivector::operator*=(const Rational& factor) {
    if (nilform::is_zero(factor)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= factor;
    return *this;
}

bool Multivector::operator==(const Multivector& other) const {
    return algebra_->same_generators(*other.algebra_) && terms_ == other.terms_;
}

std::string Multivector::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << '-';
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (m.is_unit()) {
            os << nilform::to_string(mag);
        } else {
            if (mag != 1) os << nilform::to_string(mag) << '*';
            os << algebra_->to_string(m);
        }
    }
    return os.str();
}

Multivector wedge(const Multivector& a, const Multivector& b) {
    require_same(a, b);
    Multivector result(a.algebra());
    const Algebra& alg = *a.algebra();
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            auto prod = multiply(alg, ma, mb);
            if (!prod) continue;
            Rational c = ca * cb;
            if (prod->first < 0) c = -c;
            result.add_term(prod->second, c);
        }
    }
    return result;
}

Multivector power(const Multivector& a, unsigned exponent) {
    Multivector result = Multivector::scalar(a.algebra(), 1);
    for (unsigned i = 0; i < exponent; ++i) result = wedge(result, a);
    return result;
}

SparseVector sparse_coordinates(const Multivector& v, int q) {
    SparseVector coords;
    const Algebra& alg = *v.algebra();
    // terms are sorted, and so is basis(q): indices come out increasing
    for (const auto& [m, c] : v.terms()) {
        if (alg.degree(m) != q)
            throw InhomogeneousError("coordinates: term " + alg.to_string(m) + " is not of degree " + std::to_string(q));
        auto idx = alg.index_of(m, q);
        coords.push_back(*idx, c);
    }
    return coords;
}

std::vector<Rational> coordinates(const Multivector& v, int q) {
    return sparse_coordinates(v, q).to_dense(v.algebra()->basis(q).size());
}

Multivector from_coordinates(const AlgebraPtr& algebra, int q, const SparseVector& coords) {
    Multivector v(algebra);
    const auto& b = algebra->basis(q);
    for (const auto& e : coords.entries()) v.add_term(b.at(e.index), e.value);
    return v;
}

Multivector from_coordinates(const AlgebraPtr& algebra, int q, std::span<const Rational> coords) {
    if (coords.size() != algebra->basis(q).size())
        throw std::invalid_argument("from_coordinates: length does not match basis size");
    return from_coordinates(algebra, q, SparseVector::from_dense(coords));
}

Multivector relabel(const Multivector& v, const AlgebraPtr& target, std::span<const std::size_t> index_map) {
    const Algebra& src = *v.algebra();
    if (index_map.size() != src.size()) throw std::invalid_argument("relabel: index map has wrong length");
    for (std::size_t i = 0; i < src.size(); ++i)
        if (target->degree(index_map[i]) != src.degree(i))
            throw AlgebraMismatch("relabel: generator " + src.generator(i).name + " changes degree");
    Multivector result(target);
    for (const auto& [m, c] : v.terms()) {
        Multivector term = Multivector::scalar(target, c);
        for (auto f : m.factors) term = wedge(term, Multivector::generator(target, index_map[f]));
        result += term;
    }
    return result;
}

namespace {

class ExpressionParser {
public:
    ExpressionParser(const AlgebraPtr& algebra, std::string_view text) : algebra_(algebra), text_(text) {}

    Multivector parse() {
        Multivector result(algebra_);
        skip_space();
        if (at_end()) throw error("empty expression");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = next() == '-' ? -1 : 1;
                skip_space();
            } else if (!first) {
                throw error("expected '+' or '-'");
            }
            first = false;
            Multivector t = term();
            if (sign < 0) t *= Rational(-1);
            result += t;
            skip_space();
        }
        return result;
    }

private:
    Multivector term() {
        Multivector t = factor();
        skip_space();
        while (!at_end() && peek() == '*') {
            ++pos_;
            skip_space();
            t = wedge(t, factor());
            skip_space();
        }
        return t;
    }

    Multivector factor() {
        if (at_end()) throw error("unexpected end of expression");
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string num = digits();
            skip_space();
            if (!at_end() && peek() == '/') {
                ++pos_;
                skip_space();
                num += '/' + digits();
            }
            return Multivector::scalar(algebra_, parse_rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            std::string name;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\''))
                name += next();
            auto idx = algebra_->find(name);
            if (!idx) throw ParseError("unknown generator '" + name + "' in expression '" + std::string(text_) + "'");
            Multivector g = Multivector::generator(algebra_, *idx);
            skip_space();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_space();
                const std::string e = digits();
                return power(g, static_cast<unsigned>(std::stoul(e)));
            }
            return g;
        }
        throw error(std::string("unexpected character '") + peek() + "'");
    }

    std::string digits() {
        std::string s;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += next();
        if (s.empty()) throw error("expected digits");
        return s;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char next() { return text_[pos_++]; }
    ParseError error(const std::string& what) const {
        return ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    const AlgebraPtr& algebra_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Multivector parse_multivector(const AlgebraPtr& algebra, std::string_view text) {
    return ExpressionParser(algebra, text).parse();
}

}  // namespace nilform
