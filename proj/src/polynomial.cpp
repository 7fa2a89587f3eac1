#include "nilform/polynomial.hpp"

#include "nilform/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace nilform {

namespace {

std::uint32_t degree_of(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Exponent quotient(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool coprime(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

}  // namespace

bool grevlex_greater(const Exponent& a, const Exponent& b) {
    const auto da = degree_of(a), db = degree_of(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

Polynomial::Polynomial(std::size_t variables) : variables_(variables) {}

Polynomial Polynomial::constant(std::size_t variables, const Rational& value) {
    Polynomial p(variables);
    p.add_term(Exponent(variables, 0), value);
    return p;
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t index) {
    Polynomial p(variables);
    Exponent e(variables, 0);
    e.at(index) = 1;
    p.add_term(e, 1);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max<int>(d, static_cast<int>(degree_of(e)));
    return d;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
    if (e.size() != variables_) throw PreconditionError("polynomial exponent has the wrong length");
    if (nilform::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (nilform::is_zero(it->second)) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (nilform::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(a.variables_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Polynomial r = *this;
    r *= Rational(1) / leading_coefficient();
    return r;
}

Polynomial Polynomial::times_term(const Exponent& m, const Rational& c) const {
    Polynomial r(variables_);
    for (const auto& [e, v] : terms_) {
        Exponent f(e.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = e[i] + m[i];
        r.terms_.emplace_hint(r.terms_.end(), std::move(f), v * c);
    }
    if (nilform::is_zero(c)) r.terms_.clear();
    return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != variables_) throw PreconditionError("evaluation point has the wrong length");
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

Polynomial Polynomial::substitute(std::size_t index, const Rational& value) const {
    Polynomial r(variables_);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::uint32_t k = 0; k < e[index]; ++k) t *= value;
        Exponent f = e;
        f[index] = 0;
        r.add_term(f, t);
    }
    return r;
}

std::vector<std::size_t> Polynomial::support() const {
    std::vector<bool> seen(variables_, false);
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) seen[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < variables_; ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += '*';
            mono += i < names.size() ? names[i] : "u" + std::to_string(i);
            if (e[i] > 1) mono += '^' + std::to_string(e[i]);
        }
        const bool negative = sgn(c) < 0;
        Rational mag = abs(c);
        std::string term;
        if (mono.empty()) term = nilform::to_string(mag);
        else if (mag == 1) term = mono;
        else term = nilform::to_string(mag) + "*" + mono;
        if (s.empty()) s = negative ? "-" + term : term;
        else s += (negative ? " - " : " + ") + term;
    }
    return s;
}

Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors) {
    Polynomial remainder(p.variables());
    Polynomial work = p;
    while (!work.is_zero()) {
        const Exponent lead = work.leading_exponent();
        const Rational coeff = work.leading_coefficient();
        bool reduced = false;
        for (const auto& g : divisors) {
            if (g.is_zero() || !divides(g.leading_exponent(), lead)) continue;
            work -= g.times_term(quotient(lead, g.leading_exponent()), coeff / g.leading_coefficient());
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.add_term(lead, coeff);
            work.add_term(lead, -coeff);
        }
    }
    return remainder;
}

namespace {

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const Exponent l = lcm(f.leading_exponent(), g.leading_exponent());
    return f.times_term(quotient(l, f.leading_exponent()), Rational(1) / f.leading_coefficient()) -
           g.times_term(quotient(l, g.leading_exponent()), Rational(1) / g.leading_coefficient());
}

std::vector<Polynomial> reduce_basis(std::vector<Polynomial> g) {
    // drop elements whose leading term is divisible by another's
    std::vector<Polynomial> minimal;
    std::sort(g.begin(), g.end(), [](const Polynomial& a, const Polynomial& b) {
        return grevlex_greater(b.leading_exponent(), a.leading_exponent());
    });
    for (const auto& p : g) {
        bool redundant = false;
        for (const auto& q : minimal)
            if (divides(q.leading_exponent(), p.leading_exponent())) redundant = true;
        if (!redundant) minimal.push_back(p.monic());
    }
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial tail = minimal[i];
        const Exponent lead = tail.leading_exponent();
        tail.add_term(lead, -tail.leading_coefficient());
        Polynomial r = normal_form(tail, others);
        r.add_term(lead, 1);
        reduced.push_back(std::move(r));
    }
    return reduced;
}

}  // namespace

GroebnerResult groebner_basis(std::vector<Polynomial> generators, std::size_t max_pairs) {
    std::vector<Polynomial> g;
    for (auto& p : generators) {
        if (p.is_zero()) continue;
        g.push_back(p.monic());
    }
    if (g.empty()) return {};
    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 1; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    std::size_t processed = 0;
    while (!pairs.empty()) {
        if (processed++ >= max_pairs) return {std::move(g), false};
        // normal selection: smallest lcm first
        auto best = pairs.begin();
        Exponent best_lcm = lcm(g[best->first].leading_exponent(), g[best->second].leading_exponent());
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
            Exponent l = lcm(g[it->first].leading_exponent(), g[it->second].leading_exponent());
            if (grevlex_greater(best_lcm, l)) {
                best = it;
                best_lcm = std::move(l);
            }
        }
        const auto [i, j] = *best;
        pairs.erase(best);
        if (coprime(g[i].leading_exponent(), g[j].leading_exponent())) continue;
        Polynomial r = normal_form(s_polynomial(g[i], g[j]), g);
        if (r.is_zero()) continue;
        g.push_back(r.monic());
        if (g.back().is_constant()) return {{Polynomial::constant(g.back().variables(), 1)}, true};
        for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
    }
    auto reduced = reduce_basis(std::move(g));
    std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
        return grevlex_greater(b.leading_exponent(), a.leading_exponent());
    });
    return {std::move(reduced), true};
}

bool is_unit_ideal(std::span<const Polynomial> basis) {
    return std::any_of(basis.begin(), basis.end(),
                       [](const Polynomial& p) { return !p.is_zero() && p.is_constant(); });
}

bool is_zero_dimensional(std::span<const Polynomial> basis) {
    if (basis.empty()) return false;
    const std::size_t n = basis.front().variables();
    if (is_unit_ideal(basis)) return true;
    std::vector<bool> pure(n, false);
    for (const auto& p : basis) {
        if (p.is_zero()) continue;
        const auto& e = p.leading_exponent();
        std::size_t nonzero = 0, var = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (e[i]) {
                ++nonzero;
                var = i;
            }
        if (nonzero == 1) pure[var] = true;
    }
    return std::all_of(pure.begin(), pure.end(), [](bool b) { return b; });
}

}  // namespace nilform
