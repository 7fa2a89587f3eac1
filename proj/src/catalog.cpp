#include "nilform/catalog.hpp"

#include "nilform/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <random>
#include <set>

namespace nilform::catalog {

namespace {

std::vector<GeneratorSpec> degree_one(const std::vector<std::string>& names) {
    std::vector<GeneratorSpec> out;
    for (const auto& n : names) out.push_back({n, 1, std::nullopt});
    return out;
}

std::string heisenberg_form(int n) {
    std::string s;
    for (int i = 1; i <= n; ++i) s += (i > 1 ? " + x" : "x") + std::to_string(i) + "*y" + std::to_string(i);
    return s;
}

int parse_int(std::string_view text, const std::string& context) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("expected an integer in " + context + ", got '" + std::string(text) + "'");
    return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// Dense exterior algebra on `symbols` letters, subsets as bit masks.
std::vector<std::uint32_t> subsets(int symbols, int q) {
    std::vector<std::uint32_t> out;
    if (q < 0 || q > symbols) return out;
    for (std::uint32_t m = 0; m < (1u << symbols); ++m)
        if (std::popcount(m) == q) out.push_back(m);
    return out;
}

std::size_t dense_rank(std::vector<std::vector<Rational>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (sgn(rows[r][c]) == 0) continue;
            const Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Rank of multiplication by omega = sum e_{2i} e_{2i+1} from wedge^q to wedge^{q+2}.
std::size_t omega_rank(int n, int q) {
    const int symbols = 2 * n;
    const auto source = subsets(symbols, q);
    const auto target = subsets(symbols, q + 2);
    if (source.empty() || target.empty()) return 0;
    std::vector<std::vector<Rational>> rows(target.size(), std::vector<Rational>(source.size(), 0));
    for (std::size_t j = 0; j < source.size(); ++j)
        for (int i = 0; i < n; ++i) {
            const std::uint32_t pair = 3u << (2 * i);
            if (source[j] & pair) continue;
            // the adjacent pair e_{2i} e_{2i+1} moves into place with sign +1
            const auto row = std::lower_bound(target.begin(), target.end(), source[j] | pair) - target.begin();
            rows[static_cast<std::size_t>(row)][j] += 1;
        }
    return dense_rank(std::move(rows));
}

std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

}  // namespace

Cdga heisenberg(int n) {
    if (n < 1) throw PreconditionError("heisenberg: n must be at least 1");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) {
        names.push_back("x" + std::to_string(i));
        names.push_back("y" + std::to_string(i));
    }
    names.push_back("z");
    return Cdga::from_strings(degree_one(names), {{"z", heisenberg_form(n)}},
                              {{"preset", "heisenberg:" + std::to_string(n)}});
}

Cdga heisenberg_type(int m, int n) {
    if (m < 1 || 2 * m > n) throw PreconditionError("heisenberg_type: need 1 <= 2m <= n");
    const std::string id = "heisenberg_type:" + std::to_string(m) + "," + std::to_string(n);
    if (2 * m == n) return heisenberg(m).with_metadata({{"preset", id}});
    std::vector<std::string> names;
    for (int i = 2 * m + 1; i <= n; ++i) names.push_back("t" + std::to_string(i));
    return tensor(heisenberg(m), Cdga::free(Algebra::create(degree_one(names)))).with_metadata({{"preset", id}});
}

Cdga central_extension(const std::vector<std::string>& base,
                       const std::vector<std::pair<std::string, std::string>>& central) {
    std::vector<std::string> names = base;
    for (const auto& [name, form] : central) names.push_back(name);
    auto c = Cdga::from_strings(degree_one(names), central);
    for (const auto& [name, form] : central) {
        const auto& d = c.d(*c.algebra()->find(name));
        if (!d.is_zero() && d.degree() != 2) throw DegreeError("form for " + name + " is not of degree 2");
    }
    return c;
}

Cdga example_initial() {
    return central_extension({"x1", "x2", "y1", "y2", "z"},
                             {{"omega1", "x1*y1 + x2*z"}, {"omega2", "x2*y2 + x1*z"}})
        .with_metadata({{"preset", "example_initial"}});
}

Cdga example_contr(const std::string& p) {
    const auto base = Algebra::create(degree_one({"x1", "x2", "y1", "y2", "z"}));
    const auto pv = parse_multivector(base, p);
    if (!pv.is_zero() && pv.degree() != 2) throw DegreeError("p must be a 2-form in x1,x2,y1,y2,z");
    const std::string expr = "x1*omega1 + x2*omega2" + (pv.is_zero() ? std::string() : " + " + pv.to_string());
    return central_extension({"x1", "x2", "y1", "y2", "z"},
                             {{"omega1", "x1*y1 + x2*z"}, {"omega2", "x2*y2 + x1*z"}, {"alpha", expr}})
        .with_metadata({{"preset", "example_contr:p=" + (pv.is_zero() ? std::string("0") : pv.to_string())}});
}

const std::vector<PresetInfo>& preset_list() {
    static const std::vector<PresetInfo> list{
        {"heisenberg", "heisenberg:N", "model of the Heisenberg group H_N, dz = x1*y1 + ... + xN*yN"},
        {"heisenberg_type", "heisenberg_type:M,N", "heisenberg:M tensored with free generators t_{2M+1}..t_N"},
        {"example_initial", "example_initial", "rank-2 central extension with dw1 = x1*y1 + x2*z, dw2 = x2*y2 + x1*z"},
        {"example_contr", "example_contr[:p=EXPR]", "example_initial plus alpha, d(alpha) = x1*omega1 + x2*omega2 + p"},
        {"central_extension", "central_extension:B1,B2,...;C1=FORM;C2=FORM",
         "abelian base with central generators of prescribed 2-forms"},
    };
    return list;
}

Cdga parse_preset(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = trim(text.substr(0, colon));
    const std::string args = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    const bool has_args = colon != std::string::npos;
    try {
        if (name == "heisenberg") {
            if (!has_args) throw ParseError("heisenberg needs :N");
            return heisenberg(parse_int(trim(args), "heisenberg:N"));
        }
        if (name == "heisenberg_type") {
            const auto parts = split(args, ',');
            if (!has_args || parts.size() != 2) throw ParseError("heisenberg_type needs :M,N");
            return heisenberg_type(parse_int(trim(parts[0]), "heisenberg_type"), parse_int(trim(parts[1]), "heisenberg_type"));
        }
        if (name == "example_initial") {
            if (has_args) throw ParseError("example_initial takes no parameters");
            return example_initial();
        }
        if (name == "example_contr") {
            if (!has_args) return example_contr();
            const std::string a = trim(args);
            if (a.rfind("p=", 0) != 0) throw ParseError("example_contr expects :p=EXPR");
            return example_contr(a.substr(2));
        }
        if (name == "central_extension") {
            const auto parts = split(args, ';');
            if (!has_args || parts.empty()) throw ParseError("central_extension needs :BASE;NAME=FORM;...");
            std::vector<std::string> base;
            for (const auto& b : split(parts[0], ',')) base.push_back(trim(b));
            std::vector<std::pair<std::string, std::string>> central;
            for (std::size_t i = 1; i < parts.size(); ++i) {
                const auto eq = parts[i].find('=');
                if (eq == std::string::npos) throw ParseError("central generator '" + parts[i] + "' lacks '=FORM'");
                central.emplace_back(trim(parts[i].substr(0, eq)), parts[i].substr(eq + 1));
            }
            return central_extension(base, central).with_metadata({{"preset", text}});
        }
    } catch (const PreconditionError& e) {
        throw ParseError("preset '" + text + "': " + e.what());
    }
    throw ParseError("unknown preset '" + name + "'");
}

BettiSplit heisenberg_betti_split(int n, int q) {
    if (n < 1 || q < 0 || q > 2 * n + 1) throw PreconditionError("heisenberg_betti_oracle: need n >= 1, 0 <= q <= 2n+1");
    BettiSplit s;
    s.quotient = binomial(2 * n, q) - (q >= 2 ? omega_rank(n, q - 2) : 0);
    s.kernel = q >= 1 ? binomial(2 * n, q - 1) - omega_rank(n, q - 1) : 0;
    return s;
}

std::size_t heisenberg_betti_oracle(int n, int q) { return heisenberg_betti_split(n, q).total(); }

std::size_t lefschetz_corank(int n, int i) {
    if (n < 1 || i < 0 || i > 2 * n) throw PreconditionError("lefschetz_corank: need n >= 1, 0 <= i <= 2n");
    return binomial(2 * n, i) - omega_rank(n, i);
}

RandomExtension random_two_step_extension(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x2a7u};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> base_size(2, 4), central_size(1, 2), coeff(-2, 2), quarter(0, 3);
    const int b = base_size(rng);
    const int c = central_size(rng);
    std::vector<std::string> base;
    for (int i = 1; i <= b; ++i) base.push_back("a" + std::to_string(i));
    RandomExtension out{Cdga::free(Algebra::create({})), {}, true};
    std::vector<std::pair<std::string, std::string>> central;
    for (int k = 1; k <= c; ++k) {
        std::string form;
        if (quarter(rng) != 0) {
            for (int i = 0; i < b; ++i)
                for (int j = i + 1; j < b; ++j) {
                    const int v = coeff(rng);
                    if (v == 0) continue;
                    const std::string sign = v < 0 ? (form.empty() ? "-" : " - ") : (form.empty() ? "" : " + ");
                    form += sign + std::to_string(std::abs(v)) + "*" + base[i] + "*" + base[j];
                }
        }
        if (form.empty()) form = "0";
        else out.all_zero = false;
        out.forms.push_back(form);
        central.emplace_back("c" + std::to_string(k), form);
    }
    out.model = central_extension(base, central).with_metadata({{"seed", std::to_string(seed)}});
    return out;
}

}  // namespace nilform::catalog
