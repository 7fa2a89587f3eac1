#pragma once

// Example families of nilpotent models and closed-form cross-checks.

#include "nilform/cdga.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nilform::catalog {

/// Generators x1,y1,...,xn,yn,z with dz = sum x_i y_i.
Cdga heisenberg(int n);
/// heisenberg(m) tensored with free t_{2m+1},...,t_n.
Cdga heisenberg_type(int m, int n);

/// Degree-1 base generators with d = 0, then one central generator per
/// (name, form). A form may use the base and earlier central generators.
Cdga central_extension(const std::vector<std::string>& base,
                       const std::vector<std::pair<std::string, std::string>>& central);

/// x1,x2,y1,y2,z,omega1,omega2 with d(omega1) = x1y1 + x2z, d(omega2) = x2y2 + x1z.
Cdga example_initial();
/// example_initial plus alpha with d(alpha) = x1*omega1 + x2*omega2 + p,
/// p a 2-form in x1,x2,y1,y2,z.
Cdga example_contr(const std::string& p = "0");

struct PresetInfo {
    std::string name;
    std::string syntax;
    std::string description;
};

const std::vector<PresetInfo>& preset_list();

/// heisenberg:N | heisenberg_type:M,N | example_initial | example_contr[:p=EXPR]
/// | central_extension:BASE;NAME=FORM;... (BASE is a comma-separated list).
/// Throws ParseError.
Cdga parse_preset(const std::string& text);

/// The two summands of dim H^q(H_n): the quotient of wedge^q by omega, and
/// the kernel of omega on wedge^{q-1}; both by dense rank computations in
/// the exterior algebra on 2n symbols.
struct BettiSplit {
    std::size_t quotient = 0;
    std::size_t kernel = 0;
    std::size_t total() const noexcept { return quotient + kernel; }
};

BettiSplit heisenberg_betti_split(int n, int q);
std::size_t heisenberg_betti_oracle(int n, int q);

/// dim wedge^i - rank(omega: wedge^i -> wedge^{i+2}) on 2n symbols.
std::size_t lefschetz_corank(int n, int i);

struct RandomExtension {
    Cdga model;
    std::vector<std::string> forms;
    bool all_zero = true;
};

/// Seeded random 2-step central extension: 2..4 base and 1..2 central
/// generators, forms with small integer coefficients, each zero with
/// probability 1/4.
RandomExtension random_two_step_extension(std::uint64_t seed);

}  // namespace nilform::catalog
