#include "nilform/rational.hpp"

#include "nilform/errors.hpp"

#include <cctype>

namespace nilform {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);

    if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_integer_literal(den)))
        throw ParseError("malformed rational '" + std::string(text) + "'");

    Rational value;
    value.get_num() = parse_integer(num);
    if (slash == std::string_view::npos) {
        value.get_den() = 1;
    } else {
        if (den.front() == '-') throw ParseError("negative denominator in '" + std::string(text) + "'");
        value.get_den() = parse_integer(den);
        if (value.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    value.canonicalize();
    return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

}  // namespace nilform
