#ifndef TWISTLAB_PARSE_HPP
#define TWISTLAB_PARSE_HPP

#include <twistlab/error.hpp>
#include <twistlab/integer.hpp>
#include <twistlab/poly.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

namespace twistlab {

namespace detail {

// Spaces may separate tokens but not split a number or a term.
inline std::string strip_spaces(const std::string& text)
{
    auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '^'; };
    std::string out;
    bool gap = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            gap = !out.empty();
            continue;
        }
        if (gap && word(c) && word(out.back()))
            throw Error(ErrorCode::ParseError, "space inside a term in '" + text + "'");
        gap = false;
        out.push_back(c);
    }
    return out;
}

inline IntPolynomial parse_coefficient_list(const std::string& text)
{
    std::vector<Integer> coeffs;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        coeffs.push_back(parse_integer(text.substr(start, comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return IntPolynomial(std::move(coeffs));
}

// term := [digits] ['*'] 'x' ['^' digits] | digits
inline IntPolynomial parse_expression(const std::string& text)
{
    std::vector<Integer> coeffs;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::ParseError, why + " at position " + std::to_string(i) + " in '" + text + "'");
    };
    auto read_digits = [&]() {
        const std::size_t begin = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        return text.substr(begin, i - begin);
    };
    if (text.empty())
        fail("empty polynomial");
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            fail("expected '+' or '-'");
        }
        std::string digits = read_digits();
        Integer coef = digits.empty() ? Integer(1) : parse_integer(digits);
        std::size_t power = 0;
        if (i < text.size() && text[i] == '*') {
            if (digits.empty())
                fail("dangling '*'");
            ++i;
            if (i >= text.size() || text[i] != 'x')
                fail("expected 'x' after '*'");
        }
        if (i < text.size() && text[i] == 'x') {
            ++i;
            power = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::string exp = read_digits();
                if (exp.empty())
                    fail("missing exponent");
                if (exp.size() > 6)
                    fail("exponent too large");
                power = std::stoul(exp);
            }
        } else if (digits.empty()) {
            fail("expected a coefficient or 'x'");
        }
        if (i < text.size() && text[i] != '+' && text[i] != '-')
            fail(std::string("unexpected character '") + text[i] + "'");
        if (coeffs.size() <= power)
            coeffs.resize(power + 1);
        coeffs[power] += sign * coef;
    }
    return IntPolynomial(std::move(coeffs));
}

} // namespace detail

/// Accepts "1,0,0,0,1" (constant term first) or "x^4 + 1".
inline IntPolynomial parse_polynomial(const std::string& text)
{
    const std::string s = detail::strip_spaces(text);
    if (s.empty())
        throw Error(ErrorCode::ParseError, "empty polynomial");
    if (s.find(',') != std::string::npos)
        return detail::parse_coefficient_list(s);
    return detail::parse_expression(s);
}

} // namespace twistlab

#endif // TWISTLAB_PARSE_HPP
