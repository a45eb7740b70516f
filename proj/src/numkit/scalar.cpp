#include "flowclass/numkit/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace flowclass::numkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_token(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s));
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den.is_zero()) throw UsageError("rational with zero denominator");
    return Rational(num, den);
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return abs(b);
    if (b.is_zero()) return abs(a);
    Integer n = gcd(numerator(a), numerator(b));
    Integer d = lcm(denominator(a), denominator(b));
    return make_rational(abs(n), abs(d));
}

std::string to_string(const Rational& x) { return x.str(); }

std::string to_string(const ComplexQ& z) {
    if (z.im.is_zero()) return z.re.str();
    std::string im;
    if (z.im == Rational(1))
        im = "i";
    else if (z.im == Rational(-1))
        im = "-i";
    else if (denominator(z.im) == 1)
        im = z.im.str() + "i";
    else
        im = "(" + z.im.str() + ")i";
    if (z.re.is_zero()) return im;
    if (im.front() != '-') im = "+" + im;
    return z.re.str() + im;
}

std::string to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string to_string(const ComplexD& z) {
    if (z.im == 0.0) return to_string(z.re);
    std::string s = to_string(z.re);
    s += (z.im < 0 ? "-" : "+");
    s += to_string(std::fabs(z.im)) + "i";
    return s;
}

double Scalar::approx() const {
    if (const auto* q = std::get_if<Rational>(&value)) return q->convert_to<double>();
    return std::get<double>(value);
}

Rational parse_rational(std::string_view token) {
    Scalar s = parse_scalar(token);
    if (s.mode() != ScalarMode::exact)
        throw ParseError("expected a rational literal, got '" + std::string(trim(token)) + "'");
    return std::get<Rational>(s.value);
}

Scalar parse_scalar(std::string_view token) {
    const std::string_view t = trim(token);
    const std::string shown(t);
    if (t.empty()) throw ParseError("empty scalar literal");

    if (is_integer_token(t)) {
        Scalar s{Rational(parse_integer(t))};
        s.integer_literal = true;
        return s;
    }
    if (auto slash = t.find('/'); slash != std::string_view::npos) {
        const auto num = t.substr(0, slash);
        const auto den = t.substr(slash + 1);
        if (!is_integer_token(num) || den.empty() || !is_integer_token(den) || den.front() == '-' ||
            den.front() == '+')
            throw ParseError("bad rational literal '" + shown + "'");
        const Integer d = parse_integer(den);
        if (d.is_zero()) throw ParseError("rational literal '" + shown + "' has zero denominator");
        return Scalar{make_rational(parse_integer(num), d)};
    }

    std::string_view body = t;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double v = 0.0;
    const auto* first = body.data();
    const auto* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec != std::errc() || ptr != last) throw ParseError("bad numeric literal '" + shown + "'");
    if (!std::isfinite(v)) throw ParseError("non-finite literal '" + shown + "'");
    return Scalar{v};
}

}  // namespace flowclass::numkit
