#include "ffp/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace ffp {

std::string_view to_string(ScalarMode mode) {
    return mode == ScalarMode::rational ? "rational" : "bigfloat";
}

ScalarMode parse_scalar_mode(std::string_view text) {
    if (text == "rational") return ScalarMode::rational;
    if (text == "bigfloat") return ScalarMode::bigfloat;
    throw ParameterError("unknown scalar mode '" + std::string(text) + "'");
}

namespace {

unsigned digits10_for_bits(unsigned bits) {
    // MPFR rounds digits10 back up to at least this many bits.
    return static_cast<unsigned>(std::floor(bits * 0.30102999566398120));
}

}  // namespace

unsigned default_precision_bits() {
    if (const char* env = std::getenv("FFP_PRECISION_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 32 && v <= 1 << 20) return static_cast<unsigned>(v);
    }
    return kDefaultPrecisionBits;
}

unsigned current_precision_bits() {
    BigFloat probe(0);
    return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

PrecisionScope::PrecisionScope(unsigned bits)
    : requested_(bits), saved_digits10_(BigFloat::default_precision()) {
    if (bits < 32) throw ParameterError("BigFloat precision must be at least 32 bits");
    BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_digits10_); }

unsigned PrecisionScope::effective_bits() const { return current_precision_bits(); }

std::string format_scalar(const Rational& x) {
    return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

std::string format_scalar(const BigFloat& x) {
    return x.str(0, std::ios_base::scientific);
}

namespace {

// Accepts "p/q", "-12", "3.25", "1.5e-3".
Rational parse_decimal_rational(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    Integer mantissa = 0;
    long long scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_point) --scale;
            any_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw ParameterError("malformed number '" + std::string(text) + "'");
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::string exp_text(text.substr(i));
        char* end = nullptr;
        long long e = std::strtoll(exp_text.c_str(), &end, 10);
        if (end == exp_text.c_str() || *end != '\0')
            throw ParameterError("malformed exponent in '" + std::string(text) + "'");
        scale += e;
        i = text.size();
    }
    if (i != text.size()) throw ParameterError("malformed number '" + std::string(text) + "'");
    Rational r(mantissa);
    Integer ten_pow = 1;
    for (long long k = 0; k < (scale < 0 ? -scale : scale); ++k) ten_pow *= 10;
    if (scale < 0) r /= Rational(ten_pow);
    if (scale > 0) r *= Rational(ten_pow);
    return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal_rational(text);
    Rational num = parse_decimal_rational(text.substr(0, slash));
    Rational den = parse_decimal_rational(text.substr(slash + 1));
    if (den == 0) throw ParameterError("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

BigFloat parse_bigfloat(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) return BigFloat(parse_rational(text));
    try {
        return BigFloat(std::string(text));
    } catch (const std::exception&) {
        throw ParameterError("malformed number '" + std::string(text) + "'");
    }
}

std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    Integer rn = boost::multiprecision::sqrt(num);
    Integer rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

Integer integer_factorial(std::size_t n) {
    Integer r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
    return r;
}

}  // namespace ffp
