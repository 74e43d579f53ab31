#pragma once

// Scalar layer: the two arithmetic modes every generic routine is written against.
//
//   Rational  exact big-integer fractions (GMP), used for identity checks.
//   BigFloat  MPFR floats with a per-run precision, used where roots or square
//             roots are irrational.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffp/errors.hpp"

namespace ffp {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

enum class ScalarMode { rational, bigfloat };

std::string_view to_string(ScalarMode mode);
ScalarMode parse_scalar_mode(std::string_view text);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr ScalarMode mode = ScalarMode::rational;
    static constexpr bool exact = true;
};

template <>
struct ScalarTraits<BigFloat> {
    static constexpr ScalarMode mode = ScalarMode::bigfloat;
    static constexpr bool exact = false;
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::mode; };

template <Scalar T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

// ---------------------------------------------------------------------------
// precision

constexpr unsigned kDefaultPrecisionBits = 256;

/// Precision requested through FFP_PRECISION_BITS, else 256.
unsigned default_precision_bits();

/// Working precision (bits) of BigFloat values created on this thread now.
unsigned current_precision_bits();

/// Sets the BigFloat working precision for its lifetime and restores the
/// previous value on destruction.
class PrecisionScope {
   public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    unsigned requested_bits() const { return requested_; }
    unsigned effective_bits() const;

   private:
    unsigned requested_;
    unsigned saved_digits10_;
};

// ---------------------------------------------------------------------------
// formatting / parsing

/// "numerator/denominator", always with an explicit denominator.
std::string format_scalar(const Rational& x);
/// Decimal string carrying every digit of the working precision.
std::string format_scalar(const BigFloat& x);

Rational parse_rational(std::string_view text);
BigFloat parse_bigfloat(std::string_view text);

template <Scalar T>
T parse_scalar(std::string_view text) {
    if constexpr (std::same_as<T, Rational>) {
        return parse_rational(text);
    } else {
        return parse_bigfloat(text);
    }
}

// ---------------------------------------------------------------------------
// conversions and elementary helpers

template <Scalar T>
T from_int(long long v) {
    if constexpr (std::same_as<T, Rational>) {
        return Rational(Integer(v));
    } else {
        return BigFloat(v);
    }
}

template <Scalar T>
T from_integer(const Integer& v) {
    return T(v);
}

template <Scalar T>
T from_rational(const Rational& q) {
    if constexpr (std::same_as<T, Rational>) {
        return q;
    } else {
        return BigFloat(q);
    }
}

template <Scalar T>
double to_double(const T& x) {
    return x.template convert_to<double>();
}

template <Scalar T>
T abs_value(const T& x) {
    return x < 0 ? T(-x) : x;
}

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const BigFloat& x) { return x == 0; }

/// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& x);

/// Square root in the scalar's arithmetic. Rational mode succeeds only on perfect
/// squares and raises ParameterError otherwise.
template <Scalar T>
T sqrt_scalar(const T& x) {
    if (x < 0) throw ParameterError("square root of a negative scalar");
    if constexpr (std::same_as<T, Rational>) {
        auto r = exact_sqrt(x);
        if (!r) throw ParameterError("irrational square root requested in rational mode: " + format_scalar(x));
        return *r;
    } else {
        return boost::multiprecision::sqrt(x);
    }
}

template <Scalar T>
T pow_int(T base, std::size_t e) {
    T result = from_int<T>(1);
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return result;
}

Integer integer_factorial(std::size_t n);

template <Scalar T>
T factorial(std::size_t n) {
    T r = from_int<T>(1);
    for (std::size_t i = 2; i <= n; ++i) r *= from_int<T>(static_cast<long long>(i));
    return r;
}

/// Falling Pochhammer (x)_k = x (x-1) ... (x-k+1).
template <Scalar T>
T falling(const T& x, std::size_t k) {
    T r = from_int<T>(1);
    for (std::size_t i = 0; i < k; ++i) r *= x - from_int<T>(static_cast<long long>(i));
    return r;
}

/// Rising factorial x (x+1) ... (x+k-1).
template <Scalar T>
T rising(const T& x, std::size_t k) {
    T r = from_int<T>(1);
    for (std::size_t i = 0; i < k; ++i) r *= x + from_int<T>(static_cast<long long>(i));
    return r;
}

template <Scalar T>
T binomial(std::size_t n, std::size_t k) {
    if (k > n) return from_int<T>(0);
    k = std::min(k, n - k);
    T r = from_int<T>(1);
    for (std::size_t i = 1; i <= k; ++i) {
        r *= from_int<T>(static_cast<long long>(n - k + i));
        r /= from_int<T>(static_cast<long long>(i));
    }
    return r;
}

template <Scalar T>
std::vector<std::string> format_all(const std::vector<T>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(format_scalar(x));
    return out;
}

}  // namespace ffp
