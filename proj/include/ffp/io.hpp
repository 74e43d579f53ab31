#pragma once

// JSON forms of polynomials, moment/cumulant vectors and even entire functions.

#include <string>

#include <json.hpp>

#include "ffp/calculus.hpp"
#include "ffp/polynomial.hpp"
#include "ffp/special.hpp"

namespace ffp {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

template <Scalar T>
Json polynomial_to_json(const Polynomial<T>& p) {
    Json j;
    j["degree"] = p.degree();
    j["convention"] = "signed";
    j["coeffs"] = format_all(p.signed_coeffs());
    j["scalar_mode"] = std::string(to_string(ScalarTraits<T>::mode));
    j["precision_bits"] = is_exact_v<T> ? 0u : current_precision_bits();
    return j;
}

/// Accepts "signed" (default) or "monomial" (ascending powers) coefficient lists;
/// entries may be "p/q" strings, decimal strings or JSON numbers.
template <Scalar T>
Polynomial<T> polynomial_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw ParameterError("polynomial JSON needs a \"coeffs\" array");
    std::vector<T> c;
    for (const auto& v : j["coeffs"]) {
        if (v.is_string()) {
            c.push_back(parse_scalar<T>(v.get<std::string>()));
        } else if (v.is_number_integer()) {
            c.push_back(from_int<T>(v.get<long long>()));
        } else if (v.is_number()) {
            c.push_back(parse_scalar<T>(v.dump()));
        } else {
            throw ParameterError("polynomial coefficient is not a number");
        }
    }
    if (c.empty()) throw ParameterError("polynomial JSON has no coefficients");
    const std::string conv = j.value("convention", std::string("signed"));
    Polynomial<T> p;
    if (conv == "signed") {
        p = Polynomial<T>::from_signed(std::move(c));
    } else if (conv == "monomial") {
        p = Polynomial<T>::from_monomial(std::move(c));
    } else {
        throw ParameterError("unknown coefficient convention '" + conv + "'");
    }
    if (j.contains("degree") && j["degree"].get<std::size_t>() != p.degree())
        throw ParameterError("declared degree does not match the coefficient list");
    return p;
}

template <Scalar T>
Json values_to_json(std::size_t n, const std::vector<T>& values) {
    return Json{{"n", n}, {"values", format_all(values)}};
}

template <Scalar T>
MomentVector<T> moments_from_json(const Json& j) {
    MomentVector<T> m;
    m.n = j.at("n").get<std::size_t>();
    for (const auto& v : j.at("values")) m.values.push_back(parse_scalar<T>(v.get<std::string>()));
    return m;
}

template <Scalar T>
CumulantVector<T> cumulants_from_json(const Json& j) {
    CumulantVector<T> k;
    k.n = j.at("n").get<std::size_t>();
    for (const auto& v : j.at("values")) k.values.push_back(parse_scalar<T>(v.get<std::string>()));
    return k;
}

/// {"kind", "params", "gamma_prefix"} with `prefix_count` entries of gamma_{2k}.
Json function_to_json(const EvenEntireFunction& f, std::size_t prefix_count = 8);

/// cosine; bessel {"nu"}; poisson {"beta","seed","truncation_eps","max_points"};
/// custom {"gamma_prefix", params.tail_ratio}.
EvenEntireFunction function_from_json(const Json& j);

}  // namespace ffp
