#include "ffp/io.hpp"

#include <fstream>

namespace ffp {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("malformed JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write " + path);
    out << j.dump(2) << "\n";
}

Json function_to_json(const EvenEntireFunction& f, std::size_t prefix_count) {
    Json params = Json::object();
    for (const auto& [k, v] : f.params()) params[k] = v;
    return Json{{"kind", f.kind()}, {"params", params}, {"gamma_prefix", f.gamma_prefix_strings(prefix_count)}};
}

namespace {

std::string param(const Json& params, const std::string& key, const std::string& fallback) {
    if (!params.contains(key)) return fallback;
    const auto& v = params[key];
    return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

EvenEntireFunction function_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParameterError("function JSON needs a \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    const Json params = j.value("params", Json::object());
    if (kind == "cosine") return cosine_spec();
    if (kind == "bessel") return bessel_spec(parse_rational(param(params, "nu", "0")));
    if (kind == "poisson") {
        return poisson_random_spec(std::stod(param(params, "beta", "0.5")),
                                   std::stoull(param(params, "seed", "0")),
                                   std::stod(param(params, "truncation_eps", "1e-8")),
                                   std::stoull(param(params, "max_points", "1000000")));
    }
    if (kind == "custom") {
        if (!j.contains("gamma_prefix") || j["gamma_prefix"].empty())
            throw ParameterError("custom function needs a non-empty gamma_prefix");
        std::vector<Rational> prefix;
        for (const auto& v : j["gamma_prefix"]) prefix.push_back(parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
        return custom_spec(std::move(prefix), parse_rational(param(params, "tail_ratio", "0")));
    }
    throw ParameterError("unknown function kind '" + kind + "'");
}

}  // namespace ffp
