#include "commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ffp/identities.hpp"
#include "ffp/io.hpp"
#include "ffp/lab.hpp"

namespace ffp::cli {

namespace {

struct RunConfig {
    std::string subcommand;
    Json inputs = Json::object();
    std::string mode = "rational";
    unsigned precision_bits = 0;
    std::size_t max_single = 0;
    std::size_t max_pair = 0;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::string out;

    Json to_json() const {
        return Json{{"subcommand", subcommand},
                    {"inputs", inputs},
                    {"scalar_mode", mode},
                    {"precision_bits", mode == "bigfloat" ? precision_bits : 0u},
                    {"guards", {{"max_single", max_single}, {"max_pair", max_pair}}},
                    {"threads", threads},
                    {"seed", seed},
                    {"out", out}};
    }
};

/// A path to a JSON file, or inline JSON when the text starts with '{'.
Json load(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') {
        try {
            return Json::parse(arg);
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError(std::string("malformed inline JSON: ") + e.what());
        }
    }
    return read_json_file(arg);
}

/// "identity" or "identity(n)" names (z-1)^n; anything else is loaded.
template <Scalar T>
Polynomial<T> load_polynomial(const std::string& arg, std::size_t n_hint) {
    if (arg == "identity") return boxtimes_identity<T>(n_hint);
    if (arg.rfind("identity(", 0) == 0 && arg.back() == ')') {
        const auto inner = arg.substr(9, arg.size() - 10);
        std::size_t n = 0;
        try {
            n = std::stoul(inner);
        } catch (const std::exception&) {
            throw ParameterError("bad identity degree '" + inner + "'");
        }
        return boxtimes_identity<T>(n);
    }
    return polynomial_from_json<T>(load(arg));
}

void emit(const Json& result, const RunConfig& rc, const std::string& name, std::ostream& out) {
    Json j = result;
    j["run_config"] = rc.to_json();
    if (rc.out.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::filesystem::create_directories(rc.out);
    const auto path = (std::filesystem::path(rc.out) / (name + ".json")).string();
    write_json_file(path, j);
    out << path << "\n";
}

template <class F>
int with_mode(const RunConfig& rc, F&& f) {
    if (rc.mode == "rational") return f(Rational{});
    PrecisionScope scope(rc.precision_bits);
    return f(BigFloat{});
}

std::vector<std::size_t> sizes(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw ParameterError("config needs \"" + key + "\"");
    return j[key].get<std::vector<std::size_t>>();
}

Grid grid_from(const Json& j, Grid fallback) {
    if (!j.contains("grid")) return fallback;
    const auto& g = j["grid"];
    return Grid{g.value("lo", fallback.lo), g.value("hi", fallback.hi), g.value("points", fallback.points)};
}

Rational rational_field(const Json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return parse_rational(fallback);
    const auto& v = j[key];
    return parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
}

std::vector<std::uint64_t> seed_list(const Json& j, std::uint64_t base) {
    if (!j.contains("seeds")) {
        std::vector<std::uint64_t> s(j.value("seed_count", std::size_t{20}));
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = base + i;
        return s;
    }
    const auto& v = j["seeds"];
    if (v.is_array()) return v.get<std::vector<std::uint64_t>>();
    std::vector<std::uint64_t> s(v.at("count").get<std::size_t>());
    const auto from = v.value("from", base);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = from + i;
    return s;
}

template <Scalar T>
PolynomialFamily<T> family_from(const Json& j, std::uint64_t seed) {
    const std::string kind = j.at("kind").get<std::string>();
    const Rational a = rational_field(j, "a", "1");
    if (kind == "power") return families::power<T>(a);
    if (kind == "alternating") return families::alternating<T>(a);
    if (kind == "plus_minus_one") return families::plus_minus_one<T>();
    if (kind == "lln_counterexample") return families::lln_counterexample<T>();
    if (kind == "clt_counterexample") return families::clt_counterexample<T>();
    if (kind == "scaled_power") return families::scaled_power<T>(a);
    if (kind == "jensen") return families::jensen<T>(function_from_json(j.at("function")), a);
    if (kind == "wigner" || kind == "wishart") {
        if constexpr (is_exact_v<T>) {
            throw ParameterError("random matrix families need --mode bigfloat");
        } else {
            const auto law = parse_entry_law(j.value("law", std::string("gaussian")));
            const auto s = j.value("seed", seed);
            return kind == "wigner" ? families::wigner(s, law) : families::wishart(s, law);
        }
    }
    throw ParameterError("unknown family '" + kind + "'");
}

template <Scalar T>
ExperimentReport run_experiment(const std::string& name, const Json& cfg, const RunConfig& rc) {
    const auto fam = [&] { return family_from<T>(cfg.at("family"), rc.seed); };
    if (name == "lln") {
        std::optional<Polynomial<T>> alt;
        if (cfg.contains("alternate")) alt = polynomial_from_json<T>(cfg["alternate"]);
        return lln_experiment(fam(), rational_field(cfg, "a", "1"), cfg.at("d").get<std::size_t>(),
                              sizes(cfg, "n_list"), grid_from(cfg, {}), alt);
    }
    if (name == "clt") return clt_experiment(fam(), cfg.at("d").get<std::size_t>(), sizes(cfg, "n_list"), grid_from(cfg, {}));
    if (name == "poisson")
        return poisson_experiment(fam(), rational_field(cfg, "a", "1"), cfg.at("d").get<std::size_t>(),
                                  sizes(cfg, "n_list"), rational_field(cfg, "alpha", "-1/2"),
                                  rational_field(cfg, "t", "4"), grid_from(cfg, {0, 6, 512}));
    if (name == "cumulant_expansion")
        return asymptotic_cumulant_diagnostic(fam(), cfg.at("d").get<std::size_t>(), cfg.at("j").get<std::size_t>(),
                                              sizes(cfg, "n_list"));
    if (name == "laguerre_universality")
        return laguerre_universality_experiment<T>(function_from_json(cfg.at("function")), cfg.at("d").get<std::size_t>(),
                                                   sizes(cfg, "n_list"), grid_from(cfg, {0, 6, 512}));
    if constexpr (is_exact_v<T>) {
        throw ParameterError("experiment '" + name + "' needs --mode bigfloat");
    } else {
        if (name == "hermite_universality")
            return hermite_universality_experiment(function_from_json(cfg.at("function")),
                                                   cfg.at("d").get<std::size_t>(), sizes(cfg, "n_list"),
                                                   grid_from(cfg, {}));
        if (name == "cosine_universality")
            return cosine_universality_experiment(function_from_json(cfg.at("function")), sizes(cfg, "n_list"),
                                                  cfg.value("radius", 3.0), cfg.value("grid_points", std::size_t{512}),
                                                  parse_bigfloat(cfg.value("tail_target", std::string("1e-30"))));
        const auto law = parse_entry_law(cfg.value("law", std::string("gaussian")));
        if (name == "wigner")
            return wigner_experiment(cfg.at("d").get<std::size_t>(), cfg.at("n").get<std::size_t>(),
                                     seed_list(cfg, rc.seed), law, grid_from(cfg, {}));
        if (name == "wishart")
            return wishart_experiment(cfg.at("d").get<std::size_t>(), cfg.at("n").get<std::size_t>(),
                                      seed_list(cfg, rc.seed), law, grid_from(cfg, {0, 6, 512}));
        if (name == "p130") {
            const auto roots = read_root_file(cfg.value("root_file", std::string("data/p130_roots.txt")),
                                              cfg.value("root_count", std::size_t{130}));
            return p130_experiment(roots, cfg.value("orders", std::vector<std::size_t>{114, 122, 126}),
                                   cfg.value("curve_points", std::size_t{241}));
        }
    }
    throw ParameterError("unknown experiment '" + name + "'");
}

const std::vector<std::string> kExperiments = {"lln",
                                               "clt",
                                               "poisson",
                                               "cumulant_expansion",
                                               "hermite_universality",
                                               "laguerre_universality",
                                               "cosine_universality",
                                               "wigner",
                                               "wishart",
                                               "p130"};

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite free probability calculus and limit experiments", "ffp"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig rc;
    rc.precision_bits = default_precision_bits();
    rc.max_single = partition_guards().max_single;
    rc.max_pair = partition_guards().max_pair;
    app.add_option("--mode", rc.mode, "scalar mode")->check(CLI::IsMember({"rational", "bigfloat"}));
    app.add_option("--precision", rc.precision_bits, "BigFloat precision in bits (default from FFP_PRECISION_BITS)")
        ->check(CLI::Range(16u, 1u << 20));
    app.add_option("--threads", rc.threads, "worker threads for independent rows")->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", rc.seed, "base seed for randomized experiments");
    app.add_option("--out", rc.out, "output directory (default: stdout for simple commands, . for experiments)");
    app.add_option("--max-j", rc.max_single, "guard on single partition sums")->check(CLI::Range(1, 16));
    app.add_option("--max-pair-j", rc.max_pair, "guard on double partition sums")->check(CLI::Range(1, 12));

    std::string p_arg, q_arg, f_arg, config_arg, kind = "even", experiment_name;
    std::size_t j = 0, n = 0, d = 0, max_d = 6;
    bool normalized = false;

    auto* add = app.add_subcommand("convolve-add", "p boxplus_n q");
    add->add_option("--p", p_arg, "polynomial JSON (file or inline)")->required();
    add->add_option("--q", q_arg, "polynomial JSON (file or inline)")->required();

    auto* mult = app.add_subcommand("convolve-mult", "p boxtimes_n q");
    mult->add_option("--p", p_arg, "polynomial JSON (file or inline)")->required();
    mult->add_option("--q", q_arg, "polynomial JSON, or identity / identity(n) for (z-1)^n")->required();

    auto* cum = app.add_subcommand("cumulants", "finite free cumulants kappa_1..kappa_J");
    cum->add_option("--poly", p_arg, "polynomial JSON")->required();
    cum->add_option("--j", j, "number of cumulants")->required();

    auto* mom = app.add_subcommand("moments", "moments m_1..m_J");
    mom->add_option("--poly", p_arg, "polynomial JSON")->required();
    mom->add_option("--j", j, "number of moments")->required();

    auto* diff = app.add_subcommand("differentiate", "D^n p, optionally normalized and checked as a convolution");
    diff->add_option("--poly", p_arg, "polynomial JSON")->required();
    diff->add_option("--n", n, "number of derivatives")->required();
    diff->add_flag("--normalized", normalized, "divide by (deg p)_n and check against p boxtimes z^n (z-1)^d");

    auto* jen = app.add_subcommand("jensen", "Jensen polynomials of an even entire function");
    jen->add_option("--function", f_arg, "function JSON, or cosine / bessel:<nu>")->required();
    jen->add_option("--d", d, "degree")->required();
    jen->add_option("--n", n, "shift")->required();
    jen->add_option("--type", kind, "even | classical | derivative (W_{d,n})")
        ->check(CLI::IsMember({"even", "classical", "derivative"}));

    auto* exp = app.add_subcommand("experiment", "run a limit-theorem experiment from a JSON config");
    exp->add_option("name", experiment_name, "experiment")->required()->check(CLI::IsMember(kExperiments));
    exp->add_option("--config", config_arg, "experiment config JSON (file or inline)")->required();

    auto* ver = app.add_subcommand("verify-identities", "run the exact identity suite");
    ver->add_option("--max-d", max_d, "largest degree checked")->check(CLI::Range(1, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        partition_guards().max_single = rc.max_single;
        partition_guards().max_pair = rc.max_pair;
        lab_threads() = rc.threads;
        rc.subcommand = app.get_subcommands().front()->get_name();

        auto function_arg = [](const std::string& text) {
            if (text == "cosine") return cosine_spec();
            if (text.rfind("bessel:", 0) == 0) return bessel_spec(parse_rational(text.substr(7)));
            return function_from_json(load(text));
        };

        if (add->parsed() || mult->parsed()) {
            rc.inputs = {{"p", p_arg}, {"q", q_arg}};
            return with_mode(rc, [&]<class T>(T) {
                const auto p = load_polynomial<T>(p_arg, 0);
                const auto q = load_polynomial<T>(q_arg, p.degree());
                const auto r = add->parsed() ? boxplus(p, q) : boxtimes(p, q);
                emit(polynomial_to_json(r), rc, rc.subcommand, out);
                return kOk;
            });
        }
        if (cum->parsed() || mom->parsed()) {
            rc.inputs = {{"poly", p_arg}, {"j", j}};
            return with_mode(rc, [&]<class T>(T) {
                const auto p = load_polynomial<T>(p_arg, 0);
                if (cum->parsed()) {
                    const auto k = cumulants_from_coeffs(p, j);
                    emit(values_to_json(k.n, k.values), rc, "cumulants", out);
                } else {
                    const auto m = moments_from_coeffs(p, j);
                    emit(values_to_json(m.n, m.values), rc, "moments", out);
                }
                return kOk;
            });
        }
        if (diff->parsed()) {
            rc.inputs = {{"poly", p_arg}, {"n", n}, {"normalized", normalized}};
            return with_mode(rc, [&]<class T>(T) {
                const auto p = load_polynomial<T>(p_arg, 0);
                if (!normalized) {
                    if (n > p.degree()) throw DegenerateInput("derivative past the degree is the zero polynomial");
                    emit(polynomial_to_json(derivative(p, n)), rc, "differentiate", out);
                    return kOk;
                }
                if (n > p.degree()) throw ParameterError("--n exceeds the degree");
                const auto r = derivative_as_boxtimes(p, n, p.degree() - n);
                Json j_out = polynomial_to_json(r.normalized);
                j_out["sides_agree"] = r.agree;
                emit(j_out, rc, "differentiate", out);
                return r.agree ? kOk : kInvariant;
            });
        }
        if (jen->parsed()) {
            rc.inputs = {{"function", f_arg}, {"d", d}, {"n", n}, {"type", kind}};
            const auto f = function_arg(f_arg);
            return with_mode(rc, [&]<class T>(T) {
                Json j_out;
                if (kind == "even") {
                    j_out = polynomial_to_json(even_jensen<T>(f, d, n));
                } else if (kind == "classical") {
                    j_out = polynomial_to_json(classical_jensen<T>(f, d, n));
                } else {
                    const auto w = even_jensen_of_derivative<T>(f, d, n);
                    j_out = polynomial_to_json(w.via_series);
                    j_out["routes_agree"] = w.agree;
                    if (!w.agree) {
                        emit(j_out, rc, "jensen", out);
                        return kInvariant;
                    }
                }
                j_out["function"] = function_to_json(f);
                emit(j_out, rc, "jensen", out);
                return kOk;
            });
        }
        if (exp->parsed()) {
            const Json cfg = load(config_arg);
            rc.inputs = {{"name", experiment_name}, {"config", cfg}};
            return with_mode(rc, [&]<class T>(T) {
                auto report = run_experiment<T>(experiment_name, cfg, rc);
                report.config["run_config"] = rc.to_json();
                const auto files = emit_report(report, rc.out.empty() ? std::filesystem::path(".") : std::filesystem::path(rc.out));
                out << files.csv.string() << "\n" << files.sidecar.string() << "\n";
                for (const auto& c : files.curves) out << c.string() << "\n";
                for (const auto& note : report.notes) err << "note: " << note << "\n";
                return kOk;
            });
        }
        if (ver->parsed()) {
            rc.inputs = {{"max_d", max_d}};
            const auto checks = run_identity_suite(max_d);
            std::size_t failed = 0;
            for (const auto& c : checks) {
                if (!c.ok) {
                    ++failed;
                    out << "FAIL " << c.name << ": " << c.detail << "\n";
                }
            }
            out << checks.size() - failed << "/" << checks.size() << " identities hold\n";
            return failed == 0 ? kOk : kInvariant;
        }
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const nlohmann::json::exception& e) {
        err << "error: bad JSON input: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    }
    return kUsage;
}

}  // namespace ffp::cli
