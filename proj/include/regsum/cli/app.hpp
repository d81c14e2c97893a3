#pragma once

// The `regsum` command-line front end. `run` is the whole program, so tests
// drive it in-process with string streams.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "regsum/binomial_endpoint.hpp"
#include "regsum/cli/record.hpp"
#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"
#include "regsum/expr.hpp"
#include "regsum/hyperseries.hpp"
#include "regsum/real.hpp"
#include "regsum/sumreg.hpp"
#include "regsum/zline.hpp"

namespace regsum::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_method_failure = 3;

/// Exit code for a library error: failures of a numerical method give 3,
/// bad parameters give 2.
inline int exit_code_for(errc code) {
    switch (code) {
    case errc::no_stable_limit:
    case errc::transform_not_settling:
    case errc::cesaro_not_settling:
    case errc::singular_system:
    case errc::interpolation_mismatch: return exit_method_failure;
    default: return exit_usage;
    }
}

enum class Format { json, csv, text };

struct CommonOptions {
    std::string format = "json";
    std::optional<double> tolerance;
    std::optional<int> max_depth;

    SummationOptions summation() const {
        SummationOptions o;
        if (tolerance) {
            o.series_tolerance = *tolerance;
            o.limit_tolerance = *tolerance;
        }
        if (max_depth) o.euler_max_depth = *max_depth;
        return o;
    }
};

inline std::string render(const OutputRecord& r, const std::string& format) {
    if (format == "csv") return render_csv(r);
    if (format == "text") return render_text(r);
    return render_json(r);
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    if (text.find_first_not_of(' ') == std::string::npos) return out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        out.push_back(parse_rational(std::string_view(text).substr(pos, comma - pos)));
        if (comma == std::string::npos) return out;
        pos = comma + 1;
    }
}

inline std::string join(const std::vector<Rational>& v) {
    std::string s;
    for (const auto& r : v) s += (s.empty() ? "" : ",") + to_string(r);
    return s;
}

/// An angle given as a rational or a rational multiple of pi: "1", "-2",
/// "3/4", "pi", "-pi/2", "2pi/3", "3*pi/4".
struct Angle {
    Real value;
    std::string text;
};

inline Angle parse_angle(std::string text) {
    std::erase(text, ' ');
    const std::size_t p = text.find("pi");
    if (p == std::string::npos) {
        const Rational r = parse_rational(text);
        return {Real(r), to_string(r)};
    }
    std::string coeff = text.substr(0, p);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    if (coeff.empty() || coeff == "+") coeff = "1";
    if (coeff == "-") coeff = "-1";
    std::string rest = text.substr(p + 2);
    Rational divisor = 1;
    if (!rest.empty()) {
        if (rest.front() != '/') throw error(errc::invalid_argument, "bad angle '" + text + "'");
        divisor = parse_rational(rest.substr(1));
        if (divisor == 0) throw error(errc::invalid_argument, "zero divisor in angle '" + text + "'");
    }
    const Rational c = parse_rational(coeff) / divisor;
    std::string canon = c == 1 ? "pi" : c == -1 ? "-pi" : "";
    if (canon.empty()) {
        const Integer& num = numerator(c);
        canon = (num == 1 ? "" : num == -1 ? "-" : num.str() + "*") + std::string("pi");
        if (denominator(c) != 1) canon += "/" + denominator(c).str();
    } else if (denominator(c) != 1) {
        canon += "/" + denominator(c).str();
    }
    return {Real(c) * pi_real(), canon};
}

struct TrigDescriptor {
    int m = 1;
    Angle theta;
};

/// "m=1,theta=pi/2"
inline TrigDescriptor parse_trig(const std::string& text) {
    TrigDescriptor d;
    bool have_theta = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma - pos);
        std::erase(item, ' ');
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw error(errc::invalid_argument, "expected key=value in '" + text + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "m") {
            const Rational m = parse_rational(value);
            if (!is_integer(m) || m < 1 || m > 16) throw error(errc::invalid_argument, "m must be an integer in [1, 16]");
            d.m = static_cast<int>(numerator(m));
        } else if (key == "theta") {
            d.theta = parse_angle(value);
            have_theta = true;
        } else {
            throw error(errc::invalid_argument, "unknown trig key '" + key + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (!have_theta) throw error(errc::invalid_argument, "trig descriptor needs theta");
    return d;
}

/// Sequence for an expression: the alternating-polynomial family when the
/// expression has that shape, otherwise an explicit map.
inline SequenceSpec sequence_from_expression(const Expression& e) {
    if (auto q = e.alternating_polynomial()) return SequenceSpec::alternating_polynomial(*q);
    return SequenceSpec::dual([e](std::int64_t n) { return e.exact(n); }, [e](std::int64_t n) { return e.numeric(n); },
                              e.text());
}

inline MethodResult method_result(const RegularizedValue& v) {
    MethodResult m;
    m.method = to_string(v.method);
    m.value = v.value;
    m.error_estimate = v.error_estimate;
    if (v.exact) m.exact = to_string(*v.exact);
    return m;
}

inline MethodResult method_failure(std::string method, const error& e) {
    MethodResult m;
    m.method = std::move(method);
    m.status = errc_name(e.code());
    m.message = e.what();
    return m;
}

/// Runs `f` and records either its value or its failure.
inline MethodResult attempt(const std::string& method, const std::function<RegularizedValue()>& f) {
    try {
        return method_result(f());
    } catch (const error& e) {
        return method_failure(method, e);
    }
}

inline std::string tolerance_text(double t) { return format_double(t); }

// ---------------------------------------------------------------- commands

struct ClassifyArgs {
    std::string upper;
    std::string lower;
    std::string x;
};

inline OutputRecord cmd_classify(const ClassifyArgs& a) {
    const auto upper = parse_rational_list(a.upper);
    const auto lower = parse_rational_list(a.lower);
    const HypergeometricParams params(upper, lower);
    OutputRecord r;
    r.command = "classify";
    r.inputs = {{"upper", join(upper)}, {"lower", join(lower)}};
    r.facts.emplace_back("p", static_cast<std::int64_t>(params.p()));
    r.facts.emplace_back("q", static_cast<std::int64_t>(params.q()));
    r.facts.emplace_back("radius", to_string(classify_radius(params.p(), params.q())));

    if (a.x == "interior") {
        r.inputs.emplace_back("x", "interior");
        const RadiusClass rc = classify_radius(params.p(), params.q());
        const bool converges = params.terminates() || rc != RadiusClass::ConvergesOnlyAtZero;
        r.facts.emplace_back("verdict", to_string(converges ? Verdict::AbsolutelyConvergent : Verdict::Divergent));
        r.facts.emplace_back("rationale", std::string(converges ? "|x|<1:inside-radius" : "radius-zero"));
        r.facts.emplace_back("excess", to_string(params.excess()));
        return r;
    }
    Endpoint ep;
    if (a.x == "1" || a.x == "+1") {
        ep = Endpoint::PlusOne;
        r.inputs.emplace_back("x", "1");
    } else if (a.x == "-1") {
        ep = Endpoint::MinusOne;
        r.inputs.emplace_back("x", "-1");
    } else {
        throw error(errc::invalid_argument, "x must be 1, -1 or interior, got '" + a.x + "'");
    }
    const ConvergenceVerdict v = classify_endpoint(params, ep);
    r.facts.emplace_back("verdict", to_string(v.verdict));
    r.facts.emplace_back("rationale", v.rationale);
    r.facts.emplace_back("excess", to_string(v.excess));
    return r;
}

struct EndpointArgs {
    std::int64_t a = 0;
    std::string x;
};

inline OutputRecord cmd_endpoint(const EndpointArgs& args, const CommonOptions& common) {
    const Rational x = parse_rational(args.x);
    const Rational value = endpoint_value(args.a, x);
    OutputRecord r;
    r.command = "endpoint";
    r.inputs = {{"a", std::to_string(args.a)}, {"x", to_string(x)}};
    r.exact = to_string(value);
    if (args.a > 0) {
        const bool ok = binomial_series_partial_sum(args.a, x, args.a) == value;
        r.facts.emplace_back("finite_expansion_check", std::string(ok ? "ok" : "mismatch"));
        return r;
    }
    if (x != 1) return r;

    // sum_n C(a, n) = sum_n (-1)^n C(m+n-1, n) with m = -a.
    const SummationOptions opts = common.summation();
    const Series series{SequenceSpec::alternating_polynomial(expansion_coefficient_polynomial(-args.a)), 0};
    r.inputs.emplace_back("tolerance", tolerance_text(opts.series_tolerance));
    const MethodResult abel = attempt("AbelSum", [&] { return abel_sum(series, opts); });
    const MethodResult euler = attempt("EulerTransform", [&] { return euler_transform_sum(series, opts); });
    r.results = {abel, euler};
    const bool abel_ok = abel.status == "ok" && std::abs(*abel.value - to_double(value)) <= opts.series_tolerance;
    const bool euler_ok = euler.status == "ok" && euler.exact == r.exact;
    r.facts.emplace_back("abel_cross_check", std::string(abel_ok ? "ok" : "mismatch"));
    r.facts.emplace_back("euler_cross_check", std::string(euler_ok ? "ok" : "mismatch"));
    return r;
}

struct RemainderArgs {
    std::int64_t m = 1;
    std::int64_t k_max = 10;
    std::string x = "1";
    std::string plot;
    int jobs = 1;
};

inline OutputRecord cmd_remainder(const RemainderArgs& args) {
    const Rational x = parse_rational(args.x);
    if (args.k_max < 0) throw error(errc::invalid_argument, "k-max must be >= 0");
    RemainderQuery(args.m, 0, x); // validates m and x before any work

    const std::size_t count = static_cast<std::size_t>(args.k_max) + 1;
    std::vector<std::vector<Cell>> rows(count);
    std::vector<double> magnitudes(count);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < count; i += stride) {
            const RemainderQuery q(args.m, static_cast<std::int64_t>(i), x);
            const Rational ps = binomial_partial_sum(q);
            const Rational rem = remainder(q);
            const bool ok = ps + rem == pow(Rational(1) + x, -args.m);
            rows[i] = {static_cast<std::int64_t>(i), to_string(ps), to_string(rem), ok};
            magnitudes[i] = to_double(Rational(abs(rem)));
        }
    };
    const int jobs = std::max(1, args.jobs);
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work, static_cast<std::size_t>(j), static_cast<std::size_t>(jobs));
        for (auto& t : pool) t.join();
    }

    OutputRecord r;
    r.command = "remainder";
    r.inputs = {{"m", std::to_string(args.m)}, {"k_max", std::to_string(args.k_max)}, {"x", to_string(x)}};
    r.exact = to_string(pow(Rational(1) + x, -args.m));
    bool all_ok = true;
    for (const auto& row : rows) all_ok = all_ok && std::get<bool>(row[3]);
    r.facts.emplace_back("identity_ok", all_ok);
    r.table = Table{{"k", "partial_sum", "remainder", "identity_ok"}, std::move(rows)};

    if (!args.plot.empty()) {
        std::ofstream plot(args.plot);
        if (!plot) throw error(errc::invalid_argument, "cannot write " + args.plot);
        plot << "# k abs_remainder\n";
        for (std::size_t i = 0; i < count; ++i) plot << i << ' ' << format_double(magnitudes[i]) << '\n';
        std::ofstream meta(args.plot + ".meta.json");
        if (!meta) throw error(errc::invalid_argument, "cannot write " + args.plot + ".meta.json");
        nlohmann::ordered_json doc;
        doc["command"] = "remainder";
        doc["m"] = args.m;
        doc["x"] = to_string(x);
        doc["k_max"] = args.k_max;
        doc["columns"] = {"k", "abs_remainder"};
        doc["quantity"] = "|R_k^m(x)|, the exact truncation remainder of (1+x)^(-m), rounded to double";
        meta << doc.dump(2) << '\n';
        r.facts.emplace_back("plot", args.plot);
    }
    return r;
}

struct SumArgs {
    std::string alt_poly;
    std::string terms;
    std::string trig;
    std::optional<std::int64_t> start;
    std::string methods = "abel,euler";
};

inline OutputRecord cmd_sum(const SumArgs& args, const CommonOptions& common, int& exit_code) {
    const int given = !args.alt_poly.empty() + !args.terms.empty() + !args.trig.empty();
    if (given != 1) throw error(errc::invalid_argument, "give exactly one of --alt-poly, --terms, --trig");

    OutputRecord r;
    r.command = "sum";
    std::optional<Series> series;
    if (!args.alt_poly.empty()) {
        const auto p = Expression::parse(args.alt_poly).polynomial();
        if (!p) throw error(errc::invalid_argument, "--alt-poly needs a polynomial in n, got '" + args.alt_poly + "'");
        series = Series{SequenceSpec::alternating_polynomial(*p), args.start.value_or(0)};
        r.inputs.emplace_back("alt_poly", p->to_string());
    } else if (!args.terms.empty()) {
        const Expression e = Expression::parse(args.terms);
        series = Series{sequence_from_expression(e), args.start.value_or(0)};
        r.inputs.emplace_back("terms", e.text());
    } else {
        const TrigDescriptor d = parse_trig(args.trig);
        series = Series{SequenceSpec::alternating_trig(d.m, d.theta.value), args.start.value_or(1)};
        r.inputs.emplace_back("trig", "m=" + std::to_string(d.m) + ",theta=" + d.theta.text);
    }
    r.inputs.emplace_back("start", std::to_string(series->start));
    r.inputs.emplace_back("methods", args.methods);
    const SummationOptions opts = common.summation();
    r.inputs.emplace_back("tolerance", tolerance_text(opts.series_tolerance));

    std::vector<std::string> methods;
    for (std::size_t pos = 0;;) {
        const std::size_t comma = args.methods.find(',', pos);
        methods.push_back(args.methods.substr(pos, comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    for (const auto& name : methods) {
        if (name == "abel") {
            r.results.push_back(attempt("AbelSum", [&] { return abel_sum(*series, opts); }));
        } else if (name == "euler") {
            r.results.push_back(attempt("EulerTransform", [&] { return euler_transform_sum(*series, opts); }));
        } else if (name == "cesaro") {
            r.results.push_back(attempt("Cesaro", [&] { return cesaro_sum(*series, opts); }));
        } else if (name == "symbolic") {
            r.results.push_back(attempt("SymbolicTelescoper", [&] { return symbolic_sum(*series, opts); }));
        } else {
            throw error(errc::invalid_argument, "unknown method '" + name + "' (abel, euler, cesaro, symbolic)");
        }
    }

    bool any_ok = false;
    std::optional<std::string> exact;
    bool exact_agrees = true;
    for (const auto& m : r.results) {
        if (m.status != "ok") continue;
        any_ok = true;
        if (!m.exact) continue;
        if (exact && *exact != *m.exact) exact_agrees = false;
        exact = m.exact;
    }
    if (exact && exact_agrees) r.exact = exact;
    exit_code = any_ok ? exit_ok : exit_method_failure;
    return r;
}

inline OutputRecord cmd_limit(const std::string& seq, const CommonOptions& common) {
    const Expression e = Expression::parse(seq);
    const SequenceSpec s = sequence_from_expression(e);
    const SummationOptions opts = common.summation();
    OutputRecord r;
    r.command = "limit";
    r.inputs = {{"seq", e.text()}, {"tolerance", tolerance_text(opts.limit_tolerance)}};
    const RegularizedValue v = generalized_limit(s, opts);
    r.results.push_back(method_result(v));
    if (v.exact) {
        r.exact = to_string(*v.exact);
        r.results.push_back(attempt("AbelMean", [&] { return abel_mean_limit(s, opts); }));
    }
    return r;
}

struct ZsumArgs {
    std::string family;
    std::string poly;
    std::int64_t a = 0;
    std::int64_t b = 0;
};

inline OutputRecord cmd_zsum(const ZsumArgs& args) {
    OutputRecord r;
    r.command = "zsum";
    r.inputs.emplace_back("f", args.family);

    std::optional<GeneratingFunction> g;
    std::string F_text;
    auto from_polynomial = [&](const Polynomial& p) {
        const Polynomial Q = find_polynomial_telescoper(p);
        g.emplace([Q](std::int64_t z) { return Q(Rational(z)); }, [p](std::int64_t z) { return p(Rational(z)); });
        F_text = Q.to_string("u");
    };
    const Polynomial u = Polynomial::variable();
    if (args.family == "identity") {
        from_polynomial(u);
    } else if (args.family == "constant") {
        from_polynomial(Polynomial::constant(1));
    } else if (args.family == "square") {
        from_polynomial(u * u);
    } else if (args.family == "cube") {
        from_polynomial(u * u * u);
    } else if (args.family == "alternating") {
        g.emplace([](std::int64_t z) { return Rational(z % 2 == 0 ? -1 : 1, 2); },
                  [](std::int64_t z) { return Rational(z % 2 == 0 ? 1 : -1); });
        F_text = "(-1)^(u+1)/2";
    } else if (args.family == "poly") {
        if (args.poly.empty()) throw error(errc::invalid_argument, "family 'poly' needs --p");
        const auto p = Expression::parse(args.poly).polynomial();
        if (!p) throw error(errc::invalid_argument, "--p must be a polynomial, got '" + args.poly + "'");
        from_polynomial(*p);
        r.inputs.emplace_back("p", p->to_string("u"));
    } else {
        throw error(errc::invalid_argument,
                    "unknown family '" + args.family + "' (identity, constant, square, cube, alternating, poly)");
    }
    r.inputs.emplace_back("a", std::to_string(args.a));
    r.inputs.emplace_back("b", std::to_string(args.b));

    const ZRange range = resolve_range(args.a, args.b);
    const Rational value = sum_over_range(*g, args.a, args.b);
    r.exact = to_string(value);
    r.facts.emplace_back("F", F_text);
    r.facts.emplace_back("range", range.description());
    r.facts.emplace_back("finite", range.finite());
    constexpr std::uint64_t direct_limit = 1U << 20;
    if (range.finite()) {
        r.facts.emplace_back("size", static_cast<std::int64_t>(range.size()));
        if (range.size() <= 32) {
            std::string members;
            for (std::int64_t v : range.members()) members += (members.empty() ? "" : ",") + std::to_string(v);
            r.facts.emplace_back("members", "{" + members + "}");
        }
        if (range.size() <= direct_limit) {
            r.facts.emplace_back("cross_check", std::string(direct_sum(*g, range) == value ? "ok" : "mismatch"));
        } else {
            r.facts.emplace_back("cross_check", std::string("skipped: range too large"));
        }
    } else {
        r.facts.emplace_back("cross_check", std::string("not applicable: infinite range"));
    }
    return r;
}

// -------------------------------------------------------------------- main

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact endpoint analysis and regularized summation of hypergeometric and binomial series"};
    app.name("regsum");
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--tolerance", common.tolerance,
                        "Convergence tolerance of the numerical methods (default: $REGSUM_TOLERANCE)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-depth", common.max_depth, "Maximum Euler transform depth")->check(CLI::Range(1, 4096));
    };

    ClassifyArgs classify;
    auto* c_classify = app.add_subcommand("classify", "Endpoint convergence of a q+1Fq series");
    c_classify->add_option("--upper", classify.upper, "Upper parameters, comma separated rationals")->required();
    c_classify->add_option("--lower", classify.lower, "Lower parameters, comma separated rationals");
    c_classify->add_option("-x,--x", classify.x, "1, -1 or interior")->required();

    EndpointArgs endpoint;
    auto* c_endpoint = app.add_subcommand("endpoint", "Exact (1+x)^a with regularized cross-checks");
    c_endpoint->add_option("-a", endpoint.a, "Nonzero integer exponent")->required();
    c_endpoint->add_option("-x,--x", endpoint.x, "Rational x in (-1, 1]")->required();

    RemainderArgs remainder;
    auto* c_remainder = app.add_subcommand("remainder", "Exact truncation remainders of (1+x)^(-m)");
    c_remainder->add_option("-m", remainder.m, "Exponent m >= 1")->required();
    c_remainder->add_option("-k,--k-max", remainder.k_max, "Last truncation index");
    c_remainder->add_option("-x,--x", remainder.x, "Rational x in (-1, 1]");
    c_remainder->add_option("--plot", remainder.plot, "Write |remainder| against k to this file");
    c_remainder->add_option("--jobs", remainder.jobs, "Worker threads for the table rows")->check(CLI::Range(1, 256));

    SumArgs sum;
    auto* c_sum = app.add_subcommand("sum", "Regularized value of a series by several methods");
    c_sum->add_option("--alt-poly", sum.alt_poly, "Terms (-1)^n p(n) for the given polynomial p");
    c_sum->add_option("--terms", sum.terms, "Terms as an expression in n");
    c_sum->add_option("--trig", sum.trig, "Terms (-1)^(n-1) n^(2m-1) sin(n theta), e.g. m=1,theta=pi/2");
    c_sum->add_option("--start", sum.start, "First index (default 0, or 1 for --trig)");
    c_sum->add_option("--methods", sum.methods, "Comma separated subset of abel,euler,cesaro,symbolic");

    std::string seq;
    auto* c_limit = app.add_subcommand("limit", "Generalized limit of a sequence");
    c_limit->add_option("--seq", seq, "Sequence as an expression in n")->required();

    ZsumArgs zsum;
    auto* c_zsum = app.add_subcommand("zsum", "Sum over a range of the reordered integer line");
    c_zsum->add_option("--f", zsum.family, "identity, constant, square, cube, alternating or poly")->required();
    c_zsum->add_option("--p", zsum.poly, "Polynomial in u for the poly family");
    c_zsum->add_option("-a", zsum.a, "Range start")->required();
    c_zsum->add_option("-b", zsum.b, "Range end")->required();

    for (auto* sub : {c_classify, c_endpoint, c_remainder, c_sum, c_limit, c_zsum}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (!common.tolerance) {
        if (const char* env = std::getenv("REGSUM_TOLERANCE"); env && *env) {
            char* end = nullptr;
            const double t = std::strtod(env, &end);
            if (*end != '\0' || !std::isfinite(t) || t <= 0) {
                err << "error: REGSUM_TOLERANCE must be a positive number, got '" << env << "'\n";
                return exit_usage;
            }
            common.tolerance = t;
        }
    }

    try {
        int code = exit_ok;
        OutputRecord r;
        if (c_classify->parsed()) {
            r = cmd_classify(classify);
        } else if (c_endpoint->parsed()) {
            r = cmd_endpoint(endpoint, common);
        } else if (c_remainder->parsed()) {
            r = cmd_remainder(remainder);
        } else if (c_sum->parsed()) {
            r = cmd_sum(sum, common, code);
        } else if (c_limit->parsed()) {
            r = cmd_limit(seq, common);
        } else {
            r = cmd_zsum(zsum);
        }
        out << render(r, common.format);
        return code;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
}

} // namespace regsum::cli
