#include "problem.hpp"

#include <cmath>

namespace normaj::cli {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const char* field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(std::string(field) + ": complex numbers must be [re, im] arrays");
    double re = j[0].get<double>();
    double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError(std::string(field) + ": non-finite number");
    return {re, im};
}

std::vector<Complex> parse_complex_list(const json& j, const char* field) {
    if (!j.is_array()) throw ParseError(std::string(field) + " must be an array");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(parse_complex(e, field));
    return out;
}

VectorFamily parse_family(const json& j, const char* field) {
    if (!j.is_array() || j.empty())
        throw ParseError(std::string(field) + " must be a nonempty array of points");
    std::vector<std::vector<double>> pts;
    for (const auto& p : j) {
        if (!p.is_array() || p.empty())
            throw ParseError(std::string(field) + ": each point must be a number array");
        std::vector<double> v;
        for (const auto& c : p) {
            if (!c.is_number()) throw ParseError(std::string(field) + ": non-numeric coordinate");
            double d = c.get<double>();
            if (!std::isfinite(d)) throw ParseError(std::string(field) + ": non-finite coordinate");
            v.push_back(d);
        }
        pts.push_back(std::move(v));
    }
    std::size_t dim = pts.front().size();
    for (const auto& p : pts)
        if (p.size() != dim) throw ParseError(std::string(field) + ": inconsistent dimensions");
    return VectorFamily(dim, std::move(pts));
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("problem file must be a JSON object");

    ProblemFile p;
    if (j.contains("lambda")) p.lambda = parse_complex_list(j["lambda"], "lambda");
    if (j.contains("mu")) p.mu = parse_complex_list(j["mu"], "mu");
    if (j.contains("coefficients"))
        p.coefficients = parse_complex_list(j["coefficients"], "coefficients");
    if (j.contains("alpha")) p.alpha = parse_complex_list(j["alpha"], "alpha");
    if (j.contains("x")) p.x = parse_family(j["x"], "x");
    if (j.contains("y")) p.y = parse_family(j["y"], "y");
    if (j.contains("m")) {
        if (!j["m"].is_number_unsigned()) throw ParseError("m must be a nonnegative integer");
        p.m = j["m"].get<std::size_t>();
    }
    if (p.lambda && p.coefficients)
        throw ParseError("exactly one of lambda/coefficients may be the primary input");

    if (j.contains("options")) {
        const json& o = j["options"];
        if (!o.is_object()) throw ParseError("options must be an object");
        if (o.contains("tol")) {
            if (!o["tol"].is_number()) throw ParseError("options.tol must be a number");
            p.tol = o["tol"].get<double>();
        }
        if (o.contains("seed")) {
            if (!o["seed"].is_number_unsigned()) throw ParseError("options.seed must be unsigned");
            p.seed = o["seed"].get<std::uint64_t>();
        }
        if (o.contains("k")) {
            if (!o["k"].is_array()) throw ParseError("options.k must be an array");
            for (const auto& e : o["k"]) {
                if (!e.is_number_unsigned()) throw ParseError("options.k entries must be unsigned");
                p.k_levels.push_back(e.get<std::size_t>());
            }
        }
    }
    return p;
}

}  // namespace normaj::cli
