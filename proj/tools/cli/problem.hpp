#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "normaj/majorization.hpp"
#include "normaj/poly.hpp"

namespace normaj::cli {

/// Parsed problem file.  Complex numbers are strictly two-element
/// [re, im] arrays; which fields must be present depends on the command.
struct ProblemFile {
    std::optional<std::vector<Complex>> lambda;
    std::optional<std::vector<Complex>> mu;
    std::optional<std::vector<Complex>> coefficients;
    std::vector<Complex> alpha;
    std::optional<VectorFamily> x;
    std::optional<VectorFamily> y;
    std::optional<std::size_t> m;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::vector<std::size_t> k_levels;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ProblemFile parse_problem(const std::string& text);

}  // namespace normaj::cli
