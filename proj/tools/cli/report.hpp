#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "normaj/linalg.hpp"
#include "normaj/majorization.hpp"

namespace normaj::cli {

using nlohmann::json;

/// Serialize with every floating-point number printed at 17 significant
/// digits so downstream oracles can re-verify bit-stably.  Keys come out in
/// nlohmann's sorted order, making reports byte-reproducible.
std::string dump_report(const json& j);

/// Write-temp-then-rename so readers never observe a partial report.
void write_atomically(const std::string& path, const std::string& content);

std::string fnv1a_digest(const std::string& bytes);

std::string read_file(const std::string& path);

std::string utc_timestamp();

json complex_to_json(const Complex& z);
json complex_list_to_json(std::span<const Complex> zs);
json cmatrix_to_json(const CMatrix& m);
json real_matrix_to_json(const std::vector<std::vector<double>>& m);

json verdict(bool pass, double tolerance);
json verdict(bool pass, double tolerance, double value);

}  // namespace normaj::cli
