#include "report.hpp"

#include <chrono>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace normaj::cli {

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("non-finite number in report");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool is_scalar_array(const json& j) {
    for (const auto& e : j)
        if (e.is_array() || e.is_object()) return false;
    return true;
}

void dump(std::ostream& os, const json& j, int depth) {
    std::string pad(2 * std::size_t(depth), ' ');
    std::string pad_in(2 * std::size_t(depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) { os << "{}"; return; }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad_in << json(it.key()).dump() << ": ";
                dump(os, it.value(), depth + 1);
            }
            os << "\n" << pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) { os << "[]"; return; }
            if (is_scalar_array(j)) {
                os << "[";
                bool first = true;
                for (const auto& e : j) {
                    if (!first) os << ", ";
                    first = false;
                    dump(os, e, depth);
                }
                os << "]";
                return;
            }
            os << "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) os << ",\n";
                first = false;
                os << pad_in;
                dump(os, e, depth + 1);
            }
            os << "\n" << pad << "]";
            return;
        }
        case json::value_t::number_float:
            os << format_double(j.get<double>());
            return;
        default:
            os << j.dump();
            return;
    }
}

}  // namespace

std::string dump_report(const json& j) {
    std::ostringstream os;
    dump(os, j, 0);
    os << "\n";
    return os.str();
}

void write_atomically(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json complex_list_to_json(std::span<const Complex> zs) {
    json arr = json::array();
    for (const Complex& z : zs) arr.push_back(complex_to_json(z));
    return arr;
}

json cmatrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json real_matrix_to_json(const std::vector<std::vector<double>>& m) {
    json rows = json::array();
    for (const auto& r : m) rows.push_back(r);
    return rows;
}

json verdict(bool pass, double tolerance) {
    return json{{"pass", pass}, {"tolerance", tolerance}};
}

json verdict(bool pass, double tolerance, double value) {
    return json{{"pass", pass}, {"tolerance", tolerance}, {"value", value}};
}

}  // namespace normaj::cli
