#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace normaj::cli {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// Andrew monotone chain; returns hull vertices in counterclockwise order.
std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const Complex& o, const Complex& a, const Complex& b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) -
               (a.imag() - o.imag()) * (b.real() - o.real());
    };
    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Complex& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        const Complex& p = pts[i];
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

std::string root_scatter_svg(const std::vector<Complex>& lambda,
                             const std::vector<Complex>& mu) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto take = [&](const Complex& z) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    };
    for (const Complex& z : lambda) take(z);
    for (const Complex& z : mu) take(z);
    double w = std::max(xmax - xmin, 1e-6), h = std::max(ymax - ymin, 1e-6);
    double pad = 0.1 * std::max(w, h);
    xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;
    w = xmax - xmin; h = ymax - ymin;

    const double side = 640.0;
    double scale = side / std::max(w, h);
    auto px = [&](double x) { return (x - xmin) * scale; };
    auto py = [&](double y) { return (ymax - y) * scale; };  // svg y grows downward
    double mark = 0.012 * side;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w * scale)
       << "\" height=\"" << num(h * scale) << "\" viewBox=\"0 0 " << num(w * scale) << " "
       << num(h * scale) << "\">\n";

    std::vector<Complex> hull = convex_hull(lambda);
    if (hull.size() >= 2) {
        os << "  <polyline fill=\"none\" stroke=\"#999999\" stroke-width=\"1.5\" points=\"";
        for (const Complex& z : hull) os << num(px(z.real())) << "," << num(py(z.imag())) << " ";
        os << num(px(hull.front().real())) << "," << num(py(hull.front().imag()));
        os << "\"/>\n";
    }
    for (const Complex& z : lambda)
        os << "  <circle cx=\"" << num(px(z.real())) << "\" cy=\"" << num(py(z.imag()))
           << "\" r=\"" << num(mark * 0.6) << "\" fill=\"#1f77b4\"/>\n";
    for (const Complex& z : mu) {
        double cx = px(z.real()), cy = py(z.imag());
        os << "  <path stroke=\"#d62728\" stroke-width=\"1.5\" d=\"M" << num(cx - mark) << " "
           << num(cy - mark) << " L" << num(cx + mark) << " " << num(cy + mark) << " M"
           << num(cx - mark) << " " << num(cy + mark) << " L" << num(cx + mark) << " "
           << num(cy - mark) << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace normaj::cli
