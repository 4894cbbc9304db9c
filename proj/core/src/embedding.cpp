#include "crowddet/embedding.hpp"

#include <cmath>
#include <stdexcept>

namespace crowddet {

namespace {
constexpr double kZeroNormEps = 1e-12;
}

double density_of(std::span<const double> e) {
    double s = 0.0;
    for (double v : e) s += v * v;
    return std::sqrt(s);
}

std::vector<double> normalize(std::span<const double> e) {
    const double n = density_of(e);
    if (n <= kZeroNormEps) {
        throw std::invalid_argument("normalize: zero-norm embedding is degenerate");
    }
    std::vector<double> out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = e[i] / n;
    return out;
}

double dist(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dist: embedding dimensions differ");
    }
    const std::vector<double> an = normalize(a);
    const std::vector<double> bn = normalize(b);
    double s = 0.0;
    for (std::size_t i = 0; i < an.size(); ++i) {
        const double d = an[i] - bn[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace crowddet
