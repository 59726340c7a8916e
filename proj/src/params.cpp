#include "listdec/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace listdec {

EstimationParams::EstimationParams(double alpha, double tau, int k, int d, double big_c)
    : alpha_(alpha), tau_(tau), k_(k), d_(d), big_c_(big_c) {
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw std::invalid_argument("alpha must be in (0, 1/2], got " + std::to_string(alpha));
    if (!(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument("tau must be in (0, 1), got " + std::to_string(tau));
    if (k < 1 || k > d)
        throw std::invalid_argument("k must satisfy 1 <= k <= d");
    if (!(big_c > 0.0))
        throw std::invalid_argument("big_c must be positive");
    gamma_ = std::log((static_cast<double>(d) * k / alpha) * std::log(1.0 / tau));
    if (!(gamma_ > 0.0))
        throw std::invalid_argument("degenerate parameters: gamma = log((dk/alpha)*log(1/tau)) "
                                    "is not positive");
}

int64_t required_sample_size(const EstimationParams& params, double scale) {
    if (!(scale > 0.0))
        throw std::invalid_argument("scale must be positive");
    const double a = params.alpha();
    const double g = params.gamma();
    double value = scale * std::pow(a, -7.0) * std::pow(static_cast<double>(params.k()), 12.0) *
                   std::log(static_cast<double>(params.d()) / params.tau()) * std::pow(g, 4.0);
    double ceiled = std::ceil(value);
    if (!(ceiled < static_cast<double>(std::numeric_limits<int64_t>::max())))
        throw std::invalid_argument("required sample size overflows int64: " +
                                    std::to_string(value));
    return static_cast<int64_t>(ceiled);
}

} // namespace listdec
