#include "listdec/hard_threshold.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace listdec {

Eigen::VectorXd hard_threshold(const Eigen::VectorXd& v, int k) {
    const int d = static_cast<int>(v.size());
    if (k < 1 || k > d)
        throw std::invalid_argument("hard_threshold: k must satisfy 1 <= k <= d");
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    auto better = [&](int a, int b) {
        double ma = std::abs(v[a]), mb = std::abs(v[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    };
    std::nth_element(order.begin(), order.begin() + (k - 1), order.end(), better);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < k; ++i) out[order[i]] = v[order[i]];
    return out;
}

} // namespace listdec
