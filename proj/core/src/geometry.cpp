#include "crowddet/geometry.hpp"

#include <algorithm>

namespace crowddet {

double area(const BBox& b) {
    return (b.x2 - b.x1) * (b.y2 - b.y1);
}

double iou(const BBox& a, const BBox& b) {
    const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    const double inter = iw * ih;
    const double uni = area(a) + area(b) - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

std::vector<double> pairwise_max_iou(const std::vector<BBox>& boxes) {
    const std::size_t n = boxes.size();
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = iou(boxes[i], boxes[j]);
            d[i] = std::max(d[i], v);
            d[j] = std::max(d[j], v);
        }
    }
    return d;
}

}  // namespace crowddet
