#pragma once

#include <stdexcept>
#include <vector>

namespace crowddet {

/// Axis-aligned box in pixel coordinates, corner form with x1 <= x2 and y1 <= y2.
/// Zero-area boxes are allowed; negative extents are rejected at construction.
struct BBox {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;

    BBox() = default;
    BBox(double x1_, double y1_, double x2_, double y2_) : x1(x1_), y1(y1_), x2(x2_), y2(y2_) {
        if (x2 < x1 || y2 < y1) {
            throw std::invalid_argument("BBox: negative extent (x2 < x1 or y2 < y1)");
        }
    }

    double width() const { return x2 - x1; }
    double height() const { return y2 - y1; }
    double center_x() const { return 0.5 * (x1 + x2); }
    double center_y() const { return 0.5 * (y1 + y2); }

    BBox translated(double dx, double dy) const { return BBox(x1 + dx, y1 + dy, x2 + dx, y2 + dy); }

    bool operator==(const BBox&) const = default;
};

/// Box area, (x2-x1)*(y2-y1). Never negative for a valid box.
double area(const BBox& b);

/// Intersection over union in [0, 1]. Defined as 0 when the union has zero
/// area (two degenerate boxes), so the function is total on valid boxes.
double iou(const BBox& a, const BBox& b);

/// d_i = max_{j != i} iou(b_i, b_j); 0 for a single box (empty max).
/// The crowd-density value attached to every ground-truth box.
std::vector<double> pairwise_max_iou(const std::vector<BBox>& boxes);

}  // namespace crowddet
