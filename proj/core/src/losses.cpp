#include "crowddet/losses.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crowddet/embedding.hpp"

namespace crowddet {

namespace {

constexpr double kProbEps = 1e-7;

void require_shape(const Grid& g, int rows, int cols, int channels, const char* what) {
    if (!g.same_shape(rows, cols, channels)) {
        throw std::invalid_argument(std::string("loss: predicted ") + what +
                                    " map does not match the target resolution");
    }
}

std::span<const double> embedding_at(const PredictedMaps& pred, const Cell& c) {
    const int m = pred.attribute.channels();
    return pred.attribute.data().subspan(
        (static_cast<std::size_t>(c.y) * pred.attribute.cols() + c.x) * m, m);
}

// Normalized embeddings at the object's positive cells plus their mean.
struct ObjectEmbeddings {
    std::vector<std::vector<double>> normalized;
    std::vector<double> mean;
};

ObjectEmbeddings gather_normalized(const PredictedMaps& pred, const ObjectTarget& obj) {
    ObjectEmbeddings out;
    const int m = pred.attribute.channels();
    out.mean.assign(m, 0.0);
    for (const Cell& c : obj.positives) {
        out.normalized.push_back(normalize(embedding_at(pred, c)));
        for (int i = 0; i < m; ++i) out.mean[i] += out.normalized.back()[i];
    }
    if (!out.normalized.empty()) {
        for (double& v : out.mean) v /= static_cast<double>(out.normalized.size());
    }
    return out;
}

}  // namespace

double smooth_l1(double x) {
    const double a = std::abs(x);
    return a < 1.0 ? 0.5 * x * x : a - 0.5;
}

double center_loss(const PredictedMaps& pred, const TargetMaps& targets, const LossWeights& weights,
                   bool* no_objects_warning) {
    const int rows = targets.center.rows();
    const int cols = targets.center.cols();
    require_shape(pred.center, rows, cols, 1, "center");

    const std::size_t k = targets.objects.size();
    if (no_objects_warning) *no_objects_warning = (k == 0);
    if (k == 0) return 0.0;

    double sum = 0.0;
    for (int y = 0; y < rows; ++y) {
        for (int x = 0; x < cols; ++x) {
            const double p = pred.center.at(y, x);
            const bool positive = targets.center.at(y, x) != 0;
            double p_hat = positive ? p : 1.0 - p;
            p_hat = std::min(1.0, std::max(kProbEps, p_hat));
            const double alpha = positive ? 1.0 : std::pow(1.0 - targets.gaussian.at(y, x), weights.beta);
            sum += alpha * std::pow(1.0 - p_hat, weights.gamma) * std::log(p_hat);
        }
    }
    return -sum / static_cast<double>(k);
}

double scale_loss(const PredictedMaps& pred, const TargetMaps& targets) {
    const int rows = targets.scale.rows();
    const int cols = targets.scale.cols();
    const int ch = targets.scale.channels();
    require_shape(pred.scale, rows, cols, ch, "scale");
    if (targets.objects.empty()) return 0.0;

    double sum = 0.0;
    for (const ObjectTarget& obj : targets.objects) {
        if (obj.scale_cells.empty()) continue;
        double obj_sum = 0.0;
        for (const Cell& c : obj.scale_cells) {
            for (int i = 0; i < ch; ++i) {
                obj_sum += smooth_l1(pred.scale.at(c.y, c.x, i) - targets.scale.at(c.y, c.x, i));
            }
        }
        sum += obj_sum / static_cast<double>(obj.scale_cells.size());
    }
    return sum / static_cast<double>(targets.objects.size());
}

double offset_loss(const PredictedMaps& pred, const TargetMaps& targets) {
    const int rows = targets.offset.rows();
    const int cols = targets.offset.cols();
    require_shape(pred.offset, rows, cols, 2, "offset");
    if (targets.objects.empty()) return 0.0;

    double sum = 0.0;
    for (const ObjectTarget& obj : targets.objects) {
        if (obj.regression_cells.empty()) continue;
        double obj_sum = 0.0;
        for (const Cell& c : obj.regression_cells) {
            obj_sum += smooth_l1(pred.offset.at(c.y, c.x, 0) - targets.offset.at(c.y, c.x, 0));
            obj_sum += smooth_l1(pred.offset.at(c.y, c.x, 1) - targets.offset.at(c.y, c.x, 1));
        }
        sum += obj_sum / static_cast<double>(obj.regression_cells.size());
    }
    return sum / static_cast<double>(targets.objects.size());
}

double density_loss(const PredictedMaps& pred, const TargetMaps& targets) {
    if (targets.objects.empty()) return 0.0;
    if (pred.attribute.rows() != targets.center.rows() || pred.attribute.cols() != targets.center.cols()) {
        throw std::invalid_argument("loss: predicted attribute map does not match the target resolution");
    }
    double sum = 0.0;
    for (const ObjectTarget& obj : targets.objects) {
        for (const Cell& c : obj.positives) {
            sum += smooth_l1(density_of(embedding_at(pred, c)) - obj.density);
        }
    }
    return sum / static_cast<double>(targets.objects.size());
}

double diversity_loss(const PredictedMaps& pred, const TargetMaps& targets, double delta) {
    if (targets.objects.empty()) return 0.0;
    if (pred.attribute.rows() != targets.center.rows() || pred.attribute.cols() != targets.center.cols()) {
        throw std::invalid_argument("loss: predicted attribute map does not match the target resolution");
    }
    const std::size_t n = targets.objects.size();
    const int m = pred.attribute.channels();

    std::vector<ObjectEmbeddings> per_object;
    per_object.reserve(n);
    for (const ObjectTarget& obj : targets.objects) per_object.push_back(gather_normalized(pred, obj));

    // Dispersion: hinge on the l1 distance between mean embeddings, ordered pairs.
    double l1 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            double d = 0.0;
            for (int i = 0; i < m; ++i) d += std::abs(per_object[k].mean[i] - per_object[j].mean[i]);
            l1 += std::max(0.0, delta - d);
        }
    }

    // Gathering: squared l2 spread of each object's copies around their mean.
    double l2 = 0.0;
    for (const ObjectEmbeddings& oe : per_object) {
        for (const std::vector<double>& e : oe.normalized) {
            for (int i = 0; i < m; ++i) {
                const double d = e[i] - oe.mean[i];
                l2 += d * d;
            }
        }
    }
    l2 /= static_cast<double>(n);

    return l1 + l2;
}

double attribute_loss(const PredictedMaps& pred, const TargetMaps& targets, const LossWeights& weights) {
    return weights.lambda_density * density_loss(pred, targets) +
           diversity_loss(pred, targets, weights.delta);
}

LossBreakdown joint_loss(const PredictedMaps& pred, const TargetMaps& targets, const LossWeights& weights) {
    LossBreakdown out;
    out.center = center_loss(pred, targets, weights, &out.no_objects);
    out.scale = scale_loss(pred, targets);
    out.offset = offset_loss(pred, targets);
    out.density = density_loss(pred, targets);
    out.diversity = diversity_loss(pred, targets, weights.delta);
    out.attribute = weights.lambda_density * out.density + out.diversity;
    out.total = weights.lambda_center * out.center + weights.lambda_scale * out.scale +
                weights.lambda_offset * out.offset + weights.lambda_attribute * out.attribute;
    return out;
}

}  // namespace crowddet
