#pragma once

#include "crowddet/grid.hpp"
#include "crowddet/targets.hpp"

namespace crowddet {

/// Predicted maps for one image, all at the target-map resolution.
/// center: probabilities in [0,1]; scale: 1 or 2 channels matching the
/// targets; offset: 2 channels; attribute: m-dimensional embeddings (m >= 2).
struct PredictedMaps {
    Grid center;
    Grid scale;
    Grid offset;
    Grid attribute;

    int embedding_dim() const { return attribute.channels(); }
};

/// Loss hyper-parameters. Defaults follow the training configuration the
/// objectives were designed with.
struct LossWeights {
    double lambda_center = 0.01;
    double lambda_scale = 1.0;
    double lambda_offset = 0.03;
    double lambda_attribute = 0.01;
    double lambda_density = 5.0;
    double delta = 1.0;   // diversity hinge margin
    double gamma = 2.0;   // focal exponent
    double beta = 4.0;    // penalty-mask exponent
};

struct LossBreakdown {
    double center = 0.0;
    double scale = 0.0;
    double offset = 0.0;
    double density = 0.0;
    double diversity = 0.0;
    double attribute = 0.0;
    double total = 0.0;
    bool no_objects = false;  // center loss evaluated on an empty scene
};

/// SmoothL1: 0.5 x^2 for |x| < 1, |x| - 0.5 otherwise.
double smooth_l1(double x);

/// Penalty-reduced focal loss over the center map:
///   -(1/K) sum_ij alpha_ij (1 - p^_ij)^gamma log(p^_ij)
/// with p^ = p at positives and 1-p at negatives, alpha = 1 at positives and
/// (1 - M_ij)^beta at negatives, K = number of objects. Probabilities are
/// clamped to [1e-7, 1] before the log so the loss is total and exactly zero
/// for a perfect prediction. K = 0 returns 0 and sets *no_objects_warning.
double center_loss(const PredictedMaps& pred, const TargetMaps& targets, const LossWeights& weights,
                   bool* no_objects_warning = nullptr);

/// Mean over objects of the per-object mean SmoothL1 on the assigned scale
/// cells (channels summed). Cells outside the validity mask never contribute.
double scale_loss(const PredictedMaps& pred, const TargetMaps& targets);

/// As scale_loss over the offset cells, SmoothL1 summed over the two
/// components.
double offset_loss(const PredictedMaps& pred, const TargetMaps& targets);

/// (1/N) sum_k sum_i SmoothL1(||e_{k,i}|| - d_k) over each object's positive
/// cells. 0 when the scene is empty.
double density_loss(const PredictedMaps& pred, const TargetMaps& targets);

/// Dispersion + gathering on normalized embeddings:
///   L1 = sum over ordered pairs (k, j != k) of max(0, delta - ||e*_k - e*_j||_1)
///   L2 = (1/N) sum_k sum_i ||e*_{k,i} - e*_k||_2^2
/// where e*_k is the mean of object k's normalized embeddings. Throws when a
/// positive cell holds a zero-norm embedding.
double diversity_loss(const PredictedMaps& pred, const TargetMaps& targets, double delta = 1.0);

/// lambda_density * density_loss + diversity_loss.
double attribute_loss(const PredictedMaps& pred, const TargetMaps& targets, const LossWeights& weights);

/// Weighted sum of all four objectives plus the per-term breakdown.
LossBreakdown joint_loss(const PredictedMaps& pred, const TargetMaps& targets, const LossWeights& weights);

}  // namespace crowddet
