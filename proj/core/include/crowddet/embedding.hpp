#pragma once

#include <span>
#include <vector>

namespace crowddet {

/// Vector calculus on attribute embeddings. An embedding is an m-dimensional
/// real vector (m >= 2, default 4): its Euclidean norm encodes crowd density
/// and the angle between two embeddings encodes identity diversity, so
/// ||a* - b*||^2 = 2 - 2 cos(angle(a, b)) for the normalized vectors a*, b*.
/// Norms above 1 are passed through unchanged; consumers clamp where needed.

/// Density readout: the Euclidean norm of the embedding.
double density_of(std::span<const double> e);

/// e / ||e||. Throws std::invalid_argument when ||e|| <= 1e-12 (a degenerate
/// embedding carries no identity direction).
std::vector<double> normalize(std::span<const double> e);

/// ||a* - b*||_2 for the normalized inputs, in [0, 2]. Scale-invariant.
/// Throws on zero-norm input, same as normalize().
double dist(std::span<const double> a, std::span<const double> b);

}  // namespace crowddet
