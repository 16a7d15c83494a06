#pragma once

#include "mincost/dataset.hpp"

namespace mincost {

// Posterior-mean denoiser for the uniform-on-points prior with isotropic
// Gaussian noise of scale sigma: softmax-weighted average of the points.
Vec emmse_denoise(const CleanDataset& ds, const Vec& y, double sigma);

// Low-noise limit: the nearest clean point (ties -> lowest index).
Vec nn1_denoise(const CleanDataset& ds, const Vec& y);

}  // namespace mincost
