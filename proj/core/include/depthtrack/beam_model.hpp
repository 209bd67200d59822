#pragma once

#include <numbers>

#include "depthtrack/depth_image.hpp"
#include "depthtrack/render.hpp"

namespace depthtrack {

/// Per-pixel depth likelihood: superposition of a uniform outlier term, an
/// exponential occlusion term and a normal surface-hit term.
struct BeamModelParams {
  double z_max = 4.0;        // maximum sensor range, meters
  double w_u = 0.1;          // outlier weight
  double w_e = 0.3;          // occlusion weight
  double w_n = 0.6;          // surface-hit weight
  double lambda_e = std::numbers::ln2;  // occluder likelihood halves per meter
  double k_noise = 0.002;    // quadratic noise growth, 1/m
  double sigma_base = 0.002; // floor of the noise model, meters
  // Ablation switch: cut the normal term off at the expected depth instead
  // of letting it decay toward the uniform floor behind the surface.
  bool truncate_normal_at_expected = false;

  bool valid() const {
    return z_max > 0.0 && w_u > 0.0 && w_e > 0.0 && w_n > 0.0 && lambda_e > 0.0 &&
           k_noise >= 0.0 && sigma_base > 0.0;
  }
};

/// Depth noise std: k * z*^2 + sigma_base.
inline double sigma_of_depth(double z_star, const BeamModelParams& p) {
  return p.k_noise * z_star * z_star + p.sigma_base;
}

/// Log likelihood of measuring depth z when depth z_star is expected.
/// z_star == 0 (no surface rendered) yields exactly 0; z == 0 (invalid
/// measurement) falls to the uniform term. Always finite: the uniform term
/// guarantees a floor of ln(w_u / z_max).
double pixel_loglik(double z, double z_star, const BeamModelParams& p);

/// Sum of pixel_loglik over the image, row-major fixed order.
/// Throws std::invalid_argument on dimension mismatch.
double image_loglik(const DepthImage& measured, const DepthImage& rendered,
                    const BeamModelParams& p);

/// image_loglik of the measured image against one tile of a render batch.
/// Pixels outside the tile's drawn bounds contribute exactly 0, so only the
/// bounded region is scanned; the result is bit-identical to image_loglik
/// on the extracted tile.
double image_loglik_tile(const DepthImage& measured, const RenderBatch& batch,
                         std::size_t tile, const BeamModelParams& p);

}  // namespace depthtrack
