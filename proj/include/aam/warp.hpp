#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "aam/frame.hpp"
#include "aam/image.hpp"
#include "aam/pdm.hpp"
#include "aam/shape.hpp"
#include "aam/triangulation.hpp"

namespace aam {

struct WarpResult {
    Eigen::VectorXd texture;          // length F; out-of-image samples read 0
    std::vector<std::uint8_t> valid;  // length F; 0 where the sample left the image
    int out_of_image = 0;

    bool all_valid() const { return out_of_image == 0; }
};

// Piecewise-affine warp: every masked frame pixel carries barycentric
// coordinates w.r.t. `dst`; the image is sampled bilinearly at the matching
// point of `src`. When dst is the frame's own reference shape the precomputed
// tables are used directly.
WarpResult warp_image(const ImageF64& image, const Shape& src, const Shape& dst,
                      const Triangulation& tri, const ReferenceFrame& frame);

// I[p] of the fitting cost: warp_image with src = shape_instance(pdm, p) and
// dst = the frame reference.
WarpResult sample_to_reference(const ImageF64& image, const Eigen::VectorXd& p,
                               const PointDistributionModel& pdm, const Triangulation& tri,
                               const ReferenceFrame& frame);

// dW/dp of the Lucas-Kanade framework, split into x and y position
// derivatives (each F x n_total). With frame-fixed barycentric transfer it is
// independent of p, so it is computed once and cached by the fitters.
struct WarpJacobian {
    Eigen::MatrixXd dx, dy;
};

WarpJacobian warp_jacobian(const PointDistributionModel& pdm, const Eigen::VectorXd& p,
                           const Triangulation& tri, const ReferenceFrame& frame);

enum class ComposeMode { forward, inverse };

// First-order landmark-level warp composition, re-projected onto the PDM
// basis: the incremental shape's displacement field (or its negation for
// inverse) is added to the current instance and the sum projected back to
// parameters.
Eigen::VectorXd compose_shapes(const PointDistributionModel& pdm, const Eigen::VectorXd& p_current,
                               const Eigen::VectorXd& delta_p, ComposeMode mode);

struct RenderStats {
    int degenerate_triangles = 0;
    int pixels_written = 0;
};

// Inverse direction: paint a reference-frame texture into image space under
// the instance shape. Pixels outside the instance hull keep their previous
// values in `out`.
RenderStats render_texture_to_image(const Eigen::VectorXd& texture, const Shape& instance,
                                    const Triangulation& tri, const ReferenceFrame& frame,
                                    ImageF64& out);

} // namespace aam
