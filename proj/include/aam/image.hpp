#ifndef AAM_IMAGE_HPP
#define AAM_IMAGE_HPP

#include <cstdint>
#include <vector>

namespace aam {

// Row-major 8-bit grayscale raster. The file-boundary representation.
struct ImageU8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    ImageU8() = default;
    ImageU8(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
};

// Row-major double raster used for all internal sampling and rendering.
struct ImageF64 {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    ImageF64() = default;
    ImageF64(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

    static ImageF64 from_u8(const ImageU8& img) {
        ImageF64 out(img.width, img.height);
        for (std::size_t i = 0; i < img.pixels.size(); ++i)
            out.pixels[i] = static_cast<double>(img.pixels[i]);
        return out;
    }

    ImageU8 to_u8() const;
};

struct BilinearSample {
    double value = 0.0;
    bool inside = false;     // false when the 2x2 support leaves the raster
    double dx = 0.0;         // derivative of the interpolant at the sample point
    double dy = 0.0;
};

// Bilinear interpolation at (x, y) with the interpolant's own derivative.
// The derivative is what finite differences of this function converge to,
// so downstream Jacobians built from it match FD oracles tightly.
BilinearSample sample_bilinear(const ImageF64& img, double x, double y);

// Box-filter 2x downsampling (average of 2x2 blocks; odd edges replicate).
ImageF64 downsample2(const ImageF64& img);

} // namespace aam

#endif
