#include "aam/image.hpp"

#include <algorithm>
#include <cmath>

namespace aam {

ImageU8 ImageF64::to_u8() const {
    ImageU8 out(width, height);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        double v = std::round(pixels[i]);
        out.pixels[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
    return out;
}

BilinearSample sample_bilinear(const ImageF64& img, double x, double y) {
    BilinearSample s;
    int x0 = static_cast<int>(std::floor(x));
    int y0 = static_cast<int>(std::floor(y));
    if (x0 < 0 || y0 < 0 || x0 + 1 >= img.width || y0 + 1 >= img.height) {
        // Exact grid points on the far edge still have full support.
        if (x >= 0.0 && y >= 0.0 && x <= img.width - 1.0 && y <= img.height - 1.0) {
            int xi = std::min(x0, img.width - 2);
            int yi = std::min(y0, img.height - 2);
            if (xi >= 0 && yi >= 0) {
                double fx = x - xi, fy = y - yi;
                double v00 = img.at(xi, yi), v10 = img.at(xi + 1, yi);
                double v01 = img.at(xi, yi + 1), v11 = img.at(xi + 1, yi + 1);
                s.value = (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 + (1 - fx) * fy * v01 + fx * fy * v11;
                s.dx = (1 - fy) * (v10 - v00) + fy * (v11 - v01);
                s.dy = (1 - fx) * (v01 - v00) + fx * (v11 - v10);
                s.inside = true;
            }
        }
        return s;
    }
    double fx = x - x0, fy = y - y0;
    double v00 = img.at(x0, y0), v10 = img.at(x0 + 1, y0);
    double v01 = img.at(x0, y0 + 1), v11 = img.at(x0 + 1, y0 + 1);
    s.value = (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 + (1 - fx) * fy * v01 + fx * fy * v11;
    s.dx = (1 - fy) * (v10 - v00) + fy * (v11 - v01);
    s.dy = (1 - fx) * (v01 - v00) + fx * (v11 - v10);
    s.inside = true;
    return s;
}

ImageF64 downsample2(const ImageF64& img) {
    int w = (img.width + 1) / 2;
    int h = (img.height + 1) / 2;
    ImageF64 out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int x0 = 2 * x, y0 = 2 * y;
            int x1 = std::min(x0 + 1, img.width - 1);
            int y1 = std::min(y0 + 1, img.height - 1);
            out.at(x, y) = 0.25 * (img.at(x0, y0) + img.at(x1, y0) + img.at(x0, y1) + img.at(x1, y1));
        }
    }
    return out;
}

} // namespace aam
