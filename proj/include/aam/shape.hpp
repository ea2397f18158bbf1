#ifndef AAM_SHAPE_HPP
#define AAM_SHAPE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "aam/errors.hpp"

namespace aam {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

inline double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Ordered 2-D landmark list. Ordering is fixed by the annotation scheme and
// preserved by every operation in the library.
struct Shape {
    std::vector<Vec2> points;

    Shape() = default;
    explicit Shape(std::vector<Vec2> pts) : points(std::move(pts)) {}

    int size() const { return static_cast<int>(points.size()); }

    const Vec2& operator[](int i) const { return points[static_cast<std::size_t>(i)]; }
    Vec2& operator[](int i) { return points[static_cast<std::size_t>(i)]; }

    // Interleaved vector form [x0, y0, x1, y1, ...].
    Eigen::VectorXd to_vector() const {
        Eigen::VectorXd v(2 * size());
        for (int i = 0; i < size(); ++i) {
            v[2 * i] = points[static_cast<std::size_t>(i)].x;
            v[2 * i + 1] = points[static_cast<std::size_t>(i)].y;
        }
        return v;
    }

    static Shape from_vector(const Eigen::VectorXd& v) {
        if (v.size() % 2 != 0) throw DimensionError("shape vector length must be even");
        Shape s;
        s.points.resize(static_cast<std::size_t>(v.size() / 2));
        for (int i = 0; i < s.size(); ++i) {
            s.points[static_cast<std::size_t>(i)] = {v[2 * i], v[2 * i + 1]};
        }
        return s;
    }

    Vec2 centroid() const {
        Vec2 c;
        for (const auto& p : points) c = c + p;
        return c * (1.0 / static_cast<double>(points.size()));
    }

    // Frobenius norm of the centered configuration.
    double centroid_size() const {
        Vec2 c = centroid();
        double s2 = 0.0;
        for (const auto& p : points) {
            Vec2 d = p - c;
            s2 += d.dot(d);
        }
        return std::sqrt(s2);
    }

    bool all_finite() const {
        for (const auto& p : points)
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
        return true;
    }

    void bounding_box(double& xmin, double& ymin, double& xmax, double& ymax) const {
        xmin = ymin = 1e300;
        xmax = ymax = -1e300;
        for (const auto& p : points) {
            xmin = std::min(xmin, p.x);
            ymin = std::min(ymin, p.y);
            xmax = std::max(xmax, p.x);
            ymax = std::max(ymax, p.y);
        }
    }
};

inline void require_same_landmarks(const Shape& a, const Shape& b, const char* what) {
    if (a.size() != b.size())
        throw ShapeMismatchError(std::string(what) + ": landmark counts differ (" +
                                 std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

} // namespace aam

#endif
