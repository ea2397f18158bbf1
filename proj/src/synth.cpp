#include "aam/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aam/errors.hpp"
#include "aam/rng.hpp"

namespace aam {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Signed pixel distances; negative inside.
double disk_dist(const Vec2& u, const Vec2& c, double r) { return (u - c).norm() - r; }

double ellipse_dist(const Vec2& u, const Vec2& c, double a, double b) {
    double nx = (u.x - c.x) / a, ny = (u.y - c.y) / b;
    return (std::sqrt(nx * nx + ny * ny) - 1.0) * std::min(a, b);
}

double segment_dist(const Vec2& u, const Vec2& p, const Vec2& q) {
    Vec2 d = q - p;
    double len2 = d.dot(d);
    double t = (len2 > 0.0) ? clamp01((u - p).dot(d) / len2) : 0.0;
    return (u - (p + d * t)).norm();
}

// Soft coverage from a signed distance; ~1 inside, ~0 outside, smooth edge.
double alpha_of(double d, double softness = 1.2) { return 1.0 / (1.0 + std::exp(d / softness)); }

double mix(double under, double over, double alpha) { return under + (over - under) * alpha; }

// All anchors the painter and the landmarks share, in unposed pixel coords.
struct FaceGeometry {
    double res, cx, cy, W, H;
    Vec2 eye_l, eye_r; // centers
    double eye_hw, eye_ry;
    Vec2 brow_l, brow_r; // mid-brow anchors
    double brow_hw, brow_arch;
    Vec2 nose;
    Vec2 mouth;
    double mouth_rx, mouth_ry;
    double jaw_w, jaw_h;
    Shape landmarks;
};

FaceGeometry make_geometry(const SynthParams& prm, std::uint64_t seed) {
    FaceGeometry g;
    g.res = prm.resolution;
    g.cx = 0.5 * g.res;
    g.cy = 0.5 * g.res;
    g.H = 0.33 * g.res;
    g.W = 0.27 * g.res * (1.0 + 0.04 * prm.identity);

    // Small smooth per-face variation beyond the explicit knobs.
    Rng rng(seed);
    const double j = 0.004 * g.res;
    auto jit = [&]() { return rng.uniform(-j, j); };
    g.jaw_w = g.W * (1.0 + rng.uniform(-0.008, 0.008));
    g.jaw_h = 0.97 * g.H * (1.0 + rng.uniform(-0.008, 0.008));
    Vec2 jl{jit(), jit()}, jr{jit(), jit()}, jbl{jit(), jit()}, jbr{jit(), jit()};
    Vec2 jn{jit(), jit()}, jm{jit(), jit()};

    const double e = prm.expression;
    double ey = g.cy - 0.25 * g.H;
    double ex = 0.42 * g.W;
    g.eye_hw = 0.20 * g.W;
    g.eye_ry = 0.085 * g.H;
    g.eye_l = Vec2{g.cx - ex, ey} + jl;
    g.eye_r = Vec2{g.cx + ex, ey} + jr;

    g.brow_hw = 0.24 * g.W;
    g.brow_arch = 0.025 * g.H;
    double by = ey - 0.16 * g.H - 0.02 * g.H * e;
    g.brow_l = Vec2{g.eye_l.x, by} + jbl;
    g.brow_r = Vec2{g.eye_r.x, by} + jbr;

    g.nose = Vec2{g.cx, g.cy} + jn;
    g.mouth = Vec2{g.cx, g.cy + 0.55 * g.H} + jm;
    g.mouth_rx = g.W * (0.30 - 0.03 * e);
    g.mouth_ry = g.H * (0.09 + 0.065 * e);

    Shape& s = g.landmarks;
    s.points.reserve(kSynthLandmarks);
    for (int i = 0; i <= 8; ++i) { // jaw
        double ang = kPi * i / 8.0;
        s.points.push_back({g.cx - g.jaw_w * std::cos(ang), g.cy + g.jaw_h * std::sin(ang)});
    }
    for (const Vec2* b : {&g.brow_l, &g.brow_r}) { // brows
        s.points.push_back({b->x - g.brow_hw, b->y});
        s.points.push_back({b->x, b->y - g.brow_arch});
        s.points.push_back({b->x + g.brow_hw, b->y});
    }
    s.points.push_back(g.eye_l + Vec2{-g.eye_hw, 0.0}); // eyes
    s.points.push_back(g.eye_l);
    s.points.push_back(g.eye_l + Vec2{g.eye_hw, 0.0});
    s.points.push_back(g.eye_r + Vec2{-g.eye_hw, 0.0});
    s.points.push_back(g.eye_r);
    s.points.push_back(g.eye_r + Vec2{g.eye_hw, 0.0});
    s.points.push_back(g.nose + Vec2{0.0, -0.02 * g.H}); // nose
    s.points.push_back(g.nose + Vec2{-0.10 * g.W, 0.22 * g.H});
    s.points.push_back(g.nose + Vec2{0.0, 0.26 * g.H});
    s.points.push_back(g.nose + Vec2{0.10 * g.W, 0.22 * g.H});
    s.points.push_back(g.mouth + Vec2{-g.mouth_rx, 0.0}); // mouth
    s.points.push_back(g.mouth + Vec2{0.0, -g.mouth_ry});
    s.points.push_back(g.mouth + Vec2{g.mouth_rx, 0.0});
    s.points.push_back(g.mouth + Vec2{0.0, g.mouth_ry});
    return g;
}

// Continuous gray field at an unposed position.
double field_at(const FaceGeometry& g, const SynthParams& prm, const Vec2& u) {
    double v = 42.0 + 20.0 * (u.y / g.res); // backdrop gradient

    double head_d = ellipse_dist(u, {g.cx, g.cy + 0.02 * g.H}, 1.12 * g.W, 1.10 * g.H);
    double head_a = alpha_of(head_d, 1.4);
    double face = 172.0 + 30.0 * prm.illumination * (u.x - g.cx) / g.W - 6.0 * (u.y - g.cy) / g.H;
    v = mix(v, std::min(250.0, std::max(30.0, face)), head_a);

    auto paint = [&](double d, double color, double soft = 1.1) {
        v = mix(v, color, alpha_of(d, soft) * head_a);
    };

    const Shape& s = g.landmarks;
    double brow_r = 0.030 * g.H;
    paint(std::min(segment_dist(u, s[9], s[10]), segment_dist(u, s[10], s[11])) - brow_r, 58.0);
    paint(std::min(segment_dist(u, s[12], s[13]), segment_dist(u, s[13], s[14])) - brow_r, 58.0);

    paint(ellipse_dist(u, g.eye_l, 1.08 * g.eye_hw, g.eye_ry), 45.0);
    paint(ellipse_dist(u, g.eye_r, 1.08 * g.eye_hw, g.eye_ry), 45.0);

    paint(segment_dist(u, s[21], g.nose + Vec2{0.0, 0.18 * g.H}) - 0.045 * g.W, 150.0, 1.6);
    paint(disk_dist(u, s[22], 0.030 * g.W), 110.0);
    paint(disk_dist(u, s[24], 0.030 * g.W), 110.0);
    paint(disk_dist(u, s[23], 0.028 * g.W), 132.0);

    paint(ellipse_dist(u, g.mouth, g.mouth_rx, g.mouth_ry), 64.0);
    return v;
}

} // namespace

AnnotatedImage synth_face(const SynthParams& prm, std::uint64_t seed) {
    if (prm.resolution < 32) throw ConfigError("synthetic face resolution must be >= 32");

    FaceGeometry g = make_geometry(prm, seed);
    const int res = prm.resolution;
    const Vec2 center{0.5 * res, 0.5 * res};
    const Vec2 delta{prm.pose_dx, prm.pose_dy};
    const bool translation_only = prm.pose_scale == 1.0 && prm.pose_theta == 0.0;
    const double ct = std::cos(prm.pose_theta), st = std::sin(prm.pose_theta);

    AnnotatedImage rec;
    rec.source_path = "synth:" + std::to_string(seed);
    rec.image = ImageU8(res, res);
    for (int y = 0; y < res; ++y) {
        for (int x = 0; x < res; ++x) {
            Vec2 p{static_cast<double>(x), static_cast<double>(y)};
            Vec2 u;
            if (translation_only) {
                u = p - delta;
            } else {
                Vec2 q = (p - center - delta) * (1.0 / prm.pose_scale);
                u = center + Vec2{ct * q.x + st * q.y, -st * q.x + ct * q.y};
            }
            double v = field_at(g, prm, u);
            rec.image.at(x, y) = static_cast<std::uint8_t>(std::lround(std::min(255.0, std::max(0.0, v))));
        }
    }

    rec.shape = g.landmarks;
    for (Vec2& p : rec.shape.points) {
        if (translation_only) {
            p = p + delta; // exact: the pose knob is literally added
        } else {
            Vec2 q = (p - center) * prm.pose_scale;
            p = center + Vec2{ct * q.x - st * q.y, st * q.x + ct * q.y} + delta;
        }
    }

    double x0, y0, x1, y1;
    rec.shape.bounding_box(x0, y0, x1, y1);
    double mx = 0.08 * (x1 - x0), my = 0.08 * (y1 - y0);
    rec.bbox = FaceBox{x0 - mx, y0 - my, (x1 - x0) + 2.0 * mx, (y1 - y0) + 2.0 * my};
    return rec;
}

SynthCorpus synth_corpus(int n, std::uint64_t seed, int resolution) {
    if (n <= 0) throw ConfigError("corpus size must be positive");
    SynthCorpus c;
    for (int i = 0; i < n; ++i) {
        Rng rng = Rng::fork(seed, static_cast<std::uint64_t>(i));
        SynthParams prm;
        prm.resolution = resolution;
        prm.expression = rng.uniform(-1.0, 1.0);
        prm.identity = rng.uniform(-1.0, 1.0);
        prm.illumination = 0.6 * rng.uniform(-1.0, 1.0);
        prm.pose_dx = rng.uniform(-3.0, 3.0);
        prm.pose_dy = rng.uniform(-3.0, 3.0);
        prm.pose_scale = 1.0 + rng.uniform(-0.04, 0.04);
        prm.pose_theta = rng.uniform(-0.06, 0.06);
        std::uint64_t jitter_seed =
            (seed ^ 0xa0761d6478bd642fULL) + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1);
        AnnotatedImage rec = synth_face(prm, jitter_seed);
        rec.source_path = "synth:" + std::to_string(seed) + ":" + std::to_string(i);
        c.records.push_back(std::move(rec));
        c.expression.push_back(prm.expression);
        c.identity.push_back(prm.identity);
        c.illumination.push_back(prm.illumination);
    }
    return c;
}

} // namespace aam
