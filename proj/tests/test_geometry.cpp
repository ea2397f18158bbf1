#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "aam/errors.hpp"
#include "aam/frame.hpp"
#include "aam/pdm.hpp"
#include "aam/procrustes.hpp"
#include "aam/rng.hpp"
#include "aam/triangulation.hpp"
#include "aam/warp.hpp"

using namespace aam;

namespace {

// Andrew monotone chain, used as an independent hull oracle.
int convex_hull_vertex_count(const Shape& s) {
    std::vector<Vec2> pts = s.points;
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    int n = static_cast<int>(pts.size());
    if (n < 3) return n;
    std::vector<Vec2> hull(static_cast<std::size_t>(2 * n));
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    return k - 1;
}

double hull_area(const Shape& s) {
    std::vector<Vec2> pts = s.points;
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    int n = static_cast<int>(pts.size());
    std::vector<Vec2> hull(static_cast<std::size_t>(2 * n));
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    double a = 0.0;
    for (int i = 0; i < k - 1; ++i) a += cross2(hull[static_cast<std::size_t>(i)], hull[static_cast<std::size_t>(i + 1)]);
    a += cross2(hull[static_cast<std::size_t>(k - 1)], hull[0]);
    return 0.5 * std::abs(a);
}

Shape random_point_cloud(int v, std::uint64_t seed) {
    Rng rng(seed);
    Shape s;
    for (int i = 0; i < v; ++i) s.points.push_back({rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)});
    return s;
}

// Small PDM-on-a-frame fixture shared by the warp tests: 12 landmarks on a
// ring plus jittered copies for the training set.
struct Fixture {
    std::vector<Shape> aligned;
    PointDistributionModel pdm;
    Triangulation tri;
    ReferenceFrame frame;

    explicit Fixture(int n_train = 12, std::uint64_t seed = 3) {
        Rng rng(seed);
        std::vector<Shape> raw;
        for (int j = 0; j < n_train; ++j) {
            Shape s;
            for (int i = 0; i < 12; ++i) {
                double a = 2.0 * 3.14159265358979323846 * i / 12.0;
                double r = 40.0 + rng.uniform(-3.0, 3.0);
                s.points.push_back({64.0 + r * std::cos(a), 64.0 + 0.8 * r * std::sin(a)});
            }
            // one interior landmark keeps the triangulation non-trivial
            s.points.push_back({64.0 + rng.uniform(-2.0, 2.0), 64.0 + rng.uniform(-2.0, 2.0)});
            raw.push_back(s);
        }
        ProcrustesResult pr = procrustes_align(raw);
        aligned = pr.aligned;
        pdm = build_pdm(aligned, 4);
        tri = delaunay_triangulate(pdm.mean_shape);
        frame = build_reference_frame(pdm.mean_shape, tri, 48, 2.0);
    }
};

} // namespace

TEST_CASE("three points make one triangle") {
    Shape s(std::vector<Vec2>{{0, 0}, {4, 0}, {1, 3}});
    Triangulation t = delaunay_triangulate(s);
    REQUIRE(t.size() == 1);
    CHECK(t.triangles[0][0] == 0);
    std::set<int> idx(t.triangles[0].begin(), t.triangles[0].end());
    CHECK(idx == std::set<int>({0, 1, 2}));
    CHECK(t.boundary_edges().size() == 3);
}

TEST_CASE("a square splits into two triangles sharing a diagonal") {
    Shape s(std::vector<Vec2>{{0, 0}, {10, 0}, {10, 10}, {0, 10}});
    Triangulation t = delaunay_triangulate(s);
    REQUIRE(t.size() == 2);
    std::set<int> all;
    for (const auto& tr : t.triangles) all.insert(tr.begin(), tr.end());
    CHECK(all == std::set<int>({0, 1, 2, 3}));
    CHECK(t.boundary_edges().size() == 4); // the diagonal is interior
}

TEST_CASE("collinear input raises a degenerate-geometry error") {
    Shape s(std::vector<Vec2>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    CHECK_THROWS_AS(delaunay_triangulate(s), DegenerateGeometryError);
    Shape two(std::vector<Vec2>{{0, 0}, {1, 1}});
    CHECK_THROWS_AS(delaunay_triangulate(two), DegenerateGeometryError);
}

TEST_CASE("triangle count follows Euler's formula against a hull oracle") {
    for (std::uint64_t seed : {11u, 29u, 68u, 101u}) {
        Shape s = random_point_cloud(seed == 68u ? 68 : 30, seed);
        Triangulation t = delaunay_triangulate(s);
        int h = convex_hull_vertex_count(s);
        CHECK(t.size() == 2 * s.size() - 2 - h);

        // triangles tile the hull: areas sum to the hull area, none degenerate
        double area = 0.0;
        for (const auto& tr : t.triangles) {
            double a = triangle_area(s[tr[0]], s[tr[1]], s[tr[2]]);
            CHECK(std::abs(a) > 1e-9);
            area += std::abs(a);
        }
        CHECK(area == doctest::Approx(hull_area(s)).epsilon(1e-9));
    }
}

TEST_CASE("triangulation is deterministic") {
    Shape s = random_point_cloud(40, 5);
    Triangulation a = delaunay_triangulate(s);
    Triangulation b = delaunay_triangulate(s);
    CHECK(a.triangles == b.triangles);
}

TEST_CASE("barycentric coordinates invert the affine map") {
    Vec2 a{0, 0}, b{5, 1}, c{2, 6};
    Vec2 p = a * 0.2 + b * 0.5 + c * 0.3;
    auto w = barycentric(p, a, b, c);
    CHECK(w[0] == doctest::Approx(0.2));
    CHECK(w[1] == doctest::Approx(0.5));
    CHECK(w[2] == doctest::Approx(0.3));
    CHECK(w[0] + w[1] + w[2] == doctest::Approx(1.0));
}

TEST_CASE("reference frame tables form a bijection over the mask") {
    Fixture fx;
    const ReferenceFrame& f = fx.frame;
    REQUIRE(f.size() > 100);
    std::set<int> seen;
    for (int i = 0; i < f.size(); ++i) {
        CHECK(f.inside(f.px[static_cast<std::size_t>(i)], f.py[static_cast<std::size_t>(i)]));
        CHECK(f.index_at(f.px[static_cast<std::size_t>(i)], f.py[static_cast<std::size_t>(i)]) == i);
        seen.insert(i);
        const auto& w = f.bary[static_cast<std::size_t>(i)];
        CHECK(w[0] + w[1] + w[2] == doctest::Approx(1.0));
        // table entry reproduces the pixel position from the reference shape
        const auto& tr = fx.tri.triangles[static_cast<std::size_t>(f.tri_index[static_cast<std::size_t>(i)])];
        Vec2 q = f.reference[tr[0]] * w[0] + f.reference[tr[1]] * w[1] + f.reference[tr[2]] * w[2];
        CHECK(q.x == doctest::Approx(f.px[static_cast<std::size_t>(i)]).epsilon(1e-9));
        CHECK(q.y == doctest::Approx(f.py[static_cast<std::size_t>(i)]).epsilon(1e-9));
    }
    CHECK(static_cast<int>(seen.size()) == f.size());

    // the scaled reference respects the margin
    double xmin, ymin, xmax, ymax;
    f.reference.bounding_box(xmin, ymin, xmax, ymax);
    CHECK(xmin >= 2.0 - 1e-9);
    CHECK(ymin >= 2.0 - 1e-9);
    CHECK(xmax <= f.width - 3.0 + 1e-9);
    CHECK(ymax <= f.height - 3.0 + 1e-9);
}

TEST_CASE("identity warp reproduces the image over the mask exactly") {
    Fixture fx;
    Rng rng(99);
    ImageF64 img(48, 48);
    for (double& p : img.pixels) p = rng.uniform(0.0, 255.0);

    WarpResult w = warp_image(img, fx.frame.reference, fx.frame.reference, fx.tri, fx.frame);
    CHECK(w.out_of_image == 0);
    for (int i = 0; i < fx.frame.size(); ++i)
        CHECK(w.texture[i] == img.at(fx.frame.px[static_cast<std::size_t>(i)], fx.frame.py[static_cast<std::size_t>(i)]));
}

TEST_CASE("a constant image warps to a constant texture") {
    Fixture fx;
    ImageF64 img(256, 256, 77.0);
    Shape src;
    for (const Vec2& p : fx.frame.reference.points) src.points.push_back({p.x * 1.7 + 40.0, p.y * 1.3 + 60.0});
    WarpResult w = warp_image(img, src, fx.frame.reference, fx.tri, fx.frame);
    CHECK(w.out_of_image == 0);
    CHECK(w.texture.minCoeff() == doctest::Approx(77.0));
    CHECK(w.texture.maxCoeff() == doctest::Approx(77.0));
}

TEST_CASE("a linear ramp transports exactly under pure translation") {
    Fixture fx;
    ImageF64 img(96, 96);
    for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x) img.at(x, y) = static_cast<double>(x);

    Shape src;
    for (const Vec2& p : fx.frame.reference.points) src.points.push_back({p.x + 5.0, p.y});
    WarpResult w = warp_image(img, src, fx.frame.reference, fx.tri, fx.frame);
    CHECK(w.out_of_image == 0);
    for (int i = 0; i < fx.frame.size(); ++i)
        CHECK(w.texture[i] == doctest::Approx(fx.frame.px[static_cast<std::size_t>(i)] + 5.0).epsilon(1e-12));
}

TEST_CASE("affine images transport exactly under arbitrary warps") {
    Fixture fx;
    ImageF64 img(256, 256);
    for (int y = 0; y < 256; ++y)
        for (int x = 0; x < 256; ++x) img.at(x, y) = 0.7 * x - 0.3 * y + 25.0;

    Rng rng(13);
    Shape src;
    for (const Vec2& p : fx.frame.reference.points)
        src.points.push_back({p.x * 2.1 - 0.2 * p.y + 70.0 + rng.uniform(-1.0, 1.0),
                              0.1 * p.x + 1.9 * p.y + 50.0 + rng.uniform(-1.0, 1.0)});
    WarpResult w = warp_image(img, src, fx.frame.reference, fx.tri, fx.frame);
    REQUIRE(w.out_of_image == 0);
    for (int i = 0; i < fx.frame.size(); ++i) {
        const auto& tr = fx.tri.triangles[static_cast<std::size_t>(fx.frame.tri_index[static_cast<std::size_t>(i)])];
        const auto& b = fx.frame.bary[static_cast<std::size_t>(i)];
        Vec2 q = src[tr[0]] * b[0] + src[tr[1]] * b[1] + src[tr[2]] * b[2];
        CHECK(w.texture[i] == doctest::Approx(0.7 * q.x - 0.3 * q.y + 25.0).epsilon(1e-10));
    }
}

TEST_CASE("samples leaving the image are flagged and read zero") {
    Fixture fx;
    ImageF64 img(32, 32, 50.0);
    Shape src;
    for (const Vec2& p : fx.frame.reference.points) src.points.push_back({p.x + 500.0, p.y});
    WarpResult w = warp_image(img, src, fx.frame.reference, fx.tri, fx.frame);
    CHECK(w.out_of_image == fx.frame.size());
    CHECK(w.texture.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("warp rejects mismatched landmark counts") {
    Fixture fx;
    ImageF64 img(32, 32);
    Shape bad(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}});
    CHECK_THROWS_AS(warp_image(img, bad, bad, fx.tri, fx.frame), ShapeMismatchError);
}

TEST_CASE("sample_to_reference equals warp_image at the instance shape") {
    Fixture fx;
    Rng rng(21);
    ImageF64 img(128, 128);
    for (double& p : img.pixels) p = rng.uniform(0.0, 255.0);

    Eigen::VectorXd p = Eigen::VectorXd::Zero(fx.pdm.n_total());
    Shape target;
    for (const Vec2& q : fx.frame.reference.points) target.points.push_back({q.x + 30.0, q.y + 25.0});
    p = project_shape(fx.pdm, target);

    WarpResult a = sample_to_reference(img, p, fx.pdm, fx.tri, fx.frame);
    WarpResult b = warp_image(img, shape_instance(fx.pdm, p), fx.frame.reference, fx.tri, fx.frame);
    CHECK((a.texture - b.texture).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("warp jacobian translation columns are constant unit flows") {
    Fixture fx;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(fx.pdm.n_total());
    WarpJacobian j = warp_jacobian(fx.pdm, p, fx.tri, fx.frame);
    const double tx = 1.0 / std::sqrt(static_cast<double>(fx.pdm.n_landmarks()));
    for (int f = 0; f < fx.frame.size(); ++f) {
        CHECK(j.dx(f, 0) == doctest::Approx(tx).epsilon(1e-12));
        CHECK(j.dy(f, 0) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(j.dx(f, 1) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(j.dy(f, 1) == doctest::Approx(tx).epsilon(1e-12));
    }
}

TEST_CASE("warp jacobian matches finite differences of sampled intensities") {
    Fixture fx;
    ImageF64 img(160, 160);
    for (int y = 0; y < 160; ++y)
        for (int x = 0; x < 160; ++x)
            img.at(x, y) = 120.0 + 60.0 * std::sin(0.11 * x) * std::cos(0.07 * y) + 0.2 * x;

    Shape target;
    for (const Vec2& q : fx.frame.reference.points)
        target.points.push_back({q.x * 1.6 + 30.0, q.y * 1.6 + 35.0});
    Eigen::VectorXd p = project_shape(fx.pdm, target);

    WarpJacobian jac = warp_jacobian(fx.pdm, p, fx.tri, fx.frame);
    Shape inst = shape_instance(fx.pdm, p);
    WarpResult base = warp_image(img, inst, fx.frame.reference, fx.tri, fx.frame);
    REQUIRE(base.out_of_image == 0);

    const double h = 1e-4;
    Rng rng(55);
    int accepted = 0, attempts = 0;
    while (accepted < 20 && attempts < 2000) {
        ++attempts;
        int f = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(fx.frame.size())));
        int col = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(fx.pdm.n_total())));

        const auto& tr = fx.tri.triangles[static_cast<std::size_t>(fx.frame.tri_index[static_cast<std::size_t>(f)])];
        const auto& b = fx.frame.bary[static_cast<std::size_t>(f)];
        Vec2 q = inst[tr[0]] * b[0] + inst[tr[1]] * b[1] + inst[tr[2]] * b[2];
        // Central differences are only a valid oracle inside one interpolation
        // cell; skip probes whose sample sits within reach of a cell edge.
        double fxp = q.x - std::floor(q.x), fyp = q.y - std::floor(q.y);
        if (fxp < 1e-2 || fxp > 1.0 - 1e-2 || fyp < 1e-2 || fyp > 1.0 - 1e-2) continue;
        ++accepted;

        Eigen::VectorXd pp = p, pm = p;
        pp[col] += h;
        pm[col] -= h;
        double fd = (sample_to_reference(img, pp, fx.pdm, fx.tri, fx.frame).texture[f] -
                     sample_to_reference(img, pm, fx.pdm, fx.tri, fx.frame).texture[f]) /
                    (2 * h);

        BilinearSample s = sample_bilinear(img, q.x, q.y);
        double analytic = s.dx * jac.dx(f, col) + s.dy * jac.dy(f, col);

        double denom = std::max(std::abs(fd), 1e-6);
        CHECK(std::abs(analytic - fd) / denom <= 1e-3);
    }
    CHECK(accepted == 20);
}

TEST_CASE("zero image gradient gives zero steepest-descent rows") {
    Fixture fx;
    ImageF64 img(128, 128, 42.0); // flat: gradient is zero everywhere
    Shape target;
    for (const Vec2& q : fx.frame.reference.points) target.points.push_back({q.x + 30.0, q.y + 30.0});
    Eigen::VectorXd p = project_shape(fx.pdm, target);
    WarpJacobian jac = warp_jacobian(fx.pdm, p, fx.tri, fx.frame);
    Shape inst = shape_instance(fx.pdm, p);
    for (int f = 0; f < std::min(50, fx.frame.size()); ++f) {
        const auto& tr = fx.tri.triangles[static_cast<std::size_t>(fx.frame.tri_index[static_cast<std::size_t>(f)])];
        const auto& b = fx.frame.bary[static_cast<std::size_t>(f)];
        Vec2 q = inst[tr[0]] * b[0] + inst[tr[1]] * b[1] + inst[tr[2]] * b[2];
        BilinearSample s = sample_bilinear(img, q.x, q.y);
        for (int c = 0; c < fx.pdm.n_total(); ++c)
            CHECK(std::abs(s.dx * jac.dx(f, c) + s.dy * jac.dy(f, c)) == 0.0);
    }
}

TEST_CASE("compose with a zero increment is the identity") {
    Fixture fx;
    Rng rng(8);
    Eigen::VectorXd p(fx.pdm.n_total());
    for (int i = 0; i < p.size(); ++i) p[i] = rng.uniform(-0.5, 0.5);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(fx.pdm.n_total());
    CHECK((compose_shapes(fx.pdm, p, zero, ComposeMode::forward) - p).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((compose_shapes(fx.pdm, p, zero, ComposeMode::inverse) - p).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("forward then inverse composition round trips") {
    Fixture fx;
    Rng rng(9);
    Eigen::VectorXd p(fx.pdm.n_total()), dp(fx.pdm.n_total());
    for (int i = 0; i < p.size(); ++i) p[i] = rng.uniform(-0.3, 0.3);
    for (int i = 0; i < dp.size(); ++i) dp[i] = rng.normal();
    dp *= 1e-3 / dp.norm();

    Eigen::VectorXd fwd = compose_shapes(fx.pdm, p, dp, ComposeMode::forward);
    Eigen::VectorXd back = compose_shapes(fx.pdm, fwd, dp, ComposeMode::inverse);
    CHECK((back - p).norm() <= 1e-5);
}

TEST_CASE("pure-translation increments shift landmarks exactly") {
    Fixture fx;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(fx.pdm.n_total());
    p[2] = 0.4; // some scale pose so the test is not at the mean
    Eigen::VectorXd dp = Eigen::VectorXd::Zero(fx.pdm.n_total());
    dp[0] = 0.25;

    Shape before = shape_instance(fx.pdm, p);
    Shape after = shape_instance(fx.pdm, compose_shapes(fx.pdm, p, dp, ComposeMode::forward));
    const double shift = 0.25 / std::sqrt(static_cast<double>(fx.pdm.n_landmarks()));
    for (int i = 0; i < before.size(); ++i) {
        CHECK(after[i].x - before[i].x == doctest::Approx(shift).epsilon(1e-12));
        CHECK(after[i].y - before[i].y == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("render then sample round trips at an exact-grid pose") {
    Fixture fx;
    // Instance = frame reference + integer translation: sampling lands on
    // grid points and the round trip is exact.
    Shape inst;
    for (const Vec2& q : fx.frame.reference.points) inst.points.push_back({q.x + 21.0, q.y + 17.0});
    Eigen::VectorXd p = project_shape(fx.pdm, inst);
    CHECK((shape_instance(fx.pdm, p).to_vector() - inst.to_vector()).cwiseAbs().maxCoeff() <= 1e-9);

    Rng rng(12);
    Eigen::VectorXd tex(fx.frame.size());
    for (int i = 0; i < tex.size(); ++i) tex[i] = rng.uniform(0.0, 255.0);

    ImageF64 img(96, 96, 0.0);
    RenderStats st = render_texture_to_image(tex, inst, fx.tri, fx.frame, img);
    CHECK(st.degenerate_triangles == 0);
    CHECK(st.pixels_written >= fx.frame.size());

    WarpResult back = sample_to_reference(img, p, fx.pdm, fx.tri, fx.frame);
    CHECK(back.out_of_image == 0);
    CHECK((back.texture - tex).cwiseAbs().maxCoeff() <= 1e-9);
}
