#include "aam/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aam/errors.hpp"
#include "aam/pgm_io.hpp"
#include "aam/procrustes.hpp"
#include "aam/pts_io.hpp"
#include "aam/rng.hpp"

namespace aam {

std::vector<int> Dataset::indices_of(Split s) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(records.size()); ++i)
        if (split[static_cast<std::size_t>(i)] == s) out.push_back(i);
    return out;
}

Dataset split_dataset(std::vector<AnnotatedImage> records, const SplitFractions& fractions,
                      std::uint64_t seed) {
    if (records.empty()) throw InsufficientDataError("cannot split an empty record list");
    double sum = fractions.train + fractions.validation + fractions.test;
    if (fractions.train < 0.0 || fractions.validation < 0.0 || fractions.test < 0.0 ||
        std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("split fractions must be non-negative and sum to 1");

    const int n = static_cast<int>(records.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    Rng rng(seed);
    rng.shuffle(order);

    int n_train = std::min<int>(n, static_cast<int>(std::llround(fractions.train * n)));
    int n_val = std::min<int>(n - n_train, static_cast<int>(std::llround(fractions.validation * n)));

    Dataset ds;
    ds.records = std::move(records);
    ds.seed = seed;
    ds.split.assign(static_cast<std::size_t>(n), Split::test);
    for (int i = 0; i < n_train; ++i) ds.split[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = Split::train;
    for (int i = n_train; i < n_train + n_val; ++i)
        ds.split[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = Split::validation;
    return ds;
}

double inter_ocular_distance(const Shape& shape) {
    if (shape.size() == 29) return (shape[16] - shape[19]).norm();
    if (shape.size() == 68) return (shape[36] - shape[45]).norm();
    throw DimensionError("no inter-ocular convention for " + std::to_string(shape.size()) +
                         " landmarks (expected 29 or 68)");
}

Shape perturb_init(const Shape& mean_shape, const Shape& ground_truth, double magnitude,
                   std::uint64_t seed) {
    if (magnitude < 0.0) throw ConfigError("perturbation magnitude must be >= 0");
    SimilarityTransform t = align_similarity(mean_shape, ground_truth);
    Shape init = t.apply(mean_shape);
    if (magnitude == 0.0) return init;

    // Calibrated so the mean landmark displacement comes out at about
    // magnitude * iod: translation dominates, scale adds a smaller term.
    const double iod = inter_ocular_distance(ground_truth);
    Rng rng(seed);
    double dx = 0.777 * magnitude * iod * rng.normal();
    double dy = 0.777 * magnitude * iod * rng.normal();
    double ds = 1.0 + 0.351 * magnitude * rng.normal();

    Vec2 c = init.centroid();
    Shape out = init;
    for (Vec2& p : out.points) p = c + (p - c) * ds + Vec2{dx, dy};
    return out;
}

namespace {

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return (pos == std::string::npos) ? std::string() : path.substr(0, pos + 1);
}

} // namespace

std::vector<AnnotatedImage> load_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError(IoError::not_found, "cannot open manifest " + manifest_path);
    const std::string base = dir_of(manifest_path);

    std::vector<AnnotatedImage> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string image_path, pts_path, bbox_field;
        if (!std::getline(ss, image_path, ',') || !std::getline(ss, pts_path, ','))
            throw ParseError("manifest line needs image_path,pts_path", line_no);
        std::getline(ss, bbox_field, ',');

        AnnotatedImage rec;
        rec.source_path = image_path;
        rec.image = load_pgm(base + image_path);
        rec.shape = load_pts(base + pts_path);
        if (!bbox_field.empty()) {
            FaceBox b;
            if (std::sscanf(bbox_field.c_str(), "%lf:%lf:%lf:%lf", &b.x, &b.y, &b.w, &b.h) != 4)
                throw ParseError("manifest bbox must be x:y:w:h", line_no);
            rec.bbox = b;
        }
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw InsufficientDataError("manifest lists no records: " + manifest_path);
    return records;
}

void save_manifest(const std::string& manifest_path, const std::vector<AnnotatedImage>& records,
                   const std::vector<std::string>& image_paths,
                   const std::vector<std::string>& pts_paths) {
    if (records.size() != image_paths.size() || records.size() != pts_paths.size())
        throw DimensionError("manifest path lists must match the record count");
    std::ofstream out(manifest_path);
    if (!out) throw IoError(IoError::write_failed, "cannot write manifest " + manifest_path);
    for (std::size_t i = 0; i < records.size(); ++i) {
        out << image_paths[i] << ',' << pts_paths[i];
        if (records[i].bbox) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), ",%.3f:%.3f:%.3f:%.3f", records[i].bbox->x,
                          records[i].bbox->y, records[i].bbox->w, records[i].bbox->h);
            out << buf;
        }
        out << '\n';
    }
    if (!out.good()) throw IoError(IoError::write_failed, "error writing manifest " + manifest_path);
}

} // namespace aam
