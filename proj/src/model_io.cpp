#include "aam/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <zlib.h>

#include "aam/errors.hpp"

static_assert(std::endian::native == std::endian::little, "container format assumes a little-endian host");

namespace aam {
namespace container {

namespace {

std::uint32_t payload_crc(const std::vector<std::uint8_t>& payload) {
    uLong crc = crc32(0L, Z_NULL, 0);
    if (!payload.empty()) crc = crc32(crc, payload.data(), static_cast<uInt>(payload.size()));
    return static_cast<std::uint32_t>(crc);
}

constexpr char magic[4] = {'A', 'A', 'M', 'G'};

} // namespace

void Writer::u8(std::uint8_t v) { buf_.push_back(v); }

void Writer::u32(std::uint32_t v) {
    std::uint8_t b[4];
    std::memcpy(b, &v, 4);
    buf_.insert(buf_.end(), b, b + 4);
}

void Writer::u64(std::uint64_t v) {
    std::uint8_t b[8];
    std::memcpy(b, &v, 8);
    buf_.insert(buf_.end(), b, b + 8);
}

void Writer::i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }

void Writer::f64(double v) {
    std::uint8_t b[8];
    std::memcpy(b, &v, 8);
    buf_.insert(buf_.end(), b, b + 8);
}

void Writer::f64_array(const double* data, std::size_t count) {
    std::size_t at = buf_.size();
    buf_.resize(at + count * 8);
    std::memcpy(buf_.data() + at, data, count * 8);
}

void Reader::need(std::size_t n) const {
    if (pos_ + n > buf_.size()) throw IoError(IoError::truncated, "section payload ends early");
}

std::uint8_t Reader::u8() {
    need(1);
    return buf_[pos_++];
}

std::uint32_t Reader::u32() {
    need(4);
    std::uint32_t v;
    std::memcpy(&v, buf_.data() + pos_, 4);
    pos_ += 4;
    return v;
}

std::uint64_t Reader::u64() {
    need(8);
    std::uint64_t v;
    std::memcpy(&v, buf_.data() + pos_, 8);
    pos_ += 8;
    return v;
}

std::int32_t Reader::i32() { return static_cast<std::int32_t>(u32()); }

double Reader::f64() {
    need(8);
    double v;
    std::memcpy(&v, buf_.data() + pos_, 8);
    pos_ += 8;
    return v;
}

void Reader::f64_array(double* out, std::size_t count) {
    need(count * 8);
    std::memcpy(out, buf_.data() + pos_, count * 8);
    pos_ += count * 8;
}

void write_container(const std::string& path, const std::vector<Section>& sections) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoError::write_failed, "cannot open " + path + " for writing");
    out.write(magic, 4);
    std::uint32_t ver = format_version;
    out.write(reinterpret_cast<const char*>(&ver), 4);
    for (const Section& s : sections) {
        out.write(s.tag.data(), 4);
        std::uint64_t len = s.payload.size();
        out.write(reinterpret_cast<const char*>(&len), 8);
        if (len) out.write(reinterpret_cast<const char*>(s.payload.data()), static_cast<std::streamsize>(len));
        std::uint32_t crc = payload_crc(s.payload);
        out.write(reinterpret_cast<const char*>(&crc), 4);
    }
    if (!out) throw IoError(IoError::write_failed, "write failed for " + path);
}

std::vector<Section> read_container(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoError::not_found, "cannot open " + path);
    char m[4];
    in.read(m, 4);
    if (in.gcount() != 4) throw IoError(IoError::truncated, path + ": file shorter than the magic");
    if (std::memcmp(m, magic, 4) != 0)
        throw IoError(IoError::bad_magic, path + ": expected magic \"AAMG\"");
    std::uint32_t ver = 0;
    in.read(reinterpret_cast<char*>(&ver), 4);
    if (in.gcount() != 4) throw IoError(IoError::truncated, path + ": missing format version");
    if (ver != format_version)
        throw IoError(IoError::version_mismatch, path + ": format version " + std::to_string(ver) +
                                                     ", expected " + std::to_string(format_version));

    std::vector<Section> sections;
    while (true) {
        Section s;
        in.read(s.tag.data(), 4);
        if (in.gcount() == 0 && in.eof()) break;
        if (in.gcount() != 4) throw IoError(IoError::truncated, path + ": partial section tag");
        std::uint64_t len = 0;
        in.read(reinterpret_cast<char*>(&len), 8);
        if (in.gcount() != 8) throw IoError(IoError::truncated, path + ": partial section length");
        s.payload.resize(len);
        if (len) {
            in.read(reinterpret_cast<char*>(s.payload.data()), static_cast<std::streamsize>(len));
            if (static_cast<std::uint64_t>(in.gcount()) != len)
                throw IoError(IoError::truncated, path + ": section payload ends early");
        }
        std::uint32_t crc = 0;
        in.read(reinterpret_cast<char*>(&crc), 4);
        if (in.gcount() != 4) throw IoError(IoError::truncated, path + ": missing section checksum");
        if (crc != payload_crc(s.payload))
            throw IoError(IoError::bad_checksum, path + ": CRC mismatch in section \"" +
                                                     std::string(s.tag.data(), 4) + "\"");
        sections.push_back(std::move(s));
    }
    return sections;
}

} // namespace container

namespace {

using container::Reader;
using container::Section;
using container::Writer;

Section make_section(const char (&tag)[5], Writer&& w) {
    Section s;
    std::memcpy(s.tag.data(), tag, 4);
    s.payload = w.take();
    return s;
}

Section encode_pdm(const PointDistributionModel& pdm) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(pdm.n_landmarks()));
    w.u32(static_cast<std::uint32_t>(pdm.n_total()));
    w.u32(static_cast<std::uint32_t>(pdm.n_similarity));
    w.u8(pdm.truncated ? 1 : 0);
    Eigen::VectorXd mv = pdm.mean_shape.to_vector();
    w.f64_array(mv.data(), static_cast<std::size_t>(mv.size()));
    w.f64_array(pdm.basis.data(), static_cast<std::size_t>(pdm.basis.size()));
    w.u32(static_cast<std::uint32_t>(pdm.eigenvalues.size()));
    w.f64_array(pdm.eigenvalues.data(), static_cast<std::size_t>(pdm.eigenvalues.size()));
    return make_section("PDM ", std::move(w));
}

PointDistributionModel decode_pdm(const Section& s) {
    Reader r(s.payload);
    PointDistributionModel pdm;
    int v = static_cast<int>(r.u32());
    int n_total = static_cast<int>(r.u32());
    pdm.n_similarity = static_cast<int>(r.u32());
    pdm.truncated = r.u8() != 0;
    Eigen::VectorXd mv(2 * v);
    r.f64_array(mv.data(), static_cast<std::size_t>(mv.size()));
    pdm.mean_shape = Shape::from_vector(mv);
    pdm.basis.resize(2 * v, n_total);
    r.f64_array(pdm.basis.data(), static_cast<std::size_t>(pdm.basis.size()));
    int ne = static_cast<int>(r.u32());
    pdm.eigenvalues.resize(ne);
    r.f64_array(pdm.eigenvalues.data(), static_cast<std::size_t>(ne));
    return pdm;
}

Section encode_appearance(const AppearanceModel& am) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(am.size()));
    w.u32(static_cast<std::uint32_t>(am.modes()));
    w.u8(am.photometric_normalized ? 1 : 0);
    w.u8(am.truncated ? 1 : 0);
    w.f64_array(am.mean_texture.data(), static_cast<std::size_t>(am.mean_texture.size()));
    w.f64_array(am.basis.data(), static_cast<std::size_t>(am.basis.size()));
    w.f64_array(am.eigenvalues.data(), static_cast<std::size_t>(am.eigenvalues.size()));
    return make_section("APPM", std::move(w));
}

void decode_appearance(const Section& s, AppearanceModel& am) {
    Reader r(s.payload);
    int f = static_cast<int>(r.u32());
    int m = static_cast<int>(r.u32());
    am.photometric_normalized = r.u8() != 0;
    am.truncated = r.u8() != 0;
    am.mean_texture.resize(f);
    r.f64_array(am.mean_texture.data(), static_cast<std::size_t>(f));
    am.basis.resize(f, m);
    r.f64_array(am.basis.data(), static_cast<std::size_t>(am.basis.size()));
    am.eigenvalues.resize(m);
    r.f64_array(am.eigenvalues.data(), static_cast<std::size_t>(m));
}

Section encode_triangulation(const Triangulation& tri) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(tri.size()));
    for (const auto& t : tri.triangles)
        for (int k = 0; k < 3; ++k) w.i32(t[static_cast<std::size_t>(k)]);
    return make_section("TRIA", std::move(w));
}

Triangulation decode_triangulation(const Section& s) {
    Reader r(s.payload);
    Triangulation tri;
    int n = static_cast<int>(r.u32());
    tri.triangles.resize(static_cast<std::size_t>(n));
    for (auto& t : tri.triangles)
        for (int k = 0; k < 3; ++k) t[static_cast<std::size_t>(k)] = r.i32();
    return tri;
}

Section encode_frame(const ReferenceFrame& frame) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(frame.width));
    w.u32(static_cast<std::uint32_t>(frame.height));
    w.u32(static_cast<std::uint32_t>(frame.reference.size()));
    Eigen::VectorXd rv = frame.reference.to_vector();
    w.f64_array(rv.data(), static_cast<std::size_t>(rv.size()));
    w.f64(frame.model_scale);
    w.f64(frame.model_offset.x);
    w.f64(frame.model_offset.y);
    return make_section("FRAM", std::move(w));
}

ReferenceFrame decode_frame(const Section& s, const Triangulation& tri) {
    Reader r(s.payload);
    int width = static_cast<int>(r.u32());
    int height = static_cast<int>(r.u32());
    int v = static_cast<int>(r.u32());
    Eigen::VectorXd rv(2 * v);
    r.f64_array(rv.data(), static_cast<std::size_t>(rv.size()));
    double scale = r.f64();
    Vec2 offset{r.f64(), r.f64()};
    // The mask and barycentric tables are a deterministic function of the
    // reference landmarks, so rebuild instead of storing them.
    ReferenceFrame f = build_reference_frame_at(Shape::from_vector(rv), tri, width, height);
    f.model_scale = scale;
    f.model_offset = offset;
    return f;
}

} // namespace

void save_model(const std::string& path, const PointDistributionModel& pdm,
                const AppearanceModel& am, const std::vector<Section>& extra) {
    std::vector<Section> sections;
    sections.push_back(encode_pdm(pdm));
    sections.push_back(encode_appearance(am));
    sections.push_back(encode_triangulation(am.tri));
    sections.push_back(encode_frame(am.frame));
    for (const Section& s : extra) sections.push_back(s);
    container::write_container(path, sections);
}

LoadedModel load_model(const std::string& path) {
    std::vector<Section> sections = container::read_container(path);
    LoadedModel m;
    const Section* pdm_s = nullptr;
    const Section* app_s = nullptr;
    const Section* tri_s = nullptr;
    const Section* frm_s = nullptr;
    for (const Section& s : sections) {
        std::string tag(s.tag.data(), 4);
        if (tag == "PDM ")
            pdm_s = &s;
        else if (tag == "APPM")
            app_s = &s;
        else if (tag == "TRIA")
            tri_s = &s;
        else if (tag == "FRAM")
            frm_s = &s;
        else
            m.extra.push_back(s);
    }
    if (!pdm_s || !app_s || !tri_s || !frm_s)
        throw IoError(IoError::unsupported_format, path + ": missing a required model section");
    m.pdm = decode_pdm(*pdm_s);
    decode_appearance(*app_s, m.am);
    m.am.tri = decode_triangulation(*tri_s);
    m.am.frame = decode_frame(*frm_s, m.am.tri);
    return m;
}

} // namespace aam
