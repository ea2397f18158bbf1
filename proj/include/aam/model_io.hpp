#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aam/appearance.hpp"
#include "aam/pdm.hpp"

namespace aam {

// Little-endian container: "AAMG" magic, u32 format version, then
// length-prefixed sections (4-char tag, u64 payload length, payload,
// CRC32 of the payload).
namespace container {

inline constexpr std::uint32_t format_version = 1;

struct Section {
    std::array<char, 4> tag{};
    std::vector<std::uint8_t> payload;
};

void write_container(const std::string& path, const std::vector<Section>& sections);
std::vector<Section> read_container(const std::string& path);

// Little-endian payload cursor helpers shared by every section codec.
class Writer {
public:
    void u8(std::uint8_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i32(std::int32_t v);
    void f64(double v);
    void f64_array(const double* data, std::size_t count);
    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& buf) : buf_(buf) {}
    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int32_t i32();
    double f64();
    void f64_array(double* out, std::size_t count);
    bool exhausted() const { return pos_ == buf_.size(); }

private:
    void need(std::size_t n) const;
    const std::vector<std::uint8_t>& buf_;
    std::size_t pos_ = 0;
};

} // namespace container

// Sections: "PDM " shape model, "APPM" appearance PCA, "TRIA" triangulation,
// "FRAM" reference-frame header (mask and barycentric tables are rebuilt
// deterministically on load). `extra` carries caller-owned sections such as
// trained network weights.
void save_model(const std::string& path, const PointDistributionModel& pdm,
                const AppearanceModel& am,
                const std::vector<container::Section>& extra = {});

struct LoadedModel {
    PointDistributionModel pdm;
    AppearanceModel am;
    std::vector<container::Section> extra;
};

LoadedModel load_model(const std::string& path);

} // namespace aam
