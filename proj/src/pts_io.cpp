#include "aam/pts_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "aam/errors.hpp"

namespace aam {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Shape parse_pts(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    auto read_line = [&](const char* expect) -> std::string {
        while (std::getline(in, line)) {
            ++line_no;
            std::string s = strip(line);
            if (!s.empty()) return s;
        }
        ++line_no;
        throw ParseError(std::string("unexpected end of file, expected ") + expect, line_no);
    };

    std::string header = read_line("'version: 1'");
    if (header.rfind("version:", 0) != 0)
        throw ParseError("expected 'version: 1' header, got '" + header + "'", line_no);

    std::string npts_line = read_line("'n_points: N'");
    if (npts_line.rfind("n_points:", 0) != 0)
        throw ParseError("expected 'n_points: N', got '" + npts_line + "'", line_no);
    long n = 0;
    try {
        n = std::stol(strip(npts_line.substr(9)));
    } catch (const std::exception&) {
        throw ParseError("non-numeric point count in '" + npts_line + "'", line_no);
    }
    if (n < 3) throw ParseError("n_points must be at least 3, got " + std::to_string(n), line_no);

    std::string brace = read_line("'{'");
    if (brace != "{") throw ParseError("expected '{', got '" + brace + "'", line_no);

    Shape shape;
    shape.points.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        std::string coords = read_line("a coordinate pair");
        if (coords == "}")
            throw ParseError("point count mismatch: expected " + std::to_string(n) + " points, found " +
                                 std::to_string(i),
                             line_no);
        std::istringstream cs(coords);
        double x, y;
        if (!(cs >> x >> y))
            throw ParseError("non-numeric coordinate '" + coords + "'", line_no);
        std::string rest;
        if (cs >> rest)
            throw ParseError("trailing data after coordinate pair: '" + rest + "'", line_no);
        // PTS convention is 1-based.
        shape.points.push_back({x - 1.0, y - 1.0});
    }

    std::string close = read_line("'}'");
    if (close != "}") throw ParseError("expected '}', got '" + close + "'", line_no);
    return shape;
}

Shape load_pts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(IoError::Kind::not_found, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_pts(ss.str());
}

std::string format_pts(const Shape& shape) {
    std::ostringstream out;
    out << "version: 1\n";
    out << "n_points: " << shape.size() << "\n{\n";
    char buf[64];
    for (const auto& p : shape.points) {
        std::snprintf(buf, sizeof(buf), "%.6f %.6f\n", p.x + 1.0, p.y + 1.0);
        out << buf;
    }
    out << "}\n";
    return out.str();
}

void save_pts(const Shape& shape, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(IoError::Kind::write_failed, "cannot write '" + path + "'");
    out << format_pts(shape);
    if (!out) throw IoError(IoError::Kind::write_failed, "short write to '" + path + "'");
}

} // namespace aam
