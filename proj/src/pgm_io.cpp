#include "aam/pgm_io.hpp"

#include <cctype>
#include <fstream>

#include "aam/errors.hpp"

namespace aam {

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            break;
        }
    }
    while ((c = in.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
    return tok;
}

int parse_dim(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v <= 0) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw IoError(IoError::Kind::unsupported_format, std::string("bad PGM ") + what + ": '" + tok + "'");
    }
}

} // namespace

ImageU8 load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoError::Kind::not_found, "cannot open '" + path + "'");

    std::string magic = next_token(in);
    if (magic != "P5")
        throw IoError(IoError::Kind::unsupported_format,
                      "unsupported PNM magic '" + magic + "' in '" + path + "' (only binary P5 is supported)");

    int width = parse_dim(next_token(in), "width");
    int height = parse_dim(next_token(in), "height");
    int maxval = parse_dim(next_token(in), "maxval");
    if (maxval != 255)
        throw IoError(IoError::Kind::unsupported_format,
                      "unsupported PGM maxval " + std::to_string(maxval) + " (must be 255)");

    ImageU8 img(width, height);
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw IoError(IoError::Kind::truncated,
                      "'" + path + "' truncated: expected " + std::to_string(img.pixels.size()) +
                          " pixel bytes, got " + std::to_string(in.gcount()));
    return img;
}

void save_pgm(const ImageU8& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(IoError::Kind::write_failed, "cannot write '" + path + "'");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError(IoError::Kind::write_failed, "short write to '" + path + "'");
}

} // namespace aam
