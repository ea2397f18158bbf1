#ifndef AAM_PGM_IO_HPP
#define AAM_PGM_IO_HPP

#include <string>

#include "aam/image.hpp"

namespace aam {

// Binary PGM (P5, maxval 255), byte-exact. Other PNM variants are rejected.
ImageU8 load_pgm(const std::string& path);
void save_pgm(const ImageU8& img, const std::string& path);

} // namespace aam

#endif
