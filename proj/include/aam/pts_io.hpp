#ifndef AAM_PTS_IO_HPP
#define AAM_PTS_IO_HPP

#include <string>

#include "aam/shape.hpp"

namespace aam {

// PTS landmark grammar:
//   version: 1
//   n_points: N
//   {
//   x y            (N lines, 1-based coordinates)
//   }
// Coordinates are converted to 0-based pixel coordinates on parse.
Shape parse_pts(const std::string& text);
Shape load_pts(const std::string& path);

// Writes with 6-decimal precision and the 1-based convention; round trips
// exactly at that precision.
std::string format_pts(const Shape& shape);
void save_pts(const Shape& shape, const std::string& path);

} // namespace aam

#endif
