#ifndef BCI_DIRECTION_HPP
#define BCI_DIRECTION_HPP

#include <string>

#include "bci/errors.hpp"

namespace bci {

/// Causal direction between the two observed columns. The first column is
/// called X and the second Y throughout.
enum class Direction { x_to_y, y_to_x };

inline const char* to_string(Direction d) {
  return d == Direction::x_to_y ? "X->Y" : "Y->X";
}

inline Direction flipped(Direction d) {
  return d == Direction::x_to_y ? Direction::y_to_x : Direction::x_to_y;
}

inline Direction direction_from_string(const std::string& s) {
  if (s == "X->Y") return Direction::x_to_y;
  if (s == "Y->X") return Direction::y_to_x;
  throw Error("unknown direction label: " + s);
}

}  // namespace bci

#endif  // BCI_DIRECTION_HPP
