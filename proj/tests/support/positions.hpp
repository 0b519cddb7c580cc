#pragma once

#include "tazone/model.hpp"

#include <string_view>

namespace tazone::test {

// True iff `pos` names a character of `text` or the position just past the
// end of a line (where end-of-input errors are reported).
inline bool inside(std::string_view text, Position pos) {
  std::size_t line = 1, col = 1;
  for (char c : text) {
    if (line == pos.line && col == pos.column) return true;
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return line == pos.line && col == pos.column;
}

}  // namespace tazone::test
