#pragma once

#include <string>

#include "core/piece.h"

namespace tonemorph {

/// Plain-text score format, one note per line:
///
///   onset duration pitch velocity track
///
/// All fields are integers on the piece's tatum grid. `#` starts a comment.
/// Two directive comments make the format lossless against Piece:
///
///   # grid: tatums_per_beat=2 beats_per_bar=4/1
///   # piece: <title>
///
/// Unknown comments are ignored. Parse errors carry the 1-based line number.
Piece parse_pointset_text(const std::string& text);

std::string write_pointset_text(const Piece& piece);

}  // namespace tonemorph
