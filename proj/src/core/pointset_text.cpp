#include "core/pointset_text.h"

#include <cstdio>
#include <sstream>

#include "core/errors.h"

namespace tonemorph {
namespace {

[[noreturn]] void fail(size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

int64_t parse_int(const std::string& token, size_t line_no) {
  try {
    size_t used = 0;
    int64_t v = std::stoll(token, &used);
    if (used != token.size()) fail(line_no, "bad integer '" + token + "'");
    return v;
  } catch (const std::invalid_argument&) {
    fail(line_no, "bad integer '" + token + "'");
  } catch (const std::out_of_range&) {
    fail(line_no, "integer out of range '" + token + "'");
  }
}

void parse_grid_directive(const std::string& body, Piece* piece, size_t line_no) {
  std::istringstream in(body);
  std::string kv;
  while (in >> kv) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) fail(line_no, "bad grid directive field '" + kv + "'");
    std::string key = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);
    try {
      if (key == "tatums_per_beat") {
        piece->tatums_per_beat = static_cast<int>(parse_int(value, line_no));
      } else if (key == "beats_per_bar") {
        piece->beats_per_bar = parse_rational(value);
      } else {
        fail(line_no, "unknown grid directive key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(line_no, e.what());
    }
  }
}

}  // namespace

Piece parse_pointset_text(const std::string& text) {
  Piece piece;
  std::istringstream lines(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t hash = line.find('#');
    if (hash != std::string::npos) {
      std::string comment = line.substr(hash + 1);
      size_t start = comment.find_first_not_of(" \t");
      if (start != std::string::npos) {
        comment = comment.substr(start);
        if (comment.rfind("grid:", 0) == 0) {
          parse_grid_directive(comment.substr(5), &piece, line_no);
        } else if (comment.rfind("piece:", 0) == 0) {
          std::string title = comment.substr(6);
          size_t t = title.find_first_not_of(" \t");
          piece.title = t == std::string::npos ? "" : title.substr(t);
        }
      }
      line = line.substr(0, hash);
    }
    std::istringstream fields(line);
    std::string tok;
    std::vector<std::string> tokens;
    while (fields >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 5)
      fail(line_no, "expected 5 fields (onset duration pitch velocity track), got " +
                        std::to_string(tokens.size()));
    NoteEvent n;
    n.onset = parse_int(tokens[0], line_no);
    n.duration = parse_int(tokens[1], line_no);
    n.midi_pitch = static_cast<int>(parse_int(tokens[2], line_no));
    n.velocity = static_cast<int>(parse_int(tokens[3], line_no));
    n.track = static_cast<int>(parse_int(tokens[4], line_no));
    piece.notes.push_back(n);
  }
  piece.sort_notes();
  try {
    piece.validate();
  } catch (const Error& e) {
    throw ParseError(std::string(e.what()));
  }
  return piece;
}

std::string write_pointset_text(const Piece& piece) {
  std::string out;
  if (!piece.title.empty()) out += "# piece: " + piece.title + "\n";
  out += "# grid: tatums_per_beat=" + std::to_string(piece.tatums_per_beat) +
         " beats_per_bar=" + piece.beats_per_bar.str() + "\n";
  Piece sorted = piece;
  sorted.sort_notes();
  char buf[96];
  for (const NoteEvent& n : sorted.notes) {
    std::snprintf(buf, sizeof(buf), "%lld %lld %d %d %d\n", static_cast<long long>(n.onset),
                  static_cast<long long>(n.duration), n.midi_pitch, n.velocity, n.track);
    out += buf;
  }
  return out;
}

}  // namespace tonemorph
