#include "patterns/tec.h"

#include <algorithm>

#include "core/errors.h"

namespace tonemorph {

PointSet Tec::coverage() const {
  std::vector<Point> points;
  points.reserve(pattern.size() * translators.size());
  for (Point v : translators) {
    for (Point p : pattern) points.push_back(p + v);
  }
  return make_point_set(std::move(points));
}

Tec make_tec(PointSet pattern, std::vector<Point> translators) {
  Tec tec;
  tec.pattern = make_point_set(std::move(pattern));
  std::sort(translators.begin(), translators.end());
  translators.erase(std::unique(translators.begin(), translators.end()), translators.end());
  tec.translators = std::move(translators);
  if (tec.pattern.empty()) throw Error("TEC with empty pattern");
  if (!std::binary_search(tec.translators.begin(), tec.translators.end(), Point{0, 0}))
    throw Error("TEC without identity translator");
  return tec;
}

PointSet Cover::coverage() const {
  std::vector<Point> points;
  for (const Tec& tec : tecs) {
    PointSet c = tec.coverage();
    points.insert(points.end(), c.begin(), c.end());
  }
  return make_point_set(std::move(points));
}

double compression_ratio(const Tec& tec) {
  return static_cast<double>(tec.coverage().size()) / static_cast<double>(tec.encoding_size());
}

double compression_ratio(const Cover& cover) {
  size_t encoded = cover.residual.size();
  for (const Tec& tec : cover.tecs) encoded += tec.encoding_size();
  if (encoded == 0) return 1.0;
  size_t covered = cover.coverage().size() + cover.residual.size();
  return static_cast<double>(covered) / static_cast<double>(encoded);
}

// ---- text form -----------------------------------------------------------

namespace {

struct TextCursor {
  std::string_view text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos); }

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r'))
      ++pos;
  }
  void expect(char c) {
    skip_space();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }
  bool peek_is(char c) {
    skip_space();
    return pos < text.size() && text[pos] == c;
  }
  int64_t integer() {
    skip_space();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits) {
      pos = start;
      fail("expected integer");
    }
    int64_t value = 0;
    bool negative = text[start] == '-';
    for (size_t i = digits; i < pos; ++i) value = value * 10 + (text[i] - '0');
    return negative ? -value : value;
  }
  Point point(char tag) {
    skip_space();
    if (pos >= text.size() || text[pos] != tag) fail(std::string("expected '") + tag + "'");
    ++pos;
    expect('(');
    int64_t t = integer();
    expect(',');
    int64_t p = integer();
    expect(')');
    return Point{t, p};
  }
};

void append_points(std::string& out, char tag, const std::vector<Point>& points) {
  for (size_t i = 0; i < points.size(); ++i) {
    if (i) out += ',';
    out += tag;
    out += '(';
    out += std::to_string(points[i].time);
    out += ',';
    out += std::to_string(points[i].pitch);
    out += ')';
  }
}

}  // namespace

std::string encode_tec(const Tec& tec) {
  std::string out = "T(P(";
  append_points(out, 'p', tec.pattern);
  out += "),V(";
  append_points(out, 'v', tec.translators);
  out += "))";
  return out;
}

Tec decode_tec(std::string_view text) {
  TextCursor in{text};
  in.expect('T');
  in.expect('(');
  in.expect('P');
  in.expect('(');
  std::vector<Point> pattern;
  if (!in.peek_is(')')) {
    pattern.push_back(in.point('p'));
    while (in.peek_is(',')) {
      in.expect(',');
      pattern.push_back(in.point('p'));
    }
  }
  in.expect(')');
  in.expect(',');
  in.expect('V');
  in.expect('(');
  std::vector<Point> translators;
  if (!in.peek_is(')')) {
    translators.push_back(in.point('v'));
    while (in.peek_is(',')) {
      in.expect(',');
      translators.push_back(in.point('v'));
    }
  }
  in.expect(')');
  in.expect(')');
  in.skip_space();
  if (in.pos != text.size()) in.fail("trailing characters after TEC");
  try {
    return make_tec(std::move(pattern), std::move(translators));
  } catch (const Error& e) {
    throw ParseError(std::string(e.what()), in.pos);
  }
}

}  // namespace tonemorph
