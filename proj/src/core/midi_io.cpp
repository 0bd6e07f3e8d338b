#include "core/midi_io.h"

#include <algorithm>
#include <map>
#include <string>

#include "core/errors.h"

namespace tonemorph {
namespace {

// ---------------------------------------------------------------- reading

struct Cursor {
  const std::vector<uint8_t>& bytes;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos); }

  uint8_t u8() {
    if (pos >= bytes.size()) fail("unexpected end of file");
    return bytes[pos++];
  }
  uint16_t u16() { return static_cast<uint16_t>(u8() << 8 | u8()); }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | u8();
    return v;
  }
  /// Variable-length quantity, at most 4 bytes.
  uint32_t vlq() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      uint8_t b = u8();
      v = v << 7 | (b & 0x7f);
      if (!(b & 0x80)) return v;
    }
    fail("variable-length quantity longer than 4 bytes");
  }
  void skip(size_t n) {
    if (bytes.size() - pos < n) fail("unexpected end of file");
    pos += n;
  }
  bool match(const char* tag) {
    if (bytes.size() - pos < 4) return false;
    for (int i = 0; i < 4; ++i)
      if (bytes[pos + i] != static_cast<uint8_t>(tag[i])) return false;
    pos += 4;
    return true;
  }
};

struct RawNote {
  int lane;  // chunk index (format 1) or channel (format 0)
  int64_t on_tick;
  int64_t off_tick;
  int pitch;
  int velocity;
};

/// round(ticks * tpb / division) with exact integers, ties toward zero.
int64_t quantize(int64_t tick, int tpb, int division) {
  int64_t a = tick * tpb;
  int64_t b = division;
  return (2 * a + b - 1) / (2 * b);
}

}  // namespace

Piece parse_midi(const std::vector<uint8_t>& bytes, const MidiReadOptions& options) {
  Cursor in{bytes};
  if (!in.match("MThd")) in.fail("missing MThd header");
  uint32_t header_len = in.u32();
  if (header_len < 6) in.fail("MThd length must be at least 6");
  uint16_t format = in.u16();
  uint16_t declared_tracks = in.u16();
  uint16_t division = in.u16();
  if (format > 1) in.fail("unsupported MIDI format " + std::to_string(format));
  if (division & 0x8000) in.fail("SMPTE division not supported");
  if (division == 0) in.fail("division must be positive");
  in.skip(header_len - 6);

  int tpb = options.tatums_per_beat > 0 ? options.tatums_per_beat : 2;

  Piece piece;
  piece.tatums_per_beat = tpb;
  bool saw_time_signature = false;
  bool saw_title = false;

  std::vector<RawNote> raw;
  int chunk_index = 0;
  size_t parsed_chunks = 0;
  while (in.pos < bytes.size()) {
    if (!in.match("MTrk")) {
      // Alien chunk: honor its length field and move on.
      in.skip(4);
      uint32_t len = in.u32();
      in.skip(len);
      continue;
    }
    uint32_t track_len = in.u32();
    size_t track_end = in.pos + track_len;
    if (track_end > bytes.size()) in.fail("track length runs past end of file");

    int64_t tick = 0;
    uint8_t running_status = 0;
    // Sounding notes per (channel, pitch): value is (on_tick, velocity).
    std::map<std::pair<int, int>, std::pair<int64_t, int>> open;
    bool ended = false;
    while (!ended) {
      if (in.pos >= track_end) in.fail("track data ended without end-of-track meta");
      tick += in.vlq();
      uint8_t status = in.u8();
      if (status < 0x80) {
        if (running_status == 0) in.fail("data byte without running status");
        status = running_status;
        --in.pos;
      }
      if (status < 0xf0) running_status = status;
      int channel = status & 0x0f;
      switch (status & 0xf0) {
        case 0x80:
        case 0x90: {
          int pitch = in.u8();
          int velocity = in.u8();  // release velocity for note-off
          bool is_on = (status & 0xf0) == 0x90 && velocity > 0;
          auto key = std::make_pair(channel, pitch);
          if (is_on) {
            if (open.count(key))
              in.fail("overlapping note-on: pitch " + std::to_string(pitch) + " at tick " +
                      std::to_string(tick));
            open[key] = {tick, velocity};
          } else {
            auto it = open.find(key);
            if (it != open.end()) {  // stray note-offs are ignored
              raw.push_back({format == 0 ? channel : chunk_index, it->second.first, tick, pitch,
                             it->second.second});
              open.erase(it);
            }
          }
          break;
        }
        case 0xa0:
        case 0xb0:
        case 0xe0:
          in.skip(2);
          break;
        case 0xc0:
        case 0xd0:
          in.skip(1);
          break;
        case 0xf0: {
          if (status == 0xf0 || status == 0xf7) {
            running_status = 0;
            uint32_t len = in.vlq();
            in.skip(len);
            break;
          }
          if (status != 0xff) in.fail("unsupported status byte");
          running_status = 0;
          uint8_t type = in.u8();
          uint32_t len = in.vlq();
          size_t data_at = in.pos;
          in.skip(len);
          if (type == 0x2f) {
            ended = true;
          } else if (type == 0x58 && len >= 2 && !saw_time_signature) {
            int num = bytes[data_at];
            int dd = bytes[data_at + 1];
            if (num > 0 && dd <= 16) {
              piece.beats_per_bar = Rational(static_cast<int64_t>(num) * 4, int64_t(1) << dd);
              saw_time_signature = true;
            }
          } else if (type == 0x03 && !saw_title) {
            piece.title.assign(reinterpret_cast<const char*>(bytes.data()) + data_at, len);
            saw_title = true;
          }
          break;
        }
        default:
          in.fail("unsupported status byte");
      }
    }
    if (!open.empty()) {
      auto& [key, value] = *open.begin();
      throw ParseError("note-on without matching note-off: pitch " + std::to_string(key.second) +
                           " at tick " + std::to_string(value.first),
                       in.pos);
    }
    if (in.pos != track_end) in.pos = track_end;  // tolerate padding after end-of-track
    ++chunk_index;
    ++parsed_chunks;
  }
  if (parsed_chunks < declared_tracks) in.fail("fewer MTrk chunks than the header declares");

  // Densify lanes into track numbers, preserving lane order.
  std::vector<int> lanes;
  for (const RawNote& n : raw) lanes.push_back(n.lane);
  std::sort(lanes.begin(), lanes.end());
  lanes.erase(std::unique(lanes.begin(), lanes.end()), lanes.end());

  for (const RawNote& n : raw) {
    NoteEvent e;
    e.onset = quantize(n.on_tick, tpb, division);
    int64_t end = quantize(n.off_tick, tpb, division);
    e.duration = std::max<int64_t>(1, end - e.onset);
    e.midi_pitch = n.pitch;
    e.velocity = n.velocity;
    e.track = static_cast<int>(std::lower_bound(lanes.begin(), lanes.end(), n.lane) - lanes.begin());
    piece.notes.push_back(e);
  }
  piece.sort_notes();
  piece.validate();
  return piece;
}

// ---------------------------------------------------------------- writing

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(v >> 8);
  out.push_back(v & 0xff);
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back((v >> shift) & 0xff);
}

void put_vlq(std::vector<uint8_t>& out, int64_t v) {
  uint8_t stack[5];
  int n = 0;
  do {
    stack[n++] = v & 0x7f;
    v >>= 7;
  } while (v > 0);
  while (n > 1) out.push_back(stack[--n] | 0x80);
  out.push_back(stack[0]);
}

struct WireEvent {
  int64_t tick;
  int order;  // 0 = meta, 1 = note-off, 2 = note-on
  int pitch;
  std::vector<uint8_t> payload;
};

}  // namespace

std::vector<uint8_t> write_midi(const Piece& piece) {
  Piece sorted = piece;
  sorted.sort_notes();
  sorted.validate();
  const int tpb = sorted.tatums_per_beat;
  const int ticks_per_tatum = 120;

  std::vector<int> tracks;
  for (const NoteEvent& n : sorted.notes) tracks.push_back(n.track);
  std::sort(tracks.begin(), tracks.end());
  tracks.erase(std::unique(tracks.begin(), tracks.end()), tracks.end());
  if (tracks.empty()) tracks.push_back(0);

  std::vector<uint8_t> out;
  out.insert(out.end(), {'M', 'T', 'h', 'd'});
  put_u32(out, 6);
  put_u16(out, 1);  // format
  put_u16(out, static_cast<uint16_t>(tracks.size()));
  put_u16(out, static_cast<uint16_t>(120 * tpb));

  for (size_t t = 0; t < tracks.size(); ++t) {
    std::vector<WireEvent> events;
    if (t == 0) {
      events.push_back({0, 0, -3, {0xff, 0x51, 0x03, 0x07, 0xa1, 0x20}});  // 120 bpm
      // Time signature if beats_per_bar is n/2^k with small terms.
      int64_t den = sorted.beats_per_bar.den;
      int64_t num = sorted.beats_per_bar.num;
      if ((den & (den - 1)) == 0 && den <= 8 && num <= 255) {
        uint8_t dd = 2;
        for (int64_t d = den; d > 1; d >>= 1) ++dd;
        events.push_back(
            {0, 0, -2, {0xff, 0x58, 0x04, static_cast<uint8_t>(num), dd, 24, 8}});
      }
      if (!sorted.title.empty() && sorted.title.size() < 128) {
        std::vector<uint8_t> payload{0xff, 0x03, static_cast<uint8_t>(sorted.title.size())};
        payload.insert(payload.end(), sorted.title.begin(), sorted.title.end());
        events.push_back({0, 0, -1, payload});
      }
    }
    for (const NoteEvent& n : sorted.notes) {
      if (n.track != tracks[t]) continue;
      uint8_t pitch = static_cast<uint8_t>(n.midi_pitch);
      uint8_t vel = static_cast<uint8_t>(n.velocity);
      events.push_back({n.onset * ticks_per_tatum, 2, n.midi_pitch, {0x90, pitch, vel}});
      events.push_back({n.end() * ticks_per_tatum, 1, n.midi_pitch, {0x80, pitch, 0x40}});
    }
    std::stable_sort(events.begin(), events.end(), [](const WireEvent& a, const WireEvent& b) {
      return std::tie(a.tick, a.order, a.pitch) < std::tie(b.tick, b.order, b.pitch);
    });

    std::vector<uint8_t> data;
    int64_t cursor = 0;
    for (const WireEvent& e : events) {
      put_vlq(data, e.tick - cursor);
      cursor = e.tick;
      data.insert(data.end(), e.payload.begin(), e.payload.end());
    }
    put_vlq(data, 0);
    data.insert(data.end(), {0xff, 0x2f, 0x00});

    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    put_u32(out, static_cast<uint32_t>(data.size()));
    out.insert(out.end(), data.begin(), data.end());
  }
  return out;
}

}  // namespace tonemorph
