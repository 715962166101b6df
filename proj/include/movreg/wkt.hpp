#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include "movreg/geometry.hpp"

namespace movreg {

class WktParseError : public Error {
 public:
  WktParseError(std::size_t position, const std::string& message)
      : Error("WKT parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

class WktCursor {
 public:
  explicit WktCursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  std::size_t pos() const { return pos_; }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw WktParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string keyword() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw WktParseError(pos_, "expected geometry keyword");
    std::string word(text_.substr(start, pos_ - start));
    for (auto& ch : word) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return word;
  }

  double number() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '+') ++pos_;  // from_chars rejects a leading '+'
    double value = 0.0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (res.ec != std::errc{}) throw WktParseError(start, "expected number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline Ring parse_ring(WktCursor& cur) {
  Ring ring;
  std::size_t ring_start = cur.pos();
  cur.expect('(');
  do {
    Point2D p;
    p.x = cur.number();
    p.y = cur.number();
    ring.points.push_back(p);
  } while (cur.try_consume(','));
  cur.expect(')');
  if (ring.points.size() < 4)
    throw WktParseError(ring_start, "ring has " + std::to_string(ring.points.size()) +
                                        " points, need at least 4 including closure");
  if (ring.points.front() != ring.points.back())
    throw WktParseError(ring_start, "unclosed ring (first point != last point)");
  return ring;
}

}  // namespace detail

// POLYGON only: 2D, no EMPTY, no Z/M.
inline Region parse_wkt(std::string_view text) {
  detail::WktCursor cur(text);
  std::size_t kw_pos = cur.pos();
  std::string kw = cur.keyword();
  if (kw != "POLYGON")
    throw WktParseError(kw_pos, "geometry type '" + kw + "' not supported, expected POLYGON");
  cur.expect('(');
  Region region;
  region.exterior = detail::parse_ring(cur);
  while (cur.try_consume(',')) region.holes.push_back(detail::parse_ring(cur));
  cur.expect(')');
  if (!cur.at_end()) throw WktParseError(cur.pos(), "trailing characters after polygon");
  return region;
}

inline std::string serialize_wkt(const Region& region) {
  std::string out = "POLYGON(";
  auto append_ring = [&out](const Ring& ring) {
    out += '(';
    for (std::size_t i = 0; i < ring.points.size(); ++i) {
      if (i) out += ',';
      out += format_double(ring.points[i].x);
      out += ' ';
      out += format_double(ring.points[i].y);
    }
    out += ')';
  };
  append_ring(region.exterior);
  for (const auto& hole : region.holes) {
    out += ',';
    append_ring(hole);
  }
  out += ')';
  return out;
}

}  // namespace movreg
