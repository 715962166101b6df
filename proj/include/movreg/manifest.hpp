#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>

#include "movreg/geometry.hpp"
#include "movreg/wkt.hpp"

namespace movreg {

namespace detail {

// One CSV record; handles quoted fields with "" escapes.
inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

// Manifest CSV: header "frame,wkt" (inline WKT, quoted) or "frame,path"
// (WKT file relative to the manifest). Frames must be strictly increasing.
// t_norm spans [0, 1] over the manifest's frame range.
inline SnapshotSequence read_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("manifest: cannot open " + path);
  const std::filesystem::path base = std::filesystem::path(path).parent_path();

  std::string line;
  if (!std::getline(is, line)) throw Error("manifest: empty file " + path);
  auto header = detail::split_csv_row(line);
  bool inline_wkt;
  if (header.size() == 2 && header[0] == "frame" && header[1] == "wkt") {
    inline_wkt = true;
  } else if (header.size() == 2 && header[0] == "frame" && header[1] == "path") {
    inline_wkt = false;
  } else {
    throw Error("manifest: header must be 'frame,wkt' or 'frame,path'");
  }

  SnapshotSequence seq;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto fields = detail::split_csv_row(line);
    if (fields.size() != 2)
      throw Error("manifest row " + std::to_string(row) + ": expected 2 fields, got " +
                  std::to_string(fields.size()));
    Snapshot snap;
    try {
      std::size_t used = 0;
      snap.frame = std::stol(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw Error("manifest row " + std::to_string(row) + ": bad frame index '" + fields[0] + "'");
    }
    if (snap.frame < 0) throw Error("manifest row " + std::to_string(row) + ": frame must be >= 0");
    if (!seq.empty() && snap.frame <= seq.back().frame)
      throw Error("manifest row " + std::to_string(row) + ": frame " + std::to_string(snap.frame) +
                  " not greater than previous frame " + std::to_string(seq.back().frame));

    std::string wkt_text;
    if (inline_wkt) {
      wkt_text = fields[1];
    } else {
      std::ifstream wf(base / fields[1]);
      if (!wf) throw Error("manifest row " + std::to_string(row) + ": cannot open " + fields[1]);
      std::stringstream ss;
      ss << wf.rdbuf();
      wkt_text = ss.str();
    }
    try {
      snap.region = parse_wkt(wkt_text);
    } catch (const Error& e) {
      throw Error("manifest row " + std::to_string(row) + ": " + e.what());
    }
    auto report = validate_region(snap.region);
    if (!report.valid())
      throw Error("manifest row " + std::to_string(row) + ": invalid region (" +
                  to_string(report.violations.front().kind) + ": " +
                  report.violations.front().detail + ")");
    seq.push_back(std::move(snap));
  }
  if (seq.empty()) throw Error("manifest: no rows in " + path);

  const long first = seq.front().frame, last = seq.back().frame;
  for (auto& s : seq)
    s.t_norm = last == first ? 0.0 : static_cast<double>(s.frame - first) / static_cast<double>(last - first);
  return seq;
}

inline void write_manifest(const std::string& path, const SnapshotSequence& seq) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("manifest: cannot write " + path);
  os << "frame,wkt\n";
  for (const auto& s : seq)
    os << s.frame << ',' << detail::csv_quote(serialize_wkt(s.region)) << '\n';
  if (!os) throw Error("manifest: write failed for " + path);
}

}  // namespace movreg
