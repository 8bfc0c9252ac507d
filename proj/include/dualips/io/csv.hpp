// CSV output with the pinned dialect: comma separator, LF line endings,
// one header row, floats at 17 significant digits. Also the event-log dump
// format (sequence_no, time, map_label, site_i, site_j) with a bit-exact
// round trip.
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualips/event_log.hpp"

namespace dualips {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ += ',';
      out_ += header[i];
    }
    out_ += '\n';
  }

  CsvWriter& cell(const std::string& s) {
    if (!row_open_) row_open_ = true;
    else out_ += ',';
    out_ += s;
    return *this;
  }
  CsvWriter& cell(double v) { return cell(format_double(v)); }
  CsvWriter& cell(long long v) { return cell(std::to_string(v)); }
  CsvWriter& cell(int v) { return cell(std::to_string(v)); }
  CsvWriter& cell(std::uint64_t v) { return cell(std::to_string(v)); }

  void end_row() {
    out_ += '\n';
    row_open_ = false;
  }

  const std::string& str() const { return out_; }

  void write_file(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("CsvWriter: cannot open " + path);
    f << out_;
  }

 private:
  std::string out_;
  bool row_open_ = false;
};

inline std::string event_log_to_csv(const EventLog& log, const RatedFamily& f) {
  CsvWriter w({"sequence_no", "time", "map_label", "site_i", "site_j"});
  for (const Event& e : log.events) {
    const RatedMap& rm = f.maps[e.instance];
    w.cell(std::uint64_t(e.seq)).cell(e.time).cell(rm.label).cell(rm.site_i).cell(rm.site_j);
    w.end_row();
  }
  return w.str();
}

inline EventLog event_log_from_csv(const std::string& csv, const RatedFamily& f, double horizon) {
  EventLog log;
  log.horizon = horizon;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string seq, time, label, si, sj;
    std::getline(row, seq, ',');
    std::getline(row, time, ',');
    std::getline(row, label, ',');
    std::getline(row, si, ',');
    std::getline(row, sj, ',');
    long long site_i = std::stoll(si), site_j = std::stoll(sj);
    std::uint32_t instance = std::uint32_t(-1);
    for (std::uint32_t k = 0; k < f.maps.size(); ++k)
      if (f.maps[k].label == label && f.maps[k].site_i == site_i && f.maps[k].site_j == site_j) {
        instance = k;
        break;
      }
    if (instance == std::uint32_t(-1))
      throw std::runtime_error("event_log_from_csv: no family instance matches " + line);
    log.events.push_back({instance, std::stod(time), std::uint32_t(std::stoull(seq))});
  }
  return log;
}

}  // namespace dualips
