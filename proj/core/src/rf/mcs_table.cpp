#include "ncsim/rf/mcs_table.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "ncsim/error.hpp"

namespace ncsim::rf {

McsTable::McsTable(std::vector<McsEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (!(entries_[i].min_snr_db > entries_[i - 1].min_snr_db) || !(entries_[i].rate > entries_[i - 1].rate)) {
      throw std::invalid_argument(fmt::format("MCS table not strictly increasing at entry {}", i));
    }
  }
}

const McsTable& McsTable::default_11ax() {
  static const McsTable table({
      {0, 5.0, 1.075},   {1, 8.0, 2.15},    {2, 11.0, 3.225},  {3, 14.0, 4.3},
      {4, 18.0, 6.45},   {5, 21.0, 8.6},    {6, 25.0, 9.675},  {7, 29.0, 10.75},
      {8, 33.0, 12.9},   {9, 35.0, 14.338}, {10, 38.0, 16.125}, {11, 41.0, 17.925},
  });
  return table;
}

McsTable McsTable::parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<McsEntry> entries;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line != "index,min_snr_db,rate_MBps") throw ParseError("unexpected MCS header: " + line, line_no, 1);
      continue;
    }
    std::istringstream row(line);
    std::string a, b, c, extra;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c, ',') ||
        std::getline(row, extra, ',')) {
      throw ParseError("expected three fields", line_no, 1);
    }
    try {
      entries.push_back({std::stoi(a), std::stod(b), std::stod(c)});
    } catch (const std::logic_error&) {
      throw ParseError("non-numeric field in: " + line, line_no, 1);
    }
  }
  try {
    return McsTable(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

McsTable McsTable::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open MCS table " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::optional<McsEntry> McsTable::select(double snr_db, double threshold_offset_db) const {
  std::optional<McsEntry> best;
  for (const auto& e : entries_) {
    if (snr_db >= e.min_snr_db - threshold_offset_db) best = e;
  }
  return best;
}

double McsTable::rate_for(double snr_db, double threshold_offset_db) const {
  const auto e = select(snr_db, threshold_offset_db);
  return e ? e->rate : 0.0;
}

}  // namespace ncsim::rf
