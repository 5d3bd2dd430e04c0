#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ncsim::rf {

struct McsEntry {
  int index = 0;
  double min_snr_db = 0.0;
  double rate = 0.0;  // MB/s

  friend bool operator==(const McsEntry&, const McsEntry&) = default;
};

class McsTable {
 public:
  McsTable() = default;
  // Throws std::invalid_argument unless thresholds and rates strictly increase.
  explicit McsTable(std::vector<McsEntry> entries);

  // 802.11ax, 20 MHz, one spatial stream, 3.2 us guard interval.
  static const McsTable& default_11ax();

  // CSV with header "index,min_snr_db,rate_MBps". Throws IoError / ParseError.
  static McsTable load_csv(const std::filesystem::path& path);
  static McsTable parse_csv(const std::string& text);

  const std::vector<McsEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Highest entry whose threshold is at or below snr; nullopt below MCS 0.
  std::optional<McsEntry> select(double snr_db, double threshold_offset_db = 0.0) const;
  double rate_for(double snr_db, double threshold_offset_db = 0.0) const;

  friend bool operator==(const McsTable&, const McsTable&) = default;

 private:
  std::vector<McsEntry> entries_;
};

inline std::optional<McsEntry> select_rate(const McsTable& table, double snr_db) { return table.select(snr_db); }

}  // namespace ncsim::rf
