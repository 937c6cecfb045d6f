#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bkev/breakeven.hpp"
#include "bkev/grid.hpp"

namespace bkev {

enum class Dtype : std::uint8_t { Float32 = 0, Float64 = 1 };

inline constexpr std::uint32_t kTrajectoryFormatVersion = 1;

/// Binary layout: "BKEV", u32 version, u8 dtype, u8 dim, u32 channels, u32 n,
/// u32 n_frames, then little-endian samples frame by frame (channel-major,
/// row-major). Metadata the header cannot hold (PDE id, seed, times, domain
/// length) goes to a JSON sidecar at `<path>.json`.
void write_trajectory(const std::filesystem::path& path, const Trajectory& trajectory, Dtype dtype = Dtype::Float64);

/// Reads a file written by write_trajectory. Without a sidecar the PDE id is
/// empty, the seed 0, the domain length 1 and times 1, 2, ..., n_frames.
Trajectory read_trajectory(const std::filesystem::path& path);

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);
/// fnv1a_hex of a file's content.
std::string file_hash(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
/// Writes through a temporary file and renames it into place.
void write_text(const std::filesystem::path& path, std::string_view text);

inline constexpr std::string_view kRecordsHeader = "model,benchmark,budget_s,data_frac,nrmse_avg,nrmse_worst,c_inf_s";

/// CSV with the kRecordsHeader columns. Rows violating record invariants or
/// repeating a (model, benchmark, budget) key raise ParseError with the line.
std::vector<SurrogateRecord> parse_records_csv(std::string_view text);
/// JSON array of objects keyed like the CSV header, or {"records": [...]}.
std::vector<SurrogateRecord> parse_records_json(std::string_view text);
/// Dispatches on the extension (.json, otherwise CSV).
std::vector<SurrogateRecord> load_records(const std::filesystem::path& path);
std::string records_to_csv(const std::vector<SurrogateRecord>& records);

/// Exclusive advisory lock held while wallclock costs are measured, so two
/// toolkit processes never time concurrently. `acquire` fails fast.
class TimingLock {
 public:
  /// Default location: $BKEV_LOCK_DIR or the system temp directory.
  static std::filesystem::path default_path();
  /// Throws bkev::Error if another process holds the lock.
  explicit TimingLock(const std::filesystem::path& path = default_path());
  ~TimingLock();
  TimingLock(const TimingLock&) = delete;
  TimingLock& operator=(const TimingLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace bkev
