#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace camp {

// Limits enforced at trace load; they keep cost * max_size_seen inside
// 64-bit arithmetic.
inline constexpr std::uint64_t kMaxRecordSize = std::uint64_t{1} << 30;  // bytes
inline constexpr std::uint64_t kMaxRecordCost = 1'000'000'000;

// One request: a key, its value size in bytes, the cost of recomputing the
// value, and the index of the source trace file (0 when unused).
struct TraceRecord {
  std::string key;
  std::uint64_t size = 0;
  std::uint64_t cost = 0;
  std::uint32_t phase = 0;
};

// Throws std::invalid_argument if the record violates the trace contract
// (empty key, size 0, or size/cost above the load limits).
void validate_record(const TraceRecord& record);

// Pull-based record source shared by file readers, in-memory traces and
// synthetic generators.
class TraceStream {
 public:
  virtual ~TraceStream() = default;
  virtual bool next(TraceRecord& out) = 0;
};

class VectorTraceStream final : public TraceStream {
 public:
  explicit VectorTraceStream(const std::vector<TraceRecord>& records) : records_(&records) {}
  bool next(TraceRecord& out) override {
    if (pos_ >= records_->size()) return false;
    out = (*records_)[pos_++];
    return true;
  }

 private:
  const std::vector<TraceRecord>* records_;
  std::size_t pos_ = 0;
};

// CSV trace file access. Format: header line "key,size,cost,phase", then one
// record per line with decimal integers. Writing then reading then writing
// again reproduces the file byte for byte.
class TraceReader final : public TraceStream {
 public:
  explicit TraceReader(const std::filesystem::path& path);
  bool next(TraceRecord& out) override;

 private:
  std::ifstream in_;
  std::string path_;
  std::uint64_t line_ = 0;
};

class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);
  void write(const TraceRecord& record);

 private:
  std::ofstream out_;
  std::string path_;
};

std::vector<TraceRecord> read_trace(const std::filesystem::path& path);
void write_trace(const std::vector<TraceRecord>& records, const std::filesystem::path& path);
void write_trace(TraceStream& stream, const std::filesystem::path& path);

struct TraceStats {
  std::uint64_t records = 0;
  std::uint64_t unique_keys = 0;
  std::uint64_t unique_bytes = 0;  // sum of sizes over distinct keys
};

TraceStats scan_trace(TraceStream& stream);
TraceStats scan_trace(const std::filesystem::path& path);

}  // namespace camp
