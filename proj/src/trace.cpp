#include "camp/trace.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace camp {

namespace {

constexpr const char* kHeader = "key,size,cost,phase";

[[noreturn]] void fail(const std::string& path, std::uint64_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(std::string_view field, const std::string& path, std::uint64_t line,
                        const char* name) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    fail(path, line, std::string("bad ") + name + " field '" + std::string(field) + "'");
  return value;
}

}  // namespace

void validate_record(const TraceRecord& record) {
  if (record.key.empty()) throw std::invalid_argument("record key must be non-empty");
  if (record.size == 0) throw std::invalid_argument("record size must be >= 1");
  if (record.size > kMaxRecordSize)
    throw std::invalid_argument("record size exceeds the supported maximum");
  if (record.cost > kMaxRecordCost)
    throw std::invalid_argument("record cost exceeds the supported maximum");
}

TraceReader::TraceReader(const std::filesystem::path& path)
    : in_(path), path_(path.string()) {
  if (!in_) throw std::runtime_error("cannot open trace file " + path_);
  std::string header;
  if (!std::getline(in_, header)) fail(path_, 1, "missing header line");
  ++line_;
  if (header == std::string(kHeader) + "\r") header.pop_back();
  if (header != kHeader)
    fail(path_, 1, "expected header '" + std::string(kHeader) + "', got '" + header + "'");
}

bool TraceReader::next(TraceRecord& out) {
  std::string row;
  if (!std::getline(in_, row)) {
    if (in_.bad()) throw std::runtime_error("I/O error reading " + path_);
    return false;
  }
  ++line_;
  if (!row.empty() && row.back() == '\r') row.pop_back();

  std::string_view rest = row;
  std::string_view fields[4];
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = rest.find(',');
    if (comma == std::string_view::npos) fail(path_, line_, "expected 4 comma-separated fields");
    fields[i] = rest.substr(0, comma);
    rest.remove_prefix(comma + 1);
  }
  if (rest.find(',') != std::string_view::npos)
    fail(path_, line_, "expected 4 comma-separated fields");
  fields[3] = rest;

  out.key.assign(fields[0]);
  out.size = parse_u64(fields[1], path_, line_, "size");
  out.cost = parse_u64(fields[2], path_, line_, "cost");
  const std::uint64_t phase = parse_u64(fields[3], path_, line_, "phase");
  if (phase > 0xFFFFFFFFull) fail(path_, line_, "phase out of range");
  out.phase = static_cast<std::uint32_t>(phase);

  try {
    validate_record(out);
  } catch (const std::invalid_argument& e) {
    fail(path_, line_, e.what());
  }
  return true;
}

TraceWriter::TraceWriter(const std::filesystem::path& path)
    : out_(path, std::ios::binary), path_(path.string()) {
  if (!out_) throw std::runtime_error("cannot open trace file for writing: " + path_);
  out_ << kHeader << '\n';
}

void TraceWriter::write(const TraceRecord& record) {
  char buffer[96];
  const int n = std::snprintf(buffer, sizeof buffer, ",%llu,%llu,%u\n",
                              static_cast<unsigned long long>(record.size),
                              static_cast<unsigned long long>(record.cost), record.phase);
  out_.write(record.key.data(), static_cast<std::streamsize>(record.key.size()));
  out_.write(buffer, n);
  if (!out_) throw std::runtime_error("I/O error writing " + path_);
}

std::vector<TraceRecord> read_trace(const std::filesystem::path& path) {
  TraceReader reader(path);
  std::vector<TraceRecord> records;
  TraceRecord record;
  while (reader.next(record)) records.push_back(record);
  return records;
}

void write_trace(const std::vector<TraceRecord>& records, const std::filesystem::path& path) {
  TraceWriter writer(path);
  for (const TraceRecord& record : records) writer.write(record);
}

void write_trace(TraceStream& stream, const std::filesystem::path& path) {
  TraceWriter writer(path);
  TraceRecord record;
  while (stream.next(record)) writer.write(record);
}

TraceStats scan_trace(TraceStream& stream) {
  TraceStats stats;
  std::unordered_set<std::string> seen;
  TraceRecord record;
  while (stream.next(record)) {
    ++stats.records;
    if (seen.insert(record.key).second) {
      ++stats.unique_keys;
      stats.unique_bytes += record.size;
    }
  }
  return stats;
}

TraceStats scan_trace(const std::filesystem::path& path) {
  TraceReader reader(path);
  return scan_trace(reader);
}

}  // namespace camp
