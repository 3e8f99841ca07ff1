// candidates.hpp - candidate mate discovery and the spillable pair store
//
// A candidate record is a pair (idx1, idx2) of level simplex ids meaning
// E[idx2] shares all but one vertex with E[idx1] and is tracked under it.
// Records live in memory until the budget is hit, then move to chunk files
// split by idx1 mod chunk_count; chunk records are two little-endian
// 64-bit words, 16 bytes each.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trusskit/errors.hpp"
#include "trusskit/simplex.hpp"

namespace trusskit {

using CandidateRecord = std::pair<std::uint64_t, std::uint64_t>;

inline void encode_record(const CandidateRecord& r, unsigned char* out) {
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<unsigned char>(r.first >> (8 * i));
    out[8 + i] = static_cast<unsigned char>(r.second >> (8 * i));
  }
}

inline CandidateRecord decode_record(const unsigned char* in) {
  CandidateRecord r{0, 0};
  for (int i = 7; i >= 0; --i) {
    r.first = (r.first << 8) | in[i];
    r.second = (r.second << 8) | in[8 + i];
  }
  return r;
}

// Inverted index over codes.  The code of simplex s at position j is s
// minus its j-th vertex; entries store (id, omitted position) and the
// vertex content is re-read from E on lookup, so codes are never copied.
class CandidateIndex {
public:
  explicit CandidateIndex(const std::vector<Simplex>& E) : E_(&E) {}

  void insert(std::uint64_t id) {
    const Simplex& s = (*E_)[id];
    for (std::uint32_t j = 0; j < s.size(); ++j)
      buckets_[code_hash(s, j)].push_back({id, j});
  }

  // Ids of previously indexed simplices sharing at least one code with
  // E[id]; sorted and distinct.  Two distinct same-size simplices share at
  // most one code, so each mate is found exactly once per shared code.
  std::vector<std::uint64_t> find_matches(std::uint64_t id) const {
    const Simplex& s = (*E_)[id];
    std::vector<std::uint64_t> out;
    for (std::uint32_t j = 0; j < s.size(); ++j) {
      auto it = buckets_.find(code_hash(s, j));
      if (it == buckets_.end()) continue;
      for (const Entry& e : it->second)
        if (e.id != id && same_code((*E_)[e.id], e.omit, s, j))
          out.push_back(e.id);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

private:
  struct Entry {
    std::uint64_t id;
    std::uint32_t omit;
  };

  static std::uint64_t code_hash(const Simplex& s, std::uint32_t omit) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (s.size() - 1);
    for (std::uint32_t j = 0; j < s.size(); ++j)
      if (j != omit) h = mix64(h ^ (s[j] + 1));
    return h;
  }

  static bool same_code(const Simplex& a, std::uint32_t omit_a,
                        const Simplex& b, std::uint32_t omit_b) {
    if (a.size() != b.size()) return false;
    std::uint32_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (i == omit_a) { ++i; continue; }
      if (j == omit_b) { ++j; continue; }
      if (a[i] != b[j]) return false;
      ++i; ++j;
    }
    return true;
  }

  const std::vector<Simplex>* E_;
  std::unordered_map<std::uint64_t, std::vector<Entry>> buckets_;
};

class CandidateStore {
public:
  static constexpr std::uint64_t kUnlimited = UINT64_MAX;

  struct Settings {
    std::uint64_t budget = kUnlimited;  // resident records before spilling
    std::uint32_t chunk_count = 8;
    std::filesystem::path workdir;
    std::uint32_t component = 0;
    std::uint32_t level = 0;
    bool keep_files = false;
  };

  enum class Backing { memory, spilled };

  explicit CandidateStore(Settings settings) : settings_(std::move(settings)) {
    if (settings_.budget == 0)
      throw std::invalid_argument("candidate store: zero budget");
    if (settings_.chunk_count == 0)
      throw std::invalid_argument("candidate store: zero chunk count");
  }

  CandidateStore(const CandidateStore&) = delete;
  CandidateStore& operator=(const CandidateStore&) = delete;

  ~CandidateStore() {
    writers_.clear();
    if (!settings_.keep_files) {
      std::error_code ec;
      for (const std::filesystem::path& p : files_)
        std::filesystem::remove(p, ec);
    }
  }

  const Settings& settings() const { return settings_; }
  Backing backing() const { return backing_; }
  bool spilled() const { return backing_ == Backing::spilled; }
  std::uint64_t record_count() const { return total_records_; }

  void add(std::uint64_t idx1, std::uint64_t idx2) {
    ++total_records_;
    if (backing_ == Backing::memory) {
      groups_[idx1].push_back(idx2);
      ++resident_records_;
      if (resident_records_ >= settings_.budget) spill();
    } else {
      append(idx1, {idx1, idx2});
    }
  }

  // Resident records grouped by idx1, ascending; only valid before a spill.
  const std::map<std::uint64_t, std::vector<std::uint64_t>>& groups() const {
    assert(backing_ == Backing::memory);
    return groups_;
  }

  // Moves every resident record into its chunk file and switches the store
  // to appending; later records go straight to disk.
  void spill() {
    assert(backing_ == Backing::memory);
    open_chunks();
    for (const auto& [idx1, mates] : groups_)
      for (std::uint64_t idx2 : mates) append(idx1, {idx1, idx2});
    groups_.clear();
    resident_records_ = 0;
    backing_ = Backing::spilled;
  }

  void flush() {
    for (std::ofstream& w : writers_)
      if (w.is_open()) w.flush();
  }

  const std::vector<std::filesystem::path>& chunk_files() const {
    return files_;
  }

  std::uint64_t chunk_records(std::uint32_t chunk) const {
    return chunk_counts_.empty() ? 0 : chunk_counts_[chunk];
  }

private:
  void open_chunks() {
    std::error_code ec;
    std::filesystem::create_directories(settings_.workdir, ec);
    files_.resize(settings_.chunk_count);
    writers_.resize(settings_.chunk_count);
    chunk_counts_.assign(settings_.chunk_count, 0);
    for (std::uint32_t i = 0; i < settings_.chunk_count; ++i) {
      files_[i] = settings_.workdir /
                  ("cand_" + std::to_string(settings_.component) + "_" +
                   std::to_string(settings_.level) + "_" + std::to_string(i) +
                   ".bin");
      writers_[i].open(files_[i], std::ios::binary | std::ios::trunc);
      if (!writers_[i]) {
        std::error_code rmec;
        for (std::uint32_t j = 0; j <= i; ++j)
          std::filesystem::remove(files_[j], rmec);
        files_.clear();
        writers_.clear();
        throw IoError("cannot create chunk file under " +
                      settings_.workdir.string());
      }
    }
  }

  void append(std::uint64_t idx1, const CandidateRecord& r) {
    std::uint32_t chunk =
        static_cast<std::uint32_t>(idx1 % settings_.chunk_count);
    unsigned char buf[16];
    encode_record(r, buf);
    writers_[chunk].write(reinterpret_cast<const char*>(buf), 16);
    if (!writers_[chunk]) throw IoError("chunk write failed");
    ++chunk_counts_[chunk];
  }

  Settings settings_;
  Backing backing_ = Backing::memory;
  std::map<std::uint64_t, std::vector<std::uint64_t>> groups_;
  std::uint64_t resident_records_ = 0;
  std::uint64_t total_records_ = 0;
  std::vector<std::filesystem::path> files_;
  std::vector<std::ofstream> writers_;
  std::vector<std::uint64_t> chunk_counts_;
};

// Buffered sequential reader of 16-byte records.
class RecordReader {
public:
  explicit RecordReader(const std::filesystem::path& file)
      : in_(file, std::ios::binary) {
    if (!in_) throw IoError("cannot open " + file.string());
  }

  bool next(CandidateRecord& r) {
    if (pos_ == avail_) {
      in_.read(reinterpret_cast<char*>(buf_), sizeof(buf_));
      std::streamsize got = in_.gcount();
      if (got % 16 != 0) throw IoError("truncated candidate record");
      avail_ = static_cast<std::size_t>(got);
      pos_ = 0;
      if (avail_ == 0) return false;
    }
    r = decode_record(buf_ + pos_);
    pos_ += 16;
    return true;
  }

private:
  std::ifstream in_;
  unsigned char buf_[16 * 4096];
  std::size_t pos_ = 0;
  std::size_t avail_ = 0;
};

namespace detail {

inline void write_records(const std::filesystem::path& file,
                          const std::vector<CandidateRecord>& recs) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + file.string());
  unsigned char buf[16];
  for (const CandidateRecord& r : recs) {
    encode_record(r, buf);
    out.write(reinterpret_cast<const char*>(buf), 16);
  }
  out.flush();
  if (!out) throw IoError("write failed on " + file.string());
}

}  // namespace detail

// Sorts the records of a chunk file by (idx1, idx2) in place, using sorted
// runs of at most budget records and a k-way merge.
inline void external_sort_chunk(const std::filesystem::path& file,
                                std::uint64_t budget) {
  if (budget == 0)
    throw std::invalid_argument("external_sort_chunk: zero budget");
  std::error_code ec;
  std::uint64_t bytes = std::filesystem::file_size(file, ec);
  if (ec) throw IoError("cannot stat " + file.string());
  if (bytes % 16 != 0) throw IoError("odd-sized chunk " + file.string());
  std::uint64_t total = bytes / 16;
  if (total <= 1) return;

  if (total <= budget) {
    std::vector<CandidateRecord> recs;
    recs.reserve(total);
    RecordReader in(file);
    CandidateRecord r;
    while (in.next(r)) recs.push_back(r);
    std::sort(recs.begin(), recs.end());
    detail::write_records(file, recs);
    return;
  }

  // pass 1: sorted runs
  std::vector<std::filesystem::path> runs;
  {
    RecordReader in(file);
    std::vector<CandidateRecord> recs;
    recs.reserve(budget);
    CandidateRecord r;
    bool more = true;
    while (more) {
      recs.clear();
      while (recs.size() < budget && (more = in.next(r))) recs.push_back(r);
      if (recs.empty()) break;
      std::sort(recs.begin(), recs.end());
      std::filesystem::path run =
          file.string() + ".run" + std::to_string(runs.size());
      detail::write_records(run, recs);
      runs.push_back(run);
    }
  }

  // pass 2: k-way merge into a sibling file, then swap it in
  {
    std::vector<RecordReader> readers;
    readers.reserve(runs.size());
    for (const std::filesystem::path& run : runs) readers.emplace_back(run);

    using Head = std::pair<CandidateRecord, std::size_t>;
    std::priority_queue<Head, std::vector<Head>, std::greater<Head>> heads;
    CandidateRecord r;
    for (std::size_t i = 0; i < readers.size(); ++i)
      if (readers[i].next(r)) heads.push({r, i});

    std::filesystem::path merged = file.string() + ".sorted";
    std::ofstream out(merged, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + merged.string());
    unsigned char buf[16];
    while (!heads.empty()) {
      auto [rec, src] = heads.top();
      heads.pop();
      encode_record(rec, buf);
      out.write(reinterpret_cast<const char*>(buf), 16);
      if (readers[src].next(r)) heads.push({r, src});
    }
    out.flush();
    if (!out) throw IoError("write failed on " + merged.string());
    out.close();
    std::filesystem::rename(merged, file);
  }
  for (const std::filesystem::path& run : runs)
    std::filesystem::remove(run, ec);
}

}  // namespace trusskit
