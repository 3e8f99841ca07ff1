// io.hpp - text formats for trussness tables, rankings, filtrations,
// stats records, and complex files

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trusskit/analysis.hpp"
#include "trusskit/complex.hpp"
#include "trusskit/engine.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/simplex.hpp"

namespace trusskit {

namespace detail {

inline void append_vertices(std::string& out, const Simplex& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(s[i]);
  }
}

inline std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

}  // namespace detail

// One line per simplex: vertices, trussness, lower bound, tab-separated.
// Map order is (size asc, lex asc).  include_trivial=false keeps only the
// rows where trussness differs from the lower bound.
inline std::string format_trussness_tsv(const TrussnessMap& tr,
                                        bool include_trivial = true) {
  std::string out;
  for (const auto& [s, info] : tr) {
    if (!include_trivial && info.trussness == info.lower_bound) continue;
    detail::append_vertices(out, s);
    out += '\t';
    out += std::to_string(info.trussness);
    out += '\t';
    out += std::to_string(info.lower_bound);
    out += '\n';
  }
  return out;
}

// One line per ranked simplex: vertices, trussness.
inline std::string format_topn_tsv(
    const std::vector<std::pair<Simplex, std::uint32_t>>& rows) {
  std::string out;
  for (const auto& [s, t] : rows) {
    detail::append_vertices(out, s);
    out += '\t';
    out += std::to_string(t);
    out += '\n';
  }
  return out;
}

// One line per entry, filtration order: value, tab, vertices.
inline std::string format_filtration(const Filtration& f) {
  std::string out;
  for (const FiltrationEntry& e : f) {
    out += std::to_string(e.value);
    out += '\t';
    detail::append_vertices(out, e.simplex);
    out += '\n';
  }
  return out;
}

// Header line plus a single record.
inline std::string format_stats_tsv(const ComplexStats& st) {
  std::string out =
      "simplices\ttotal_joists\topen_joists\topen_triangles\tnon_trivial"
      "\topen_joists_pct\topen_triangles_pct\tnon_trivial_pct\n";
  out += std::to_string(st.total_simplices);
  out += '\t';
  out += std::to_string(st.total_joists);
  out += '\t';
  out += std::to_string(st.open_joists);
  out += '\t';
  out += std::to_string(st.open_triangles);
  out += '\t';
  out += std::to_string(st.non_trivial);
  out += '\t';
  out += detail::fixed2(st.open_joists_pct);
  out += '\t';
  out += detail::fixed2(st.open_triangles_pct);
  out += '\t';
  out += detail::fixed2(st.non_trivial_pct);
  out += '\n';
  return out;
}

// Maximal simplices, one per line; parse_complex reads this back.
inline std::string format_complex(const SimplicialComplex& K) {
  std::string out;
  for (const Simplex& m : K.maximal_simplices()) {
    detail::append_vertices(out, m);
    out += '\n';
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path.string());
  return std::move(buf).str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed on " + path.string());
}

}  // namespace trusskit
