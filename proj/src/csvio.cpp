#include "cb/csvio.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cb {
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("csv: bad number '" + s + "'");
  return v;
}

long to_long(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("csv: bad integer '" + s + "'");
  return v;
}

// Count of header columns with the given prefix followed by a decimal index.
int count_prefixed(const std::vector<std::string>& cols, const std::string& prefix) {
  int n = 0;
  for (const auto& c : cols)
    if (c.size() > prefix.size() && c.compare(0, prefix.size(), prefix) == 0 &&
        c.find_first_not_of("0123456789", prefix.size()) == std::string::npos)
      ++n;
  return n;
}

}  // namespace

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string archive_csv(const std::vector<ArchiveEntry>& entries, const SolutionLayout& layout) {
  std::string out;
  const char* seg_names[8] = {"rx", "ry", "rz", "ri", "jx", "jy", "jz", "ji"};
  const int seg_sizes[8] = {layout.n_ur, layout.n_ur, layout.n_ur, layout.n_ur,
                            layout.n_uj, layout.n_uj, layout.n_uj, layout.n_uj};
  for (int s = 0; s < 8; ++s)
    for (int k = 0; k < seg_sizes[s]; ++k) {
      out += seg_names[s];
      out += std::to_string(k);
      out += ',';
    }
  out += "f1_db,f2_db,f3_j,violation_m\n";
  for (const auto& e : entries) {
    if (e.x.size() != layout.dim())
      throw std::invalid_argument("archive_csv: entry dimension mismatch");
    for (Eigen::Index d = 0; d < e.x.size(); ++d) {
      out += fmt_g17(e.x[d]);
      out += ',';
    }
    out += fmt_g17(e.f.f1_db);
    out += ',';
    out += fmt_g17(e.f.f2_db);
    out += ',';
    out += fmt_g17(e.f.f3_j);
    out += ',';
    out += fmt_g17(e.f.violation_m);
    out += '\n';
  }
  return out;
}

ParsedArchive parse_archive_csv(const std::string& text) {
  const auto rows = lines_of(text);
  if (rows.empty()) throw std::runtime_error("archive csv: missing header");
  const auto header = split(rows.front(), ',');
  ParsedArchive parsed;
  parsed.layout.n_ur = count_prefixed(header, "rx");
  parsed.layout.n_uj = count_prefixed(header, "jx");
  const int dim = parsed.layout.dim();
  if (parsed.layout.n_ur < 1 || parsed.layout.n_uj < 1 ||
      static_cast<int>(header.size()) != dim + 4)
    throw std::runtime_error("archive csv: unexpected header shape");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cols = split(rows[r], ',');
    if (static_cast<int>(cols.size()) != dim + 4)
      throw std::runtime_error("archive csv: row width mismatch");
    ArchiveEntry e;
    e.x.resize(dim);
    for (int d = 0; d < dim; ++d) e.x[d] = to_double(cols[d]);
    e.f.f1_db = to_double(cols[dim]);
    e.f.f2_db = to_double(cols[dim + 1]);
    e.f.f3_j = to_double(cols[dim + 2]);
    e.f.violation_m = to_double(cols[dim + 3]);
    parsed.entries.push_back(std::move(e));
  }
  return parsed;
}

std::string history_csv(const RunHistory& history) {
  std::string out = "iter,best_f1_db,best_f2_db,best_f3_j,archive_size\n";
  for (std::size_t t = 0; t < history.best_f1.size(); ++t) {
    out += std::to_string(t + 1);
    out += ',';
    out += fmt_g17(history.best_f1[t]);
    out += ',';
    out += fmt_g17(history.best_f2[t]);
    out += ',';
    out += fmt_g17(history.best_f3[t]);
    out += ',';
    out += std::to_string(history.archive_size[t]);
    out += '\n';
  }
  return out;
}

ParsedHistory parse_history_csv(const std::string& text) {
  const auto rows = lines_of(text);
  if (rows.empty() || split(rows.front(), ',').size() != 5)
    throw std::runtime_error("history csv: bad header");
  ParsedHistory parsed;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cols = split(rows[r], ',');
    if (cols.size() != 5) throw std::runtime_error("history csv: row width mismatch");
    parsed.best_f1.push_back(to_double(cols[1]));
    parsed.best_f2.push_back(to_double(cols[2]));
    parsed.best_f3.push_back(to_double(cols[3]));
    parsed.archive_size.push_back(static_cast<int>(to_long(cols[4])));
  }
  return parsed;
}

std::string snapshots_csv(const RunHistory& history) {
  std::string out = "iter,f1_db,f2_db,f3_j\n";
  for (std::size_t t = 0; t < history.snapshots.size(); ++t)
    for (const auto& f : history.snapshots[t]) {
      out += std::to_string(t + 1);
      out += ',';
      out += fmt_g17(f.f1_db);
      out += ',';
      out += fmt_g17(f.f2_db);
      out += ',';
      out += fmt_g17(f.f3_j);
      out += '\n';
    }
  return out;
}

std::vector<std::vector<ObjectiveVector>> parse_snapshots_csv(const std::string& text) {
  const auto rows = lines_of(text);
  if (rows.empty() || split(rows.front(), ',').size() != 4)
    throw std::runtime_error("snapshots csv: bad header");
  std::vector<std::vector<ObjectiveVector>> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cols = split(rows[r], ',');
    if (cols.size() != 4) throw std::runtime_error("snapshots csv: row width mismatch");
    const long iter = to_long(cols[0]);
    if (iter < 1 || static_cast<std::size_t>(iter) < out.size())
      throw std::runtime_error("snapshots csv: iterations out of order");
    while (out.size() < static_cast<std::size_t>(iter)) out.emplace_back();
    ObjectiveVector f;
    f.f1_db = to_double(cols[1]);
    f.f2_db = to_double(cols[2]);
    f.f3_j = to_double(cols[3]);
    out.back().push_back(f);
  }
  return out;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace cb
