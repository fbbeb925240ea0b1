#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cb/optimizer.hpp"

namespace cb {

// Shortest exact decimal form via %.17g; round-trips bit-exactly through strtod.
std::string fmt_g17(double v);

// Archive export: one row per entry, segment-ordered variables then objectives.
// Header: rx0..,ry0..,rz0..,ri0..,jx0..,jy0..,jz0..,ji0..,f1_db,f2_db,f3_j,violation_m.
std::string archive_csv(const std::vector<ArchiveEntry>& entries, const SolutionLayout& layout);
struct ParsedArchive {
  std::vector<ArchiveEntry> entries;
  SolutionLayout layout;
};
ParsedArchive parse_archive_csv(const std::string& text);

// Header: iter,best_f1_db,best_f2_db,best_f3_j,archive_size (iter starts at 1).
std::string history_csv(const RunHistory& history);
struct ParsedHistory {
  std::vector<double> best_f1, best_f2, best_f3;
  std::vector<int> archive_size;
};
ParsedHistory parse_history_csv(const std::string& text);

// Per-iteration archive objectives, header iter,f1_db,f2_db,f3_j.
std::string snapshots_csv(const RunHistory& history);
std::vector<std::vector<ObjectiveVector>> parse_snapshots_csv(const std::string& text);

// Write-to-temp-then-rename in the destination directory.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace cb
