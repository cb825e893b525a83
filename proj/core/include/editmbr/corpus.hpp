#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "editmbr/alignment.hpp"
#include "editmbr/edit.hpp"

namespace editmbr {

// Whole-file read. Throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);

// Lines without terminators; a trailing newline does not add an empty line and
// a trailing '\r' is stripped from each line.
std::vector<std::string> split_lines(std::string_view text);
std::vector<std::string> read_lines(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::string_view content);

struct CorpusEntry {
  Sentence source;
  // One edit set per system, in system order.
  std::vector<EditSet> hypotheses;
};

struct Corpus {
  std::vector<std::string> system_names;
  std::vector<CorpusEntry> entries;

  std::size_t system_count() const noexcept { return system_names.size(); }
  // Candidates for sentence `i`, labelled with the system names.
  std::vector<Candidate> candidates(std::size_t i) const;
};

// True for paths ending in ".m2" (case-insensitive).
bool is_m2_path(const std::filesystem::path& path);

// Pairs line i of every hypothesis file with line i of the source. Plain-text
// hypotheses are aligned with extract_edits; ".m2" hypotheses contribute their
// annotator-0 edits (the lowest annotator id when 0 is absent) and must carry
// the same source sentences. System names are the file stems, made unique.
//
// Throws DataError on length or source mismatch, IoError on unreadable files.
Corpus load_parallel(const std::filesystem::path& source_path,
                     std::span<const std::filesystem::path> hyp_paths,
                     MergeMode mode = MergeMode::kAll);

}  // namespace editmbr
