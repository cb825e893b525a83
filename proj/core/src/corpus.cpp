#include "editmbr/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "editmbr/errors.hpp"
#include "editmbr/m2.hpp"

namespace editmbr {

namespace fs = std::filesystem;

namespace {

std::vector<EditSet> hypothesis_sets_from_text(const fs::path& path,
                                               const std::vector<Sentence>& sources,
                                               MergeMode mode) {
  std::vector<std::string> lines = read_lines(path);
  if (lines.size() != sources.size()) {
    throw DataError("length mismatch: " + path.string() + " has " + std::to_string(lines.size()) +
                    " lines but the source has " + std::to_string(sources.size()));
  }
  std::vector<EditSet> sets;
  sets.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    sets.push_back(extract_edits(sources[i], tokenize(lines[i]), mode));
  }
  return sets;
}

std::vector<EditSet> hypothesis_sets_from_m2(const fs::path& path,
                                             const std::vector<Sentence>& sources) {
  std::vector<M2Entry> entries = read_m2_file(path);
  if (entries.size() != sources.size()) {
    throw DataError("length mismatch: " + path.string() + " has " +
                    std::to_string(entries.size()) + " entries but the source has " +
                    std::to_string(sources.size()) + " lines");
  }
  std::vector<EditSet> sets;
  sets.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].source != sources[i]) {
      throw DataError(path.string() + ": entry " + std::to_string(i + 1) +
                      " does not match source line " + std::to_string(i + 1));
    }
    if (entries[i].annotations.empty()) {
      throw DataError(path.string() + ": entry " + std::to_string(i + 1) + " has no annotations");
    }
    const M2Annotation* a = entries[i].find(0);
    sets.push_back(a ? a->edits : entries[i].annotations.front().edits);
  }
  return sets;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return std::move(buf).str();
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t stop = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, stop - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    pos = stop + 1;
  }
  return lines;
}

std::vector<std::string> read_lines(const fs::path& path) { return split_lines(read_file(path)); }

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing " + path.string());
}

std::vector<Candidate> Corpus::candidates(std::size_t i) const {
  const CorpusEntry& entry = entries.at(i);
  std::vector<Candidate> out;
  out.reserve(entry.hypotheses.size());
  for (std::size_t s = 0; s < entry.hypotheses.size(); ++s) {
    out.push_back({entry.hypotheses[s], s < system_names.size() ? system_names[s]
                                                                : "sys" + std::to_string(s)});
  }
  return out;
}

bool is_m2_path(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".m2";
}

Corpus load_parallel(const fs::path& source_path, std::span<const fs::path> hyp_paths,
                     MergeMode mode) {
  std::vector<Sentence> sources;
  for (const std::string& line : read_lines(source_path)) sources.push_back(tokenize(line));

  Corpus corpus;
  corpus.entries.resize(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) corpus.entries[i].source = sources[i];

  std::set<std::string> used;
  for (std::size_t s = 0; s < hyp_paths.size(); ++s) {
    const fs::path& path = hyp_paths[s];
    std::vector<EditSet> sets = is_m2_path(path) ? hypothesis_sets_from_m2(path, sources)
                                                 : hypothesis_sets_from_text(path, sources, mode);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      corpus.entries[i].hypotheses.push_back(std::move(sets[i]));
    }

    std::string name = path.stem().string();
    if (name.empty()) name = "sys" + std::to_string(s);
    if (used.count(name)) name += "#" + std::to_string(s);
    used.insert(name);
    corpus.system_names.push_back(std::move(name));
  }
  return corpus;
}

}  // namespace editmbr
