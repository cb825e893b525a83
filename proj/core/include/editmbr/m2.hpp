#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "editmbr/edit.hpp"

namespace editmbr {

// One annotator's edits for a sentence. `types[i]` is the error type string of
// `edits[i]` ("UNK" when untyped); types are carried through untouched.
struct M2Annotation {
  std::size_t annotator = 0;
  EditSet edits;
  std::vector<std::string> types;

  friend bool operator==(const M2Annotation&, const M2Annotation&) = default;
};

struct M2Entry {
  Sentence source;
  // Sorted by annotator id, at most one annotation per id.
  std::vector<M2Annotation> annotations;

  // Annotation for `annotator`, or nullptr.
  const M2Annotation* find(std::size_t annotator) const;

  friend bool operator==(const M2Entry&, const M2Entry&) = default;
};

inline constexpr std::string_view kUntypedEdit = "UNK";

// Builds an annotation with every edit typed "UNK".
M2Annotation untyped_annotation(EditSet edits, std::size_t annotator = 0);

// Parses M2 text. Grammar, one item per line:
//   S <tokens>
//   A <start> <end>|||<type>|||<replacement>|||<required>|||<comment>|||<annotator>
// followed by a blank line. "-NONE-" or an empty replacement field means the
// empty replacement. "A -1 -1|||noop|||..." gives the annotator an empty set.
// CRLF line endings are accepted.
//
// Throws ParseError (with line number) for malformed lines and
// ValidationError for out-of-range or overlapping edits.
std::vector<M2Entry> parse_m2(std::string_view text);

// Canonical M2 text; parse_m2(emit_m2(x)) == x. Empty annotations are written
// as noop lines. Output uses LF line endings.
std::string emit_m2(const std::vector<M2Entry>& entries);

std::vector<M2Entry> read_m2_file(const std::filesystem::path& path);

}  // namespace editmbr
