#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "editmbr/edit.hpp"

namespace editmbr {

enum class MergeMode {
  // Every maximal run of adjacent non-match operations becomes one edit.
  kAll,
  // One edit per substitution or deletion. Consecutive insertions at the same
  // source position are still folded together, since separate insertions at
  // one position would conflict.
  kNone,
};

// Token-level Levenshtein alignment with unit costs. The backtrace prefers
// match > substitute > delete > insert at every cell, so the result is
// canonical: equal inputs always give equal edit sets, and
// apply_edits(source, extract_edits(source, hyp)) == hyp.
EditSet extract_edits(const Sentence& source, const Sentence& hypothesis,
                      MergeMode mode = MergeMode::kAll);

std::size_t levenshtein_distance(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace editmbr
