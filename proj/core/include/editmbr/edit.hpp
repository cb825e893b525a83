#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace editmbr {

// A pre-tokenized sentence. Tokens never contain whitespace.
struct Sentence {
  std::vector<std::string> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// Splits on runs of whitespace. An empty or blank line yields an empty Sentence.
Sentence tokenize(std::string_view text);

// Inverse of tokenize: tokens joined by single spaces.
std::string join(const Sentence& sentence);
std::string join(std::span<const std::string> tokens);

// Replace source tokens [start, end) with `replacement`.
//
// start == end is an insertion before token `start`; an empty replacement with
// start < end is a deletion; anything else is a substitution. The default
// ordering is (start, end, replacement), which is the canonical order inside an
// EditSet.
struct Edit {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> replacement;

  bool is_insertion() const noexcept { return start == end; }
  bool is_deletion() const noexcept { return start < end && replacement.empty(); }

  friend bool operator==(const Edit&, const Edit&) = default;
  friend std::strong_ordering operator<=>(const Edit&, const Edit&) = default;
};

bool edit_equal(const Edit& a, const Edit& b);

// Two distinct edits conflict when applying both has no well-defined result:
// their spans overlap, they insert at the same position, or one inserts at a
// point strictly inside the other's span. Adjacent edits do not conflict.
bool conflicts(const Edit& a, const Edit& b);

// "(1,2)->[B]" style rendering used in error messages and traces.
std::string to_string(const Edit& edit);

// Canonical, conflict-free, sorted collection of edits over one source.
class EditSet {
 public:
  EditSet() = default;
  explicit EditSet(std::size_t source_len) : source_len_(source_len) {}

  // Sorts `edits` and validates them. Throws ValidationError on an
  // out-of-range span, a duplicate, or a conflicting pair.
  EditSet(std::size_t source_len, std::vector<Edit> edits);

  std::size_t source_len() const noexcept { return source_len_; }
  const std::vector<Edit>& edits() const noexcept { return edits_; }
  std::size_t size() const noexcept { return edits_.size(); }
  bool empty() const noexcept { return edits_.empty(); }
  auto begin() const noexcept { return edits_.begin(); }
  auto end() const noexcept { return edits_.end(); }
  const Edit& operator[](std::size_t i) const { return edits_[i]; }

  bool contains(const Edit& edit) const;

  // True when `edit` could be added without breaking the invariants.
  bool admits(const Edit& edit) const;

  // Copy with `edit` inserted. Throws ValidationError if !admits(edit).
  EditSet with(const Edit& edit) const;

  friend bool operator==(const EditSet&, const EditSet&) = default;

 private:
  std::size_t source_len_ = 0;
  std::vector<Edit> edits_;
};

// One hypothesis for a sentence: an edit set plus where it came from
// ("system name", "vote-2", "greedy", ...).
struct Candidate {
  EditSet edits;
  std::string label;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Throws ValidationError if the set was built for a different source length.
Sentence apply_edits(const Sentence& source, const EditSet& edits);

std::size_t count_votes(const Edit& edit, std::span<const EditSet> sets);

// Every distinct edit proposed by at least one set, in canonical order, with
// no conflict resolution. The result is generally not a valid EditSet.
std::vector<Edit> distinct_edits(std::span<const EditSet> sets);

// Edits present in every set. Throws ValidationError on an empty list.
EditSet intersect(std::span<const EditSet> sets);

// Edits with at least `min_votes` votes. Conflicts are resolved greedily:
// candidates are visited by vote count (descending), then by the best
// `priority` rank of any system proposing them, then canonical order; an edit
// is kept when it does not conflict with anything kept before it.
//
// `priority` lists system indices from most to least trusted; empty means
// input order. Throws ValidationError on an empty list of sets, mismatched
// source lengths, or a priority list that is not a permutation.
EditSet vote_set(std::span<const EditSet> sets, std::size_t min_votes,
                 std::span<const std::size_t> priority = {});

inline EditSet union_resolved(std::span<const EditSet> sets,
                              std::span<const std::size_t> priority = {}) {
  return vote_set(sets, 1, priority);
}

}  // namespace editmbr
