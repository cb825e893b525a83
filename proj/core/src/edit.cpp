#include "editmbr/edit.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "editmbr/errors.hpp"

namespace editmbr {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool strictly_inside(std::size_t point, const Edit& span) {
  return span.start < point && point < span.end;
}

void check_range(std::size_t source_len, const Edit& edit) {
  if (edit.start > edit.end || edit.end > source_len) {
    throw ValidationError("edit " + to_string(edit) + " is out of range for a source of " +
                          std::to_string(source_len) + " tokens");
  }
}

void check_same_source(std::span<const EditSet> sets) {
  if (sets.empty()) throw ValidationError("expected at least one edit set");
  for (const auto& set : sets) {
    if (set.source_len() != sets.front().source_len()) {
      throw ValidationError("edit sets refer to sources of different lengths (" +
                            std::to_string(sets.front().source_len()) + " vs " +
                            std::to_string(set.source_len()) + ")");
    }
  }
}

}  // namespace

Sentence tokenize(std::string_view text) {
  Sentence out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string join(const Sentence& sentence) { return join(std::span(sentence.tokens)); }

bool edit_equal(const Edit& a, const Edit& b) { return a == b; }

bool conflicts(const Edit& a, const Edit& b) {
  if (a == b) return false;
  if (a.is_insertion() && b.is_insertion()) return a.start == b.start;
  if (a.is_insertion()) return strictly_inside(a.start, b);
  if (b.is_insertion()) return strictly_inside(b.start, a);
  return a.start < b.end && b.start < a.end;
}

std::string to_string(const Edit& edit) {
  return "(" + std::to_string(edit.start) + "," + std::to_string(edit.end) + ")->[" +
         join(std::span(edit.replacement)) + "]";
}

EditSet::EditSet(std::size_t source_len, std::vector<Edit> edits)
    : source_len_(source_len), edits_(std::move(edits)) {
  std::sort(edits_.begin(), edits_.end());
  for (std::size_t i = 0; i < edits_.size(); ++i) {
    check_range(source_len_, edits_[i]);
    // Sorted by start, so once a later edit starts past our end nothing
    // further can overlap.
    for (std::size_t j = i + 1; j < edits_.size() && edits_[j].start <= edits_[i].end; ++j) {
      if (edits_[i] == edits_[j]) {
        throw ValidationError("duplicate edit " + to_string(edits_[i]));
      }
      if (conflicts(edits_[i], edits_[j])) {
        throw ValidationError("edits " + to_string(edits_[i]) + " and " + to_string(edits_[j]) +
                              " conflict");
      }
    }
  }
}

bool EditSet::contains(const Edit& edit) const {
  return std::binary_search(edits_.begin(), edits_.end(), edit);
}

bool EditSet::admits(const Edit& edit) const {
  if (edit.start > edit.end || edit.end > source_len_) return false;
  return std::none_of(edits_.begin(), edits_.end(), [&](const Edit& other) {
    return other == edit || conflicts(other, edit);
  });
}

EditSet EditSet::with(const Edit& edit) const {
  check_range(source_len_, edit);
  if (!admits(edit)) {
    throw ValidationError("edit " + to_string(edit) + " cannot join an edit set it conflicts with");
  }
  EditSet out = *this;
  out.edits_.insert(std::upper_bound(out.edits_.begin(), out.edits_.end(), edit), edit);
  return out;
}

Sentence apply_edits(const Sentence& source, const EditSet& edits) {
  if (edits.source_len() != source.size()) {
    throw ValidationError("edit set built for " + std::to_string(edits.source_len()) +
                          " tokens applied to a source of " + std::to_string(source.size()));
  }
  Sentence out;
  out.tokens.reserve(source.size());
  std::size_t cursor = 0;
  for (const Edit& edit : edits) {
    out.tokens.insert(out.tokens.end(), source.tokens.begin() + static_cast<std::ptrdiff_t>(cursor),
                      source.tokens.begin() + static_cast<std::ptrdiff_t>(edit.start));
    out.tokens.insert(out.tokens.end(), edit.replacement.begin(), edit.replacement.end());
    cursor = edit.end;
  }
  out.tokens.insert(out.tokens.end(), source.tokens.begin() + static_cast<std::ptrdiff_t>(cursor),
                    source.tokens.end());
  return out;
}

std::size_t count_votes(const Edit& edit, std::span<const EditSet> sets) {
  return static_cast<std::size_t>(
      std::count_if(sets.begin(), sets.end(), [&](const EditSet& s) { return s.contains(edit); }));
}

std::vector<Edit> distinct_edits(std::span<const EditSet> sets) {
  std::vector<Edit> all;
  for (const auto& set : sets) all.insert(all.end(), set.begin(), set.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

EditSet intersect(std::span<const EditSet> sets) {
  check_same_source(sets);
  std::vector<Edit> common;
  for (const Edit& edit : sets.front()) {
    if (count_votes(edit, sets) == sets.size()) common.push_back(edit);
  }
  return EditSet(sets.front().source_len(), std::move(common));
}

EditSet vote_set(std::span<const EditSet> sets, std::size_t min_votes,
                 std::span<const std::size_t> priority) {
  check_same_source(sets);

  // rank[system] = position of that system in the priority order
  std::vector<std::size_t> rank(sets.size());
  if (priority.empty()) {
    std::iota(rank.begin(), rank.end(), std::size_t{0});
  } else {
    if (priority.size() != sets.size()) {
      throw ValidationError("priority lists " + std::to_string(priority.size()) +
                            " systems, expected " + std::to_string(sets.size()));
    }
    std::vector<bool> seen(sets.size(), false);
    for (std::size_t pos = 0; pos < priority.size(); ++pos) {
      if (priority[pos] >= sets.size() || seen[priority[pos]]) {
        throw ValidationError("priority is not a permutation of system indices");
      }
      seen[priority[pos]] = true;
      rank[priority[pos]] = pos;
    }
  }

  struct Scored {
    const Edit* edit;
    std::size_t votes;
    std::size_t best_rank;
  };
  std::vector<Edit> pool = distinct_edits(sets);
  std::vector<Scored> scored;
  scored.reserve(pool.size());
  for (const Edit& edit : pool) {
    std::size_t votes = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t s = 0; s < sets.size(); ++s) {
      if (sets[s].contains(edit)) {
        ++votes;
        best = std::min(best, rank[s]);
      }
    }
    if (votes >= min_votes) scored.push_back({&edit, votes, best});
  }
  // pool is already in canonical order, so a stable sort keeps it as the last key
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.votes != b.votes) return a.votes > b.votes;
    return a.best_rank < b.best_rank;
  });

  std::vector<Edit> kept;
  for (const Scored& s : scored) {
    bool clash = std::any_of(kept.begin(), kept.end(),
                             [&](const Edit& k) { return conflicts(k, *s.edit); });
    if (!clash) kept.push_back(*s.edit);
  }
  return EditSet(sets.front().source_len(), std::move(kept));
}

}  // namespace editmbr
