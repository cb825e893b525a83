#pragma once

// Random inputs for property tests. Everything is driven by an explicit
// std::mt19937 so failures are reproducible from the seed.

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "editmbr/edit.hpp"

namespace editmbr::testing {

inline Edit make_edit(std::size_t start, std::size_t end, std::vector<std::string> replacement = {}) {
  return Edit{start, end, std::move(replacement)};
}

inline std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string random_token(std::mt19937& rng, std::size_t vocab) {
  return "w" + std::to_string(uniform(rng, 0, vocab - 1));
}

inline Sentence random_sentence(std::mt19937& rng, std::size_t max_len, std::size_t vocab) {
  Sentence s;
  std::size_t n = uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < n; ++i) s.tokens.push_back(random_token(rng, vocab));
  return s;
}

// A hypothesis that shares most of the source, so alignments are non-trivial.
inline Sentence perturb(std::mt19937& rng, const Sentence& source, std::size_t vocab, double rate) {
  Sentence out;
  for (const auto& tok : source.tokens) {
    if (coin(rng, rate / 3)) out.tokens.push_back(random_token(rng, vocab));  // insert
    if (coin(rng, rate / 3)) continue;                                       // delete
    out.tokens.push_back(coin(rng, rate / 3) ? random_token(rng, vocab) : tok);
  }
  if (coin(rng, rate / 3)) out.tokens.push_back(random_token(rng, vocab));
  return out;
}

// A random conflict-free edit set over `source_len` tokens, drawing
// replacements from a small vocabulary so that different sets share edits.
inline EditSet random_edit_set(std::mt19937& rng, std::size_t source_len, std::size_t max_edits,
                               std::size_t vocab = 3) {
  std::vector<Edit> edits;
  std::size_t want = uniform(rng, 0, max_edits);
  for (std::size_t attempt = 0; attempt < want * 4 && edits.size() < want; ++attempt) {
    std::size_t start = uniform(rng, 0, source_len);
    std::size_t end = std::min(source_len, start + uniform(rng, 0, 2));
    std::vector<std::string> rep;
    std::size_t rep_len = uniform(rng, start == end ? 1 : 0, 2);
    for (std::size_t k = 0; k < rep_len; ++k) rep.push_back("r" + std::to_string(uniform(rng, 0, vocab - 1)));
    Edit e{start, end, std::move(rep)};
    bool ok = std::none_of(edits.begin(), edits.end(),
                           [&](const Edit& o) { return o == e || conflicts(o, e); });
    if (ok) edits.push_back(std::move(e));
  }
  return EditSet(source_len, std::move(edits));
}

// Edit sets sampled from a shared pool of edits, mimicking several systems
// that agree on some corrections and disagree on others.
inline std::vector<EditSet> random_systems(std::mt19937& rng, std::size_t n_systems,
                                           std::size_t source_len, std::size_t pool_edits) {
  std::vector<Edit> pool;
  for (std::size_t k = 0; k < pool_edits * 3 && pool.size() < pool_edits; ++k) {
    std::size_t start = uniform(rng, 0, source_len);
    std::size_t end = std::min(source_len, start + uniform(rng, 0, 1));
    std::vector<std::string> rep;
    if (start == end || coin(rng, 0.7)) rep.push_back("r" + std::to_string(uniform(rng, 0, 2)));
    Edit e{start, end, std::move(rep)};
    if (std::find(pool.begin(), pool.end(), e) == pool.end()) pool.push_back(std::move(e));
  }
  std::vector<EditSet> systems;
  for (std::size_t s = 0; s < n_systems; ++s) {
    std::vector<Edit> mine;
    for (const Edit& e : pool) {
      if (!coin(rng, 0.55)) continue;
      bool ok = std::none_of(mine.begin(), mine.end(), [&](const Edit& o) { return conflicts(o, e); });
      if (ok) mine.push_back(e);
    }
    systems.emplace_back(source_len, std::move(mine));
  }
  return systems;
}

inline std::vector<Candidate> as_candidates(const std::vector<EditSet>& sets) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < sets.size(); ++i) out.push_back({sets[i], "sys" + std::to_string(i)});
  return out;
}

}  // namespace editmbr::testing
