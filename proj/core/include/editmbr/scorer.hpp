#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "editmbr/edit.hpp"

namespace editmbr {

// Counts and derived scores for one sentence; `annotator` is the index into
// the reference list whose counts were kept.
struct SentenceScore {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f = 1.0;
  std::size_t annotator = 0;
};

struct ScoreReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f = 1.0;
  double beta = 0.5;
  std::vector<SentenceScore> per_sentence;
};

// tp / (tp + fp), 1.0 when nothing was proposed.
double precision_of(std::size_t tp, std::size_t fp);
// tp / (tp + fn), 1.0 when there was nothing to find.
double recall_of(std::size_t tp, std::size_t fn);
// (1 + β²) P R / (β² P + R), 0 when P = R = 0.
double f_beta(double precision, double recall, double beta);

// Scores `hyp` against each reference annotator and keeps the annotator with
// the best sentence F-β (ties: more true positives, then the lower index).
// Throws ValidationError when `refs` is empty or beta <= 0.
SentenceScore score_sentence(const EditSet& hyp, std::span<const EditSet> refs, double beta);

// Micro-average: per-sentence counts (best annotator each) are summed before
// computing P/R/F. Throws DataError when the lengths differ.
ScoreReport score_corpus(std::span<const EditSet> hyps,
                         std::span<const std::vector<EditSet>> refs, double beta);

}  // namespace editmbr
