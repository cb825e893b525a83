#include "editmbr/scorer.hpp"

#include <string>

#include "editmbr/errors.hpp"
#include "editmbr/rewards.hpp"

namespace editmbr {

namespace {

void fill(SentenceScore& s, double beta) {
  s.precision = precision_of(s.tp, s.fp);
  s.recall = recall_of(s.tp, s.fn);
  s.f = f_beta(s.precision, s.recall, beta);
}

}  // namespace

double precision_of(std::size_t tp, std::size_t fp) {
  return tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double recall_of(std::size_t tp, std::size_t fn) {
  return tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double f_beta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  return denom == 0.0 ? 0.0 : (1.0 + b2) * precision * recall / denom;
}

SentenceScore score_sentence(const EditSet& hyp, std::span<const EditSet> refs, double beta) {
  if (refs.empty()) throw ValidationError("scoring needs at least one reference annotator");
  if (!(beta > 0.0)) throw ValidationError("beta must be positive");

  SentenceScore best;
  for (std::size_t a = 0; a < refs.size(); ++a) {
    SentenceScore s;
    s.tp = intersection_size(hyp, refs[a]);
    s.fp = hyp.size() - s.tp;
    s.fn = refs[a].size() - s.tp;
    s.annotator = a;
    fill(s, beta);
    if (a == 0 || s.f > best.f || (s.f == best.f && s.tp > best.tp)) best = s;
  }
  return best;
}

ScoreReport score_corpus(std::span<const EditSet> hyps,
                         std::span<const std::vector<EditSet>> refs, double beta) {
  if (hyps.size() != refs.size()) {
    throw DataError("cannot score " + std::to_string(hyps.size()) + " hypotheses against " +
                    std::to_string(refs.size()) + " references");
  }
  ScoreReport report;
  report.beta = beta;
  report.per_sentence.reserve(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    SentenceScore s = score_sentence(hyps[i], refs[i], beta);
    report.tp += s.tp;
    report.fp += s.fp;
    report.fn += s.fn;
    report.per_sentence.push_back(s);
  }
  report.precision = precision_of(report.tp, report.fp);
  report.recall = recall_of(report.tp, report.fn);
  report.f = f_beta(report.precision, report.recall, beta);
  return report;
}

}  // namespace editmbr
