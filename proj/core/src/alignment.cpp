#include "editmbr/alignment.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace editmbr {

namespace {

enum class Op : std::uint8_t { kMatch, kSubstitute, kDelete, kInsert };

// Row-major (source_len + 1) x (hyp_len + 1) cost table.
class CostTable {
 public:
  CostTable(std::span<const std::string> source, std::span<const std::string> hyp)
      : cols_(hyp.size() + 1), cells_((source.size() + 1) * cols_) {
    for (std::size_t j = 0; j < cols_; ++j) at(0, j) = static_cast<std::uint32_t>(j);
    for (std::size_t i = 1; i <= source.size(); ++i) {
      at(i, 0) = static_cast<std::uint32_t>(i);
      for (std::size_t j = 1; j < cols_; ++j) {
        std::uint32_t diag = at(i - 1, j - 1) + (source[i - 1] == hyp[j - 1] ? 0u : 1u);
        at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
      }
    }
  }

  std::uint32_t& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

 private:
  std::size_t cols_;
  std::vector<std::uint32_t> cells_;
};

std::vector<Op> backtrace(const CostTable& table, std::span<const std::string> source,
                          std::span<const std::string> hyp) {
  std::vector<Op> ops;
  std::size_t i = source.size();
  std::size_t j = hyp.size();
  while (i > 0 || j > 0) {
    const std::uint32_t here = table.at(i, j);
    if (i > 0 && j > 0 && source[i - 1] == hyp[j - 1] && here == table.at(i - 1, j - 1)) {
      ops.push_back(Op::kMatch);
      --i, --j;
    } else if (i > 0 && j > 0 && here == table.at(i - 1, j - 1) + 1) {
      ops.push_back(Op::kSubstitute);
      --i, --j;
    } else if (i > 0 && here == table.at(i - 1, j) + 1) {
      ops.push_back(Op::kDelete);
      --i;
    } else {
      ops.push_back(Op::kInsert);
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

}  // namespace

std::size_t levenshtein_distance(std::span<const std::string> a, std::span<const std::string> b) {
  return CostTable(a, b).at(a.size(), b.size());
}

EditSet extract_edits(const Sentence& source, const Sentence& hypothesis, MergeMode mode) {
  std::span<const std::string> src(source.tokens);
  std::span<const std::string> hyp(hypothesis.tokens);
  const std::vector<Op> ops = backtrace(CostTable(src, hyp), src, hyp);

  std::vector<Edit> edits;
  std::size_t i = 0;  // source cursor
  std::size_t j = 0;  // hypothesis cursor
  bool open = false;
  Edit current;

  auto flush = [&] {
    if (open) edits.push_back(std::move(current));
    current = Edit{};
    open = false;
  };

  for (Op op : ops) {
    if (op == Op::kMatch) {
      flush();
      ++i, ++j;
      continue;
    }
    if (mode == MergeMode::kNone) {
      bool extends_insertion = open && op == Op::kInsert && current.is_insertion() && current.start == i;
      if (!extends_insertion) flush();
    }
    if (!open) {
      current.start = current.end = i;
      open = true;
    }
    switch (op) {
      case Op::kSubstitute:
        current.replacement.push_back(hyp[j++]);
        current.end = ++i;
        break;
      case Op::kDelete:
        current.end = ++i;
        break;
      case Op::kInsert:
        current.replacement.push_back(hyp[j++]);
        break;
      case Op::kMatch:
        break;
    }
  }
  flush();
  return EditSet(source.size(), std::move(edits));
}

}  // namespace editmbr
