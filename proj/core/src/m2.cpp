#include "editmbr/m2.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <optional>

#include "editmbr/corpus.hpp"
#include "editmbr/errors.hpp"

namespace editmbr {

namespace {

constexpr std::string_view kFieldSep = "|||";
constexpr std::string_view kNone = "-NONE-";
constexpr std::string_view kNoop = "noop";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(kFieldSep, pos);
    if (next == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + kFieldSep.size();
  }
}

long long parse_int(std::string_view text, std::size_t line_no, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(text) + "'", line_no);
  }
  return value;
}

struct PendingAnnotation {
  std::vector<Edit> edits;
  std::vector<std::string> types;
};

struct EntryBuilder {
  Sentence source;
  std::map<std::size_t, PendingAnnotation> annotators;
  std::size_t first_line = 0;

  M2Entry finish() && {
    M2Entry entry;
    entry.source = std::move(source);
    for (auto& [id, pending] : annotators) {
      // sort edits and their types together
      std::vector<std::size_t> order(pending.edits.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pending.edits[a] < pending.edits[b];
      });
      std::vector<Edit> edits;
      std::vector<std::string> types;
      for (std::size_t k : order) {
        edits.push_back(std::move(pending.edits[k]));
        types.push_back(std::move(pending.types[k]));
      }
      EditSet set;
      try {
        set = EditSet(entry.source.size(), std::move(edits));
      } catch (const ValidationError& e) {
        throw ValidationError("entry starting at line " + std::to_string(first_line) +
                              ", annotator " + std::to_string(id) + ": " + e.what());
      }
      entry.annotations.push_back({id, std::move(set), std::move(types)});
    }
    return entry;
  }
};

void parse_annotation(std::string_view body, std::size_t line_no, EntryBuilder& entry) {
  std::vector<std::string_view> fields = split_fields(body);
  if (fields.size() != 6) {
    throw ParseError("expected 6 '|||'-separated fields, found " + std::to_string(fields.size()),
                     line_no);
  }
  std::string_view span = fields[0];
  std::size_t space = span.find(' ');
  if (space == std::string_view::npos) throw ParseError("missing edit span end", line_no);
  long long start = parse_int(span.substr(0, space), line_no, "span start");
  long long end = parse_int(span.substr(space + 1), line_no, "span end");
  long long annotator = parse_int(fields[5], line_no, "annotator id");
  if (annotator < 0) throw ParseError("negative annotator id", line_no);

  PendingAnnotation& target = entry.annotators[static_cast<std::size_t>(annotator)];
  if (start == -1 && end == -1) return;  // noop: annotator present, no edits
  if (start < 0 || end < start) {
    throw ParseError("invalid edit span " + std::string(span), line_no);
  }
  if (static_cast<std::size_t>(end) > entry.source.size()) {
    throw ValidationError("line " + std::to_string(line_no) + ": edit span " + std::string(span) +
                          " exceeds source length " + std::to_string(entry.source.size()));
  }

  Edit edit;
  edit.start = static_cast<std::size_t>(start);
  edit.end = static_cast<std::size_t>(end);
  if (fields[2] != kNone) edit.replacement = tokenize(fields[2]).tokens;
  target.edits.push_back(std::move(edit));
  target.types.emplace_back(fields[1]);
}

}  // namespace

const M2Annotation* M2Entry::find(std::size_t annotator) const {
  for (const auto& a : annotations) {
    if (a.annotator == annotator) return &a;
  }
  return nullptr;
}

M2Annotation untyped_annotation(EditSet edits, std::size_t annotator) {
  std::vector<std::string> types(edits.size(), std::string(kUntypedEdit));
  return {annotator, std::move(edits), std::move(types)};
}

std::vector<M2Entry> parse_m2(std::string_view text) {
  std::vector<M2Entry> entries;
  std::optional<EntryBuilder> current;
  std::size_t line_no = 0;

  auto close = [&] {
    if (current) entries.push_back(std::move(*current).finish());
    current.reset();
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      close();
      continue;
    }
    if (line[0] == 'S' && (line.size() == 1 || line[1] == ' ')) {
      if (current) throw ParseError("'S' line inside an unterminated entry", line_no);
      current.emplace();
      current->source = tokenize(line.substr(1));
      current->first_line = line_no;
    } else if (line[0] == 'A' && line.size() > 1 && line[1] == ' ') {
      if (!current) throw ParseError("'A' line before any 'S' line", line_no);
      parse_annotation(line.substr(2), line_no, *current);
    } else {
      throw ParseError("unrecognised line '" + std::string(line.substr(0, 40)) + "'", line_no);
    }
  }
  close();
  return entries;
}

std::string emit_m2(const std::vector<M2Entry>& entries) {
  std::string out;
  for (const M2Entry& entry : entries) {
    out += "S ";
    out += join(entry.source);
    out += '\n';
    for (const M2Annotation& a : entry.annotations) {
      const std::string id = std::to_string(a.annotator);
      if (a.edits.empty()) {
        out += "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||" + id + "\n";
        continue;
      }
      for (std::size_t k = 0; k < a.edits.size(); ++k) {
        const Edit& e = a.edits[k];
        out += "A " + std::to_string(e.start) + " " + std::to_string(e.end) + "|||";
        out += k < a.types.size() && !a.types[k].empty() ? a.types[k] : std::string(kUntypedEdit);
        out += "|||";
        out += e.replacement.empty() ? std::string(kNone) : join(std::span(e.replacement));
        out += "|||REQUIRED|||-NONE-|||" + id + "\n";
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<M2Entry> read_m2_file(const std::filesystem::path& path) {
  std::string text = read_file(path);
  try {
    return parse_m2(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace editmbr
