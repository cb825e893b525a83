#include "cli/commands.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cli/manifest.hpp"
#include "editmbr/alignment.hpp"
#include "editmbr/combiner.hpp"
#include "editmbr/corpus.hpp"
#include "editmbr/errors.hpp"
#include "editmbr/m2.hpp"
#include "editmbr/scorer.hpp"
#include "json.hpp"

#ifndef EDIT_MBR_VERSION
#define EDIT_MBR_VERSION "dev"
#endif

namespace editmbr::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed(double value, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, value);
  return buf;
}

// Round-trippable decimal for argv materialisation.
std::string exact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// "0.5", "1", "2": the label in "F0.5".
std::string beta_label(double beta) {
  std::ostringstream s;
  s << beta;
  return s.str();
}

std::string absolute(const std::string& path) { return fs::absolute(path).lexically_normal().string(); }

MergeMode parse_merge(const std::string& name) { return name == "none" ? MergeMode::kNone : MergeMode::kAll; }

// What a command did, for the run manifest.
struct RunRecord {
  std::string command;
  std::vector<std::string> argv;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::string>> written;  // role, path
  std::string stdout_text;
};

struct ManifestOptions {
  std::string path;
  bool disabled = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--manifest", path, "Where to write the run manifest (default: <out>.manifest.json)");
    cmd->add_flag("--no-manifest", disabled, "Do not write a run manifest");
  }
};

void emit_manifest(const RunRecord& record, const ManifestOptions& opts, const std::string& out_path) {
  if (opts.disabled) return;
  std::string path = !opts.path.empty() ? opts.path
                     : !out_path.empty() ? out_path + ".manifest.json"
                                         : std::string();
  if (path.empty()) return;

  RunManifest m;
  m.version = EDIT_MBR_VERSION;
  m.command = record.command;
  m.argv = record.argv;
  m.config = record.config;
  for (const auto& in : record.inputs) m.inputs.push_back({"", in, sha256_file(in)});
  for (const auto& [role, p] : record.written) m.outputs.push_back({role, p, sha256_file(p)});
  if (!record.stdout_text.empty()) {
    m.outputs.push_back({"stdout", "-", sha256_hex(record.stdout_text)});
  }
  write_file(path, m.to_json());
}

void write_output(const std::string& path, const std::string& content, RunRecord& record,
                  const std::string& role) {
  if (path.empty()) {
    record.stdout_text += content;
  } else {
    write_file(path, content);
    record.written.emplace_back(role, absolute(path));
  }
}

std::vector<Sentence> read_sources(const std::string& path) {
  std::vector<Sentence> out;
  for (const auto& line : read_lines(path)) out.push_back(tokenize(line));
  return out;
}

// Reference annotators per sentence from an M2 file whose sources must match.
std::vector<std::vector<EditSet>> read_references(const std::string& path,
                                                  const std::vector<Sentence>& sources) {
  std::vector<M2Entry> entries = read_m2_file(path);
  if (entries.size() != sources.size()) {
    throw DataError("length mismatch: " + path + " has " + std::to_string(entries.size()) +
                    " entries but the source has " + std::to_string(sources.size()) + " lines");
  }
  std::vector<std::vector<EditSet>> refs(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].source != sources[i]) {
      throw DataError(path + ": entry " + std::to_string(i + 1) + " does not match source line " +
                      std::to_string(i + 1));
    }
    if (entries[i].annotations.empty()) {
      throw DataError(path + ": entry " + std::to_string(i + 1) + " has no annotations");
    }
    for (const auto& a : entries[i].annotations) refs[i].push_back(a.edits);
  }
  return refs;
}

std::size_t resolve_threads(std::optional<std::size_t> flag) {
  if (const char* env = std::getenv("EDIT_MBR_THREADS"); env && *env) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0) throw UsageError("EDIT_MBR_THREADS must be a positive integer");
    return v;
  }
  if (flag) {
    if (*flag == 0) throw UsageError("--threads must be positive");
    return *flag;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------- extract

struct ExtractOptions {
  std::string source;
  std::string hyp;
  std::string out;
  std::string merge = "all";
  ManifestOptions manifest;
};

RunRecord run_extract(const ExtractOptions& o) {
  RunRecord r;
  r.command = "extract";
  r.argv = {"extract", absolute(o.source), absolute(o.hyp), "--merge", o.merge};
  if (!o.out.empty()) r.argv.insert(r.argv.end(), {"--out", absolute(o.out)});
  r.config = {{"merge", o.merge}};
  r.inputs = {absolute(o.source), absolute(o.hyp)};

  std::vector<fs::path> hyps{o.hyp};
  Corpus corpus = load_parallel(o.source, hyps, parse_merge(o.merge));
  std::vector<M2Entry> entries;
  entries.reserve(corpus.entries.size());
  for (auto& e : corpus.entries) {
    entries.push_back({e.source, {untyped_annotation(e.hypotheses.front())}});
  }
  write_output(o.out, emit_m2(entries), r, "--out");
  return r;
}

// ---------------------------------------------------------------- combine

struct CombineOptions {
  std::string source;
  std::vector<std::string> hyps;
  std::string out;
  std::string method = "mbr";
  std::string reward = "f";
  double beta = 0.5;
  std::size_t pool_votes = 2;
  std::string reward_set = "base";
  std::vector<std::size_t> priority;
  std::string out_format = "text";
  std::string merge = "all";
  std::string trace;
  bool report = false;
  double empty_empty = 1.0;
  double empty_denominator = 1.0;
  std::optional<std::size_t> threads;
  ManifestOptions manifest;
};

std::string render_trace(const std::vector<CombineResult>& results) {
  std::string out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const GreedyStep& step : results[i].trace) {
      nlohmann::ordered_json j;
      j["sentence"] = i;
      j["edit"] = {{"start", step.edit.start},
                   {"end", step.edit.end},
                   {"replacement", join(std::span(step.edit.replacement))}};
      j["before"] = fixed(step.before, 6);
      j["after"] = fixed(step.after, 6);
      out += j.dump() + "\n";
    }
  }
  return out;
}

std::string render_report(const std::vector<CombineResult>& results) {
  std::string out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const CombineResult& r = results[i];
    out += "sentence " + std::to_string(i);
    for (std::size_t k = 0; k < r.selection.size(); ++k) {
      out += '\t' + r.selection[k].label + '=' + fixed(r.expected_rewards[k], 6);
    }
    out += "\tchosen=" + r.chosen().label + '\n';
  }
  return out;
}

RunRecord run_combine(const CombineOptions& o) {
  if (o.report && o.out.empty()) throw UsageError("--report needs --out so the report and output do not mix");

  CombineConfig config;
  config.strategy = *parse_strategy(o.method);
  config.reward.kind = *parse_reward_kind(o.reward);
  config.reward.beta = o.beta;
  config.reward.empty_empty_value = o.empty_empty;
  config.reward.empty_denominator_value = o.empty_denominator;
  config.reward_set = *parse_reward_set(o.reward_set);
  config.greedy_pool_threshold = o.pool_votes;
  config.priority = o.priority;
  try {
    config.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  if (!o.priority.empty() && o.priority.size() != o.hyps.size()) {
    throw UsageError("--priority must list every hypothesis index exactly once");
  }
  const std::size_t threads = resolve_threads(o.threads);

  RunRecord r;
  r.command = "combine";
  r.argv = {"combine", absolute(o.source)};
  for (const auto& h : o.hyps) r.argv.push_back(absolute(h));
  r.argv.insert(r.argv.end(),
                {"--method", o.method, "--reward", o.reward, "--beta", exact(o.beta), "--pool-votes",
                 std::to_string(o.pool_votes), "--reward-set", o.reward_set, "--out-format",
                 o.out_format, "--merge", o.merge, "--empty-empty-reward", exact(o.empty_empty),
                 "--empty-denominator-reward", exact(o.empty_denominator)});
  std::string priority_text;
  for (std::size_t k = 0; k < o.priority.size(); ++k) {
    priority_text += (k ? "," : "") + std::to_string(o.priority[k]);
  }
  if (!o.priority.empty()) r.argv.insert(r.argv.end(), {"--priority", priority_text});
  if (o.report) r.argv.push_back("--report");
  if (!o.trace.empty()) r.argv.insert(r.argv.end(), {"--trace", absolute(o.trace)});
  if (!o.out.empty()) r.argv.insert(r.argv.end(), {"--out", absolute(o.out)});
  r.config = {{"method", o.method},
              {"reward", o.reward},
              {"beta", exact(o.beta)},
              {"pool_votes", std::to_string(o.pool_votes)},
              {"reward_set", o.reward_set},
              {"priority", priority_text.empty() ? "input-order" : priority_text},
              {"out_format", o.out_format},
              {"merge", o.merge},
              {"empty_empty_reward", exact(o.empty_empty)},
              {"empty_denominator_reward", exact(o.empty_denominator)},
              {"threads", std::to_string(threads)}};
  r.inputs.push_back(absolute(o.source));
  for (const auto& h : o.hyps) r.inputs.push_back(absolute(h));

  std::vector<fs::path> hyp_paths(o.hyps.begin(), o.hyps.end());
  Corpus corpus = load_parallel(o.source, hyp_paths, parse_merge(o.merge));
  std::vector<CombineResult> results = combine_corpus(corpus, config, threads);

  std::string body;
  if (o.out_format == "m2") {
    std::vector<M2Entry> entries;
    for (std::size_t i = 0; i < results.size(); ++i) {
      entries.push_back({corpus.entries[i].source, {untyped_annotation(results[i].chosen().edits)}});
    }
    body = emit_m2(entries);
  } else {
    for (std::size_t i = 0; i < results.size(); ++i) {
      body += join(apply_edits(corpus.entries[i].source, results[i].chosen().edits)) + "\n";
    }
  }

  if (o.report) r.stdout_text += render_report(results);
  if (!o.trace.empty()) {
    write_file(o.trace, render_trace(results));
    r.written.emplace_back("--trace", absolute(o.trace));
  }
  write_output(o.out, body, r, "--out");
  return r;
}

// ---------------------------------------------------------------- score

struct ScoreOptions {
  std::string source;
  std::string hyp;
  std::string refs;
  double beta = 0.5;
  bool per_sentence = false;
  std::string merge = "all";
  ManifestOptions manifest;
};

RunRecord run_score(const ScoreOptions& o) {
  if (!(o.beta > 0.0)) throw UsageError("--beta must be positive");
  RunRecord r;
  r.command = "score";
  r.argv = {"score", absolute(o.source), absolute(o.hyp), absolute(o.refs), "--beta", exact(o.beta),
            "--merge", o.merge};
  if (o.per_sentence) r.argv.push_back("--per-sentence");
  r.config = {{"beta", exact(o.beta)}, {"merge", o.merge}, {"per_sentence", o.per_sentence ? "true" : "false"}};
  r.inputs = {absolute(o.source), absolute(o.hyp), absolute(o.refs)};

  std::vector<fs::path> hyps{o.hyp};
  Corpus corpus = load_parallel(o.source, hyps, parse_merge(o.merge));
  std::vector<Sentence> sources;
  std::vector<EditSet> hyp_sets;
  for (auto& e : corpus.entries) {
    sources.push_back(e.source);
    hyp_sets.push_back(e.hypotheses.front());
  }
  std::vector<std::vector<EditSet>> refs = read_references(o.refs, sources);
  ScoreReport report = score_corpus(hyp_sets, refs, o.beta);

  const std::string f_label = "F" + beta_label(o.beta);
  std::string text;
  if (o.per_sentence) {
    for (std::size_t i = 0; i < report.per_sentence.size(); ++i) {
      const SentenceScore& s = report.per_sentence[i];
      text += "sentence " + std::to_string(i) + " TP " + std::to_string(s.tp) + " FP " +
              std::to_string(s.fp) + " FN " + std::to_string(s.fn) + " P " + fixed(s.precision, 4) +
              " R " + fixed(s.recall, 4) + " " + f_label + " " + fixed(s.f, 4) + "\n";
    }
  }
  text += "P " + fixed(report.precision, 4) + " R " + fixed(report.recall, 4) + " " + f_label + " " +
          fixed(report.f, 4) + "\n";
  r.stdout_text = text;
  return r;
}

// ---------------------------------------------------------------- apply

struct ApplyOptions {
  std::string source;
  std::string m2;
  std::string out;
  ManifestOptions manifest;
};

RunRecord run_apply(const ApplyOptions& o) {
  RunRecord r;
  r.command = "apply";
  r.argv = {"apply", absolute(o.source), absolute(o.m2)};
  if (!o.out.empty()) r.argv.insert(r.argv.end(), {"--out", absolute(o.out)});
  r.inputs = {absolute(o.source), absolute(o.m2)};

  std::vector<Sentence> sources = read_sources(o.source);
  std::vector<M2Entry> entries = read_m2_file(o.m2);
  if (entries.size() != sources.size()) {
    throw DataError("length mismatch: " + o.m2 + " has " + std::to_string(entries.size()) +
                    " entries but " + o.source + " has " + std::to_string(sources.size()) + " lines");
  }
  std::string body;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].source != sources[i]) {
      throw DataError(o.m2 + ": entry " + std::to_string(i + 1) + " does not match source line " +
                      std::to_string(i + 1));
    }
    const M2Annotation* a = entries[i].find(0);
    if (!a && !entries[i].annotations.empty()) a = &entries[i].annotations.front();
    body += join(a ? apply_edits(sources[i], a->edits) : sources[i]) + "\n";
  }
  write_output(o.out, body, r, "--out");
  return r;
}

// ---------------------------------------------------------------- replay

struct ReplayOptions {
  std::string manifest;
  std::string out_dir;
};

int run_replay(const ReplayOptions& o, std::ostream& out, std::ostream& err) {
  RunManifest m = RunManifest::from_json(read_file(o.manifest));
  for (const auto& in : m.inputs) {
    if (sha256_file(in.path) != in.sha256) {
      throw DataError("input changed since the manifest was written: " + in.path);
    }
  }

  fs::path dir;
  bool keep = !o.out_dir.empty();
  if (keep) {
    dir = o.out_dir;
    fs::create_directories(dir);
  } else {
    std::string pattern = (fs::temp_directory_path() / "edit-mbr-replay-XXXXXX").string();
    if (!::mkdtemp(pattern.data())) throw IoError("cannot create a temporary directory");
    dir = pattern;
  }

  std::vector<std::string> argv = m.argv;
  std::vector<std::pair<const ManifestFile*, fs::path>> targets;
  for (std::size_t k = 0; k < m.outputs.size(); ++k) {
    const ManifestFile& f = m.outputs[k];
    if (f.role == "stdout") continue;
    fs::path target = dir / (std::to_string(k) + "_" + fs::path(f.path).filename().string());
    for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
      if (argv[i] == f.role) argv[i + 1] = target.string();
    }
    targets.emplace_back(&f, target);
  }
  argv.push_back("--no-manifest");

  std::ostringstream captured;
  int status = run(argv, captured, err);
  bool ok = status == kSuccess;
  if (ok) {
    for (const auto& f : m.outputs) {
      if (f.role != "stdout") continue;
      bool same = sha256_hex(captured.str()) == f.sha256;
      out << "stdout " << (same ? "ok" : "MISMATCH") << "\n";
      ok &= same;
    }
    for (const auto& [f, target] : targets) {
      bool same = sha256_file(target) == f->sha256;
      out << f->role << " " << f->path << " " << (same ? "ok" : "MISMATCH") << "\n";
      ok &= same;
    }
  }
  if (!keep) fs::remove_all(dir);
  if (status != kSuccess) return status;
  out << (ok ? "replay ok\n" : "replay FAILED\n");
  return ok ? kSuccess : kDataError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combine grammatical error correction outputs by minimum Bayes risk over edit sets",
               "edit-mbr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EDIT_MBR_VERSION);

  const std::vector<std::string> merge_modes{"all", "none"};

  ExtractOptions ex;
  CLI::App* extract = app.add_subcommand("extract", "Extract hypothesis edits and write them as M2");
  extract->add_option("source", ex.source, "Tokenized source sentences, one per line")->required();
  extract->add_option("hyp", ex.hyp, "Tokenized hypothesis sentences, one per line")->required();
  extract->add_option("-o,--out", ex.out, "Output M2 path (default: stdout)");
  extract->add_option("--merge", ex.merge, "Merge adjacent edit operations")->check(CLI::IsMember(merge_modes));
  ex.manifest.add_to(extract);

  CombineOptions co;
  CLI::App* combine = app.add_subcommand("combine", "Combine several system outputs into one");
  combine->add_option("source", co.source, "Tokenized source sentences")->required();
  combine->add_option("hyps", co.hyps, "System outputs (plain text, or .m2)")->required()->expected(1, -1);
  combine->add_option("-o,--out", co.out, "Output path (default: stdout)");
  combine->add_option("--method", co.method, "Combination strategy")
      ->check(CLI::IsMember({"mbr", "mbr-vote", "greedy"}));
  combine->add_option("--reward", co.reward, "MBR reward")
      ->check(CLI::IsMember({"recall", "precision", "f", "f-paper", "jaccard"}));
  combine->add_option("--beta", co.beta, "Beta for the f reward, k for f-paper");
  combine->add_option("--pool-votes", co.pool_votes, "Minimum votes for a greedy pool edit");
  combine->add_option("--reward-set", co.reward_set, "Candidates the expected reward averages over")
      ->check(CLI::IsMember({"base", "base+votes"}));
  combine->add_option("--priority", co.priority, "System indices, most trusted first")->delimiter(',');
  combine->add_option("--out-format", co.out_format, "Output format")->check(CLI::IsMember({"text", "m2"}));
  combine->add_option("--merge", co.merge, "Merge adjacent edit operations")->check(CLI::IsMember(merge_modes));
  combine->add_option("--trace", co.trace, "Write greedy insertions as JSON lines");
  combine->add_flag("--report", co.report, "Print per-candidate expected rewards");
  combine->add_option("--empty-empty-reward", co.empty_empty, "Reward when both edit sets are empty");
  combine->add_option("--empty-denominator-reward", co.empty_denominator,
                      "Recall with no reference edits / precision with no hypothesis edits");
  combine->add_option("--threads", co.threads, "Worker threads (EDIT_MBR_THREADS overrides)");
  co.manifest.add_to(combine);

  ScoreOptions sc;
  CLI::App* score = app.add_subcommand("score", "Edit-level precision, recall and F-beta");
  score->add_option("source", sc.source, "Tokenized source sentences")->required();
  score->add_option("hyp", sc.hyp, "Hypothesis sentences (plain text, or .m2)")->required();
  score->add_option("refs", sc.refs, "Reference M2 file")->required();
  score->add_option("--beta", sc.beta, "F-score beta");
  score->add_flag("--per-sentence", sc.per_sentence, "Also print one line per sentence");
  score->add_option("--merge", sc.merge, "Merge adjacent edit operations")->check(CLI::IsMember(merge_modes));
  sc.manifest.add_to(score);

  ApplyOptions ap;
  CLI::App* apply = app.add_subcommand("apply", "Apply annotator-0 edits from an M2 file");
  apply->add_option("source", ap.source, "Tokenized source sentences")->required();
  apply->add_option("m2", ap.m2, "M2 file with edits for the same sentences")->required();
  apply->add_option("-o,--out", ap.out, "Output path (default: stdout)");
  ap.manifest.add_to(apply);

  ReplayOptions rp;
  CLI::App* replay = app.add_subcommand("replay", "Re-run a recorded invocation and compare output digests");
  replay->add_option("manifest", rp.manifest, "Run manifest JSON")->required();
  replay->add_option("--out-dir", rp.out_dir, "Keep reproduced outputs here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    RunRecord record;
    const ManifestOptions* manifest = nullptr;
    std::string out_path;
    if (*extract) {
      record = run_extract(ex);
      manifest = &ex.manifest;
      out_path = ex.out;
    } else if (*combine) {
      record = run_combine(co);
      manifest = &co.manifest;
      out_path = co.out;
    } else if (*score) {
      record = run_score(sc);
      manifest = &sc.manifest;
    } else if (*apply) {
      record = run_apply(ap);
      manifest = &ap.manifest;
      out_path = ap.out;
    } else {
      return run_replay(rp, out, err);
    }
    out << record.stdout_text;
    out.flush();
    emit_manifest(record, *manifest, out_path);
    return kSuccess;
  } catch (const UsageError& e) {
    err << "edit-mbr: " << e.what() << "\n";
    return kUsageError;
  } catch (const DataError& e) {
    err << "edit-mbr: " << e.what() << "\n";
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "edit-mbr: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace editmbr::cli
