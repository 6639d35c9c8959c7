// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ares/creation.hpp"
#include "ares/diff.hpp"
#include "ares/errors.hpp"
#include "ares/metrics.hpp"
#include "ares/pattern_io.hpp"
#include "ares/pipeline.hpp"
#include "ares/recommend.hpp"
#include "ares/search.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ares;

namespace {

constexpr int kSchemaVersion = 1;

int parallelism_from_env() {
  const char* env = std::getenv("ARESD_PARALLELISM");
  if (!env) return 1;
  int v = std::atoi(env);
  return v > 0 ? v : 1;
}

int line_of(const std::string& source, int offset) {
  int line = 1;
  for (int i = 0; i < offset && i < static_cast<int>(source.size()); ++i)
    if (source[static_cast<std::size_t>(i)] == '\n') ++line;
  return line;
}

std::vector<int> path_of(const Tree& t, int node) {
  std::vector<int> path;
  int cur = node;
  while (t.at(cur).parent >= 0) {
    int parent = t.at(cur).parent;
    const auto& ch = t.at(parent).children;
    for (std::size_t i = 0; i < ch.size(); ++i)
      if (ch[i] == cur) path.push_back(static_cast<int>(i));
    cur = parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

RuleSet rules_from_flag(const std::string& flag) {
  if (flag.empty()) return RuleSet{};
  RuleSet rules;
  rules.subsumption = flag.find("r42") != std::string::npos;
  rules.repair_identical = flag.find("r13") != std::string::npos;
  rules.cross_block = flag.find("r31") != std::string::npos;
  rules.stmt_collapse = flag.find("r48") != std::string::npos;
  return rules;
}

std::string method_key(const MethodBody& body, const MatchResult& m) {
  int begin = body.tree.at(m.region_begin).span.begin;
  return "m" + std::to_string(line_of(body.source, begin));
}

json span_json(const MethodBody& body, const MatchResult& m) {
  int begin = body.tree.at(m.region_begin).span.begin;
  int end = body.tree.at(m.region_end).span.end;
  return json{{"startLine", line_of(body.source, begin)},
              {"endLine", line_of(body.source, end)},
              {"startByte", begin},
              {"endByte", end}};
}

// ---------------------------------------------------------------- commands

int cmd_diff(const std::string& a_path, const std::string& b_path, const std::string& format) {
  MethodBody a = parse(read_text_file(a_path));
  MethodBody b = parse(read_text_file(b_path));
  EditScript script = diff(a.tree, b.tree);

  std::map<int, int> src_to_dst(script.mapping.begin(), script.mapping.end());
  json ops = json::array();
  for (const EditOp& op : script.ops) {
    json j;
    switch (op.kind) {
      case OpKind::Delete:
        j["kind"] = "delete";
        j["path"] = path_of(a.tree, op.node);
        break;
      case OpKind::Update:
        j["kind"] = "update";
        j["path"] = path_of(a.tree, op.node);
        j["newLabel"] = op.new_label;
        break;
      case OpKind::Move: {
        j["kind"] = "move";
        j["path"] = path_of(a.tree, op.node);
        auto it = src_to_dst.find(op.node);
        if (it != src_to_dst.end()) j["targetPath"] = path_of(b.tree, it->second);
        break;
      }
      case OpKind::Insert:
        j["kind"] = "insert";
        j["targetPath"] = path_of(b.tree, op.node);
        j["label"] = op.ins_label;
        j["nodeKind"] = kind_name(op.ins_kind);
        break;
    }
    ops.push_back(std::move(j));
  }
  json out{{"schemaVersion", kSchemaVersion},
           {"ops", std::move(ops)},
           {"mappingSize", script.mapping.size()}};
  if (format == "text") {
    for (const auto& op : out["ops"])
      std::cout << op.dump() << "\n";
    std::cout << "mapping size: " << script.mapping.size() << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_order(const std::string& examples_dir, const RuleSet& rules) {
  auto examples = load_examples(examples_dir);
  LearnResult lr = learn_pattern(examples, rules);
  for (const auto& id : lr.order) std::cout << id << "\n";
  if (!lr.pattern) {
    std::cerr << "no pattern generated: " << lr.abort_reason << "\n";
    return 2;
  }
  return 0;
}

int cmd_learn(const std::string& examples_dir, const std::string& out_path, int max_examples,
              const RuleSet& rules) {
  auto examples = load_examples(examples_dir);
  LearnResult lr = learn_pattern(examples, rules, max_examples);
  for (const auto& w : lr.warnings) std::cerr << "warning: " << w << "\n";
  if (!lr.pattern) {
    std::cerr << "no pattern generated: " << lr.abort_reason << "\n";
    return 2;
  }
  write_text_file(out_path, write_pattern(*lr.pattern));
  return 0;
}

json matches_json(const Pattern& pattern,
                  const std::vector<std::pair<std::string, MethodBody>>& files,
                  const std::vector<MatchResult>& ms) {
  (void)pattern;
  json arr = json::array();
  for (const MatchResult& m : ms) {
    const MethodBody* body = nullptr;
    for (const auto& [name, b] : files)
      if (name == m.file) body = &b;
    if (!body) continue;
    json bindings = json::object();
    for (const auto& [k, v] : m.bindings) bindings[k] = v;
    arr.push_back(json{{"file", m.file},
                       {"method", method_key(*body, m)},
                       {"methodSpan", span_json(*body, m)},
                       {"bindings", std::move(bindings)}});
  }
  return json{{"schemaVersion", kSchemaVersion}, {"matches", std::move(arr)}};
}

int cmd_search(const std::string& pattern_path, const std::string& codebase_dir,
               const std::string& format) {
  Pattern pattern = read_pattern(read_text_file(pattern_path));
  auto files = load_codebase(codebase_dir);
  SearchOptions opts{parallelism_from_env()};
  auto ms = search_codebase(pattern, files, opts);
  json out = matches_json(pattern, files, ms);
  if (format == "text") {
    for (const auto& m : out["matches"])
      std::cout << m["file"].get<std::string>() << " " << m["method"].get<std::string>() << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

struct EmittedRecs {
  json manifest;
  std::vector<ScoredRecommendation> scored;
};

EmittedRecs emit_recommendations(const Pattern& pattern,
                                 const std::vector<std::pair<std::string, MethodBody>>& files,
                                 const std::vector<MatchResult>& ms, const std::string& out_dir) {
  EmittedRecs out;
  json arr = json::array();
  for (const MatchResult& m : ms) {
    const MethodBody* body = nullptr;
    for (const auto& [name, b] : files)
      if (name == m.file) body = &b;
    if (!body) continue;
    Recommendation rec = recommend(pattern, m, *body);
    std::string method = method_key(*body, m);
    ScoredRecommendation scored;
    scored.file = m.file;
    scored.method = method;
    json variant_paths = json::array();
    for (std::size_t v = 0; v < rec.variants.size(); ++v) {
      std::string rel = m.file + "/" + method + "/variant-" + std::to_string(v + 1) + ".java";
      std::string text = rec.variants[v].source;
      if (text.empty() || text.back() != '\n') text += '\n';
      write_text_file(out_dir + "/" + rel, text);
      variant_paths.push_back(rel);
      scored.variants.push_back(rec.variants[v]);
    }
    json bindings = json::object();
    for (const auto& [k, v] : m.bindings) bindings[k] = v;
    arr.push_back(json{{"file", m.file},
                       {"method", method},
                       {"span", span_json(*body, m)},
                       {"bindings", std::move(bindings)},
                       {"variants", rec.variants.size()},
                       {"paths", std::move(variant_paths)}});
    for (const auto& w : rec.warnings) std::cerr << "warning: " << m.file << ": " << w << "\n";
    out.scored.push_back(std::move(scored));
  }
  out.manifest = json{{"schemaVersion", kSchemaVersion}, {"recommendations", std::move(arr)}};
  return out;
}

int cmd_recommend(const std::string& pattern_path, const std::string& codebase_dir,
                  const std::string& out_dir) {
  Pattern pattern = read_pattern(read_text_file(pattern_path));
  auto files = load_codebase(codebase_dir);
  SearchOptions opts{parallelism_from_env()};
  auto ms = search_codebase(pattern, files, opts);
  EmittedRecs recs = emit_recommendations(pattern, files, ms, out_dir);
  write_text_file(out_dir + "/manifest.json", recs.manifest.dump(2) + "\n");
  return 0;
}

struct TruthData {
  std::vector<TruthEntry> entries;
  int m = 0;
};

TruthData load_truth(const std::string& truth_dir) {
  TruthData out;
  json locations = json::parse(read_text_file(truth_dir + "/locations.json"));
  out.m = static_cast<int>(locations["locations"].size());
  for (const auto& loc : locations["locations"]) {
    TruthEntry entry;
    entry.file = loc["file"].get<std::string>();
    if (loc.contains("method")) entry.method = loc["method"].get<std::string>();
    fs::path after = fs::path(truth_dir) / entry.file /
                     (entry.method.empty() ? std::string("body") : entry.method) / "after.java";
    if (fs::exists(after)) {
      entry.after = parse(read_text_file(after.string()));
      entry.has_after = true;
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

json evaluation_json(const GroupEvaluation& ev) {
  json per = json::array();
  for (const auto& r : ev.per_recommendation) {
    per.push_back(json{{"file", r.file},
                       {"method", r.method},
                       {"correct", r.correct},
                       {"aT", {{"min", r.at_min}, {"max", r.at_max}}},
                       {"aC", {{"min", r.ac_min}, {"max", r.ac_max}}}});
  }
  return json{{"schemaVersion", kSchemaVersion},
              {"m", ev.m},
              {"generated", ev.generated},
              {"correct", ev.correct},
              {"precision", ev.precision},
              {"recall", ev.recall},
              {"empty", ev.empty},
              {"aT", {{"min", ev.at_min}, {"max", ev.at_max}}},
              {"aC", {{"min", ev.ac_min}, {"max", ev.ac_max}}},
              {"perRecommendation", std::move(per)}};
}

int cmd_evaluate(const std::string& recs_dir, const std::string& truth_dir,
                 const std::string& report_path) {
  json manifest = json::parse(read_text_file(recs_dir + "/manifest.json"));
  std::vector<ScoredRecommendation> scored;
  for (const auto& rec : manifest["recommendations"]) {
    ScoredRecommendation s;
    s.file = rec["file"].get<std::string>();
    s.method = rec["method"].get<std::string>();
    for (const auto& rel : rec["paths"])
      s.variants.push_back(parse(read_text_file(recs_dir + "/" + rel.get<std::string>())));
    scored.push_back(std::move(s));
  }
  TruthData truth = load_truth(truth_dir);
  GroupEvaluation ev = evaluate_group(scored, truth.entries, truth.m);
  write_text_file(report_path, evaluation_json(ev).dump(2) + "\n");
  return 0;
}

int cmd_pipeline(const std::string& examples_dir, const std::string& codebase_dir,
                 const std::string& out_dir, const std::string& truth_dir, int max_examples,
                 const RuleSet& rules) {
  auto examples = load_examples(examples_dir);
  LearnResult lr = learn_pattern(examples, rules, max_examples);
  for (const auto& w : lr.warnings) std::cerr << "warning: " << w << "\n";
  if (!lr.pattern) {
    std::cerr << "no pattern generated: " << lr.abort_reason << "\n";
    return 2;
  }
  write_text_file(out_dir + "/pattern.ares", write_pattern(*lr.pattern));

  auto files = load_codebase(codebase_dir);
  SearchOptions opts{parallelism_from_env()};
  auto ms = search_codebase(*lr.pattern, files, opts);
  write_text_file(out_dir + "/matches.json", matches_json(*lr.pattern, files, ms).dump(2) + "\n");

  EmittedRecs recs = emit_recommendations(*lr.pattern, files, ms, out_dir + "/recs");
  write_text_file(out_dir + "/recs/manifest.json", recs.manifest.dump(2) + "\n");

  json report{{"schemaVersion", kSchemaVersion},
              {"examples", examples.size()},
              {"order", lr.order},
              {"matches", ms.size()},
              {"recommendations", recs.scored.size()}};
  if (!truth_dir.empty()) {
    TruthData truth = load_truth(truth_dir);
    GroupEvaluation ev = evaluate_group(recs.scored, truth.entries, truth.m);
    report["evaluation"] = evaluation_json(ev);
  }
  write_text_file(out_dir + "/report.json", report.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aresd: learn, search, and apply method-level change patterns"};
  app.require_subcommand(1);

  std::string a_path, b_path, format = "json";
  auto* diff_cmd = app.add_subcommand("diff", "edit script between two method bodies");
  diff_cmd->add_option("a", a_path, "original body")->required();
  diff_cmd->add_option("b", b_path, "modified body")->required();
  diff_cmd->add_option("--format", format, "json|text");

  std::string examples_dir, out_path = "pattern.ares", rules_flag;
  int max_examples = 0;
  auto* order_cmd = app.add_subcommand("order", "print the example processing order");
  order_cmd->add_option("--examples", examples_dir, "examples directory")->required();

  auto* learn_cmd = app.add_subcommand("learn", "learn a generalized pattern");
  learn_cmd->add_option("--examples", examples_dir, "examples directory")->required();
  learn_cmd->add_option("--out", out_path, "output pattern file");
  learn_cmd->add_option("--max-examples", max_examples, "cap on examples used");
  learn_cmd->add_option("--rules", rules_flag, "enabled rule families, e.g. r48,r31,r13,r42");

  std::string pattern_path, codebase_dir, recs_dir, truth_dir, report_path = "report.json";
  std::string out_dir = "out";
  auto* search_cmd = app.add_subcommand("search", "find matching code locations");
  search_cmd->add_option("--pattern", pattern_path, "pattern file")->required();
  search_cmd->add_option("--codebase", codebase_dir, "codebase directory")->required();
  search_cmd->add_option("--format", format, "json|text");

  auto* rec_cmd = app.add_subcommand("recommend", "write recommended edits");
  rec_cmd->add_option("--pattern", pattern_path, "pattern file")->required();
  rec_cmd->add_option("--codebase", codebase_dir, "codebase directory")->required();
  rec_cmd->add_option("--out", out_dir, "output directory")->required();

  auto* eval_cmd = app.add_subcommand("evaluate", "score recommendations against ground truth");
  eval_cmd->add_option("--recs", recs_dir, "recommendations directory")->required();
  eval_cmd->add_option("--truth", truth_dir, "ground-truth directory")->required();
  eval_cmd->add_option("--report", report_path, "report output path");

  auto* pipe_cmd = app.add_subcommand("pipeline", "learn, search, recommend, evaluate");
  pipe_cmd->add_option("--examples", examples_dir, "examples directory")->required();
  pipe_cmd->add_option("--codebase", codebase_dir, "codebase directory")->required();
  pipe_cmd->add_option("--out", out_dir, "output directory")->required();
  pipe_cmd->add_option("--truth", truth_dir, "ground-truth directory");
  pipe_cmd->add_option("--max-examples", max_examples, "cap on examples used");
  pipe_cmd->add_option("--rules", rules_flag, "enabled rule families");

  CLI11_PARSE(app, argc, argv);

  try {
    RuleSet rules = rules_from_flag(rules_flag);
    if (diff_cmd->parsed()) return cmd_diff(a_path, b_path, format);
    if (order_cmd->parsed()) return cmd_order(examples_dir, rules);
    if (learn_cmd->parsed()) return cmd_learn(examples_dir, out_path, max_examples, rules);
    if (search_cmd->parsed()) return cmd_search(pattern_path, codebase_dir, format);
    if (rec_cmd->parsed()) return cmd_recommend(pattern_path, codebase_dir, out_dir);
    if (eval_cmd->parsed()) return cmd_evaluate(recs_dir, truth_dir, report_path);
    if (pipe_cmd->parsed())
      return cmd_pipeline(examples_dir, codebase_dir, out_dir, truth_dir, max_examples, rules);
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const PatternSyntaxError& e) {
    std::cerr << "pattern error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
