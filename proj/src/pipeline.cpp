// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ares/errors.hpp"

namespace fs = std::filesystem;

namespace ares {

LearnResult learn_pattern(const std::vector<ChangeExample>& examples, const RuleSet& rules,
                          int max_examples) {
  LearnResult result;
  DistanceMatrix matrix = build_distance_matrix(examples);
  auto [first, second] = select_initial_pair(matrix);

  const ChangeExample& c1 = examples[static_cast<std::size_t>(first)];
  const ChangeExample& c2 = examples[static_cast<std::size_t>(second)];
  result.order.push_back(c1.id);
  result.order.push_back(c2.id);

  CreateResult created = create_pattern(c1, c2, rules);
  if (!created.pattern) {
    result.abort_reason = created.abort_reason;
    return result;
  }
  Pattern working = std::move(*created.pattern);
  for (const auto& w : created.trace.warnings) result.warnings.push_back(w);

  std::vector<ChangeExample> remaining;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (static_cast<int>(i) != first && static_cast<int>(i) != second)
      remaining.push_back(examples[i]);
  }
  int used = 2;
  while (!remaining.empty() && (max_examples <= 0 || used < max_examples)) {
    int next = next_closest(working, remaining);
    ChangeExample chosen = remaining[static_cast<std::size_t>(next)];
    remaining.erase(remaining.begin() + next);
    result.order.push_back(chosen.id);
    ++used;
    CreateResult refined = refine_pattern(working, chosen, rules);
    if (!refined.pattern) {
      result.warnings.push_back("refinement with " + chosen.id +
                                " aborted: " + refined.abort_reason + "; keeping previous pattern");
      continue;
    }
    working = std::move(*refined.pattern);
    for (const auto& w : refined.trace.warnings) result.warnings.push_back(w);
  }
  result.pattern = std::move(working);
  return result;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

std::vector<ChangeExample> load_examples(const std::string& dir) {
  if (!fs::is_directory(dir)) throw IoError("examples directory not found: " + dir);
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) ids.push_back(entry.path().filename().string());
  }
  std::sort(ids.begin(), ids.end());
  std::vector<ChangeExample> out;
  for (const std::string& id : ids) {
    fs::path before = fs::path(dir) / id / "before.java";
    fs::path after = fs::path(dir) / id / "after.java";
    if (!fs::exists(before) || !fs::exists(after)) continue;
    ChangeExample ex;
    ex.id = id;
    ex.original = parse(read_text_file(before.string()));
    ex.modified = parse(read_text_file(after.string()));
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<std::pair<std::string, MethodBody>> load_codebase(const std::string& dir) {
  if (!fs::is_directory(dir)) throw IoError("codebase directory not found: " + dir);
  std::vector<std::string> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java")
      paths.push_back(fs::relative(entry.path(), dir).generic_string());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<std::pair<std::string, MethodBody>> out;
  for (const std::string& rel : paths) {
    out.emplace_back(rel, parse(read_text_file((fs::path(dir) / rel).string())));
  }
  return out;
}

}  // namespace ares
