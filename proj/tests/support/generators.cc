// Copyright 2026 The PRIDE Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/generators.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pride/cli.h"

namespace pride::testdata {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Trajectory random_trajectory(Rng& rng, std::size_t length, std::size_t dimension,
                             double scale) {
  std::vector<double> values(length * dimension);
  for (double& v : values) v = uniform(rng, -scale, scale);
  return Trajectory::from_values(dimension, std::move(values));
}

Trajectory line_trajectory(std::size_t length, std::array<double, 3> offset) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < length; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(length - 1);
    rows.push_back({x + offset[0], offset[1], offset[2]});
  }
  return Trajectory::from_rows(rows);
}

Instruction make_instruction(const std::string& spec) {
  Instruction instr;
  std::istringstream in(spec);
  std::string item;
  while (in >> item) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t slash; (slash = item.find('/', start)) != std::string::npos;
         start = slash + 1) {
      parts.push_back(item.substr(start, slash - start));
    }
    parts.push_back(item.substr(start));
    if (parts.size() != 4) throw std::invalid_argument("bad token spec " + item);
    Token t;
    t.index = static_cast<int>(instr.tokens.size()) + 1;
    t.surface = parts[0];
    t.lemma = parts[0];
    t.pos = parse_upos(parts[1]).value();
    t.head = std::stoi(parts[2]);
    t.deprel = parts[3];
    if (!instr.text.empty()) instr.text += ' ';
    instr.text += t.surface;
    instr.tokens.push_back(std::move(t));
  }
  instr.id = sentence_id(instr.text);
  return instr;
}

Instruction random_instruction(Rng& rng, std::string id, std::size_t tokens,
                               std::size_t dimension) {
  static const char* kDeprels[] = {"root", "obj", "obl", "det", "amod", "advmod", "case"};
  Instruction instr;
  instr.id = std::move(id);

  std::vector<int> order(tokens);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> heads(tokens + 1, 0);
  for (std::size_t k = 1; k < tokens; ++k) {
    heads[order[k]] = order[uniform_int(rng, 0, static_cast<int>(k) - 1)];
  }

  std::normal_distribution<float> gauss;
  bool has_content = false;
  for (std::size_t i = 1; i <= tokens; ++i) {
    Token t;
    t.index = static_cast<int>(i);
    t.surface = "w" + std::to_string(uniform_int(rng, 0, 999));
    t.lemma = t.surface;
    t.pos = static_cast<Upos>(uniform_int(rng, 0, static_cast<int>(kUposCount) - 1));
    t.head = heads[i];
    t.deprel = t.head == 0 ? "root" : kDeprels[uniform_int(rng, 1, 6)];
    has_content = has_content || is_content_pos(t.pos);
    if (dimension > 0) {
      std::vector<float> v(dimension);
      do {
        for (float& x : v) x = gauss(rng);
      } while (std::all_of(v.begin(), v.end(), [](float x) { return x == 0.0f; }));
      t.embedding = std::move(v);
    }
    instr.tokens.push_back(std::move(t));
  }
  if (!has_content) instr.tokens.front().pos = Upos::kNoun;

  for (const Token& t : instr.tokens) {
    if (!instr.text.empty()) instr.text += ' ';
    instr.text += t.surface;
  }
  return instr;
}

Episode make_episode(std::string id, std::string model, int task, bool success,
                     Trajectory trajectory) {
  return Episode{std::move(id), std::move(model), task, "p", 0, success, std::move(trajectory)};
}

std::vector<Episode> threshold_fixture() {
  std::vector<Episode> eps;
  eps.push_back(make_episode("s1", "m", 0, true, line_trajectory(20, {0, 0.3, 0})));
  eps.push_back(make_episode("s2", "m", 0, true, line_trajectory(20, {0, -0.1, 0})));
  eps.push_back(make_episode("s3", "m", 0, true, line_trajectory(20, {0, -0.1, 0})));
  eps.push_back(make_episode("s4", "m", 0, true, line_trajectory(20, {0, -0.1, 0})));
  for (auto [id, z] : std::vector<std::pair<std::string, double>>{
           {"f050", 0.05}, {"f250", 0.25}, {"f280", 0.28}, {"f297", 0.297}, {"f500", 0.5}}) {
    eps.push_back(make_episode(id, "m", 0, false, line_trajectory(20, {0, 0, z})));
  }
  // On top of the farthest success: exactly tau under max.
  eps.push_back(make_episode("f300", "m", 0, false, line_trajectory(20, {0, 0.3, 0})));
  // Cut back to the longest success before comparison.
  auto tail = line_trajectory(20, {0, 0, 0.05}).rows();
  for (int i = 0; i < 15; ++i) tail.push_back({5.0, 5.0, 5.0});
  eps.push_back(make_episode("f050-long", "m", 0, false, Trajectory::from_rows(tail)));
  eps.push_back(make_episode("u1", "m", 1, false, line_trajectory(20, {0, 0, 0})));
  eps.push_back(make_episode("u2", "m", 1, false, line_trajectory(20, {0, 1, 0})));
  eps.push_back(make_episode("o-s", "other", 0, true, line_trajectory(20, {0, 0, 0})));
  eps.push_back(make_episode("o-f", "other", 0, false, line_trajectory(20, {0, 0, 0.05})));
  return eps;
}

const std::map<std::string, FailureLabel>& threshold_fixture_labels(TauRule rule) {
  using L = FailureLabel;
  const L N = L::kNearGT, F = L::kFarGT, U = L::kUnclassifiable;
  static const std::map<TauRule, std::map<std::string, L>> kExpected = {
      {TauRule::kMax, {{"f050", N}, {"f250", N}, {"f280", N}, {"f297", N}, {"f300", N},
                       {"f500", F}, {"f050-long", N}, {"u1", U}, {"u2", U}, {"o-f", F}}},
      {TauRule::kP99, {{"f050", N}, {"f250", N}, {"f280", N}, {"f297", F}, {"f300", F},
                       {"f500", F}, {"f050-long", N}, {"u1", U}, {"u2", U}, {"o-f", F}}},
      {TauRule::kP95, {{"f050", N}, {"f250", N}, {"f280", F}, {"f297", F}, {"f300", F},
                       {"f500", F}, {"f050-long", N}, {"u1", U}, {"u2", U}, {"o-f", F}}},
      {TauRule::kP90, {{"f050", N}, {"f250", F}, {"f280", F}, {"f297", F}, {"f300", F},
                       {"f500", F}, {"f050-long", N}, {"u1", U}, {"u2", U}, {"o-f", F}}},
  };
  return kExpected.at(rule);
}

ReportFixture write_report_fixture(const std::filesystem::path& dir) {
  struct PairSpec {
    const char* id;
    ObjectVariation o;
    ActionVariation a;
    double s_k, s_t;
  };
  const double easy = 1.0 - 0.327625;
  const PairSpec specs[] = {
      {"easy", ObjectVariation::kNone, ActionVariation::kAddition, easy, easy},
      {"hard", ObjectVariation::kAddition, ActionVariation::kNone, 0.5, 0.5},
      {"c1", ObjectVariation::kSPContextual, ActionVariation::kHint, 0.9, 0.7},
      {"c2", ObjectVariation::kSPHabitual, ActionVariation::kCoordination, 0.7, 0.5},
      {"c3", ObjectVariation::kAddition, ActionVariation::kQuestionDirective, 0.5, 0.3},
  };
  std::vector<ManifestRecord> manifest;
  std::vector<PairDistance> distances;
  for (std::size_t i = 0; i < std::size(specs); ++i) {
    const PairSpec& p = specs[i];
    const std::string& text = libero_goal_originals()[i];
    manifest.push_back({p.id, static_cast<int>(i), text, "please " + text, p.o, p.a});
    distances.push_back(make_pair_distance(p.id, p.s_k, p.s_t));
  }

  std::vector<Episode> episodes;
  const Trajectory reach = line_trajectory(4, {0, 0, 0});
  auto add = [&](const std::string& model, const std::string& pair, int task, int count,
                 bool success) {
    for (int i = 0; i < count; ++i) {
      Episode e = make_episode(model + "-" + pair + "-" + std::to_string(episodes.size()), model,
                               task, success, reach);
      e.pair_id = pair;
      e.seed = i;
      episodes.push_back(std::move(e));
    }
  };
  add("vla", "easy", 0, 463, true);
  add("vla", "hard", 1, 537, false);
  const int wins[] = {8, 6, 4};
  for (int c = 0; c < 3; ++c) {
    const std::string pair = "c" + std::to_string(c + 1);
    add("lin", pair, 2 + c, wins[c], true);
    add("lin", pair, 2 + c, 10 - wins[c], false);
  }

  ReportFixture f{(dir / "manifest.jsonl").string(), (dir / "pair_distances.csv").string(),
                  (dir / "episodes.jsonl").string()};
  std::ostringstream m, d, e;
  write_manifest(m, manifest);
  write_pair_distances(d, distances);
  write_episodes(e, episodes);
  write_file(f.manifest, m.str());
  write_file(f.pair_distances, d.str());
  write_file(f.episodes, e.str());
  return f;
}

const std::vector<std::string>& libero_goal_originals() {
  static const std::vector<std::string> kTexts = {
      "open the middle drawer of the cabinet",
      "put the bowl on the stove",
      "push the plate to the front of the stove",
      "open the top drawer and put the bowl inside",
      "put the bowl on top of the cabinet",
      "put the wine bottle on top of the cabinet",
      "put the cream cheese in the bowl",
      "turn on the stove",
      "put the bowl on the plate",
      "put the wine bottle on the rack",
  };
  return kTexts;
}

const CellCounts& libero_para_cell_counts() {
  static const CellCounts kCounts = {{
      {0, 100, 79, 74, 98, 75, 93, 93, 83, 87, 88},
      {98, 100, 100, 100, 100, 100, 100, 99, 99, 99, 100},
      {87, 100, 100, 100, 100, 99, 100, 100, 100, 94, 96},
      {74, 100, 98, 100, 97, 94, 100, 95, 100, 95, 98},
  }};
  return kCounts;
}

const std::array<std::size_t, 10>& libero_para_task_counts() {
  static const std::array<std::size_t, 10> kCounts = {416, 403, 406, 410, 410,
                                                      423, 411, 414, 386, 413};
  return kCounts;
}

std::vector<ManifestRecord> synthetic_libero_para_manifest() {
  const auto& cells = libero_para_cell_counts();
  const auto& quota = libero_para_task_counts();
  const auto& texts = libero_goal_originals();
  std::vector<ManifestRecord> out;
  std::size_t task = 0, used = 0;
  for (ObjectVariation o : kAllObjectVariations) {
    for (ActionVariation a : kAllActionVariations) {
      for (std::size_t k = 0; k < cells[ordinal(o)][ordinal(a)]; ++k) {
        while (used == quota[task]) {
          ++task;
          used = 0;
        }
        ++used;
        ManifestRecord r;
        r.pair_id = "lp-" + std::to_string(out.size() + 1);
        r.task_id = static_cast<int>(task);
        r.original_text = texts[task];
        r.paraphrase_text = texts[task] + " #" + std::to_string(out.size() + 1);
        r.object_var = o;
        r.action_var = a;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::string fixture(const std::string& name) {
  return std::string(PRIDE_FIXTURE_DIR) + "/" + name;
}

TempDir::TempDir() {
  std::string templ = (std::filesystem::temp_directory_path() / "pride-test-XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = templ;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path);
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> argv{"pride"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(argv, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace pride::testdata
