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

#include "pride/io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "pride/error.h"

namespace pride {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ReadError(path, {{ErrorCode::kIoFailure, 0, "cannot open " + path}});
  }
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Reads JSON-lines input: validates the header and hands every record to
// `handle`, which returns a diagnostic for a bad record.
template <typename Handler>
void read_json_lines(std::istream& in, const std::string& source, std::string_view kind,
                     std::vector<Diagnostic>& diags, Handler handle) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank(line)) continue;
    json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded() || !value.is_object()) {
      if (!header_seen) {
        diags.push_back({ErrorCode::kBadHeader, line_no, "expected a format header"});
        return;
      }
      diags.push_back({ErrorCode::kMalformedLine, line_no, "not a JSON object"});
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      const auto v = value.find("format_version");
      const auto k = value.find("kind");
      if (v == value.end() || !v->is_number_integer() || v->get<int>() != kFormatVersion ||
          k == value.end() || !k->is_string() || k->get<std::string>() != kind) {
        diags.push_back({ErrorCode::kBadHeader, line_no,
                         "expected {\"format_version\":1,\"kind\":\"" + std::string(kind) +
                             "\"}"});
        return;
      }
      continue;
    }
    if (auto d = handle(value, line_no)) diags.push_back(std::move(*d));
  }
  if (!header_seen) {
    diags.push_back({ErrorCode::kBadHeader, 0, source + " has no format header"});
  }
}

std::optional<std::string> get_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

std::optional<long long> get_integer(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) return std::nullopt;
  return it->get<long long>();
}

Diagnostic malformed(std::size_t line, std::string detail) {
  return {ErrorCode::kMalformedLine, line, std::move(detail)};
}

std::optional<int> get_task_id(const json& obj) {
  auto t = get_integer(obj, "task_id");
  if (!t || *t < 0 || *t > 9) return std::nullopt;
  return static_cast<int>(*t);
}

void finish(const std::string& source, std::vector<Diagnostic>& diags) {
  if (!diags.empty()) throw ReadError(source, std::move(diags));
}

}  // namespace

// ---------------------------------------------------------------- manifest

std::vector<ManifestRecord> parse_manifest(std::istream& in, const std::string& source,
                                           const ManifestReadOptions& options) {
  std::vector<ManifestRecord> records;
  std::vector<Diagnostic> diags;
  std::unordered_set<std::string> seen;
  read_json_lines(in, source, "manifest", diags,
                  [&](const json& obj, std::size_t line) -> std::optional<Diagnostic> {
    ManifestRecord r;
    auto pair_id = get_string(obj, "pair_id");
    auto task = get_task_id(obj);
    auto original = get_string(obj, "original_text");
    auto paraphrase = get_string(obj, "paraphrase_text");
    auto object_var = get_string(obj, "object_var");
    auto action_var = get_string(obj, "action_var");
    if (!pair_id || pair_id->empty()) return malformed(line, "missing pair_id");
    if (!task) return malformed(line, "task_id must be an integer in 0..9");
    if (!original || !paraphrase) return malformed(line, "missing instruction text");
    if (!object_var || !action_var) return malformed(line, "missing variation tags");
    auto o = parse_object_tag(*object_var);
    if (!o) return Diagnostic{ErrorCode::kUnknownTag, line, "object_var '" + *object_var + "'"};
    auto a = parse_action_tag(*action_var);
    if (!a) return Diagnostic{ErrorCode::kUnknownTag, line, "action_var '" + *action_var + "'"};
    if (!seen.insert(*pair_id).second && options.reject_duplicate_ids) {
      return Diagnostic{ErrorCode::kDuplicateId, line, "pair_id '" + *pair_id + "'"};
    }
    records.push_back({*pair_id, *task, *original, *paraphrase, *o, *a});
    return std::nullopt;
  });
  finish(source, diags);
  return records;
}

std::vector<ManifestRecord> read_manifest(const std::string& path,
                                          const ManifestReadOptions& options) {
  auto in = open_input(path);
  return parse_manifest(in, path, options);
}

void write_manifest(std::ostream& out, const std::vector<ManifestRecord>& records) {
  out << json{{"format_version", kFormatVersion}, {"kind", "manifest"}}.dump() << '\n';
  for (const ManifestRecord& r : records) {
    json obj = {{"pair_id", r.pair_id},
                {"task_id", r.task_id},
                {"original_text", r.original_text},
                {"paraphrase_text", r.paraphrase_text},
                {"object_var", object_tag(r.object_var)},
                {"action_var", action_tag(r.action_var)}};
    out << obj.dump() << '\n';
  }
}

// ------------------------------------------------------------------ parses

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::string> comment_value(std::string_view line, std::string_view key) {
  // "# key = value"
  std::string_view rest = line.substr(1);
  rest.remove_prefix(std::min(rest.find_first_not_of(' '), rest.size()));
  if (rest.substr(0, key.size()) != key) return std::nullopt;
  rest.remove_prefix(key.size());
  rest.remove_prefix(std::min(rest.find_first_not_of(' '), rest.size()));
  if (rest.empty() || rest.front() != '=') return std::nullopt;
  rest.remove_prefix(1);
  if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  return std::string(rest);
}

}  // namespace

std::vector<Instruction> parse_parses(std::istream& in, const std::string& source) {
  std::vector<Instruction> sentences;
  std::vector<Diagnostic> diags;
  std::unordered_set<std::string> seen;

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  // Current sentence state.
  std::optional<std::string> sent_id;
  std::optional<std::string> text;
  std::vector<Token> tokens;
  std::size_t sentence_line = 0;
  bool sentence_bad = false;

  auto flush = [&]() {
    if (sentence_line == 0) return;
    if (!sentence_bad) {
      if (!sent_id) {
        diags.push_back({ErrorCode::kMissingSentId, sentence_line, "sentence has no sent_id"});
      } else if (tokens.empty()) {
        diags.push_back(malformed(sentence_line, "sentence '" + *sent_id + "' has no tokens"));
      } else if (auto problem = find_tree_violation(tokens)) {
        diags.push_back({ErrorCode::kNonTreeHeads, sentence_line,
                         "sentence '" + *sent_id + "': " + *problem});
      } else if (!seen.insert(*sent_id).second) {
        diags.push_back({ErrorCode::kDuplicateId, sentence_line, "sent_id '" + *sent_id + "'"});
      } else {
        Instruction instr;
        instr.id = *sent_id;
        if (text) {
          instr.text = *text;
        } else {
          for (const Token& t : tokens) {
            if (!instr.text.empty()) instr.text += ' ';
            instr.text += t.surface;
          }
        }
        instr.tokens = std::move(tokens);
        sentences.push_back(std::move(instr));
      }
    }
    sent_id.reset();
    text.reset();
    tokens.clear();
    sentence_line = 0;
    sentence_bad = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (!header_seen) {
      if (is_blank(line)) continue;
      auto v = line.front() == '#' ? comment_value(line, "format_version") : std::nullopt;
      if (!v || *v != std::to_string(kFormatVersion)) {
        diags.push_back({ErrorCode::kBadHeader, line_no, "expected '# format_version = 1'"});
        break;
      }
      header_seen = true;
      continue;
    }
    if (is_blank(line)) {
      flush();
      continue;
    }
    if (sentence_line == 0) sentence_line = line_no;
    if (line.front() == '#') {
      if (auto v = comment_value(line, "sent_id")) sent_id = *v;
      else if (auto t = comment_value(line, "text")) text = *t;
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 10) {
      diags.push_back({ErrorCode::kBadColumnCount, line_no,
                       "expected 10 columns, found " + std::to_string(cols.size())});
      sentence_bad = true;
      continue;
    }
    // Multiword ranges ("2-3") and empty nodes ("4.1") are not tree nodes.
    if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
    auto id = parse_int(cols[0]);
    auto head = parse_int(cols[6]);
    if (!id || !head) {
      diags.push_back(malformed(line_no, "ID and HEAD must be integers"));
      sentence_bad = true;
      continue;
    }
    auto pos = parse_upos(cols[3]);
    if (!pos) {
      diags.push_back({ErrorCode::kUnknownTag, line_no, "UPOS '" + std::string(cols[3]) + "'"});
      sentence_bad = true;
      continue;
    }
    Token t;
    t.index = *id;
    t.surface = cols[1];
    t.lemma = cols[2];
    t.pos = *pos;
    t.xpos = cols[4];
    t.feats = cols[5];
    t.head = *head;
    t.deprel = cols[7];
    t.deps = cols[8];
    t.misc = cols[9];
    tokens.push_back(std::move(t));
  }
  flush();
  if (!header_seen && diags.empty()) {
    diags.push_back({ErrorCode::kBadHeader, 0, source + " has no format header"});
  }
  finish(source, diags);
  return sentences;
}

std::vector<Instruction> read_parses(const std::string& path) {
  auto in = open_input(path);
  return parse_parses(in, path);
}

void write_parses(std::ostream& out, const std::vector<Instruction>& sentences) {
  out << "# format_version = " << kFormatVersion << "\n\n";
  for (const Instruction& s : sentences) {
    out << "# sent_id = " << s.id << '\n';
    out << "# text = " << s.text << '\n';
    for (const Token& t : s.tokens) {
      out << t.index << '\t' << t.surface << '\t' << t.lemma << '\t' << upos_name(t.pos)
          << '\t' << t.xpos << '\t' << t.feats << '\t' << t.head << '\t' << t.deprel << '\t'
          << t.deps << '\t' << t.misc << '\n';
    }
    out << '\n';
  }
}

std::unordered_map<std::string, const Instruction*> index_by_id(
    const std::vector<Instruction>& sentences) {
  std::unordered_map<std::string, const Instruction*> out;
  for (const Instruction& s : sentences) out.emplace(s.id, &s);
  return out;
}

// -------------------------------------------------------------- embeddings

EmbeddingTable parse_embeddings(std::istream& in, const std::string& source) {
  std::optional<EmbeddingTable> table;
  std::vector<Diagnostic> diags;
  read_json_lines(in, source, "embeddings", diags,
                  [&](const json& obj, std::size_t line) -> std::optional<Diagnostic> {
    auto sent = get_string(obj, "sent_id");
    auto token = get_integer(obj, "token");
    auto vec = obj.find("vector");
    if (!sent || sent->empty()) return malformed(line, "missing sent_id");
    if (!token || *token < 1) return malformed(line, "token must be a positive integer");
    if (vec == obj.end() || !vec->is_array() || vec->empty()) {
      return malformed(line, "vector must be a non-empty array");
    }
    std::vector<float> values;
    values.reserve(vec->size());
    for (const json& x : *vec) {
      if (!x.is_number()) return malformed(line, "vector components must be numbers");
      values.push_back(static_cast<float>(x.get<double>()));
    }
    if (!table) table.emplace(values.size());
    if (values.size() != table->dimension()) {
      return Diagnostic{ErrorCode::kDimensionDrift, line,
                        "dimension " + std::to_string(values.size()) + ", expected " +
                            std::to_string(table->dimension())};
    }
    try {
      table->add(*sent, static_cast<int>(*token), std::move(values));
    } catch (const Error& e) {
      return Diagnostic{e.code(), line, e.what()};
    }
    return std::nullopt;
  });
  finish(source, diags);
  if (!table) {
    throw ReadError(source, {{ErrorCode::kEmptyInput, 0, "no embedding records"}});
  }
  return std::move(*table);
}

EmbeddingTable read_embeddings(const std::string& path) {
  auto in = open_input(path);
  return parse_embeddings(in, path);
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table,
                      std::string_view model_id) {
  json header = {{"format_version", kFormatVersion}, {"kind", "embeddings"}};
  if (!model_id.empty()) header["model"] = model_id;
  out << header.dump() << '\n';
  char buf[64];
  for (const auto& [key, vec] : table.entries()) {
    out << "{\"sent_id\":" << json(key.first).dump() << ",\"token\":" << key.second
        << ",\"vector\":[";
    for (std::size_t i = 0; i < vec.size(); ++i) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), vec[i],
                                     std::chars_format::general, 9);
      if (i > 0) out << ',';
      out.write(buf, res.ptr - buf);
    }
    out << "]}\n";
  }
}

// ---------------------------------------------------------------- episodes

std::vector<Episode> parse_episodes(std::istream& in, const std::string& source) {
  std::vector<Episode> episodes;
  std::vector<Diagnostic> diags;
  std::unordered_set<std::string> seen;
  read_json_lines(in, source, "episodes", diags,
                  [&](const json& obj, std::size_t line) -> std::optional<Diagnostic> {
    auto episode_id = get_string(obj, "episode_id");
    auto task = get_task_id(obj);
    auto pair_id = get_string(obj, "pair_id");
    auto seed = get_integer(obj, "seed");
    auto success = obj.find("success");
    auto traj = obj.find("trajectory");
    std::string model;
    if (auto m = obj.find("model"); m != obj.end()) {
      if (!m->is_string()) return malformed(line, "model must be a string");
      model = m->get<std::string>();
    }
    if (!episode_id || episode_id->empty()) return malformed(line, "missing episode_id");
    if (!task) return malformed(line, "task_id must be an integer in 0..9");
    if (!pair_id || pair_id->empty()) return malformed(line, "missing pair_id");
    if (!seed) return malformed(line, "seed must be an integer");
    if (success == obj.end() || !success->is_boolean()) {
      return malformed(line, "success must be true or false");
    }
    if (traj == obj.end() || !traj->is_array()) return malformed(line, "missing trajectory");
    if (traj->size() < 2) {
      return Diagnostic{ErrorCode::kShortTrajectory, line,
                        "trajectory has " + std::to_string(traj->size()) + " point(s)"};
    }
    std::vector<double> values;
    std::size_t width = 0;
    for (std::size_t i = 0; i < traj->size(); ++i) {
      const json& row = (*traj)[i];
      if (!row.is_array()) return malformed(line, "trajectory rows must be arrays");
      if (i == 0) width = row.size();
      if (row.size() != width) {
        return Diagnostic{ErrorCode::kRaggedRows, line,
                          "row " + std::to_string(i) + " has width " +
                              std::to_string(row.size()) + ", expected " +
                              std::to_string(width)};
      }
      for (const json& x : row) {
        if (!x.is_number()) return malformed(line, "trajectory values must be numbers");
        values.push_back(x.get<double>());
      }
    }
    if (width < kPositionDims) {
      return malformed(line, "trajectory rows need at least 3 values (x, y, z)");
    }
    if (!seen.insert(*episode_id).second) {
      return Diagnostic{ErrorCode::kDuplicateId, line, "episode_id '" + *episode_id + "'"};
    }
    episodes.push_back(Episode{*episode_id, model, *task, *pair_id, *seed,
                               success->get<bool>(),
                               Trajectory::from_values(width, std::move(values))});
    return std::nullopt;
  });
  finish(source, diags);
  return episodes;
}

std::vector<Episode> read_episodes(const std::string& path) {
  auto in = open_input(path);
  return parse_episodes(in, path);
}

void write_episodes(std::ostream& out, const std::vector<Episode>& episodes) {
  out << json{{"format_version", kFormatVersion}, {"kind", "episodes"}}.dump() << '\n';
  for (const Episode& e : episodes) {
    json obj = {{"episode_id", e.episode_id}};
    if (!e.model.empty()) obj["model"] = e.model;
    obj["task_id"] = e.task_id;
    obj["pair_id"] = e.pair_id;
    obj["seed"] = e.seed;
    obj["success"] = e.success;
    obj["trajectory"] = e.trajectory.rows();
    out << obj.dump() << '\n';
  }
}

// ---------------------------------------------------------- pair distances

namespace {

constexpr std::string_view kPairDistanceHeader = "pair_id,s_k,s_t,pd,alpha";

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

std::vector<PairDistance> parse_pair_distances(std::istream& in, const std::string& source) {
  std::vector<PairDistance> rows;
  std::vector<Diagnostic> diags;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kPairDistanceHeader) {
        diags.push_back({ErrorCode::kBadHeader, line_no,
                         "expected header '" + std::string(kPairDistanceHeader) + "'"});
        break;
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    try {
      fields = split_csv_record(line);
    } catch (const Error& e) {
      diags.push_back(malformed(line_no, e.what()));
      continue;
    }
    if (fields.size() != 5) {
      diags.push_back(malformed(line_no, "expected 5 fields"));
      continue;
    }
    auto s_k = parse_double(fields[1]);
    auto s_t = parse_double(fields[2]);
    auto pd = parse_double(fields[3]);
    auto alpha = parse_double(fields[4]);
    if (fields[0].empty() || !s_k || !s_t || !pd || !alpha) {
      diags.push_back(malformed(line_no, "bad pair distance row"));
      continue;
    }
    if (!seen.insert(fields[0]).second) {
      diags.push_back({ErrorCode::kDuplicateId, line_no, "pair_id '" + fields[0] + "'"});
      continue;
    }
    rows.push_back({fields[0], *s_k, *s_t, *pd, *alpha});
  }
  if (!header_seen && diags.empty()) {
    diags.push_back({ErrorCode::kBadHeader, 0, source + " has no header"});
  }
  finish(source, diags);
  return rows;
}

std::vector<PairDistance> read_pair_distances(const std::string& path) {
  auto in = open_input(path);
  return parse_pair_distances(in, path);
}

void write_pair_distances(std::ostream& out, const std::vector<PairDistance>& rows) {
  out << kPairDistanceHeader << "\r\n";
  for (const PairDistance& r : rows) {
    out << csv_row({r.pair_id, format_exact(r.s_k), format_exact(r.s_t), format_exact(r.pd),
                    format_exact(r.alpha)});
  }
}

// ------------------------------------------------------------ csv, numbers

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty() || was_quoted) {
        throw Error(ErrorCode::kMalformedLine, "quote inside an unquoted field");
      }
      quoted = was_quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      if (was_quoted) throw Error(ErrorCode::kMalformedLine, "text after a closing quote");
      field += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kMalformedLine, "unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string out(buf);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string format_fixed(const std::optional<double>& value, int decimals) {
  return value ? format_fixed(*value, decimals) : std::string();
}

std::string format_exact(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace pride
