// Copyright 2026 The slumix Authors.
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

#include "slumix/labelcodec.h"

#include <cstddef>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "slumix/error.h"

namespace slumix {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lowered(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

constexpr std::string_view kKeyDelimiters = "|;:[]";
constexpr std::string_view kFillerDelimiters = "|;[]";

bool contains_any(std::string_view s, std::string_view chars) {
  return s.find_first_of(chars) != std::string_view::npos;
}

// A key match inside `lower` (already ASCII-lowercased).
struct KeyMatch {
  std::size_t begin = std::string_view::npos;  // first char of the key
  std::size_t value = std::string_view::npos;  // first char after ':'
  bool found() const { return begin != std::string_view::npos; }
};

// Finds `key` at a word boundary, followed by optional blanks and ':'.
KeyMatch find_key(std::string_view lower, std::string_view key,
                  std::size_t from) {
  while (from <= lower.size()) {
    std::size_t pos = lower.find(key, from);
    if (pos == std::string_view::npos) return {};
    from = pos + 1;
    if (pos > 0 && is_word_char(lower[pos - 1])) continue;
    std::size_t i = pos + key.size();
    if (i < lower.size() && is_word_char(lower[i])) continue;
    while (i < lower.size() && (lower[i] == ' ' || lower[i] == '\t')) ++i;
    if (i < lower.size() && lower[i] == ':') return {pos, i + 1};
  }
  return {};
}

KeyMatch find_entities_key(std::string_view lower, std::size_t from) {
  KeyMatch best;
  for (std::string_view key : {"entities", "entity", "slots"}) {
    KeyMatch m = find_key(lower, key, from);
    if (m.found() && (!best.found() || m.begin < best.begin)) best = m;
  }
  return best;
}

// End of a scalar section value: the first '|' or line break, or the start
// of the following key, whichever comes first.
std::size_t value_end(std::string_view lower, std::size_t from,
                      std::size_t next_key) {
  std::size_t end = lower.find_first_of("|\n\r", from);
  if (end == std::string_view::npos) end = lower.size();
  return std::min(end, next_key);
}

std::size_t count_words(std::string_view lower_text, std::string_view word) {
  std::size_t n = 0;
  for (std::size_t pos = lower_text.find(word); pos != std::string_view::npos;
       pos = lower_text.find(word, pos + 1)) {
    bool left = pos == 0 || !is_word_char(lower_text[pos - 1]);
    std::size_t end = pos + word.size();
    bool right = end >= lower_text.size() || !is_word_char(lower_text[end]);
    if (left && right) ++n;
  }
  return n;
}

void replace_all(std::string& s, std::string_view what,
                 std::string_view with) {
  for (std::size_t pos = s.find(what); pos != std::string::npos;
       pos = s.find(what, pos + with.size())) {
    s.replace(pos, what.size(), with);
  }
}

}  // namespace

std::string normalize_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string normalize_key(std::string_view s) {
  return lowered(normalize_text(s));
}

SemanticLabel normalize_label(const SemanticLabel& label) {
  SemanticLabel out;
  out.unparseable = label.unparseable;
  out.scenario = normalize_key(label.scenario);
  out.action = normalize_key(label.action);
  out.entities.reserve(label.entities.size());
  for (const Entity& e : label.entities) {
    out.entities.push_back({normalize_key(e.etype), normalize_text(e.filler)});
  }
  return out;
}

std::optional<std::string> label_problem(const SemanticLabel& label) {
  if (label.unparseable) return "label is flagged unparseable";
  auto check_key = [](std::string_view what,
                      std::string_view v) -> std::optional<std::string> {
    if (v.empty()) return fmt::format("empty {}", what);
    if (contains_any(v, kKeyDelimiters)) {
      return fmt::format("{} '{}' contains a delimiter (| ; : [ ])", what, v);
    }
    return std::nullopt;
  };
  if (auto p = check_key("scenario", label.scenario)) return p;
  if (auto p = check_key("action", label.action)) return p;
  for (const Entity& e : label.entities) {
    if (auto p = check_key("entity type", e.etype)) return p;
    if (e.filler.empty()) return "empty entity filler";
    if (contains_any(e.filler, kFillerDelimiters)) {
      return fmt::format("filler '{}' contains a delimiter (| ; [ ])",
                         e.filler);
    }
  }
  return std::nullopt;
}

std::string serialize_label(const SemanticLabel& label) {
  SemanticLabel norm = normalize_label(label);
  if (auto problem = label_problem(norm)) {
    throw DataError("cannot serialize label: " + *problem);
  }
  std::string out = fmt::format("scenario: {} | action: {} | entities: [",
                                norm.scenario, norm.action);
  for (std::size_t i = 0; i < norm.entities.size(); ++i) {
    if (i > 0) out += "; ";
    out += norm.entities[i].etype;
    out += ": ";
    out += norm.entities[i].filler;
  }
  out += ']';
  return out;
}

SemanticLabel parse_label(std::string_view text) noexcept {
  try {
    const std::string lower = lowered(text);

    KeyMatch scenario_key = find_key(lower, "scenario", 0);
    if (!scenario_key.found()) return SemanticLabel::Unparseable();
    KeyMatch action_key = find_key(lower, "action", scenario_key.value);
    if (!action_key.found()) return SemanticLabel::Unparseable();

    SemanticLabel label;
    std::size_t scenario_end =
        value_end(lower, scenario_key.value, action_key.begin);
    label.scenario = normalize_key(text.substr(
        scenario_key.value, scenario_end - scenario_key.value));

    KeyMatch entities_key = find_entities_key(lower, action_key.value);
    std::size_t action_end = value_end(
        lower, action_key.value,
        entities_key.found() ? entities_key.begin : lower.size());
    label.action = normalize_key(
        text.substr(action_key.value, action_end - action_key.value));

    if (label.scenario.empty() || label.action.empty()) {
      return SemanticLabel::Unparseable();
    }
    if (!entities_key.found()) return label;

    std::size_t i = entities_key.value;
    while (i < lower.size() && is_space(lower[i])) ++i;
    std::size_t body_begin;
    std::size_t body_end;
    if (i < lower.size() && lower[i] == '[') {
      body_begin = i + 1;
      body_end = lower.find(']', body_begin);
      if (body_end == std::string::npos) body_end = lower.size();
    } else {
      // Bare list without brackets: runs to the next section break.
      body_begin = i;
      body_end = value_end(lower, i, lower.size());
    }

    std::string_view body = text.substr(body_begin, body_end - body_begin);
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t stop = body.find(';', start);
      if (stop == std::string_view::npos) stop = body.size();
      std::string_view item = body.substr(start, stop - start);
      std::size_t colon = item.find(':');
      if (colon != std::string_view::npos) {
        Entity e{normalize_key(item.substr(0, colon)),
                 normalize_text(item.substr(colon + 1))};
        if (!e.etype.empty() && !e.filler.empty()) {
          label.entities.push_back(std::move(e));
        }
      }
      start = stop + 1;
    }
    return label;
  } catch (...) {
    // Only allocation failure can land here.
    return SemanticLabel::Unparseable();
  }
}

PromptTemplate PromptTemplate::Default() {
  return PromptTemplate{
      "Extract the intent and the slots of the input below.\n"
      "Answer with a single line in this format: {output}\n"
      "Input: {input}",
      "scenario: <name> | action: <name> | entities: [<type>: <filler>; ...]",
  };
}

namespace {

std::string render_instruction(const PromptTemplate& tmpl) {
  std::string out = tmpl.instruction_text;
  replace_all(out, kOutputPlaceholder, tmpl.output_contract);
  return out;
}

std::size_t count_occurrences(std::string_view s, std::string_view what) {
  std::size_t n = 0;
  for (std::size_t pos = s.find(what); pos != std::string_view::npos;
       pos = s.find(what, pos + what.size())) {
    ++n;
  }
  return n;
}

}  // namespace

void validate_template(const PromptTemplate& tmpl) {
  std::string rendered = render_instruction(tmpl);
  std::size_t inputs = count_occurrences(rendered, kInputPlaceholder);
  if (inputs == 0) {
    throw PreconditionError("prompt template has no {input} placeholder");
  }
  if (inputs > 1) {
    throw PreconditionError("prompt template repeats the {input} placeholder");
  }
  const std::string lower = lowered(rendered);
  for (std::string_view field : {"scenario", "action", "entities"}) {
    std::size_t n = count_words(lower, field);
    if (n != 1) {
      throw PreconditionError(fmt::format(
          "prompt template must name '{}' exactly once (found {})", field, n));
    }
  }
}

std::string build_prompt(const PromptTemplate& tmpl, std::string_view payload) {
  validate_template(tmpl);
  std::string out = render_instruction(tmpl);
  std::size_t pos = out.find(kInputPlaceholder);
  out.replace(pos, kInputPlaceholder.size(), payload);
  return out;
}

}  // namespace slumix
