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

#include <string>
#include <string_view>

#include <fmt/format.h>

#include "slumix/error.h"
#include "slumix/random.h"
#include "slumix/trainer.h"

namespace slumix {

void validate_sim(const SpeechSimConfig& cfg) {
  auto in_unit = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!in_unit(cfg.substitution_rate) || !in_unit(cfg.deletion_rate)) {
    throw PreconditionError("speech simulator rates must lie in [0, 1]");
  }
  if (cfg.substitution_rate + cfg.deletion_rate > 1.0 + 1e-12) {
    throw PreconditionError(fmt::format(
        "substitution_rate + deletion_rate = {} exceeds 1",
        cfg.substitution_rate + cfg.deletion_rate));
  }
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string confusion_variant(std::string_view token, unsigned k) {
  std::string out(token);
  const std::uint64_t h = mix64(fnv1a64(token) ^ (k + 1));
  std::vector<std::size_t> letters;
  for (std::size_t i = 0; i < out.size(); ++i) {
    char c = out[i];
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) letters.push_back(i);
  }
  // Tokens without ASCII letters get a suffix instead, keeping UTF-8 intact.
  if (letters.empty()) {
    out.push_back(static_cast<char>('a' + (h >> 8) % 26));
    return out;
  }
  std::size_t pos = letters[h % letters.size()];
  char replacement = static_cast<char>('a' + (h >> 8) % 26);
  char lower = out[pos] | 0x20;
  if (replacement == lower) {
    replacement = static_cast<char>('a' + (replacement - 'a' + 1) % 26);
  }
  out[pos] = replacement;
  return out;
}

std::vector<std::optional<std::string>> simulate_speech_aligned(
    std::string_view text, const SpeechSimConfig& cfg) {
  validate_sim(cfg);
  std::vector<std::string> tokens = tokenize(text);
  std::vector<std::optional<std::string>> out;
  out.reserve(tokens.size());
  Rng rng(cfg.seed);
  for (std::string& tok : tokens) {
    double u = rng.uniform();
    if (u < cfg.deletion_rate) {
      out.emplace_back(std::nullopt);
    } else if (u < cfg.deletion_rate + cfg.substitution_rate) {
      out.emplace_back(
          confusion_variant(tok, static_cast<unsigned>(rng.below(2))));
    } else {
      out.emplace_back(std::move(tok));
    }
  }
  return out;
}

std::vector<std::string> simulate_speech(std::string_view text,
                                         const SpeechSimConfig& cfg) {
  std::vector<std::string> out;
  for (auto& tok : simulate_speech_aligned(text, cfg)) {
    if (tok) out.push_back(std::move(*tok));
  }
  return out;
}

SpeechSimConfig recording_sim(const SpeechSimConfig& base,
                              std::string_view speech_ref) {
  SpeechSimConfig cfg = base;
  cfg.seed = derive_seed(base.seed, speech_ref);
  return cfg;
}

}  // namespace slumix
