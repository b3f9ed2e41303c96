// Copyright 2026 The derivguide Authors
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

#include "derivguide/saturation/selection.hpp"

#include <charconv>
#include <stdexcept>

namespace derivguide::saturation {

Ratio parse_ratio(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("ratio '" + std::string(text) + "' is not of the form a:b");
  }
  auto parse = [&](std::string_view part) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw std::invalid_argument("ratio '" + std::string(text) + "' is not of the form a:b");
    }
    return v;
  };
  Ratio r{parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
  if (r.period() == 0) throw std::invalid_argument("ratio 0:0 has no positive component");
  return r;
}

std::string to_string(const Ratio& r) {
  return std::to_string(r.first) + ":" + std::to_string(r.second);
}

void ClauseQueue::add(fol::ClauseId id, std::size_t weight) {
  if (!weights_.emplace(id, weight).second) return;
  by_age_.insert(id);
  by_weight_.emplace(weight, id);
}

void ClauseQueue::remove(fol::ClauseId id) {
  auto it = weights_.find(id);
  if (it == weights_.end()) return;
  by_weight_.erase({it->second, id});
  by_age_.erase(id);
  weights_.erase(it);
}

fol::ClauseId ClauseQueue::pop() {
  bool by_age = ratio_.second == 0 || (ratio_.first > 0 && tick_ % ratio_.period() < ratio_.first);
  ++tick_;
  fol::ClauseId id = by_age ? *by_age_.begin() : by_weight_.begin()->second;
  remove(id);
  return id;
}

std::string_view to_string(PickSource s) {
  switch (s) {
    case PickSource::a: return "A";
    case PickSource::b: return "B";
    case PickSource::fallback: return "fallback";
  }
  return "?";
}

LayeredSelector::LayeredSelector(Ratio age_weight, Ratio second_level, bool layered)
    : all_(age_weight), positive_(age_weight), second_level_(second_level), layered_(layered) {
  if (age_weight.period() == 0 || second_level.period() == 0) {
    throw std::invalid_argument("selection ratios need a positive component");
  }
}

void LayeredSelector::add(fol::ClauseId id, std::size_t weight, bool positive) {
  all_.add(id, weight);
  if (layered_ && positive) positive_.add(id, weight);
}

LayeredSelector::Pick LayeredSelector::select() {
  if (!layered_) return Pick{all_.pop(), PickSource::b};
  const bool a_slot = second_level_.second == 0 ||
                      (second_level_.first > 0 && tick_ % second_level_.period() < second_level_.first);
  ++tick_;
  if (a_slot && !positive_.empty()) {
    fol::ClauseId id = positive_.pop();
    all_.remove(id);
    return Pick{id, PickSource::a};
  }
  fol::ClauseId id = all_.pop();
  positive_.remove(id);
  return Pick{id, a_slot ? PickSource::fallback : PickSource::b};
}

}  // namespace derivguide::saturation
