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

#include "derivguide/model/model.hpp"
#include "derivguide/model/serialize.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>

namespace derivguide::model {

namespace {

constexpr char kMagic[8] = {'D', 'G', 'M', 'O', 'D', 'E', 'L', '\0'};

template <typename T>
void put(std::string& out, T value) {
  static_assert(std::is_integral_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }

  std::string_view take(std::size_t count) {
    need(count);
    auto s = bytes_.substr(pos_, count);
    pos_ += count;
    return s;
  }

  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t count) const {
    if (bytes_.size() - pos_ < count) throw ModelError("model file is truncated");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_model(const Model& model) {
  const auto& config = model.config();
  std::string out(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kModelFormatVersion);
  put<std::uint32_t>(out, config.n);
  put<std::uint32_t>(out, config.sine_cap);
  put<std::uint32_t>(out, (config.use_sine ? 1u : 0u) | (config.generic_blocks ? 2u : 0u));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(config.rules.size()));
  for (Rule r : config.rules) put<std::uint8_t>(out, static_cast<std::uint8_t>(r));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(config.revealed_axioms.size()));
  for (const auto& name : config.revealed_axioms) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out += name;
  }
  put<std::uint64_t>(out, model.params().size());
  for (double p : model.params()) put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(p));
  return out;
}

Model deserialize_model(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw ModelError("not a model file (bad magic)");
  }
  const auto version = in.get<std::uint32_t>();
  if (version != kModelFormatVersion) {
    throw ModelError("model format version " + std::to_string(version) + " unsupported (expected " +
                     std::to_string(kModelFormatVersion) + ")");
  }
  ModelConfig config;
  config.n = in.get<std::uint32_t>();
  config.sine_cap = in.get<std::uint32_t>();
  const auto flags = in.get<std::uint32_t>();
  config.use_sine = (flags & 1u) != 0;
  config.generic_blocks = (flags & 2u) != 0;
  config.rules.clear();
  const auto rule_count = in.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < rule_count; ++i) {
    const auto r = in.get<std::uint8_t>();
    if (r > static_cast<std::uint8_t>(Rule::subsumption_resolution)) {
      throw ModelError("unknown rule id " + std::to_string(r) + " in model file");
    }
    config.rules.push_back(static_cast<Rule>(r));
  }
  const auto m = in.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto len = in.get<std::uint32_t>();
    config.revealed_axioms.emplace_back(in.take(len));
  }
  const auto count = in.get<std::uint64_t>();
  std::vector<double> params;
  params.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, bytes.size() / 8)));
  for (std::uint64_t i = 0; i < count; ++i) {
    params.push_back(std::bit_cast<double>(in.get<std::uint64_t>()));
  }
  if (!in.at_end()) throw ModelError("trailing bytes after model parameters");
  return Model(std::move(config), std::move(params));
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot open '" + path.string() + "' for writing");
  const std::string bytes = serialize_model(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ModelError("failed writing '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

}  // namespace derivguide::model
