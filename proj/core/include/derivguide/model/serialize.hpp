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
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "derivguide/model/model.hpp"

namespace derivguide::model {

inline constexpr std::uint32_t kModelFormatVersion = 1;

/// Byte layout (all integers little-endian):
///   "DGMODEL\0"            8 bytes
///   version                u32
///   n, sine_cap            u32, u32
///   flags                  u32 (bit 0: SInE input, bit 1: generic blocks)
///   rule count, rules      u32, u8 each
///   axiom count            u32, then per axiom: u32 length + UTF-8 bytes
///   parameter count        u64
///   parameters             f64 each, in block order
std::string serialize_model(const Model& model);

/// Throws ModelError on a bad magic, a version mismatch or truncation.
Model deserialize_model(std::string_view bytes);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace derivguide::model
