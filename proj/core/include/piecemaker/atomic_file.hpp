// Copyright 2026 The Piecemaker Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string_view>

namespace piecemaker {

/// Writes `contents` to a sibling temporary file and renames it over `path`,
/// so readers never observe a truncated file. Throws std::runtime_error.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace piecemaker
