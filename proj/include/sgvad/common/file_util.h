// Copyright (c) 2026 The sgvad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SGVAD_COMMON_FILE_UTIL_H_
#define SGVAD_COMMON_FILE_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sgvad {

// Throws Error{kIo} on failure.
std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

std::vector<std::string> SplitString(std::string_view s, char sep);
std::string_view Trim(std::string_view s);

// Relative paths in list files are resolved against the list file's folder.
std::filesystem::path ResolveRelative(const std::filesystem::path& base_file,
                                      const std::string& path);

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double v);

}  // namespace sgvad

#endif  // SGVAD_COMMON_FILE_UTIL_H_
