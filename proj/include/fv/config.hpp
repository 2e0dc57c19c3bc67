/*
 * Copyright 2026 The flashvault-sim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file config.hpp
 * @brief Key-value configuration files: `key value` per line, `#` comments,
 *        blank lines ignored.
 */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace fv {

class KvConfig {
  public:
    /// Reads and parses a file; raises kIoError when it cannot be opened.
    static KvConfig load_file(const std::string& path);
    /// Parses config text; raises kBadConfig on a line with no value.
    static KvConfig parse(std::string_view text);

    bool has(std::string_view key) const;
    /// Missing key or non-numeric value raises kBadConfig.
    double get_f64(std::string_view key) const;
    double get_f64(std::string_view key, double fallback) const;
    int64_t get_i64(std::string_view key) const;
    int64_t get_i64(std::string_view key, int64_t fallback) const;
    std::string get_str(std::string_view key) const;
    std::string get_str(std::string_view key, std::string_view fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

}  // namespace fv
