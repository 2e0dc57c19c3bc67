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
 * @file config.cpp
 * @brief Plain `key value` configuration parsing.
 */

#include "fv/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fv/error.hpp"

namespace fv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

KvConfig KvConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::kIoError, "config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

KvConfig KvConfig::parse(std::string_view text) {
    KvConfig cfg;
    size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        size_t split = line.find_first_of(" \t");
        if (split == std::string_view::npos)
            raise(Errc::kBadConfig,
                  "config: line " + std::to_string(lineno) + " has a key but no value");
        std::string key(line.substr(0, split));
        std::string value(trim(line.substr(split + 1)));
        cfg.entries_[key] = value;
    }
    return cfg;
}

bool KvConfig::has(std::string_view key) const {
    return entries_.count(std::string(key)) != 0;
}

double KvConfig::get_f64(std::string_view key) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end())
        raise(Errc::kBadConfig, "config: missing key " + std::string(key));
    const std::string& v = it->second;
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        raise(Errc::kBadConfig, "config: key " + std::string(key) + " is not a number");
    return out;
}

double KvConfig::get_f64(std::string_view key, double fallback) const {
    return has(key) ? get_f64(key) : fallback;
}

int64_t KvConfig::get_i64(std::string_view key) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end())
        raise(Errc::kBadConfig, "config: missing key " + std::string(key));
    const std::string& v = it->second;
    int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        raise(Errc::kBadConfig, "config: key " + std::string(key) + " is not an integer");
    return out;
}

int64_t KvConfig::get_i64(std::string_view key, int64_t fallback) const {
    return has(key) ? get_i64(key) : fallback;
}

std::string KvConfig::get_str(std::string_view key) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end())
        raise(Errc::kBadConfig, "config: missing key " + std::string(key));
    return it->second;
}

std::string KvConfig::get_str(std::string_view key, std::string_view fallback) const {
    auto it = entries_.find(std::string(key));
    return it == entries_.end() ? std::string(fallback) : it->second;
}

}  // namespace fv
