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
 * @file benes.cpp
 * @brief Benes network routing and evaluation.
 */

#include "fv/benes.hpp"

#include <bit>

namespace fv {

namespace {

int log2_exact(int w) {
    int k = std::countr_zero(static_cast<unsigned>(w));
    if (w <= 0 || (1 << k) != w) raise(Errc::kBadWidth, "network width must be a power of two");
    return k;
}

void check_perm(const std::vector<int>& perm) {
    const int w = static_cast<int>(perm.size());
    std::vector<char> seen(w, 0);
    for (int v : perm) {
        if (v < 0 || v >= w || seen[v]) raise(Errc::kNotAPermutation, "mapping is not a bijection");
        seen[v] = 1;
    }
}

// Assigns every input/output to the top (0) or bottom (1) sub-network by
// walking the pairing constraints until each chain closes.
void split_subnets(const std::vector<int>& perm, std::vector<int>& insub, std::vector<int>& outsub) {
    const int w = static_cast<int>(perm.size());
    std::vector<int> inv(w);
    for (int i = 0; i < w; ++i) inv[perm[i]] = i;
    insub.assign(w, -1);
    outsub.assign(w, -1);
    for (int seed = 0; seed < w; seed += 2) {
        int i = seed;
        int s = 0;
        while (insub[i] == -1) {
            insub[i] = s;
            outsub[perm[i]] = s;
            int j = inv[perm[i] ^ 1];  // feeds the partner output, other subnet
            insub[j] = 1 - s;
            outsub[perm[j]] = 1 - s;
            i = j ^ 1;  // its partner input stays on subnet s
        }
    }
}

}  // namespace

int BenesConfig::stages() const { return 2 * log2_exact(width) - 1; }

BenesConfig route_benes(const std::vector<int>& perm) {
    const int w = static_cast<int>(perm.size());
    log2_exact(w);
    if (w < 2 || w > 64) raise(Errc::kBadWidth, "network width out of range");
    check_perm(perm);

    BenesConfig cfg;
    cfg.width = w;
    if (w == 2) {
        cfg.stage_bits = {static_cast<uint8_t>(perm[0] == 1)};
        return cfg;
    }

    std::vector<int> insub, outsub;
    split_subnets(perm, insub, outsub);

    std::vector<int> top_perm(w / 2), bot_perm(w / 2);
    for (int i = 0; i < w; ++i) {
        const int port = i >> 1;
        if (insub[i] == 0)
            top_perm[port] = perm[i] >> 1;
        else
            bot_perm[port] = perm[i] >> 1;
    }
    const BenesConfig top = route_benes(top_perm);
    const BenesConfig bottom = route_benes(bot_perm);

    const int half = w / 2;
    const int stages = 2 * log2_exact(w) - 1;
    cfg.stage_bits.assign(static_cast<size_t>(stages) * half, 0);
    for (int a = 0; a < half; ++a) cfg.stage_bits[a] = static_cast<uint8_t>(insub[2 * a] == 1);
    for (int b = 0; b < half; ++b)
        cfg.stage_bits[static_cast<size_t>(stages - 1) * half + b] = static_cast<uint8_t>(outsub[2 * b] == 1);
    for (int m = 1; m < stages - 1; ++m) {
        for (int s = 0; s < half; ++s) {
            const uint8_t bit =
                (s < half / 2) ? top.bit(m - 1, s) : bottom.bit(m - 1, s - half / 2);
            cfg.stage_bits[static_cast<size_t>(m) * half + s] = bit;
        }
    }
    return cfg;
}

std::vector<int> benes_realized_perm(const BenesConfig& cfg) {
    const int w = cfg.width;
    const int stages = cfg.stages();
    if (cfg.stage_bits.size() != static_cast<size_t>(stages) * (w / 2))
        raise(Errc::kBadConfig, "stage bit count does not match width");
    if (w == 2) return cfg.bit(0, 0) ? std::vector<int>{1, 0} : std::vector<int>{0, 1};

    auto [top, bottom] = benes_split_cores(cfg);
    const std::vector<int> tp = benes_realized_perm(top);
    const std::vector<int> bp = benes_realized_perm(bottom);

    std::vector<int> perm(w);
    for (int i = 0; i < w; ++i) {
        const int a = i >> 1;
        const int subnet = (i & 1) ^ cfg.bit(0, a);
        const int port_out = subnet == 0 ? tp[a] : bp[a];
        const int crossed = cfg.bit(stages - 1, port_out);
        // Straight: top feeds the even output of its switch, bottom the odd.
        perm[i] = 2 * port_out + ((subnet ^ crossed) & 1);
    }
    return perm;
}

Word benes_permute(const Word& input, const BenesConfig& cfg) {
    if (input.width != cfg.width) raise(Errc::kWidthMismatch, "word width differs from network width");
    const std::vector<int> perm = benes_realized_perm(cfg);
    uint64_t out = 0;
    for (int i = 0; i < cfg.width; ++i)
        if ((input.value >> i) & 1) out |= 1ULL << perm[i];
    return Word{out, input.width};
}

std::pair<BenesConfig, BenesConfig> benes_split_cores(const BenesConfig& cfg) {
    const int w = cfg.width;
    if (w < 4) raise(Errc::kBadWidth, "no cores below width 4");
    const int stages = cfg.stages();
    const int half = w / 2;
    BenesConfig top{half, {}}, bottom{half, {}};
    for (int m = 1; m < stages - 1; ++m) {
        for (int s = 0; s < half / 2; ++s) top.stage_bits.push_back(cfg.bit(m, s));
        for (int s = half / 2; s < half; ++s) bottom.stage_bits.push_back(cfg.bit(m, s));
    }
    return {top, bottom};
}

BenesConfig benes_join_cores(const BenesConfig& top, const BenesConfig& bottom,
                             const std::vector<uint8_t>& outer_in, const std::vector<uint8_t>& outer_out) {
    if (top.width != bottom.width) raise(Errc::kWidthMismatch, "core widths differ");
    const int w = top.width * 2;
    const int half = w / 2;
    if (static_cast<int>(outer_in.size()) != half || static_cast<int>(outer_out.size()) != half)
        raise(Errc::kBadConfig, "outer stage needs one bit per switch");
    const int stages = 2 * log2_exact(w) - 1;
    BenesConfig cfg{w, std::vector<uint8_t>(static_cast<size_t>(stages) * half, 0)};
    for (int a = 0; a < half; ++a) cfg.stage_bits[a] = outer_in[a];
    for (int b = 0; b < half; ++b) cfg.stage_bits[static_cast<size_t>(stages - 1) * half + b] = outer_out[b];
    for (int m = 1; m < stages - 1; ++m)
        for (int s = 0; s < half; ++s)
            cfg.stage_bits[static_cast<size_t>(m) * half + s] =
                (s < half / 2) ? top.bit(m - 1, s) : bottom.bit(m - 1, s - half / 2);
    return cfg;
}

}  // namespace fv
