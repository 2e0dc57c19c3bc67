// Copyright 2026 The flashvault-sim authors
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

/// @file ssd.cpp
/// @brief SSD latency model implementation.
///
/// Latency composition (per request, critical path only; work that hides
/// under the pipeline contributes zero and shows up as overlap credit):
///
///   read    = stack + FTL + [GC] + max over channels of
///             (tR + ECC + sum of page slots + die-switch gaps) [+ placement]
///   program = stack + FTL + [GC] + max over channels of
///             (sum of page slots + die-switch gaps + tPROG)    [+ placement]
///
/// A page slot on the channel costs max(bus, engine) when the stream is
/// enciphered at line rate (FV, and the NCP controller engines pacing their
/// channel), else the plain bus time.  Placement prefixes: NCP stages
/// store-and-forward through controller DRAM (one round trip per 4 KB unit,
/// skipped when the transfer fits controller SRAM); CPU runs software
/// crypto and crosses the host link.  Senses beyond the first and all
/// programs but the last overlap streaming via the page/cache register
/// pair; with double buffering disabled every page runs sense-transfer or
/// transfer-program serially.
///
/// Steady state: each foreground op pays one background relocation burst on
/// its lead die (deeper for small synchronous ops than for striped ones).
/// Burst wall = tR + ceil(R / group) * tPROG + R * (tERASE / pages_per_block);
/// the erase term amortizes block reclamation, and relocation crypto hides
/// entirely inside the sense/program windows (2 * max cipher page time
/// < tR + tPROG).

#include "fv/ssd.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "fv/error.hpp"

namespace fv {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

Placement placement_from_string(const std::string& s) {
    std::string t = lower(s);
    if (t == "cpu") return Placement::kCpu;
    if (t == "ncp") return Placement::kNcp;
    if (t == "fv") return Placement::kFv;
    raise(Errc::kBadConfig, "unknown placement: " + s);
}

std::string to_string(Placement p) {
    switch (p) {
        case Placement::kCpu: return "cpu";
        case Placement::kNcp: return "ncp";
        default: return "fv";
    }
}

// ---------------------------------------------------------------------------
// SsdConfig

double SsdConfig::bus_us_per_page() const {
    // MT/s times bytes per transfer gives MB/s, which is bytes per microsecond.
    return page_bytes / (bus_mt_per_s * (bus_bits / 8.0));
}

long long SsdConfig::blocks_total() const {
    return 1LL * channels * packages_per_channel * dies_per_package * planes_per_die *
           blocks_per_plane;
}

long long SsdConfig::pages_total() const { return blocks_total() * pages_per_block; }

long long SsdConfig::user_pages() const {
    return static_cast<long long>(pages_total() * (1.0 - reserve_fraction));
}

void SsdConfig::validate() const {
    auto pos = [](double v, const char* what) {
        if (!(v > 0)) raise(Errc::kBadConfig, std::string(what) + " must be positive");
    };
    pos(channels, "channels");
    pos(packages_per_channel, "packages_per_channel");
    pos(dies_per_package, "dies_per_package");
    pos(planes_per_die, "planes_per_die");
    pos(blocks_per_plane, "blocks_per_plane");
    pos(pages_per_block, "pages_per_block");
    pos(page_bytes, "page_bytes");
    pos(bus_mt_per_s, "bus_mt_per_s");
    pos(bus_bits, "bus_bits");
    pos(t_r_us, "t_r_us");
    pos(t_prog_us, "t_prog_us");
    pos(t_erase_us, "t_erase_us");
    pos(stack_us, "stack_us");
    pos(ftl_base_us, "ftl_base_us");
    pos(engine_mhz, "engine_mhz");
    pos(bce_lanes, "bce_lanes");
    pos(engines_per_die, "engines_per_die");
    pos(boot_code_pages, "boot_code_pages");
    if (t_pcbsy_us < 0 || t_rcbsy_us < 0 || ldpc_decode_us < 0 || reconfig_us < 0)
        raise(Errc::kBadConfig, "latencies must be non-negative");
    if (ftl_exponent < 0 || ftl_exponent >= 1)
        raise(Errc::kBadConfig, "ftl_exponent must lie in [0, 1)");
    if (gc_free_threshold <= 0 || gc_free_threshold >= 1)
        raise(Errc::kBadConfig, "gc_free_threshold must lie in (0, 1)");
    if (reserve_fraction < 0 || reserve_fraction >= 0.5)
        raise(Errc::kBadConfig, "reserve_fraction must lie in [0, 0.5)");
    if (gc_group_pages < 1 || gc_group_pages > planes_per_die)
        raise(Errc::kBadConfig, "gc_group_pages must lie in [1, planes_per_die]");
    if (steady_burst_small_pages < 1 || steady_burst_large_pages < 1)
        raise(Errc::kBadConfig, "steady burst sizes must be positive");
    if (ncp_dram_roundtrip_us < 0 || ncp_fixed_us < 0 || ncp_core_slowdown < 0)
        raise(Errc::kBadConfig, "ncp costs must be non-negative");
    pos(cpu_host_link_mbps, "cpu_host_link_mbps");
}

SsdConfig SsdConfig::from_kv(const KvConfig& kv) {
    SsdConfig c;
    auto geti = [&](const char* k, int dflt) {
        return static_cast<int>(kv.get_i64(k, dflt));
    };
    c.channels = geti("geometry.channels", c.channels);
    c.packages_per_channel = geti("geometry.packages_per_channel", c.packages_per_channel);
    c.dies_per_package = geti("geometry.dies_per_package", c.dies_per_package);
    c.planes_per_die = geti("geometry.planes_per_die", c.planes_per_die);
    c.blocks_per_plane = geti("geometry.blocks_per_plane", c.blocks_per_plane);
    c.pages_per_block = geti("geometry.pages_per_block", c.pages_per_block);
    c.page_bytes = geti("geometry.page_bytes", c.page_bytes);
    c.bus_mt_per_s = kv.get_f64("bus.mt_per_s", c.bus_mt_per_s);
    c.bus_bits = geti("bus.bits", c.bus_bits);
    c.double_buffering = kv.get_i64("bus.double_buffering", c.double_buffering ? 1 : 0) != 0;
    c.t_r_us = kv.get_f64("nand.t_r_us", c.t_r_us);
    c.t_prog_us = kv.get_f64("nand.t_prog_us", c.t_prog_us);
    c.t_erase_us = kv.get_f64("nand.t_erase_us", c.t_erase_us);
    c.t_pcbsy_us = kv.get_f64("nand.t_pcbsy_us", c.t_pcbsy_us);
    c.t_rcbsy_us = kv.get_f64("nand.t_rcbsy_us", c.t_rcbsy_us);
    c.stack_us = kv.get_f64("host.stack_us", c.stack_us);
    c.ftl_base_us = kv.get_f64("ftl.base_us", c.ftl_base_us);
    c.ftl_exponent = kv.get_f64("ftl.exponent", c.ftl_exponent);
    c.reserve_fraction = kv.get_f64("ftl.reserve_fraction", c.reserve_fraction);
    c.engine_mhz = kv.get_f64("engine.mhz", c.engine_mhz);
    c.engines_per_die = geti("engine.per_die", c.engines_per_die);
    c.bce_lanes = geti("engine.bce_lanes", c.bce_lanes);
    c.hash_alus = geti("engine.hash_alus", c.hash_alus);
    c.acalus = geti("engine.acalus", c.acalus);
    c.ldpc_decode_us = kv.get_f64("ldpc.decode_us", c.ldpc_decode_us);
    c.reconfig_us = kv.get_f64("fsm.reconfig_us", c.reconfig_us);
    c.gc_free_threshold = kv.get_f64("gc.free_threshold", c.gc_free_threshold);
    c.gc_group_pages = geti("gc.group_pages", c.gc_group_pages);
    c.wl_spread_threshold = geti("wl.spread_threshold", c.wl_spread_threshold);
    c.steady_small_op_pages = geti("steady.small_op_pages", c.steady_small_op_pages);
    c.steady_burst_small_pages = geti("steady.burst_small_pages", c.steady_burst_small_pages);
    c.steady_burst_large_pages = geti("steady.burst_large_pages", c.steady_burst_large_pages);
    c.steady_free_threshold = kv.get_f64("steady.free_threshold", c.steady_free_threshold);
    c.ncp_dram_roundtrip_us = kv.get_f64("ncp.dram_roundtrip_us", c.ncp_dram_roundtrip_us);
    c.ncp_sram_bytes = geti("ncp.sram_bytes", c.ncp_sram_bytes);
    c.ncp_fixed_us = kv.get_f64("ncp.fixed_us", c.ncp_fixed_us);
    c.ncp_core_slowdown = kv.get_f64("ncp.core_slowdown", c.ncp_core_slowdown);
    c.cpu_host_link_mbps = kv.get_f64("cpu.host_link_mbps", c.cpu_host_link_mbps);
    c.boot_code_pages = geti("boot.code_pages", c.boot_code_pages);
    c.validate();
    return c;
}

SsdConfig SsdConfig::from_file(const std::string& path) {
    return from_kv(KvConfig::load_file(path));
}

// ---------------------------------------------------------------------------
// CostTables

CostTables CostTables::defaults() {
    CostTables t;
    // block_bytes, engine cycles per block on one lane, host software MB/s.
    t.ciphers["aes"] = {16, 500, 238};
    t.ciphers["sm4"] = {16, 600, 209};
    t.ciphers["camellia"] = {16, 615, 206};
    t.ciphers["serpent"] = {16, 1490, 106};
    t.ciphers["3des"] = {8, 840, 95};
    t.ciphers["hight"] = {8, 605, 131};
    t.ciphers["idea"] = {8, 448, 156};
    // verify core, sign core (engine cycles), signature bytes, host cores (ms).
    t.schemes["rsa3072"] = {9600, 60700, 384, 0.15, 1.7};
    t.schemes["ecdsa384"] = {12000, 31300, 96, 0.18, 1.3};
    t.schemes["dilithium"] = {30000, 30500, 4627, 0.45, 2.5};
    t.schemes["falcon"] = {70000, 162900, 1280, 1.0, 4.5};
    t.schemes["sphincs"] = {50000, 1607900, 29792, 0.75, 25.4};
    return t;
}

CostTables CostTables::from_kv(const KvConfig& kv) {
    CostTables t = defaults();
    for (const auto& [key, value] : kv.entries()) {
        (void)value;
        size_t d1 = key.find('.');
        size_t d2 = key.find('.', d1 == std::string::npos ? d1 : d1 + 1);
        std::string head = key.substr(0, d1);
        if (head == "hash") {
            if (key == "hash.rate_bytes") t.hash_rate_bytes = kv.get_f64(key);
            else if (key == "hash.cycles_per_perm") t.hash_cycles_per_perm = kv.get_f64(key);
            else if (key == "hash.cpu_mbps") t.cpu_hash_mbps = kv.get_f64(key);
            else raise(Errc::kBadConfig, "unknown key: " + key);
            continue;
        }
        if (d1 == std::string::npos || d2 == std::string::npos)
            raise(Errc::kBadConfig, "unknown key: " + key);
        std::string name = key.substr(d1 + 1, d2 - d1 - 1);
        std::string field = key.substr(d2 + 1);
        if (head == "cipher") {
            CipherCost& c = t.ciphers[name];
            if (field == "block_bytes") c.block_bytes = static_cast<int>(kv.get_i64(key));
            else if (field == "cycles_per_block") c.cycles_per_block = kv.get_f64(key);
            else if (field == "cpu_mbps") c.cpu_mbps = kv.get_f64(key);
            else raise(Errc::kBadConfig, "unknown key: " + key);
        } else if (head == "scheme") {
            SchemeCost& s = t.schemes[name];
            if (field == "verify_core_cycles") s.verify_core_cycles = kv.get_f64(key);
            else if (field == "sign_core_cycles") s.sign_core_cycles = kv.get_f64(key);
            else if (field == "sig_bytes") s.sig_bytes = static_cast<int>(kv.get_i64(key));
            else if (field == "cpu_verify_core_ms") s.cpu_verify_core_ms = kv.get_f64(key);
            else if (field == "cpu_sign_core_ms") s.cpu_sign_core_ms = kv.get_f64(key);
            else raise(Errc::kBadConfig, "unknown key: " + key);
        } else {
            raise(Errc::kBadConfig, "unknown key: " + key);
        }
    }
    return t;
}

CostTables CostTables::from_file(const std::string& path) {
    return from_kv(KvConfig::load_file(path));
}

const CipherCost& CostTables::cipher(const std::string& id) const {
    auto it = ciphers.find(lower(id));
    if (it == ciphers.end()) raise(Errc::kUnknownAlgorithm, "unknown cipher: " + id);
    return it->second;
}

const SchemeCost& CostTables::scheme(const std::string& id) const {
    auto it = schemes.find(lower(id));
    if (it == schemes.end()) raise(Errc::kUnknownAlgorithm, "unknown scheme: " + id);
    return it->second;
}

double CostTables::cipher_us_per_page(const std::string& id, const SsdConfig& cfg) const {
    const CipherCost& c = cipher(id);
    if (c.block_bytes <= 0 || c.cycles_per_block <= 0)
        raise(Errc::kBadConfig, "cipher cost table incomplete for " + id);
    long long blocks = ceil_div(cfg.page_bytes, c.block_bytes);
    long long per_lane = ceil_div(blocks, cfg.bce_lanes);
    return per_lane * c.cycles_per_block / cfg.engine_mhz;
}

double CostTables::hash_us(long long bytes, const SsdConfig& cfg) const {
    long long perms = ceil_div(bytes, static_cast<long long>(hash_rate_bytes));
    return perms * hash_cycles_per_perm / cfg.engine_mhz;
}

// ---------------------------------------------------------------------------
// Simulator: construction and geometry

SsdSim::SsdSim(const SsdConfig& cfg, const CostTables& costs, uint64_t seed)
    : cfg_(cfg), costs_(costs), seed_(seed) {
    cfg_.validate();
    long long blocks = cfg_.blocks_total();
    long long pages = cfg_.pages_total();
    ftl_.l2p.assign(static_cast<size_t>(cfg_.user_pages()), -1);
    ftl_.p2l.assign(static_cast<size_t>(pages), -1);
    ftl_.page_state.assign(static_cast<size_t>(pages), FtlState::kFree);
    ftl_.page_ciphertext.assign(static_cast<size_t>(pages), 0);
    ftl_.block_erase_count.assign(static_cast<size_t>(blocks), 0);
    ftl_.block_invalid_pages.assign(static_cast<size_t>(blocks), 0);
    ftl_.block_valid_pages.assign(static_cast<size_t>(blocks), 0);
    ftl_.free_pages = pages;
    ftl_.free_blocks = blocks;

    int planes = cfg_.channels * cfg_.dies_per_channel() * cfg_.planes_per_die;
    cursors_.assign(static_cast<size_t>(planes), PlaneCursor{});
    free_pool_.assign(static_cast<size_t>(planes), {});
    // Every plane starts with its full block stack, lowest ids on top.
    for (int p = planes - 1; p >= 0; --p) {
        auto& pool = free_pool_[static_cast<size_t>(p)];
        pool.reserve(static_cast<size_t>(cfg_.blocks_per_plane));
        for (int b = cfg_.blocks_per_plane - 1; b >= 0; --b)
            pool.push_back(static_cast<int32_t>(1LL * p * cfg_.blocks_per_plane + b));
    }
    channel_die_rr_.assign(static_cast<size_t>(cfg_.channels), 0);
}

long long SsdSim::block_id(int ch, int die, int plane, int blk) const {
    long long plane_index =
        (1LL * ch * cfg_.dies_per_channel() + die) * cfg_.planes_per_die + plane;
    return plane_index * cfg_.blocks_per_plane + blk;
}

int SsdSim::block_channel(long long blk_id) const {
    long long plane_index = blk_id / cfg_.blocks_per_plane;
    return static_cast<int>(plane_index / (cfg_.dies_per_channel() * cfg_.planes_per_die));
}

int SsdSim::block_die(long long blk_id) const {
    long long plane_index = blk_id / cfg_.blocks_per_plane;
    return static_cast<int>((plane_index / cfg_.planes_per_die) % cfg_.dies_per_channel());
}

int SsdSim::block_plane(long long blk_id) const {
    long long plane_index = blk_id / cfg_.blocks_per_plane;
    return static_cast<int>(plane_index % cfg_.planes_per_die);
}

double SsdSim::ftl_us(long long bytes) const {
    return cfg_.ftl_base_us * std::pow(bytes / 1024.0, cfg_.ftl_exponent);
}

// ---------------------------------------------------------------------------
// FTL bookkeeping

bool SsdSim::plane_refill(int ch, int die, int plane) {
    long long plane_index =
        (1LL * ch * cfg_.dies_per_channel() + die) * cfg_.planes_per_die + plane;
    auto& pool = free_pool_[static_cast<size_t>(plane_index)];
    auto& cur = cursors_[static_cast<size_t>(plane_index)];
    if (pool.empty()) return false;
    cur.active_block = pool.back();
    pool.pop_back();
    cur.next_page = 0;
    ftl_.free_blocks--;
    return true;
}

int32_t SsdSim::allocate_page(int ch, bool ciphertext, int32_t lba) {
    // Striping cursor: planes fill round-robin within the channel's current
    // die, then the next die takes over -- consecutive pages of one request
    // land on distinct planes and form one multi-plane group per die.
    int& k = channel_die_rr_[static_cast<size_t>(ch)];
    for (int attempts = 0; attempts < cfg_.dies_per_channel() * cfg_.planes_per_die;
         ++attempts) {
        int die = (k / cfg_.planes_per_die) % cfg_.dies_per_channel();
        int plane = k % cfg_.planes_per_die;
        long long plane_index =
            (1LL * ch * cfg_.dies_per_channel() + die) * cfg_.planes_per_die + plane;
        auto& cur = cursors_[static_cast<size_t>(plane_index)];
        if (cur.active_block < 0 || cur.next_page >= cfg_.pages_per_block) {
            if (!plane_refill(ch, die, plane)) {
                k++;  // plane exhausted, try the next one
                continue;
            }
        }
        int32_t phys =
            static_cast<int32_t>(1LL * cur.active_block * cfg_.pages_per_block + cur.next_page);
        cur.next_page++;
        k++;
        ftl_.free_pages--;
        ftl_.page_state[static_cast<size_t>(phys)] = FtlState::kValid;
        ftl_.page_ciphertext[static_cast<size_t>(phys)] = ciphertext ? 1 : 0;
        ftl_.p2l[static_cast<size_t>(phys)] = lba;
        ftl_.block_valid_pages[static_cast<size_t>(cur.active_block)]++;
        if (lba >= 0) {
            int32_t old = ftl_.l2p[static_cast<size_t>(lba)];
            if (old >= 0) invalidate(old);
            ftl_.l2p[static_cast<size_t>(lba)] = phys;
        }
        return phys;
    }
    return -1;
}

void SsdSim::invalidate(int32_t phys) {
    long long blk = phys / cfg_.pages_per_block;
    ftl_.page_state[static_cast<size_t>(phys)] = FtlState::kInvalid;
    ftl_.p2l[static_cast<size_t>(phys)] = -1;
    ftl_.block_valid_pages[static_cast<size_t>(blk)]--;
    ftl_.block_invalid_pages[static_cast<size_t>(blk)]++;
}

long long SsdSim::pick_gc_victim(bool need_valid) const {
    long long best = -1;
    int32_t best_invalid = 0;
    int32_t best_erase = 0;
    long long blocks = cfg_.blocks_total();
    for (long long b = 0; b < blocks; ++b) {
        int32_t inv = ftl_.block_invalid_pages[static_cast<size_t>(b)];
        if (inv <= 0) continue;
        if (need_valid && ftl_.block_valid_pages[static_cast<size_t>(b)] <= 0) continue;
        int32_t er = ftl_.block_erase_count[static_cast<size_t>(b)];
        if (best < 0 || inv > best_invalid || (inv == best_invalid && er < best_erase)) {
            best = b;
            best_invalid = inv;
            best_erase = er;
        }
    }
    return best;
}

// Moves up to `limit` valid pages off `victim` (all of them when limit < 0),
// re-encrypting under the active cipher when self-encryption is on.  State
// only; the caller charges time and emits events.  Returns pages moved.
long long SsdSim::relocate_block_pages(long long victim, long long limit, bool /*emit*/,
                                       double* /*wall_us*/, long long /*op_id*/) {
    int ch = block_channel(victim);
    bool fv_active = active_algo_ != "none";
    long long moved = 0;
    long long first = victim * cfg_.pages_per_block;
    for (int off = 0; off < cfg_.pages_per_block; ++off) {
        if (limit >= 0 && moved >= limit) break;
        int32_t phys = static_cast<int32_t>(first + off);
        if (ftl_.page_state[static_cast<size_t>(phys)] != FtlState::kValid) continue;
        int32_t lba = ftl_.p2l[static_cast<size_t>(phys)];
        bool cipher = fv_active || ftl_.page_ciphertext[static_cast<size_t>(phys)] != 0;
        // Clear the stale mapping first so allocate_page does not double-invalidate.
        ftl_.p2l[static_cast<size_t>(phys)] = -1;
        ftl_.page_state[static_cast<size_t>(phys)] = FtlState::kInvalid;
        ftl_.block_valid_pages[static_cast<size_t>(victim)]--;
        ftl_.block_invalid_pages[static_cast<size_t>(victim)]++;
        if (lba >= 0) ftl_.l2p[static_cast<size_t>(lba)] = -1;
        int32_t fresh = allocate_page(ch, cipher, lba);
        if (fresh < 0) raise(Errc::kOutOfSpace, "no free page for relocation");
        moved++;
    }
    return moved;
}

void SsdSim::state_only_gc() {
    long long victim = pick_gc_victim(false);
    if (victim < 0) return;
    if (ftl_.block_valid_pages[static_cast<size_t>(victim)] > 0)
        ftl_.gc_relocations += relocate_block_pages(victim, -1, false, nullptr, -1);
    // Erase: return the block to its plane's pool.
    long long first = victim * cfg_.pages_per_block;
    for (int off = 0; off < cfg_.pages_per_block; ++off) {
        ftl_.page_state[static_cast<size_t>(first + off)] = FtlState::kFree;
        ftl_.page_ciphertext[static_cast<size_t>(first + off)] = 0;
        ftl_.p2l[static_cast<size_t>(first + off)] = -1;
    }
    ftl_.block_invalid_pages[static_cast<size_t>(victim)] = 0;
    ftl_.block_valid_pages[static_cast<size_t>(victim)] = 0;
    ftl_.block_erase_count[static_cast<size_t>(victim)]++;
    ftl_.free_pages += cfg_.pages_per_block;
    ftl_.free_blocks++;
    ftl_.gc_erases++;
    free_pool_[static_cast<size_t>(victim / cfg_.blocks_per_plane)].push_back(
        static_cast<int32_t>(victim));
}

void SsdSim::emit(double t, std::string resource, std::string action, double dur,
                  long long op_id) {
    trace_.push_back(Event{t, std::move(resource), std::move(action), dur, op_id});
}

// ---------------------------------------------------------------------------
// GC and wear leveling

long long SsdSim::gc_step() {
    long long op_id = next_op_id_++;
    long long victim = pick_gc_victim(false);
    if (victim < 0) return 0;
    std::string die_res = "ch" + std::to_string(block_channel(victim)) + ".die" +
                          std::to_string(block_die(victim));
    long long valid = ftl_.block_valid_pages[static_cast<size_t>(victim)];
    if (valid == 0) {
        // Fast reclaim: the block is pure garbage.
        emit(clock_us_, die_res, "erase", cfg_.t_erase_us, op_id);
        long long first = victim * cfg_.pages_per_block;
        for (int off = 0; off < cfg_.pages_per_block; ++off) {
            ftl_.page_state[static_cast<size_t>(first + off)] = FtlState::kFree;
            ftl_.page_ciphertext[static_cast<size_t>(first + off)] = 0;
            ftl_.p2l[static_cast<size_t>(first + off)] = -1;
        }
        ftl_.block_invalid_pages[static_cast<size_t>(victim)] = 0;
        ftl_.block_erase_count[static_cast<size_t>(victim)]++;
        ftl_.free_pages += cfg_.pages_per_block;
        ftl_.free_blocks++;
        ftl_.gc_erases++;
        free_pool_[static_cast<size_t>(victim / cfg_.blocks_per_plane)].push_back(
            static_cast<int32_t>(victim));
        clock_us_ += cfg_.t_erase_us;
        return 0;
    }
    // Page-serial relocation: read, pass through the engine when
    // self-encryption is on (hidden under the NAND windows), program.
    bool fv_active = active_algo_ != "none";
    double c_us = fv_active ? costs_.cipher_us_per_page(active_algo_, cfg_) : 0.0;
    double t = clock_us_;
    long long moved = relocate_block_pages(victim, -1, true, nullptr, op_id);
    for (long long i = 0; i < moved; ++i) {
        emit(t, die_res, "sense", cfg_.t_r_us, op_id);
        if (fv_active) emit(t + cfg_.t_r_us, die_res + ".engine0", "encrypt", c_us, op_id);
        emit(t + cfg_.t_r_us, die_res, "program", cfg_.t_prog_us, op_id);
        t += cfg_.t_r_us + cfg_.t_prog_us;
    }
    ftl_.gc_relocations += moved;
    clock_us_ += moved * (cfg_.t_r_us + cfg_.t_prog_us);
    // The victim is now fully invalid; a later pass reclaims it in tERASE.
    return moved;
}

long long SsdSim::wear_level_step() {
    long long op_id = next_op_id_++;
    long long blocks = cfg_.blocks_total();
    int32_t min_e = ftl_.block_erase_count[0], max_e = ftl_.block_erase_count[0];
    for (long long b = 1; b < blocks; ++b) {
        min_e = std::min(min_e, ftl_.block_erase_count[static_cast<size_t>(b)]);
        max_e = std::max(max_e, ftl_.block_erase_count[static_cast<size_t>(b)]);
    }
    if (max_e - min_e <= cfg_.wl_spread_threshold) return 0;
    // Coldest block holding data: static data parks on low-erase blocks, so
    // migrating it off rejoins the block to the hot allocation pool.
    long long cold = -1;
    int32_t cold_e = 0;
    for (long long b = 0; b < blocks; ++b) {
        if (ftl_.block_valid_pages[static_cast<size_t>(b)] <= 0) continue;
        int32_t er = ftl_.block_erase_count[static_cast<size_t>(b)];
        if (cold < 0 || er < cold_e) {
            cold = b;
            cold_e = er;
        }
    }
    if (cold < 0) return 0;
    std::string die_res =
        "ch" + std::to_string(block_channel(cold)) + ".die" + std::to_string(block_die(cold));
    double t = clock_us_;
    long long moved = relocate_block_pages(cold, -1, true, nullptr, op_id);
    for (long long i = 0; i < moved; ++i) {
        emit(t, die_res, "sense", cfg_.t_r_us, op_id);
        emit(t + cfg_.t_r_us, die_res, "program", cfg_.t_prog_us, op_id);
        t += cfg_.t_r_us + cfg_.t_prog_us;
    }
    emit(t, die_res, "erase", cfg_.t_erase_us, op_id);
    long long first = cold * cfg_.pages_per_block;
    for (int off = 0; off < cfg_.pages_per_block; ++off) {
        ftl_.page_state[static_cast<size_t>(first + off)] = FtlState::kFree;
        ftl_.page_ciphertext[static_cast<size_t>(first + off)] = 0;
        ftl_.p2l[static_cast<size_t>(first + off)] = -1;
    }
    ftl_.block_invalid_pages[static_cast<size_t>(cold)] = 0;
    ftl_.block_valid_pages[static_cast<size_t>(cold)] = 0;
    ftl_.block_erase_count[static_cast<size_t>(cold)]++;
    ftl_.free_pages += cfg_.pages_per_block;
    ftl_.free_blocks++;
    free_pool_[static_cast<size_t>(cold / cfg_.blocks_per_plane)].push_back(
        static_cast<int32_t>(cold));
    ftl_.wl_relocations += moved;
    clock_us_ += moved * (cfg_.t_r_us + cfg_.t_prog_us) + cfg_.t_erase_us;
    return moved;
}

// ---------------------------------------------------------------------------
// Steady state

void SsdSim::make_steady_state(double fill_fraction, long long overwrite_ops, uint64_t seed) {
    if (!(fill_fraction > 0.0 && fill_fraction < 1.0))
        raise(Errc::kBadConfig, "fill_fraction must lie in (0, 1)");
    std::mt19937_64 rng(seed);
    bool cipher = active_algo_ != "none";
    long long target = static_cast<long long>(fill_fraction * cfg_.user_pages());
    for (long long lba = 0; lba < target; ++lba) {
        int ch = static_cast<int>(lba % cfg_.channels);
        if (allocate_page(ch, cipher, static_cast<int32_t>(lba)) < 0) {
            state_only_gc();
            if (allocate_page(ch, cipher, static_cast<int32_t>(lba)) < 0)
                raise(Errc::kOutOfSpace, "fill exceeded drive capacity");
        }
    }
    double floor_frac = std::max(0.01, cfg_.gc_free_threshold * 0.4);
    for (long long i = 0; i < overwrite_ops; ++i) {
        long long lba = target > 0 ? static_cast<long long>(rng() % target) : 0;
        int ch = static_cast<int>(lba % cfg_.channels);
        while (static_cast<double>(ftl_.free_blocks) < floor_frac * cfg_.blocks_total())
            state_only_gc();
        if (allocate_page(ch, cipher, static_cast<int32_t>(lba)) < 0) {
            state_only_gc();
            if (allocate_page(ch, cipher, static_cast<int32_t>(lba)) < 0)
                raise(Errc::kOutOfSpace, "overwrite exceeded drive capacity");
        }
    }
    steady_mode_ = true;
}

double SsdSim::steady_burst(int op_pages, int lead_ch, long long op_id) {
    double free_frac = static_cast<double>(ftl_.free_blocks) / cfg_.blocks_total();
    if (free_frac >= cfg_.steady_free_threshold) return 0.0;
    long long victim = pick_gc_victim(true);
    if (victim < 0) return 0.0;
    (void)lead_ch;
    int r = op_pages < cfg_.steady_small_op_pages ? cfg_.steady_burst_small_pages
                                                  : cfg_.steady_burst_large_pages;
    long long moved = relocate_block_pages(victim, r, false, nullptr, op_id);
    if (moved == 0) return 0.0;
    ftl_.gc_relocations += moved;
    long long groups = ceil_div(moved, cfg_.gc_group_pages);
    double erase_amortized = moved * (cfg_.t_erase_us / cfg_.pages_per_block);
    double wall = cfg_.t_r_us + groups * cfg_.t_prog_us + erase_amortized;
    std::string die_res = "ch" + std::to_string(block_channel(victim)) + ".die" +
                          std::to_string(block_die(victim));
    double t = clock_us_;
    emit(t, die_res, "gc.sense", cfg_.t_r_us, op_id);
    bool fv_active = active_algo_ != "none";
    double c_us = fv_active ? costs_.cipher_us_per_page(active_algo_, cfg_) : 0.0;
    for (long long g = 0; g < groups; ++g) {
        if (fv_active)
            emit(t + cfg_.t_r_us, die_res + ".engine1", "gc.encrypt", c_us, op_id);
        emit(t + cfg_.t_r_us, die_res, "gc.program", cfg_.t_prog_us, op_id);
        t += cfg_.t_prog_us;
    }
    if (ftl_.block_valid_pages[static_cast<size_t>(victim)] == 0) {
        // Reclaim now; the erase latency is the amortized term above.
        long long first = victim * cfg_.pages_per_block;
        for (int off = 0; off < cfg_.pages_per_block; ++off) {
            ftl_.page_state[static_cast<size_t>(first + off)] = FtlState::kFree;
            ftl_.page_ciphertext[static_cast<size_t>(first + off)] = 0;
            ftl_.p2l[static_cast<size_t>(first + off)] = -1;
        }
        ftl_.block_invalid_pages[static_cast<size_t>(victim)] = 0;
        ftl_.block_erase_count[static_cast<size_t>(victim)]++;
        ftl_.free_pages += cfg_.pages_per_block;
        ftl_.free_blocks++;
        ftl_.gc_erases++;
        free_pool_[static_cast<size_t>(victim / cfg_.blocks_per_plane)].push_back(
            static_cast<int32_t>(victim));
    }
    return wall;
}

// ---------------------------------------------------------------------------
// I/O path

double SsdSim::reconfigure_algorithm(const std::string& algo_id) {
    std::string id = lower(algo_id);
    if (id != "none") costs_.cipher(id);  // validates; raises kUnknownAlgorithm
    active_algo_ = id;
    emit(clock_us_, "ctrl.fsm", "reconfigure", cfg_.reconfig_us, next_op_id_++);
    clock_us_ += cfg_.reconfig_us;
    return cfg_.reconfig_us;
}

LatencyBreakdown SsdSim::submit_io(const IoRequest& req) {
    if (req.bytes <= 0) raise(Errc::kEmptyInput, "request transfers zero bytes");
    long long pages = ceil_div(req.bytes, cfg_.page_bytes);
    if (req.lba < 0 || req.lba + pages > cfg_.user_pages())
        raise(Errc::kBoundViolation, "request exceeds the LBA space");
    std::string crypto = lower(req.crypto.empty() ? "none" : req.crypto);
    if (crypto != "none") costs_.cipher(crypto);  // validate before mutating

    long long op_id = next_op_id_++;
    size_t trace_mark = trace_.size();

    // Microprogram switch when the request's cipher differs from the active one.
    double pre_crypto = 0;
    if (crypto != "none" && crypto != active_algo_) {
        active_algo_ = crypto;
        emit(clock_us_, "ctrl.fsm", "reconfigure", cfg_.reconfig_us, op_id);
        pre_crypto = cfg_.reconfig_us;
    }

    IoRequest r = req;
    r.crypto = crypto;
    LatencyBreakdown out = (req.op == IoOp::kRead) ? do_read(r, op_id, pre_crypto)
                                                   : do_program(r, op_id, pre_crypto);
    out.total_us = out.sum();
    clock_us_ += out.total_us;
    std::stable_sort(trace_.begin() + static_cast<long>(trace_mark), trace_.end(),
                     [](const Event& a, const Event& e) { return a.t_us < e.t_us; });
    return out;
}

std::vector<LatencyBreakdown> SsdSim::run_scenario_batch(const std::vector<IoRequest>& reqs) {
    std::vector<LatencyBreakdown> out;
    out.reserve(reqs.size());
    for (const auto& r : reqs) out.push_back(submit_io(r));
    return out;
}

LatencyBreakdown SsdSim::do_program(const IoRequest& req, long long op_id,
                                    double pre_crypto_us) {
    LatencyBreakdown b;
    b.stack_us = cfg_.stack_us;
    b.ftl_us = ftl_us(req.bytes);
    b.crypto_us += pre_crypto_us;
    long long pages = ceil_div(req.bytes, cfg_.page_bytes);
    bool encrypted = req.crypto != "none";
    double c_us = encrypted ? costs_.cipher_us_per_page(req.crypto, cfg_) : 0.0;
    double bus = cfg_.bus_us_per_page();

    // Background work ahead of the op: steady-state burst, then real GC if
    // the free pool sits under the trigger.
    if (steady_mode_) b.nand_us += steady_burst(static_cast<int>(pages), 0, op_id);
    if (static_cast<double>(ftl_.free_blocks) <
        cfg_.gc_free_threshold * cfg_.blocks_total()) {
        double t0 = clock_us_;
        gc_step();
        b.nand_us += clock_us_ - t0;
        clock_us_ = t0;  // the wall charge flows through this breakdown instead
    }

    // Allocate pages round-robin across channels.
    last_pages_.clear();
    std::vector<std::vector<int32_t>> per_channel(static_cast<size_t>(cfg_.channels));
    for (long long k = 0; k < pages; ++k) {
        int ch = static_cast<int>(k % cfg_.channels);
        int32_t phys = allocate_page(ch, encrypted, static_cast<int32_t>(req.lba + k));
        if (phys < 0) {
            double t0 = clock_us_;
            long long moved = gc_step();
            b.nand_us += clock_us_ - t0;
            clock_us_ = t0;
            phys = allocate_page(ch, encrypted, static_cast<int32_t>(req.lba + k));
            if (phys < 0 && moved == 0) raise(Errc::kOutOfSpace, "drive is full");
            if (phys < 0) raise(Errc::kOutOfSpace, "drive is full after GC");
        }
        per_channel[static_cast<size_t>(ch)].push_back(phys);
        last_pages_.push_back(phys);
    }

    // Placement prefix.
    double prefix = 0;
    if (req.placement == Placement::kNcp && encrypted) {
        b.dram_us += cfg_.ncp_fixed_us;
        if (req.bytes > cfg_.ncp_sram_bytes)
            b.dram_us += ceil_div(req.bytes, 4096) * cfg_.ncp_dram_roundtrip_us;
        emit(clock_us_, "ctrl.dram", "stage", b.dram_us, op_id);
        prefix = b.dram_us;
    } else if (req.placement == Placement::kCpu && encrypted) {
        double sw = req.bytes / costs_.cipher(req.crypto).cpu_mbps;
        double link = req.bytes / cfg_.cpu_host_link_mbps;
        emit(clock_us_, "host.cpu", "encrypt", sw, op_id);
        emit(clock_us_ + sw, "host.link", "xfer", link, op_id);
        b.crypto_us += sw;
        b.bus_us += link;
        prefix = sw + link;
    }

    // Channel streams.  Slot cost: engines pace enciphered streams for FV
    // (die periphery) and NCP (controller); CPU data arrives pre-encrypted.
    double slot = (encrypted && req.placement != Placement::kCpu) ? std::max(bus, c_us) : bus;
    double wall_max = 0;
    int crit_groups = 0;
    long long crit_pages = 0;
    for (int ch = 0; ch < cfg_.channels; ++ch) {
        const auto& list = per_channel[static_cast<size_t>(ch)];
        if (list.empty()) continue;
        double t = clock_us_ + b.stack_us + b.ftl_us + b.nand_us + prefix;
        std::string chres = "ch" + std::to_string(ch);
        int groups = 1;
        long long prev_die = block_die(list[0] / cfg_.pages_per_block);
        double group_start = t;
        double wall = 0;
        for (size_t i = 0; i < list.size(); ++i) {
            long long blk = list[i] / cfg_.pages_per_block;
            long long die = block_die(blk);
            if (die != prev_die) {
                emit(group_start, chres + ".die" + std::to_string(prev_die), "program",
                     cfg_.t_prog_us, op_id);
                groups++;
                prev_die = die;
                if (cfg_.double_buffering) {
                    wall += cfg_.t_pcbsy_us;
                    t += cfg_.t_pcbsy_us;
                }
                group_start = t;
            }
            emit(t, chres + ".bus", "xfer", bus, op_id);
            if (encrypted && req.placement == Placement::kFv)
                emit(t, chres + ".die" + std::to_string(die) + ".engine" +
                            std::to_string(i % static_cast<size_t>(cfg_.engines_per_die)),
                     "encrypt", c_us, op_id);
            else if (encrypted && req.placement == Placement::kNcp)
                emit(t, "ctrl.engine" +
                            std::to_string(i % static_cast<size_t>(cfg_.engines_per_die)),
                     "encrypt", c_us, op_id);
            wall += slot;
            t += slot;
            if (!cfg_.double_buffering) {
                emit(t, chres + ".die" + std::to_string(die), "program", cfg_.t_prog_us,
                     op_id);
                wall += cfg_.t_prog_us;
                t += cfg_.t_prog_us;
                group_start = t;
            }
        }
        if (cfg_.double_buffering) {
            emit(group_start, chres + ".die" + std::to_string(prev_die), "program",
                 cfg_.t_prog_us, op_id);
            wall += cfg_.t_prog_us;
        }
        if (wall > wall_max) {
            wall_max = wall;
            crit_groups = groups;
            crit_pages = static_cast<long long>(list.size());
        }
    }
    // Attribute the critical channel; everything else is overlap credit.
    if (crit_pages > 0) {
        b.bus_us += crit_pages * bus;
        b.crypto_us += crit_pages * (slot - bus);
        if (cfg_.double_buffering) {
            b.nand_us += cfg_.t_prog_us + (crit_groups - 1) * cfg_.t_pcbsy_us;
        } else {
            b.nand_us += crit_pages * cfg_.t_prog_us;
        }
    }
    b.total_us = b.sum();
    return b;
}

LatencyBreakdown SsdSim::do_read(const IoRequest& req, long long op_id,
                                 double pre_crypto_us) {
    LatencyBreakdown b;
    b.stack_us = cfg_.stack_us;
    b.ftl_us = ftl_us(req.bytes);
    b.crypto_us += pre_crypto_us;
    long long pages = ceil_div(req.bytes, cfg_.page_bytes);
    bool encrypted = req.crypto != "none";
    double c_us = encrypted ? costs_.cipher_us_per_page(req.crypto, cfg_) : 0.0;
    double bus = cfg_.bus_us_per_page();

    if (steady_mode_) b.nand_us += steady_burst(static_cast<int>(pages), 0, op_id);

    last_pages_.clear();
    std::vector<std::vector<int32_t>> per_channel(static_cast<size_t>(cfg_.channels));
    for (long long k = 0; k < pages; ++k) {
        int32_t phys = ftl_.l2p[static_cast<size_t>(req.lba + k)];
        if (phys < 0)
            raise(Errc::kUnmappedAddress,
                  "read of unmapped LBA " + std::to_string(req.lba + k));
        int ch = block_channel(phys / cfg_.pages_per_block);
        per_channel[static_cast<size_t>(ch)].push_back(phys);
        last_pages_.push_back(phys);
    }

    // FV decrypts at the die; NCP and CPU move ciphertext at plain bus rate
    // and decrypt after the NAND phase.
    double slot = (encrypted && req.placement == Placement::kFv) ? std::max(bus, c_us) : bus;
    double wall_max = 0;
    int crit_groups = 0;
    long long crit_pages = 0;
    for (int ch = 0; ch < cfg_.channels; ++ch) {
        const auto& list = per_channel[static_cast<size_t>(ch)];
        if (list.empty()) continue;
        double t = clock_us_ + b.stack_us + b.ftl_us + b.nand_us;
        std::string chres = "ch" + std::to_string(ch);
        double wall = 0;
        int groups = 1;
        long long prev_die = block_die(list[0] / cfg_.pages_per_block);
        if (cfg_.double_buffering) {
            // All dies of the channel sense concurrently; later senses hide
            // under streaming.
            emit(t, chres + ".die" + std::to_string(prev_die), "sense", cfg_.t_r_us, op_id);
            emit(t + cfg_.t_r_us, chres + ".die" + std::to_string(prev_die), "ecc",
                 cfg_.ldpc_decode_us, op_id);
            wall += cfg_.t_r_us + cfg_.ldpc_decode_us;
            t += cfg_.t_r_us + cfg_.ldpc_decode_us;
        }
        for (size_t i = 0; i < list.size(); ++i) {
            long long blk = list[i] / cfg_.pages_per_block;
            long long die = block_die(blk);
            if (die != prev_die) {
                groups++;
                prev_die = die;
                if (cfg_.double_buffering) {
                    wall += cfg_.t_rcbsy_us;
                    t += cfg_.t_rcbsy_us;
                }
            }
            if (!cfg_.double_buffering) {
                emit(t, chres + ".die" + std::to_string(die), "sense", cfg_.t_r_us, op_id);
                emit(t + cfg_.t_r_us, chres + ".die" + std::to_string(die), "ecc",
                     cfg_.ldpc_decode_us, op_id);
                wall += cfg_.t_r_us + cfg_.ldpc_decode_us;
                t += cfg_.t_r_us + cfg_.ldpc_decode_us;
            }
            emit(t, chres + ".bus", "xfer", bus, op_id);
            if (encrypted && req.placement == Placement::kFv)
                emit(t, chres + ".die" + std::to_string(die) + ".engine" +
                            std::to_string(i % static_cast<size_t>(cfg_.engines_per_die)),
                     "decrypt", c_us, op_id);
            wall += slot;
            t += slot;
        }
        if (wall > wall_max) {
            wall_max = wall;
            crit_groups = groups;
            crit_pages = static_cast<long long>(list.size());
        }
    }
    if (crit_pages > 0) {
        b.bus_us += crit_pages * bus;
        b.crypto_us += crit_pages * (slot - bus);
        if (cfg_.double_buffering) {
            b.nand_us += cfg_.t_r_us + cfg_.ldpc_decode_us + (crit_groups - 1) * cfg_.t_rcbsy_us;
        } else {
            b.nand_us += crit_pages * (cfg_.t_r_us + cfg_.ldpc_decode_us);
        }
    }

    // Placement suffix: decrypt away from the die.
    if (encrypted && req.placement == Placement::kNcp) {
        double stage = cfg_.ncp_fixed_us;
        if (req.bytes > cfg_.ncp_sram_bytes)
            stage += ceil_div(req.bytes, 4096) * cfg_.ncp_dram_roundtrip_us;
        emit(clock_us_ + b.sum(), "ctrl.dram", "stage", stage, op_id);
        b.dram_us += stage;
        // Controller engines decrypt the staged stream, one pacer per channel.
        long long heaviest = 0;
        for (const auto& list : per_channel)
            heaviest = std::max(heaviest, static_cast<long long>(list.size()));
        double dec = heaviest * c_us;
        emit(clock_us_ + b.sum() + stage, "ctrl.engine0", "decrypt", dec, op_id);
        b.crypto_us += dec;
    } else if (encrypted && req.placement == Placement::kCpu) {
        double link = req.bytes / cfg_.cpu_host_link_mbps;
        double sw = req.bytes / costs_.cipher(req.crypto).cpu_mbps;
        emit(clock_us_ + b.sum(), "host.link", "xfer", link, op_id);
        emit(clock_us_ + b.sum() + link, "host.cpu", "decrypt", sw, op_id);
        b.bus_us += link;
        b.crypto_us += sw;
    }
    b.total_us = b.sum();
    return b;
}

// ---------------------------------------------------------------------------
// Audits

bool SsdSim::audit_map_injective() const {
    std::vector<uint8_t> seen(ftl_.p2l.size(), 0);
    for (size_t lba = 0; lba < ftl_.l2p.size(); ++lba) {
        int32_t phys = ftl_.l2p[lba];
        if (phys < 0) continue;
        if (static_cast<size_t>(phys) >= ftl_.p2l.size()) return false;
        if (seen[static_cast<size_t>(phys)]) return false;
        seen[static_cast<size_t>(phys)] = 1;
        if (ftl_.p2l[static_cast<size_t>(phys)] != static_cast<int32_t>(lba)) return false;
        if (ftl_.page_state[static_cast<size_t>(phys)] != FtlState::kValid) return false;
    }
    return true;
}

bool SsdSim::audit_page_conservation() const {
    long long free_count = 0, valid = 0, invalid = 0;
    for (uint8_t s : ftl_.page_state) {
        if (s == FtlState::kFree) free_count++;
        else if (s == FtlState::kValid) valid++;
        else invalid++;
    }
    if (free_count != ftl_.free_pages) return false;
    long long bv = 0, bi = 0;
    for (size_t b = 0; b < ftl_.block_valid_pages.size(); ++b) {
        bv += ftl_.block_valid_pages[b];
        bi += ftl_.block_invalid_pages[b];
    }
    return free_count + valid + invalid == cfg_.pages_total() && bv == valid && bi == invalid;
}

bool SsdSim::audit_all_ciphertext() const {
    for (size_t p = 0; p < ftl_.page_state.size(); ++p)
        if (ftl_.page_state[p] == FtlState::kValid && !ftl_.page_ciphertext[p]) return false;
    return true;
}

}  // namespace fv
