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

/// @file ssd.hpp
/// @brief Deterministic discrete-event SSD latency model with an FTL,
///        GC/WL background behaviour, and three crypto placements.
///
/// The simulator models a 4-channel NAND subsystem (geometry and timing
/// from ssd.conf) and charges cryptographic work according to where the
/// engines sit:
///
///   - FV:  engines at the die periphery.  Encrypted transfers stream over
///          the channel at engine line rate, so a page slot on the channel
///          costs max(bus, crypto) and nothing else moves.
///   - NCP: engines beside the controller.  Data additionally stages
///          through controller DRAM (one round trip per 4 KB unit,
///          serialized on the DRAM port); small transfers fit the
///          controller SRAM and skip the staging cost.
///   - CPU: software crypto on the host.  Cipher throughput comes from a
///          calibration table; the data also crosses the host link.
///
/// One SsdSim instance is a single logical timeline.  All randomness is
/// seeded, so identical (config, seed, workload) produce identical event
/// traces -- that determinism is a contract, not an accident.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fv/config.hpp"

namespace fv {

enum class Placement { kCpu, kNcp, kFv };
enum class IoOp { kRead, kProgram };

/// Parses "cpu" / "ncp" / "fv" (case-insensitive).  Raises kBadConfig.
Placement placement_from_string(const std::string& s);
std::string to_string(Placement p);

// ---------------------------------------------------------------------------
// Configuration

/// Geometry, NAND timing and placement-architecture knobs.  Defaults mirror
/// the simulated drive: 4 channels x 4 packages x 2 dies x 4 planes x
/// 682 blocks x 128 pages x 4 KB, NV-DDR3 1600 MT/s 8-bit, tR 45 us,
/// tPROG 400 us, tERASE 2 ms, 5 us storage stack, engines at 200 MHz.
struct SsdConfig {
    int channels = 4;
    int packages_per_channel = 4;
    int dies_per_package = 2;
    int planes_per_die = 4;
    int blocks_per_plane = 682;
    int pages_per_block = 128;
    int page_bytes = 4096;

    double bus_mt_per_s = 1600.0;  ///< NV-DDR3 transfer rate
    int bus_bits = 8;              ///< bus width
    double t_r_us = 45.0;
    double t_prog_us = 400.0;
    double t_erase_us = 2000.0;
    double t_pcbsy_us = 3.0;  ///< cache-program busy gap between die groups
    double t_rcbsy_us = 3.0;  ///< cache-read busy gap between die groups
    double stack_us = 5.0;    ///< host storage-stack latency per request

    // FTL lookup cost, sub-linear in request size: base * (KiB ^ exponent).
    double ftl_base_us = 4.6;
    double ftl_exponent = 0.35;

    double engine_mhz = 200.0;
    int engines_per_die = 2;
    int bce_lanes = 32;  ///< parallel block-cipher lanes per engine
    int hash_alus = 8;
    int acalus = 2;

    double ldpc_decode_us = 2.0;  ///< in-die ECC pipeline latency per page
    double reconfig_us = 10.0;    ///< FSM microprogram switch cost
    bool double_buffering = true;

    double gc_free_threshold = 0.05;  ///< GC when free blocks drop below this
    int gc_group_pages = 2;           ///< relocation multi-plane group width
    int wl_spread_threshold = 8;      ///< erase-count spread triggering WL

    // Steady-state interference: each foreground op pays one background
    // relocation burst on its lead die.  Small synchronous ops land in the
    // nearly-full active block and wait out a deeper burst; large striped
    // ops overlap most of it with their own multi-channel pipeline.
    int steady_small_op_pages = 8;
    int steady_burst_small_pages = 4;
    int steady_burst_large_pages = 2;
    double steady_free_threshold = 0.10;

    double reserve_fraction = 0.03;  ///< overprovisioned block fraction

    // NCP placement: controller DRAM staging.
    double ncp_dram_roundtrip_us = 6.0;  ///< per 4 KB crypto unit
    int ncp_sram_bytes = 49152;          ///< transfers at or below skip DRAM
    double ncp_fixed_us = 1.5;           ///< staging handshake per request
    double ncp_core_slowdown = 0.004;    ///< ACE core DRAM-stall factor

    // CPU placement: host link between DRAM and the device.
    double cpu_host_link_mbps = 3277.0;

    // Secure-boot code region: the first-stage loader senses these pages
    // serially from one die, transfers pipelining under the next sense.
    int boot_code_pages = 1800;

    double bus_us_per_page() const;
    int dies_per_channel() const { return packages_per_channel * dies_per_package; }
    long long blocks_total() const;
    long long pages_total() const;
    long long user_pages() const;  ///< LBA space after overprovision reserve

    void validate() const;  ///< raises kBadConfig on nonsense

    static SsdConfig from_kv(const KvConfig& kv);
    static SsdConfig from_file(const std::string& path);
};

/// Per-cipher engine and host-calibration costs.
struct CipherCost {
    int block_bytes = 16;
    double cycles_per_block = 0;  ///< engine cycles, one block, one lane
    double cpu_mbps = 0;          ///< host software throughput
};

/// Signature-scheme costs (verification/signing cores, host calibration).
struct SchemeCost {
    double verify_core_cycles = 0;
    double sign_core_cycles = 0;
    int sig_bytes = 0;
    double cpu_verify_core_ms = 0;
    double cpu_sign_core_ms = 0;
};

/// Cost tables for the seven block ciphers and five signature schemes.
/// defaults() matches data/cycles.conf; the file exists so deployments can
/// recalibrate without a rebuild.
struct CostTables {
    std::map<std::string, CipherCost> ciphers;
    std::map<std::string, SchemeCost> schemes;

    double hash_rate_bytes = 136.0;      ///< sponge rate (SHAKE256)
    double hash_cycles_per_perm = 24.0;  ///< engine cycles per permutation
    double cpu_hash_mbps = 500.0;        ///< host software hash throughput

    static CostTables defaults();
    static CostTables from_kv(const KvConfig& kv);
    static CostTables from_file(const std::string& path);

    const CipherCost& cipher(const std::string& id) const;  ///< kUnknownAlgorithm
    const SchemeCost& scheme(const std::string& id) const;  ///< kUnknownAlgorithm

    /// Engine time to cipher one page with all lanes of one engine busy.
    double cipher_us_per_page(const std::string& id, const SsdConfig& cfg) const;
    /// Engine time to absorb `bytes` into the hash sponge (single lane).
    double hash_us(long long bytes, const SsdConfig& cfg) const;
};

// ---------------------------------------------------------------------------
// Requests, results, trace

struct IoRequest {
    IoOp op = IoOp::kRead;
    long long lba = 0;    ///< logical page address (page_bytes units)
    long long bytes = 0;  ///< must be > 0
    std::string crypto;   ///< cipher id or "none"
    Placement placement = Placement::kFv;
};

/// Critical-path latency attribution.  Components sum to total exactly;
/// work hidden by pipelining (overlapped senses, programs and engine time)
/// contributes zero -- that difference is the overlap credit.
struct LatencyBreakdown {
    double stack_us = 0;
    double ftl_us = 0;
    double nand_us = 0;  ///< sense/program/erase/ECC time on the path
    double bus_us = 0;   ///< channel and host-link transfer time
    double dram_us = 0;  ///< controller DRAM staging (NCP)
    double crypto_us = 0;
    double total_us = 0;

    double sum() const { return stack_us + ftl_us + nand_us + bus_us + dram_us + crypto_us; }
};

struct Event {
    double t_us = 0;       ///< start time on the simulator clock
    std::string resource;  ///< e.g. "ch2.die1", "ch0.bus", "ctrl.dram"
    std::string action;    ///< e.g. "sense", "xfer", "encrypt", "program"
    double duration_us = 0;
    long long op_id = 0;
};

// ---------------------------------------------------------------------------
// FTL

/// Flash translation layer state: mapping tables, free pool, per-block
/// bookkeeping.  Invariants (checked by the audit hooks): the live part of
/// the map is injective, and free + valid + invalid page counts conserve
/// the raw capacity.
struct FtlState {
    enum PageState : uint8_t { kFree = 0, kValid = 1, kInvalid = 2 };

    std::vector<int32_t> l2p;         ///< user LBA -> physical page, -1 unmapped
    std::vector<int32_t> p2l;         ///< physical page -> LBA, -1 none
    std::vector<uint8_t> page_state;  ///< PageState per physical page
    std::vector<uint8_t> page_ciphertext;  ///< 1 if resident data is encrypted

    std::vector<int32_t> block_erase_count;
    std::vector<int32_t> block_invalid_pages;
    std::vector<int32_t> block_valid_pages;

    long long free_pages = 0;
    long long free_blocks = 0;

    long long gc_relocations = 0;
    long long gc_erases = 0;
    long long wl_relocations = 0;
};

// ---------------------------------------------------------------------------
// Simulator

class SsdSim {
  public:
    SsdSim(const SsdConfig& cfg, const CostTables& costs, uint64_t seed);

    /// Runs one request to completion and returns its latency breakdown.
    /// A program that finds the free pool under the GC threshold runs
    /// garbage collection first and fails with kOutOfSpace only if the
    /// drive is still full afterwards.  Reads of unmapped LBAs raise
    /// kUnmappedAddress.  A request whose cipher differs from the active
    /// microprogram reconfigures implicitly (latency charged once).
    LatencyBreakdown submit_io(const IoRequest& req);

    /// Runs requests back to back on the shared timeline.
    std::vector<LatencyBreakdown> run_scenario_batch(const std::vector<IoRequest>& reqs);

    /// Fills the drive to fill_fraction of the LBA space with dummy data,
    /// then overwrites random locations until the layout fragments and the
    /// free pool sits near the GC trigger.  Bookkeeping only -- no events.
    /// Afterwards foreground ops pay relocation bursts (steady state).
    void make_steady_state(double fill_fraction, long long overwrite_ops, uint64_t seed);

    /// Switches the active cipher microprogram.  The fixed FSM latency is
    /// charged every call, including reconfiguring to the same algorithm.
    /// Unknown ids raise kUnknownAlgorithm and leave the state unchanged.
    double reconfigure_algorithm(const std::string& algo_id);

    /// One greedy GC pass: victim = most invalid pages, ties broken by
    /// lowest erase count.  A fully invalid victim is erased in tERASE with
    /// zero relocations; otherwise the valid pages move (page-serial
    /// read+program, re-encrypted under the active cipher when
    /// self-encryption is on) and the emptied victim waits for a later
    /// pass.  Returns the relocated page count.
    long long gc_step();

    /// Static wear leveling: when the erase-count spread exceeds the
    /// threshold, the coldest block's valid pages migrate and the block is
    /// erased.  No-op (returns 0) below the threshold.
    long long wear_level_step();

    const std::vector<Event>& trace() const { return trace_; }
    void clear_trace() { trace_.clear(); }

    const FtlState& ftl() const { return ftl_; }
    const SsdConfig& config() const { return cfg_; }
    const CostTables& costs() const { return costs_; }
    double clock_us() const { return clock_us_; }
    const std::string& active_algorithm() const { return active_algo_; }
    bool steady_mode() const { return steady_mode_; }

    // Audit hooks.
    bool audit_map_injective() const;
    bool audit_page_conservation() const;
    /// True when every valid page holds ciphertext.
    bool audit_all_ciphertext() const;

    // Introspection for oracles: physical page ids of the last request.
    const std::vector<int32_t>& last_pages() const { return last_pages_; }

    double ftl_us(long long bytes) const;

  private:
    struct PlaneCursor {
        int32_t active_block = -1;  ///< block id, -1 = needs allocation
        int next_page = 0;
    };

    // Geometry helpers (block/page id packing).
    long long block_id(int ch, int die, int plane, int blk) const;
    int block_channel(long long blk_id) const;
    int block_die(long long blk_id) const;    ///< die index within channel
    int block_plane(long long blk_id) const;

    int32_t allocate_page(int ch, bool ciphertext, int32_t lba);
    void invalidate(int32_t phys);
    bool plane_refill(int ch, int die, int plane);
    long long pick_gc_victim(bool need_valid) const;
    long long relocate_block_pages(long long victim, long long limit, bool emit,
                                   double* wall_us, long long op_id);
    void state_only_gc();
    double steady_burst(int op_pages, int lead_ch, long long op_id);
    void emit(double t, std::string resource, std::string action, double dur, long long op_id);

    LatencyBreakdown do_read(const IoRequest& req, long long op_id, double pre_crypto_us);
    LatencyBreakdown do_program(const IoRequest& req, long long op_id, double pre_crypto_us);

    SsdConfig cfg_;
    CostTables costs_;
    FtlState ftl_;
    std::vector<PlaneCursor> cursors_;             // per (ch, die, plane)
    std::vector<std::vector<int32_t>> free_pool_;  // per plane: erased blocks
    std::vector<int> channel_die_rr_;              // striping cursor per channel
    double clock_us_ = 0;
    std::string active_algo_ = "none";
    bool steady_mode_ = false;
    uint64_t seed_ = 0;
    long long next_op_id_ = 0;
    std::vector<Event> trace_;
    std::vector<int32_t> last_pages_;
};

}  // namespace fv
