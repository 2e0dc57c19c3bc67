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

#include <cmath>
#include <optional>
#include <string>

#include "doctest.h"
#include "fv/budget.hpp"
#include "fv/config.hpp"
#include "fv/error.hpp"

using namespace fv;

namespace {

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

const char* kBudgetConf = FV_DATA_DIR "/budget.conf";
const char* kComponentsCsv = FV_DATA_DIR "/components.csv";

}  // namespace

TEST_SUITE("budget") {

TEST_CASE("programming power reproduces the published figures") {
    // 13.8 mA x 3.6 V, then a 16% efficiency gain on top.
    PowerParams params{13.8, 3.6, 0.0};
    CHECK(std::abs(program_power_mw(params) - 49.68) < 1e-9);
    params.efficiency_gain = 0.16;
    double improved = program_power_mw(params);
    CHECK(std::abs(improved - 41.7312) < 1e-9);
    // Published prose rounds the same value to two decimals.
    CHECK(std::round(improved * 100.0) / 100.0 == doctest::Approx(41.73).epsilon(1e-12));
}

TEST_CASE("programming power rejects non-positive and out-of-range inputs") {
    CHECK(thrown_code([] { program_power_mw({0.0, 3.6, 0.0}); }) == Errc::kBadConfig);
    CHECK(thrown_code([] { program_power_mw({13.8, 0.0, 0.0}); }) == Errc::kBadConfig);
    CHECK(thrown_code([] { program_power_mw({13.8, 3.6, 1.0}); }) == Errc::kBadConfig);
    CHECK(thrown_code([] { program_power_mw({13.8, 3.6, -0.1}); }) == Errc::kBadConfig);
}

TEST_CASE("die free space comes out to 20.60 mm^2") {
    auto cfg = load_budget_config(kBudgetConf);
    CHECK(std::abs(cfg.die.peripheral_mm2() - 35.58) < 1e-9);
    CHECK(std::abs(cfg.die.available_mm2() - 20.60) < 1e-9);

    DieGeometry shrunk = cfg.die;
    shrunk.memory_array_mm2 = 10.0;  // smaller than the peripheral estimate
    CHECK(thrown_code([&] { shrunk.available_mm2(); }) == Errc::kBoundViolation);
    DieGeometry grown = cfg.die;
    grown.die7_mm2 = grown.die6_mm2 + 1.0;  // dies must shrink across generations
    CHECK(thrown_code([&] { grown.peripheral_mm2(); }) == Errc::kBadConfig);
}

TEST_CASE("two engines fit, and power is the binding constraint") {
    auto fit = engine_fit(20.60, 41.73, 0.18, 18.87);
    CHECK(fit.count == 2);
    CHECK(fit.area_bound == 114);  // floor(20.60 / 0.18)
    CHECK(fit.power_bound == 2);   // floor(41.73 / 18.87)
    CHECK(fit.power_limited());
    CHECK(max_engines(20.60, 41.73, 0.18, 18.87) == 2);

    // The computed (unrounded) power budget gives the same answer.
    CHECK(max_engines(20.60, program_power_mw({13.8, 3.6, 0.16}), 0.18, 18.87) == 2);
}

TEST_CASE("engine count edge cases") {
    // Engine hungrier than the whole power budget.
    CHECK(max_engines(20.60, 10.0, 0.18, 18.87) == 0);
    // Area-limited: floor(0.5 / 0.18) = 2 with power slack to spare.
    auto fit = engine_fit(0.5, 1e6, 0.18, 18.87);
    CHECK(fit.count == 2);
    CHECK_FALSE(fit.power_limited());
    // Exact-fit boundary: the floor keeps the full count.
    CHECK(max_engines(0.36, 1e6, 0.18, 0.01) == 2);

    CHECK(thrown_code([] { max_engines(1.0, 1.0, 0.0, 1.0); }) == Errc::kBadConfig);
    CHECK(thrown_code([] { max_engines(1.0, 1.0, 1.0, -2.0); }) == Errc::kBadConfig);
    CHECK(thrown_code([] { max_engines(-1.0, 1.0, 1.0, 1.0); }) == Errc::kBadConfig);
}

TEST_CASE("engine count is monotone in budgets and engine costs") {
    int last = 0;
    for (double power = 5.0; power <= 100.0; power += 5.0) {
        int n = max_engines(20.60, power, 0.18, 18.87);
        CHECK(n >= last);
        last = n;
    }
    last = 1 << 20;
    for (double engine_area = 0.05; engine_area <= 2.0; engine_area += 0.05) {
        int n = max_engines(20.60, 1e6, engine_area, 1e-3);
        CHECK(n <= last);
        last = n;
    }
}

TEST_CASE("component table keeps printed totals and reconciles row sums") {
    auto table = load_component_table(kComponentsCsv);

    // Bottom-level block cipher engine: the printed total disagrees with
    // its own rows, and both readings must survive the loader.
    CHECK(table.printed_total("bce").area_um2 == doctest::Approx(42616.21));
    CHECK(table.printed_total("bce").power_mw == doctest::Approx(0.41));
    auto bce = table.reconciled_total("bce");
    CHECK(std::abs(bce.area_um2 - 4011.32) < 1e-6);  // 1263.15+99.93+247.19+205.83+2195.22
    CHECK(std::abs(bce.power_mw - 1.42) < 1e-9);

    auto ace = table.reconciled_total("ace");
    CHECK(std::abs(ace.area_um2 - 54991.90) < 1e-6);
    CHECK(std::abs(ace.power_mw - 5.22) < 1e-9);

    CHECK(table.printed_total("top").power_mw == doctest::Approx(20.71));
    auto top = table.reconciled_total("top");
    CHECK(std::abs(top.area_um2 - 196359.65) < 1e-6);
    CHECK(std::abs(top.power_mw - 22.46) < 1e-9);

    CHECK(thrown_code([&] { table.reconciled_total("nope"); }) == Errc::kBadConfig);
}

TEST_CASE("the component-table engine profile also lands on two engines") {
    auto table = load_component_table(kComponentsCsv);
    auto profile = table_engine_profile(table);
    CHECK(std::abs(profile.area_mm2 - 0.19635965) < 1e-12);
    CHECK(profile.power_mw == doctest::Approx(20.71));

    auto fit = engine_fit(20.60, 41.73, profile.area_mm2, profile.power_mw);
    CHECK(fit.count == 2);
    CHECK(fit.power_limited());
}

TEST_CASE("node scaling is plain multiplication against the factor table") {
    auto cfg = load_budget_config(kBudgetConf);
    REQUIRE(cfg.scale_factors.size() == 1);
    const auto& f = cfg.scale_factors[0];
    CHECK(f.from_nm == 65);
    CHECK(f.to_nm == 14);

    ComponentBudget ldpc{58624.29, 6.65};
    auto scaled = scale_node(ldpc, cfg.scale_factors, 65, 14);
    CHECK(std::abs(scaled.area_um2 - 58624.29 * f.area_factor) < 1e-9);
    CHECK(std::abs(scaled.power_mw - 6.65 * f.power_factor) < 1e-9);

    std::vector<ScaleFactor> identity = {{65, 65, 1.0, 1.0}};
    auto same = scale_node(ldpc, identity, 65, 65);
    CHECK(same.area_um2 == ldpc.area_um2);
    CHECK(same.power_mw == ldpc.power_mw);

    CHECK(thrown_code([&] { scale_node(ldpc, cfg.scale_factors, 65, 7); }) ==
          Errc::kBadConfig);
    CHECK(thrown_code([&] {
              scale_node(ComponentBudget{-1.0, 0.0}, cfg.scale_factors, 65, 14);
          }) == Errc::kBadConfig);
}

TEST_CASE("config loader diagnostics") {
    CHECK(thrown_code([] { load_budget_config("/nonexistent/budget.conf"); }) ==
          Errc::kIoError);
    CHECK(thrown_code([] { load_component_table("/nonexistent/components.csv"); }) ==
          Errc::kIoError);
    CHECK(thrown_code([] { KvConfig::parse("orphan-key\n"); }) == Errc::kBadConfig);

    auto kv = KvConfig::parse("# comment\n\nanswer 42\nname flash vault\n");
    CHECK(kv.get_i64("answer") == 42);
    CHECK(kv.get_f64("answer") == 42.0);
    CHECK(kv.get_str("name") == "flash vault");  // value keeps inner spaces
    CHECK(kv.get_f64("missing", 7.5) == 7.5);
    CHECK(thrown_code([&] { kv.get_f64("missing"); }) == Errc::kBadConfig);
    CHECK(thrown_code([&] { kv.get_f64("name"); }) == Errc::kBadConfig);
}

}  // TEST_SUITE
