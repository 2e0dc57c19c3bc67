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
 * @file budget.hpp
 * @brief Area/power budget planning for in-NAND crypto engines: die
 *        free-space bookkeeping, programming-power estimation, engine-count
 *        sizing, and node scaling for the component table.
 *
 * The component table ships verbatim, inconsistencies included (totals that
 * do not match their rows).  Computation uses the reconciled row sums plus
 * the printed top-level power total; the prose engine profile
 * (0.18 mm^2 / 18.87 mW) is the default.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fv {

/// 4D V-NAND free-space estimate: the peripheral circuit moved under the
/// memory array, so the older chip's die delta bounds its footprint.
struct DieGeometry {
    double memory_array_mm2 = 0.0;  ///< M, the array over the free space
    double die6_mm2 = 0.0;          ///< D6, previous-generation die size
    double die7_mm2 = 0.0;          ///< D7, current-generation die size

    double peripheral_mm2() const;  ///< P = D6 - D7
    double available_mm2() const;   ///< M - P; raises if negative
};

/// One component-table entry.
struct ComponentBudget {
    double area_um2 = 0.0;
    double power_mw = 0.0;
};

/// Programming-power inputs for the previous-generation chip, plus the
/// newer generation's efficiency gain.
struct PowerParams {
    double i_program_ma = 0.0;
    double v_max_v = 0.0;
    double efficiency_gain = 0.0;  ///< fraction in [0, 1)
};

/// P = I * V, scaled by (1 - efficiency_gain).  Milliwatts.
double program_power_mw(const PowerParams& params);

/// N = min(floor(A_budget / A_engine), floor(P_budget / P_engine)).
int max_engines(double area_budget_mm2, double power_budget_mw,
                double engine_area_mm2, double engine_power_mw);

/// max_engines plus both floor terms, so callers can name the binding
/// constraint.
struct EngineFit {
    int count = 0;
    int area_bound = 0;
    int power_bound = 0;
    bool power_limited() const { return power_bound <= area_bound; }
};
EngineFit engine_fit(double area_budget_mm2, double power_budget_mw,
                     double engine_area_mm2, double engine_power_mw);

/// Multiplicative technology scaling between process nodes.
struct ScaleFactor {
    int from_nm = 0;
    int to_nm = 0;
    double area_factor = 0.0;
    double power_factor = 0.0;
};
ComponentBudget scale_node(const ComponentBudget& budget,
                           const std::vector<ScaleFactor>& factors, int from_nm,
                           int to_nm);

/// One row of the shipped component table.
struct ComponentRow {
    std::string section;        ///< "bce", "ace" or "top"
    std::string component;
    std::string configuration;
    double area_um2 = 0.0;
    double power_mw = 0.0;
    bool is_total = false;      ///< printed total line, kept verbatim
};

struct ComponentTable {
    std::vector<ComponentRow> rows;

    /// Sum of the section's non-total rows (what the totals should say).
    ComponentBudget reconciled_total(std::string_view section) const;
    /// The printed total row; raises if the section has none.
    const ComponentRow& printed_total(std::string_view section) const;
};

/// Loads the CSV component table (section,component,configuration,area,power,kind).
ComponentTable load_component_table(const std::string& path);

/// Engine cost profile used by the sizing computation.
struct EngineProfile {
    double area_mm2 = 0.0;
    double power_mw = 0.0;
};

/// Reconciled top-level area plus the printed top-level power total.
EngineProfile table_engine_profile(const ComponentTable& table);

struct BudgetConfig {
    DieGeometry die;
    PowerParams power;
    EngineProfile published_engine;  ///< prose figures; the default profile
    std::vector<ScaleFactor> scale_factors;
};

/// Loads die/power/engine/scaling settings from a `key value` config file.
BudgetConfig load_budget_config(const std::string& path);

}  // namespace fv
