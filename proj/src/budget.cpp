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
 * @file budget.cpp
 * @brief Budget arithmetic and the component-table/config loaders.
 */

#include "fv/budget.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fv/config.hpp"
#include "fv/error.hpp"

namespace fv {

double DieGeometry::peripheral_mm2() const {
    if (die6_mm2 <= 0.0 || die7_mm2 <= 0.0 || die6_mm2 <= die7_mm2)
        raise(Errc::kBadConfig, "budget: die sizes must be positive and shrinking");
    return die6_mm2 - die7_mm2;
}

double DieGeometry::available_mm2() const {
    if (memory_array_mm2 <= 0.0)
        raise(Errc::kBadConfig, "budget: memory array area must be positive");
    double avail = memory_array_mm2 - peripheral_mm2();
    if (avail < 0.0)
        raise(Errc::kBoundViolation, "budget: peripheral circuit exceeds the array");
    return avail;
}

double program_power_mw(const PowerParams& params) {
    if (params.i_program_ma <= 0.0 || params.v_max_v <= 0.0)
        raise(Errc::kBadConfig, "budget: current and voltage must be positive");
    if (params.efficiency_gain < 0.0 || params.efficiency_gain >= 1.0)
        raise(Errc::kBadConfig, "budget: efficiency gain must lie in [0, 1)");
    return params.i_program_ma * params.v_max_v * (1.0 - params.efficiency_gain);
}

EngineFit engine_fit(double area_budget_mm2, double power_budget_mw,
                     double engine_area_mm2, double engine_power_mw) {
    if (engine_area_mm2 <= 0.0 || engine_power_mw <= 0.0)
        raise(Errc::kBadConfig, "budget: engine area and power must be positive");
    if (area_budget_mm2 < 0.0 || power_budget_mw < 0.0)
        raise(Errc::kBadConfig, "budget: budgets must be non-negative");
    EngineFit fit;
    fit.area_bound = int(std::floor(area_budget_mm2 / engine_area_mm2));
    fit.power_bound = int(std::floor(power_budget_mw / engine_power_mw));
    fit.count = std::min(fit.area_bound, fit.power_bound);
    return fit;
}

int max_engines(double area_budget_mm2, double power_budget_mw,
                double engine_area_mm2, double engine_power_mw) {
    return engine_fit(area_budget_mm2, power_budget_mw, engine_area_mm2,
                      engine_power_mw)
        .count;
}

ComponentBudget scale_node(const ComponentBudget& budget,
                           const std::vector<ScaleFactor>& factors, int from_nm,
                           int to_nm) {
    if (budget.area_um2 < 0.0 || budget.power_mw < 0.0)
        raise(Errc::kBadConfig, "budget: component figures must be non-negative");
    for (const auto& f : factors)
        if (f.from_nm == from_nm && f.to_nm == to_nm) {
            if (f.area_factor <= 0.0 || f.power_factor <= 0.0)
                raise(Errc::kBadConfig, "budget: scale factors must be positive");
            return ComponentBudget{budget.area_um2 * f.area_factor,
                                   budget.power_mw * f.power_factor};
        }
    raise(Errc::kBadConfig, "budget: no scale factor for " + std::to_string(from_nm) +
                                " nm -> " + std::to_string(to_nm) + " nm");
}

namespace {

double parse_field_f64(const std::string& field, int lineno) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || p != field.data() + field.size())
        raise(Errc::kBadConfig, "components: line " + std::to_string(lineno) +
                                    " has a non-numeric figure");
    return out;
}

}  // namespace

ComponentTable load_component_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::kIoError, "components: cannot open " + path);
    ComponentTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            raise(Errc::kBadConfig,
                  "components: line " + std::to_string(lineno) + " needs 6 fields");
        ComponentRow row;
        row.section = fields[0];
        row.component = fields[1];
        row.configuration = fields[2];
        row.area_um2 = parse_field_f64(fields[3], lineno);
        row.power_mw = parse_field_f64(fields[4], lineno);
        if (fields[5] == "total")
            row.is_total = true;
        else if (fields[5] != "row")
            raise(Errc::kBadConfig,
                  "components: line " + std::to_string(lineno) + " has unknown kind");
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) raise(Errc::kEmptyInput, "components: empty table");
    return table;
}

ComponentBudget ComponentTable::reconciled_total(std::string_view section) const {
    ComponentBudget sum;
    bool any = false;
    for (const auto& row : rows)
        if (row.section == section && !row.is_total) {
            sum.area_um2 += row.area_um2;
            sum.power_mw += row.power_mw;
            any = true;
        }
    if (!any)
        raise(Errc::kBadConfig, "components: unknown section " + std::string(section));
    return sum;
}

const ComponentRow& ComponentTable::printed_total(std::string_view section) const {
    for (const auto& row : rows)
        if (row.section == section && row.is_total) return row;
    raise(Errc::kBadConfig,
          "components: section " + std::string(section) + " has no total row");
}

EngineProfile table_engine_profile(const ComponentTable& table) {
    // The printed top-level area total repeats the ACE subtotal, so the
    // reconciled sum stands in for area; the printed power total is kept.
    EngineProfile profile;
    profile.area_mm2 = table.reconciled_total("top").area_um2 / 1e6;
    profile.power_mw = table.printed_total("top").power_mw;
    return profile;
}

BudgetConfig load_budget_config(const std::string& path) {
    KvConfig kv = KvConfig::load_file(path);
    BudgetConfig cfg;
    cfg.die.memory_array_mm2 = kv.get_f64("die.memory_array_mm2");
    cfg.die.die6_mm2 = kv.get_f64("die.die6_mm2");
    cfg.die.die7_mm2 = kv.get_f64("die.die7_mm2");
    cfg.power.i_program_ma = kv.get_f64("power.i_program_ma");
    cfg.power.v_max_v = kv.get_f64("power.v_max_v");
    cfg.power.efficiency_gain = kv.get_f64("power.efficiency_gain");
    cfg.published_engine.area_mm2 = kv.get_f64("engine.area_mm2");
    cfg.published_engine.power_mw = kv.get_f64("engine.power_mw");
    // scale.<from>.<to>.area / .power pairs.
    for (const auto& [key, value] : kv.entries()) {
        if (key.rfind("scale.", 0) != 0 || key.size() < 7) continue;
        size_t a = key.find('.', 6);
        size_t b = key.find('.', a + 1);
        if (a == std::string::npos || b == std::string::npos)
            raise(Errc::kBadConfig, "budget: malformed scale key " + key);
        std::string tail = key.substr(b + 1);
        if (tail != "area") continue;  // pick up the pair once, via the area key
        ScaleFactor f;
        f.from_nm = int(std::stol(key.substr(6, a - 6)));
        f.to_nm = int(std::stol(key.substr(a + 1, b - a - 1)));
        f.area_factor = kv.get_f64(key);
        f.power_factor =
            kv.get_f64("scale." + std::to_string(f.from_nm) + "." +
                       std::to_string(f.to_nm) + ".power");
        cfg.scale_factors.push_back(f);
        (void)value;
    }
    return cfg;
}

}  // namespace fv
