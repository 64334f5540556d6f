#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "flowrack/optimizer.hpp"
#include "flowrack/simulation.hpp"
#include "flowrack/types.hpp"

namespace flowrack::io {

using json = nlohmann::json;

/// Reads and parses a JSON document; throws ParseError with the file name on
/// any failure.
json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// ---------------------------------------------------------------------------
// Input documents
// ---------------------------------------------------------------------------

Dimensions dimensions_from_json(const json& j);
json dimensions_to_json(const Dimensions& dims);

/// {"dims": {...}, "rack": [[...], ...]} - rows list slot 1 (retrieval face)
/// first; 0 marks an empty slot.
RackStateMatrix rack_from_json(const json& j);
json rack_to_json(const RackStateMatrix& rack);

/// {"quantities": [...]} - one non-negative integer per product type.
RequestVector request_from_json(const json& j, int num_types);
json request_to_json(const RequestVector& request);

/// {"selection": [[...], ...], "cut_depths": [...]} - cut_depths is optional
/// and defaults to each bin's deepest selected slot.
RetrievalPlan plan_from_json(const json& j, const Dimensions& dims);
json plan_to_json(const RetrievalPlan& plan);

/// Scenario document; see the repository README for the full key list.
/// Only the fixed-period batching mode exists: a "period_mode" key other
/// than "fixed" is rejected.
Scenario scenario_from_json(const json& j);
json scenario_to_json(const Scenario& scenario);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Tabular view of a plan: one row per bin and one row per requested type.
struct PlanReport {
    long objective = 0;
    int delivered = 0;
    int restored = 0;
    double delivery_rate = 1.0;

    struct BinRow {
        int bin = 0;
        std::vector<int> slots;
        int cycles = 0;

        bool operator==(const BinRow&) const = default;
    };
    struct TypeRow {
        int type = 0;
        int requested = 0;
        std::vector<LocationRef> locations;

        bool operator==(const TypeRow&) const = default;
    };

    std::vector<BinRow> bins;
    std::vector<TypeRow> types;

    bool operator==(const PlanReport&) const = default;
};

PlanReport build_plan_report(const RetrievalPlan& plan, const RackStateMatrix& rack,
                             const RequestVector& request);
json plan_report_to_json(const PlanReport& report);
PlanReport plan_report_from_json(const json& j);

std::string render_plan_report_table(const PlanReport& report);
std::string render_shortfall(const ShortfallReport& report);

/// Validation outcome of cmd-check: one PASS/FAIL line per rule.
std::string render_check_table(const PlanEvaluation& evaluation);
json check_to_json(const PlanEvaluation& evaluation);

std::string render_rack_table(const RackStateMatrix& rack);

std::string render_simulation_table(const SimulationResult& result);
json simulation_to_json(const SimulationResult& result);

json batch_report_to_json(const BatchReport& report);
BatchReport batch_report_from_json(const json& j);

/// Self-contained trace document: dimensions, initial rack, events.
json trace_to_json(const Dimensions& dims, const RackStateMatrix& initial,
                   const EventTrace& trace);
EventTrace trace_from_json(const json& j, Dimensions* dims_out = nullptr,
                           RackStateMatrix* initial_out = nullptr);

}  // namespace flowrack::io
