#include "flowrack/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace flowrack::io {

namespace {

json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing key '") + key + "'");
    }
    return j.at(key);
}

template <typename T>
T field_as(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad value for '") + key + "': " + e.what());
    }
}

std::string format_rate(double rate) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << rate;
    return out.str();
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

// ---------------------------------------------------------------------------
// Input documents
// ---------------------------------------------------------------------------

Dimensions dimensions_from_json(const json& j) {
    Dimensions dims;
    dims.bins = field_as<int>(j, "bins");
    dims.slots_per_bin = field_as<int>(j, "slots");
    dims.num_types = field_as<int>(j, "types");
    dims.validate();
    return dims;
}

json dimensions_to_json(const Dimensions& dims) {
    return json{{"bins", dims.bins}, {"slots", dims.slots_per_bin}, {"types", dims.num_types}};
}

RackStateMatrix rack_from_json(const json& j) {
    const Dimensions dims = dimensions_from_json(field(j, "dims"));
    const auto rows = field_as<std::vector<std::vector<int>>>(j, "rack");
    try {
        RackStateMatrix rack(dims, rows);
        if (!rack.settled()) {
            throw NonContiguousBin("a bin lists an empty slot in front of an item");
        }
        return rack;
    } catch (const Error& e) {
        throw ParseError(std::string("bad rack matrix: ") + e.what());
    }
}

json rack_to_json(const RackStateMatrix& rack) {
    return json{{"dims", dimensions_to_json(rack.dims())}, {"rack", rack.rows()}};
}

RequestVector request_from_json(const json& j, int num_types) {
    auto quantities = field_as<std::vector<int>>(j, "quantities");
    if (num_types > 0 && static_cast<int>(quantities.size()) != num_types) {
        throw ParseError("request lists " + std::to_string(quantities.size()) +
                         " quantities, rack has " + std::to_string(num_types) + " types");
    }
    try {
        return RequestVector(std::move(quantities));
    } catch (const Error& e) {
        throw ParseError(std::string("bad request vector: ") + e.what());
    }
}

json request_to_json(const RequestVector& request) {
    return json{{"quantities", request.quantities()}};
}

RetrievalPlan plan_from_json(const json& j, const Dimensions& dims) {
    RetrievalPlan plan;
    plan.selection = field_as<std::vector<std::vector<int>>>(j, "selection");
    if (static_cast<int>(plan.selection.size()) != dims.bins) {
        throw ParseError("plan selection has " + std::to_string(plan.selection.size()) +
                         " rows, rack has " + std::to_string(dims.bins) + " bins");
    }
    for (const auto& row : plan.selection) {
        if (static_cast<int>(row.size()) != dims.slots_per_bin) {
            throw ParseError("plan selection row has " + std::to_string(row.size()) +
                             " entries, rack has " + std::to_string(dims.slots_per_bin) +
                             " slots");
        }
    }
    if (j.contains("cut_depths")) {
        plan.cut_depths = field_as<std::vector<int>>(j, "cut_depths");
        if (static_cast<int>(plan.cut_depths.size()) != dims.bins) {
            throw ParseError("plan lists " + std::to_string(plan.cut_depths.size()) +
                             " cut depths, rack has " + std::to_string(dims.bins) + " bins");
        }
    } else {
        plan.cut_depths.assign(static_cast<size_t>(dims.bins), 0);
        for (int k = 0; k < dims.bins; ++k) {
            for (int j2 = dims.slots_per_bin; j2 >= 1; --j2) {
                if (plan.selection[static_cast<size_t>(k)][static_cast<size_t>(j2 - 1)] != 0) {
                    plan.cut_depths[static_cast<size_t>(k)] = j2;
                    break;
                }
            }
        }
    }
    plan.objective = 0;
    for (int d : plan.cut_depths) plan.objective += d;
    plan.delivered = 0;
    for (const auto& row : plan.selection)
        for (int x : row)
            if (x != 0) ++plan.delivered;
    plan.restored = static_cast<int>(plan.objective) - plan.delivered;
    plan.delivery_rate = plan.objective > 0
                             ? static_cast<double>(plan.delivered) / static_cast<double>(plan.objective)
                             : 1.0;
    return plan;
}

json plan_to_json(const RetrievalPlan& plan) {
    return json{{"cut_depths", plan.cut_depths},
                {"selection", plan.selection},
                {"objective", plan.objective},
                {"delivered", plan.delivered},
                {"restored", plan.restored},
                {"delivery_rate", plan.delivery_rate}};
}

Scenario scenario_from_json(const json& j) {
    Scenario scenario;
    scenario.dims = dimensions_from_json(field(j, "dims"));
    try {
        scenario.initial =
            RackStateMatrix(scenario.dims, field_as<std::vector<std::vector<int>>>(j, "rack"));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("bad rack matrix: ") + e.what());
    }

    const auto mode = field_or<std::string>(j, "period_mode", "fixed");
    if (mode != "fixed") {
        throw ValidationError("batch period mode '" + mode +
                              "' is not supported; only fixed-period batching exists");
    }
    scenario.batch_period = field_as<Tick>(j, "period");

    if (j.contains("requests")) {
        for (const auto& entry : field(j, "requests")) {
            TimedRequest timed;
            timed.tick = field_as<Tick>(entry, "tick");
            timed.request = request_from_json(entry, scenario.dims.num_types);
            scenario.request_stream.push_back(std::move(timed));
        }
    }
    if (j.contains("storage")) {
        for (const auto& entry : field(j, "storage")) {
            TimedArrival arrival;
            arrival.tick = field_as<Tick>(entry, "tick");
            arrival.type = field_as<int>(entry, "type");
            scenario.storage_stream.push_back(arrival);
        }
    }

    scenario.restore_policy =
        placement_policy_from_string(field_or<std::string>(j, "restore_policy", "seeded_random"));
    scenario.storage_policy =
        placement_policy_from_string(field_or<std::string>(j, "storage_policy", "seeded_random"));
    scenario.seed = field_or<std::uint64_t>(j, "seed", 0);

    scenario.validate();
    return scenario;
}

json scenario_to_json(const Scenario& scenario) {
    json requests = json::array();
    for (const auto& [tick, request] : scenario.request_stream) {
        requests.push_back({{"tick", tick}, {"quantities", request.quantities()}});
    }
    json storage = json::array();
    for (const auto& [tick, type] : scenario.storage_stream) {
        storage.push_back({{"tick", tick}, {"type", type}});
    }
    return json{{"dims", dimensions_to_json(scenario.dims)},
                {"rack", scenario.initial.rows()},
                {"period", scenario.batch_period},
                {"requests", requests},
                {"storage", storage},
                {"restore_policy", to_string(scenario.restore_policy)},
                {"storage_policy", to_string(scenario.storage_policy)},
                {"seed", scenario.seed}};
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

PlanReport build_plan_report(const RetrievalPlan& plan, const RackStateMatrix& rack,
                             const RequestVector& request) {
    PlanReport report;
    report.objective = plan.objective;
    report.delivered = plan.delivered;
    report.restored = plan.restored;
    report.delivery_rate = plan.delivery_rate;

    for (int k = 1; k <= rack.dims().bins; ++k) {
        PlanReport::BinRow row;
        row.bin = k;
        row.cycles = plan.cut_depth(k);
        for (int j = 1; j <= rack.dims().slots_per_bin; ++j) {
            if (plan.selected(k, j)) row.slots.push_back(j);
        }
        report.bins.push_back(std::move(row));
    }

    const auto by_type = selected_locations_by_type(plan, rack);
    for (int i = 1; i <= request.num_types(); ++i) {
        if (request.at(i) == 0) continue;
        PlanReport::TypeRow row;
        row.type = i;
        row.requested = request.at(i);
        if (auto it = by_type.find(i); it != by_type.end()) row.locations = it->second;
        report.types.push_back(std::move(row));
    }
    return report;
}

json plan_report_to_json(const PlanReport& report) {
    json bins = json::array();
    for (const auto& row : report.bins) {
        bins.push_back({{"bin", row.bin}, {"slots", row.slots}, {"cycles", row.cycles}});
    }
    json types = json::array();
    for (const auto& row : report.types) {
        json locations = json::array();
        for (const auto& loc : row.locations) locations.push_back({loc.bin, loc.slot});
        types.push_back(
            {{"type", row.type}, {"requested", row.requested}, {"locations", locations}});
    }
    return json{{"objective", report.objective},
                {"delivered", report.delivered},
                {"restored", report.restored},
                {"delivery_rate", report.delivery_rate},
                {"bins", bins},
                {"types", types}};
}

PlanReport plan_report_from_json(const json& j) {
    PlanReport report;
    report.objective = field_as<long>(j, "objective");
    report.delivered = field_as<int>(j, "delivered");
    report.restored = field_as<int>(j, "restored");
    report.delivery_rate = field_as<double>(j, "delivery_rate");
    for (const auto& entry : field(j, "bins")) {
        PlanReport::BinRow row;
        row.bin = field_as<int>(entry, "bin");
        row.slots = field_as<std::vector<int>>(entry, "slots");
        row.cycles = field_as<int>(entry, "cycles");
        report.bins.push_back(std::move(row));
    }
    for (const auto& entry : field(j, "types")) {
        PlanReport::TypeRow row;
        row.type = field_as<int>(entry, "type");
        row.requested = field_as<int>(entry, "requested");
        for (const auto& pair : field(entry, "locations")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError("locations must be [bin, slot] pairs");
            }
            row.locations.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
        }
        report.types.push_back(std::move(row));
    }
    return report;
}

std::string render_plan_report_table(const PlanReport& report) {
    std::ostringstream out;
    out << "objective: " << report.objective << "\n";
    out << "delivered: " << report.delivered << "   restored: " << report.restored
        << "   delivery rate: " << format_rate(report.delivery_rate);
    if (report.objective == 0) out << " (no retrieval cycles)";
    out << "\n\n";

    out << "bin   retrieval slots           cycles\n";
    for (const auto& row : report.bins) {
        std::ostringstream slots;
        if (row.slots.empty()) {
            slots << "-";
        } else {
            for (size_t i = 0; i < row.slots.size(); ++i) {
                if (i > 0) slots << " ";
                slots << "e" << row.slots[i];
            }
        }
        out << std::left << std::setw(6) << ("f" + std::to_string(row.bin)) << std::setw(26)
            << slots.str() << row.cycles << "\n";
    }

    if (!report.types.empty()) {
        out << "\ntype   requested  locations\n";
        for (const auto& row : report.types) {
            std::ostringstream locations;
            if (row.locations.empty()) {
                locations << "-";
            } else {
                for (size_t i = 0; i < row.locations.size(); ++i) {
                    if (i > 0) locations << " ";
                    locations << "(f" << row.locations[i].bin << ",e" << row.locations[i].slot
                              << ")";
                }
            }
            out << std::left << std::setw(7) << ("p" + std::to_string(row.type)) << std::setw(11)
                << row.requested << locations.str() << "\n";
        }
    }
    return out.str();
}

std::string render_shortfall(const ShortfallReport& report) {
    std::ostringstream out;
    out << "request infeasible: rack stock is short\n";
    for (const auto& s : report) {
        out << "  type " << s.type << ": requested " << s.requested << ", available "
            << s.available << "\n";
    }
    return out.str();
}

std::string render_check_table(const PlanEvaluation& evaluation) {
    std::ostringstream out;
    for (const auto& rule : rules::all()) {
        std::vector<const ConstraintViolation*> offenders;
        for (const auto& v : evaluation.violations) {
            if (v.rule == rule) offenders.push_back(&v);
        }
        out << std::left << std::setw(25) << rule << (offenders.empty() ? "PASS" : "FAIL");
        for (const auto* v : offenders) {
            out << "  (";
            bool first = true;
            if (v->bin != 0) { out << "bin " << v->bin; first = false; }
            if (v->slot != 0) { out << (first ? "" : ", ") << "slot " << v->slot; first = false; }
            if (v->type != 0) { out << (first ? "" : ", ") << "type " << v->type; first = false; }
            out << ")";
        }
        out << "\n";
    }
    out << "objective: " << evaluation.objective << "\n";
    out << "delivered: " << evaluation.delivered << "   restored: " << evaluation.restored
        << "   delivery rate: " << format_rate(evaluation.delivery_rate) << "\n";
    if (evaluation.valid()) {
        out << "result: VALID\n";
    } else {
        out << "result: INVALID (" << evaluation.violations.size() << " violation"
            << (evaluation.violations.size() == 1 ? "" : "s") << ")\n";
    }
    return out.str();
}

json check_to_json(const PlanEvaluation& evaluation) {
    json violations = json::array();
    for (const auto& v : evaluation.violations) {
        violations.push_back({{"rule", v.rule},
                              {"bin", v.bin},
                              {"slot", v.slot},
                              {"type", v.type},
                              {"detail", v.detail}});
    }
    return json{{"valid", evaluation.valid()},
                {"objective", evaluation.objective},
                {"delivered", evaluation.delivered},
                {"restored", evaluation.restored},
                {"delivery_rate", evaluation.delivery_rate},
                {"violations", violations}};
}

std::string render_rack_table(const RackStateMatrix& rack) {
    std::ostringstream out;
    int width = 1;
    for (int value = rack.dims().num_types; value >= 10; value /= 10) ++width;
    for (int k = 1; k <= rack.dims().bins; ++k) {
        out << "f" << k << ":";
        for (int j = 1; j <= rack.dims().slots_per_bin; ++j) {
            out << " " << std::setw(width) << rack.at(k, j);
        }
        out << "\n";
    }
    return out.str();
}

namespace {

std::string render_request_inline(const RequestVector& request) {
    std::ostringstream out;
    bool any = false;
    for (int i = 1; i <= request.num_types(); ++i) {
        if (request.at(i) == 0) continue;
        if (any) out << " ";
        out << "p" << i << "=" << request.at(i);
        any = true;
    }
    if (!any) out << "(empty)";
    return out.str();
}

}  // namespace

std::string render_simulation_table(const SimulationResult& result) {
    std::ostringstream out;
    long total_delivered = 0;
    long total_restored = 0;
    double rate_sum = 0.0;
    int fulfilled = 0;

    for (const auto& report : result.reports) {
        out << "batch " << report.batch_id << " @ tick " << report.tick;
        if (!report.fulfilled) {
            out << "  DEFERRED\n";
            out << "  request: " << render_request_inline(report.request) << "\n";
            for (const auto& s : report.shortfall) {
                out << "  short: type " << s.type << " requested " << s.requested
                    << " available " << s.available << "\n";
            }
            out << "\n";
            continue;
        }
        out << "\n  request: " << render_request_inline(report.request) << "\n";
        out << "  objective: " << report.objective << "   delivered: " << report.delivered
            << "   restored: " << report.restored
            << "   delivery rate: " << format_rate(report.delivery_rate) << "\n";
        out << "  cut depths:";
        for (size_t k = 0; k < report.cut_depths.size(); ++k) {
            out << " f" << (k + 1) << "=" << report.cut_depths[k];
        }
        out << "\n\n";
        total_delivered += report.delivered;
        total_restored += report.restored;
        rate_sum += report.delivery_rate;
        ++fulfilled;
    }

    const double mean_rate = fulfilled > 0 ? rate_sum / fulfilled : 1.0;
    out << "summary: " << result.reports.size() << " batch"
        << (result.reports.size() == 1 ? "" : "es") << ", " << fulfilled << " fulfilled\n";
    out << "cumulative delivered: " << total_delivered << "   cumulative restored: "
        << total_restored << "   mean delivery rate: " << format_rate(mean_rate) << "\n";
    out << "storage queued: " << result.storage_queued << "\n";
    out << "final rack:\n" << render_rack_table(result.final_marking.to_matrix());
    return out.str();
}

json batch_report_to_json(const BatchReport& report) {
    json shortfall = json::array();
    for (const auto& s : report.shortfall) {
        shortfall.push_back(
            {{"type", s.type}, {"requested", s.requested}, {"available", s.available}});
    }
    return json{{"batch", report.batch_id},
                {"tick", report.tick},
                {"request", report.request.quantities()},
                {"fulfilled", report.fulfilled},
                {"shortfall", shortfall},
                {"objective", report.objective},
                {"cut_depths", report.cut_depths},
                {"delivered", report.delivered},
                {"restored", report.restored},
                {"delivery_rate", report.delivery_rate}};
}

BatchReport batch_report_from_json(const json& j) {
    BatchReport report;
    report.batch_id = field_as<int>(j, "batch");
    report.tick = field_as<Tick>(j, "tick");
    report.request = RequestVector(field_as<std::vector<int>>(j, "request"));
    report.fulfilled = field_as<bool>(j, "fulfilled");
    for (const auto& entry : field(j, "shortfall")) {
        report.shortfall.push_back({field_as<int>(entry, "type"),
                                    field_as<int>(entry, "requested"),
                                    field_as<int>(entry, "available")});
    }
    report.objective = field_as<long>(j, "objective");
    report.cut_depths = field_as<std::vector<int>>(j, "cut_depths");
    report.delivered = field_as<int>(j, "delivered");
    report.restored = field_as<int>(j, "restored");
    report.delivery_rate = field_as<double>(j, "delivery_rate");
    return report;
}

json simulation_to_json(const SimulationResult& result) {
    json batches = json::array();
    long total_delivered = 0;
    long total_restored = 0;
    double rate_sum = 0.0;
    int fulfilled = 0;
    for (const auto& report : result.reports) {
        batches.push_back(batch_report_to_json(report));
        if (report.fulfilled) {
            total_delivered += report.delivered;
            total_restored += report.restored;
            rate_sum += report.delivery_rate;
            ++fulfilled;
        }
    }
    return json{{"batches", batches},
                {"summary",
                 {{"batches", result.reports.size()},
                  {"fulfilled", fulfilled},
                  {"delivered", total_delivered},
                  {"restored", total_restored},
                  {"mean_delivery_rate", fulfilled > 0 ? rate_sum / fulfilled : 1.0},
                  {"storage_queued", result.storage_queued}}},
                {"final_rack", result.final_marking.to_matrix().rows()}};
}

json trace_to_json(const Dimensions& dims, const RackStateMatrix& initial,
                   const EventTrace& trace) {
    json events = json::array();
    for (const auto& event : trace) {
        events.push_back({{"tick", event.tick},
                          {"kind", to_string(event.kind)},
                          {"type", event.type},
                          {"bin", event.bin},
                          {"rack", event.rack_count},
                          {"conveyor", event.conveyor_count},
                          {"delivered", event.delivered_count}});
    }
    return json{{"dims", dimensions_to_json(dims)},
                {"initial_rack", initial.rows()},
                {"events", events}};
}

EventTrace trace_from_json(const json& j, Dimensions* dims_out, RackStateMatrix* initial_out) {
    const Dimensions dims = dimensions_from_json(field(j, "dims"));
    if (dims_out) *dims_out = dims;
    if (initial_out) {
        try {
            *initial_out =
                RackStateMatrix(dims, field_as<std::vector<std::vector<int>>>(j, "initial_rack"));
        } catch (const Error& e) {
            throw ParseError(std::string("bad initial rack: ") + e.what());
        }
    }
    EventTrace trace;
    for (const auto& entry : field(j, "events")) {
        TraceEvent event;
        event.tick = field_as<Tick>(entry, "tick");
        event.kind = transition_from_string(field_as<std::string>(entry, "kind"));
        event.type = field_as<int>(entry, "type");
        event.bin = field_as<int>(entry, "bin");
        event.rack_count = field_as<int>(entry, "rack");
        event.conveyor_count = field_as<int>(entry, "conveyor");
        event.delivered_count = field_as<int>(entry, "delivered");
        trace.push_back(event);
    }
    return trace;
}

}  // namespace flowrack::io
