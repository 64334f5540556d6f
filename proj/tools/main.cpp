// Command-line front end: one-shot solving, reference enumeration, plan
// checking and closed-loop simulation over JSON documents.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "flowrack/io.hpp"
#include "flowrack/optimizer.hpp"
#include "flowrack/simulation.hpp"

namespace {

using flowrack::io::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudgetExceeded = 3;

struct CommonArgs {
    std::string rack_path;
    std::string request_path;
    std::string format = "table";
};

void print_report(const flowrack::io::PlanReport& report, const std::string& format) {
    if (format == "structured") {
        std::cout << flowrack::io::plan_report_to_json(report).dump(2) << "\n";
    } else {
        std::cout << flowrack::io::render_plan_report_table(report);
    }
}

int run_solve(const CommonArgs& args) {
    const auto rack = flowrack::io::rack_from_json(flowrack::io::load_json_file(args.rack_path));
    const auto request = flowrack::io::request_from_json(
        flowrack::io::load_json_file(args.request_path), rack.dims().num_types);
    const auto plan = flowrack::solve(rack, request);
    print_report(flowrack::io::build_plan_report(plan, rack, request), args.format);
    return kExitOk;
}

int run_oracle(const CommonArgs& args, std::uint64_t budget) {
    const auto rack = flowrack::io::rack_from_json(flowrack::io::load_json_file(args.rack_path));
    const auto request = flowrack::io::request_from_json(
        flowrack::io::load_json_file(args.request_path), rack.dims().num_types);
    const auto result = flowrack::solve_bruteforce(rack, request, budget);
    std::cout << result.vectors_enumerated << " vectors enumerated\n";
    print_report(flowrack::io::build_plan_report(result.plan, rack, request), args.format);
    return kExitOk;
}

int run_check(const CommonArgs& args, const std::string& plan_path) {
    const auto rack = flowrack::io::rack_from_json(flowrack::io::load_json_file(args.rack_path));
    const auto request = flowrack::io::request_from_json(
        flowrack::io::load_json_file(args.request_path), rack.dims().num_types);
    const auto plan =
        flowrack::io::plan_from_json(flowrack::io::load_json_file(plan_path), rack.dims());
    const auto evaluation = flowrack::evaluate_plan(rack, request, plan);
    if (args.format == "structured") {
        std::cout << flowrack::io::check_to_json(evaluation).dump(2) << "\n";
    } else {
        std::cout << flowrack::io::render_check_table(evaluation);
    }
    return evaluation.valid() ? kExitOk : kExitInfeasible;
}

int run_simulate(const std::string& scenario_path, bool seed_set, std::uint64_t seed,
                 const std::string& trace_path, const std::string& format) {
    auto scenario =
        flowrack::io::scenario_from_json(flowrack::io::load_json_file(scenario_path));
    if (seed_set) scenario.seed = seed;

    flowrack::Simulator simulator(scenario);
    const auto result = simulator.run();

    if (format == "structured") {
        std::cout << flowrack::io::simulation_to_json(result).dump(2) << "\n";
    } else {
        std::cout << flowrack::io::render_simulation_table(result);
    }
    if (!trace_path.empty()) {
        const json trace = flowrack::io::trace_to_json(scenario.dims, scenario.initial,
                                                       result.trace);
        flowrack::io::write_text_file(trace_path, trace.dump(2) + "\n");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gravity flow-rack storage/retrieval planner and simulator"};
    app.require_subcommand(1);

    CommonArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "compute a minimum-cycle retrieval plan");
    solve_cmd->add_option("--rack", solve_args.rack_path, "rack state file")->required();
    solve_cmd->add_option("--request", solve_args.request_path, "request vector file")->required();
    solve_cmd->add_option("--format", solve_args.format, "output format")
        ->check(CLI::IsMember({"table", "structured"}));

    CommonArgs oracle_args;
    std::uint64_t budget = flowrack::default_enumeration_budget;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "solve by exhaustive cut-depth enumeration (reference)");
    oracle_cmd->add_option("--rack", oracle_args.rack_path, "rack state file")->required();
    oracle_cmd->add_option("--request", oracle_args.request_path, "request vector file")
        ->required();
    oracle_cmd->add_option("--format", oracle_args.format, "output format")
        ->check(CLI::IsMember({"table", "structured"}));
    oracle_cmd->add_option("--budget", budget, "maximum cut-depth vectors to enumerate");

    CommonArgs check_args;
    std::string plan_path;
    auto* check_cmd = app.add_subcommand("check", "validate a retrieval plan rule by rule");
    check_cmd->add_option("--rack", check_args.rack_path, "rack state file")->required();
    check_cmd->add_option("--request", check_args.request_path, "request vector file")->required();
    check_cmd->add_option("--plan", plan_path, "plan file")->required();
    check_cmd->add_option("--format", check_args.format, "output format")
        ->check(CLI::IsMember({"table", "structured"}));

    std::string scenario_path;
    std::string trace_path;
    std::string simulate_format = "table";
    std::uint64_t seed_override = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "run a closed-loop scenario");
    simulate_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    auto* seed_opt = simulate_cmd->add_option("--seed", seed_override,
                                              "override the scenario seed");
    simulate_cmd->add_option("--trace-out", trace_path, "write the replayable event trace here");
    simulate_cmd->add_option("--format", simulate_format, "output format")
        ->check(CLI::IsMember({"table", "structured"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (oracle_cmd->parsed()) return run_oracle(oracle_args, budget);
        if (check_cmd->parsed()) return run_check(check_args, plan_path);
        if (simulate_cmd->parsed()) {
            return run_simulate(scenario_path, seed_opt->count() > 0, seed_override, trace_path,
                                simulate_format);
        }
    } catch (const flowrack::InfeasibleRequest& e) {
        std::cerr << flowrack::io::render_shortfall(e.shortfall);
        return kExitInfeasible;
    } catch (const flowrack::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudgetExceeded;
    } catch (const flowrack::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
