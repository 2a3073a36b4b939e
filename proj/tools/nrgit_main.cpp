#include "nrgit/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using nlohmann::json;
using namespace nrgit;

namespace {

struct CommonOpts {
    std::string file;
    std::string report_path;
    long step_budget = 0;
    int pool_degree = 0;
    int m = 0;
    long seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("instance", o.file, "instance JSON file")->required();
    cmd->add_option("--report", o.report_path, "write the JSON report to this file");
    cmd->add_option("--step-budget", o.step_budget, "Groebner reduction-step budget");
    cmd->add_option("--pool-degree", o.pool_degree, "degree bound for the WUU witness pool");
    cmd->add_option("--m", o.m, "Veronese degree for X0_min charts");
    cmd->add_option("--seed", o.seed, "seed for the deterministic basis-change search");
}

Instance load_with_overrides(const CommonOpts& o) {
    Instance inst = load_instance_file(o.file);
    if (o.step_budget > 0) inst.limits.step_budget = o.step_budget;
    if (o.pool_degree > 0) inst.limits.pool_degree = o.pool_degree;
    if (o.m > 0) inst.limits.m = o.m;
    if (o.seed >= 0) inst.limits.seed = static_cast<unsigned>(o.seed);
    if (inst.limits.step_budget > 0) default_step_budget() = inst.limits.step_budget;
    return inst;
}

int emit(const json& report, const std::string& path) {
    std::string text = canonical_dump(report);
    if (!path.empty()) {
        std::ofstream out(path);
        if (!out) {
            std::cerr << "cannot write report to " << path << "\n";
            return 2;
        }
        out << text;
    }
    std::cout << text;
    return report_exit_code(report);
}

int run_homdim(const std::string& file, const std::string& report_path) {
    std::ifstream in(file);
    if (!in) throw InstanceError("cannot open instance file: " + file);
    json j;
    in >> j;
    if (!is_hntype_json(j)) throw InstanceError("homdim expects an instance with a \"homdim\" field");
    HNType type = load_hntype(j);
    HomDimResult res = homdim(type);
    json r;
    r["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    r["command"] = "homdim";
    r["instance"] = j.value("name", "");
    r["instance_hash"] = instance_hash(j);
    r["a"] = type.a;
    r["b"] = type.b;
    r["delta"] = res.delta;
    r["table"] = res.table;
    r["ok"] = true;
    return emit(r, report_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic engine for graded unipotent group actions"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string command;
    for (const char* name : {"check", "stratify", "quotient", "blowup", "pipeline", "homdim"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd, opts);
        cmd->callback([&command, name] { command = name; });
    }
    CLI11_PARSE(app, argc, argv);

    try {
        if (command == "homdim") return run_homdim(opts.file, opts.report_path);
        Instance inst = load_with_overrides(opts);
        json report;
        if (command == "check")
            report = check_report(inst);
        else if (command == "stratify")
            report = stratify_report(inst);
        else if (command == "quotient")
            report = quotient_report(inst);
        else if (command == "blowup")
            report = blowup_report(inst);
        else
            report = pipeline_report(inst);
        return emit(report, opts.report_path);
    } catch (const MathError& e) {
        std::cerr << "mathematical failure: " << e.what() << "\n";
        return 1;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
