#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "forge/runner.hpp"

namespace {

struct CommonOpts {
    forge::ScenarioOverrides ov;
    std::string json_path, csv_path;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--rays", c.ov.rays, "number of radial probe rays");
    cmd->add_option("--rmin", c.ov.r0, "outer probe radius r0");
    cmd->add_option("--grid", c.ov.grid, "singular set grid resolution");
    cmd->add_option("--tol", c.ov.tol, "quadrature tolerance");
    cmd->add_option("--json", c.json_path, "write the JSON report here");
    cmd->add_option("--csv", c.csv_path, "write the partial length table here");
}

int emit(const forge::RunOutcome& out, const CommonOpts& c) {
    if (!c.json_path.empty()) {
        std::ofstream f(c.json_path);
        if (!f) {
            std::cerr << "error: cannot write " << c.json_path << "\n";
            return 2;
        }
        f << out.json << "\n";
    } else {
        std::cout << out.json << "\n";
    }
    if (!c.csv_path.empty()) {
        std::ofstream f(c.csv_path);
        if (!f) {
            std::cerr << "error: cannot write " << c.csv_path << "\n";
            return 2;
        }
        f << out.csv;
    }
    std::cerr << out.summary << "\n";
    return out.consistency.pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: completeness analysis of surface ends"};
    app.require_subcommand(1);

    std::string run_file, mesh_file, obj_path, preset;
    CommonOpts run_c, rep_c;

    CLI::App* run = app.add_subcommand("run", "analyze a scenario file");
    run->add_option("file", run_file, "scenario file")->required();
    add_common(run, run_c);

    CLI::App* rep = app.add_subcommand("reproduce", "run a built-in preset");
    rep->add_option("id", preset, "preset id")->required();
    add_common(rep, rep_c);

    CLI::App* mesh = app.add_subcommand("mesh", "export a surface mesh");
    mesh->add_option("file", mesh_file, "scenario file")->required();
    mesh->add_option("--obj", obj_path, "output OBJ path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            forge::Scenario sc = forge::load_scenario(run_file);
            forge::apply_overrides(sc, run_c.ov);
            return emit(forge::run_scenario(sc), run_c);
        }
        if (rep->parsed()) {
            return emit(forge::reproduce(preset), rep_c);
        }
        if (mesh->parsed()) {
            forge::Scenario sc = forge::load_scenario(mesh_file);
            forge::write_obj(sc, obj_path);
            std::cerr << "wrote " << obj_path << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return forge::exit_code_for(e);
    }
    return 2;
}
