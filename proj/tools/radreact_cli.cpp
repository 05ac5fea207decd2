// radreact: scenario runner and A_max calculator.
//
//   radreact simulate --config scenario.json
//   radreact amax --particle electron
//   radreact amax --mass 9.109e-31 --charge 1.602e-19
//   radreact sweep --config scenario.json --key field.width --values 0.1,0.05
//
// Exit status: 0 completed, 1 config error, 2 run-away, 3 step failure or
// domain error.

#include <algorithm>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "radreact/scenario.hpp"
#include "radreact/units.hpp"

namespace {

constexpr int exit_config_error = 1;

int simulate(const std::string& config_path)
{
    const radreact::ScenarioConfig cfg = radreact::load_scenario(config_path);
    const radreact::ScenarioResult result = radreact::run_scenario(cfg);
    radreact::write_output(result.trajectory, cfg.output);
    std::cout << radreact::summary_line(result) << '\n';
    if (!result.trajectory.terminated_by.message.empty()) {
        std::cerr << "radreact: " << result.trajectory.terminated_by.message << '\n';
    }
    return result.exit_status;
}

int amax(const std::string& particle, double mass, double charge)
{
    if (!particle.empty()) {
        if (particle != "electron") {
            throw radreact::ConfigError("--particle: unknown particle '" + particle + "'");
        }
        mass = radreact::si::electron_mass;
        charge = radreact::si::elementary_charge;
    }
    if (!(mass > 0.0)) {
        throw radreact::ConfigError("--mass: must be positive");
    }
    std::cout << radreact::format_double(radreact::si::max_acceleration(mass, charge)) << '\n';
    return 0;
}

int sweep(const std::string& config_path, const std::string& key, const std::vector<double>& values)
{
    const auto base = radreact::read_json_file(config_path);
    const auto entries = radreact::run_sweep(base, key, values, radreact::sweep_thread_count());
    int worst = 0;
    for (const auto& e : entries) {
        std::cout << key << '=' << radreact::format_double(e.value) << " terminated_by=" << e.terminated_by
                  << " output=" << e.output.string() << '\n';
        worst = std::max(worst, e.exit_status);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Charged-particle dynamics with radiation reaction"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "Run one scenario file");
    sim->add_option("--config", config_path, "Scenario JSON")->required();

    std::string particle;
    double mass = 0.0;
    double charge = 0.0;
    auto* am = app.add_subcommand("amax", "Print the maximal acceleration in m/s^2");
    auto* particle_opt = am->add_option("--particle", particle, "Named particle (electron)");
    auto* mass_opt = am->add_option("--mass", mass, "Mass in kg");
    auto* charge_opt = am->add_option("--charge", charge, "Charge in C");
    particle_opt->excludes(mass_opt)->excludes(charge_opt);
    mass_opt->needs(charge_opt);
    charge_opt->needs(mass_opt);

    std::string sweep_config;
    std::string key;
    std::vector<double> values;
    auto* sw = app.add_subcommand("sweep", "Run a scenario once per value of a numeric key");
    sw->add_option("--config", sweep_config, "Scenario JSON")->required();
    sw->add_option("--key", key, "Dot path of the numeric field")->required();
    sw->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config_error;
    }

    try {
        if (*sim) {
            return simulate(config_path);
        }
        if (*am) {
            if (particle.empty() && mass_opt->count() == 0) {
                throw radreact::ConfigError("amax: give --particle or --mass and --charge");
            }
            return amax(particle, mass, charge);
        }
        return sweep(sweep_config, key, values);
    } catch (const radreact::ConfigError& e) {
        std::cerr << "radreact: config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "radreact: " << e.what() << '\n';
        return 3;
    }
}
