#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gpckit/config.hpp"
#include "gpckit/errors.hpp"
#include "gpckit/io.hpp"
#include "gpckit/roots.hpp"
#include "gpckit/sim.hpp"
#include "gpckit/stability.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNoStableHorizon = 3;
constexpr int kExitNumericalBlowup = 4;

// Range syntax: "start:step:stop", "start:stop" (step 1) or a single value.
template <typename T>
std::vector<T> parse_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(std::stod(item));
    }
    double start = 0.0, step = 1.0, stop = 0.0;
    if (parts.size() == 1) {
        start = stop = parts[0];
    } else if (parts.size() == 2) {
        start = parts[0];
        stop = parts[1];
    } else if (parts.size() == 3) {
        start = parts[0];
        step = parts[1];
        stop = parts[2];
    } else {
        throw gpckit::ConfigError("bad range '" + text + "' (expected start[:step]:stop)");
    }
    if (!(step > 0.0)) throw gpckit::ConfigError("range step must be positive in '" + text + "'");
    std::vector<T> out;
    for (double v = start; v <= stop + 1e-9 * step; v += step) {
        out.push_back(static_cast<T>(v));
    }
    if (out.empty()) throw gpckit::ConfigError("empty range '" + text + "'");
    return out;
}

std::string poly_to_string(const gpckit::Polynomial& p) {
    std::ostringstream out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i > 0) out << (p[static_cast<std::size_t>(i)] < 0.0 ? " - " : " + ");
        const double c = i == 0 ? p[0] : std::abs(p[static_cast<std::size_t>(i)]);
        out << gpckit::format_number(c);
        if (i > 0) out << " z^-" << i;
    }
    return out.str();
}

int cmd_synthesize(const gpckit::ConfigFile& cfg) {
    using namespace gpckit;
    const DiscreteTf plant = discrete_plant(cfg.converter, cfg.discretization);
    const GpcSynthesis syn = synthesize(plant, cfg.gpc);
    const StabilityReport rep = assess(plant, syn, cfg.margin);

    std::ostringstream out;
    out << "gpckit synthesis report\n";
    out << "method: " << to_string(cfg.discretization) << "\n";
    if (syn.extra_model_delay) {
        out << "note: biproper numerator shifted into the u(k-1) slot "
               "(one extra sample of model delay)\n";
    }
    out << "A(z^-1): " << poly_to_string(plant.a) << "\n";
    out << "B(z^-1) acting on u(k-1): " << poly_to_string(syn.b_model) << "\n";
    out << "D(z^-1) closed-loop: " << poly_to_string(rep.char_poly) << "\n";
    out << "K:";
    for (int j = 0; j < syn.k_row.size(); ++j) out << ' ' << format_number(syn.k_row(j));
    out << "\n";
    for (std::size_t j = 0; j < syn.f_polys.size(); ++j) {
        out << "F_" << (j + 1) << ": " << poly_to_string(syn.f_polys[j]) << "\n";
    }
    for (std::size_t j = 0; j < syn.gprime_polys.size(); ++j) {
        out << "Gp_" << (j + 1) << ": " << poly_to_string(syn.gprime_polys[j]) << "\n";
    }
    out << "poles (" << rep.poles.size() << "):\n";
    for (const auto& p : rep.poles) {
        out << "  " << format_number(p.real()) << (p.imag() < 0.0 ? " - " : " + ")
            << format_number(std::abs(p.imag())) << "i  |z| = " << format_number(std::abs(p))
            << "\n";
    }
    out << "max_modulus: " << format_number(rep.max_modulus) << "\n";
    out << "stable: " << (rep.stable ? "true" : "false") << "\n";

    const std::string path = cfg.output_dir + "/report.txt";
    atomic_write(path, out.str());
    std::cout << out.str();
    std::cout << "report written to " << path << "\n";
    return kExitOk;
}

int cmd_min_horizon(const gpckit::ConfigFile& cfg, int p_max,
                    const std::optional<std::string>& corners) {
    using namespace gpckit;
    int p_min = 0;
    if (corners) {
        std::vector<double> c;
        std::stringstream ss(*corners);
        std::string item;
        while (std::getline(ss, item, ',')) c.push_back(std::stod(item));
        if (c.size() != 4) {
            throw ConfigError("--corners expects rmin,rmax,vmin,vmax");
        }
        p_min = robust_horizon(cfg.converter, c[0], c[1], c[2], c[3], cfg.gpc.lambda_weight,
                               p_max, cfg.discretization, cfg.margin);
    } else {
        p_min = min_horizon(cfg.converter, cfg.gpc.lambda_weight, p_max, cfg.discretization,
                            cfg.margin);
    }

    // per-P pole dump over the scanned range
    SweepGrid grid;
    for (int P = 1; P <= p_min; ++P) grid.horizons.push_back(P);
    grid.lambdas = {cfg.gpc.lambda_weight};
    grid.loads = {cfg.converter.r};
    grid.vrefs = {cfg.converter.vo_ref};
    const auto records = sweep(cfg.converter, grid, cfg.discretization, cfg.margin);
    atomic_write(cfg.output_dir + "/min_horizon_poles.csv", pole_csv(records));

    std::cout << p_min << "\n";
    return kExitOk;
}

int cmd_sweep(const gpckit::ConfigFile& cfg, const std::optional<std::string>& p_axis,
              const std::optional<std::string>& lambda_axis,
              const std::optional<std::string>& r_axis,
              const std::optional<std::string>& vref_axis) {
    using namespace gpckit;
    if (!p_axis && !lambda_axis && !r_axis && !vref_axis) {
        throw ConfigError("sweep: provide at least one axis (--p/--lambda/--r/--vref)");
    }
    SweepGrid grid;
    grid.horizons = p_axis ? parse_range<int>(*p_axis) : std::vector<int>{cfg.gpc.horizon_p};
    grid.lambdas = lambda_axis ? parse_range<double>(*lambda_axis)
                               : std::vector<double>{cfg.gpc.lambda_weight};
    grid.loads = r_axis ? parse_range<double>(*r_axis) : std::vector<double>{cfg.converter.r};
    grid.vrefs =
        vref_axis ? parse_range<double>(*vref_axis) : std::vector<double>{cfg.converter.vo_ref};

    const auto records = sweep(cfg.converter, grid, cfg.discretization, cfg.margin);
    atomic_write(cfg.output_dir + "/sweep_poles.csv", pole_csv(records));
    atomic_write(cfg.output_dir + "/sweep_summary.csv", summary_csv(records));
    std::cout << records.size() << " grid points written to " << cfg.output_dir << "\n";
    return kExitOk;
}

int cmd_simulate(const gpckit::ConfigFile& cfg, const std::string& scenario_path) {
    using namespace gpckit;
    const Scenario scn = load_scenario(scenario_path);
    const SimTrace trace = simulate(cfg.converter, cfg.gpc, scn, cfg.discretization);
    const double ref_final = trace.ref.empty() ? cfg.converter.vo_ref : trace.ref.back();
    const SimMetrics m = metrics(trace, ref_final);

    atomic_write(cfg.output_dir + "/trace.csv", trace_csv(trace));
    atomic_write(cfg.output_dir + "/metrics.json", metrics_json(m, trace, scn.note));
    atomic_write(cfg.output_dir + "/metrics.txt", metrics_text(m));
    std::cout << metrics_text(m);

    return trace.blown_up ? kExitNumericalBlowup : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GPC horizon design and simulation toolkit for DC/DC boost converters"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::optional<std::string> method_override;
    std::optional<double> margin_override;
    std::optional<std::string> out_override;
    bool dump = false;

    app.add_option("--config", config_path, "config JSON path")->required();
    app.add_option("--method", method_override, "discretization override (tustin|zoh)");
    app.add_option("--margin", margin_override, "stability margin override");
    app.add_option("--out", out_override, "output directory override");
    app.add_flag("--dump-config", dump, "print the parsed config as JSON and exit");

    auto* syn_cmd = app.add_subcommand("synthesize", "synthesize the controller and report");

    auto* minh_cmd = app.add_subcommand("min-horizon", "smallest stable prediction horizon");
    int p_max = 40;
    std::optional<std::string> corners;
    minh_cmd->add_option("--p-max", p_max, "largest horizon to scan");
    minh_cmd->add_option("--corners", corners, "rmin,rmax,vmin,vmax worst-case design");

    auto* sweep_cmd = app.add_subcommand("sweep", "stability over a parameter grid");
    std::optional<std::string> p_axis, lambda_axis, r_axis, vref_axis;
    sweep_cmd->add_option("--p", p_axis, "horizon axis start[:step]:stop");
    sweep_cmd->add_option("--lambda", lambda_axis, "lambda axis");
    sweep_cmd->add_option("--r", r_axis, "load axis (ohm)");
    sweep_cmd->add_option("--vref", vref_axis, "reference axis (V)");

    auto* sim_cmd = app.add_subcommand("simulate", "closed-loop time-domain simulation");
    std::string scenario_path;
    sim_cmd->add_option("--scenario", scenario_path, "scenario JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        gpckit::ConfigFile cfg = gpckit::load_config(config_path);
        if (method_override) {
            cfg.discretization = gpckit::discretization_from_string(*method_override);
        }
        if (margin_override) cfg.margin = *margin_override;
        if (out_override) cfg.output_dir = *out_override;
        cfg.validate();

        if (dump) {
            std::cout << gpckit::dump_config(cfg);
            return kExitOk;
        }
        if (syn_cmd->parsed()) return cmd_synthesize(cfg);
        if (minh_cmd->parsed()) return cmd_min_horizon(cfg, p_max, corners);
        if (sweep_cmd->parsed()) {
            return cmd_sweep(cfg, p_axis, lambda_axis, r_axis, vref_axis);
        }
        if (sim_cmd->parsed()) return cmd_simulate(cfg, scenario_path);
        std::cerr << app.help();
        return kExitInputError;
    } catch (const gpckit::NoStableHorizon& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoStableHorizon;
    } catch (const gpckit::CornerDominanceViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoStableHorizon;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
