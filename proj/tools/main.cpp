#include "fourwell/analytic.hpp"
#include "fourwell/bethe.hpp"
#include "fourwell/dynamics.hpp"
#include "fourwell/model.hpp"
#include "fourwell/physparams.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fourwell;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitToleranceBreach = 2;
constexpr int kExitConfigError = 64;

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0.0, stop = 0.0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> stop >> c2 >> steps) || c1 != ':' || c2 != ':' || !in.eof())
        throw ConfigError("grid must be start:stop:steps, got '" + spec + "'");
    if (steps < 1) throw ConfigError("grid needs at least one point");
    if (steps > 1 && stop <= start) throw ConfigError("grid must be strictly increasing");
    std::vector<double> out;
    for (int i = 0; i < steps; ++i)
        out.push_back(steps == 1 ? start : start + (stop - start) * i / (steps - 1));
    return out;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << body;
}

// ---- model options shared by dynamics/sensitivity/verify -------------------

struct ModelOptions {
    int n = 16;
    double u = 6.01;       // Hz
    double j = 8.16;       // Hz
    double zeta = 0.0;     // Hz
    double zeta_frac = 0.0;
    bool zeta_set = false;
    bool frac_set = false;

    ModelParams resolve() const {
        if (zeta_set && frac_set)
            throw ConfigError("give either --zeta or --zeta-frac, not both");
        ModelParams p{u, j, 0.0, n};
        if (zeta_set) {
            p.zeta = zeta;
        } else {
            const ResonantConstants rc = resonant_constants(p);
            p.zeta = zeta_frac * rc.zeta_max;
        }
        return p;
    }
};

void add_model_options(CLI::App* cmd, ModelOptions& opt) {
    cmd->add_option("--n", opt.n, "total particle number")->check(CLI::Range(1, 24));
    cmd->add_option("--u", opt.u, "interaction U/h in Hz");
    cmd->add_option("--j", opt.j, "hopping J/h in Hz");
    auto* zeta = cmd->add_option("--zeta", opt.zeta, "rotation coupling zeta/h in Hz");
    auto* frac = cmd->add_option("--zeta-frac", opt.zeta_frac, "zeta as a fraction of zeta_max");
    zeta->excludes(frac);
    frac->excludes(zeta);
    cmd->callback([zeta, frac, &opt] {
        opt.zeta_set = zeta->count() > 0;
        opt.frac_set = frac->count() > 0;
    });
}

ordered_json model_json(const ModelParams& p, const ModelOptions& opt) {
    const ResonantConstants rc = resonant_constants(p);
    ordered_json meta;
    meta["n"] = p.total_n;
    meta["u_hz"] = p.u;
    meta["j_hz"] = p.j;
    meta["j_source"] = "input (published presets: 8.16 figure, 8.19 table)";
    meta["zeta_hz"] = p.zeta;
    meta["zeta_frac_of_max"] = p.zeta / rc.zeta_max;
    meta["zeta_given_as"] = opt.zeta_set ? "absolute" : "fraction";
    meta["xi_hz"] = rc.xi;
    meta["tau_s"] = rc.tau;
    meta["zeta_max_hz"] = rc.zeta_max;
    meta["resonance_ratio"] = rc.resonance_ratio;
    return meta;
}

// ---- dynamics ---------------------------------------------------------------

int run_dynamics(const ModelOptions& opt, const std::string& grid_spec,
                 const std::string& units, const std::string& out_path,
                 const std::string& preset) {
    const ModelParams p = opt.resolve();
    const ResonantConstants rc = resonant_constants(p);
    std::vector<double> times = parse_grid(grid_spec);
    if (units == "tau")
        for (double& t : times) t *= rc.tau;
    else if (units != "s")
        throw ConfigError("units must be 's' or 'tau'");

    const FockBasis basis = enumerate_basis(p.total_n);
    const QuantumState psi0 = fock_state(basis, {p.total_n, 0, 0, 0});
    const TrajectoryTable table = trajectory(p, times, psi0);
    const std::vector<double> grid = parse_grid(grid_spec);

    std::ostringstream csv;
    csv << "# fourwell.dynamics.v1\n";
    csv << "t,n1_frac,n2_frac,n3_frac,n4_frac,n1_analytic,n2_analytic,n3_analytic,"
           "entropy,q2,q3,current\n";
    const double n = p.total_n;
    for (size_t i = 0; i < times.size(); ++i) {
        const auto pops = populations_analytic(p, times[i]);
        csv << fmt12(grid[i]);
        for (int k = 0; k < 4; ++k) csv << ',' << fmt12(table.populations[i][size_t(k)] / n);
        for (int k = 0; k < 3; ++k) csv << ',' << fmt12(pops[size_t(k)] / n);
        csv << ',' << fmt12(table.entropy[i]) << ',' << fmt12(table.q2[i]) << ','
            << fmt12(table.q3[i]) << ',' << fmt12(table.current[i]) << '\n';
    }
    write_file(out_path, csv.str());

    ordered_json meta = model_json(p, opt);
    meta["schema"] = "fourwell.dynamics.v1";
    meta["preset"] = preset.empty() ? "none" : preset;
    meta["grid"] = grid_spec;
    meta["units"] = units;
    write_file(out_path + ".json", meta.dump(2) + "\n");
    std::cout << "wrote " << out_path << " (" << times.size() << " rows)\n";
    return 0;
}

// ---- sensitivity ------------------------------------------------------------

int run_sensitivity(const ModelOptions& opt, const std::string& grid_spec, bool numeric,
                    const std::vector<int>& n_sweep, const std::string& out_path,
                    const std::string& preset) {
    if (opt.zeta_set || opt.frac_set)
        throw ConfigError("sensitivity sweeps zeta itself; set the range with --grid");
    ModelOptions base = opt;
    const ModelParams p = base.resolve();
    const ResonantConstants rc = resonant_constants(p);

    std::ostringstream csv;
    ordered_json meta = model_json(p, base);
    meta["preset"] = preset.empty() ? "none" : preset;

    if (!n_sweep.empty()) {
        const ScalingFit fit = scaling_exponent(p, n_sweep);
        csv << "# fourwell.sensitivity-scaling.v1\n";
        csv << "n,delta_alpha\n";
        for (size_t i = 0; i < fit.n_values.size(); ++i)
            csv << fit.n_values[i] << ',' << fmt12(fit.delta_alpha[i]) << '\n';
        csv << "# slope_loglog = " << fmt12(fit.slope) << '\n';
        csv << "# resonance_ok = " << (fit.resonance_ok ? "true" : "false") << '\n';
        meta["schema"] = "fourwell.sensitivity-scaling.v1";
        meta["slope_loglog"] = fit.slope;
        meta["resonance_ok"] = fit.resonance_ok;
    } else {
        const std::vector<double> fracs = parse_grid(grid_spec);
        for (double f : fracs)
            if (f < 0.0 || f > 1.0)
                throw ConfigError("sensitivity sweep must stay within [0, 1] of zeta_max");
        std::vector<double> zetas;
        for (double f : fracs) zetas.push_back(f * rc.zeta_max);
        const SensitivityCurve curve = sensitivity_curve(p, zetas);
        std::vector<double> numeric_col;
        if (numeric) numeric_col = delta_alpha_numeric_sweep(p, zetas);
        csv << "# fourwell.sensitivity.v1\n";
        csv << "zeta_over_J,imbalance_mean,imbalance_std,delta_alpha_analytic,"
               "delta_alpha_numeric\n";
        for (size_t i = 0; i < zetas.size(); ++i) {
            csv << fmt12(zetas[i] / p.j) << ',' << fmt12(curve.mean[i]) << ','
                << fmt12(curve.stddev[i]) << ',' << fmt12(curve.delta_alpha[i]) << ','
                << (numeric ? fmt12(numeric_col[i]) : std::string("nan")) << '\n';
        }
        meta["schema"] = "fourwell.sensitivity.v1";
        meta["numeric_column"] = numeric;
    }
    write_file(out_path, csv.str());
    write_file(out_path + ".json", meta.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

// ---- params -----------------------------------------------------------------

int run_params(const std::string& out_path) {
    const Dy164Preset preset = preset_dy164();
    std::ostringstream csv;
    csv << "# fourwell.params.v1\n";
    csv << "name,symbol,computed,paper,unit,rel_dev\n";
    for (const ParamRow& r : preset.table)
        csv << r.name << ',' << r.symbol << ',' << fmt12(r.computed) << ','
            << fmt12(r.reference) << ',' << r.unit << ',' << fmt12(r.rel_dev) << '\n';
    csv << "# omega_max row uses the published couplings U/h=6.01 Hz, J/h=8.19 Hz at N=16 "
           "with the computed W\n";
    write_file(out_path, csv.str());

    // key = value view of the same table
    for (const ParamRow& r : preset.table)
        std::cout << r.name << " = " << fmt12(r.computed) << " " << r.unit << "\n";
    std::cout << "xi = " << fmt12(preset.derived.xi) << " Hz\n";
    std::cout << "tau = " << fmt12(preset.derived.tau) << " s\n";
    std::cout << "w = " << fmt12(preset.derived.w) << "\n";
    std::cout << "q = " << fmt12(preset.derived.q) << "\n";

    bool breach = false;
    for (const ParamRow& r : preset.table) {
        if (r.tolerance > 0.0 && r.rel_dev > r.tolerance) {
            std::cerr << "tolerance breach: " << r.name << " computed " << fmt12(r.computed)
                      << " " << r.unit << " vs " << fmt12(r.reference) << " (rel dev "
                      << fmt12(r.rel_dev) << " > " << fmt12(r.tolerance) << ")\n";
            breach = true;
        }
    }
    std::cout << "wrote " << out_path << "\n";
    return breach ? kExitToleranceBreach : 0;
}

// ---- verify -----------------------------------------------------------------

SectorOperator mutated_current(const FockBasis& basis) {
    // test hook: flips the 1 <-> 2 ring term, breaking the charge algebra
    const Complex c{0.0, 1.0 / std::sqrt(3.0)};
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(1, 0) = -c;
    m(0, 1) = c;
    m(2, 1) = c;
    m(1, 2) = -c;
    m(0, 2) = c;
    m(2, 0) = -c;
    return build_one_body(basis, m);
}

int run_verify(const ModelOptions& opt, bool mutate) {
    const ModelParams base = opt.resolve();
    const ResonantConstants rc = resonant_constants(base);
    if (std::abs(base.zeta) > rc.zeta_max)
        throw ConfigError("verify: zeta beyond zeta_max is outside the operating range");
    bool all_pass = true;
    auto report = [&](const std::string& group, bool pass, const std::string& detail) {
        std::cout << "group=" << group << " status=" << (pass ? "pass" : "fail")
                  << " detail=" << detail << "\n";
        if (!pass) all_pass = false;
    };

    {  // conserved charges on random parameter draws
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> coupling(0.2, 3.0), unit(0.0, 1.0);
        std::uniform_int_distribution<int> small_n(2, 10);
        double worst = 0.0;
        for (int draw = 0; draw < 20; ++draw) {
            const int n = small_n(rng);
            const ModelParams p{coupling(rng), coupling(rng), (2 * unit(rng) - 1) * coupling(rng),
                                n};
            const FockBasis basis = enumerate_basis(n);
            const SectorOperator cur = mutate ? mutated_current(basis) : current(basis);
            SectorOperator h = reduced_hamiltonian({p.u, p.j, 0.0, n}, basis);
            h.matrix -= p.zeta * cur.matrix;
            const SectorOperator q2 = charge(2, basis), q3 = charge(3, basis);
            worst = std::max({worst, commutator_norm(h, q2), commutator_norm(h, q3),
                              commutator_norm(h, cur), commutator_norm(q2, q3),
                              (cur.matrix - (q3.matrix - q2.matrix)).norm()});
        }
        report("charges", worst < 1e-10, "max_deviation=" + fmt12(worst));
    }

    {  // superintegrability at zeta = 0, broken by rotation
        const FockBasis basis = enumerate_basis(base.total_n);
        const SectorOperator h0 =
            reduced_hamiltonian({base.u, base.j, 0.0, base.total_n}, basis);
        double worst = 0.0;
        for (int j = 2; j <= 3; ++j)
            for (int k = 2; k <= 3; ++k)
                worst = std::max(worst, commutator_norm(h0, collective_bilinear(j, k, basis)));
        const SectorOperator hrot =
            reduced_hamiltonian({base.u, base.j, base.j / 10.0, base.total_n}, basis);
        const double broken = commutator_norm(hrot, collective_bilinear(2, 3, basis));
        const bool pass = worst < 1e-10 && broken > 1e-3 * hrot.matrix.norm();
        report("superintegrability",
               pass, "max_conserved=" + fmt12(worst) + " broken_norm=" + fmt12(broken));
    }

    {  // unitarity and population closure over long evolution
        const FockBasis basis = enumerate_basis(base.total_n);
        const EvolutionPlan plan = make_plan(reduced_hamiltonian(base, basis));
        const QuantumState psi0 = fock_state(basis, {base.total_n, 0, 0, 0});
        double drift = 0.0, closure = 0.0;
        for (int i = 0; i <= 10; ++i) {
            const QuantumState psi = evolve(plan, psi0, 10.0 * rc.tau * i / 10.0);
            drift = std::max(drift, std::abs(psi.norm() - 1.0));
            const Eigen::VectorXd w = psi.amplitudes.cwiseAbs2();
            double total = 0.0;
            for (int b = 0; b < basis.size(); ++b) total += w(b) * basis.state(b).total();
            closure = std::max(closure, std::abs(total - base.total_n));
        }
        report("unitarity", drift < 1e-10 && closure < 1e-8,
               "norm_drift=" + fmt12(drift) + " closure=" + fmt12(closure));
    }

    {  // closed-form oracle vs exact evolution
        const FockBasis basis = enumerate_basis(base.total_n);
        const EvolutionPlan plan = make_plan(reduced_hamiltonian(base, basis));
        const QuantumState psi0 = fock_state(basis, {base.total_n, 0, 0, 0});
        double min_fid = 1.0, max_pop_dev = 0.0;
        for (double t : {rc.tau / 2.0, rc.tau}) {
            const QuantumState exact = evolve(plan, psi0, t);
            min_fid = std::min(min_fid, fidelity(coherent_state(base, t, basis), exact));
        }
        for (int i = 0; i <= 20; ++i) {
            const double t = 2.0 * rc.tau * i / 20.0;
            const QuantumState exact = evolve(plan, psi0, t);
            const Eigen::VectorXd w = exact.amplitudes.cwiseAbs2();
            const auto pops = populations_analytic(base, t);
            for (int k = 0; k < 3; ++k) {
                double ex = 0.0;
                for (int b = 0; b < basis.size(); ++b) ex += w(b) * basis.state(b)[k];
                max_pop_dev = std::max(max_pop_dev, std::abs(ex - pops[size_t(k)]) / base.total_n);
            }
        }
        report("oracle_equivalence", min_fid >= 0.95 && max_pop_dev <= 0.05,
               "min_fidelity=" + fmt12(min_fid) + " max_pop_dev=" + fmt12(max_pop_dev));
    }

    {  // overlap-tensor unitarity
        double worst = 0.0;
        for (int total = 1; total <= 10; ++total) {
            std::vector<std::pair<int, int>> rs;
            std::vector<std::array<int, 3>> abc;
            for (int r = 0; r <= total; ++r)
                for (int s = 0; r + s <= total; ++s) rs.push_back({r, s});
            for (int a = 0; a <= total; ++a)
                for (int b = 0; a + b <= total; ++b) abc.push_back({a, b, total - a - b});
            Eigen::MatrixXcd u(rs.size(), abc.size());
            for (size_t i = 0; i < rs.size(); ++i)
                for (size_t k = 0; k < abc.size(); ++k)
                    u(i, k) =
                        overlap_b(rs[i].first, rs[i].second, abc[k][0], abc[k][1], abc[k][2]);
            worst = std::max(worst,
                             (u.adjoint() * u -
                              Eigen::MatrixXcd::Identity(Eigen::Index(abc.size()),
                                                         Eigen::Index(abc.size())))
                                 .cwiseAbs()
                                 .maxCoeff());
        }
        report("b_tensor_unitarity", worst <= 1e-10, "max_deviation=" + fmt12(worst));
    }

    {  // entanglement entropy decreases with rotation at readout
        const FockBasis basis = enumerate_basis(base.total_n);
        const QuantumState psi0 = fock_state(basis, {base.total_n, 0, 0, 0});
        const RotationFamily family(base, basis);
        double s[3];
        const double fracs[3] = {0.0, 0.5, 1.0};
        for (int i = 0; i < 3; ++i) {
            const QuantumState psi = evolve(family.plan(fracs[i] * rc.zeta_max), psi0, rc.tau);
            s[i] = von_neumann_entropy(reduced_density_mode3(psi));
        }
        report("entropy_monotonicity", s[0] > s[1] && s[1] > s[2],
               "S=" + fmt12(s[0]) + "," + fmt12(s[1]) + "," + fmt12(s[2]));
    }

    return all_pass ? 0 : kExitVerifyFailure;
}

// ---- presets ----------------------------------------------------------------

struct PresetSpec {
    std::string subcommand;
    double zeta_frac = 0.0;
    std::string grid;
    std::string units = "tau";
};

const std::map<std::string, PresetSpec> kPresets = {
    {"fig2-top", {"dynamics", 0.0, "0:2:201", "tau"}},
    {"fig2-mid", {"dynamics", 0.3, "0:2:201", "tau"}},
    {"fig2-bottom", {"dynamics", 1.0, "0:2:201", "tau"}},
    {"fig3", {"sensitivity", 0.0, "0:1:41", "tau"}},
    {"dy164", {"params", 0.0, "", ""}},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-well dipolar rotation-sensor simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an ini file");

    ModelOptions dyn_opt, sens_opt, verify_opt;
    std::string dyn_grid = "0:2:201", dyn_units = "tau", dyn_out = "dynamics.csv";
    std::string sens_grid = "0:1:41", sens_out = "sensitivity.csv";
    std::string params_out = "params.csv";
    std::string dyn_preset, sens_preset, params_preset = "dy164";
    std::vector<int> n_sweep;
    bool numeric = true, mutate = false;

    CLI::App* dynamics_cmd = app.add_subcommand("dynamics", "population/entropy trajectory CSV");
    add_model_options(dynamics_cmd, dyn_opt);
    dynamics_cmd->add_option("--grid", dyn_grid, "time grid start:stop:steps");
    dynamics_cmd->add_option("--units", dyn_units, "time units: s or tau")
        ->check(CLI::IsMember({"s", "tau"}));
    dynamics_cmd->add_option("--out", dyn_out, "output CSV path");
    dynamics_cmd->add_option("--preset", dyn_preset, "fig2-top | fig2-mid | fig2-bottom")
        ->check(CLI::IsMember({"fig2-top", "fig2-mid", "fig2-bottom"}));

    CLI::App* sensitivity_cmd =
        app.add_subcommand("sensitivity", "readout sensitivity over the operating range");
    add_model_options(sensitivity_cmd, sens_opt);
    sensitivity_cmd->add_option("--grid", sens_grid,
                                "zeta grid start:stop:steps, as fractions of zeta_max");
    sensitivity_cmd->add_option("--out", sens_out, "output CSV path");
    sensitivity_cmd->add_flag("--numeric,!--no-numeric", numeric,
                              "include the exact-evolution sensitivity column");
    sensitivity_cmd->add_option("--n-sweep", n_sweep,
                                "particle numbers for the scaling fit (replaces the zeta sweep)");
    sensitivity_cmd->add_option("--preset", sens_preset, "fig3")
        ->check(CLI::IsMember({"fig3"}));

    CLI::App* params_cmd = app.add_subcommand("params", "species/lattice parameter table");
    params_cmd->add_option("--out", params_out, "output CSV path");
    params_cmd->add_option("--preset", params_preset, "dy164")->check(CLI::IsMember({"dy164"}));

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    add_model_options(verify_cmd, verify_opt);
    verify_cmd->add_flag("--mutate-current", mutate, "test hook: corrupt the current operator");
    verify_opt.n = 8;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (dynamics_cmd->parsed()) {
            if (!dyn_preset.empty()) {
                const PresetSpec& spec = kPresets.at(dyn_preset);
                if (dynamics_cmd->count("--zeta-frac") == 0 &&
                    dynamics_cmd->count("--zeta") == 0) {
                    dyn_opt.zeta_frac = spec.zeta_frac;
                    dyn_opt.frac_set = true;
                    dyn_opt.zeta_set = false;
                }
                if (dynamics_cmd->count("--grid") == 0) dyn_grid = spec.grid;
                if (dynamics_cmd->count("--units") == 0) dyn_units = spec.units;
            }
            return run_dynamics(dyn_opt, dyn_grid, dyn_units, dyn_out, dyn_preset);
        }
        if (sensitivity_cmd->parsed()) {
            if (!sens_preset.empty() && sensitivity_cmd->count("--grid") == 0)
                sens_grid = kPresets.at(sens_preset).grid;
            return run_sensitivity(sens_opt, sens_grid, numeric, n_sweep, sens_out, sens_preset);
        }
        if (params_cmd->parsed()) return run_params(params_out);
        if (verify_cmd->parsed()) return run_verify(verify_opt, mutate);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return 0;
}
