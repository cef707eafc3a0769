// spinchan.cpp — command-line front end: dispatch simulations, emit CSV/JSON artifacts

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "spinchan/analysis.hpp"
#include "spinchan/channel.hpp"
#include "spinchan/dynamics.hpp"
#include "spinchan/io.hpp"
#include "spinchan/observables.hpp"
#include "spinchan/spectral.hpp"
#include "spinchan/steady.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spinchan;

namespace {

struct Options {
    std::string family = "uniform";
    int n = 0;
    double j = 1.0;
    double lambda = 1.0;
    double j0 = 0.01;
    double gamma = 0.0;
    double field = 0.0;
    int l1 = 1;
    int l2 = 1;
    int arms = 2;
    double t0 = 0.0;
    double t1 = 10.0;
    int points = 201;
    int n_min = 2;
    int n_max = 10;
    std::string quantity = "F";
    std::string param = "j0";
    std::vector<std::string> obs = {"F"};
    std::vector<double> grid;
    std::vector<int> sites = {1};
    std::string out;
    std::string config;
};

// ------------------------------ option plumbing -------------------------------

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--family", o.family,
                    "channel family: uniform|modulated|modified-a|modified-b|multiarm");
    cmd->add_option("--n", o.n, "number of chain sites");
    cmd->add_option("--j", o.j, "uniform coupling strength");
    cmd->add_option("--lambda", o.lambda, "modulated coupling scale");
    cmd->add_option("--j0", o.j0, "end-bond coupling of the modified families");
    cmd->add_option("--gamma", o.gamma, "intrinsic decoherence rate");
    cmd->add_option("--field", o.field, "uniform magnetic field");
    cmd->add_option("--l1", o.l1, "multiarm: input arm length");
    cmd->add_option("--l2", o.l2, "multiarm: output arm length");
    cmd->add_option("--arms", o.arms, "multiarm: number of output arms");
    cmd->add_option("--out", o.out, "output directory (default: $SPINCHAN_OUT_DIR or .)");
    cmd->add_option("--config", o.config, "JSON config file; explicit flags take precedence");
}

void add_time_grid(CLI::App* cmd, Options& o) {
    cmd->add_option("--t0", o.t0, "start of the time grid");
    cmd->add_option("--t1", o.t1, "end of the time grid");
    cmd->add_option("--points", o.points, "number of grid points (inclusive endpoints)");
}

// Overlay config-file values onto every option the user did not set explicitly.
void apply_config(CLI::App* cmd, Options& o) {
    if (o.config.empty()) {
        return;
    }
    std::ifstream in(o.config);
    if (!in) {
        throw std::invalid_argument("config: cannot open " + o.config);
    }
    json values;
    in >> values;

    const auto overlay = [&](const char* flag, const char* key, auto& target) {
        if (!values.contains(key)) {
            return;
        }
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        if (opt != nullptr && opt->count() > 0) {
            return;  // the command line wins
        }
        values.at(key).get_to(target);
    };
    overlay("--family", "family", o.family);
    overlay("--n", "n", o.n);
    overlay("--j", "j", o.j);
    overlay("--lambda", "lambda", o.lambda);
    overlay("--j0", "j0", o.j0);
    overlay("--gamma", "gamma", o.gamma);
    overlay("--field", "field", o.field);
    overlay("--l1", "l1", o.l1);
    overlay("--l2", "l2", o.l2);
    overlay("--arms", "arms", o.arms);
    overlay("--t0", "t0", o.t0);
    overlay("--t1", "t1", o.t1);
    overlay("--points", "points", o.points);
    overlay("--n-min", "n_min", o.n_min);
    overlay("--n-max", "n_max", o.n_max);
    overlay("--quantity", "quantity", o.quantity);
    overlay("--param", "param", o.param);
    overlay("--obs", "obs", o.obs);
    overlay("--grid", "grid", o.grid);
    overlay("--site", "site", o.sites);
    overlay("--out", "out", o.out);
}

fs::path out_dir(const Options& o) {
    if (!o.out.empty()) {
        return o.out;
    }
    if (const char* env = std::getenv("SPINCHAN_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

ChannelSpec build_channel(const Options& o) {
    const Family family = family_from_name(o.family);
    if (family != Family::Multiarm && o.n < 2) {
        throw std::invalid_argument("missing or invalid --n (need at least 2 sites)");
    }
    ChannelSpec spec;
    switch (family) {
        case Family::Uniform:
            spec = uniform_chain(o.n, o.j);
            break;
        case Family::Modulated:
            spec = modulated_chain(o.n, o.lambda);
            break;
        case Family::ModifiedA:
            spec = modified_chain_a(o.n, o.lambda, o.j0);
            break;
        case Family::ModifiedB:
            spec = modified_chain_b(o.n, o.j, o.j0);
            break;
        case Family::Multiarm:
            spec = multiarm(o.l1, o.l2, o.arms, o.lambda);
            break;
        default:
            throw std::invalid_argument("unsupported family: " + o.family);
    }
    return (o.field != 0.0) ? apply_field(spec, o.field) : spec;
}

std::vector<double> time_grid(const Options& o) {
    if (o.points < 2) {
        throw std::invalid_argument("time grid needs at least 2 points");
    }
    if (o.t0 < 0.0 || !(o.t1 > o.t0)) {
        throw std::invalid_argument("time grid needs t1 > t0 >= 0");
    }
    if (o.gamma < 0.0) {
        throw std::invalid_argument("gamma must be nonnegative");
    }
    std::vector<double> grid(static_cast<size_t>(o.points));
    for (int i = 0; i < o.points; ++i) {
        grid[static_cast<size_t>(i)] = o.t0 + (o.t1 - o.t0) * i / (o.points - 1);
    }
    return grid;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ------------------------------- observables ----------------------------------

struct ObsRequest {
    enum Kind { F, Fbar, Alpha, Pair, Amp } kind{F};
    int i{0};
    int j{0};
};

ObsRequest parse_observable(const std::string& token, int n_sites) {
    if (token == "F") {
        return {ObsRequest::F, 0, 0};
    }
    if (token == "Fbar") {
        return {ObsRequest::Fbar, 0, 0};
    }
    if (token == "alpha") {
        return {ObsRequest::Alpha, 0, 0};
    }
    int i = 0;
    int j = 0;
    int used = -1;
    if (std::sscanf(token.c_str(), "C_%d_%d%n", &i, &j, &used) == 2 &&
        used == static_cast<int>(token.size())) {
        if (i < 1 || j < 1 || i > n_sites || j > n_sites || i == j) {
            throw std::invalid_argument("evolve: bad site pair in '" + token + "'");
        }
        return {ObsRequest::Pair, i, j};
    }
    used = -1;
    if (std::sscanf(token.c_str(), "c_%d%n", &i, &used) == 1 &&
        used == static_cast<int>(token.size())) {
        if (i < 1 || i > n_sites) {
            throw std::invalid_argument("evolve: bad site in '" + token + "'");
        }
        return {ObsRequest::Amp, i, 0};
    }
    throw std::invalid_argument("evolve: unknown observable '" + token +
                                "' (expected F, Fbar, alpha, C_i_j, or c_i)");
}

// -------------------------------- subcommands ----------------------------------

int run_spectrum(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const ChannelSpec spec = build_channel(o);
    const Spectrum sp = diagonalize(build_hamiltonian(spec, Subspace::OneExcitation));
    const fs::path dir = out_dir(o);

    std::vector<std::vector<std::string>> energy_rows;
    for (int k = 0; k < sp.size(); ++k) {
        energy_rows.push_back({std::to_string(k + 1), format_number(sp.energies(k))});
    }
    write_csv(dir / "spectrum.csv", {"k", "energy"}, energy_rows);

    std::vector<std::string> header{"k"};
    std::vector<Eigen::VectorXd> populations;
    for (const int site : o.sites) {
        header.push_back("p_" + std::to_string(site));
        populations.push_back(eigenvector_population(sp, site));
    }
    std::vector<std::vector<std::string>> population_rows;
    for (int k = 0; k < sp.size(); ++k) {
        std::vector<std::string> row{std::to_string(k + 1)};
        for (const auto& p : populations) {
            row.push_back(format_number(p(k)));
        }
        population_rows.push_back(std::move(row));
    }
    write_csv(dir / "populations.csv", header, population_rows);

    const json config{{"command", "spectrum"}, {"channel", to_json(spec)}, {"sites", o.sites}};
    write_manifest(dir / "manifest.json", config, seconds_since(start),
                   {"spectrum.csv", "populations.csv"});
    return 0;
}

int run_evolve(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const ChannelSpec spec = build_channel(o);
    const std::vector<double> grid = time_grid(o);
    const Spectrum sp = diagonalize(build_hamiltonian(spec, Subspace::OneExcitation));

    std::vector<ObsRequest> requests;
    bool need_h1 = false;
    bool need_h01 = false;
    for (const std::string& token : o.obs) {
        const ObsRequest req = parse_observable(token, spec.n_sites);
        need_h1 = need_h1 || req.kind == ObsRequest::F || req.kind == ObsRequest::Pair ||
                  req.kind == ObsRequest::Amp;
        need_h01 = need_h01 || req.kind == ObsRequest::Fbar || req.kind == ObsRequest::Alpha;
        requests.push_back(req);
    }

    const StateH1 rho0 = site_state(spec.n_sites, 1);
    const PureInput input{1, M_PI / 2.0, 0.0};
    std::vector<std::vector<double>> rows;
    for (const double t : grid) {
        StateH1 st;
        StateH01 st01;
        if (need_h1) {
            st = evolve_h1(sp, rho0, o.gamma, t);
        }
        if (need_h01) {
            st01 = evolve_h01(sp, input, o.gamma, t);
        }
        std::vector<double> row{t};
        for (const ObsRequest& req : requests) {
            switch (req.kind) {
                case ObsRequest::F:
                    row.push_back(transfer_fidelity(st, spec.n_sites));
                    break;
                case ObsRequest::Fbar:
                    row.push_back(average_fidelity(st01, spec.n_sites).fidelity);
                    break;
                case ObsRequest::Alpha:
                    row.push_back(average_fidelity(st01, spec.n_sites).alpha);
                    break;
                case ObsRequest::Pair:
                    row.push_back(concurrence_fast(st, req.i, req.j));
                    break;
                case ObsRequest::Amp:
                    row.push_back(site_amplitude(st, req.i));
                    break;
            }
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::string> header{"t"};
    header.insert(header.end(), o.obs.begin(), o.obs.end());
    const fs::path dir = out_dir(o);
    write_csv(dir / "evolve.csv", header, rows);

    const json config{{"command", "evolve"},   {"channel", to_json(spec)},
                      {"gamma", o.gamma},      {"t0", o.t0},
                      {"t1", o.t1},            {"points", o.points},
                      {"observables", o.obs}};
    write_manifest(dir / "manifest.json", config, seconds_since(start), {"evolve.csv"});
    return 0;
}

int run_steady(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    if (o.n_min < 2 || o.n_max < o.n_min) {
        throw std::invalid_argument("steady: need 2 <= --n-min <= --n-max");
    }
    const Family family = family_from_name(o.family);
    if (family != Family::Uniform && family != Family::Modulated) {
        throw std::invalid_argument("steady: --family must be uniform or modulated");
    }
    const bool modulated = (family == Family::Modulated);
    if ((o.quantity == "Fbar" && modulated) ||
        ((o.quantity == "C_endpair" || o.quantity == "C_distribution") && !modulated)) {
        throw std::invalid_argument("steady: quantity " + o.quantity +
                                    " is not defined for family " + o.family);
    }

    std::vector<std::vector<std::string>> rows;
    for (int n = o.n_min; n <= o.n_max; ++n) {
        double formula = 0.0;
        double numeric = 0.0;
        if (o.quantity == "F") {
            formula = modulated ? steady_fidelity_modulated(n) : steady_fidelity_uniform(n);
            const ChannelSpec spec =
                modulated ? modulated_chain(n, o.lambda) : uniform_chain(n, o.j);
            const Spectrum sp = diagonalize(build_hamiltonian(spec, Subspace::OneExcitation));
            numeric = transfer_fidelity(numeric_steady_state(sp, site_state(n, 1)).state, n);
        } else if (o.quantity == "Fbar") {
            formula = steady_avg_fidelity_uniform(n);
            const Spectrum sp =
                diagonalize(build_hamiltonian(uniform_chain(n, o.j), Subspace::OneExcitation));
            numeric = steady_avg_fidelity_numeric(sp, 1, n);
        } else if (o.quantity == "C_endpair") {
            formula = steady_concurrence_endpair(n, 1.0);
            const Spectrum sp = diagonalize(
                build_hamiltonian(modulated_chain(n, o.lambda), Subspace::OneExcitation));
            Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(n);
            bell(0) = bell(1) = 1.0 / std::sqrt(2.0);
            numeric =
                concurrence_fast(numeric_steady_state(sp, pure_state_h1(bell)).state, 1, 2);
        } else if (o.quantity == "C_distribution") {
            formula = steady_concurrence_distribution(n);
            // A memory node is entangled with site 1 of an (n+1)-site chain
            // and read against the chain's far end.
            const ChannelSpec graph = attach_uncoupled_node(modulated_chain(n + 1, o.lambda));
            const Spectrum sp = diagonalize(build_hamiltonian(graph, Subspace::OneExcitation));
            Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(graph.n_sites);
            bell(0) = bell(graph.n_sites - 1) = 1.0 / std::sqrt(2.0);
            numeric = concurrence_fast(numeric_steady_state(sp, pure_state_h1(bell)).state,
                                       graph.n_sites, n + 1);
        } else {
            throw std::invalid_argument("steady: unknown quantity '" + o.quantity +
                                        "' (expected F, Fbar, C_endpair, or C_distribution)");
        }
        rows.push_back({std::to_string(n), format_number(formula), format_number(numeric),
                        format_number(std::abs(formula - numeric))});
    }

    const fs::path dir = out_dir(o);
    write_csv(dir / "steady.csv", {"N", "formula_value", "numeric_value", "abs_diff"}, rows);
    const json config{{"command", "steady"},   {"family", o.family},
                      {"quantity", o.quantity}, {"n_min", o.n_min},
                      {"n_max", o.n_max},       {"j", o.j},
                      {"lambda", o.lambda}};
    write_manifest(dir / "manifest.json", config, seconds_since(start), {"steady.csv"});
    return 0;
}

int run_sweep(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    SweepResult result;
    if (o.param == "j0") {
        std::vector<double> grid = o.grid;
        if (grid.empty()) {
            grid = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
        }
        const Family family = family_from_name(o.family);
        const double coupling = (family == Family::ModifiedA) ? o.lambda : o.j;
        result = sweep_j0(family, o.n, o.gamma, grid, coupling);
    } else if (o.param == "gamma") {
        const ChannelSpec spec = build_channel(o);
        std::vector<double> grid = o.grid;
        if (grid.empty()) {
            for (int i = 1; i <= 10; ++i) {
                grid.push_back(0.05 * i);
            }
        }
        result.parameter_name = "gamma";
        result.reference = spec;
        result.gamma = o.gamma;
        for (const double gamma : grid) {
            const MaxResult best = optimal_transfer_time(spec, gamma);
            result.grid.push_back(gamma);
            result.values.push_back(best.value);
            result.t_at_max.push_back(best.t);
        }
    } else {
        throw std::invalid_argument("sweep: --param must be j0 or gamma");
    }

    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < result.grid.size(); ++i) {
        rows.push_back({result.grid[i], result.values[i], result.t_at_max[i]});
    }
    const fs::path dir = out_dir(o);
    write_csv(dir / "sweep.csv", {"param", "value", "t_at_max"}, rows);

    const json meta{{"parameter", result.parameter_name},
                    {"gamma", result.gamma},
                    {"channel", to_json(result.reference)}};
    write_text_atomic(dir / "sweep_meta.json", meta.dump(2) + "\n");

    const json config{{"command", "sweep"}, {"param", o.param},   {"family", o.family},
                      {"n", o.n},           {"gamma", o.gamma},   {"grid", result.grid}};
    write_manifest(dir / "manifest.json", config, seconds_since(start),
                   {"sweep.csv", "sweep_meta.json"});
    return 0;
}

int run_design(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const ChannelSpec spec = build_channel(o);
    const DesignReport report = extract_design(spec, o.gamma);

    json out{{"e0", report.e0},
             {"t_c", report.t_c},
             {"parity", report.parity == Parity::Odd ? "odd" : "even"},
             {"fidelity_at_tc", report.fidelity_at_tc},
             {"t_measured", report.t_measured},
             {"fidelity_max", report.fidelity_max}};
    if (report.parity == Parity::Even) {
        const FieldResult field = optimize_field(spec, o.gamma);
        out["field"] = {{"b_star", field.b_star},
                        {"fbar_max", field.fbar_max},
                        {"t_at_max", field.t_at_max}};
    }

    const fs::path dir = out_dir(o);
    write_text_atomic(dir / "design.json", out.dump(2) + "\n");
    const json config{{"command", "design"}, {"channel", to_json(spec)}, {"gamma", o.gamma}};
    write_manifest(dir / "manifest.json", config, seconds_since(start), {"design.json"});
    return 0;
}

int run_verify(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const ChannelSpec spec = build_channel(o);
    const std::vector<double> grid = time_grid(o);
    const Eigen::MatrixXd h = build_hamiltonian(spec, Subspace::OneExcitation);
    const Spectrum sp = diagonalize(h);
    const StateH1 rho0 = site_state(spec.n_sites, 1);

    // Size the Kraus cap for the largest time on the grid: the sum needs about
    // gamma*t*E^2 terms plus a tail margin before it closes to 1e-10.
    const double h_norm = h.cwiseAbs().rowwise().sum().maxCoeff();
    const double kraus_scale = o.gamma * grid.back() * h_norm * h_norm;
    const int l_max =
        std::max(200, static_cast<int>(kraus_scale + 10.0 * std::sqrt(kraus_scale) + 20.0));

    Eigen::MatrixXcd integrated = rho0.b;
    double t_prev = 0.0;
    double worst = 0.0;
    std::vector<std::vector<double>> rows;
    for (const double t : grid) {
        const Eigen::MatrixXcd closed = evolve_h1(sp, rho0, o.gamma, t).b;
        const Eigen::MatrixXcd summed = kraus_oracle(h, rho0.b, o.gamma, t, l_max).rho;
        if (t > t_prev) {
            integrated = master_equation_oracle(h, integrated, o.gamma, t - t_prev);
            t_prev = t;
        }
        const double d_ck = (closed - summed).cwiseAbs().maxCoeff();
        const double d_ci = (closed - integrated).cwiseAbs().maxCoeff();
        const double d_ki = (summed - integrated).cwiseAbs().maxCoeff();
        worst = std::max({worst, d_ck, d_ci, d_ki});
        rows.push_back({t, d_ck, d_ci, d_ki});
    }

    const fs::path dir = out_dir(o);
    write_csv(dir / "verify.csv", {"t", "eig_vs_kraus", "eig_vs_rk4", "kraus_vs_rk4"}, rows);
    const json config{{"command", "verify"}, {"channel", to_json(spec)}, {"gamma", o.gamma},
                      {"t0", o.t0},          {"t1", o.t1},               {"points", o.points}};
    write_manifest(dir / "manifest.json", config, seconds_since(start), {"verify.csv"});

    if (worst > 1e-8) {
        throw std::runtime_error("verify: propagator routes disagree by " + format_number(worst) +
                                 " (tolerance 1e-8)");
    }
    std::cout << "verify: max discrepancy " << format_number(worst) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinchan — spin-channel state transfer under intrinsic decoherence"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    Options o;

    CLI::App* c_spectrum = app.add_subcommand("spectrum", "eigenvalues and mode populations");
    add_common(c_spectrum, o);
    c_spectrum->add_option("--site", o.sites, "site(s) for mode populations")->delimiter(',');

    CLI::App* c_evolve = app.add_subcommand("evolve", "time series of transfer observables");
    add_common(c_evolve, o);
    add_time_grid(c_evolve, o);
    c_evolve->add_option("--obs", o.obs, "observables: F, Fbar, alpha, C_i_j, c_i")
        ->delimiter(',');

    CLI::App* c_steady = app.add_subcommand("steady", "closed-form vs numeric infinite-time limits");
    add_common(c_steady, o);
    c_steady->add_option("--n-min", o.n_min, "first chain length");
    c_steady->add_option("--n-max", o.n_max, "last chain length");
    c_steady->add_option("--quantity", o.quantity, "F, Fbar, C_endpair, or C_distribution");

    CLI::App* c_sweep = app.add_subcommand("sweep", "parameter sweep of the transfer maximum");
    add_common(c_sweep, o);
    c_sweep->add_option("--param", o.param, "swept parameter: j0 or gamma");
    c_sweep->add_option("--grid", o.grid, "explicit sweep grid")->delimiter(',');

    CLI::App* c_design = app.add_subcommand("design", "transfer-time design report");
    add_common(c_design, o);

    CLI::App* c_verify = app.add_subcommand("verify", "cross-check the three propagator routes");
    add_common(c_verify, o);
    add_time_grid(c_verify, o);
    c_verify->add_option("--t-max", o.t1, "end of the comparison window (alias for --t1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        apply_config(active, o);
        if (active == c_spectrum) return run_spectrum(o);
        if (active == c_evolve) return run_evolve(o);
        if (active == c_steady) return run_steady(o);
        if (active == c_sweep) return run_sweep(o);
        if (active == c_design) return run_design(o);
        if (active == c_verify) return run_verify(o);
        throw std::invalid_argument("no subcommand selected");
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
