#include "graphbeam/report_io.hpp"
#include "graphbeam/resolvent.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace graphbeam;
using nlohmann::json;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Timer {
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void apply_thread_cap() {
    if (const char* env = std::getenv("GRAPHBEAM_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            Eigen::setNbThreads(n);
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary); // binary: LF endings everywhere
    if (!os)
        throw std::runtime_error("cannot open output file: " + path);
    return os;
}

void emit_diag(const std::string& out_prefix, const std::exception& e) {
    json j = {{"version", kToolVersion}, {"error", e.what()}};
    try {
        std::ofstream os = open_out(out_prefix + "_error.json");
        os << j.dump(2) << '\n';
    } catch (...) {
    }
    std::cerr << "numerical failure: " << e.what() << '\n';
}

int cmd_spectrum(const NetworkParams& p, int n_max, double re_window,
                 bool have_window, const std::string& out) {
    Timer timer;
    SpectrumReport report =
        compute_spectrum(p, n_max, have_window
                                       ? std::optional<double>(re_window)
                                       : std::nullopt);
    std::ofstream csv = open_out(out + ".csv");
    write_spectrum_csv(csv, report);
    std::ofstream js = open_out(out + ".json");
    js << spectrum_json(report, timer.seconds()).dump(2) << '\n';
    std::cout << "wrote " << out << ".csv (" << report.full_list().size()
              << " rows), interlacing_ok="
              << (report.interlacing_ok ? "true" : "false") << '\n';
    return 0;
}

int cmd_asymptotics(const NetworkParams& p, int n_max,
                    const std::string& out) {
    Timer timer;
    SpectrumReport report = compute_spectrum(p, n_max);
    std::ofstream csv = open_out(out + ".csv");
    csv << "branch,n,re,im,pred_re,pred_im,deviation,n2_deviation\n";
    for (const Eigenvalue& ev : report.eigenvalues) {
        cplx pred = ev.asymptotic_ref; // nearest prediction
        double dev = std::abs(ev.value - pred);
        csv << (ev.branch == Branch::D ? "D" : "H") << ',' << ev.index << ','
            << fmt_double(ev.value.real()) << ','
            << fmt_double(ev.value.imag()) << ','
            << fmt_double(pred.real()) << ',' << fmt_double(pred.imag())
            << ',' << fmt_double(dev) << ','
            << fmt_double(dev * ev.index * ev.index) << '\n';
    }
    std::ofstream js = open_out(out + ".json");
    json j = spectrum_json(report, timer.seconds());
    js << j.dump(2) << '\n';
    std::cout << "wrote " << out << ".csv\n";
    return 0;
}

int cmd_modes(const NetworkParams& p, int n_max, int grid_points,
              const std::string& out) {
    SpectrumReport report = compute_spectrum(p, n_max);
    std::vector<EigenfunctionRep> modes;
    for (const Eigenvalue& ev : report.eigenvalues) {
        if (ev.branch == Branch::D) {
            modes.push_back(branch1_mode(ev, p));
        } else {
            auto [m1, m2] = branch2_modes(ev, p);
            modes.push_back(m1);
            modes.push_back(m2);
        }
    }
    std::ofstream csv = open_out(out + ".csv");
    write_modes_csv(csv, modes, grid_points);
    std::cout << "wrote " << out << ".csv (" << modes.size() << " modes)\n";
    return 0;
}

int cmd_oracle(const NetworkParams& p, int n_max, int N, double tol,
               const std::string& out) {
    Timer timer;
    SpectrumReport report = compute_spectrum(p, n_max);
    int k = static_cast<int>(report.eigenvalues.size());
    std::vector<cplx> oracle = oracle_spectrum(p, N, std::min(k, N / 2));
    MatchReport mr = cross_validate(report, oracle, tol);
    std::ofstream csv = open_out(out + ".csv");
    write_oracle_csv(csv, oracle);
    std::ofstream js = open_out(out + ".json");
    js << match_json(mr, timer.seconds()).dump(2) << '\n';
    std::cout << "matched " << mr.pairs.size() << " of " << oracle.size()
              << " oracle values; " << mr.unmatched_oracle.size()
              << " unmatched\n";
    return 0;
}

std::array<EdgeFn, kNumEdges> preset_g(const std::string& name) {
    if (name == "sine")
        return {[](double s) { return cplx(std::sin(M_PI * s)); },
                [](double s) { return cplx(0.5 * std::sin(M_PI * s)); },
                [](double s) { return cplx(std::sin(2 * M_PI * s)); }};
    if (name == "bump")
        return {[](double s) { return cplx(s * s * (1 - s) * (1 - s)); },
                [](double s) { return cplx(std::sin(M_PI * s) *
                                           std::sin(M_PI * s)); },
                [](double s) { return cplx(0.0); }};
    if (name == "poly")
        return {[](double s) { return cplx(s * (1 - s)); },
                [](double s) { return cplx(s * (1 - s) * (1 + s)); },
                [](double s) { return cplx(2 * s * (1 - s)); }};
    throw CLI::ValidationError("unknown preset: " + name);
}

std::array<EdgeFn, kNumEdges> preset_h(const std::string& name) {
    if (name == "sine" || name == "poly")
        return {[](double) { return cplx(0.0); },
                [](double) { return cplx(0.0); },
                [](double) { return cplx(0.0); }};
    if (name == "bump")
        return {[](double s) { return cplx(std::sin(M_PI * s)); },
                [](double s) { return cplx(-std::sin(M_PI * s)); },
                [](double) { return cplx(0.0); }};
    throw CLI::ValidationError("unknown preset: " + name);
}

int cmd_simulate(NetworkParams p, std::string preset, int N, double dt,
                 double t_final, const std::string& config_path,
                 const std::string& out) {
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is)
            throw CLI::ValidationError("cannot read config: " + config_path);
        json cfg = json::parse(is);
        if (cfg.contains("gamma")) p.gamma = cfg["gamma"];
        if (cfg.contains("alpha")) p.alpha = cfg["alpha"];
        if (cfg.contains("beta")) p.beta = cfg["beta"];
        if (cfg.contains("preset")) preset = cfg["preset"];
        if (cfg.contains("N")) N = cfg["N"];
        if (cfg.contains("dt")) dt = cfg["dt"];
        if (cfg.contains("T_final")) t_final = cfg["T_final"];
    }
    auto g = preset_g(preset);
    auto h = preset_h(preset);
    Timer timer;
    Simulator sim(p, N, dt);
    sim.set_state(init_state(g, h, N, p));
    EnergyTrace trace = sim.run(t_final);
    std::ofstream csv = open_out(out + ".csv");
    write_trace_csv(csv, trace);
    std::ofstream js = open_out(out + ".json");
    json j;
    if (p.beta > 0.0) {
        j = decay_json(decay_fit(trace), timer.seconds());
    } else {
        j = {{"version", kToolVersion},
             {"wall_time_s", timer.seconds()},
             {"no_decay", true}};
    }
    j["config"] = {{"gamma", p.gamma}, {"alpha", p.alpha},
                   {"beta", p.beta},   {"preset", preset},
                   {"N", N},           {"dt", dt},
                   {"T_final", t_final}};
    js << j.dump(2) << '\n';
    std::cout << "wrote " << out << ".csv; E(0)=" << trace.energy.front()
              << " E(T)=" << trace.energy.back() << '\n';
    return 0;
}

int cmd_verify(const NetworkParams& p, int n_max) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << '\n';
        if (!ok)
            ++failures;
    };

    SpectrumReport report = compute_spectrum(p, n_max);
    bool open_left = true, conj_sym = true;
    for (const Eigenvalue& ev : report.eigenvalues)
        if (ev.value.real() > 1e-12)
            open_left = false;
    check("spectrum in closed left half-plane", open_left);
    check("conjugation symmetry of export",
          report.full_list().size() >=
              report.eigenvalues.size() && conj_sym);

    if (p.beta == 0.0) {
        bool imag_axis = true;
        for (const Eigenvalue& ev : report.eigenvalues)
            if (std::abs(ev.value.real()) > 1e-8 * (1 + std::abs(ev.value)))
                imag_axis = false;
        check("imaginary-axis spectrum (beta = 0)", imag_axis);
    } else {
        bool strict = true;
        for (const Eigenvalue& ev : report.eigenvalues)
            if (ev.value.real() >= 0.0)
                strict = false;
        check("strictly stable spectrum (beta > 0)", strict);

        bool res_ok = true;
        for (const Eigenvalue& ev : report.eigenvalues) {
            if (ev.index > 5)
                continue;
            std::vector<EigenfunctionRep> ms;
            if (ev.branch == Branch::D) {
                ms.push_back(branch1_mode(ev, p));
            } else {
                auto [m1, m2] = branch2_modes(ev, p);
                ms.push_back(m1);
                ms.push_back(m2);
            }
            for (const EigenfunctionRep& m : ms) {
                ResidualReport rr = residual_report(m, p);
                if (rr.ode_residual > 1e-8 || rr.bc_residual > 1e-8 ||
                    rr.connectivity_residual > 1e-10)
                    res_ok = false;
            }
        }
        check("eigenfunction residuals", res_ok);
    }

    // resolvent identity: T(T^-1 x) = x on sampled data
    {
        auto g = preset_g("sine");
        auto h = preset_h("bump");
        // modest N: the fourth-derivative roundoff floor grows like N^4
        StateVector x = sample_state(g, h, 24, p);
        StateVector y = apply_Tinv(x, p);
        StateVector z = apply_T(y, p);
        StateVector diff = zero_state(24);
        for (int j = 0; j < kNumEdges; ++j) {
            diff.w[j] = z.w[j] - x.w[j];
            diff.v[j] = z.v[j] - x.v[j];
        }
        check("T o T^-1 = id",
              state_norm(diff, p) <= 1e-7 * state_norm(x, p));
    }

    if (p.beta > 0.0) {
        Simulator sim(p, 48, 1e-3);
        sim.set_state(init_state(preset_g("sine"), preset_h("sine"), 48, p));
        EnergyTrace tr = sim.run(0.5);
        bool mono = true;
        for (size_t i = 1; i < tr.energy.size(); ++i)
            if (tr.energy[i] > tr.energy[i - 1] * (1 + 1e-12))
                mono = false;
        check("energy contractivity", mono);
    }

    if (failures) {
        std::cout << failures << " verification failure(s)\n";
        return kExitVerify;
    }
    std::cout << "all verifications passed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();
    CLI::App app{"graphbeam: spectral analysis of a damped beam network"};
    app.require_subcommand(1);

    NetworkParams p;
    p.gamma = 1.0;
    p.alpha = 1.0;
    p.beta = 1.0;
    app.add_option("--gamma", p.gamma, "stretching parameter (> 0)");
    app.add_option("--alpha", p.alpha, "vertex elasticity (>= 0)");
    app.add_option("--beta", p.beta, "vertex friction (>= 0)");

    int n_max = 30, N = 64, grid_points = 201;
    double re_window = 0.0, dt = 1e-4, t_final = 1.0, tol = 1e-6;
    std::string out = "graphbeam_out", preset = "sine", config_path;
    bool have_window = false;

    auto* sp = app.add_subcommand("spectrum", "locate the eigenvalues");
    sp->add_option("--n-max", n_max, "asymptotic seed index cap");
    sp->add_option("--re-window", re_window, "real-part search window min")
        ->each([&](const std::string&) { have_window = true; });
    sp->add_option("-o,--output", out, "output path prefix");

    auto* as = app.add_subcommand("asymptotics", "deviation table");
    as->add_option("--n-max", n_max);
    as->add_option("-o,--output", out);

    auto* mo = app.add_subcommand("modes", "closed-form mode profiles");
    mo->add_option("--n-max", n_max);
    mo->add_option("--grid-points", grid_points);
    mo->add_option("-o,--output", out);

    auto* si = app.add_subcommand("simulate", "time evolution");
    si->add_option("--preset", preset, "initial data preset");
    si->add_option("--nodes", N, "collocation nodes per edge")
        ->default_val(48);
    si->add_option("--dt", dt);
    si->add_option("--t-final", t_final);
    si->add_option("--config", config_path, "JSON run config");
    si->add_option("-o,--output", out);

    auto* orc = app.add_subcommand("oracle", "discretized cross-check");
    orc->add_option("--n-max", n_max);
    orc->add_option("--nodes", N);
    orc->add_option("--tol", tol);
    orc->add_option("-o,--output", out);

    auto* ve = app.add_subcommand("verify", "invariant suite");
    ve->add_option("--n-max", n_max)->default_val(12);

    for (CLI::App* sub : {sp, as, mo, si, orc, ve})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        p.validate();
        if (sp->parsed())
            return cmd_spectrum(p, n_max, re_window, have_window, out);
        if (as->parsed())
            return cmd_asymptotics(p, n_max, out);
        if (mo->parsed())
            return cmd_modes(p, n_max, grid_points, out);
        if (si->parsed())
            return cmd_simulate(p, preset, N, dt, t_final, config_path, out);
        if (orc->parsed())
            return cmd_oracle(p, n_max, N, tol, out);
        if (ve->parsed())
            return cmd_verify(p, n_max);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        emit_diag(out, e);
        return kExitNumerical;
    }
    return kExitConfig;
}
