#include "graphbeam/report_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace graphbeam {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(field);
    return out;
}

double to_double(const std::string& s) {
    return std::stod(s);
}

} // namespace

void write_spectrum_csv(std::ostream& os, const SpectrumReport& report) {
    os << "branch,n,re,im,multiplicity,newton_residual,asym_re,asym_im\n";
    for (const Eigenvalue& ev : report.full_list()) {
        os << (ev.branch == Branch::D ? "D" : "H") << ',' << ev.index << ','
           << fmt_double(ev.value.real()) << ',' << fmt_double(ev.value.imag())
           << ',' << ev.multiplicity << ','
           << fmt_double(ev.newton_residual) << ','
           << fmt_double(ev.asymptotic_ref.real()) << ','
           << fmt_double(ev.asymptotic_ref.imag()) << '\n';
    }
}

SpectrumReport read_spectrum_csv(std::istream& is, const NetworkParams& p) {
    SpectrumReport report;
    report.params = p;
    std::string line;
    if (!std::getline(is, line) || line.rfind("branch,", 0) != 0)
        throw std::runtime_error("read_spectrum_csv: missing header");
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto f = split_csv(line);
        if (f.size() != 8)
            throw std::runtime_error("read_spectrum_csv: malformed row");
        Eigenvalue ev;
        ev.branch = f[0] == "D" ? Branch::D : Branch::H;
        ev.index = std::stoi(f[1]);
        ev.value = {to_double(f[2]), to_double(f[3])};
        ev.multiplicity = std::stoi(f[4]);
        ev.newton_residual = to_double(f[5]);
        ev.asymptotic_ref = {to_double(f[6]), to_double(f[7])};
        if (ev.value.imag() >= 0.0)
            report.eigenvalues.push_back(ev);
    }
    return report;
}

namespace {

nlohmann::json params_json(const NetworkParams& p) {
    return {{"gamma", p.gamma}, {"alpha", p.alpha}, {"beta", p.beta}};
}

} // namespace

nlohmann::json spectrum_json(const SpectrumReport& report, double wall_time) {
    nlohmann::json j;
    j["version"] = kToolVersion;
    j["config"] = params_json(report.params);
    j["wall_time_s"] = wall_time;
    j["interlacing_ok"] = report.interlacing_ok;
    nlohmann::json arr = nlohmann::json::array();
    for (const Eigenvalue& ev : report.full_list())
        arr.push_back({{"branch", ev.branch == Branch::D ? "D" : "H"},
                       {"n", ev.index},
                       {"re", ev.value.real()},
                       {"im", ev.value.imag()},
                       {"multiplicity", ev.multiplicity},
                       {"newton_residual", ev.newton_residual}});
    j["eigenvalues"] = std::move(arr);
    return j;
}

void write_modes_csv(std::ostream& os,
                     const std::vector<EigenfunctionRep>& modes,
                     int grid_points) {
    os << "s";
    for (size_t m = 0; m < modes.size(); ++m)
        for (int j = 0; j < kNumEdges; ++j)
            os << ",re_w" << m << "_e" << j << ",im_w" << m << "_e" << j;
    os << '\n';
    for (int k = 0; k < grid_points; ++k) {
        double s = static_cast<double>(k) / (grid_points - 1);
        os << fmt_double(s);
        for (const EigenfunctionRep& mode : modes)
            for (int j = 0; j < kNumEdges; ++j) {
                cplx w = mode.value(j, s, 0);
                os << ',' << fmt_double(w.real()) << ','
                   << fmt_double(w.imag());
            }
        os << '\n';
    }
}

void write_oracle_csv(std::ostream& os, const std::vector<cplx>& oracle) {
    os << "branch,n,re,im,multiplicity,newton_residual,asym_re,asym_im\n";
    int n = 0;
    for (cplx z : oracle)
        os << "O," << n++ << ',' << fmt_double(z.real()) << ','
           << fmt_double(z.imag()) << ",1," << fmt_double(0.0) << ','
           << fmt_double(0.0) << ',' << fmt_double(0.0) << '\n';
}

nlohmann::json match_json(const MatchReport& mr, double wall_time) {
    nlohmann::json j;
    j["version"] = kToolVersion;
    j["wall_time_s"] = wall_time;
    nlohmann::json pairs = nlohmann::json::array();
    for (const MatchPair& p : mr.pairs)
        pairs.push_back({{"root_re", p.root.real()},
                         {"root_im", p.root.imag()},
                         {"oracle_re", p.oracle.real()},
                         {"oracle_im", p.oracle.imag()},
                         {"distance", p.distance}});
    j["pairs"] = std::move(pairs);
    auto zlist = [](const std::vector<cplx>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (cplx z : v)
            a.push_back({{"re", z.real()}, {"im", z.imag()}});
        return a;
    };
    j["unmatched_roots"] = zlist(mr.unmatched_roots);
    j["unmatched_oracle"] = zlist(mr.unmatched_oracle);
    nlohmann::json cl = nlohmann::json::array();
    for (const MultiplicityCluster& c : mr.clusters)
        cl.push_back({{"re", c.center.real()},
                      {"im", c.center.imag()},
                      {"size", c.size}});
    j["clusters"] = std::move(cl);
    return j;
}

void write_trace_csv(std::ostream& os, const EnergyTrace& trace) {
    os << "t,E,dissipation\n";
    for (size_t i = 0; i < trace.times.size(); ++i)
        os << fmt_double(trace.times[i]) << ','
           << fmt_double(trace.energy[i]) << ','
           << fmt_double(trace.boundary_dissipation[i]) << '\n';
}

EnergyTrace read_trace_csv(std::istream& is) {
    EnergyTrace trace;
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,", 0) != 0)
        throw std::runtime_error("read_trace_csv: missing header");
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto f = split_csv(line);
        if (f.size() != 3)
            throw std::runtime_error("read_trace_csv: malformed row");
        trace.times.push_back(to_double(f[0]));
        trace.energy.push_back(to_double(f[1]));
        trace.boundary_dissipation.push_back(to_double(f[2]));
    }
    return trace;
}

nlohmann::json decay_json(const DecayEstimate& est, double wall_time) {
    nlohmann::json j;
    j["version"] = kToolVersion;
    j["wall_time_s"] = wall_time;
    j["no_decay"] = est.no_decay;
    j["delta"] = est.delta;
    j["M"] = est.M;
    j["fit_window"] = {est.t_start, est.t_end};
    j["r_squared"] = est.r_squared;
    return j;
}

} // namespace graphbeam
