// lattice-forge: design, reconstruct, verify and simulate coupled chains
// with end-to-end transfer and revival properties.
//
// Exit codes: 0 success, 2 invalid parameters / violated constraint,
// 3 I/O failure, 4 parse failure, 5 reconstruction failure (no
// positive-coupling chain), 6 coupling exceeds geometry amplitude.

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lforge/errors.hpp"
#include "lforge/inverse_spectral.hpp"
#include "lforge/io.hpp"
#include "lforge/kernels.hpp"
#include "lforge/lattice_core.hpp"
#include "lforge/model_catalog.hpp"
#include "lforge/spectral_conditions.hpp"
#include "lforge/transport.hpp"

namespace {

using namespace lforge;

// "lattice.json" -> "lattice.report.json"; extensionless paths just get the
// suffix appended.
std::string sibling_path(const std::string& path, const std::string& strip_ext,
                         const std::string& suffix) {
    std::string stem = path;
    if (stem.size() > strip_ext.size() &&
        stem.compare(stem.size() - strip_ext.size(), strip_ext.size(),
                     strip_ext) == 0) {
        stem.resize(stem.size() - strip_ext.size());
    }
    return stem + suffix;
}

double meta_beta(const LatticeSpec& lattice) {
    auto it = lattice.meta.find("beta");
    if (it == lattice.meta.end()) return 1.0;
    char* end = nullptr;
    double value = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || !(value > 0.0) || !std::isfinite(value)) {
        return 1.0;
    }
    return value;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        io::atomic_write(out_path, content);
        std::cerr << "wrote " << out_path << "\n";
    }
}

struct DesignArgs {
    std::string family;
    int n_max = 1;
    double beta = 1.0;
    double delta = 1.0;
    double gamma = 0.0;
    int big_k = 6;
    double a = 0.0;
    double c = 0.5;
    int j_split = -1;
    std::string out;
};

int run_design(const DesignArgs& args) {
    ModelParams params;
    params.family = family_from_string(args.family);
    params.n_max = args.n_max;
    params.beta = args.beta;
    params.delta = args.delta;
    params.gamma = args.gamma;
    params.big_k = args.big_k;
    params.a = args.a;
    params.c = args.c;
    params.j_split = args.j_split;
    params.validate();

    LatticeSpec lattice = couplings(params);
    std::vector<TransportPrediction> predictions = predict_transport(params);

    const std::string lattice_json = io::lattice_to_json(lattice);
    const std::string report_json = io::predictions_to_json(predictions);
    if (args.out.empty()) {
        std::cout << lattice_json << report_json;
    } else {
        io::atomic_write(args.out, lattice_json);
        const std::string report_path =
            sibling_path(args.out, ".json", ".report.json");
        io::atomic_write(report_path, report_json);
        std::cerr << "wrote " << args.out << " and " << report_path << "\n";
    }
    return 0;
}

int run_reconstruct(const std::string& spectrum_arg, const std::string& out) {
    Spectrum spectrum = io::load_spectrum_arg(spectrum_arg);
    ReconstructionReport report = reconstruct(spectrum);
    emit(io::lattice_to_json(report.lattice), out);
    std::cerr << "residual_spectrum_error "
              << io::format_double(report.residual_spectrum_error) << "\n"
              << "mirror_defect " << io::format_double(report.mirror_defect)
              << "\n";
    return 0;
}

int run_verify(const std::string& spectrum_arg, double tol, double horizon,
               const std::string& out) {
    Spectrum spectrum = io::load_spectrum_arg(spectrum_arg);
    ConditionReport report = analyze(spectrum, tol, horizon);
    emit(io::condition_report_to_json(report), out);
    return 0;
}

int run_simulate(const std::string& lattice_path, double z_max, int grid,
                 double threshold, const std::string& out,
                 const std::string& events_out) {
    if (!(z_max > 0.0) || !std::isfinite(z_max)) {
        throw InvalidParams("zmax must be positive and finite");
    }
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw InvalidParams("threshold must be positive and finite");
    }
    LatticeSpec lattice = io::load_lattice(lattice_path);
    EigenSystem system = eigendecompose(lattice);

    if (grid == 0) {
        const double beta = meta_beta(lattice);
        grid = static_cast<int>(
            std::ceil(4096.0 * z_max * beta / std::numbers::pi));
    }
    if (grid < 2) grid = 2;

    std::vector<double> zs(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i) {
        zs[static_cast<std::size_t>(i)] = z_max * i / grid;
    }
    std::vector<std::vector<std::complex<double>>> rows =
        kernels::trace_scan_parallel(system, zs, 0);
    std::vector<AmplitudeField> trace(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        trace[i].z = zs[i];
        trace[i].amplitudes = std::move(rows[i]);
    }

    std::vector<TransportEvent> events =
        detect_events(system, z_max, grid, threshold);

    const std::string trace_path = out.empty() ? "trace.csv" : out;
    io::atomic_write(trace_path, io::trace_to_csv(trace));
    const std::string events_path =
        events_out.empty() ? sibling_path(trace_path, ".csv", ".events.json")
                           : events_out;
    io::atomic_write(events_path, io::events_to_json(events));
    std::cerr << "wrote " << trace_path << " and " << events_path << " ("
              << events.size() << " events)\n";
    return 0;
}

int run_geometry(const std::string& lattice_path, double amp_a, double decay_c,
                 const std::string& out) {
    LatticeSpec lattice = io::load_lattice(lattice_path);
    GeometryParams geom(amp_a, decay_c);
    geom.validate();
    std::vector<double> distances = couplings_to_distances(lattice, geom);
    emit(io::geometry_to_csv(distances), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "lattice-forge: design, reconstruct, verify and simulate coupled "
        "chains with perfect state transfer and fractional revival"};
    app.require_subcommand(1);

    DesignArgs design_args;
    CLI::App* design =
        app.add_subcommand("design",
                           "Build a catalog lattice and its transport "
                           "prediction report");
    design->add_option("--family", design_args.family,
                       "krawtchouk | para_krawtchouk | dual_hahn | q_racah | "
                       "para_racah")
        ->required();
    design->add_option("--n", design_args.n_max, "number of couplings N")
        ->required();
    design->add_option("--beta", design_args.beta, "global coupling scale");
    design->add_option("--delta", design_args.delta,
                       "para-Krawtchouk deformation, in (0, 2)");
    design->add_option("--gamma", design_args.gamma,
                       "dual-Hahn offset, greater than -1");
    design->add_option("--k", design_args.big_k, "q-Racah integer K > 2");
    design->add_option("--a", design_args.a, "para-Racah parameter a > -1/2");
    design->add_option("--c", design_args.c,
                       "para-Racah parameter c, |a| < c < |a+1|");
    design->add_option("--j-split", design_args.j_split,
                       "para-Racah truncation index (default by parity of N)");
    design->add_option("--out", design_args.out,
                       "lattice JSON path; predictions go to "
                       "<stem>.report.json (default: stdout)");

    std::string rec_spectrum, rec_out;
    CLI::App* rec = app.add_subcommand(
        "reconstruct", "Recover the chain from a strictly increasing spectrum");
    rec->add_option("--spectrum", rec_spectrum,
                    "inline JSON array / object, or a path to one")
        ->required();
    rec->add_option("--out", rec_out, "lattice JSON path (default: stdout)");

    std::string ver_spectrum, ver_out;
    double ver_tol = 1e-9, ver_horizon = 0.0;
    CLI::App* ver = app.add_subcommand(
        "verify", "Check a spectrum for transfer and revival admissibility");
    ver->add_option("--spectrum", ver_spectrum,
                    "inline JSON array / object, or a path to one")
        ->required();
    ver->add_option("--tol", ver_tol, "rationalization tolerance");
    ver->add_option("--horizon", ver_horizon,
                    "largest revival distance searched (default 20*pi/beta)");
    ver->add_option("--out", ver_out, "report JSON path (default: stdout)");

    std::string sim_lattice, sim_out, sim_events;
    double sim_zmax = 0.0, sim_threshold = 1e-6;
    int sim_grid = 0;
    CLI::App* sim = app.add_subcommand(
        "simulate", "Propagate from site 0 and detect transport events");
    sim->add_option("--lattice", sim_lattice, "lattice JSON path")->required();
    sim->add_option("--zmax", sim_zmax, "propagation distance")->required();
    sim->add_option("--grid", sim_grid,
                    "scan points (default: 4096 per unit pi/beta)");
    sim->add_option("--threshold", sim_threshold,
                    "leakage threshold for event detection");
    sim->add_option("--out", sim_out, "trace CSV path (default: trace.csv)");
    sim->add_option("--events", sim_events,
                    "events JSON path (default: <trace stem>.events.json)");

    std::string geo_lattice, geo_out;
    double geo_amp = 0.0, geo_decay = 0.0;
    CLI::App* geo = app.add_subcommand(
        "geometry",
        "Convert couplings to waveguide separations via J = A*exp(-C*d)");
    geo->add_option("--lattice", geo_lattice, "lattice JSON path")->required();
    geo->add_option("--amp-A", geo_amp, "coupling amplitude A")->required();
    geo->add_option("--decay-C", geo_decay, "decay constant C")->required();
    geo->add_option("--out", geo_out, "distances CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*design) return run_design(design_args);
        if (*rec) return run_reconstruct(rec_spectrum, rec_out);
        if (*ver) return run_verify(ver_spectrum, ver_tol, ver_horizon, ver_out);
        if (*sim) {
            return run_simulate(sim_lattice, sim_zmax, sim_grid, sim_threshold,
                                sim_out, sim_events);
        }
        if (*geo) return run_geometry(geo_lattice, geo_amp, geo_decay, geo_out);
        std::cerr << "error: no command selected\n";
        return 2;
    } catch (const CouplingExceedsAmplitude& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const NegativeUn& e) {
        std::cerr << "error: reconstruction failure (NegativeUn): " << e.what()
                  << "\n";
        return 5;
    } catch (const DegreeDefect& e) {
        std::cerr << "error: reconstruction failure (DegreeDefect): "
                  << e.what() << "\n";
        return 5;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
