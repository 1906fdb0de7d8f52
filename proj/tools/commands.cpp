#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "csgauge/csd.hpp"
#include "csgauge/csh.hpp"
#include "csgauge/csv.hpp"
#include "csgauge/errors.hpp"
#include "csgauge/nullforms.hpp"
#include "csgauge/parallel.hpp"
#include "csgauge/snapshot.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot write '" + path.string() + "'");
    return os;
}

fs::path snapshot_path(const fs::path& out, const std::string& prefix, long step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_%08ld.csgf", step);
    return out / (prefix + buf);
}

std::vector<ScalarField> physical_parts(const OneForm& A, std::vector<ScalarField> head) {
    for (const auto& a : A.a) head.push_back(a.physical());
    return head;
}

}  // namespace

void run_simulate(const SimulateConfig& c, const fs::path& out, int threads, std::ostream& log) {
    fs::create_directories(out);
    const Grid2D grid(c.n1, c.n2, c.length);
    EvolveOptions opt;
    opt.dt = c.dt;
    opt.steps = c.steps;
    opt.scheme = c.scheme == "picard" ? Scheme::Picard : Scheme::ExponentialIntegrator;
    opt.sample_every = c.sample_every;
    opt.picard = PicardOptions{c.picard_nodes, c.picard_max_iterations, c.picard_tolerance, threads};

    std::vector<DiagnosticsRecord> records;
    auto snapshot_due = [&](double t, long& step) {
        step = std::lround(t / c.dt);
        return step == 0 || step == c.steps || (c.snapshot_every > 0 && step % c.snapshot_every == 0);
    };
    auto finish = [&](const std::string& name) {
        auto os = open_output(out / c.diagnostics_csv);
        write_diagnostics_csv(os, name, records);
    };

    try {
        if (c.system == "csd") {
            const csd::Params params{c.mass, c.dealias, c.couple_gauge};
            const CsdData data = random_csd_data(grid, c.field, c.gauge, c.seed);
            const auto init = csd::build_initial_data(data.psi0, data.a0, data.divpot, c.dealias);
            const csd::State s0 = csd::initial_half_waves(init.a, data.psi0, params);
            csd::evolve(s0, params, opt, [&](const csd::State& s, const DiagnosticsRecord& rec) {
                records.push_back(rec);
                long step = 0;
                if (!snapshot_due(s.time, step)) return;
                const csd::Fields f = csd::fields(s, params);
                write_snapshot(snapshot_path(out, c.snapshot_prefix, step),
                               physical_parts(f.A, {f.psi.c[0].physical(), f.psi.c[1].physical()}));
            });
            finish("charge");
        } else {
            const csh::Params params{c.dealias, c.couple_gauge, c.compensate_mass};
            const CshData data = random_csh_data(grid, c.field, c.gauge, c.seed);
            const auto init = csh::build_initial_data(data.f, data.g, data.a0, data.divpot, c.dealias);
            const csh::State s0 = csh::initial_half_waves(init.a, data.f, data.g, params);
            csh::evolve(s0, params, opt, [&](const csh::State& s, const DiagnosticsRecord& rec) {
                records.push_back(rec);
                long step = 0;
                if (!snapshot_due(s.time, step)) return;
                const csh::Fields f = csh::fields(s, params);
                write_snapshot(snapshot_path(out, c.snapshot_prefix, step),
                               physical_parts(f.A, {f.phi.physical(), f.phit.physical()}));
            });
            finish("energy");
        }
    } catch (const DivergenceError&) {
        finish(c.system == "csd" ? "charge" : "energy");
        throw;
    }
    log << "simulate: " << c.system << ", " << c.steps << " steps, " << records.size() << " diagnostics rows\n";
    if (!records.empty()) {
        const auto& a = records.front();
        const auto& b = records.back();
        const double drift = a.conserved == 0.0 ? 0.0 : std::abs(b.conserved - a.conserved) / a.conserved;
        log << "  relative drift of the conserved quantity: " << format_double(drift) << '\n';
    }
}

void run_feasibility(const FeasibilityConfig& c, const fs::path& out, int threads, std::ostream& log) {
    fs::create_directories(out);
    xsb::ScanSetup setup = c.scan;
    setup.threads = threads;
    const xsb::ScanResult scan = xsb::scan_region(setup);
    {
        auto os = open_output(out / c.region_csv);
        xsb::write_scan_csv(os, scan);
    }

    struct Probe {
        const char* name;
        double s, b;
    };
    const Probe probes[] = {{"conclusion", 0.25 + c.eps, 0.75 - 2.0 * c.eps},
                            {"nearby", 0.25 + c.eps, 0.75 - 0.5 * c.eps}};
    auto os = open_output(out / c.report_jsonl);
    nlohmann::ordered_json summary;
    summary["system"] = std::string(xsb::to_string(setup.system));
    summary["resolution"] = setup.resolution;
    summary["eps0"] = setup.eps0;
    summary["feasible_cells"] = scan.feasible_count;
    summary["printed_cells"] = scan.printed_count;
    summary["symmetric_difference"] = scan.symmetric_difference;
    for (const auto& p : probes) {
        bool all = true;
        for (const auto& t : xsb::system_triples(setup.system, p.s, p.b, setup.eps0)) {
            const auto rep = xsb::check_product_conditions(t);
            all = all && rep.pass;
            xsb::write_report_jsonl(os, rep, p.name);
        }
        summary[std::string(p.name)] = {{"s", p.s},
                                        {"b", p.b},
                                        {"triples_pass", all},
                                        {"printed_region", xsb::printed_region(setup.system, p.s, p.b)}};
    }
    os << nlohmann::ordered_json{{"summary", summary}}.dump() << '\n';
    log << "feasibility: " << scan.feasible_count << " feasible cells, " << scan.printed_count
        << " in the printed region, symmetric difference " << scan.symmetric_difference << '\n';
}

void run_nullforms(const NullformsConfig& c, const fs::path& out, int threads, std::ostream& log) {
    fs::create_directories(out);
    DominanceSetup setup = c.setup;
    setup.threads = threads;
    std::vector<DominanceResult> rows;
    for (auto kind : all_nullform_kinds())
        for (Sign s1 : {Sign::Plus, Sign::Minus})
            for (Sign s2 : {Sign::Plus, Sign::Minus}) rows.push_back(run_dominance(kind, s1, s2, setup));
    {
        auto os = open_output(out / c.dominance_csv);
        write_dominance_csv(os, rows);
    }
    log << "nullforms: " << rows.size() << " dominance rows\n";
    log << "  projector angle probe sup: " << format_double(projector_angle_probe(c.probe_samples, c.setup.seed))
        << '\n';
}

void run_norms(const NormsConfig& c, const fs::path& out, std::ostream& log) {
    fs::create_directories(out);
    const Snapshot snap = read_snapshot(fs::path(c.snapshot));
    const auto tables = tables_for(snap.grid);
    std::vector<double> inhom(tables->bracket.size()), hom(tables->abs.size());
    for (std::size_t i = 0; i < inhom.size(); ++i) {
        inhom[i] = std::pow(tables->bracket[i], c.s);
        // The homogeneous weight is taken as zero on the zero mode.
        hom[i] = tables->abs[i] == 0.0 ? 0.0 : std::pow(tables->abs[i], c.s);
    }
    nlohmann::ordered_json doc;
    doc["snapshot"] = c.snapshot;
    doc["s"] = c.s;
    auto comps = nlohmann::ordered_json::array();
    for (const auto& f : snap.components) {
        const ScalarField fs_ = f.spectral();
        comps.push_back({{"l2", l2_norm(f)},
                         {"h_s", l2_norm(apply_table(fs_, inhom))},
                         {"h_s_homogeneous", l2_norm(apply_table(fs_, hom))}});
    }
    doc["components"] = comps;
    auto os = open_output(out / c.output);
    os << doc.dump(2) << '\n';
    log << "norms: " << snap.components.size() << " components\n";
}

int run(const std::string& command, const fs::path& config, const fs::path& out, int threads, std::ostream& log,
        std::ostream& err) {
    const int workers = resolve_threads(threads);
    try {
        const std::string text = read_text(config);
        if (command == "simulate") {
            run_simulate(parse_simulate(text), out, workers, log);
        } else if (command == "feasibility") {
            run_feasibility(parse_feasibility(text), out, workers, log);
        } else if (command == "nullforms") {
            run_nullforms(parse_nullforms(text), out, workers, log);
        } else if (command == "norms") {
            run_norms(parse_norms(text), out, log);
        } else {
            err << "error: unknown command '" << command << "'\n";
            return kConfigError;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DivergenceError& e) {
        err << "divergence: " << e.what() << " (last good time " << format_double(e.last_good_time()) << ")\n";
        return kDivergence;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kSuccess;
}

}  // namespace csgauge::cli
