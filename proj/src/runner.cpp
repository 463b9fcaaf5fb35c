#include "spinbath/runner.hpp"

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>

#include "spinbath/csv.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/exact_dephasing.hpp"
#include "spinbath/master_equation.hpp"
#include "spinbath/short_time.hpp"

namespace spinbath {

std::string version() { return SPINBATH_VERSION; }

std::vector<double> output_times(const Scenario& s) {
    const SimConfig sim = s.sim.resolved(s.sys);
    const auto steps = static_cast<std::size_t>(std::ceil(sim.t_max / sim.dt - 1e-9));
    const auto every = static_cast<std::size_t>(sim.record_every);
    std::vector<double> out{0.0};
    for (std::size_t k = 1; k <= steps; ++k)
        if (k % every == 0 || k == steps) out.push_back(static_cast<double>(k) * sim.dt);
    return out;
}

std::vector<EngineRun> run_engines(const Scenario& s) {
    s.validate();
    const SimConfig sim = s.sim.resolved(s.sys);
    const std::vector<double> times = output_times(s);
    std::vector<EngineRun> runs;

    for (Engine e : s.engines) {
        switch (e) {
            case Engine::MasterEquation: {
                const SpinOperators ops = build_spin_operators(s.sys.n_atoms);
                const Matrix rho0 = initial_state(s.prep, ops);
                auto kernel = std::make_shared<const MemoryKernel>(build_memory_kernel(s.sys, s.bath, sim));
                for (bool corr : s.correlation_flags()) {
                    std::shared_ptr<const CorrelationDrive> drive;
                    if (corr)
                        drive = std::make_shared<const CorrelationDrive>(
                            build_correlation_drive(s.prep, s.sys, s.bath, sim));
                    const MasterEquation me = make_master_equation(s.sys, kernel, drive);
                    runs.push_back({e, corr, evolve(rho0, me, sim)});
                }
                break;
            }
            case Engine::ExactDephasing: {
                const DephasingSolver solver(s.prep, s.sys, s.bath, sim.quadrature);
                for (bool corr : s.correlation_flags()) runs.push_back({e, corr, solver.trajectory(times, corr)});
                break;
            }
            case Engine::ShortTime: {
                const SpinOperators ops = build_spin_operators(s.sys.n_atoms);
                const Matrix rho0 = initial_state(s.prep, ops);
                for (bool corr : s.correlation_flags()) {
                    const ShortTimeExpansion exp(rho0, short_time_coeffs(s.sys, s.bath, s.prep, corr, sim.quadrature));
                    runs.push_back({e, corr, exp.trajectory(times)});
                }
                break;
            }
        }
    }
    return runs;
}

std::string csv_filename(const std::string& name, Engine engine, bool with_corr) {
    return name + "_" + to_string(engine) + "_" + (with_corr ? "corr" : "nocorr") + ".csv";
}

std::string metadata(const Scenario& s, const std::vector<EngineRun>& runs) {
    std::ostringstream out;
    const SimConfig sim = s.sim.resolved(s.sys);
    out << "version=" << version() << "\n";

    // scenario keys flattened as section.key
    std::istringstream text(serialize(s));
    std::string line, section;
    while (std::getline(text, line)) {
        if (line.empty()) continue;
        if (line.front() == '[') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find(" = ");
        out << (section.empty() ? "" : section + ".") << line.substr(0, eq) << "=" << line.substr(eq + 3) << "\n";
    }

    out << "resolved.dt=" << format_double(sim.dt) << "\n"
        << "resolved.kernel_grid_dt=" << format_double(sim.kernel_grid_dt) << "\n"
        << "resolved.delta_tilde=" << format_double(s.sys.delta_tilde()) << "\n";

    for (const auto& r : runs) {
        const std::string key = to_string(r.engine) + "." + (r.with_corr ? "corr" : "nocorr");
        out << key << ".file=" << csv_filename(s.name, r.engine, r.with_corr) << "\n"
            << key << ".points=" << r.traj.size() << "\n"
            << key << ".max_trace_err=" << format_double(r.traj.max_trace_err()) << "\n"
            << key << ".max_herm_err=" << format_double(r.traj.max_herm_err()) << "\n";
        if (r.engine == Engine::ShortTime) {
            const ShortTimeCoeffs c = short_time_coeffs(s.sys, s.bath, s.prep, r.with_corr, sim.quadrature);
            const ShortTimeValidity v = short_time_validity(r.traj.times.back(), s.sys, c);
            out << key << ".f0=" << format_double(c.f0) << "\n"
                << key << ".c0=" << format_double(c.c0) << "\n"
                << key << ".validity.t_delta_tilde=" << format_double(v.t_delta_tilde) << "\n"
                << key << ".validity.t2_curvature=" << format_double(v.t2_curvature) << "\n";
        }
    }
    return out.str();
}

ScenarioResult run_scenario(const Scenario& s, const std::string& out_dir) {
    ScenarioResult res;
    res.scenario = s;
    res.runs = run_engines(s);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    for (const auto& r : res.runs) {
        const std::string path = (dir / csv_filename(s.name, r.engine, r.with_corr)).string();
        write_trajectory_csv(path, r.traj);
        res.files.push_back(path);
    }
    const std::string meta_path = (dir / (s.name + ".meta")).string();
    std::ofstream meta(meta_path, std::ios::binary);
    if (!meta) throw CsvError("cannot write '" + meta_path + "'");
    meta << metadata(s, res.runs);
    res.files.push_back(meta_path);
    return res;
}

std::vector<ScenarioResult> run_batch(const std::vector<Scenario>& scenarios, const std::string& out_dir) {
    for (std::size_t i = 0; i < scenarios.size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (scenarios[i].name == scenarios[k].name)
                throw DomainError("batch: scenario name '" + scenarios[i].name + "' used twice");
    std::filesystem::create_directories(out_dir);
    std::vector<std::future<ScenarioResult>> jobs;
    jobs.reserve(scenarios.size());
    for (const auto& s : scenarios)
        jobs.push_back(std::async(std::launch::async, [&s, &out_dir] { return run_scenario(s, out_dir); }));

    std::vector<ScenarioResult> out;
    std::exception_ptr first;
    for (auto& j : jobs) {
        try {
            out.push_back(j.get());
        } catch (...) {
            if (!first) first = std::current_exception();
        }
    }
    if (first) std::rethrow_exception(first);
    return out;
}

}  // namespace spinbath
