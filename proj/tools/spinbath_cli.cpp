// spinbath_cli.cpp: command-line front end (run, compare, fcorr-table, list-presets)

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinbath/corr_kernel.hpp"
#include "spinbath/csv.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/runner.hpp"
#include "spinbath/scenario.hpp"

namespace {

enum Exit { ok = 0, usage = 1, numerical = 2, tolerance = 3 };

using namespace spinbath;

int cmd_run(const std::vector<std::string>& files, const std::vector<std::string>& presets,
            const std::string& out_dir, bool no_corr) {
    std::vector<Scenario> batch;
    for (const auto& name : presets) batch.push_back(preset(name));
    for (const auto& f : files) batch.push_back(load_scenario(f));
    if (batch.empty()) {
        std::cerr << "run: give at least one scenario file or --preset\n";
        return usage;
    }
    for (auto& s : batch) {
        if (no_corr) s.correlations = CorrelationSetting::Without;
        s.validate();
    }

    const auto results = run_batch(batch, out_dir);
    for (const auto& r : results) {
        std::cout << r.scenario.name << ":\n";
        for (const auto& run : r.runs) {
            std::cout << "  " << csv_filename(r.scenario.name, run.engine, run.with_corr) << "  t_end="
                      << format_double(run.traj.times.back());
            for (const auto& o : r.scenario.outputs) {
                const std::vector<double>* col = o == "jz"    ? &run.traj.jz
                                               : o == "jz2"   ? &run.traj.jz2
                                               : o == "jy"    ? &run.traj.jy
                                                              : &run.traj.jx;
                std::cout << "  " << o << "=" << format_double(col->back());
            }
            std::cout << "\n";
        }
        std::cout << "  " << r.scenario.name << ".meta\n";
    }
    return ok;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& column, double tol,
                bool interpolate) {
    const CompareReport rep = compare_tables(read_csv(a), read_csv(b), column, interpolate);
    std::cout << "column=" << column << " points=" << rep.points << " max_abs=" << format_double(rep.max_abs)
              << " rms=" << format_double(rep.rms) << " t_at_max=" << format_double(rep.t_at_max) << "\n";
    if (tol >= 0.0 && !(rep.max_abs <= tol)) {
        std::cerr << "compare: max_abs " << format_double(rep.max_abs) << " exceeds tolerance "
                  << format_double(tol) << "\n";
        return tolerance;
    }
    return ok;
}

struct TableArgs {
    std::string preset;
    int n_atoms{1};
    double epsilon{0.0}, delta{4.0};
    double g{0.05}, omega_c{5.0}, beta{1.0};
    std::string prep{"down_z"};
    double t_max{2.0};
    int points{21};
    bool oracle{false};
    int modes{100000};
    int panels{32};
    std::string out;
};

int cmd_fcorr_table(const TableArgs& a) {
    SystemParams sys{a.epsilon, a.delta, a.n_atoms};
    BathSpec bath{a.g, a.omega_c, a.beta};
    Preparation prep = preparation_from_string(a.prep);
    if (!a.preset.empty()) {
        const Scenario s = preset(a.preset);
        sys = s.sys;
        bath = s.bath;
        prep = s.prep;
    }
    if (a.points < 2) throw DomainError("fcorr-table: --points must be >= 2");

    std::vector<double> ts;
    for (int k = 0; k < a.points; ++k) ts.push_back(a.t_max * k / (a.points - 1));

    std::vector<std::complex<double>> oracle;
    if (a.oracle) oracle = f_corr_oracle(ts, prep, sys, bath, a.modes, a.panels);

    std::ostringstream out;
    out << "t,f_corr" << (a.oracle ? ",oracle_re,oracle_im" : "") << "\n";
    for (std::size_t k = 0; k < ts.size(); ++k) {
        out << format_double(ts[k]) << "," << format_double(f_corr(ts[k], prep, sys, bath));
        if (a.oracle) out << "," << format_double(oracle[k].real()) << "," << format_double(oracle[k].imag());
        out << "\n";
    }
    if (a.out.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw CsvError("cannot write '" + a.out + "'");
        f << out.str();
    }
    return ok;
}

int cmd_list_presets() {
    for (const auto& name : preset_names()) {
        const Scenario s = preset(name);
        std::printf("%-6s  N=%-4d eps=%-4g Delta=%-4g prep=%-6s  %s\n", name.c_str(), s.sys.n_atoms,
                    s.sys.epsilon, s.sys.delta, to_string(s.prep).c_str(), preset_description(name).c_str());
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinbath: N two-level atoms collectively coupled to an Ohmic bath"};
    app.set_version_flag("--version", spinbath::version());
    app.require_subcommand(1);

    std::vector<std::string> run_files, run_presets;
    std::string out_dir = "out";
    bool no_corr = false;
    auto* run = app.add_subcommand("run", "run scenario files and/or presets, writing CSV + .meta");
    run->add_option("scenarios", run_files, "scenario files")->check(CLI::ExistingFile);
    run->add_option("--preset", run_presets, "named preset (repeatable)");
    run->add_option("--out", out_dir, "output directory")->capture_default_str();
    run->add_flag("--no-corr", no_corr, "only the uncorrelated equation/solution");

    std::string cmp_a, cmp_b, column = "jz";
    double tol = -1.0;
    bool interpolate = false;
    auto* cmp = app.add_subcommand("compare", "max-abs and RMS difference of one column");
    cmp->add_option("a", cmp_a, "first CSV")->required()->check(CLI::ExistingFile);
    cmp->add_option("b", cmp_b, "second CSV")->required()->check(CLI::ExistingFile);
    cmp->add_option("--column", column, "column to compare")->capture_default_str();
    cmp->add_option("--tol", tol, "fail (exit 3) when max_abs exceeds this");
    cmp->add_flag("--interpolate", interpolate, "interpolate the second table onto the first grid");

    TableArgs targs;
    auto* tab = app.add_subcommand("fcorr-table", "tabulate f_corr(t)");
    tab->add_option("--preset", targs.preset, "take system, bath and preparation from a preset");
    tab->add_option("--n", targs.n_atoms, "number of atoms")->capture_default_str();
    tab->add_option("--eps", targs.epsilon, "bias eps")->capture_default_str();
    tab->add_option("--delta", targs.delta, "tunnelling Delta")->capture_default_str();
    tab->add_option("--g", targs.g, "coupling G")->capture_default_str();
    tab->add_option("--omega-c", targs.omega_c, "cutoff omega_c")->capture_default_str();
    tab->add_option("--beta", targs.beta, "inverse temperature")->capture_default_str();
    tab->add_option("--prep", targs.prep, "down_z, up_z or plus_x")->capture_default_str();
    tab->add_option("--t-max", targs.t_max, "last time")->capture_default_str();
    tab->add_option("--points", targs.points, "number of time points")->capture_default_str();
    tab->add_flag("--oracle", targs.oracle, "append the discretised-bath brute-force columns");
    tab->add_option("--modes", targs.modes, "oracle bath modes")->capture_default_str();
    tab->add_option("--panels", targs.panels, "oracle imaginary-time panels")->capture_default_str();
    tab->add_option("--out", targs.out, "output file (default stdout)");

    auto* list = app.add_subcommand("list-presets", "show the named presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*run) return cmd_run(run_files, run_presets, out_dir, no_corr);
        if (*cmp) return cmd_compare(cmp_a, cmp_b, column, tol, interpolate);
        if (*tab) return cmd_fcorr_table(targs);
        if (*list) return cmd_list_presets();
    } catch (const spinbath::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return usage;
    } catch (const spinbath::FailedRunError& e) {
        std::cerr << "run failed at t = " << e.time() << ": " << e.what() << "\n";
        return numerical;
    } catch (const spinbath::IntegrationError& e) {
        std::cerr << "integration failed: " << e.what() << "\n";
        return numerical;
    } catch (const spinbath::NumericalConsistencyError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical;
    } catch (const spinbath::RangeError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
