// kg1d command-line interface.  Links the shared library through its C API
// only; everything here is flag parsing, CSV formatting and run manifests.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kg1d.h"
#include "sha1.hpp"

namespace {

std::string fmt(double x, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

const char* parity_name(int p) { return p == KG1D_ODD ? "odd" : "even"; }

const char* branch_name(int b) {
    switch (b) {
        case KG1D_BRANCH_UPPER: return "upper";
        case KG1D_BRANCH_LOWER: return "lower";
        default: return "unassigned";
    }
}

struct GlobalOptions {
    double alpha = 1.0 / 137.0;
    double mass = 1.0;
    double tol_energy = 0, tol_cutoff = 0;
    double h0 = 0, growth = 0, x_max_factor = 0, x_max_cap = 0, blowup = 0;
    int threads = 0;
    bool manifest_only = false;
};

class Model {
public:
    Model(const GlobalOptions& g) {
        if (kg1d_status s = kg1d_model_create(g.alpha, g.mass, &model_)) {
            throw CLI::ValidationError("--alpha/--mass", kg1d_last_message());
        }
        kg1d_model_set_tolerances(model_, g.tol_energy, g.tol_cutoff);
        if (kg1d_model_set_mesh(model_, g.h0, g.growth, g.x_max_factor, g.x_max_cap,
                                g.blowup) != KG1D_OK)
            throw CLI::ValidationError("--mesh", kg1d_last_message());
        kg1d_model_set_threads(model_, g.threads);
    }
    ~Model() { kg1d_model_destroy(model_); }
    Model(const Model&) = delete;
    Model& operator=(const Model&) = delete;
    kg1d_model* get() const { return model_; }

private:
    kg1d_model* model_ = nullptr;
};

// Parameter block written at the top of every output, closed by a git-style
// content hash of the lines above it.  The elapsed line is appended after the
// hash so byte comparisons can drop it.
std::string manifest(const kg1d_model* model, const std::vector<std::string>& argv_rec) {
    double tol_e, tol_a, h0, growth, xmf, xmc, blowup;
    kg1d_model_get_tolerances(model, &tol_e, &tol_a);
    kg1d_model_get_mesh(model, &h0, &growth, &xmf, &xmc, &blowup);

    std::ostringstream os;
    os << "# kg1d " << kg1d_version() << "\n# command:";
    for (const std::string& a : argv_rec) os << ' ' << a;
    os << "\n";
    os << "# alpha=" << fmt(kg1d_model_alpha(model), "%.17g")
       << " mass=" << fmt(kg1d_model_mass(model), "%.17g")
       << " delta=" << fmt(kg1d_model_delta(model), "%.17g") << "\n";
    os << "# tol_energy_rel=" << fmt(tol_e) << " tol_cutoff_rel=" << fmt(tol_a) << "\n";
    os << "# mesh: h0=" << (h0 > 0 ? fmt(h0) : "auto") << " growth=" << fmt(growth)
       << " x_max_factor=" << fmt(xmf) << " x_max_cap=" << fmt(xmc)
       << " blowup_threshold=" << fmt(blowup) << "\n";
    const std::string body = os.str();
    return body + "# input-hash: sha1:" + kg1d_cli::git_blob_sha1(body) + "\n";
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

int status_to_exit(kg1d_status s) {
    if (s == KG1D_OK) return 0;
    if (s == KG1D_EINVAL || s == KG1D_EDOMAIN) return 2;
    return 1;  // solver failure: bracket, iteration, ambiguous, internal
}

[[noreturn]] void fail(kg1d_status s, const std::string& context) {
    std::cerr << "kg1d: " << context << ": " << kg1d_status_name(s);
    const char* msg = kg1d_last_message();
    if (msg && *msg) std::cerr << " (" << msg << ")";
    std::cerr << "\n";
    std::exit(status_to_exit(s));
}

void write_point_header(std::ostream& os) {
    os << "a,E,s,beta,parity,nodes,branch\n";
}

void write_point(std::ostream& os, const kg1d_point& pt) {
    os << fmt(pt.a) << ',' << fmt(pt.E) << ',' << fmt(pt.s) << ',' << fmt(pt.beta) << ','
       << parity_name(pt.parity) << ',' << pt.nodes << ',' << branch_name(pt.branch)
       << "\n";
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CommonArgs {
    std::string potential = "v1";
    std::string out;
    kg1d_family family() const { return potential == "v2" ? KG1D_V2 : KG1D_V1; }
};

double resolve_cutoff(const kg1d_model* model, double a, double s, const char* who) {
    if (a > 0 && s > 0) throw CLI::ValidationError(who, "--a and --s are exclusive");
    if (a <= 0 && s <= 0) throw CLI::ValidationError(who, "one of --a or --s is required");
    if (a > 0) return a;
    double converted = 0;
    if (kg1d_status st = kg1d_a_from_s(model, s, &converted)) fail(st, "a_from_s");
    return converted;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound states of the 1-d Klein-Gordon equation with cutoff Coulomb "
                 "potentials"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    GlobalOptions g;
    app.add_option("--alpha", g.alpha, "coupling constant (default 1/137)");
    app.add_option("--mass", g.mass, "mass in natural units (default 1)");
    app.add_option("--tol-e", g.tol_energy, "energy bisection tolerance (relative)");
    app.add_option("--tol-a", g.tol_cutoff, "cutoff bisection tolerance (relative)");
    app.add_option("--h0", g.h0, "mesh base step (default: automatic)");
    app.add_option("--growth", g.growth, "mesh per-step growth factor");
    app.add_option("--xmax-factor", g.x_max_factor, "domain length in units of 1/kappa");
    app.add_option("--xmax-cap", g.x_max_cap, "absolute domain cap");
    app.add_option("--blowup", g.blowup, "early-halt threshold on |psi|");
    app.add_option("--threads", g.threads, "worker cap (default: KG1D_THREADS or cores)");
    app.add_flag("--manifest-only", g.manifest_only, "print the run manifest and exit");

    // solve
    auto* solve = app.add_subcommand("solve", "energy bisection at fixed cutoff, or "
                                              "cutoff bisection at --fixed-energy");
    CommonArgs solve_c;
    double solve_a = 0, solve_s = 0, solve_elo = 0, solve_ehi = -1, solve_tol = 0;
    double solve_fixed_E = 0, solve_alo = 0, solve_ahi = 0;
    bool solve_cutoff_mode = false;
    std::string solve_parity = "even", solve_dump;
    int solve_nodes = 0;
    solve->add_option("--potential", solve_c.potential, "v1 or v2")
        ->check(CLI::IsMember({"v1", "v2"}))->required();
    solve->add_option("--a", solve_a, "cutoff radius");
    solve->add_option("--s", solve_s, "scaled cutoff s = m a / delta");
    solve->add_option("--parity", solve_parity)->check(CLI::IsMember({"even", "odd"}));
    solve->add_option("--nodes", solve_nodes, "target node count");
    solve->add_option("--e-lo", solve_elo, "window lower edge (default 0)");
    solve->add_option("--e-hi", solve_ehi, "window upper edge (default m)");
    solve->add_option("--fixed-energy", solve_fixed_E,
                      "search the cutoff at this energy instead")
        ->each([&](const std::string&) { solve_cutoff_mode = true; });
    solve->add_option("--a-lo", solve_alo, "cutoff window start (fixed-energy mode)");
    solve->add_option("--a-hi", solve_ahi, "cutoff window end (fixed-energy mode)");
    solve->add_option("--tol", solve_tol, "bisection tolerance override");
    solve->add_option("--out", solve_c.out, "output file (default stdout)");
    solve->add_option("--dump-shot", solve_dump, "write the converged shot trajectory CSV");

    // trace
    auto* trace = app.add_subcommand("trace", "trace the beta(s) curve");
    CommonArgs trace_c;
    std::string trace_mode = "energy", trace_branch = "upper";
    std::size_t trace_points = 400;
    double trace_beta_cap = 1e3, trace_slo = 0, trace_shi = 0;
    trace->add_option("--potential", trace_c.potential)->check(CLI::IsMember({"v1", "v2"}))
        ->required();
    trace->add_option("--mode", trace_mode)->check(CLI::IsMember({"energy", "cutoff"}));
    trace->add_option("--points", trace_points, "grid size (default 400)");
    trace->add_option("--beta-cap", trace_beta_cap, "energy-mode grid extent in beta");
    trace->add_option("--branch", trace_branch)->check(CLI::IsMember({"upper", "lower"}));
    trace->add_option("--s-lo", trace_slo, "cutoff-mode grid start (scaled)");
    trace->add_option("--s-hi", trace_shi, "cutoff-mode grid end (scaled)");
    trace->add_option("--out", trace_c.out, "output file (default stdout)");

    // special
    auto* special = app.add_subcommand("special", "locate s0, s_min, s_inf");
    CommonArgs special_c;
    special->add_option("--potential", special_c.potential)
        ->check(CLI::IsMember({"v1", "v2"}))->required();
    special->add_option("--out", special_c.out, "output file (default stdout)");

    // balmer
    auto* balmer = app.add_subcommand("balmer", "doublet table: formula vs numeric");
    CommonArgs balmer_c;
    double balmer_ma = 1e-4, balmer_a = 0;
    int balmer_nmax = 2;
    balmer->add_option("--potential", balmer_c.potential)
        ->check(CLI::IsMember({"v1", "v2"}));
    balmer->add_option("--ma", balmer_ma, "cutoff in units of 1/m (default 1e-4)");
    balmer->add_option("--a", balmer_a, "cutoff radius (overrides --ma)");
    balmer->add_option("--n-max", balmer_nmax, "largest principal index (default 2)");
    balmer->add_option("--out", balmer_c.out, "output file (default stdout)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "finite-difference pencil spectrum");
    CommonArgs oracle_c;
    double oracle_a = 0, oracle_xmax = 200;
    int oracle_ngrid = 2000;
    std::string oracle_parity = "even";
    bool oracle_rich = false;
    oracle->add_option("--potential", oracle_c.potential)
        ->check(CLI::IsMember({"v1", "v2"}))->required();
    oracle->add_option("--a", oracle_a, "cutoff radius")->required();
    oracle->add_option("--parity", oracle_parity)->check(CLI::IsMember({"even", "odd"}));
    oracle->add_option("--n-grid", oracle_ngrid, "interior grid points (default 2000)");
    oracle->add_option("--x-max", oracle_xmax, "domain truncation (default 200)");
    oracle->add_flag("--richardson", oracle_rich, "add the extrapolated lowest state");
    oracle->add_option("--out", oracle_c.out, "output file (default stdout)");

    // dump-shot
    auto* dump = app.add_subcommand("dump-shot", "trajectory of one integration");
    CommonArgs dump_c;
    double dump_a = 0, dump_s = 0, dump_E = 0, dump_beta = 0;
    bool dump_have_E = false, dump_have_beta = false;
    std::string dump_parity = "even";
    dump->add_option("--potential", dump_c.potential)->check(CLI::IsMember({"v1", "v2"}))
        ->required();
    dump->add_option("--a", dump_a, "cutoff radius");
    dump->add_option("--s", dump_s, "scaled cutoff");
    dump->add_option("--energy", dump_E, "shot energy")->each([&](const std::string&) {
        dump_have_E = true;
    });
    dump->add_option("--beta", dump_beta, "shot energy in scaled form")
        ->each([&](const std::string&) { dump_have_beta = true; });
    dump->add_option("--parity", dump_parity)->check(CLI::IsMember({"even", "odd"}));
    dump->add_option("--out", dump_c.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Model model(g);
        std::vector<std::string> argv_rec(argv, argv + argc);
        const std::string mani = manifest(model.get(), argv_rec);
        const auto t0 = std::chrono::steady_clock::now();

        if (g.manifest_only) {
            std::cout << mani;
            return 0;
        }

        if (*solve) {
            if (solve_tol > 0) kg1d_model_set_tolerances(model.get(), solve_tol, solve_tol);
            const kg1d_parity parity = solve_parity == "odd" ? KG1D_ODD : KG1D_EVEN;
            kg1d_point pt;
            kg1d_status st;
            double a;
            if (solve_cutoff_mode) {
                st = kg1d_solve_cutoff(model.get(), solve_c.family(), solve_fixed_E, parity,
                                       solve_nodes, solve_alo, solve_ahi, &pt);
                if (st != KG1D_OK) fail(st, "solve (fixed energy)");
                a = pt.a;
            } else {
                a = resolve_cutoff(model.get(), solve_a, solve_s, "solve");
                if (solve_ehi < 0) solve_ehi = g.mass;
                st = kg1d_solve_energy(model.get(), solve_c.family(), a, parity,
                                       solve_nodes, solve_elo, solve_ehi, &pt);
                if (st != KG1D_OK) fail(st, "solve");
            }
            Output out(solve_c.out);
            out.stream() << mani << "# elapsed-seconds: " << fmt(elapsed_since(t0)) << "\n";
            write_point_header(out.stream());
            write_point(out.stream(), pt);
            if (!solve_dump.empty()) {
                std::size_t need = 0;
                kg1d_shot_trace(model.get(), solve_c.family(), a, pt.E,
                                solve_parity == "odd" ? KG1D_ODD : KG1D_EVEN, nullptr,
                                nullptr, nullptr, 0, &need);
                std::vector<double> xs(need), psis(need), dpsis(need);
                st = kg1d_shot_trace(model.get(), solve_c.family(), a, pt.E,
                                     solve_parity == "odd" ? KG1D_ODD : KG1D_EVEN,
                                     xs.data(), psis.data(), dpsis.data(), need, &need);
                if (st != KG1D_OK) fail(st, "dump-shot");
                std::ofstream df(solve_dump);
                if (!df) fail(KG1D_EINVAL, "cannot open " + solve_dump);
                df << mani << "x,psi,dpsi\n";
                for (std::size_t i = 0; i < need; ++i)
                    df << fmt(xs[i]) << ',' << fmt(psis[i]) << ',' << fmt(dpsis[i]) << "\n";
            }
            return 0;
        }

        if (*trace) {
            Output out(trace_c.out);
            std::vector<kg1d_point> pts(trace_points);
            if (trace_mode == "energy") {
                std::vector<double> energies(trace_points);
                kg1d_status st = kg1d_default_beta_grid(model.get(), trace_beta_cap,
                                                        trace_points, energies.data());
                if (st != KG1D_OK) fail(st, "trace grid");
                st = kg1d_trace_energy(model.get(), trace_c.family(), energies.data(),
                                       trace_points, pts.data());
                if (st != KG1D_OK) fail(st, "trace");
                out.stream() << mani << "# elapsed-seconds: " << fmt(elapsed_since(t0))
                             << "\n";
                write_point_header(out.stream());
                for (const auto& pt : pts) write_point(out.stream(), pt);
            } else {
                if (trace_slo <= 0)
                    trace_slo = trace_c.family() == KG1D_V1 ? 1.05 : 2.05;
                if (trace_shi <= 0)
                    trace_shi = trace_branch == "upper"
                                    ? (trace_c.family() == KG1D_V1 ? 15.0 : 25.0)
                                    : (trace_c.family() == KG1D_V1 ? 6.1 : 11.9);
                std::vector<double> cutoffs(trace_points);
                for (std::size_t i = 0; i < trace_points; ++i) {
                    const double s = trace_slo * std::pow(trace_shi / trace_slo,
                                                          double(i) / (trace_points - 1));
                    if (kg1d_status st = kg1d_a_from_s(model.get(), s, &cutoffs[i]))
                        fail(st, "trace grid");
                }
                std::vector<kg1d_status> statuses(trace_points);
                kg1d_status st = kg1d_trace_cutoff(
                    model.get(), trace_c.family(), cutoffs.data(), trace_points,
                    trace_branch == "upper" ? KG1D_BRANCH_UPPER : KG1D_BRANCH_LOWER,
                    pts.data(), statuses.data());
                if (st != KG1D_OK) fail(st, "trace");
                out.stream() << mani << "# elapsed-seconds: " << fmt(elapsed_since(t0))
                             << "\n";
                write_point_header(out.stream());
                for (std::size_t i = 0; i < trace_points; ++i)
                    if (statuses[i] == KG1D_OK) write_point(out.stream(), pts[i]);
                for (std::size_t i = 0; i < trace_points; ++i)
                    if (statuses[i] != KG1D_OK)
                        out.stream() << "# skipped a=" << fmt(cutoffs[i])
                                     << ": no eigenvalue on the " << trace_branch
                                     << " branch window\n";
            }
            return 0;
        }

        if (*special) {
            kg1d_special sp;
            kg1d_status st = kg1d_special_points(model.get(), special_c.family(), &sp);
            if (st != KG1D_OK) fail(st, "special");
            double tol_e, tol_a;
            kg1d_model_get_tolerances(model.get(), &tol_e, &tol_a);
            Output out(special_c.out);
            std::ostream& os = out.stream();
            os << mani << "# elapsed-seconds: " << fmt(elapsed_since(t0)) << "\n";
            os << "quantity,value,note\n";
            os << "s0," << fmt(sp.s0) << ",cutoff bisection at E=0 tol_rel=" << fmt(tol_a)
               << "\n";
            os << "a0," << fmt(sp.a0) << ",\n";
            os << "s_min," << fmt(sp.s_min)
               << ",golden section tol_E=1e-06*m with parabolic refinement\n";
            os << "a_min," << fmt(sp.a_min) << ",\n";
            os << "E_at_min," << fmt(sp.E_at_min) << ",derived; not a published value\n";
            os << "s_inf," << fmt(sp.s_inf) << ",threshold shot at E=-m\n";
            os << "a_inf," << fmt(sp.a_inf) << ",\n";
            os << "s_inf_extrapolated," << fmt(sp.s_inf_extrapolated)
               << ",polynomial extrapolation kappa->0\n";
            os << "s_inf_rel_diff," << fmt(sp.s_inf_rel_diff)
               << ",methods_agree=" << (sp.methods_agree ? "yes" : "no")
               << " threshold=0.01\n";
            return 0;
        }

        if (*balmer) {
            const double a = balmer_a > 0 ? balmer_a : balmer_ma / g.mass;
            const bool with_formula = balmer_c.family() == KG1D_V1;
            std::vector<kg1d_doublet> doublets;
            for (int n = 1; n <= balmer_nmax; ++n) {
                kg1d_doublet d;
                kg1d_status st = kg1d_balmer_doublet(model.get(), balmer_c.family(), a, n,
                                                     &d);
                if (st != KG1D_OK) fail(st, "balmer");
                doublets.push_back(d);
            }
            Output out(balmer_c.out);
            std::ostream& os = out.stream();
            os << mani << "# elapsed-seconds: " << fmt(elapsed_since(t0)) << "\n";
            os << "n,a,epsilon_odd,epsilon_even,E_formula_odd,E_formula_even,"
                  "E_numeric_odd,E_numeric_even,binding_dev_odd,binding_dev_even\n";
            for (const kg1d_doublet& d : doublets) {
                os << d.n << ',' << fmt(d.a) << ',';
                if (with_formula) {
                    const double m = g.mass;
                    const double dev_odd = std::fabs((m - d.E_numeric_odd) -
                                                     (m - d.E_formula_odd)) /
                                           (m - d.E_formula_odd);
                    const double dev_even = std::fabs((m - d.E_numeric_even) -
                                                      (m - d.E_formula_even)) /
                                            (m - d.E_formula_even);
                    os << fmt(d.epsilon_odd) << ',' << fmt(d.epsilon_even) << ','
                       << fmt(d.E_formula_odd) << ',' << fmt(d.E_formula_even) << ','
                       << fmt(d.E_numeric_odd) << ',' << fmt(d.E_numeric_even) << ','
                       << fmt(dev_odd) << ',' << fmt(dev_even) << "\n";
                } else {
                    // Eq-form corrections are stated for V1 only: numeric columns only.
                    os << ",,,," << fmt(d.E_numeric_odd) << ',' << fmt(d.E_numeric_even)
                       << ",,\n";
                }
            }
            return 0;
        }

        if (*oracle) {
            std::size_t found = 0;
            std::vector<double> energies(64);
            std::vector<int> nodes(64);
            kg1d_status st = kg1d_oracle_spectrum(
                model.get(), oracle_c.family(), oracle_a,
                oracle_parity == "odd" ? KG1D_ODD : KG1D_EVEN, oracle_ngrid, oracle_xmax,
                energies.data(), nodes.data(), energies.size(), &found);
            if (st == KG1D_EBUFFER) {
                energies.resize(found);
                nodes.resize(found);
                st = kg1d_oracle_spectrum(model.get(), oracle_c.family(), oracle_a,
                                          oracle_parity == "odd" ? KG1D_ODD : KG1D_EVEN,
                                          oracle_ngrid, oracle_xmax, energies.data(),
                                          nodes.data(), energies.size(), &found);
            }
            if (st != KG1D_OK) fail(st, "oracle");
            double E_ext = 0, est = 0;
            if (oracle_rich) {
                st = kg1d_oracle_lowest(model.get(), oracle_c.family(), oracle_a,
                                        oracle_parity == "odd" ? KG1D_ODD : KG1D_EVEN,
                                        oracle_ngrid, oracle_xmax, &E_ext, &est);
                if (st != KG1D_OK) fail(st, "oracle richardson");
            }
            Output out(oracle_c.out);
            std::ostream& os = out.stream();
            os << mani << "# elapsed-seconds: " << fmt(elapsed_since(t0)) << "\n";
            os << "E,nodes,parity\n";
            for (std::size_t i = 0; i < found; ++i)
                os << fmt(energies[i]) << ',' << nodes[i] << ',' << oracle_parity << "\n";
            if (oracle_rich)
                os << "# richardson-lowest: E=" << fmt(E_ext, "%.15g")
                   << " error-estimate=" << fmt(est) << "\n";
            return 0;
        }

        if (*dump) {
            const double a = resolve_cutoff(model.get(), dump_a, dump_s, "dump-shot");
            if (dump_have_E == dump_have_beta)
                throw CLI::ValidationError("dump-shot",
                                           "exactly one of --energy or --beta required");
            double E = dump_E;
            if (dump_have_beta)
                if (kg1d_status st = kg1d_energy_from_beta(model.get(), dump_beta, &E))
                    fail(st, "energy_from_beta");
            std::size_t need = 0;
            kg1d_shot_trace(model.get(), dump_c.family(), a, E,
                            dump_parity == "odd" ? KG1D_ODD : KG1D_EVEN, nullptr, nullptr,
                            nullptr, 0, &need);
            std::vector<double> xs(need), psis(need), dpsis(need);
            kg1d_status st = kg1d_shot_trace(model.get(), dump_c.family(), a, E,
                                             dump_parity == "odd" ? KG1D_ODD : KG1D_EVEN,
                                             xs.data(), psis.data(), dpsis.data(), need,
                                             &need);
            if (st != KG1D_OK) fail(st, "dump-shot");
            Output out(dump_c.out);
            out.stream() << mani << "# elapsed-seconds: " << fmt(elapsed_since(t0)) << "\n";
            out.stream() << "x,psi,dpsi\n";
            for (std::size_t i = 0; i < need; ++i)
                out.stream() << fmt(xs[i]) << ',' << fmt(psis[i]) << ',' << fmt(dpsis[i])
                             << "\n";
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "kg1d: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
