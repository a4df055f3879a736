#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "exclusia/algebra.hpp"
#include "exclusia/charges.hpp"
#include "exclusia/errors.hpp"
#include "exclusia/kmc.hpp"
#include "exclusia/mpa.hpp"
#include "exclusia/process.hpp"
#include "report.hpp"

namespace {

using namespace exclusia;
using cli::Json;

enum Exit { kOk = 0, kInternal = 1, kValidation = 2, kNonConvergence = 3, kResidual = 4, kIo = 5 };

struct Options {
    ProcessParams p;
    std::string output;
    std::string format = "json";

    // kmc
    kmc::TrajectoryConfig traj;
    std::string initial = "empty";

    // mpa / compare
    double mpa_tol = 1e-10;
    int m_max = mpa::kDefaultMmax;
    std::string methods = "exact,mpa";
    double max_deviation = -1.0;

    // verify-algebra
    std::string kind;
    double j = 1.0;
    int M = 40;
    double x0 = 1.0;
    bool printed = false;
    double alg_tol = 1e-11;

    // charges
    int order = 3;
    double f = 1.0;
    double f_star = 1.0;
    double charge_tol = 1e-10;
};

Json header(const std::string& command, const Options& o) {
    Json j;
    j["schema"] = cli::kSchemaVersion;
    j["command"] = command;
    j["params"] = cli::to_json(o.p);
    return j;
}

void emit(const Options& o, const Json& report, const ObservableReport* profile) {
    if (o.format == "csv") {
        if (!profile) throw ValidationError("csv output is only available for density profiles");
        cli::write_output(o.output, cli::profile_csv(*profile));
    } else {
        cli::write_output(o.output, cli::dump(report));
    }
}

int run_exact(const Options& o) {
    o.p.validate();
    const MarkovGenerator gen = build_generator(o.p);
    const SteadyState ss = steady_state(gen);
    const ObservableReport r = observables(ss, o.p);
    Json j = header("exact", o);
    j["result"] = cli::to_json(r);
    j["result"]["residual"] = ss.residual;
    j["result"]["solver"] = ss.method;
    emit(o, j, &r);
    return kOk;
}

kmc::TrajectoryConfig trajectory(const Options& o) {
    kmc::TrajectoryConfig cfg = o.traj;
    if (o.initial == "empty") cfg.initial = kmc::InitialState::Empty;
    else if (o.initial == "full") cfg.initial = kmc::InitialState::Full;
    else if (o.initial == "product") cfg.initial = kmc::InitialState::Product;
    else throw ValidationError("initial must be empty, full or product");
    return cfg;
}

Json trajectory_json(const kmc::EstimateReport& e, const kmc::TrajectoryConfig& cfg) {
    return Json{{"t_burn", e.t_burn},        {"t_measure", e.t_measure}, {"replicas", e.replicas},
                {"seed", cfg.seed},          {"events", e.events},       {"middle_bond", e.middle_bond},
                {"current_left", e.current_left}, {"current_left_stderr", e.current_left_stderr},
                {"current_right", e.current_right}, {"current_right_stderr", e.current_right_stderr}};
}

int run_kmc(const Options& o) {
    o.p.validate();
    const kmc::TrajectoryConfig cfg = trajectory(o);
    const kmc::EstimateReport e = kmc::estimate(o.p, cfg);
    const ObservableReport r = kmc::to_observables(e);
    Json j = header("kmc", o);
    j["result"] = cli::to_json(r);
    j["trajectory"] = trajectory_json(e, cfg);
    emit(o, j, &r);
    return kOk;
}

int run_mpa(const Options& o) {
    o.p.validate();
    const ObservableReport r = mpa::mpa_observables(o.p, o.mpa_tol, o.m_max);
    Json j = header("mpa", o);
    j["result"] = cli::to_json(r);
    j["tol"] = o.mpa_tol;
    j["M_max"] = o.m_max;
    emit(o, j, &r);
    return kOk;
}

int run_ssep(const Options& o) {
    o.p.validate();
    const mpa::SsepClosedForm c = mpa::ssep_closed_forms(o.p);
    const ObservableReport r = mpa::ssep_observables(o.p);
    Json j = header("ssep", o);
    j["result"] = cli::to_json(r);
    j["result"]["lambda"] = c.lambda;
    j["result"]["log_Z"] = c.log_Z;
    j["result"]["z_ratio"] = c.z_ratio;
    emit(o, j, &r);
    return kOk;
}

Json scalars_json(const algebra::TriPairScalars& s) {
    Json j{{"beta", s.beta_s},  {"gamma", s.gamma_s}, {"gamma_star", s.gamma_s_star}, {"rho", s.rho},
           {"rho_star", s.rho_star}, {"omega", s.omega}, {"eta", s.eta},           {"eta_star", s.eta_star}};
    if (s.k) j["k"] = *s.k;
    if (s.k_star) j["k_star"] = *s.k_star;
    return j;
}

int run_verify(const Options& o) {
    if (o.kind.empty()) throw ValidationError("--kind is required");
    const auto kinds = algebra::relation_kinds();
    if (std::find(kinds.begin(), kinds.end(), o.kind) == kinds.end())
        throw ValidationError("unknown relation kind '" + o.kind + "'");
    if (!(o.alg_tol > 0.0)) throw ValidationError("tol must be > 0");
    if (o.M < 2 || o.M > 4096) throw ValidationError("M must lie in [2, 4096]");
    if (o.j > 50.0) throw ValidationError("j must be <= 50");
    ProcessParams p = o.p;
    p.L = std::max(p.L, 1);
    p.validate();
    const algebra::RelationInput in = algebra::standard_case(o.kind, p, o.j, o.M, o.x0, o.printed);
    const algebra::RelationReport rep = algebra::check_relations(o.kind, in);

    Json j = header("verify-algebra", o);
    j["kind"] = o.kind;
    j["j"] = o.j;
    j["M"] = o.M;
    j["x0"] = o.x0;
    j["printed_constants"] = o.printed;
    j["tol"] = o.alg_tol;
    j["dimension"] = in.mats.front().rows();
    j["interior_block"] = in.truncated;
    j["scalars"] = scalars_json(in.scalars);
    Json lines = Json::array();
    for (const auto& l : rep.lines)
        lines.push_back(Json{{"name", l.name}, {"residual", l.residual}, {"absolute", l.absolute}, {"degree", l.degree}});
    j["lines"] = lines;
    j["max_residual"] = rep.max_residual;
    j["passed"] = rep.passed(o.alg_tol);
    emit(o, j, nullptr);
    return rep.passed(o.alg_tol) ? kOk : kResidual;
}

int run_charges(const Options& o) {
    ProcessParams p = o.p;
    p.q = 1.0;
    p.validate();
    if (o.order < 0 || o.order > 10) throw ValidationError("order must lie in [0, 10]");
    const algebra::UqSu2Rep rep = algebra::build_uq_su2_rep(o.j, 1.0);
    const charges::BoundaryChargeReport bc = charges::ssep_boundary_charges(p, rep, o.x0);
    const charges::ChargeSequence cs = charges::ssep_charge_sequence(p, o.j, o.f, o.f_star, o.order, o.x0);
    const double comm = charges::max_commutator(cs);

    Json j = header("charges", o);
    j["j"] = o.j;
    j["x0"] = o.x0;
    j["order"] = o.order;
    j["f"] = o.f;
    j["f_star"] = o.f_star;
    j["tol"] = o.charge_tol;
    j["rho"] = cs.rho;
    j["rho_star"] = cs.rho_star;
    j["astar_scale"] = cs.astar_scale;
    std::vector<double> norms;
    for (const auto& q : cs.Q) norms.push_back(algebra::inf_norm(q));
    j["charge_norms"] = norms;
    j["max_commutator"] = comm;
    j["boundary"] = Json{{"rho", bc.rho},
                         {"rho_star", bc.rho_star},
                         {"residual_right", bc.residual_right},
                         {"residual_left", bc.residual_left},
                         {"printed_rho", bc.printed_rho},
                         {"printed_rho_star", bc.printed_rho_star},
                         {"printed_residual_right", bc.printed_residual_right},
                         {"printed_residual_left", bc.printed_residual_left}};
    const bool ok = comm <= o.charge_tol && bc.residual() <= o.charge_tol;
    j["passed"] = ok;
    emit(o, j, nullptr);
    return ok ? kOk : kResidual;
}

std::vector<std::string> split_methods(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string m; std::getline(ss, m, ',');)
        if (!m.empty()) out.push_back(m);
    return out;
}

double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ValidationError("observable size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::max(std::abs(a[i]), std::abs(b[i]));
        if (d > 0.0) m = std::max(m, std::abs(a[i] - b[i]) / d);
    }
    return m;
}

int run_compare(const Options& o) {
    o.p.validate();
    const auto methods = split_methods(o.methods);
    if (methods.size() < 2) throw ValidationError("compare needs at least two methods");
    std::map<std::string, ObservableReport> results;
    for (const auto& m : methods) {
        if (results.count(m)) throw ValidationError("method '" + m + "' listed twice");
        if (m == "exact") results[m] = exact_observables(o.p);
        else if (m == "mpa") results[m] = mpa::mpa_observables(o.p, o.mpa_tol, o.m_max);
        else if (m == "ssep") results[m] = mpa::ssep_observables(o.p);
        else if (m == "kmc") results[m] = kmc::to_observables(kmc::estimate(o.p, trajectory(o)));
        else throw ValidationError("unknown method '" + m + "' (exact, mpa, ssep, kmc)");
    }
    Json j = header("compare", o);
    Json per = Json::object();
    for (const auto& [name, r] : results) per[name] = cli::to_json(r);
    j["methods"] = per;
    Json pairs = Json::array();
    double worst = 0.0;
    for (std::size_t a = 0; a < methods.size(); ++a)
        for (std::size_t b = a + 1; b < methods.size(); ++b) {
            const ObservableReport& ra = results[methods[a]];
            const ObservableReport& rb = results[methods[b]];
            std::vector<double> va = ra.densities, vb = rb.densities;
            va.push_back(ra.current);
            vb.push_back(rb.current);
            Json pj{{"methods", {methods[a], methods[b]}},
                    {"current_abs", std::abs(ra.current - rb.current)},
                    {"density_abs", max_abs(ra.densities, rb.densities)},
                    {"max_abs", max_abs(va, vb)},
                    {"max_rel", max_rel(va, vb)}};
            double dev = max_abs(va, vb);
            if (!ra.probabilities.empty() && !rb.probabilities.empty()) {
                const double dp = max_abs(ra.probabilities, rb.probabilities);
                pj["probability_abs"] = dp;
                dev = std::max(dev, dp);
            }
            worst = std::max(worst, dev);
            pairs.push_back(pj);
        }
    j["comparison"] = Json{{"pairs", pairs}, {"max_deviation", worst}};
    const bool checked = o.max_deviation >= 0.0;
    if (checked) {
        j["comparison"]["threshold"] = o.max_deviation;
        j["comparison"]["passed"] = worst <= o.max_deviation;
    }
    emit(o, j, nullptr);
    return checked && worst > o.max_deviation ? kResidual : kOk;
}

void add_process_options(CLI::App& app, Options& o) {
    app.add_option("--q", o.p.q, "left/right hop rate ratio")->capture_default_str();
    app.add_option("--alpha", o.p.alpha, "injection rate at site 1")->capture_default_str();
    app.add_option("--beta", o.p.beta, "extraction rate at site L")->capture_default_str();
    app.add_option("--gamma", o.p.gamma, "extraction rate at site 1")->capture_default_str();
    app.add_option("--delta", o.p.delta, "injection rate at site L")->capture_default_str();
    app.add_option("--L", o.p.L, "number of sites")->capture_default_str();
    app.add_option("-o,--output", o.output, "report path, '-' for stdout");
    app.add_option("--format", o.format, "json or csv (profiles only)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

void add_kmc_options(CLI::App& app, Options& o) {
    app.add_option("--t-burn", o.traj.t_burn, "burn-in time, negative for the default 10 L / min rate");
    app.add_option("--t-measure", o.traj.t_measure, "measurement time")->capture_default_str();
    app.add_option("--replicas", o.traj.n_replicas, "independent replicas")->capture_default_str();
    app.add_option("--seed", o.traj.seed, "RNG seed")->capture_default_str();
    app.add_option("--initial", o.initial, "empty, full or product")->capture_default_str();
    app.add_option("--rho0", o.traj.rho0, "density of the product initial state")->capture_default_str();
    app.add_option("--threads", o.traj.threads, "worker threads for replicas")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exclusia: stationary states and algebraic relations of open exclusion processes"};
    app.set_config("--config", "", "TOML or INI file with option values; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    add_process_options(app, o);

    auto* exact = app.add_subcommand("exact", "steady state from the full Markov generator");
    auto* kmc_cmd = app.add_subcommand("kmc", "kinetic Monte Carlo estimate");
    add_kmc_options(*kmc_cmd, o);
    auto* mpa_cmd = app.add_subcommand("mpa", "matrix product evaluation");
    mpa_cmd->add_option("--tol", o.mpa_tol, "relative truncation tolerance")->capture_default_str();
    mpa_cmd->add_option("--m-max", o.m_max, "largest truncation dimension")->capture_default_str();
    auto* ssep = app.add_subcommand("ssep", "closed forms for q = 1");
    auto* verify = app.add_subcommand("verify-algebra", "residuals of an algebraic relation on its reference representation");
    verify->add_option("--kind", o.kind, "relation kind")->required();
    verify->add_option("--j", o.j, "spin of the boundary representation")->capture_default_str();
    verify->add_option("--M", o.M, "truncation dimension of bulk and TASEP matrices")->capture_default_str();
    verify->add_option("--x0", o.x0, "x0 (x1 = -x0)")->capture_default_str();
    verify->add_flag("--printed-constants", o.printed, "use the printed closed-form constants");
    verify->add_option("--tol", o.alg_tol, "residual tolerance")->capture_default_str();
    auto* charges_cmd = app.add_subcommand("charges", "Dolan-Grady charges of the q = 1 boundary operators");
    charges_cmd->add_option("--j", o.j, "spin")->capture_default_str();
    charges_cmd->add_option("--order", o.order, "highest charge index n (Q_2n)")->capture_default_str();
    charges_cmd->add_option("--f", o.f, "coupling of A")->capture_default_str();
    charges_cmd->add_option("--f-star", o.f_star, "coupling of A*")->capture_default_str();
    charges_cmd->add_option("--x0", o.x0, "x0 (x1 = -x0)")->capture_default_str();
    charges_cmd->add_option("--tol", o.charge_tol, "tolerance on commutators and boundary residuals")
        ->capture_default_str();
    auto* compare = app.add_subcommand("compare", "run several methods and report deviations");
    compare->add_option("--methods", o.methods, "comma-separated: exact, mpa, ssep, kmc")->capture_default_str();
    compare->add_option("--tol", o.mpa_tol, "mpa truncation tolerance")->capture_default_str();
    compare->add_option("--m-max", o.m_max, "mpa truncation limit")->capture_default_str();
    compare->add_option("--max-deviation", o.max_deviation, "fail with exit 4 above this deviation");
    add_kmc_options(*compare, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*exact) return run_exact(o);
        if (*kmc_cmd) return run_kmc(o);
        if (*mpa_cmd) return run_mpa(o);
        if (*ssep) return run_ssep(o);
        if (*verify) return run_verify(o);
        if (*charges_cmd) return run_charges(o);
        if (*compare) return run_compare(o);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const ReducibleChainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const ResidualError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResidual;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kValidation;
}
