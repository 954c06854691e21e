// tripwell: stationary states, Landau-Zener sweeps and STIRAP runs of the
// nonlinear three-well model, with CSV/JSON output for figure reproduction.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tripwell/dynamics.hpp"
#include "tripwell/lz.hpp"
#include "tripwell/stationary.hpp"
#include "tripwell/stirap.hpp"
#include "tripwell/sweep.hpp"

using nlohmann::json;
using namespace tripwell;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Cell {
    std::variant<double, std::string> value;
    Cell(double d) : value(d) {}
    Cell(const char* s) : value(std::string(s)) {}
    Cell(std::string s) : value(std::move(s)) {}
    Cell(int i) : value(double(i)) {}
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            if (const double* d = std::get_if<double>(&row[i].value))
                os << fmt17(*d);
            else
                os << std::get<std::string>(row[i].value);
        }
        os << "\n";
    }
}

void write_json(const Table& t, std::ostream& os) {
    json out;
    out["columns"] = t.columns;
    out["rows"] = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& cell : row) {
            if (const double* d = std::get_if<double>(&cell.value))
                r.push_back(*d);
            else
                r.push_back(std::get<std::string>(cell.value));
        }
        out["rows"].push_back(std::move(r));
    }
    os << out.dump(1) << "\n";
}

std::string iso_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct OutputSink {
    std::string path;        // empty = stdout
    std::string format;      // csv | json
    json manifest_options;   // resolved configuration
    json diagnostics;
    std::vector<std::string> argv;

    void emit(const Table& t) const {
        if (path.empty()) {
            if (format == "json")
                write_json(t, std::cout);
            else
                write_csv(t, std::cout);
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        if (format == "json")
            write_json(t, os);
        else
            write_csv(t, os);

        json m;
        m["tool"] = "tripwell";
        m["version"] = kVersion;
        m["command"] = argv;
        m["created_utc"] = iso_utc_now();
        m["output"] = path;
        m["format"] = format;
        m["options"] = manifest_options;
        m["diagnostics"] = diagnostics;
        std::ofstream ms(path + ".manifest.json", std::ios::binary);
        ms << m.dump(1) << "\n";
    }
};

// grid/list syntax: "min:max:count", "a,b,c" or a single value
std::vector<double> parse_values(const std::string& spec, bool log_spaced) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double lo, hi;
        int count;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
            throw CLI::ValidationError("range", "expected min:max:count in '" + spec + "'");
        if (count == 1) return {lo};
        if (log_spaced && (lo <= 0.0 || hi <= 0.0))
            throw CLI::ValidationError("range", "log-spaced grid needs positive endpoints");
        for (int i = 0; i < count; ++i) {
            const double s = double(i) / (count - 1);
            out.push_back(log_spaced ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s);
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = spec.find(',', pos);
        const std::string tok = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok.empty()) throw CLI::ValidationError("list", "empty element in '" + spec + "'");
        out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("list", "no values in '" + spec + "'");
    return out;
}

// ---- eigen ----------------------------------------------------------------

struct EigenArgs {
    double delta = -0.4, v = 0.1, w = 0.2, g = -0.4;
    std::string eps = "-0.8:0.8:800";
    bool scan = false;
};

void run_eigen(const EigenArgs& a, OutputSink& sink, int /*threads*/) {
    const auto grid = parse_values(a.eps, false);
    if (grid.size() < 2) throw CLI::ValidationError("--eps", "need at least 2 grid points");
    const ModelParams base{grid.front(), a.delta, a.v, a.w, a.g};

    Table t;
    t.columns = {"epsilon", "branch_id", "mu", "a2", "b2", "c2", "classification", "fold_flag"};

    if (a.scan) {
        // independent states per grid point, threaded into branches by overlap
        std::vector<std::vector<StationaryState>> columns(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ModelParams p = base;
            p.epsilon = grid[i];
            columns[i] = find_stationary_states(p);
        }
        std::vector<std::pair<RealState, int>> open;  // last state per branch id
        int next_id = 0;
        std::vector<std::vector<std::pair<double, const StationaryState*>>> by_id;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::vector<std::pair<RealState, int>> still_open;
            std::vector<bool> taken(columns[i].size(), false);
            for (const auto& [prev_state, id] : open) {
                double best = 0.9;
                int match = -1;
                for (std::size_t k = 0; k < columns[i].size(); ++k) {
                    if (taken[k]) continue;
                    const double ov = std::abs(prev_state.dot(columns[i][k].state));
                    if (ov > best) {
                        best = ov;
                        match = int(k);
                    }
                }
                if (match >= 0) {
                    taken[std::size_t(match)] = true;
                    by_id[std::size_t(id)].push_back({grid[i], &columns[i][std::size_t(match)]});
                    still_open.push_back({columns[i][std::size_t(match)].state, id});
                }
            }
            for (std::size_t k = 0; k < columns[i].size(); ++k) {
                if (taken[k]) continue;
                by_id.emplace_back();
                by_id.back().push_back({grid[i], &columns[i][k]});
                still_open.push_back({columns[i][k].state, next_id});
                ++next_id;
            }
            open = std::move(still_open);
        }
        for (std::size_t id = 0; id < by_id.size(); ++id)
            for (const auto& [eps, s] : by_id[id])
                t.add({eps, int(id), s->mu, s->state[0] * s->state[0], s->state[1] * s->state[1],
                       s->state[2] * s->state[2], to_string(s->classification), 0});
        sink.diagnostics["branches"] = by_id.size();
        sink.emit(t);
        return;
    }

    // continuation mode: seed at both ends and the middle, drop duplicates
    std::vector<StationaryState> seeds;
    std::vector<double> seed_eps;
    for (double e : {grid.front(), grid[grid.size() / 2], grid.back()}) {
        ModelParams p = base;
        p.epsilon = e;
        for (const auto& s : find_stationary_states(p)) {
            seeds.push_back(s);
            seed_eps.push_back(e);
        }
    }

    std::vector<EigenBranch> branches;
    int truncated = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        ModelParams p = base;
        p.epsilon = seed_eps[i];
        // continue toward both window ends so mid-window seeds cover everything
        for (double target : {grid.back(), grid.front()}) {
            if (seed_eps[i] == target) continue;
            EigenBranch b = continue_branch(seeds[i], p, SweepParameter::Epsilon, seed_eps[i], target);
            if (b.truncated) ++truncated;
            if (b.points.size() < 2) continue;
            // a branch is new when some sampled point lies on none of the
            // others; points are dense along each curve, so nearest-point
            // matching works where interpolation in the parameter cannot
            // (folds have unbounded dmu/dparam)
            // accepted points sit at most one arclength step (1e-2) apart,
            // so a duplicate has a neighbor within ~half a step in every
            // coordinate
            auto on_branch = [](const EigenBranch& known, const BranchPoint& pt) {
                for (const auto& kp : known.points) {
                    if (std::abs(kp.param - pt.param) < 8e-3 &&
                        std::abs(kp.state.mu - pt.state.mu) < 8e-3 &&
                        std::abs(kp.state.state.dot(pt.state.state)) > 0.995)
                        return true;
                }
                return false;
            };
            bool duplicate = false;
            for (const auto& known : branches) {
                bool all_hit = true;
                const std::size_t stride = std::max<std::size_t>(1, b.points.size() / 7);
                for (std::size_t k = 0; k < b.points.size(); k += stride)
                    all_hit = all_hit && on_branch(known, b.points[k]);
                if (all_hit) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) branches.push_back(std::move(b));
        }
    }
    std::sort(branches.begin(), branches.end(), [](const EigenBranch& x, const EigenBranch& y) {
        return x.points.front().state.mu < y.points.front().state.mu;
    });

    for (std::size_t id = 0; id < branches.size(); ++id) {
        const auto& b = branches[id];
        std::size_t fold_next = 0;
        for (std::size_t k = 0; k + 1 < b.points.size(); ++k) {
            const double x0 = b.points[k].param, x1 = b.points[k + 1].param;
            for (double e : grid) {
                if (!((e > std::min(x0, x1) && e <= std::max(x0, x1)) || (k == 0 && e == x0)))
                    continue;
                ModelParams p = base;
                p.epsilon = e;
                const double s = x1 != x0 ? (e - x0) / (x1 - x0) : 0.0;
                RealState u = (1.0 - s) * b.points[k].state.state + s * b.points[k + 1].state.state;
                u /= u.norm();
                const double mu = (1.0 - s) * b.points[k].state.mu + s * b.points[k + 1].state.mu;
                auto polished = polish_state(u, mu, p);
                StationaryState st;
                if (polished && std::abs(polished->state.dot(u)) > 0.99) {
                    st = *polished;
                } else {
                    st.state = u;
                    st.mu = chemical_potential(u, p);
                    st.classification = classify_state(u, st.mu, p);
                }
                t.add({e, int(id), st.mu, st.state[0] * st.state[0], st.state[1] * st.state[1],
                       st.state[2] * st.state[2], to_string(st.classification), 0});
            }
            if (fold_next < b.fold_indices.size() && b.fold_indices[fold_next] == k + 1) {
                const auto& fp = b.points[k + 1];
                t.add({b.folds[fold_next], int(id), fp.state.mu, fp.state.state[0] * fp.state.state[0],
                       fp.state.state[1] * fp.state.state[1], fp.state.state[2] * fp.state.state[2],
                       to_string(fp.state.classification), 1});
                ++fold_next;
            }
        }
    }
    sink.diagnostics["branches"] = branches.size();
    sink.diagnostics["truncated_continuations"] = truncated;
    sink.emit(t);
}

// ---- lz ---------------------------------------------------------------

struct LZArgs {
    double delta = -0.4, v = 0.1, w = 0.2, g = -0.4;
    double alpha = 1e-3;
    std::string alphas;  // sweep grid, log-spaced ranges
    double span = 0.0;
    int branch = 0;
    int samples = 2000;
    double tol = 1e-10;
};

LZConfig to_config(const LZArgs& a) {
    LZConfig cfg;
    cfg.delta = a.delta;
    cfg.v = a.v;
    cfg.w = a.w;
    cfg.g = a.g;
    cfg.alpha = a.alpha;
    cfg.epsilon_span = a.span;
    cfg.branch = a.branch;
    cfg.samples = a.samples;
    cfg.tol = a.tol;
    return cfg;
}

void run_lz_run(const LZArgs& a, OutputSink& sink) {
    LZConfig cfg = to_config(a);
    if (cfg.alpha == 0.0) throw CLI::ValidationError("--alpha", "must be nonzero");
    const LZResult r = run_equal_slope(cfg);
    const EigenBranch branch = lz_branch(cfg);
    const auto overlap = project_on_branch(r.trajectory, branch);

    Table t;
    t.columns = {"t", "epsilon", "a2", "b2", "c2", "norm_dev", "branch_overlap"};
    for (std::size_t i = 0; i < r.trajectory.t.size(); ++i) {
        const auto pops = r.trajectory.populations(i);
        t.add({r.trajectory.t[i], r.trajectory.params[i].epsilon, pops[0], pops[1], pops[2],
               r.trajectory.norm_dev[i], overlap[i]});
    }
    sink.diagnostics["P"] = r.P;
    sink.diagnostics["norm_drift"] = r.norm_drift;
    sink.diagnostics["folds"] = branch.folds;
    sink.emit(t);
}

void run_lz_sweep(const LZArgs& a, OutputSink& sink, int threads) {
    if (a.alphas.empty()) throw CLI::ValidationError("--alpha", "sweep needs a grid or list");
    const auto alphas = parse_values(a.alphas, true);
    for (double al : alphas)
        if (al <= 0.0) throw CLI::ValidationError("--alpha", "sweep rates must be positive");
    const SweepResult r = sweep_alpha(to_config(a), alphas, threads);

    Table t;
    t.columns = {"alpha", "P", "P_lz_formula"};
    int failures = 0;
    for (const auto& pt : r.points) {
        if (!pt.ok) {
            ++failures;
            std::cerr << "lz sweep: alpha=" << pt.x << " failed: " << pt.error << "\n";
            continue;
        }
        t.add({pt.x, pt.y, lz_formula(a.v, pt.x)});
    }
    sink.diagnostics["failures"] = failures;
    if (t.rows.empty()) throw std::runtime_error("lz sweep: every point failed");
    sink.emit(t);
}

// ---- stirap ----------------------------------------------------------------

struct StirapArgs {
    double Delta = 0.1;
    double g = 0.0;
    std::string gs;
    double peak = PulseConfig{}.peak;
    double sigma = PulseConfig{}.sigma;
    double tau = PulseConfig{}.tau;
    double t0 = PulseConfig{}.t0;
    double t1 = PulseConfig{}.t1;
    std::string times;
    int samples = 2000;
    double tol = 1e-10;
};

StirapConfig to_config(const StirapArgs& a) {
    StirapConfig cfg;
    cfg.Delta = a.Delta;
    cfg.g = a.g;
    cfg.pulses = {a.peak, a.sigma, a.tau, a.t0, a.t1};
    cfg.samples = a.samples;
    cfg.tol = a.tol;
    validate(cfg.pulses);
    return cfg;
}

void run_stirap_run(const StirapArgs& a, OutputSink& sink) {
    const StirapConfig cfg = to_config(a);
    const StirapResult r = run_stirap(cfg);
    Table t;
    t.columns = {"t", "v", "w", "a2", "b2", "c2"};
    for (std::size_t i = 0; i < r.trajectory.t.size(); ++i) {
        const auto pops = r.trajectory.populations(i);
        t.add({r.trajectory.t[i], r.trajectory.params[i].v, r.trajectory.params[i].w, pops[0],
               pops[1], pops[2]});
    }
    sink.diagnostics["efficiency"] = r.efficiency;
    sink.diagnostics["norm_drift"] = r.norm_drift;
    sink.emit(t);
}

void run_stirap_sweep(const StirapArgs& a, OutputSink& sink, int threads) {
    if (a.gs.empty()) throw CLI::ValidationError("--g", "sweep needs a grid or list");
    const StirapConfig base = to_config(a);
    const auto gs = parse_values(a.gs, false);
    const SweepResult r = sweep_g(base, gs, threads);
    Table t;
    t.columns = {"g", "efficiency", "feasible", "horn_scenario"};
    int failures = 0;
    for (const auto& pt : r.points) {
        if (!pt.ok) {
            ++failures;
            std::cerr << "stirap sweep: g=" << pt.x << " failed: " << pt.error << "\n";
            continue;
        }
        t.add({pt.x, pt.y, stirap_feasible(pt.x, a.Delta) ? 1 : 0,
               to_string(horn_scenario(pt.x, a.Delta))});
    }
    sink.diagnostics["failures"] = failures;
    if (t.rows.empty()) throw std::runtime_error("stirap sweep: every point failed");
    sink.emit(t);
}

void run_stirap_levels(const StirapArgs& a, OutputSink& sink, int threads) {
    const StirapConfig cfg = to_config(a);
    const std::string spec = a.times.empty()
                                 ? fmt17(cfg.pulses.t0) + ":" + fmt17(cfg.pulses.t1) + ":241"
                                 : a.times;
    const auto times = parse_values(spec, false);
    const auto levels = stirap_levels(cfg, times, nullptr, threads);
    Table t;
    t.columns = {"t", "v", "w", "state_index", "mu", "a2", "b2", "c2", "classification"};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto [pv, pw] = pulse_pair(times[i], cfg.pulses);
        for (std::size_t k = 0; k < levels[i].size(); ++k) {
            const auto& s = levels[i][k];
            t.add({times[i], pv, pw, int(k), s.mu, s.state[0] * s.state[0],
                   s.state[1] * s.state[1], s.state[2] * s.state[2],
                   to_string(s.classification)});
        }
    }
    sink.emit(t);
}

int dispatch(const std::vector<std::string>& args);

void add_common(CLI::App* cmd, OutputSink& sink, int& threads, double& tol) {
    cmd->add_option("--out", sink.path, "output file (stdout when omitted)");
    cmd->add_option("--format", sink.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", threads, "worker threads for sweeps (0 = all cores)");
    cmd->add_option("--tol", tol, "integration tolerance per unit time")->capture_default_str();
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"nonlinear three-well mean-field toolkit"};
    app.set_version_flag("--version", std::string("tripwell ") + kVersion);
    app.set_config("--config", "", "key=value configuration file; flags take precedence");
    app.require_subcommand(1);

    OutputSink sink;
    sink.format = "csv";
    for (int i = 0; i < argc; ++i) sink.argv.push_back(argv[i]);
    int threads = 0;

    // eigen
    EigenArgs ea;
    double eigen_tol = 1e-10;
    auto* eigen = app.add_subcommand("eigen", "stationary levels over an epsilon window");
    eigen->add_option("--delta", ea.delta)->capture_default_str();
    eigen->add_option("--v", ea.v)->capture_default_str();
    eigen->add_option("--w", ea.w)->capture_default_str();
    eigen->add_option("--g", ea.g)->capture_default_str();
    eigen->add_option("--eps", ea.eps, "epsilon grid min:max:count")->capture_default_str();
    eigen->add_flag("--scan", ea.scan, "per-point search instead of branch continuation");
    add_common(eigen, sink, threads, eigen_tol);

    // lz
    LZArgs la;
    auto* lz = app.add_subcommand("lz", "equal-slope Landau-Zener experiments");
    lz->require_subcommand(1);
    auto* lz_run = lz->add_subcommand("run", "single ramp with trajectory output");
    auto* lz_sweep = lz->add_subcommand("sweep", "P(alpha) table, log-spaced ranges");
    for (auto* cmd : {lz_run, lz_sweep}) {
        cmd->add_option("--delta", la.delta)->capture_default_str();
        cmd->add_option("--v", la.v)->capture_default_str();
        cmd->add_option("--w", la.w)->capture_default_str();
        cmd->add_option("--g", la.g)->capture_default_str();
        cmd->add_option("--span", la.span, "epsilon truncation half-width (0 = auto)");
        cmd->add_option("--branch", la.branch, "initial branch: 0 lowest .. 2 highest");
        cmd->add_option("--samples", la.samples)->capture_default_str();
        add_common(cmd, sink, threads, la.tol);
    }
    lz_run->add_option("--alpha", la.alpha, "ramp rate (sign sets direction)")
        ->capture_default_str();
    lz_sweep->add_option("--alpha", la.alphas, "grid min:max:count (log) or comma list")
        ->required();

    // stirap
    StirapArgs sa;
    auto* stirap = app.add_subcommand("stirap", "counterintuitive pulse-pair transfer");
    stirap->require_subcommand(1);
    auto* st_run = stirap->add_subcommand("run", "single transfer with trajectory output");
    auto* st_sweep = stirap->add_subcommand("sweep", "efficiency versus nonlinearity");
    auto* st_levels = stirap->add_subcommand("levels", "instantaneous nonlinear levels");
    for (auto* cmd : {st_run, st_sweep, st_levels}) {
        cmd->add_option("--delta-detuning", sa.Delta, "detuning Delta = -epsilon = -delta")
            ->capture_default_str();
        cmd->add_option("--peak", sa.peak)->capture_default_str();
        cmd->add_option("--sigma", sa.sigma)->capture_default_str();
        cmd->add_option("--tau", sa.tau)->capture_default_str();
        cmd->add_option("--t0", sa.t0)->capture_default_str();
        cmd->add_option("--t1", sa.t1)->capture_default_str();
        cmd->add_option("--samples", sa.samples)->capture_default_str();
        add_common(cmd, sink, threads, sa.tol);
    }
    st_run->add_option("--g", sa.g)->capture_default_str();
    st_levels->add_option("--g", sa.g)->capture_default_str();
    st_sweep->add_option("--g", sa.gs, "grid min:max:count or comma list")->required();
    st_levels->add_option("--times", sa.times, "time grid min:max:count or comma list");

    // rerun
    std::string manifest_path;
    auto* rerun = app.add_subcommand("rerun", "re-execute the command stored in a manifest");
    rerun->add_option("manifest", manifest_path, "path to a .manifest.json file")->required();

    // the command line is parsed before the config file; keeping the first
    // value makes explicit flags win over file entries
    for (auto* sub : {eigen, lz_run, lz_sweep, st_run, st_sweep, st_levels})
        for (auto* opt : sub->get_options())
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeFirst);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (eigen->parsed()) {
            sink.manifest_options = {{"delta", ea.delta}, {"v", ea.v}, {"w", ea.w}, {"g", ea.g},
                                     {"eps", ea.eps},     {"scan", ea.scan}};
            run_eigen(ea, sink, threads);
        } else if (lz->parsed()) {
            sink.manifest_options = {{"delta", la.delta},   {"v", la.v},
                                     {"w", la.w},           {"g", la.g},
                                     {"span", la.span},     {"branch", la.branch},
                                     {"samples", la.samples}, {"tol", la.tol}};
            if (lz_run->parsed()) {
                sink.manifest_options["alpha"] = la.alpha;
                run_lz_run(la, sink);
            } else {
                sink.manifest_options["alpha"] = la.alphas;
                run_lz_sweep(la, sink, threads);
            }
        } else if (stirap->parsed()) {
            sink.manifest_options = {{"delta_detuning", sa.Delta}, {"peak", sa.peak},
                                     {"sigma", sa.sigma},          {"tau", sa.tau},
                                     {"t0", sa.t0},                {"t1", sa.t1},
                                     {"samples", sa.samples},      {"tol", sa.tol}};
            if (st_run->parsed()) {
                sink.manifest_options["g"] = sa.g;
                run_stirap_run(sa, sink);
            } else if (st_sweep->parsed()) {
                sink.manifest_options["g"] = sa.gs;
                run_stirap_sweep(sa, sink, threads);
            } else {
                sink.manifest_options["g"] = sa.g;
                sink.manifest_options["times"] = sa.times;
                run_stirap_levels(sa, sink, threads);
            }
        } else if (rerun->parsed()) {
            std::ifstream is(manifest_path);
            if (!is) throw std::runtime_error("cannot read manifest: " + manifest_path);
            const json m = json::parse(is);
            std::vector<std::string> cmd = m.at("command").get<std::vector<std::string>>();
            if (cmd.size() < 2) throw std::runtime_error("manifest holds no command");
            cmd.erase(cmd.begin());
            return dispatch(cmd);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "tripwell: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "tripwell: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int dispatch(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.push_back("tripwell");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : full) argv.push_back(s.c_str());
    return run_cli(int(argv.size()), argv.data());
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
