// mixlab: command-line front end for the mixing lab.

#include "mixlab/bianchini.hpp"
#include "mixlab/counterexample.hpp"
#include "mixlab/field_io.hpp"
#include "mixlab/flow.hpp"
#include "mixlab/parallel.hpp"
#include "mixlab/report.hpp"
#include "mixlab/rotation.hpp"
#include "mixlab/slide.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace mixlab;

namespace {

// "mixlab <sub> key=value ..." from every long option of the subcommand,
// parsed or defaulted.
std::string resolved_config(const CLI::App& sub) {
    std::ostringstream out;
    out << "mixlab " << sub.get_name();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name.empty()) continue;
        std::string value;
        if (!opt->results().empty()) {
            for (std::size_t k = 0; k < opt->results().size(); ++k) value += (k ? ";" : "") + opt->results()[k];
        } else {
            value = opt->get_default_str();
        }
        if (value.empty()) value = "-";
        for (char& c : value) {
            if (c == '\n' || c == ' ') c = '_';
        }
        out << ' ' << name << '=' << value;
    }
    return out.str();
}

void emit(const CsvTable& table, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << table.str();
    } else {
        table.write(path);
    }
}

struct SetSource {
    std::string input;
    std::string pattern = "half";
    int n = 64;
    int m = 3;

    void attach(CLI::App* sub) {
        sub->add_option("--set,--input", input, "Set file (mixlab-set v1); overrides --pattern");
        sub->add_option("--pattern", pattern, "Built-in set when no --input is given")
            ->check(CLI::IsMember({"half", "checkerboard", "square"}));
        sub->add_option("--N", n, "Cells per side for built-in sets");
        sub->add_option("--m", m, "Checkerboard block exponent (blocks of side 2^-m)");
    }

    IndicatorField load() const {
        if (!input.empty()) return read_field(input);
        const GridSpec spec(n);
        if (pattern == "checkerboard") return make_checkerboard(spec, m);
        if (pattern == "square") return make_initial_square(spec);
        return make_half_torus(spec);
    }
};

SemiNormParams radius_grid(double eps, int per_octave, double kappa) {
    if (per_octave < 1) throw std::invalid_argument("--per-octave must be positive");
    return SemiNormParams::make(eps, std::pow(2.0, 1.0 / per_octave), kappa);
}

std::string opt_text(const std::optional<double>& v) { return v ? format_number(*v) : std::string("none"); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixlab: quantitative mixing numerical lab"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // seminorm
    auto* sn = app.add_subcommand("seminorm", "Truncated Bianchini semi-norm of a set");
    SetSource sn_set;
    sn_set.attach(sn);
    double sn_eps = 1.0 / 64;
    int sn_oct = 4;
    double sn_rho = 0.0;
    std::string sn_csv;
    sn->add_option("--eps", sn_eps, "Inner radius");
    sn->add_option("--per-octave", sn_oct, "Radii per factor of two");
    sn->add_option("--rho", sn_rho, "Radius ratio (overrides --per-octave when > 1)");
    sn->add_option("--csv", sn_csv, "Per-radius profile CSV ('-' for stdout)");

    // mixscale
    auto* ms = app.add_subcommand("mixscale", "Mixing scale and per-radius ball-average ranges");
    SetSource ms_set;
    ms_set.attach(ms);
    double ms_eps = 1.0 / 64, ms_kappa = 1.0 / 3;
    int ms_oct = 4;
    std::string ms_csv;
    ms->add_option("--eps", ms_eps, "Smallest tested radius");
    ms->add_option("--kappa", ms_kappa, "Mixing constant");
    ms->add_option("--per-octave", ms_oct, "Radii per factor of two");
    ms->add_option("--csv", ms_csv, "Per-radius CSV with a scale footer (default stdout)");

    // run-scheme
    auto* rs = app.add_subcommand("run-scheme", "Recursive quadrisection scheme with cost ledger");
    int rs_levels = 3, rs_n = 64;
    double rs_eps = 0.0;
    std::string rs_ledger, rs_moves, rs_out;
    rs->add_option("--levels", rs_levels, "Number of levels");
    rs->add_option("--N", rs_n, "Cells per side");
    rs->add_option("--eps", rs_eps, "Semi-norm inner radius for per-level diagnostics (0: off)");
    rs->add_option("--ledger", rs_ledger, "Per-level ledger CSV ('-' for stdout)");
    rs->add_option("--moves", rs_moves, "Write the move list (mixlab-moves v1)");
    rs->add_option("--out,--output-set", rs_out, "Write the final set (mixlab-set v1)");

    // ledger
    auto* lg = app.add_subcommand("ledger", "Per-move semi-norm ledger against the rotation defect bound");
    SetSource lg_set;
    lg_set.pattern = "square";
    lg_set.attach(lg);
    std::string lg_moves, lg_csv;
    double lg_eps = 1.0 / 32;
    int lg_oct = 4;
    bool lg_corpus = false;
    unsigned long long lg_seed = 0;
    lg->add_option("--moves", lg_moves, "Move file (mixlab-moves v1)");
    lg->add_flag("--corpus", lg_corpus, "Use the seeded random corpus instead of --input/--moves");
    lg->add_option("--seed", lg_seed, "Corpus seed");
    lg->add_option("--eps", lg_eps, "Semi-norm inner radius");
    lg->add_option("--per-octave", lg_oct, "Radii per factor of two");
    lg->add_option("--csv", lg_csv, "Ledger CSV ('-' for stdout)");

    // slider
    auto* sl = app.add_subcommand("slider", "Sliding-strip puzzle on the discrete torus");
    int sl_n = 1, sl_depth = 40;
    std::string sl_mode = "bfs", sl_csv, sl_out;
    std::size_t sl_budget = 1u << 20;
    sl->add_option("--n", sl_n, "Half side of the torus Z^2 / 2n Z^2");
    sl->add_option("--mode", sl_mode, "bfs (exhaustive, n <= 2) or greedy")
        ->check(CLI::IsMember({"bfs", "greedy"}));
    sl->add_option("--max-depth", sl_depth, "BFS depth limit");
    sl->add_option("--budget", sl_budget, "Greedy move budget");
    sl->add_option("--out,--csv", sl_csv, "Move path CSV ('-' for stdout)");
    sl->add_option("--output-state", sl_out, "Write the final state (mixlab-slide v1)");

    // verify-prop22
    auto* vp = app.add_subcommand("verify-prop22", "Semi-norm change vs. time integral of the singular form");
    std::string vp_flow = "shear", vp_csv;
    double vp_a = 1.0, vp_T = 0.3, vp_eps = 0.0625, vp_period = 0.3, vp_c2 = 0.0;
    int vp_n = 256, vp_steps = 9, vp_oct = 16;
    SetSource vp_set;
    vp->add_option("--flow", vp_flow, "shear, alternating or translation")
        ->check(CLI::IsMember({"shear", "alternating", "translation"}));
    vp->add_option("--a", vp_a, "Flow amplitude (translation: x1 speed)");
    vp->add_option("--c2", vp_c2, "Translation x2 speed");
    vp->add_option("--period", vp_period, "Alternating shear period");
    vp->add_option("--T", vp_T, "Final time");
    vp->add_option("--eps", vp_eps, "Inner radius");
    vp->add_option("--N", vp_n, "Cells per side");
    vp->add_option("--steps", vp_steps, "Midpoint-rule time steps");
    vp->add_option("--per-octave", vp_oct, "Semi-norm radii per factor of two");
    vp->add_option("--set,--input", vp_set.input, "Set file; default is the horizontal half {x2 < 1/2}");
    vp->add_option("--csv", vp_csv, "Result CSV ('-' for stdout)");

    // counterexample
    auto* ce = app.add_subcommand("counterexample", "Multiscale lower-bound sets and upper-bound probe");
    int ce_m = 16, ce_l = 4, ce_trials = 0;
    double ce_probe_eps = 1.0 / 16;
    unsigned long long ce_seed = 0;
    std::string ce_csv;
    ce->add_option("--M", ce_m, "Scale exponent");
    ce->add_option("--L", ce_l, "Largest level count; rows for 2 .. L");
    ce->add_option("--trials", ce_trials, "Upper-bound probe trials (0: skip)");
    ce->add_option("--probe-eps", ce_probe_eps, "Probe separation");
    ce->add_option("--seed", ce_seed, "Probe seed");
    ce->add_option("--csv", ce_csv, "Bounds CSV ('-' for stdout)");

    // plot
    auto* pl = app.add_subcommand("plot", "SVG plots of scheme cost or multiscale bounds");
    std::string pl_kind = "scheme", pl_out = "plot.svg";
    int pl_levels = 5, pl_n = 256, pl_m = 16, pl_l = 5;
    pl->add_option("--kind", pl_kind, "scheme (cost vs log(1/eps)) or bounds (I vs log(1/eps))")
        ->check(CLI::IsMember({"scheme", "bounds"}));
    pl->add_option("--levels", pl_levels, "Scheme levels");
    pl->add_option("--N", pl_n, "Scheme grid size");
    pl->add_option("--M", pl_m, "Bounds scale exponent");
    pl->add_option("--L", pl_l, "Bounds largest level count");
    pl->add_option("--out", pl_out, "Output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "mixlab: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*sn) {
            const IndicatorField field = sn_set.load();
            const SemiNormParams p = sn_rho > 1.0 ? SemiNormParams::make(sn_eps, sn_rho)
                                                  : radius_grid(sn_eps, sn_oct, 1.0 / 3);
            const auto profile = seminorm_profile(field, p);
            CsvTable t(resolved_config(*sn), {"r", "weight", "term"});
            for (std::size_t j = 0; j < p.radii.size(); ++j) t.add_row({p.radii[j], p.weights[j], profile[j]});
            if (!sn_csv.empty()) emit(t, sn_csv);
            std::cout << format_number(bianchini_seminorm(field, p)) << '\n';
        } else if (*ms) {
            const IndicatorField field = ms_set.load();
            const SemiNormParams p = radius_grid(ms_eps, ms_oct, ms_kappa);
            const MixReport rep = mixing_scale(field, p);
            CsvTable t(resolved_config(*ms), {"r", "min_avg", "max_avg", "mixed"});
            for (const auto& s : rep.per_radius) {
                const bool mixed = s.min_avg >= ms_kappa - 1e-12 && s.max_avg <= 1.0 - ms_kappa + 1e-12;
                t.add_row({s.r, s.min_avg, s.max_avg, static_cast<long long>(mixed)});
            }
            const std::string doc = t.str() + "scale," + opt_text(rep.scale) + "\n";
            if (ms_csv.empty() || ms_csv == "-") {
                std::cout << doc;
            } else {
                write_text(ms_csv, doc);
            }
        } else if (*rs) {
            const GridSpec spec(rs_n);
            std::optional<SemiNormParams> diag;
            if (rs_eps > 0.0) diag = SemiNormParams::make(rs_eps, SemiNormParams::default_rho(), 1.0 / 8);
            const SchemeResult res = recursive_scheme(rs_levels, spec, diag ? &*diag : nullptr);
            CsvTable t(resolved_config(*rs),
                       {"level", "moves", "cost_units", "cost", "cumulative_cost", "mixing_scale", "seminorm"});
            double cumulative = 0.0;
            for (const auto& l : res.ledger) {
                cumulative += l.cost;
                t.add_row({static_cast<long long>(l.level), static_cast<long long>(l.moves),
                           static_cast<long long>(l.cost_units), l.cost, cumulative,
                           diag ? CsvField(opt_text(l.mixing_scale)) : CsvField(std::string("")),
                           diag ? CsvField(l.seminorm) : CsvField(std::string(""))});
            }
            if (!rs_ledger.empty()) emit(t, rs_ledger);
            if (!rs_moves.empty()) write_moves(rs_moves, res.moves);
            if (!rs_out.empty()) write_field(rs_out, res.final_field);
            std::cout << "total_cost " << format_number(res.moves.total_cost()) << '\n';
        } else if (*lg) {
            std::vector<CorpusCase> cases;
            if (lg_corpus) {
                cases = rotation_corpus(lg_set.n, lg_seed);
            } else {
                if (lg_moves.empty()) throw CLI::RequiredError("--moves (or --corpus)");
                cases.push_back({lg_set.load(), read_moves(lg_moves)});
            }
            CsvTable t(resolved_config(*lg),
                       {"case", "index", "ci", "cj", "s", "q", "seminorm", "delta", "ratio", "bound"});
            bool all_ok = true;
            double max_ratio = 0.0;
            for (std::size_t c = 0; c < cases.size(); ++c) {
                const auto& cs = cases[c];
                const SemiNormParams p = radius_grid(lg_eps, lg_oct, 1.0 / 3);
                const SeminormLedger led = seminorm_ledger(cs.field, cs.moves, p);
                for (std::size_t k = 0; k < led.rows.size(); ++k) {
                    const auto& m = cs.moves.moves()[k];
                    const double bound = rotation_defect_bound(cs.field.spec(), m, p);
                    all_ok = all_ok && std::abs(led.rows[k].delta) <= bound;
                    max_ratio = std::max(max_ratio, std::abs(led.rows[k].ratio));
                    t.add_row({static_cast<long long>(c), static_cast<long long>(k), static_cast<long long>(m.ci),
                               static_cast<long long>(m.cj), static_cast<long long>(m.s),
                               static_cast<long long>(m.q), led.rows[k].seminorm, led.rows[k].delta,
                               led.rows[k].ratio, bound});
                }
            }
            if (!lg_csv.empty()) emit(t, lg_csv);
            std::cout << "max_abs_ratio " << format_number(max_ratio) << "\nbound_holds " << (all_ok ? 1 : 0)
                      << '\n';
        } else if (*sl) {
            std::vector<SlideMove> path;
            SlideState final_state(sl_n);
            if (sl_mode == "bfs") {
                const SearchResult r =
                    bfs_min_moves(sl_n, SlideState::initial(sl_n), SlideState::target(sl_n), sl_depth);
                path = r.path;
                final_state = SlideState::initial(sl_n);
                for (const auto& m : path) final_state = apply_slide(final_state, m);
                std::cout << "distance " << (r.distance ? std::to_string(*r.distance) : std::string("none"))
                          << "\nstates_visited " << r.states_visited << '\n';
            } else {
                const GreedyResult g = greedy_mix(sl_n, sl_budget);
                path = g.path;
                final_state = g.state;
                std::cout << "moves " << g.moves << "\nreached_target " << (g.reached_target ? 1 : 0)
                          << "\nmixing_cells " << (g.mixing_cells ? std::to_string(*g.mixing_cells) : "none")
                          << '\n';
            }
            CsvTable t(resolved_config(*sl), {"step", "kind", "a", "b", "q"});
            for (std::size_t k = 0; k < path.size(); ++k) {
                const auto& m = path[k];
                const bool strip = m.kind == SlideMove::Kind::Strip;
                t.add_row({static_cast<long long>(k), std::string(strip ? "strip" : "rotate"),
                           static_cast<long long>(m.a), static_cast<long long>(m.b), static_cast<long long>(m.q)});
            }
            if (!sl_csv.empty()) emit(t, sl_csv);
            if (!sl_out.empty()) write_text(sl_out, format_slide(final_state));
        } else if (*vp) {
            const GridSpec spec(vp_n);
            IndicatorField field(spec);
            if (!vp_set.input.empty()) {
                field = read_field(vp_set.input);
            } else {
                for (int j = 0; j < vp_n / 2; ++j) {
                    for (int i = 0; i < vp_n; ++i) field.set(i, j, true);
                }
            }
            const AnalyticFlow flow = vp_flow == "shear"         ? AnalyticFlow::shear(vp_a)
                                      : vp_flow == "alternating" ? AnalyticFlow::alternating_shear(vp_a, vp_period)
                                                                 : AnalyticFlow::translation(vp_a, vp_c2);
            const SemiNormParams p = radius_grid(vp_eps, vp_oct, 1.0 / 3);
            const Prop22Check r = verify_prop22(field, flow, vp_T, p, vp_steps);
            CsvTable t(resolved_config(*vp), {"N", "steps", "lhs", "rhs", "gap"});
            t.add_row({static_cast<long long>(field.n()), static_cast<long long>(vp_steps), r.lhs, r.rhs, r.gap});
            if (!vp_csv.empty()) emit(t, vp_csv);
            std::cout << "lhs " << format_number(r.lhs) << "\nrhs " << format_number(r.rhs) << "\ngap "
                      << format_number(r.gap) << '\n';
        } else if (*ce) {
            if (ce_l < 2) throw std::invalid_argument("--L must be at least 2");
            CsvTable t(resolved_config(*ce), {"L", "eps", "E1", "E2", "E3", "I", "paper_floor"});
            for (int L = 2; L <= ce_l; ++L) {
                const BoundsReport r = decompose_E({ce_m, L});
                t.add_row({static_cast<long long>(L), r.eps, r.E1, r.E2, r.E3, r.I_total, r.E1_paper_floor});
            }
            emit(t, ce_csv);
            if (ce_trials > 0) {
                const ProbeReport pr = upper_bound_probe(ce_probe_eps, ce_trials, ce_seed);
                std::cerr << "probe max_ratio " << format_number(pr.max_ratio) << " worst_trial "
                          << pr.worst_trial << '\n';
            }
        } else if (*pl) {
            PlotSpec plot;
            if (pl_kind == "scheme") {
                const SchemeResult res = recursive_scheme(pl_levels, GridSpec(pl_n));
                PlotSeries s{"cumulative cost", {}};
                double cumulative = 0.0;
                for (const auto& l : res.ledger) {
                    cumulative += l.cost;
                    s.points.push_back({(l.level + 1) * std::log(2.0), cumulative});
                }
                plot = {"Quadrisection scheme cost", "log(1/eps), eps = mixing scale 2^-(n+1)", "total cost",
                        {s}};
            } else {
                if (pl_l < 2) throw std::invalid_argument("--L must be at least 2");
                PlotSeries s{"I(A,B)", {}}, f{"E1 floor", {}};
                for (int L = 2; L <= pl_l; ++L) {
                    const BoundsReport r = decompose_E({pl_m, L});
                    s.points.push_back({r.log_inv_eps, r.I_total});
                    f.points.push_back({r.log_inv_eps, r.E1_paper_floor});
                }
                plot = {"Multiscale sets: I(A,B) vs log(1/eps)", "log(1/eps)", "I(A,B)", {s, f}};
            }
            emit_svg(plot, pl_out);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "mixlab: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mixlab: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mixlab: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
