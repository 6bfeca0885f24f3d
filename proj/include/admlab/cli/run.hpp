#pragma once

#include <admlab/admlab.hpp>
#include <admlab/cli/artifacts.hpp>
#include <admlab/cli/schema.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace admlab::cli {

using nlohmann::json;

/// Configuration problem tied to a location in the scenario.
class config_error : public std::invalid_argument {
public:
    config_error(const std::string& pointer, const std::string& what)
        : std::invalid_argument(pointer.empty() ? what : pointer + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

struct options {
    std::string command;
    std::string scenario_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> modes;
    bool quiet = false;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"orlicz-norm", "simulate", "adm", "weiss", "sqfct", "counterexample",
                                            "iss", "iiss", "shift-demo", "probe-boundedness"};
    return c;
}

/// Scenario after schema validation and CLI overrides.
struct scenario {
    json doc;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> modes;

    const json& at(const std::string& key) const {
        if (!doc.contains(key)) throw config_error("/" + key, "required by this command");
        return doc.at(key);
    }
    json block(const std::string& key) const { return doc.contains(key) ? doc.at(key) : json::object(); }

    std::uint64_t require_seed(const std::string& why) const {
        if (!seed) throw config_error("/seed", "a seed is mandatory for " + why + " (set it in the scenario or pass --seed)");
        return *seed;
    }

    signals::scalar_field field() const {
        return doc.value("field", std::string("complex")) == "real" ? signals::scalar_field::real
                                                                      : signals::scalar_field::complex;
    }
};

namespace detail {

inline json num(double x) { return admissibility::number_or_string(x); }

inline json coeffs_json(const spectral::spectral_vector& v) {
    json out = json::array();
    for (const auto& c : v.coeffs) out.push_back(spectral::complex_to_json(c));
    return out;
}

inline orlicz::young_function young(const json& j, const std::string& ptr) {
    try {
        if (j.contains("power")) {
            const auto& p = j.at("power");
            return orlicz::young_function::power_law(p.value("coef", 1.0), p.at("p").get<double>());
        }
        if (!j.contains("segments")) throw config_error(ptr, "needs 'power' or 'segments'");
        return orlicz::young_from_json(j);
    } catch (const config_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw config_error(ptr, e.what());
    }
}

inline orlicz::sampled_function sampled(const json& j, const std::string& ptr) {
    auto values = j.at("values").get<std::vector<double>>();
    std::vector<double> grid;
    if (j.contains("grid")) {
        grid = j.at("grid").get<std::vector<double>>();
    } else if (j.contains("interval")) {
        const auto iv = j.at("interval").get<std::vector<double>>();
        grid = linspace(iv[0], iv[1], values.size() + 1);
    } else {
        throw config_error(ptr, "needs 'grid' or 'interval'");
    }
    if (grid.size() != values.size() + 1) {
        throw config_error(ptr + "/grid", "has " + std::to_string(grid.size()) + " points for " +
                                              std::to_string(values.size()) + " values (need one more)");
    }
    std::optional<orlicz::power_head> head;
    std::optional<orlicz::exponential_tail> tail;
    if (j.contains("head")) head = orlicz::power_head{j["head"].at("coef").get<double>(), j["head"].at("exponent").get<double>()};
    if (j.contains("tail")) tail = orlicz::exponential_tail{j["tail"].at("amplitude").get<double>(), j["tail"].at("rate").get<double>()};
    try {
        return orlicz::sampled_function(std::move(grid), std::move(values), head, tail);
    } catch (const std::invalid_argument& e) {
        throw config_error(ptr, e.what());
    }
}

inline spectral::diagonal_generator generator(const scenario& s) {
    const auto& g = s.at("generator");
    if (g.value("kind", std::string("explicit")) == "ray") {
        if (!g.contains("base") || (!g.contains("count") && !s.modes)) {
            throw config_error("/generator", "a ray needs 'base' and 'count'");
        }
    } else if (!g.contains("eigenvalues")) {
        throw config_error("/generator/eigenvalues", "required for explicit generators");
    }
    if (g.contains("weights") && g.contains("eigenvalues") && g["weights"].size() != g["eigenvalues"].size()) {
        throw config_error("/generator/weights", "must match the number of eigenvalues");
    }
    if (s.modes && g.contains("eigenvalues") && *s.modes > g["eigenvalues"].size()) {
        throw config_error("/generator/eigenvalues", "--modes " + std::to_string(*s.modes) + " exceeds the " +
                                                         std::to_string(g["eigenvalues"].size()) + " listed modes");
    }
    try {
        return spectral::generator_from_json(g, s.modes);
    } catch (const config_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw config_error("/generator", e.what());
    }
}

inline admissibility::input_operator input(const scenario& s, const spectral::diagonal_generator& a) {
    const auto& j = s.at("input");
    const auto kind = j.at("kind").get<std::string>();
    auto vec = [&](const json& v, const std::string& ptr) {
        if (v.size() > a.size()) {
            throw config_error(ptr, "has " + std::to_string(v.size()) + " coefficients, generator has " +
                                        std::to_string(a.size()) + " modes");
        }
        return spectral::vector_from_json(v, a.size());
    };
    if (kind == "full_diagonal") return admissibility::input_operator::full_diagonal();
    if (kind == "a_minus_one_x0") {
        if (!j.contains("x0")) throw config_error("/input/x0", "required for kind a_minus_one_x0");
        return admissibility::input_operator::a_minus_one(vec(j.at("x0"), "/input/x0"));
    }
    if (!j.contains("columns")) throw config_error("/input/columns", "required for kind columns");
    std::vector<spectral::spectral_vector> cols;
    for (std::size_t i = 0; i < j.at("columns").size(); ++i) {
        cols.push_back(vec(j["columns"][i], "/input/columns/" + std::to_string(i)));
    }
    return admissibility::input_operator::columns(std::move(cols));
}

inline std::vector<double> horizons(const scenario& s, const json& blk) {
    if (blk.contains("horizons")) return blk.at("horizons").get<std::vector<double>>();
    if (s.doc.contains("horizons")) return s.doc.at("horizons").get<std::vector<double>>();
    return {1.0};
}

inline admissibility::search_options search(const scenario& s, const json& blk) {
    admissibility::search_options o;
    o.pieces = blk.value("pieces", o.pieces);
    o.restarts = blk.value("restarts", o.restarts);
    o.iterations = blk.value("iterations", o.iterations);
    o.field = s.field();
    if (o.restarts > 0) o.seed = s.require_seed("randomized phase-search restarts");
    return o;
}

inline std::string render_signal(const signals::piecewise_signal& u) {
    std::ostringstream os;
    signals::write_csv(os, u);
    return os.str();
}

inline signals::piecewise_signal simulation_signal(const scenario& s, const spectral::diagonal_generator& a,
                                                   const admissibility::input_operator& b, double horizon) {
    const auto& j = s.at("simulate").at("signal");
    const auto kind = j.at("kind").get<std::string>();
    const bool per_mode = b.kind() == admissibility::input_kind::full_diagonal;
    const std::size_t m = b.input_dim(a);
    auto wrap = [&](std::vector<signals::scalar_signal> ch) {
        return per_mode ? signals::piecewise_signal(signals::layout::per_mode, std::move(ch), a.weights())
                        : signals::piecewise_signal(signals::layout::input_channels, std::move(ch));
    };
    if (kind == "channels") {
        if (!j.contains("channels")) throw config_error("/simulate/signal/channels", "required for kind channels");
        const auto& chs = j.at("channels");
        if (chs.size() != m) {
            throw config_error("/simulate/signal/channels", "has " + std::to_string(chs.size()) +
                                                                " channels, the input operator expects " + std::to_string(m));
        }
        std::vector<signals::scalar_signal> out;
        for (std::size_t i = 0; i < chs.size(); ++i) {
            const std::string ptr = "/simulate/signal/channels/" + std::to_string(i);
            auto bp = chs[i].at("breakpoints").get<std::vector<double>>();
            auto vals = spectral::complex_list_from_json(chs[i].at("values"));
            if (bp.back() < horizon) throw config_error(ptr + "/breakpoints", "must reach the simulation horizon");
            try {
                out.emplace_back(std::move(bp), std::move(vals));
            } catch (const std::invalid_argument& e) {
                throw config_error(ptr, e.what());
            }
        }
        return wrap(std::move(out));
    }
    if (kind == "random") {
        std::mt19937_64 rng(s.require_seed("random input signals"));
        auto u = signals::random_signal(rng, horizon, j.value("pieces", std::size_t{8}), m, s.field(),
                                        j.value("amplitude", 1.0));
        return wrap(u.channels());
    }
    if (kind == "probe") {
        const auto mu = j.contains("mu") ? spectral::complex_from_json(j.at("mu")) : cplx{1.0, 0.0};
        std::vector<signals::scalar_signal> out(
            m, signals::scalar_signal::probe(mu, horizon, 1.0 / std::sqrt(static_cast<double>(m))));
        return wrap(std::move(out));
    }
    if (!per_mode) throw config_error("/simulate/signal/kind", "counterexample input needs input kind full_diagonal");
    if (horizon > 1.0) throw config_error("/simulate/horizon", "counterexample input lives on [0, 1]");
    try {
        return signals::counterexample_input(a.eigenvalues(), false, a.weights()).u;
    } catch (const std::invalid_argument& e) {
        throw config_error("/generator", e.what());
    }
}

inline json route_list(const certify::iss_verdict& v) {
    json j{{"bound_route", v.bound_route},
           {"trials", v.trials},
           {"checks", v.checks},
           {"violations", v.violations},
           {"max_ratio", num(v.max_ratio)},
           {"passed", v.passed()},
           {"kl", {{"M", v.bundle.m}, {"omega", v.bundle.omega}, {"gain", v.bundle.gain}}}};
    if (v.bundle.phi) {
        j["kl"]["phi"] = orlicz::to_json(*v.bundle.phi);
        j["kl"]["orlicz_constant"] = num(v.bundle.orlicz_constant);
    }
    return j;
}

inline certify::iss_options trial_options(const scenario& s, const json& blk) {
    certify::iss_options o;
    o.trials = blk.value("trials", o.trials);
    o.horizon = blk.value("horizon", o.horizon);
    o.time_points = blk.value("time_points", o.time_points);
    o.pieces = blk.value("pieces", o.pieces);
    o.field = s.field();
    if (blk.contains("adm_bound_override")) o.adm_bound_override = blk.at("adm_bound_override").get<double>();
    o.seed = s.require_seed("trajectory trials");
    return o;
}

inline void attach_dump(report& r, const certify::iss_verdict& v) {
    if (!v.dump) return;
    const auto& d = *v.dump;
    json dump{{"trial", d.trial}, {"t", d.t}, {"lhs", num(d.lhs)}, {"rhs", num(d.rhs)}, {"x0", coeffs_json(d.x0)},
              {"input_csv", "violation_input.csv"}};
    r.extra_files.emplace_back("violation.json", dump.dump(2) + "\n");
    r.extra_files.emplace_back("violation_input.csv", render_signal(d.u));
    r.body["violation"] = std::move(dump);
    r.exit_code = 2;
}

}  // namespace detail

inline report cmd_orlicz_norm(const scenario& s) {
    report r;
    const auto phi = detail::young(s.at("phi"), "/phi");
    const auto& blk = s.at("orlicz");
    const auto f = detail::sampled(blk.at("signal"), "/orlicz/signal");
    const double norm = orlicz::luxemburg_norm(phi, f);
    json res{{"phi", orlicz::to_json(phi)}, {"luxemburg_norm", detail::num(norm)}};
    if (norm > 0.0 && std::isfinite(norm)) res["modular_at_norm"] = detail::num(f.modular(phi, norm));
    std::optional<orlicz::young_function> conj;
    try {
        conj = orlicz::complementary(phi);
        res["complementary"] = orlicz::to_json(*conj);
    } catch (const unsupported_error& e) {
        res["complementary"] = e.what();
    }
    if (blk.contains("partner")) {
        const auto g = detail::sampled(blk.at("partner"), "/orlicz/partner");
        const auto h = orlicz::holder_bound(phi, f, g);
        res["holder"] = {{"lhs", detail::num(h.lhs)}, {"rhs", detail::num(h.rhs)}, {"holds", h.lhs <= h.rhs * (1 + 1e-12)}};
        if (h.lhs > h.rhs * (1 + 1e-12)) r.exit_code = 2;
    }
    if (blk.contains("dvp_tau")) {
        const auto d = orlicz::dvp_construct(f, blk.at("dvp_tau").get<double>());
        res["dvp"] = {{"phi", orlicz::to_json(d.phi)},
                      {"modular", detail::num(d.modular)},
                      {"modular_quadrature", detail::num(d.modular_quadrature)}};
    }
    r.body = std::move(res);

    double top = 0.0;
    for (double v : f.values()) top = std::max(top, v);
    const double x_max = norm > 0.0 && std::isfinite(norm) ? std::max(2.0 * top / norm, 1.0) : 1.0;
    plot_table yt{"young.csv", {"x [1]", "Phi [1]"}, {}};
    if (conj) yt.columns.push_back("Phi_conj [1]");
    for (double x : linspace(0.0, x_max, blk.value("plot_points", std::size_t{101}))) {
        if (conj) yt.add(x, phi(x), (*conj)(x));
        else yt.add(x, phi(x));
    }
    r.plots.push_back(std::move(yt));
    std::ostringstream sig;
    orlicz::write_csv(sig, f);
    r.extra_files.emplace_back("signal.csv", sig.str());
    r.summary.push_back("orlicz-norm: ||u||_Phi = " + plot_table::cell(norm));
    return r;
}

inline report cmd_simulate(const scenario& s) {
    report r;
    const auto a = detail::generator(s);
    const auto b = detail::input(s, a);
    const auto& blk = s.at("simulate");
    const double horizon = blk.at("horizon").get<double>();
    const auto u = detail::simulation_signal(s, a, b, horizon);
    spectral::spectral_vector x0{std::vector<cplx>(a.size()), spectral::scale::x};
    if (blk.contains("x0")) {
        if (blk["x0"].size() > a.size()) throw config_error("/simulate/x0", "more coefficients than modes");
        x0 = spectral::vector_from_json(blk.at("x0"), a.size());
    }
    plot_table traj{"trajectory.csv", {"t [time]", "norm_x [X norm]", "sup_u [U norm]"}, {}};
    spectral::spectral_vector last;
    for (double t : linspace(0.0, horizon, blk.value("time_points", std::size_t{21}))) {
        last = admissibility::state_at(a, b, x0, u, t);
        traj.add(t, spectral::space_norm(a, last), t > 0.0 ? u.sup_norm(t) : 0.0);
    }
    r.body = {{"modes", a.size()},
              {"input", std::string(admissibility::to_string(b.kind()))},
              {"horizon", horizon},
              {"input_sup", detail::num(u.sup_norm(horizon))},
              {"final_norm", detail::num(spectral::space_norm(a, last))},
              {"final_state", detail::coeffs_json(last)}};
    r.plots.push_back(std::move(traj));
    r.extra_files.emplace_back("signal.csv", detail::render_signal(u));
    r.summary.push_back("simulate: ||x(" + plot_table::cell(horizon) + ")|| = " +
                        plot_table::cell(spectral::space_norm(a, last)));
    return r;
}

inline report cmd_adm(const scenario& s) {
    report r;
    const auto a = detail::generator(s);
    const auto b = detail::input(s, a);
    const auto blk = s.block("adm");
    const auto hs = detail::horizons(s, blk);
    const auto opt = detail::search(s, blk);
    std::optional<orlicz::young_function> psi;
    if (s.doc.contains("psi")) psi = detail::young(s.doc.at("psi"), "/psi");

    std::vector<admissibility::adm_report> rows;
    plot_table curve{"bounds_vs_t.csv", {"t [time]", "lower [operator norm]", "upper [operator norm]"}, {}};
    auto sorted = hs;
    std::sort(sorted.begin(), sorted.end());
    for (double t : sorted) {
        rows.push_back(admissibility::linfty_bounds(a, b, t, opt));
        curve.add(t, rows.back().lower, rows.back().upper);
    }
    for (const auto& space : blk.value("spaces", std::vector<std::string>{})) {
        if (space == "EPhi" && !psi) throw config_error("/psi", "required for space EPhi");
        rows.push_back(admissibility::infinite_time_sup(a, b, space, hs, opt, psi));
    }
    json reps = json::array();
    bool consistent = true;
    for (const auto& row : rows) {
        reps.push_back(admissibility::to_json(row));
        consistent = consistent && row.consistent();
    }
    r.body = {{"modes", a.size()}, {"input", std::string(admissibility::to_string(b.kind()))}, {"reports", reps}};
    if (!consistent) {
        r.body["violation"] = "a lower bound exceeds an upper bound";
        r.exit_code = 2;
    }
    std::ostringstream csv;
    admissibility::write_csv(csv, rows);
    r.extra_files.emplace_back("bounds.csv", csv.str());
    r.plots.push_back(std::move(curve));

    if (blk.contains("zero_class")) {
        auto times = blk["zero_class"].at("times").get<std::vector<double>>();
        std::sort(times.rbegin(), times.rend());
        const auto zc = admissibility::zero_class_profile(a, b, times, opt, blk["zero_class"].value("floor", 0.25));
        plot_table z{"zero_class.csv", {"t [time]", "upper [operator norm]"}, {}};
        plot_table zl{"zero_class_lower.csv", {"t [time]", "lower [operator norm]"}, {}};
        json zr = json::array();
        for (auto it = zc.rows.rbegin(); it != zc.rows.rend(); ++it) {
            z.add(it->t, it->upper);
            zl.add(it->t, it->lower);
            zr.push_back({{"t", it->t}, {"lower", detail::num(it->lower)}, {"upper", detail::num(it->upper)}});
        }
        r.body["zero_class"] = {{"rows", zr}, {"zero_class_plausible", zc.zero_class_plausible}, {"obstructed", zc.obstructed}};
        r.plots.push_back(std::move(z));
        r.plots.push_back(std::move(zl));
        r.summary.push_back(std::string("adm: zero-class ") + (zc.zero_class_plausible ? "plausible" : "not plausible") +
                            (zc.obstructed ? ", obstructed" : ""));
    }
    for (const auto& row : rows) {
        r.summary.push_back("adm: Z=" + row.space + " t=" + plot_table::cell(row.t) + " lower " +
                            plot_table::cell(row.lower) + " upper " + plot_table::cell(row.upper) + " (" +
                            row.upper_route + ")");
    }
    return r;
}

inline report cmd_weiss(const scenario& s) {
    report r;
    const auto a = detail::generator(s);
    const auto b = detail::input(s, a);
    const auto blk = s.block("weiss");
    certify::weiss_options o;
    o.re_min = blk.value("re_min", o.re_min);
    o.re_max = blk.value("re_max", o.re_max);
    o.im_max = blk.value("im_max", o.im_max);
    o.re_points = blk.value("re_points", o.re_points);
    o.im_points = blk.value("im_points", o.im_points);
    o.refine = blk.value("refine", o.refine);
    const json ps = blk.value("p", json::array({"inf"}));
    plot_table t{"weiss.csv", {"p [exponent]", "grid_sup [norm]", "per_mode_max [norm]"}, {}};
    json rows = json::array();
    for (const auto& pj : ps) {
        const double p = pj.is_string() ? inf : pj.get<double>();
        const auto w = certify::weiss_check(a, b, p, o);
        rows.push_back({{"p", pj},
                        {"grid_sup", detail::num(w.grid_sup)},
                        {"argmax", spectral::complex_to_json(w.argmax)},
                        {"per_mode_max", detail::num(w.per_mode_max)},
                        {"closed_form_exact", w.closed_form_exact},
                        {"points", w.points},
                        {"skipped", w.skipped}});
        t.add(pj.is_string() ? std::string("inf") : plot_table::cell(p), w.grid_sup, w.per_mode_max);
        if (w.closed_form_exact && w.grid_sup > w.per_mode_max * (1.0 + 1e-9)) {
            rows.back()["violation"] = "grid value exceeds the exact supremum";
            r.exit_code = 2;
        }
        r.summary.push_back("weiss: p=" + (pj.is_string() ? std::string("inf") : plot_table::cell(p)) + " grid sup " +
                            plot_table::cell(w.grid_sup) + " closed form " + plot_table::cell(w.per_mode_max));
    }
    r.body = {{"modes", a.size()}, {"results", rows}};
    r.plots.push_back(std::move(t));
    return r;
}

inline report cmd_sqfct(const scenario& s) {
    report r;
    const auto a = detail::generator(s);
    const auto rep = certify::sqfct_constants(a);
    plot_table t{"sqfct_modes.csv", {"n [index]", "closed [1]", "quadrature [1]"}, {}};
    for (const auto& row : rep.rows) t.add(row.n, row.closed, row.quadrature);
    r.body = {{"modes", a.size()},
              {"k", detail::num(rep.k_lower)},
              {"K", detail::num(rep.k_upper)},
              {"max_rel_error", detail::num(rep.max_rel_error)},
              {"conventions",
               {{"decaying", detail::num(rep.conventions.decaying)},
                {"printed_partial", detail::num(rep.conventions.printed_partial)},
                {"printed_cutoff", detail::num(rep.conventions.printed_cutoff)},
                {"printed_divergent", rep.conventions.printed_divergent}}}};
    const auto samples = s.block("sqfct").value("weak_samples", std::size_t{0});
    if (samples > 0) {
        const auto w = certify::weak_sqfct_estimate(a, samples, s.require_seed("weak square-function sampling"));
        r.body["weak"] = {{"estimate", detail::num(w.estimate)},
                          {"diagonal_max", detail::num(w.diagonal_max)},
                          {"random_max", detail::num(w.random_max)},
                          {"pairs", w.pairs},
                          {"skipped", w.skipped},
                          {"phase_ratio_max", detail::num(w.phase_ratio_max)}};
    }
    r.plots.push_back(std::move(t));
    r.summary.push_back("sqfct: k = " + plot_table::cell(rep.k_lower) + ", K = " + plot_table::cell(rep.k_upper) +
                        ", quadrature rel. error " + plot_table::cell(rep.max_rel_error));
    return r;
}

inline report cmd_counterexample(const scenario& s) {
    report r;
    const auto blk = s.block("counterexample");
    auto ms = blk.value("modes", std::vector<std::size_t>{1, 10, 100, 10000});
    if (s.modes) ms = {*s.modes};
    certify::counterexample_options o;
    o.k_bound = blk.value("k_bound", o.k_bound);
    o.complex_spectrum = blk.value("complex", o.complex_spectrum);
    o.strict = blk.value("strict", o.strict);
    o.weiss_grid = blk.value("weiss_grid", o.weiss_grid);
    plot_table t{"counterexample.csv", {"M [modes]", "S_M [norm^2]", "theory [norm^2]", "column_bound [norm]"}, {}};
    json rows = json::array();
    for (std::size_t m : ms) {
        const auto row = certify::counterexample_run(m, o);
        rows.push_back({{"M", m},
                        {"S_M", detail::num(row.s_m)},
                        {"theory", detail::num(row.theory)},
                        {"input_sup", detail::num(row.input_sup)},
                        {"column_bound_max", detail::num(row.column_bound_max)},
                        {"column_bound_min", detail::num(row.column_bound_min)},
                        {"weiss_closed", detail::num(row.weiss_closed)},
                        {"weiss_grid", detail::num(row.weiss_grid)}});
        t.add(m, row.s_m, row.theory, row.column_bound_max);
        r.summary.push_back("counterexample: M=" + std::to_string(m) + " S_M=" + plot_table::cell(row.s_m) +
                            " theory=" + plot_table::cell(row.theory) + " (" + plot_table::cell(row.seconds) + " s)");
    }
    if (blk.value("support_table", true)) {
        const std::size_t m = *std::min_element(ms.begin(), ms.end());
        const auto ce = signals::counterexample_input(certify::counterexample_spectrum(m, o), o.strict);
        std::ostringstream os;
        signals::write_support_table(os, ce.table);
        r.extra_files.emplace_back("support_table.csv", os.str());
    }
    r.body = {{"k_bound", o.k_bound}, {"complex", o.complex_spectrum}, {"strict", o.strict}, {"rows", rows}};
    r.plots.push_back(std::move(t));
    return r;
}

inline report cmd_iss(const scenario& s) {
    report r;
    const auto a = detail::generator(s);
    const auto b = detail::input(s, a);
    const auto v = certify::iss_certificate(a, b, detail::trial_options(s, s.block("iss")));
    r.body = detail::route_list(v);
    detail::attach_dump(r, v);
    r.summary.push_back("iss: " + std::to_string(v.violations) + " violations in " + std::to_string(v.checks) +
                        " checks, gain " + plot_table::cell(v.bundle.gain) + " (" + v.bound_route + ")");
    return r;
}

inline report cmd_iiss(const scenario& s) {
    report r;
    const auto a = detail::generator(s);
    const auto b = detail::input(s, a);
    if (b.kind() != admissibility::input_kind::a_minus_one_x0) {
        throw config_error("/input/kind", "iiss needs kind a_minus_one_x0");
    }
    const auto psi = detail::young(s.at("psi"), "/psi");
    const auto v = certify::iiss_certificate(a, b, psi, detail::trial_options(s, s.block("iiss")));
    r.body = detail::route_list(v);
    detail::attach_dump(r, v);
    r.summary.push_back("iiss: " + std::to_string(v.violations) + " violations in " + std::to_string(v.checks) +
                        " checks, C " + plot_table::cell(v.bundle.orlicz_constant) + " (" + v.bound_route + ")");
    return r;
}

inline report cmd_shift_demo(const scenario& s) {
    report r;
    const auto phi = detail::young(s.at("phi"), "/phi");
    const auto& blk = s.at("shift");
    const auto f = detail::sampled(blk.at("f"), "/shift/f");
    if (f.start() < 0.0 || f.end() > 1.0) throw config_error("/shift/f", "must live on (0, 1)");
    const auto rep = certify::shift_demo(f, phi, blk.value("threshold", 1e6));
    r.body = {{"output_l1", detail::num(rep.output_l1)},
              {"input_l1", detail::num(rep.input_l1)},
              {"modular", detail::num(rep.modular)},
              {"divergent", rep.divergent},
              {"levels", rep.levels}};
    plot_table t{"shift.csv", {"s [time]", "f [1]", "y [1]"}, {}};
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        const double sx = f.grid()[i];
        t.add(sx, f.values()[i], certify::left_shift(f, sx).values().front());
    }
    r.plots.push_back(std::move(t));
    r.summary.push_back("shift-demo: ||Psi_1 f||_1 = " + plot_table::cell(rep.output_l1) + ", ||f||_1 = " +
                        plot_table::cell(rep.input_l1) + (rep.divergent ? ", modular divergent" : ""));
    return r;
}

inline report cmd_probe(const scenario& s) {
    report r;
    const auto& blk = s.at("probe");
    const auto res = certify::boundedness_probe(blk.at("base").get<double>(), blk.value("exponent", 1.0),
                                                blk.value("angle", 0.0), blk.at("modes").get<std::vector<std::size_t>>(),
                                                blk.at("times").get<std::vector<double>>());
    plot_table t{"probe.csv", {"N [modes]", "t [time]", "value [operator norm]"}, {}};
    json rows = json::array();
    for (const auto& row : res.rows) {
        t.add(row.modes, row.t, row.value);
        rows.push_back({{"N", row.modes}, {"t", row.t}, {"value", detail::num(row.value)}});
    }
    r.body = {{"rows", rows}, {"degrades", res.degrades}};
    r.plots.push_back(std::move(t));
    r.summary.push_back(std::string("probe-boundedness: ") + (res.degrades ? "degrades with N" : "stable in N"));
    return r;
}

inline report execute(const std::string& command, const scenario& s) {
    static const std::map<std::string, std::function<report(const scenario&)>> table{
        {"orlicz-norm", cmd_orlicz_norm}, {"simulate", cmd_simulate},   {"adm", cmd_adm},
        {"weiss", cmd_weiss},             {"sqfct", cmd_sqfct},         {"counterexample", cmd_counterexample},
        {"iss", cmd_iss},                 {"iiss", cmd_iiss},           {"shift-demo", cmd_shift_demo},
        {"probe-boundedness", cmd_probe}};
    const auto it = table.find(command);
    if (it == table.end()) throw config_error("", "unknown command '" + command + "'");
    return it->second(s);
}

inline std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error(path + ": cannot open");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

/// Load, validate and apply overrides.
inline scenario load_scenario(const std::string& text, std::string_view schema_text, const options& opt) {
    scenario s;
    s.doc = parse_json(text);
    const schema_validator v(json::parse(schema_text));
    const auto errors = v.validate(s.doc);
    if (!errors.empty()) {
        const auto& e = errors.front();
        throw config_error(e.pointer.empty() ? "/" : e.pointer, "schema violation: " + e.message);
    }
    if (s.doc.contains("seed")) s.seed = s.doc.at("seed").get<std::uint64_t>();
    if (opt.seed) s.seed = opt.seed;
    if (opt.modes) {
        if (*opt.modes == 0) throw config_error("--modes", "must be positive");
        s.modes = opt.modes;
    }
    return s;
}

inline std::filesystem::path output_dir(const options& opt, const scenario& s) {
    if (opt.out) return *opt.out;
    if (s.doc.contains("output")) return s.doc.at("output").get<std::string>();
    if (const char* env = std::getenv("ADMLAB_OUT"); env && *env) return env;
    return "admlab-out";
}

/// Run one command; returns the process exit code (0 ok, 1 config error, 2 violation or non-convergence).
inline int run(const options& opt, std::string_view schema_text, std::ostream& out, std::ostream& err) {
    try {
        const auto s = load_scenario(read_file(opt.scenario_path), schema_text, opt);
        auto r = execute(opt.command, s);
        json doc{{"command", opt.command},
                 {"scenario", s.doc.value("name", std::filesystem::path(opt.scenario_path).stem().string())},
                 {"scenario_hash", scenario_hash(s.doc)},
                 {"versions", versions_json()},
                 {"seed", s.seed ? json(*s.seed) : json(nullptr)},
                 {"modes_override", s.modes ? json(*s.modes) : json(nullptr)},
                 {"exit_code", r.exit_code},
                 {"result", std::move(r.body)}};
        const auto dir = output_dir(opt, s);
        write_atomic(dir / (opt.command + ".json"), doc.dump(2) + "\n");
        emit_plotdata(r, dir);
        for (const auto& [name, contents] : r.extra_files) write_atomic(dir / name, contents);
        if (!opt.quiet) {
            for (const auto& line : r.summary) out << line << '\n';
        }
        if (r.exit_code == 2) err << "admlab: certificate violation, dump written to " << dir.string() << '\n';
        return r.exit_code;
    } catch (const convergence_error& e) {
        err << "admlab: non-convergence: " << e.what() << '\n';
        return 2;
    } catch (const spectrum_hit& e) {
        err << "admlab: " << e.what() << '\n';
        return 2;
    } catch (const certificate_violation& e) {
        err << "admlab: certificate violation: " << e.what() << '\n';
        return 2;
    } catch (const json_syntax_error& e) {
        err << "admlab: " << opt.scenario_path << ": " << e.what() << '\n';
        return 1;
    } catch (const config_error& e) {
        err << "admlab: config error at " << e.what() << '\n';
        return 1;
    } catch (const io_error& e) {
        err << "admlab: " << e.what() << '\n';
        return 1;
    } catch (const json::exception& e) {
        err << "admlab: config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "admlab: config error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        err << "admlab: config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "admlab: " << e.what() << '\n';
        return 2;
    }
}

/// argv front end.
inline int cli_main(int argc, char** argv, std::string_view schema_text, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
    CLI::App app{"Admissibility and input-to-state stability lab for diagonal parabolic systems", "admlab"};
    options opt;
    std::string command;
    app.add_option("command", command, "one of: orlicz-norm simulate adm weiss sqfct counterexample iss iiss "
                                       "shift-demo probe-boundedness")
        ->required();
    app.add_option("--scenario", opt.scenario_path, "scenario JSON file")->required();
    std::string out_dir;
    auto* out_opt = app.add_option("--out", out_dir, "output directory (default: $ADMLAB_OUT or ./admlab-out)");
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed, overrides the scenario");
    std::size_t modes = 0;
    auto* modes_opt = app.add_option("--modes", modes, "override the mode count");
    app.add_flag("--quiet", opt.quiet, "suppress the summary lines");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }
    if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
        err << "admlab: unknown command '" << command << "'\n";
        return 1;
    }
    opt.command = command;
    if (*out_opt) opt.out = out_dir;
    if (*seed_opt) opt.seed = seed;
    if (*modes_opt) opt.modes = modes;
    return run(opt, schema_text, out, err);
}

}  // namespace admlab::cli
