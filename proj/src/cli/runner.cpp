#include "cbf/cli/runner.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <utility>

#include <json.hpp>

#include "cbf/cli/manufactured.hpp"
#include "cbf/cli/sha256.hpp"
#include "cbf/diagnostics/energy.hpp"
#include "cbf/diagnostics/stability.hpp"
#include "cbf/direct/solver.hpp"
#include "cbf/fields/io.hpp"
#include "cbf/fields/norms.hpp"
#include "cbf/fields/projection.hpp"
#include "cbf/fields/rng.hpp"
#include "cbf/inverse/fixed_point.hpp"
#include "cbf/inverse/lambda1.hpp"

namespace cbf::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Artifacts {
    fs::path dir;
    std::vector<std::string> names;

    /// Registers the name and returns the full path to write to.
    std::string path(const std::string& name) {
        names.push_back(name);
        return (dir / name).string();
    }
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// JSON has no infinities; out-of-range constants become null.
json fin_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << text;
    out.flush();
    if (!out) throw io_error("write failed: " + path);
}

void write_json_at(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

struct Column {
    const char* name;
    const char* description;
};

void write_csv(Artifacts& art, const std::string& stem, const std::vector<Column>& cols,
               const std::vector<std::vector<double>>& rows) {
    std::string body;
    for (std::size_t c = 0; c < cols.size(); ++c)
        body += std::string(c ? "," : "") + cols[c].name;
    body += "\n";
    for (const std::vector<double>& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) body += (c ? "," : "") + num(row[c]);
        body += "\n";
    }
    write_text(art.path(stem + ".csv"), body);

    json schema;
    schema["file"] = stem + ".csv";
    schema["columns"] = json::array();
    for (const Column& c : cols)
        schema["columns"].push_back({{"name", c.name}, {"description", c.description}});
    write_json_at(art.path(stem + ".schema.json"), schema);
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json grid_json(const Grid& g) { return {{"dim", g.dim()}, {"n", g.n()}}; }

json params_json(const direct::Params& p) {
    return {{"mu", p.mu}, {"alpha", p.alpha}, {"beta", p.beta},
            {"r", p.r},   {"T", p.T},         {"dt", p.dt}};
}

json condition_json(const inverse::ConditionCheck& c) {
    return {{"applicable", c.applicable},
            {"pass", c.pass},
            {"threshold", c.threshold},
            {"margin", c.margin}};
}

json verdict_json(const inverse::AdmissibilityVerdict& v) {
    return {{"dim", v.dim},
            {"mu", v.mu},
            {"beta", v.beta},
            {"r", v.r},
            {"lambda1", v.lambda1},
            {"phi_l4", v.phi_l4},
            {"planar", condition_json(v.planar)},
            {"supercritical", condition_json(v.supercritical)},
            {"critical", condition_json(v.critical)},
            {"alternative", condition_json(v.alternative)},
            {"admissible", v.admissible}};
}

json ledger_json(const diagnostics::LedgerEntry& e) {
    return {{"name", e.name},         {"lhs", e.lhs},
            {"rhs", e.rhs},           {"slack", e.slack},
            {"tol", e.tol},           {"hard", e.hard},
            {"pass", e.pass},         {"implied_c", fin_or_null(e.implied_c)},
            {"exact_zero", e.exact_zero}};
}

direct::StepControls to_controls(const SolverSpec& s) {
    direct::StepControls c;
    c.cfl = s.cfl;
    c.snapshot_stride = s.snapshot_stride;
    c.record_ut = s.record_ut;
    c.helmholtz_tol = s.helmholtz_tol;
    c.helmholtz_max_iter = s.helmholtz_max_iter;
    return c;
}

double modulation_value(const std::string& kind, double t) {
    return kind == "constant" ? 1.0 : 1.0 + t;
}

direct::SourceProfile modulation_profile(const std::string& kind, VectorField f) {
    if (kind == "constant")
        return direct::SourceProfile(std::move(f), [](double) { return 1.0; },
                                     [](double) { return 0.0; });
    return direct::SourceProfile(std::move(f), [](double t) { return 1.0 + t; },
                                 [](double) { return 1.0; });
}

/// The same planar vortex the two-dimensional stream construction yields,
/// sampled componentwise so it extends to a three-dimensional grid (third
/// component zero).  The face samples telescope to an exactly zero discrete
/// divergence.
VectorField planar_vortex(const Grid& g, double a) {
    constexpr double pi = std::numbers::pi;
    return fields::sample_vector(g, [a](int c, double x, double y, double) {
        if (c == 0) {
            const double s = std::sin(pi * x);
            return a * pi * s * s * std::sin(2 * pi * y);
        }
        if (c == 1) {
            const double s = std::sin(pi * y);
            return -a * pi * std::sin(2 * pi * x) * s * s;
        }
        return 0.0;
    });
}

VectorField seeded_field(const Grid& g, fields::Rng& rng, double amplitude,
                         const fields::LerayProjector& proj) {
    VectorField w = proj.apply(fields::random_vector(g, rng));
    const double nrm = fields::l2(w);
    fields::scale(w, (amplitude != 0.0 && nrm > 0.0) ? amplitude / nrm : 0.0);
    return w;
}

struct PreparedRun {
    VectorField u0;
    direct::SourceProfile src;
    std::optional<inverse::OverdeterminationData> exact;
};

PreparedRun prepare_run(const RunConfig& cfg, const Grid& g) {
    const SourceSpec& s = cfg.source;
    if (s.case_id == "zero") {
        VectorField u0 = g.dim() == 2 ? vortex_field(g, s.u0_amplitude)
                                      : planar_vortex(g, s.u0_amplitude);
        return {std::move(u0), modulation_profile(s.modulation, VectorField(g)), std::nullopt};
    }
    if (s.case_id == "random") {
        fields::Rng rng(cfg.seed);
        fields::LerayProjector proj(g);
        VectorField u0 = seeded_field(g, rng, s.u0_amplitude, proj);
        VectorField f = seeded_field(g, rng, s.amplitude, proj);
        return {std::move(u0), modulation_profile(s.modulation, std::move(f)), std::nullopt};
    }
    ManufacturedCase mc = make_manufactured(s.case_id, g, cfg.params, s);
    return {std::move(mc.u0), std::move(mc.source), std::move(mc.exact_final)};
}

void write_energy_tables(Artifacts& art, const direct::Trajectory& tr) {
    std::vector<std::vector<double>> rows;
    for (const direct::EnergySample& e : tr.energy) rows.push_back({e.t, e.h2, e.v2, e.lr});
    write_csv(art, "energy",
              {{"t", "time"},
               {"h2", "squared L2 norm of u"},
               {"v2", "squared H1 seminorm of u"},
               {"lr", "L^{r+1} norm of u raised to the power r+1"}},
              rows);
    if (!tr.ut_samples.empty()) {
        rows.clear();
        for (const direct::UtSample& s : tr.ut_samples) rows.push_back({s.t, s.h2, s.v2});
        write_csv(art, "ut",
                  {{"t", "time"},
                   {"h2", "squared L2 norm of the residual-form u_t"},
                   {"v2", "squared H1 seminorm of the residual-form u_t"}},
                  rows);
    }
}

json run_stats_json(const direct::Trajectory& tr) {
    return {{"steps", tr.steps},
            {"dt_eff", tr.dt_eff},
            {"snapshot_stride", tr.snapshot_stride},
            {"max_div", tr.max_div},
            {"u0_projection_change", tr.u0_projection_change},
            {"ut_bdf_discrepancy", tr.ut_bdf_discrepancy},
            {"ut_warning", tr.ut_warning}};
}

json source_stats_json(const RunConfig& cfg, const direct::Trajectory& tr) {
    return {{"case", cfg.source.case_id},
            {"modulation", cfg.source.modulation},
            {"f_l2", tr.f_l2},
            {"g_sup", tr.g_sup},
            {"gt_sup", tr.gt_sup}};
}

std::pair<double, std::string> resolve_lambda1(double configured, const Grid& g) {
    if (configured > 0.0) return {configured, "config"};
    return {inverse::estimate_lambda1(g).lambda1, "estimated"};
}

int run_direct(const RunConfig& cfg, Artifacts& art) {
    Grid g(cfg.dim, cfg.n);
    PreparedRun pr = prepare_run(cfg, g);
    const direct::Trajectory tr =
        direct::solve_direct(g, cfg.params, pr.u0, pr.src, to_controls(cfg.solver));

    fields::write_field(art.path("u0.cbf1"), pr.u0);
    fields::write_field(art.path("u_final.cbf1"), tr.u_final);
    fields::write_field(art.path("grad_p_final.cbf1"), tr.grad_p_final);
    fields::write_field(art.path("ut_final.cbf1"), tr.ut_final);
    write_energy_tables(art, tr);

    const double wall = tr.u_final.max_boundary_normal();
    const bool div_ok = tr.max_div <= 1e-10;
    const bool wall_ok = wall <= 1e-12;

    json rep;
    rep["mode"] = "direct";
    rep["grid"] = grid_json(g);
    rep["params"] = params_json(cfg.params);
    rep["seed"] = cfg.seed;
    rep["source"] = source_stats_json(cfg, tr);
    rep["run"] = run_stats_json(tr);
    rep["run"]["final_wall_max"] = wall;
    rep["energy"] = {{"initial",
                      {{"h2", tr.energy.front().h2},
                       {"v2", tr.energy.front().v2},
                       {"lr", tr.energy.front().lr}}},
                     {"final",
                      {{"h2", tr.energy.back().h2},
                       {"v2", tr.energy.back().v2},
                       {"lr", tr.energy.back().lr}}}};
    if (pr.exact) {
        VectorField du = tr.u_final;
        fields::axpy(du, -1.0, pr.exact->phi);
        VectorField dp = tr.grad_p_final;
        fields::axpy(dp, -1.0, pr.exact->grad_psi);
        const double un = fields::l2(pr.exact->phi);
        const double pn = fields::l2(pr.exact->grad_psi);
        const double ue = fields::l2(du), pe = fields::l2(dp);
        rep["exact"] = {{"u_abs_error", ue},
                        {"u_rel_error", un > 0.0 ? ue / un : ue},
                        {"grad_p_abs_error", pe},
                        {"grad_p_rel_error", pn > 0.0 ? pe / pn : pe}};
    } else {
        rep["exact"] = nullptr;
    }
    const bool all = div_ok && wall_ok;
    rep["checks"] = {{"divergence_bounded", div_ok}, {"walls_clean", wall_ok}, {"all", all}};
    write_json_at(art.path("report.json"), rep);
    return all ? 0 : 2;
}

int run_verify_energy(const RunConfig& cfg, Artifacts& art) {
    Grid g(cfg.dim, cfg.n);
    PreparedRun pr = prepare_run(cfg, g);
    const direct::Trajectory tr =
        direct::solve_direct(g, cfg.params, pr.u0, pr.src, to_controls(cfg.solver));
    const diagnostics::EnergyReport er = diagnostics::audit_energy(tr, cfg.energy.tol_scale);
    write_energy_tables(art, tr);

    json rep;
    rep["mode"] = "verify-energy";
    rep["grid"] = grid_json(g);
    rep["params"] = params_json(cfg.params);
    rep["seed"] = cfg.seed;
    rep["source"] = source_stats_json(cfg, tr);
    rep["run"] = run_stats_json(tr);
    rep["ledger"] = {
        {"energy_balance", ledger_json(er.energy_balance)},
        {"time_derivative", er.time_derivative ? ledger_json(*er.time_derivative) : json()},
        {"strong_norms", er.strong_norms ? ledger_json(*er.strong_norms) : json()}};
    rep["all_pass"] = er.all_pass;
    rep["checks"] = {{"all", er.all_pass}};
    write_json_at(art.path("report.json"), rep);
    return er.all_pass ? 0 : 2;
}

struct InvertData {
    inverse::OverdeterminationData data;
    VectorField u0;
    std::optional<VectorField> f_truth;
    json provenance;
};

InvertData assemble_invert_data(const RunConfig& cfg, const Grid& g) {
    const InvertSpec& iv = cfg.invert;
    const double gT = modulation_value(cfg.source.modulation, cfg.params.T);
    if (iv.data == "files") {
        VectorField phi = fields::read_vector(iv.phi_path);
        VectorField grad_psi = fields::read_vector(iv.grad_psi_path);
        VectorField u0 = fields::read_vector(iv.u0_path);
        if (phi.grid() != g || grad_psi.grid() != g || u0.grid() != g)
            throw structural_error("input fields do not match the configured grid");
        inverse::OverdeterminationData data{std::move(phi), std::move(grad_psi),
                                            const_field(g, gT), iv.g_floor};
        json prov = {{"route", "files"},
                     {"phi_path", iv.phi_path},
                     {"grad_psi_path", iv.grad_psi_path},
                     {"u0_path", iv.u0_path}};
        return {std::move(data), std::move(u0), std::nullopt, std::move(prov)};
    }

    if (g.dim() != 2)
        throw parameter_error("synthetic inversion data is two-dimensional");
    const int rf = iv.refine;
    const Grid gf(g.dim(), g.n() * rf);
    direct::Params fine = cfg.params;
    fine.dt = cfg.params.dt / rf;
    VectorField f_true_f = bump_field(gf, cfg.source.amplitude);
    VectorField u0_f = vortex_field(gf, cfg.source.u0_amplitude);
    const direct::Trajectory trf = direct::solve_direct(
        gf, fine, u0_f, modulation_profile(cfg.source.modulation, f_true_f));
    json prov = {{"route", "synthetic"}, {"refine", rf}};
    if (rf == 1) {
        inverse::OverdeterminationData data{trf.u_final, trf.grad_p_final, const_field(g, gT),
                                            iv.g_floor};
        return {std::move(data), std::move(u0_f), std::move(f_true_f), std::move(prov)};
    }
    inverse::OverdeterminationData data{fields::restrict_vector(trf.u_final),
                                        fields::restrict_vector(trf.grad_p_final),
                                        const_field(g, gT), iv.g_floor};
    return {std::move(data), fields::restrict_vector(u0_f),
            fields::restrict_vector(f_true_f), std::move(prov)};
}

int run_invert(const RunConfig& cfg, Artifacts& art) {
    Grid g(cfg.dim, cfg.n);
    InvertData id = assemble_invert_data(cfg, g);
    const auto [lambda1, lambda1_source] = resolve_lambda1(cfg.invert.lambda1, g);

    inverse::FixedPointOptions fo;
    fo.omega = cfg.invert.omega;
    fo.tol = cfg.invert.tol;
    fo.max_iter = cfg.invert.max_iter;
    fo.override_admissibility = cfg.invert.override_admissibility;
    fo.rescale_to_ball = cfg.invert.rescale_to_ball;
    fo.lambda1 = lambda1;

    const inverse::BOperator op(id.data, id.u0, cfg.params,
                                modulation_profile(cfg.source.modulation, VectorField(g)));
    const inverse::ReconstructionReport rr = inverse::fixed_point_solve(op, fo);

    fields::write_field(art.path("f_hat.cbf1"), rr.f_hat);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < rr.residual_history.size(); ++k) {
        const double ball = k + 1 < rr.ball_history.size() ? rr.ball_history[k + 1] : 0.0;
        rows.push_back({double(k + 1), rr.residual_history[k], ball});
    }
    write_csv(art, "convergence",
              {{"iter", "iteration number, starting at 1"},
               {"update_norm", "L2 norm of the iterate update"},
               {"iterate_norm", "L2 norm of the iterate"}},
              rows);

    json rep;
    rep["mode"] = "invert";
    rep["grid"] = grid_json(g);
    rep["params"] = params_json(cfg.params);
    rep["seed"] = cfg.seed;
    rep["modulation"] = cfg.source.modulation;
    rep["data"] = id.provenance;
    rep["data"]["phi_l4"] = id.data.phi_l4();
    rep["data"]["gradient_consistency"] = id.data.gradient_consistency();
    rep["data"]["g_T_floor"] = id.data.g_T_floor;
    rep["lambda1"] = {{"value", lambda1}, {"source", lambda1_source}};
    rep["solve"] = {{"omega", fo.omega},
                    {"tol", fo.tol},
                    {"max_iter", fo.max_iter},
                    {"iterations", rr.iterations},
                    {"converged", rr.converged},
                    {"final_residual",
                     rr.residual_history.empty() ? json() : json(rr.residual_history.back())},
                    {"initial_norm", rr.ball_history.front()},
                    {"ball_norm", rr.ball_norm},
                    {"left_ball", rr.left_ball},
                    {"fixed_point_defect", rr.fixed_point_defect},
                    {"rescale_to_ball", fo.rescale_to_ball}};
    rep["admissibility"] = rr.admissibility_checked ? verdict_json(rr.admissibility) : json();
    rep["admissibility_overridden"] = rr.admissibility_overridden;
    if (id.f_truth) {
        fields::write_field(art.path("f_true.cbf1"), *id.f_truth);
        VectorField d = rr.f_hat;
        fields::axpy(d, -1.0, *id.f_truth);
        const double tn = fields::l2(*id.f_truth);
        const double ae = fields::l2(d);
        const double re = tn > 0.0 ? ae / tn : ae;
        rep["truth"] = {{"f_l2", tn}, {"abs_error", ae}, {"rel_error", re}};
        write_csv(art, "truth_error",
                  {{"truth_l2", "L2 norm of the reference source"},
                   {"abs_error", "L2 norm of recovered minus reference"},
                   {"rel_error", "abs_error over truth_l2 (absolute when the truth is zero)"}},
                  {{tn, ae, re}});
    } else {
        rep["truth"] = nullptr;
    }
    rep["checks"] = {{"converged", rr.converged}, {"all", rr.converged}};
    write_json_at(art.path("report.json"), rep);
    return rr.converged ? 0 : 2;
}

diagnostics::DataBundle make_bundle(const Grid& g, const direct::Params& p,
                                    const direct::StepControls& ctl, const VectorField& u0,
                                    const VectorField& f_true, double delta_g) {
    const double dg = delta_g;
    direct::SourceProfile run_src(f_true, [dg](double t) { return (1.0 + dg) * (1.0 + t); },
                                  [dg](double) { return 1.0 + dg; });
    direct::Trajectory tr = direct::solve_direct(g, p, u0, run_src, ctl);
    inverse::OverdeterminationData data{std::move(tr.u_final), std::move(tr.grad_p_final),
                                        const_field(g, (1.0 + dg) * (1.0 + p.T)), 1.0};
    direct::SourceProfile tmpl(VectorField(g), [dg](double t) { return (1.0 + dg) * (1.0 + t); },
                               [dg](double) { return 1.0 + dg; });
    return {u0, std::move(data), std::move(tmpl)};
}

json stability_row_json(double delta, const diagnostics::StabilityReport& r) {
    return {{"delta", delta},
            {"sup_h", r.sup_h},
            {"l2_v", r.l2_v},
            {"lrp1", r.lrp1},
            {"f_diff", r.f_diff},
            {"lhs", r.lhs},
            {"data_u0", r.data_u0},
            {"data_g", r.data_g},
            {"data_gt", r.data_gt},
            {"data_phi_grad", r.data_phi_grad},
            {"data_pressure", r.data_pressure},
            {"rhs", r.rhs},
            {"implied_c", fin_or_null(r.implied_c)},
            {"exact_zero", r.exact_zero},
            {"complete", r.complete},
            {"iterations1", r.iterations1},
            {"iterations2", r.iterations2},
            {"snapshot_stride", r.snapshot_stride}};
}

int run_stability(const RunConfig& cfg, Artifacts& art) {
    Grid g(cfg.dim, cfg.n);
    if (g.dim() != 2)
        throw parameter_error("the stability experiment is two-dimensional");
    const direct::StepControls ctl = to_controls(cfg.solver);
    const VectorField f_true = bump_field(g, cfg.source.amplitude);
    const VectorField u0 = vortex_field(g, cfg.source.u0_amplitude);
    const auto [lambda1, lambda1_source] = resolve_lambda1(cfg.invert.lambda1, g);

    inverse::FixedPointOptions fo;
    fo.tol = cfg.stability.tol;
    fo.max_iter = cfg.stability.max_iter;
    fo.override_admissibility = cfg.invert.override_admissibility;
    fo.lambda1 = lambda1;

    const diagnostics::DataBundle base = make_bundle(g, cfg.params, ctl, u0, f_true, 0.0);
    const bool pert_initial = cfg.stability.target == "initial";

    json rows_json = json::array();
    std::vector<std::vector<double>> rows;
    std::vector<double> constants;
    bool all_complete = true;
    for (double delta : cfg.stability.deltas) {
        diagnostics::DataBundle pert =
            pert_initial
                ? [&] {
                      VectorField u0p = u0;
                      fields::axpy(u0p, delta, vortex_field(g, 1.0));
                      return make_bundle(g, cfg.params, ctl, u0p, f_true, 0.0);
                  }()
                : make_bundle(g, cfg.params, ctl, u0, f_true, delta);
        const diagnostics::StabilityReport r =
            diagnostics::stability_experiment(base, pert, cfg.params, fo, ctl);
        all_complete = all_complete && r.complete;
        constants.push_back(r.implied_c);
        rows_json.push_back(stability_row_json(delta, r));
        rows.push_back({delta, r.lhs, r.rhs, r.implied_c, r.sup_h, r.l2_v, r.lrp1, r.f_diff,
                        r.data_u0, r.data_g, r.data_gt, r.data_phi_grad, r.data_pressure});
    }
    const double spread = diagnostics::sweep_spread(constants);
    bool finite = true;
    for (double c : constants) finite = finite && std::isfinite(c) && c > 0.0;
    const bool spread_ok = spread <= 2.0;

    write_csv(art, "scaling",
              {{"delta", "perturbation size"},
               {"lhs", "solution-plus-source distance"},
               {"rhs", "data distance"},
               {"implied_c", "lhs over rhs"},
               {"sup_h", "sup over snapshots of the L2 distance"},
               {"l2_v", "L2-in-time H1 distance"},
               {"lrp1", "L^{r+1}-in-time distance"},
               {"f_diff", "L2 distance of the recovered sources"},
               {"data_u0", "initial-data distance"},
               {"data_g", "sup distance of the modulations"},
               {"data_gt", "sup distance of the modulation derivatives"},
               {"data_phi_grad", "H1 seminorm distance of the final data"},
               {"data_pressure", "pressure-minus-diffusion data distance"}},
              rows);

    json rep;
    rep["mode"] = "stability";
    rep["grid"] = grid_json(g);
    rep["params"] = params_json(cfg.params);
    rep["seed"] = cfg.seed;
    rep["target"] = cfg.stability.target;
    rep["source"] = {{"case", "separable bump"},
                     {"amplitude", cfg.source.amplitude},
                     {"u0_amplitude", cfg.source.u0_amplitude}};
    rep["lambda1"] = {{"value", lambda1}, {"source", lambda1_source}};
    rep["solve"] = {{"tol", fo.tol}, {"max_iter", fo.max_iter}};
    rep["rows"] = rows_json;
    rep["spread"] = fin_or_null(spread);
    const bool all = all_complete && finite && spread_ok;
    rep["checks"] = {{"all_complete", all_complete},
                     {"constants_finite", finite},
                     {"spread_bounded", spread_ok},
                     {"all", all}};
    write_json_at(art.path("report.json"), rep);
    return all ? 0 : 2;
}

int run_admissibility(const RunConfig& cfg, Artifacts& art) {
    Grid g(cfg.dim, cfg.n);
    double phi_l4 = cfg.admissibility.phi_l4;
    std::string phi_source = "config";
    if (!cfg.admissibility.phi_path.empty()) {
        const VectorField phi = fields::read_vector(cfg.admissibility.phi_path);
        if (phi.grid() != g)
            throw structural_error("phi file does not match the configured grid");
        phi_l4 = fields::lp(phi, 4.0);
        phi_source = "file";
    }
    const auto [lambda1, lambda1_source] = resolve_lambda1(cfg.admissibility.lambda1, g);
    const inverse::AdmissibilityVerdict v = inverse::check_admissibility(
        cfg.dim, cfg.params.mu, cfg.params.beta, cfg.params.r, phi_l4, lambda1);

    json rep = verdict_json(v);
    rep["mode"] = "admissibility";
    rep["grid"] = grid_json(g);
    rep["seed"] = cfg.seed;
    rep["lambda1_source"] = lambda1_source;
    rep["phi_l4_source"] = phi_source;
    rep["checks"] = {{"admissible", v.admissible}, {"all", v.admissible}};
    write_json_at(art.path("report.json"), rep);
    return v.admissible ? 0 : 2;
}

}  // namespace

int run(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    Artifacts art{fs::path(cfg.out_dir), {}};
    write_text(art.path("config.txt"), cfg.text);

    int code = 0;
    std::string error_msg;
    try {
        switch (cfg.mode) {
            case Mode::direct: code = run_direct(cfg, art); break;
            case Mode::invert: code = run_invert(cfg, art); break;
            case Mode::verify_energy: code = run_verify_energy(cfg, art); break;
            case Mode::stability: code = run_stability(cfg, art); break;
            case Mode::admissibility: code = run_admissibility(cfg, art); break;
        }
    } catch (const std::exception& e) {
        error_msg = e.what();
        code = 1;
    }

    json manifest;
    manifest["schema"] = "cbf-manifest-1";
    manifest["mode"] = mode_name(cfg.mode);
    manifest["config_sha256"] = sha256_hex(cfg.text);
    manifest["seed"] = cfg.seed;
    manifest["out"] = cfg.out_dir;
    manifest["status"] = code == 1 ? "partial" : "complete";
    manifest["exit_code"] = code;
    if (!error_msg.empty()) manifest["error"] = error_msg;
    manifest["artifacts"] = art.names;
    manifest["created_utc"] = utc_now();
    write_json_at((art.dir / "manifest.json").string(), manifest);

    if (code == 1) throw error(error_msg);
    return code;
}

}  // namespace cbf::cli
