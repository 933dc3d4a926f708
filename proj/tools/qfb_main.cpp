// Command-line front end: builds the fermion-boson models, fits the effective
// deformed Hamiltonians, and runs the algebra verification reports.

#include <CLI11.hpp>
#include <json.hpp>

#include "qfb/fit.hpp"
#include "qfb/models.hpp"
#include "qfb/polyalg.hpp"
#include "qfb/qeffective.hpp"
#include "qfb/spectra.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace qfb;

constexpr double kCoeffTol = 1e-8;
constexpr double kCasimirTol = 1e-9;
constexpr double kQRelationTol = 1e-10;

struct RunConfig {
    std::string command;
    std::string variant = "pp";
    int k = 1;
    int p = 1;
    double omega_f = 1.0;
    double omega_b = 1.0;
    double g = 0.0;
    double omega_cap = 1.0;
    double l = 0.0;
    std::optional<double> z;
    std::optional<double> chi;
    std::string metric = "rms";
    std::string out;
    std::string format = "json";
};

Variant parse_variant(const std::string& s) {
    if (s == "pp" || s == "plusplus" || s == "++") return Variant::PlusPlus;
    if (s == "pm" || s == "plusminus" || s == "+-") return Variant::PlusMinus;
    throw InvalidInput("unknown variant '" + s + "' (use pp or pm)");
}

Metric parse_metric(const std::string& s) {
    if (s == "rms") return Metric::RMS;
    if (s == "maxabs") return Metric::MaxAbs;
    if (s == "groundstate" || s == "gs") return Metric::GroundState;
    throw InvalidInput("unknown metric '" + s + "' (use rms, maxabs or groundstate)");
}

ModelSpec model_of(const RunConfig& cfg) {
    ModelSpec spec;
    spec.variant = parse_variant(cfg.variant);
    spec.k = cfg.k;
    spec.p = cfg.p;
    spec.omega_f = cfg.omega_f;
    spec.omega_b = cfg.omega_b;
    spec.g = cfg.g;
    spec.omega_cap = HalfInt::from_double(cfg.omega_cap);
    return spec;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw InvalidInput("config must be a flat JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "command") cfg.command = value.get<std::string>();
            else if (key == "variant") cfg.variant = value.get<std::string>();
            else if (key == "k") cfg.k = value.get<int>();
            else if (key == "p") cfg.p = value.get<int>();
            else if (key == "omega_f") cfg.omega_f = value.get<double>();
            else if (key == "omega_b") cfg.omega_b = value.get<double>();
            else if (key == "g") cfg.g = value.get<double>();
            else if (key == "omega_cap") cfg.omega_cap = value.get<double>();
            else if (key == "L") cfg.l = value.get<double>();
            else if (key == "z") cfg.z = value.get<double>();
            else if (key == "chi") cfg.chi = value.get<double>();
            else if (key == "metric") cfg.metric = value.get<std::string>();
            else if (key == "out") cfg.out = value.get<std::string>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else throw InvalidInput("unknown config key: " + key);
        } catch (const json::exception& e) {
            throw InvalidInput("config key '" + key + "': " + e.what());
        }
    }
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json inputs_json(const RunConfig& cfg) {
    json j{{"command", cfg.command}, {"variant", cfg.variant},  {"k", cfg.k},
           {"p", cfg.p},             {"omega_f", cfg.omega_f},  {"omega_b", cfg.omega_b},
           {"g", cfg.g},             {"omega_cap", cfg.omega_cap}, {"L", cfg.l},
           {"metric", cfg.metric},   {"format", cfg.format}};
    j["z"] = cfg.z ? json(*cfg.z) : json(nullptr);
    j["chi"] = cfg.chi ? json(*cfg.chi) : json(nullptr);
    return j;
}

struct CommandOutput {
    json document;
    std::vector<std::string> csv_lines;
    int exit_code = 0;
};

void emit(const RunConfig& cfg, const CommandOutput& out) {
    std::ostringstream body;
    if (cfg.format == "csv") {
        for (const auto& line : out.csv_lines) body << line << "\n";
    } else if (cfg.format == "json") {
        body << out.document.dump(2) << "\n";
    } else {
        throw InvalidInput("unknown format '" + cfg.format + "' (use json or csv)");
    }
    if (cfg.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw Error("cannot write output file: " + cfg.out);
        f << body.str();
    }
}

// ---- commands ----

CommandOutput cmd_spectrum(const RunConfig& cfg) {
    const ModelSpec spec = model_of(cfg);
    const HalfInt l = HalfInt::from_double(cfg.l);

    Matrix h;
    if (cfg.z) {
        // effective deformed spectrum at the given (z, chi)
        QModelSpec q;
        q.z = *cfg.z;
        q.chi = cfg.chi.value_or(0.0);
        q.omega_f = cfg.omega_f;
        q.omega_b = cfg.omega_b;
        q.omega_cap = spec.omega_cap;
        q.l_value = l;
        if (cfg.k == 1) {
            q.family = QFamily::DpsType;
            q.j = dps_j_mapping(spec.omega_cap, l);
            h = build_hq_dps(q).entries;
        } else {
            q.family = QFamily::LeType;
            q.j = spec.omega_cap;
            h = build_hq_le(q).entries;
        }
    } else {
        h = build_hamiltonian(spec, enumerate_subspace(spec, l)).entries;
    }
    const Spectrum s = eigh(h);

    CommandOutput out;
    out.document = {{"command", "spectrum"},
                    {"inputs", inputs_json(cfg)},
                    {"results", {{"eigenvalues", std::vector<double>(
                                                     s.eigenvalues.data(),
                                                     s.eigenvalues.data() + s.size())}}},
                    {"residuals", json::object()}};
    out.csv_lines.push_back("index,eigenvalue");
    for (int i = 0; i < s.size(); ++i) {
        out.csv_lines.push_back(std::to_string(i) + "," + fmt17(s.eigenvalues[i]));
    }
    return out;
}

json fit_row_json(double omega_cap, double l, double g, const std::string& metric,
                  const FitResult& fit, const std::string& error) {
    return {{"omega_cap", omega_cap},
            {"L", l},
            {"g", g},
            {"metric", metric},
            {"z_opt", fit.z_opt},
            {"q_opt", DeformationParam{fit.z_opt}.q()},
            {"chi_opt", fit.chi_opt},
            {"objective", fit.objective},
            {"baseline_q1", fit.baseline_q1},
            {"evaluations", fit.evaluations},
            {"converged", fit.converged},
            {"error", error}};
}

std::string fit_row_csv(double omega_cap, double l, double g, const std::string& metric,
                        const FitResult& fit, std::string error) {
    for (auto& c : error) {
        if (c == ',' || c == '\n') c = ';';
    }
    std::ostringstream os;
    os << fmt17(omega_cap) << ',' << fmt17(l) << ',' << fmt17(g) << ',' << metric << ','
       << fmt17(fit.z_opt) << ',' << fmt17(DeformationParam{fit.z_opt}.q()) << ','
       << fmt17(fit.chi_opt)
       << ',' << fmt17(fit.objective) << ',' << fmt17(fit.baseline_q1) << ','
       << fit.evaluations << ',' << (fit.converged ? "true" : "false") << ',' << error;
    return os.str();
}

constexpr const char* kFitCsvHeader =
    "omega_cap,L,g,metric,z_opt,q_opt,chi_opt,objective,baseline_q1,evaluations,converged,error";

CommandOutput cmd_fit(const RunConfig& cfg) {
    const ModelSpec spec = model_of(cfg);
    const HalfInt l = HalfInt::from_double(cfg.l);
    const Metric metric = parse_metric(cfg.metric);

    const Spectrum target = eigh(build_hamiltonian(spec, enumerate_subspace(spec, l)));
    const FamilyBuilder family =
        spec.k == 1 ? dps_family(spec.omega_f, spec.omega_b, spec.omega_cap, l)
                    : le_family(spec.omega_f, spec.omega_b, spec.omega_cap, l, spec.omega_cap);
    const FitResult fit = fit_q_chi(target, family, metric, FitBounds::for_scale(spec.g));

    CommandOutput out;
    out.document = {{"command", "fit"},
                    {"inputs", inputs_json(cfg)},
                    {"results", fit_row_json(cfg.omega_cap, cfg.l, cfg.g, cfg.metric, fit, "")},
                    {"residuals", {{"objective", fit.objective}}}};
    out.csv_lines.push_back(kFitCsvHeader);
    out.csv_lines.push_back(fit_row_csv(cfg.omega_cap, cfg.l, cfg.g, cfg.metric, fit, ""));
    return out;
}

CommandOutput cmd_sweep(const RunConfig& cfg) {
    const ModelSpec spec = model_of(cfg);
    const HalfInt l_max = HalfInt::from_double(cfg.l);
    const Metric metric = parse_metric(cfg.metric);
    if (l_max.twice() < 0) throw InvalidInput("sweep needs L >= 0 as the grid upper bound");

    std::vector<SweepPoint> grid;
    for (int t = 0; t <= l_max.twice(); ++t) {
        const HalfInt l = HalfInt::from_twice(t);
        if (is_valid_l(spec, l)) grid.push_back({spec, l});
    }
    const std::vector<SweepRow> rows = sweep(grid, metric);

    CommandOutput out;
    json jrows = json::array();
    out.csv_lines.push_back(kFitCsvHeader);
    for (const SweepRow& row : rows) {
        jrows.push_back(fit_row_json(row.point.spec.omega_cap.value(), row.point.l.value(),
                                     row.point.spec.g, cfg.metric, row.fit, row.error));
        out.csv_lines.push_back(fit_row_csv(row.point.spec.omega_cap.value(),
                                            row.point.l.value(), row.point.spec.g, cfg.metric,
                                            row.fit, row.error));
    }
    out.document = {{"command", "sweep"},
                    {"inputs", inputs_json(cfg)},
                    {"results", {{"rows", jrows}}},
                    {"residuals", json::object()}};
    return out;
}

Realization realization_of(const ModelSpec& spec) {
    switch (classify(spec)) {
        case ModelKind::DPS: return Realization::DPS;
        case ModelKind::LMG: return Realization::LMG;
        case ModelKind::LE_pm: return Realization::LE_pm;
        case ModelKind::LE_pp: return Realization::LE_pp;
        default:
            throw InvalidInput("no ladder-realization verification for this (variant, k, p)");
    }
}

CommandOutput cmd_verify_algebra(const RunConfig& cfg) {
    const ModelSpec spec = model_of(cfg);
    const HalfInt l = HalfInt::from_double(cfg.l);
    const Realization realization = realization_of(spec);

    const KOperators k = make_k_operators(realization, spec.omega_cap, l);
    const PolynomialAlgebra extracted = extract_commutator_polynomial(k);

    std::optional<PolynomialAlgebra> expected;
    std::string expected_note;
    try {
        expected = expected_structure_constants(realization, spec.omega_cap, l);
    } catch (const InvalidInput& e) {
        expected_note = e.what();
    }

    std::optional<double> coeff_residual;
    if (expected && !extracted.underdetermined) {
        double r = 0.0;
        const std::size_t n = std::max(extracted.coeffs.size(), expected->coeffs.size());
        for (std::size_t i = 0; i < n; ++i) {
            const double a = i < extracted.coeffs.size() ? extracted.coeffs[i] : 0.0;
            const double b = i < expected->coeffs.size() ? expected->coeffs[i] : 0.0;
            r = std::max(r, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
        coeff_residual = r;
    }

    const auto [c, cas] = build_casimir(realization, spec.omega_cap, l, k);
    const int dim = k.dim();
    const double lambda_obs = c.trace() / dim;
    const double centrality =
        (c - cas.expected_eigenvalue * Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() /
        (1.0 + std::abs(cas.expected_eigenvalue));

    // the Casimir must commute with the matching Hamiltonian at nonzero coupling
    const HamiltonianMatrix h = build_hamiltonian(spec, enumerate_subspace(spec, l));
    const double h_scale = std::max(1e-300, h.entries.cwiseAbs().maxCoeff());
    const double h_comm = commutator(c, h.entries).cwiseAbs().maxCoeff() / h_scale;

    const bool failed = (coeff_residual && *coeff_residual > kCoeffTol) ||
                        centrality > kCasimirTol || h_comm > kCasimirTol;

    CommandOutput out;
    out.exit_code = failed ? 3 : 0;
    json results{{"extracted", extracted.coeffs},
                 {"degree", extracted.degree},
                 {"underdetermined", extracted.underdetermined},
                 {"casimir_beta", cas.beta},
                 {"casimir_eigenvalue_expected", cas.expected_eigenvalue},
                 {"casimir_eigenvalue_observed", lambda_obs}};
    results["expected"] = expected ? json(expected->coeffs) : json(nullptr);
    if (!expected_note.empty()) results["expected_note"] = expected_note;
    json residuals{{"casimir_centrality", centrality}, {"hamiltonian_commutator", h_comm}};
    residuals["coefficient_max"] = coeff_residual ? json(*coeff_residual) : json(nullptr);
    out.document = {{"command", "verify-algebra"},
                    {"inputs", inputs_json(cfg)},
                    {"results", results},
                    {"residuals", residuals}};

    out.csv_lines.push_back("name,extracted,expected,residual");
    for (std::size_t i = 0; i < extracted.coeffs.size(); ++i) {
        const std::string exp_s =
            expected && i < expected->coeffs.size() ? fmt17(expected->coeffs[i]) : "";
        std::string res_s;
        if (expected) {
            const double b = i < expected->coeffs.size() ? expected->coeffs[i] : 0.0;
            res_s = fmt17(std::abs(extracted.coeffs[i] - b));
        }
        out.csv_lines.push_back("alpha_" + std::to_string(i) + "," + fmt17(extracted.coeffs[i]) +
                                "," + exp_s + "," + res_s);
    }
    out.csv_lines.push_back("casimir_eigenvalue," + fmt17(lambda_obs) + "," +
                            fmt17(cas.expected_eigenvalue) + "," +
                            fmt17(std::abs(lambda_obs - cas.expected_eigenvalue)));
    out.csv_lines.push_back("casimir_centrality," + fmt17(centrality) + ",,");
    out.csv_lines.push_back("hamiltonian_commutator," + fmt17(h_comm) + ",,");
    return out;
}

CommandOutput cmd_verify_q(const RunConfig& cfg) {
    const HalfInt j = HalfInt::from_double(cfg.omega_cap);
    const double z = cfg.z.value_or(0.0);
    const KOperators k = make_k_operators(Realization::qDPS, j, 0, z);
    const QRelationReport rep = verify_q_relations(k, j, z);

    CommandOutput out;
    out.exit_code = rep.pass(kQRelationTol) ? 0 : 3;
    out.document = {{"command", "verify-q"},
                    {"inputs", inputs_json(cfg)},
                    {"results",
                     {{"j", j.value()},
                      {"z", z},
                      {"q", DeformationParam{z}.q()},
                      {"cq_eigenvalue", rep.cq_eigenvalue},
                      {"cq_expected", rep.cq_expected},
                      {"qconm_direct", rep.qconm_direct}}},
                    {"residuals",
                     {{"newconm", rep.newconm_residual},
                      {"ncas", rep.ncas_residual},
                      {"qconm", rep.qconm_residual}}}};
    out.csv_lines.push_back("name,value");
    out.csv_lines.push_back("newconm_residual," + fmt17(rep.newconm_residual));
    out.csv_lines.push_back("ncas_residual," + fmt17(rep.ncas_residual));
    out.csv_lines.push_back("qconm_residual," + fmt17(rep.qconm_residual));
    out.csv_lines.push_back("cq_eigenvalue," + fmt17(rep.cq_eigenvalue));
    out.csv_lines.push_back("cq_expected," + fmt17(rep.cq_expected));
    return out;
}

CommandOutput cmd_contract(const RunConfig& cfg) {
    const ModelSpec spec = model_of(cfg);
    const HalfInt l0 = HalfInt::from_double(cfg.l);
    const Realization realization = realization_of(spec);
    if (realization == Realization::LMG) {
        throw InvalidInput("the boson-free model has no L to contract over");
    }
    if (l0.twice() <= 0) throw InvalidInput("contract needs a positive starting L");

    std::vector<HalfInt> ladder;
    for (int s = 1; s <= 8; s *= 2) ladder.push_back(HalfInt::from_twice(l0.twice() * s));

    std::string decay_failure;
    std::vector<ContractionRow> rows;
    try {
        rows = contraction_diagnostics(realization, spec.omega_cap, ladder);
    } catch (const VerificationError& e) {
        decay_failure = e.what();
    }

    CommandOutput out;
    out.exit_code = decay_failure.empty() ? 0 : 3;
    json jrows = json::array();
    out.csv_lines.push_back(
        "L,delta,casimir_scaled,casimir_limit,casimir_gap,alpha1_scaled,alpha3_scaled");
    for (const ContractionRow& row : rows) {
        const bool has1 = row.commutator_coeffs.size() > 1;
        const bool has3 = row.commutator_coeffs.size() > 3;
        json jr{{"L", row.l.value()},
                {"delta", row.delta},
                {"casimir_scaled", row.casimir_scaled},
                {"casimir_limit", row.casimir_limit},
                {"casimir_gap", row.casimir_gap}};
        jr["alpha1_scaled"] = has1 ? json(row.commutator_coeffs[1]) : json(nullptr);
        jr["alpha3_scaled"] = has3 ? json(row.commutator_coeffs[3]) : json(nullptr);
        jrows.push_back(jr);
        out.csv_lines.push_back(fmt17(row.l.value()) + "," + fmt17(row.delta) + "," +
                                fmt17(row.casimir_scaled) + "," + fmt17(row.casimir_limit) +
                                "," + fmt17(row.casimir_gap) + "," +
                                (has1 ? fmt17(row.commutator_coeffs[1]) : "") + "," +
                                (has3 ? fmt17(row.commutator_coeffs[3]) : ""));
    }
    json results{{"rows", jrows}};
    if (!decay_failure.empty()) results["decay_failure"] = decay_failure;
    out.document = {{"command", "contract"},
                    {"inputs", inputs_json(cfg)},
                    {"results", results},
                    {"residuals", json::object()}};
    return out;
}

int run(const RunConfig& cfg) {
    CommandOutput out;
    if (cfg.command == "spectrum") out = cmd_spectrum(cfg);
    else if (cfg.command == "fit") out = cmd_fit(cfg);
    else if (cfg.command == "sweep") out = cmd_sweep(cfg);
    else if (cfg.command == "verify-algebra") out = cmd_verify_algebra(cfg);
    else if (cfg.command == "verify-q") out = cmd_verify_q(cfg);
    else if (cfg.command == "contract") out = cmd_contract(cfg);
    else if (cfg.command.empty()) throw InvalidInput("no command given (use --command)");
    else throw InvalidInput("unknown command '" + cfg.command + "'");
    emit(cfg, out);
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig flags;
    std::string config_path;
    double z_flag = 0.0;
    double chi_flag = 0.0;

    CLI::App app{"fermion-boson spectra, polynomial algebras and deformed effective models"};
    auto* o_command = app.add_option("--command", flags.command,
                                     "spectrum | fit | sweep | verify-algebra | verify-q | contract");
    auto* o_variant = app.add_option("--variant", flags.variant, "pp or pm");
    auto* o_k = app.add_option("--k", flags.k, "spin step of the interaction (1 or 2)");
    auto* o_p = app.add_option("--p", flags.p, "boson power of the interaction (0, 1 or 2)");
    auto* o_wf = app.add_option("--omega-f", flags.omega_f, "fermion level splitting");
    auto* o_wb = app.add_option("--omega-b", flags.omega_b, "boson frequency");
    auto* o_g = app.add_option("--g", flags.g, "coupling strength");
    auto* o_oc = app.add_option("--omega-cap", flags.omega_cap,
                                "shell pseudospin Omega (half-integer)");
    auto* o_l = app.add_option("--L", flags.l, "invariant-subspace charge (half-integer)");
    auto* o_z = app.add_option("--z", z_flag, "deformation parameter, q = e^z");
    auto* o_chi = app.add_option("--chi", chi_flag, "effective interaction scale");
    auto* o_metric = app.add_option("--metric", flags.metric, "rms | maxabs | groundstate");
    auto* o_out = app.add_option("--out", flags.out, "output path (stdout when omitted)");
    auto* o_format = app.add_option("--format", flags.format, "json | csv");
    app.add_option("--config", config_path, "flat JSON config file; flags override it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        if (o_command->count()) cfg.command = flags.command;
        if (o_variant->count()) cfg.variant = flags.variant;
        if (o_k->count()) cfg.k = flags.k;
        if (o_p->count()) cfg.p = flags.p;
        if (o_wf->count()) cfg.omega_f = flags.omega_f;
        if (o_wb->count()) cfg.omega_b = flags.omega_b;
        if (o_g->count()) cfg.g = flags.g;
        if (o_oc->count()) cfg.omega_cap = flags.omega_cap;
        if (o_l->count()) cfg.l = flags.l;
        if (o_z->count()) cfg.z = z_flag;
        if (o_chi->count()) cfg.chi = chi_flag;
        if (o_metric->count()) cfg.metric = flags.metric;
        if (o_out->count()) cfg.out = flags.out;
        if (o_format->count()) cfg.format = flags.format;
        return run(cfg);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
