#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "fefbound/cli.hpp"
#include "fefbound/decomposition.hpp"
#include "fefbound/principal_basis.hpp"

namespace fefbound::cli {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

ResolvedState resolve_state(const StateSpec& spec) {
    if (spec.file.has_value() == spec.family.has_value()) {
        throw ParseError("exactly one of --state FILE or --family NAME is required");
    }
    if (spec.file) {
        return {parse_state_file(*spec.file, spec.allow_unphysical), *spec.file};
    }
    const std::string& family = *spec.family;
    const std::string dim = " d=" + std::to_string(spec.d);
    if (family == "maxent") return {max_entangled_projector(spec.d), "maxent" + dim};
    if (family == "isotropic") {
        return {isotropic_state(spec.d, spec.p), "isotropic" + dim + " p=" + format_double(spec.p)};
    }
    if (family == "werner-swap") return {werner_state(spec.d, WernerVariant::swap), "werner-swap" + dim};
    if (family == "werner-paper") {
        auto state = werner_state(spec.d, WernerVariant::paper);
        if (!spec.allow_unphysical && !state.physical()) {
            std::ostringstream msg;
            msg << "werner-paper operator is not a density matrix (minimum eigenvalue "
                << format_double(state.validation().min_eigenvalue) << "); pass --allow-unphysical to audit it";
            throw PhysicalityError(msg.str());
        }
        return {std::move(state), "werner-paper" + dim};
    }
    if (family == "horodecki") return {horodecki_state(spec.a), "horodecki d=3 a=" + format_double(spec.a)};
    if (family == "random") {
        return {random_density_state(spec.d, spec.seed), "random" + dim + " seed=" + std::to_string(spec.seed)};
    }
    throw ParseError("unknown family \"" + family + "\"");
}

// ---------------------------------------------------------------------------

std::vector<double> sweep_grid(double from, double to, int steps) {
    if (steps < 2) throw ParseError("sweep: --steps must be at least 2");
    if (!(from <= to)) throw ParseError("sweep: --from must not exceed --to");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        grid[static_cast<std::size_t>(k)] = from + (to - from) * k / (steps - 1);
    }
    grid.front() = from;
    grid.back() = to;
    return grid;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (!spec.base.family) throw ParseError("sweep: --family is required");
    const std::string& family = *spec.base.family;
    const bool horodecki = family == "horodecki";
    if (family == "isotropic") {
        if (spec.parameter != "p") throw ParseError("sweep: the isotropic family sweeps --param p");
    } else if (horodecki) {
        if (spec.parameter != "a") throw ParseError("sweep: the horodecki family sweeps --param a");
    } else {
        throw ParseError("sweep: family \"" + family + "\" has no real parameter to sweep");
    }

    std::vector<SweepRow> rows;
    for (double value : sweep_grid(spec.from, spec.to, spec.steps)) {
        StateSpec point = spec.base;
        (horodecki ? point.a : point.p) = value;
        const DensityState state = resolve_state(point).state;

        SweepRow row;
        row.param = value;
        row.frobenius_norm = frobenius_norm(state.matrix());
        row.theorem1_bound = theorem1_bound(state);
        if (horodecki) row.paper_example3_form = horodecki_printed_bound(value);
        row.hoelder_sum_bound = hoelder_sum_bound(state);
        row.lm_bound = lm_bound(state);
        row.spectral_bound = spectral_bound(state);
        row.fef_lower = fef_lower_estimate(state, spec.optimizer).value;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    const bool paper = !rows.empty() && rows.front().paper_example3_form.has_value();
    std::string out = "param,frobenius_norm,theorem1_bound,";
    if (paper) out += "paper_example3_form,";
    out += "hoelder_sum_bound,lm_bound,spectral_bound,fef_lower\n";
    for (const auto& row : rows) {
        out += format_double(row.param) + ',' + format_double(row.frobenius_norm) + ',' +
               format_double(row.theorem1_bound) + ',';
        if (paper) out += format_double(row.paper_example3_form.value_or(std::nan(""))) + ',';
        out += format_double(row.hoelder_sum_bound) + ',' + format_double(row.lm_bound) + ',' +
               format_double(row.spectral_bound) + ',' + format_double(row.fef_lower) + '\n';
    }
    return out;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json r;
        r["param"] = row.param;
        r["frobenius_norm"] = row.frobenius_norm;
        r["theorem1_bound"] = row.theorem1_bound;
        if (row.paper_example3_form) r["paper_example3_form"] = *row.paper_example3_form;
        r["hoelder_sum_bound"] = row.hoelder_sum_bound;
        r["lm_bound"] = row.lm_bound;
        r["spectral_bound"] = row.spectral_bound;
        r["fef_lower"] = row.fef_lower;
        out.push_back(std::move(r));
    }
    return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed(); });
}

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr int kVerifyRandomStates = 5;

ComplexMatrix unit_matrix(int d, int row, int col) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(row, col) = 1.0;
    return e;
}

}  // namespace

VerifyReport run_verify(int d_max, const OptimizerOptions& opts) {
    if (d_max < 2 || d_max > 8) throw ParseError("verify: --d-max must be between 2 and 8");
    VerifyReport report;
    const auto add = [&report](std::string name, int d, double residual, double tolerance) {
        report.checks.push_back({std::move(name), d, residual, tolerance});
    };

    for (int d = 2; d <= d_max; ++d) {
        const auto table = principal_basis_table(d);
        const auto& res = table->residuals();
        add("principal unitarity", d, res.unitarity, kIdentityTol);
        add("principal orthogonality", d, res.orthogonality, kIdentityTol);
        add("principal product rule", d, res.product_rule, kIdentityTol);
        add("principal dagger rule", d, res.dagger_rule, kIdentityTol);
        add("principal trace rule", d, res.trace_rule, kIdentityTol);
        add("principal dual pairing", d, res.dual_pairing, kIdentityTol);

        double fourier = 0.0;
        for (int k = 0; k < d; ++k) {
            for (int j = 0; j < d; ++j) {
                fourier = std::max(fourier,
                                   (table->unit_from_principal(k, j) - unit_matrix(d, k, mod_d(k + j, d))).norm());
            }
        }
        add("inverse Fourier to unit matrices", d, fourier, kExactTol);

        const auto gm = gell_mann_basis(d);
        const auto count = static_cast<Eigen::Index>(gm->size()) + 1;
        std::vector<ComplexMatrix> frame;
        frame.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
        double hermitian = 0.0;
        for (const auto& l : gm->matrices()) {
            hermitian = std::max({hermitian, hermiticity_residual(l), std::abs(l.trace())});
            frame.push_back(l / std::sqrt(2.0));
        }
        ComplexMatrix gram(count, count);
        for (Eigen::Index x = 0; x < count; ++x) {
            for (Eigen::Index y = 0; y < count; ++y) {
                gram(x, y) = (frame[static_cast<std::size_t>(x)] * frame[static_cast<std::size_t>(y)]).trace();
            }
        }
        add("Gell-Mann hermitian and traceless", d, hermitian, kExactTol);
        add("Gell-Mann orthonormal frame with identity", d,
            (gram - ComplexMatrix::Identity(count, count)).norm(), kIdentityTol);

        const auto plus = max_entangled_projector(d);
        add("P+ expansion, A_ij (x) A_{-i,j}", d,
            (plus.matrix() - max_entangled_expansion(d, Pairing::negate_clock)).norm(), kExactTol);

        double principal_rt = 0.0;
        double bloch_rt = 0.0;
        for (int s = 0; s < kVerifyRandomStates; ++s) {
            const auto rho = random_density_state(d, 1000u * static_cast<unsigned>(d) + static_cast<unsigned>(s));
            principal_rt = std::max(principal_rt,
                                    (principal_reconstruct(principal_coefficients(rho)) - rho.matrix()).norm());
            bloch_rt = std::max(bloch_rt, (bloch_reconstruct(bloch_coefficients(rho)) - rho.matrix()).norm());
        }
        add("principal decomposition roundtrip", d, principal_rt, kIdentityTol);
        add("Bloch decomposition roundtrip", d, bloch_rt, kIdentityTol);

        const double p = 0.3;
        const auto iso_coeffs = principal_coefficients(isotropic_state(d, p));
        add("isotropic coefficients c_ij^{-i,j} = p", d,
            isotropic_pattern_residual(iso_coeffs, p, Pairing::negate_clock), kIdentityTol);

        const auto werner = werner_state(d, WernerVariant::paper);
        const auto werner_coeffs = principal_coefficients(werner);
        add("printed Werner operator c_ij^{-i,j} = -1/d", d,
            isotropic_pattern_residual(werner_coeffs, -1.0 / d, Pairing::negate_clock), kIdentityTol);

        // Findings about published claims. These never affect the exit code.
        std::ostringstream lemma;
        lemma << "d=" << d << ": P+ expansion with partner A_{-i,-j} (as printed) has residual "
              << format_double((plus.matrix() - max_entangled_expansion(d, Pairing::negate_both)).norm())
              << "; isotropic pattern on (-i,-j) deviates by "
              << format_double(isotropic_pattern_residual(iso_coeffs, p, Pairing::negate_both));
        report.findings.push_back(lemma.str());

        std::ostringstream f;
        f << "d=" << d << ": printed Werner operator has minimum eigenvalue "
          << format_double(werner.validation().min_eigenvalue)
          << " (not a state); its principal form has isotropic parameter -1/d = " << format_double(-1.0 / d)
          << ", not -d = " << -d;
        report.findings.push_back(f.str());

        const auto audit = bound_audit(plus, opts, "maxent");
        if (audit.flagged(kTheorem1Bound)) {
            std::ostringstream g;
            g << "d=" << d << ": theorem1 bound " << format_double(audit.bounds.at(kTheorem1Bound))
              << " < fef_lower " << format_double(audit.fef_lower) << " on P+";
            report.findings.push_back(g.str());
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

std::string render_bound_report(const BoundReport& report, std::optional<double> paper_example3_form) {
    std::ostringstream out;
    out << "state: " << report.state_label << "\n";
    out << "d: " << report.d << "\n";
    out << "bounds:\n";
    for (const auto& [name, value] : report.bounds) {
        out << "  " << std::left << std::setw(20) << name << format_double(value);
        const auto it = std::find_if(report.violations.begin(), report.violations.end(),
                                     [&](const Violation& v) { return v.bound == name; });
        if (it != report.violations.end()) out << "  VIOLATED by " << format_double(it->gap);
        out << "\n";
    }
    if (paper_example3_form) out << "paper_example3_form: " << format_double(*paper_example3_form) << "\n";
    out << "fef_lower: " << format_double(report.fef_lower) << "\n";
    out << "violations: " << report.violations.size() << "\n";
    return out.str();
}

std::string bound_report_to_json(const BoundReport& report, std::optional<double> paper_example3_form) {
    json doc;
    doc["state"] = report.state_label;
    doc["d"] = report.d;
    doc["bounds"] = report.bounds;
    doc["fef_lower"] = report.fef_lower;
    if (paper_example3_form) doc["paper_example3_form"] = *paper_example3_form;
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < report.best_unitary.rows(); ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index c = 0; c < report.best_unitary.cols(); ++c) {
            re_row.push_back(report.best_unitary(r, c).real());
            im_row.push_back(report.best_unitary(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    doc["best_unitary"] = {{"re", std::move(re)}, {"im", std::move(im)}};
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back({{"bound", v.bound}, {"gap", v.gap}});
    doc["violations"] = std::move(violations);
    json restarts = json::array();
    for (const auto& r : report.restarts) {
        json entry = {{"index", r.index},
                      {"kind", to_string(r.kind)},
                      {"start_value", r.start_value},
                      {"final_value", r.final_value},
                      {"iterations", r.iterations},
                      {"rank_deficient_start", r.rank_deficient_start},
                      {"rank_deficient_steps", r.rank_deficient_steps},
                      {"stalled", r.stalled}};
        restarts.push_back(std::move(entry));
    }
    doc["restarts"] = std::move(restarts);
    return doc.dump(2) + "\n";
}

std::string render_verify_report(const VerifyReport& report) {
    std::ostringstream out;
    out << "identity checks:\n";
    for (const auto& c : report.checks) {
        out << "  [" << (c.passed() ? "PASS" : "FAIL") << "] d=" << c.d << "  " << std::left << std::setw(44)
            << c.name << " residual " << format_double(c.residual) << " (tol " << c.tolerance << ")\n";
    }
    out << "paper-claim findings:\n";
    for (const auto& f : report.findings) out << "  - " << f << "\n";
    const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                      [](const VerifyCheck& c) { return !c.passed(); });
    out << "summary: " << report.checks.size() - static_cast<std::size_t>(failed) << "/" << report.checks.size()
        << " identity checks passed, " << report.findings.size() << " findings\n";
    return out.str();
}

namespace {

std::string complex_text(Complex z) { return format_double(z.real()) + " " + format_double(z.imag()); }

}  // namespace

std::string decompose_listing(const DensityState& state, Basis basis) {
    std::ostringstream out;
    const int d = state.dim();
    const auto keep = [](double magnitude) { return magnitude > kCoefficientPrintThreshold; };
    if (basis == Basis::principal) {
        const auto coeffs = principal_coefficients(state);
        out << "# principal basis, d=" << d << "; columns: name indices re im\n";
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (keep(std::abs(coeffs.a(i, j)))) out << "a " << i << ' ' << j << ' ' << complex_text(coeffs.a(i, j)) << "\n";
            }
        }
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (keep(std::abs(coeffs.b(i, j)))) out << "b " << i << ' ' << j << ' ' << complex_text(coeffs.b(i, j)) << "\n";
            }
        }
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                for (int k = 0; k < d; ++k) {
                    for (int l = 0; l < d; ++l) {
                        const Complex c = coeffs.c(i, j, k, l);
                        if (keep(std::abs(c))) {
                            out << "c " << i << ' ' << j << ' ' << k << ' ' << l << ' ' << complex_text(c) << "\n";
                        }
                    }
                }
            }
        }
        out << "reconstruction_residual " << format_double((principal_reconstruct(coeffs) - state.matrix()).norm())
            << "\n";
    } else {
        const auto coeffs = bloch_coefficients(state);
        out << "# Bloch (Gell-Mann) basis, d=" << d << "; columns: name indices value\n";
        for (Eigen::Index i = 0; i < coeffs.r.size(); ++i) {
            if (keep(std::abs(coeffs.r(i)))) out << "r " << i << ' ' << format_double(coeffs.r(i)) << "\n";
        }
        for (Eigen::Index i = 0; i < coeffs.s.size(); ++i) {
            if (keep(std::abs(coeffs.s(i)))) out << "s " << i << ' ' << format_double(coeffs.s(i)) << "\n";
        }
        for (Eigen::Index i = 0; i < coeffs.m.rows(); ++i) {
            for (Eigen::Index j = 0; j < coeffs.m.cols(); ++j) {
                if (keep(std::abs(coeffs.m(i, j)))) {
                    out << "m " << i << ' ' << j << ' ' << format_double(coeffs.m(i, j)) << "\n";
                }
            }
        }
        out << "reconstruction_residual " << format_double((bloch_reconstruct(coeffs) - state.matrix()).norm())
            << "\n";
    }
    return out.str();
}

}  // namespace fefbound::cli
