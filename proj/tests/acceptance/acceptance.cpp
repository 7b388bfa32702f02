// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fefbound/decomposition.hpp"
#include "fefbound/fef.hpp"
#include "fefbound/principal_basis.hpp"
#include "fefbound/states.hpp"

using namespace fefbound;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

// Frobenius norm of the 3x3 Horodecki matrix from its printed entries:
// thirteen entries a, two (1+a)/2, two sqrt(1-a^2)/2, all over 8a+1.
double horodecki_frobenius_from_entries(double a) {
    std::vector<double> entries(13, a);
    entries.push_back((1 + a) / 2);
    entries.push_back((1 + a) / 2);
    entries.push_back(std::sqrt(1 - a * a) / 2);
    entries.push_back(std::sqrt(1 - a * a) / 2);
    double sum = 0.0;
    for (double e : entries) sum += (e / (8 * a + 1)) * (e / (8 * a + 1));
    return std::sqrt(sum);
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("fefbound_acceptance_" + name);
}

int run_cli(const std::string& args, const std::filesystem::path& stdout_file) {
    const std::string cmd = std::string("\"") + FEFBOUND_CLI_PATH + "\" " + args + " > \"" + stdout_file.string() + "\"";
    const int status = std::system(cmd.c_str());
#ifdef _WIN32
    return status;
#else
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome principal_identities() {
    double worst = 0.0;
    for (int d = 2; d <= 8; ++d) {
        std::vector<ComplexMatrix> matrices;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) matrices.push_back(principal_matrix(d, i, j));
        const auto r = measure_principal_identities(d, matrices);
        worst = std::max({worst, r.orthogonality, r.product_rule, r.dagger_rule, r.trace_rule});
    }
    return {worst <= 1e-10, "max residual " + fmt(worst) + " over d=2..8"};
}

Outcome lemma_expansion() {
    double worst = 0.0;
    double worst_clock = 0.0;
    std::string per_d;
    for (int d = 2; d <= 8; ++d) {
        const ComplexMatrix plus = max_entangled_projector(d).matrix();
        const double r = (plus - max_entangled_expansion(d, Pairing::negate_both)).norm();
        worst = std::max(worst, r);
        worst_clock = std::max(worst_clock, (plus - max_entangled_expansion(d, Pairing::negate_clock)).norm());
        per_d += " d" + std::to_string(d) + "=" + fmt(r);
    }
    return {worst <= 1e-12, "A_{-i,-j} pairing residual" + per_d + "; A_{-i,j} pairing max " + fmt(worst_clock)};
}

Outcome roundtrips() {
    double principal_worst = 0.0;
    double bloch_worst = 0.0;
    for (int d = 2; d <= 5; ++d) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto rho = random_density_state(d, 10000 * d + seed);
            principal_worst =
                std::max(principal_worst, (principal_reconstruct(principal_coefficients(rho)) - rho.matrix()).norm());
            if (d <= 4) {
                bloch_worst =
                    std::max(bloch_worst, (bloch_reconstruct(bloch_coefficients(rho)) - rho.matrix()).norm());
            }
        }
    }
    return {principal_worst <= 1e-10 && bloch_worst <= 1e-10,
            "principal " + fmt(principal_worst) + ", Bloch " + fmt(bloch_worst)};
}

// Worst deviation of the on-pattern coefficients from `value` and worst
// off-pattern magnitude, using the A_{-i,-j} partner.
std::pair<double, double> pattern_deviation(const PrincipalCoefficients& c, double value) {
    const int d = c.dim();
    double on = 0.0;
    double off = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == 0 && j == 0) continue;
            off = std::max({off, std::abs(c.a(i, j)), std::abs(c.b(i, j))});
            const auto partner = max_entangled_partner(d, i, j, Pairing::negate_both);
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    if (k == 0 && l == 0) continue;
                    if (std::pair{k, l} == partner)
                        on = std::max(on, std::abs(c.c(i, j, k, l) - value));
                    else
                        off = std::max(off, std::abs(c.c(i, j, k, l)));
                }
            }
        }
    }
    return {on, off};
}

Outcome example_coefficients() {
    bool ok = true;
    std::string detail;
    for (int d = 2; d <= 5; ++d) {
        double on = 0.0;
        double off = 0.0;
        for (double p : {0.25, 0.5, 1.0}) {
            const auto [o, f] = pattern_deviation(principal_coefficients(isotropic_state(d, p)), p);
            on = std::max(on, o);
            off = std::max(off, f);
        }
        const auto [w_on, w_off] =
            pattern_deviation(principal_coefficients(werner_state(d, WernerVariant::paper)), -1.0 / d);
        const bool d_ok = on <= 1e-10 && off <= 1e-12 && w_on <= 1e-10 && w_off <= 1e-12;
        ok = ok && d_ok;
        detail += " d" + std::to_string(d) + (d_ok ? ":ok" : ":mismatch(" + fmt(std::max(on, w_on)) + ")");
    }
    const double min_eig = werner_state(2, WernerVariant::paper).validation().min_eigenvalue;
    ok = ok && std::abs(min_eig + 0.125) <= 1e-10;
    return {ok, "isotropic/Werner pattern" + detail + "; Werner d=2 min eigenvalue " + std::to_string(min_eig)};
}

Outcome theorem1_fidelity() {
    double worst = 0.0;
    double discrepancy = 0.0;
    for (int k = 0; k <= 10; ++k) {
        const double a = k / 10.0;
        const double oracle = 1.0 / 9 + (2.0 / 3) * horodecki_frobenius_from_entries(a);
        const double bound = theorem1_bound(horodecki_state(a));
        worst = std::max(worst, std::abs(bound - oracle));
        worst = std::max(worst, std::abs(oracle - (1.0 / 9 + (2.0 / 3) * std::sqrt(13 * a * a + a + 1) / (8 * a + 1))));
        discrepancy = std::max(discrepancy, std::abs(bound - horodecki_printed_bound(a)));
    }
    return {worst <= 1e-12,
            "max deviation " + fmt(worst) + "; printed closed form differs by up to " + fmt(discrepancy)};
}

Outcome lm_spot_values() {
    double worst = 0.0;
    for (int d : {2, 3}) worst = std::max(worst, std::abs(lm_bound(max_entangled_projector(d)) - 1.0));
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0})
        worst = std::max(worst, std::abs(lm_bound(isotropic_state(2, p)) - (0.25 + 0.75 * p)));
    return {worst <= 1e-10, "max deviation " + fmt(worst)};
}

Outcome optimizer_quality() {
    double excess = -1.0;
    for (int d : {2, 3}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto rho = random_density_state(d, 20000 + 100 * d + seed);
            excess = std::max(excess, fef_lower_estimate(rho).value - spectral_bound(rho));
        }
    }
    double iso = 0.0;
    for (int d : {2, 3}) {
        const double lo = -1.0 / (d * d - 1.0);
        for (int k = 0; k <= 20; ++k) {
            const double p = k == 20 ? 1.0 : lo + (1.0 - lo) * k / 20.0;
            iso = std::max(iso, std::abs(fef_lower_estimate(isotropic_state(d, p)).value - isotropic_fef_reference(d, p)));
        }
    }
    double plus = 1.0;
    for (int d : {2, 3}) plus = std::min(plus, fef_lower_estimate(max_entangled_projector(d)).value);
    const bool ok = excess <= 1e-8 && iso <= 1e-6 && plus >= 1.0 - 1e-9;
    return {ok, "max(estimate - spectral) " + fmt(excess) + ", isotropic error " + fmt(iso) + ", P+ " +
                    std::to_string(plus)};
}

Outcome audit_findings() {
    struct Case {
        std::string args;
        bool expect_theorem1_flag;
    };
    const std::vector<Case> cases = {
        {"--family maxent --d 2", true},
        {"--family isotropic --d 2 --p 0.5", true},
        {"--family isotropic --d 2 --p 0", false},
    };
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto json_path = scratch("audit.json");
        const int code = run_cli("bound " + c.args + " --out \"" + json_path.string() + "\"", scratch("audit.txt"));
        const auto report = nlohmann::json::parse(slurp(json_path));
        std::vector<std::string> flagged;
        for (const auto& v : report.at("violations")) flagged.push_back(v.at("bound").get<std::string>());
        const bool expected = c.expect_theorem1_flag ? flagged == std::vector<std::string>{kTheorem1Bound} : flagged.empty();
        ok = ok && code == 0 && expected;
        detail += "[" + c.args + ": exit " + std::to_string(code) + ", " + std::to_string(flagged.size()) +
                  " flagged, theorem1 " + std::to_string(report.at("bounds").at(kTheorem1Bound).get<double>()) +
                  " vs fef_lower " + std::to_string(report.at("fef_lower").get<double>()) + "] ";
        std::filesystem::remove(json_path);
    }
    std::filesystem::remove(scratch("audit.txt"));
    return {ok, detail};
}

Outcome cli_determinism() {
    const std::string args = "sweep --family horodecki --param a --from 0 --to 1 --steps 11 --seed 7";
    const auto first = scratch("sweep1.csv");
    const auto second = scratch("sweep2.csv");
    const int c1 = run_cli(args, first);
    const int c2 = run_cli(args, second);
    const std::string a = slurp(first);
    const std::string b = slurp(second);
    std::filesystem::remove(first);
    std::filesystem::remove(second);
    const bool ok = c1 == 0 && c2 == 0 && !a.empty() && a == b;
    return {ok, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
        double time_limit_s;  // 0 means no limit
    };
    const std::vector<Criterion> criteria = {
        {"1 principal-basis identities", principal_identities, 5.0},
        {"2 maximally entangled expansion", lemma_expansion, 2.0},
        {"3 decomposition roundtrips", roundtrips, 60.0},
        {"4 isotropic and Werner coefficients", example_coefficients, 0.0},
        {"5 closed-form bound fidelity", theorem1_fidelity, 0.0},
        {"6 LM bound spot values", lm_spot_values, 0.0},
        {"7 optimizer soundness and quality", optimizer_quality, 120.0},
        {"8 audit findings", audit_findings, 0.0},
        {"9 CLI determinism", cli_determinism, 0.0},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit_s <= 0.0 || seconds < c.time_limit_s;
        const bool passed = outcome.passed && in_time;
        if (!passed) ++failures;
        std::ostringstream time;
        time.precision(2);
        time << std::fixed << seconds << "s";
        if (c.time_limit_s > 0.0) time << " (limit " << c.time_limit_s << "s)";
        std::cout << (passed ? "PASS " : "FAIL ") << c.name << " [" << time.str() << "] " << outcome.detail << "\n";
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
