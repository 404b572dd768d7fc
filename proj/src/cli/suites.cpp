#include <algorithm>
#include <cmath>
#include <numeric>

#include "gl3/bessel3.hpp"
#include "gl3/cli.hpp"
#include "gl3/decomposition.hpp"
#include "gl3/expsums.hpp"
#include "gl3/oscint.hpp"
#include "gl3/voronoi.hpp"

namespace gl3::cli {

namespace {

int threads_of(const Config& cfg) { return static_cast<int>(cfg.get_int("threads")); }

std::uint64_t seed_of(const Config& cfg) { return static_cast<std::uint64_t>(cfg.get_int("seed")); }

ExperimentConfig experiment(const Config& cfg) {
    ExperimentConfig e;
    e.M = cfg.get_int("M");
    e.k = cfg.get_int("k");
    e.t = cfg.get_double("t");
    e.N = cfg.get_double("N");
    e.P = cfg.get_int("P");
    e.L = cfg.get_int("L");
    e.tolerance = cfg.get_double("tolerance");
    e.seed = seed_of(cfg);
    e.threads = threads_of(cfg);
    e.validate();
    return e;
}

std::string str(double x) { return format_double(x); }
std::string str(std::int64_t x) { return std::to_string(x); }

void weil(const Config& cfg, Report& rep) {
    auto r = weil_scan(cfg.get_int("weil.c_max"), threads_of(cfg), cfg.get_int("weil.oracle_c_max"));
    rep.add("sums_checked", static_cast<std::int64_t>(r.sums_checked));
    rep.add("max_ratio", r.max_ratio);
    rep.add("worst", "a=" + str(r.worst_a) + " b=" + str(r.worst_b) + " c=" + str(r.worst_c));
    rep.add("oracle_c_max", r.oracle_c_max);
    rep.check("violations", static_cast<double>(r.violations), "==", 0);
    rep.check("oracle_max_diff", r.oracle_max_diff, "<=", 1e-9);
}

void charsum(const Config& cfg, Report& rep) {
    rep.table({"M", "tuples", "congruent", "max_abs_error", "tolerance", "violations"});
    for (std::int64_t M : cfg.get_int_list("charsum.moduli")) {
        auto r = frak_C_scan(M, threads_of(cfg));
        const std::string p = "M" + str(M) + ".";
        rep.add(p + "tuples", static_cast<std::int64_t>(r.tuples));
        rep.add(p + "max_abs_error", r.max_abs_error);
        rep.add(p + "tolerance", r.tolerance);
        rep.check(p + "violations", static_cast<double>(r.violations), "==", 0);
        rep.row({str(M), std::to_string(r.tuples), std::to_string(r.congruent_tuples), str(r.max_abs_error),
                 str(r.tolerance), std::to_string(r.violations)});
    }
}

void correlation(const Config& cfg, Report& rep) {
    auto r = correlation_scan(cfg.get_int("correlation.s_max"), static_cast<int>(cfg.get_int("correlation.t_samples")),
                              seed_of(cfg), threads_of(cfg));
    rep.add("cases", static_cast<std::int64_t>(r.cases));
    rep.add("values", static_cast<std::int64_t>(r.values));
    rep.add("worst", "s1=" + str(r.worst.s1) + " s2=" + str(r.worst.s2) + " t1=" + str(r.worst.t1) +
                         " t2=" + str(r.worst.t2) + " n=" + str(r.worst.n));
    rep.check("c0", r.c0, "<=", cfg.get_double("correlation.c0_max"));
    rep.check("trivial_violations", static_cast<double>(r.trivial_violations), "==", 0);
}

void spacing(const Config& cfg, Report& rep) {
    const auto sizes = cfg.get_int_list("spacing.sizes");
    const std::int64_t M = cfg.get_int("M");
    double worst = 0, worst_filtered = 0;
    rep.table({"P", "L", "R", "ratio", "filtered_ratio_times_M"});
    for (auto P : sizes)
        for (auto L : sizes)
            for (auto R : sizes) {
                auto a = spacing_sum(P, L, R);
                auto b = spacing_sum(P, L, R, M);
                worst = std::max(worst, a.ratio);
                worst_filtered = std::max(worst_filtered, b.ratio * static_cast<double>(M));
                rep.row({str(P), str(L), str(R), str(a.ratio), str(b.ratio * static_cast<double>(M))});
            }
    const double bound = cfg.get_double("spacing.ratio_max");
    rep.check("max_ratio", worst, "<=", bound);
    rep.check("max_filtered_ratio_times_M", worst_filtered, "<=", bound);
}

void miller(const Config& cfg, Report& rep) {
    auto r = miller_scan(cfg.get_int("miller.X_max"), static_cast<int>(cfg.get_int("miller.alpha_samples")),
                         d3_provider(), seed_of(cfg), threads_of(cfg), cfg.get_int("miller.X_min"),
                         static_cast<int>(cfg.get_int("miller.per_decade")));
    rep.table({"X", "max_abs"});
    for (std::size_t i = 0; i < r.X.size(); ++i) rep.row({str(r.X[i]), str(r.max_abs[i])});
    for (const auto& [name, vals] : r.rational_points)
        if (!vals.empty()) rep.add("rational_point." + name, vals.back());
    rep.add("minor_arc_samples", static_cast<std::int64_t>(r.alphas.size()));
    rep.check("growth_exponent", r.exponent, "<=", cfg.get_double("miller.exponent_max"));
}

void stationary(const Config& cfg, Report& rep) {
    OscillatorySpec s;
    s.N = cfg.get_double("N");
    s.M = cfg.get_int("M");
    s.n = cfg.get_double("stationary.n");
    s.weight = SmoothWeight::bump(cfg.get_double("stationary.V_lo"), cfg.get_double("stationary.V_hi"));
    s.kind = PhaseKind::key_lemma_phase;
    const auto ts = cfg.get_double_list("stationary.t_list");
    if (ts.size() < 2) throw UsageError("stationary.t_list needs at least two values");
    rep.table({"t", "residual", "error_estimate"});
    std::vector<double> err;
    for (double t : ts) {
        s.t = t;
        auto main = stationary_phase_main_term(s);
        const double e = std::abs(integrate_oscillatory(s).value - main.leading_term);
        err.push_back(e);
        rep.row({str(t), str(e), str(main.error_estimate)});
    }
    double slope = 0;
    for (std::size_t i = 1; i < ts.size(); ++i) slope += std::log2(err[i] / err[i - 1]) / std::log2(ts[i] / ts[i - 1]);
    slope /= static_cast<double>(ts.size() - 1);
    double C = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) C = std::max(C, err[i] * std::pow(ts[i], 1.5));
    rep.add("fitted_constant", C);
    rep.check("mean_log2_slope", slope, "<=", cfg.get_double("stationary.slope_max"));
}

void frakj(const Config& cfg, Report& rep) {
    auto r = frak_J_bound_scan(static_cast<int>(cfg.get_int("frakj.points")), cfg.get_double_list("frakj.t_list"),
                               seed_of(cfg), threads_of(cfg));
    rep.add("points", static_cast<std::int64_t>(r.points.size()));
    rep.add("out_of_regime", static_cast<std::int64_t>(r.out_of_regime));
    const double cmax = cfg.get_double("frakj.constant_max");
    rep.check("C1", r.C1, "<=", cmax);
    rep.check("C2", r.C2, "<=", cmax);
    rep.check("phi_derivative_max_error", r.phi_derivative_max_error, "<=", cfg.get_double("frakj.derivative_error_max"));
}

void bessel(const Config& cfg, Report& rep) {
    const SpectralParams triv = SpectralParams::trivial();
    double worst = 0;
    rep.table({"x", "sign", "kernel_re", "kernel_im", "rel_error"});
    for (double x : cfg.get_double_list("bessel.x_list"))
        for (int s : {1, -1}) {
            const cplx k = bessel_kernel(x * x * x, s, triv).value;
            const double rel = std::abs(bessel_asymptotic(x, s, triv) - k) / std::abs(k);
            worst = std::max(worst, rel);
            rep.row({str(x), std::to_string(s), str(k.real()), str(k.imag()), str(rel)});
        }
    double C = 0;
    for (double x : cfg.get_double_list("bessel.envelope_x"))
        for (int s : {1, -1}) {
            const double env = std::exp(-3 * std::sqrt(3.0) * std::numbers::pi * x) / x;
            C = std::max(C, std::abs(bessel_kernel_split(x, s, triv).exponential) / env);
        }
    const auto& A = bessel_asymptotic_expansion(triv, 1);
    rep.add("B0_re", A.coefficients()[0].real());
    rep.add("B0_im", A.coefficients()[0].imag());
    rep.add("cross_validation_error", A.cross_validation_error());
    rep.check("max_rel_error", worst, "<=", cfg.get_double("bessel.rel_error_max"));
    rep.check("exponential_envelope_constant", C, "<=", cfg.get_double("bessel.envelope_constant_max"));
}

void voronoi(const Config& cfg, Report& rep) {
    const auto provider = d3_provider();
    const int k = static_cast<int>(cfg.get_int("voronoi.annihilated_moments"));
    if (!provider.cuspidal() && k < 3)
        throw UsageError("voronoi-verify: the " + provider.name() +
                         " provider is not cuspidal and needs a weight with annihilated_log_moments >= 3 (got " +
                         std::to_string(k) + ")");
    const SmoothWeight w = annihilate_log_moments(SmoothWeight::bump(1, 8), k);
    std::vector<VoronoiPoint> grid;
    const std::int64_t m = cfg.get_int("voronoi.m");
    const double N = cfg.get_double("voronoi.N");
    for (std::int64_t c : cfg.get_int_list("voronoi.moduli"))
        for (std::int64_t a = c == 1 ? 0 : 1; a < std::max<std::int64_t>(c, 1); ++a)
            if (std::gcd(a, c) == 1) grid.push_back({m, a, c, N});
    auto reps = verify_voronoi(provider, grid, w, cfg.get_double("voronoi.tail_tolerance"), threads_of(cfg));
    double worst = 0;
    std::int64_t failed = 0;
    rep.table({"m", "a", "c", "N", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_error", "x_cut", "tail_bound"});
    for (const auto& r : reps) {
        if (!r.error.empty()) {
            ++failed;
            rep.add("error." + str(r.point.a) + "/" + str(r.point.c), r.error);
            continue;
        }
        if (r.skipped) continue;
        worst = std::max(worst, r.rel_error);
        rep.row({str(r.point.m), str(r.point.a), str(r.point.c), str(r.point.N), str(r.lhs.real()), str(r.lhs.imag()),
                 str(r.rhs.real()), str(r.rhs.imag()), str(r.rel_error), str(r.x_cut), str(r.tail_bound)});
    }
    rep.add("points", static_cast<std::int64_t>(grid.size()));
    rep.check("failed_points", static_cast<double>(failed), "==", 0);
    rep.check("max_rel_error", worst, "<=", cfg.get_double("voronoi.rel_error_max"));
}

void keylemma(const Config& cfg, Report& rep) {
    const std::int64_t p = cfg.get_int("keylemma.p"), l = cfg.get_int("keylemma.l"), n = cfg.get_int("keylemma.n");
    double worst = 0;
    rep.table({"M", "t", "rel_error_exact", "R_max", "integral_residual", "phase_error"});
    for (std::int64_t M : cfg.get_int_list("keylemma.M_list"))
        for (double t : cfg.get_double_list("keylemma.t_list")) {
            ExperimentConfig e = experiment(cfg);
            e.M = M;
            e.t = t;
            e.validate();
            auto r = key_identity_check(e, p, l, n);
            worst = std::max(worst, r.rel_error_exact);
            rep.row({str(M), str(t), str(r.rel_error_exact), str(r.R_max), str(r.integral_residual),
                     str(r.phase_error)});
        }
    rep.check("max_rel_error_exact", worst, "<=", cfg.get_double("keylemma.rel_error_max"));
}

void decompose(const Config& cfg, Report& rep) {
    ExperimentConfig e = experiment(cfg);
    auto c1 = connection_check(e);
    ExperimentConfig e2 = e;
    e2.t = 2 * e.t;
    auto c2 = connection_check(e2);
    auto env = envelope_check(e);
    rep.add("F1_re", c1.F1.real());
    rep.add("F1_im", c1.F1.imag());
    rep.add("zero_re", c1.zero.real());
    rep.add("zero_im", c1.zero.imag());
    rep.add("O_exact_re", c1.O_exact.real());
    rep.add("O_exact_im", c1.O_exact.imag());
    rep.add("O_re", c1.O_normalized.real());
    rep.add("O_im", c1.O_normalized.imag());
    rep.add("ratio_re", c1.ratio.real());
    rep.add("ratio_im", c1.ratio.imag());
    rep.add("residual", c1.residual);
    rep.add("residual_at_2t", c2.residual);
    rep.check("abs_ratio_lower", std::abs(c1.ratio), ">=", cfg.get_double("decompose.ratio_min"));
    rep.check("abs_ratio_upper", std::abs(c1.ratio), "<=", cfg.get_double("decompose.ratio_max"));
    rep.check("poisson_rel_error", c1.poisson_rel_error, "<=", cfg.get_double("decompose.poisson_rel_error_max"));
    rep.check("residual_change_at_2t", c2.residual - c1.residual, "<=", 0);
    const double emax = cfg.get_double("decompose.envelope_ratio_max");
    rep.check("F1_envelope_ratio", env.F1_ratio, "<=", emax);
    rep.check("O_envelope_ratio", env.O_ratio, "<=", emax);
    rep.check("F1_sharp_envelope_ratio", env.F1_sharp_ratio, "<=", emax);
}

void exponents(const Config&, Report& rep) {
    auto s = optimize_exponents();
    rep.add("pi_P", to_string(s.pi_P));
    rep.add("pi_L", to_string(s.pi_L));
    rep.add("delta", to_string(s.delta));
    rep.add("final_exponent", to_string(s.final_exponent));
    rep.add("saving", to_string(Rational(3, 4) - s.final_exponent));
    std::string active;
    for (int i : s.active) active += (active.empty() ? "" : ",") + std::to_string(i);
    rep.add("active_terms", active);
    auto value = [](const Rational& q) {
        return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
    };
    rep.check("final_exponent_below_3/4", value(s.final_exponent), "<=", 0.75);
    rep.check("L_below_P", s.L_below_P ? 1 : 0, "==", 1);
    rep.check("pi_L_plus_half_delta", value(s.pi_L + s.delta / 2), "<=", 0.25);
}

}  // namespace

const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"weil-scan", "Weil bound |S(a,b;c)| <= tau(c) (a,b,c)^{1/2} c^{1/2} for all a, b and c <= c_max",
         {"weil", "threads"}, weil},
        {"charsum-verify", "character sum frak C equals its closed form M chi(...)[M delta - 1]",
         {"charsum", "threads"}, charsum},
        {"correlation-verify", "correlation sum bound with a single constant 2^{c0 omega}",
         {"correlation", "seed", "threads"}, correlation},
        {"spacing", "spacing lemma: sum over 6-tuples of 1/|l1 r2 p2 - l2 r1 p1| against LPR + min^2",
         {"spacing", "M"}, spacing},
        {"miller-scan", "growth exponent of max over minor arcs of |sum_{n<=X} d3(n) e(alpha n)|",
         {"miller", "seed", "threads"}, miller},
        {"stationary", "key-lemma integral minus the stationary-phase leading term decays like t^{-3/2}",
         {"stationary", "M", "N"}, stationary},
        {"frakj-bound", "frakJ bounds C1/t and C2 M^2 l1 l2/(N |l1 r2 p2 - l2 r1 p1|) for z ~ 1",
         {"frakj", "seed", "threads"}, frakj},
        {"bessel-kernel", "GL(3) Bessel kernel: Mellin-Barnes value against the asymptotic expansion",
         {"bessel"}, bessel},
        {"voronoi-verify", "GL(3) Voronoi summation for d3 with a moment-annihilated weight",
         {"voronoi", "threads"}, voronoi},
        {"keylemma", "key identity in exact Poisson form with the twisted Kloosterman sum",
         {"keylemma", "k", "N", "tolerance"}, keylemma},
        {"decompose", "S(N) = F1 + O: Poisson identity, connection ratio and envelopes",
         {"M", "k", "t", "N", "P", "L", "tolerance", "threads", "decompose"}, decompose},
        {"optimize-exponents", "exact rational optimisation of the exponents of P, L and delta", {}, exponents},
    };
    return all;
}

}  // namespace gl3::cli
