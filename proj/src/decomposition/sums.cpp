#include "gl3/decomposition.hpp"

#include <cmath>
#include <numeric>

#include "gl3/errors.hpp"
#include "gl3/expsums.hpp"
#include "gl3/oscint.hpp"
#include "gl3/quadrature.hpp"

namespace gl3 {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double term_budget = 5e9;

cplx power_it(double x, double t) { return std::polar(1.0, -t * std::log(x)); }  // x^{-it}

struct NRange {
    i64 lo = 1, hi = 0;
};

NRange n_range(const SmoothWeight& w, double N) {
    NRange r;
    r.lo = std::max<i64>(1, static_cast<i64>(std::ceil(w.lo() * N)));
    r.hi = static_cast<i64>(std::floor(w.hi() * N));
    return r;
}

// lambda(1, n) w(n/N) on the support of w, index n - lo
std::vector<double> weighted_coefficients(const ExperimentConfig& cfg, NRange nr) {
    std::vector<double> c;
    if (nr.hi < nr.lo) return c;
    if (static_cast<double>(nr.hi) > 2e8) throw ResourceError("n-sum exceeds the direct-sum budget");
    const std::vector<double> lam = cfg.provider.table_1n(static_cast<std::uint64_t>(nr.hi));
    c.resize(static_cast<std::size_t>(nr.hi - nr.lo + 1));
    for (i64 n = nr.lo; n <= nr.hi; ++n)
        c[static_cast<std::size_t>(n - nr.lo)] = lam[static_cast<std::size_t>(n)] * cfg.w(static_cast<double>(n) / cfg.N);
    return c;
}

// Composite Gauss grid on the support of V, fine enough for phases with |f'| <= fmax
struct JGrid {
    std::vector<double> x;
    std::vector<cplx> g;  // weight * V(x) * x^{-it}
};

JGrid j_grid(const ExperimentConfig& cfg, double y_hi, double beta_max) {
    const double a = cfg.V.lo(), b = cfg.V.hi(), t = std::abs(cfg.t);
    double fmax = t / (two_pi * a) + y_hi * t / (a * a) + beta_max;
    int panels = static_cast<int>(std::ceil((b - a) * fmax)) + 8;
    NodeSet ns = composite_nodes(a, b, panels, 24);
    JGrid G;
    G.x = ns.x;
    G.g.resize(ns.x.size());
    for (std::size_t j = 0; j < ns.x.size(); ++j) G.g[j] = ns.w[j] * cfg.V(ns.x[j]) * power_it(ns.x[j], cfg.t);
    return G;
}

double kappa(const ExperimentConfig& cfg, i64 p, i64 l) {
    const double M = static_cast<double>(cfg.M);
    return cfg.N * static_cast<double>(p) / (M * M * static_cast<double>(l) * cfg.t);
}

// S_chi(r, b; M) for r, b mod M
std::vector<std::vector<cplx>> kloosterman_table(const DirichletCharacter& chi) {
    const i64 M = chi.modulus();
    std::vector<std::vector<cplx>> S(static_cast<std::size_t>(M), std::vector<cplx>(static_cast<std::size_t>(M)));
    for (i64 r = 0; r < M; ++r)
        for (i64 b = 0; b < M; ++b) S[r][b] = twisted_kloosterman(chi, r, b, M);
    return S;
}

// sum_j h_j e(-r kappa x_j) for r = -R..R, returned at index r + R
std::vector<cplx> frequency_sums(const std::vector<double>& x, const std::vector<cplx>& h, double kap, i64 R) {
    std::vector<cplx> out(static_cast<std::size_t>(2 * R + 1));
    std::vector<cplx> u(x.size()), pw(x.size(), cplx(1, 0));
    for (std::size_t j = 0; j < x.size(); ++j) u[j] = e(-kap * x[j]);
    cplx s0 = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s0 += h[j];
    out[static_cast<std::size_t>(R)] = s0;
    for (i64 r = 1; r <= R; ++r) {
        cplx sp = 0, sm = 0;
        bool anchor = r % 64 == 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            pw[j] = anchor ? e(-kap * static_cast<double>(r) * x[j]) : pw[j] * u[j];
            sp += h[j] * pw[j];
            sm += h[j] * std::conj(pw[j]);
        }
        out[static_cast<std::size_t>(R + r)] = sp;
        out[static_cast<std::size_t>(R - r)] = sm;
    }
    return out;
}

double truncation_threshold(const ExperimentConfig& cfg) {
    return 1e-3 * cfg.tolerance / std::sqrt(std::abs(cfg.t));
}

cplx f1_total(const ExperimentConfig& cfg, bool sharp_only) {
    cfg.validate();
    const DirichletCharacter chi = cfg.character();
    const NRange nr = n_range(cfg.w, cfg.N);
    const std::vector<double> c = weighted_coefficients(cfg, nr);
    const auto ps = cfg.p_primes();
    const auto ls = cfg.l_primes();
    const double M = static_cast<double>(cfg.M);
    double work = 0;
    for (i64 p : ps)
        for (i64 l : ls) work += cfg.V.hi() * cfg.N * p / (M * l * cfg.t) * static_cast<double>(c.size());
    if (work > term_budget) throw ResourceError("F1_sum: term budget exceeded");

    std::vector<std::pair<i64, i64>> pairs;
    for (i64 p : ps)
        for (i64 l : ls) pairs.emplace_back(p, l);
    std::vector<cplx> part(pairs.size());
    parallel_items(pairs.size(), cfg.threads, [&](std::size_t i) {
        auto [p, l] = pairs[i];
        const double R = cfg.N * static_cast<double>(p) / (M * static_cast<double>(l) * cfg.t);
        const i64 r_lo = std::max<i64>(1, static_cast<i64>(std::ceil(cfg.V.lo() * R)));
        const i64 r_hi = static_cast<i64>(std::floor(cfg.V.hi() * R));
        cplx acc = 0;
        for (i64 r = r_lo; r <= r_hi; ++r) {
            if (r % cfg.M == 0) continue;
            if (sharp_only && r % p != 0) continue;
            const double v = cfg.V(static_cast<double>(r) / R);
            if (v == 0) continue;
            const i64 q = l * r;
            const i64 Mbar = mod_inverse(mod(cfg.M, q), q).value;
            const i64 h = static_cast<i64>((static_cast<__int128>(p) * Mbar) % q);
            const std::vector<cplx> roots = unit_roots(q);
            i64 idx = mod(-static_cast<i64>((static_cast<__int128>(nr.lo) * h) % q), q);
            const i64 step = mod(-h, q);
            cplx s = 0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                s += c[k] * roots[static_cast<std::size_t>(idx)];
                idx += step;
                if (idx >= q) idx -= q;
            }
            acc += chi(r) * power_it(static_cast<double>(r), cfg.t) * v * s;
        }
        part[i] = std::conj(chi(p)) * std::conj(power_it(static_cast<double>(p), cfg.t)) * chi(l) *
                  power_it(static_cast<double>(l), cfg.t) * acc;
    });
    cplx total = 0;
    for (const auto& v : part) total += v;
    const double Ps = static_cast<double>(cfg.P);
    return std::pow(M * cfg.t, 1.5) / (cfg.N * Ps * Ps) * total;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (M < 3 || !is_prime(static_cast<u64>(M))) throw DomainError("config: M must be an odd prime");
    if (k < 0 || k > M - 2) throw DomainError("config: character index must lie in [0, M-2]");
    if (!(t > 2)) throw DomainError("config: t must exceed 2");
    if (P < 2 || L < 2) throw DomainError("config: P and L must be at least 2");
    if (!(N >= static_cast<double>(M) * t)) throw DomainError("config: N must be at least M t");
    if (!(tolerance > 0)) throw DomainError("config: tolerance must be positive");
    if (threads < 1) throw DomainError("config: threads must be positive");
    for (const auto* list : {&p_list, &l_list})
        for (i64 q : *list)
            if (q < 2 || q == M || !is_prime(static_cast<u64>(q)))
                throw DomainError("config: listed primes must be primes different from M");
}

std::vector<i64> ExperimentConfig::p_primes() const {
    if (!p_list.empty()) return p_list;
    std::vector<i64> out;
    for (i64 p : primes_in_dyadic(P))
        if (p != M) out.push_back(p);
    return out;
}

std::vector<i64> ExperimentConfig::l_primes() const {
    if (!l_list.empty()) return l_list;
    std::vector<i64> out;
    for (i64 l : primes_in_dyadic(L))
        if (l != M) out.push_back(l);
    return out;
}

cplx S_N(const ExperimentConfig& cfg) {
    if (cfg.M < 3 || !is_prime(static_cast<u64>(cfg.M))) throw DomainError("S_N: M must be an odd prime");
    if (cfg.k < 0 || cfg.k > cfg.M - 2) throw DomainError("S_N: character index must lie in [0, M-2]");
    if (!(cfg.N > 0)) throw DomainError("S_N: N must be positive");
    const DirichletCharacter chi = cfg.character();
    const NRange nr = n_range(cfg.w, cfg.N);
    const std::vector<double> c = weighted_coefficients(cfg, nr);
    cplx s = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const i64 n = nr.lo + static_cast<i64>(k);
        if (c[k] == 0 || n % cfg.M == 0) continue;
        s += c[k] * chi(n) * power_it(static_cast<double>(n), cfg.t);
    }
    return s;
}

cplx key_identity_lhs(const ExperimentConfig& cfg, i64 p, i64 l, i64 n) {
    if (p < 2 || l < 2 || l % cfg.M == 0) throw DomainError("key identity: p, l must be at least 2 and l prime to M");
    if (n < 1) throw DomainError("key identity: n must be positive");
    const DirichletCharacter chi = cfg.character();
    const double R = cfg.N * static_cast<double>(p) / (static_cast<double>(cfg.M) * static_cast<double>(l) * cfg.t);
    const i64 r_lo = std::max<i64>(1, static_cast<i64>(std::ceil(cfg.V.lo() * R)));
    const i64 r_hi = static_cast<i64>(std::floor(cfg.V.hi() * R));
    cplx s = 0;
    for (i64 r = r_lo; r <= r_hi; ++r) {
        if (r % cfg.M == 0) continue;
        const double v = cfg.V(static_cast<double>(r) / R);
        if (v == 0) continue;
        const i64 q = l * r;
        const i64 Mbar = mod_inverse(mod(cfg.M, q), q).value;
        const i64 h = static_cast<i64>((static_cast<__int128>(n % q) * p % q) * Mbar % q);
        s += chi(r) * power_it(static_cast<double>(r), cfg.t) * e_frac(-h, q) * v;
    }
    return s;
}

cplx J_it(const ExperimentConfig& cfg, i64 r, i64 p, i64 l, double n) {
    const double kap = kappa(cfg, p, l);
    const double y = n / cfg.N;
    JGrid G = j_grid(cfg, y, std::abs(static_cast<double>(r)) * kap);
    cplx s = 0;
    for (std::size_t j = 0; j < G.x.size(); ++j)
        s += G.g[j] * e(-y * cfg.t / G.x[j] - static_cast<double>(r) * kap * G.x[j]);
    return s;
}

cplx V_A(const ExperimentConfig& cfg, double n) {
    OscillatorySpec s;
    s.t = cfg.t;
    s.N = cfg.N;
    s.M = cfg.M;
    s.n = n;
    s.weight = cfg.V;
    s.kind = PhaseKind::key_lemma_phase;
    StationaryPointReport sp;
    try {
        sp = stationary_phase_main_term(s);
    } catch (const PreconditionError&) {
        return 0;
    }
    const double x0 = two_pi * n / cfg.N;
    return sp.leading_term * std::sqrt(cfg.t) / (power_it(x0, cfg.t) * e(-cfg.t / two_pi));
}

KeyIdentityReport key_identity_check(const ExperimentConfig& cfg, i64 p, i64 l, i64 n) {
    cfg.validate();
    if (!is_prime(static_cast<u64>(p)) || !is_prime(static_cast<u64>(l)) || p == cfg.M || l == cfg.M)
        throw DomainError("key identity: p and l must be primes different from M");
    const DirichletCharacter chi = cfg.character();
    KeyIdentityReport rep;
    rep.p = p;
    rep.l = l;
    rep.n = n;
    rep.lhs = key_identity_lhs(cfg, p, l, n);

    const double y = static_cast<double>(n) / cfg.N;
    const cplx J0 = J_it(cfg, 0, p, l, static_cast<double>(n));
    const double thr = std::max(1e-3 * cfg.tolerance * std::abs(J0), 1e-16);
    TruncationReport tr = truncation_cutoff(cfg.M, cfg.t, cfg.N, static_cast<double>(p), static_cast<double>(l) / 2,
                                            cfg.V, thr, y, y);
    if (tr.R_max > 1'000'000) throw ResourceError("key identity: dual cutoff exceeds budget");
    rep.R_max = tr.R_max;

    const double kap = kappa(cfg, p, l);
    JGrid G = j_grid(cfg, y, static_cast<double>(tr.R_max) * kap);
    std::vector<cplx> h(G.x.size());
    for (std::size_t j = 0; j < G.x.size(); ++j) h[j] = G.g[j] * e(-y * cfg.t / G.x[j]);
    const std::vector<cplx> Jr = frequency_sums(G.x, h, kap, tr.R_max);

    const i64 M = cfg.M;
    const i64 b = mod(mod(n, M) * p % M * mod_inverse(l % M, M).value, M);
    const double R = cfg.N * static_cast<double>(p) / (static_cast<double>(M) * static_cast<double>(l) * cfg.t);
    const cplx pref = R * power_it(R, cfg.t) / static_cast<double>(M);
    const cplx S0 = twisted_kloosterman(chi, 0, b, M);
    rep.zero_term = pref * S0 * Jr[static_cast<std::size_t>(tr.R_max)];
    cplx dual = 0;
    for (i64 r = 1; r <= tr.R_max; ++r)
        dual += twisted_kloosterman(chi, r, b, M) * Jr[static_cast<std::size_t>(tr.R_max + r)] +
                twisted_kloosterman(chi, -r, b, M) * Jr[static_cast<std::size_t>(tr.R_max - r)];
    rep.dual_sum = pref * dual;
    rep.rel_error_exact = std::abs(rep.lhs - rep.zero_term - rep.dual_sum) / std::max(std::abs(rep.lhs), 1e-300);

    OscillatorySpec s;
    s.t = cfg.t;
    s.N = cfg.N;
    s.M = M;
    s.n = static_cast<double>(n);
    s.p = p;
    s.l = l;
    s.weight = cfg.V;
    s.kind = PhaseKind::key_lemma_phase;
    StationaryPointReport sp = stationary_phase_main_term(s);
    rep.main_term = pref * S0 * sp.leading_term;
    rep.residual_stationary = std::abs(rep.lhs - rep.main_term - rep.dual_sum);
    rep.integral_residual = std::abs(Jr[static_cast<std::size_t>(tr.R_max)] - sp.leading_term);

    const double sgn = sp.f_second_at_x0 < 0 ? -1.0 : 1.0;
    const cplx factor = gauss_sum(chi.conj()) * chi(b) * power_it(two_pi * static_cast<double>(p) / (M * l * cfg.t), cfg.t) *
                        e(-cfg.t / two_pi) * power_it(static_cast<double>(n), cfg.t) * e(sgn / 8);
    rep.predicted_phase = std::arg(factor);
    rep.extracted_phase = std::arg(rep.lhs - rep.dual_sum);
    rep.phase_error = std::abs(std::remainder(rep.extracted_phase - rep.predicted_phase, 2 * pi));
    return rep;
}

cplx F1_sum(const ExperimentConfig& cfg) { return f1_total(cfg, false); }

cplx F1_sharp_sum(const ExperimentConfig& cfg) { return f1_total(cfg, true); }

DualTerms dual_terms(const ExperimentConfig& cfg) {
    cfg.validate();
    const DirichletCharacter chi = cfg.character();
    const auto ps = cfg.p_primes();
    const auto ls = cfg.l_primes();
    if (ps.empty() || ls.empty()) throw DomainError("dual_terms: empty prime segment");
    const i64 M = cfg.M;
    const double Md = static_cast<double>(M);
    const NRange nr = n_range(cfg.w, cfg.N);
    const std::vector<double> c = weighted_coefficients(cfg, nr);

    const i64 p_min = *std::min_element(ps.begin(), ps.end());
    const i64 l_max = *std::max_element(ls.begin(), ls.end());
    double kap_max = 0;
    for (i64 p : ps)
        for (i64 l : ls) kap_max = std::max(kap_max, kappa(cfg, p, l));
    TruncationReport tr = truncation_cutoff(M, cfg.t, cfg.N, static_cast<double>(p_min),
                                            static_cast<double>(l_max) / 2, cfg.V, truncation_threshold(cfg),
                                            cfg.w.lo(), cfg.w.hi());
    if (tr.R_max > 100'000) throw ResourceError("dual_terms: dual cutoff exceeds budget");
    DualTerms out;
    out.R_max = tr.R_max;

    JGrid G = j_grid(cfg, cfg.w.hi(), static_cast<double>(tr.R_max) * kap_max);
    const std::size_t J = G.x.size();
    out.nodes = J;
    if (static_cast<double>(J) * static_cast<double>(c.size()) > term_budget)
        throw ResourceError("dual_terms: quadrature budget exceeded");

    // Hrho[rho][j] = g_j sum_{n = rho mod M} c_n e(-n t/(N x_j))
    std::vector<std::vector<cplx>> H(static_cast<std::size_t>(M), std::vector<cplx>(J));
    parallel_for(J, cfg.threads, [&](std::size_t b, std::size_t en, int) {
        std::vector<cplx> acc(static_cast<std::size_t>(M));
        for (std::size_t j = b; j < en; ++j) {
            const double f = cfg.t / (cfg.N * G.x[j]);
            const cplx z = e(-f);
            std::fill(acc.begin(), acc.end(), cplx(0));
            cplx pw = 0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                const i64 n = nr.lo + static_cast<i64>(k);
                pw = k % 128 == 0 ? e(-f * static_cast<double>(n)) : pw * z;
                acc[static_cast<std::size_t>(n % M)] += c[k] * pw;
            }
            for (i64 rho = 0; rho < M; ++rho) H[rho][j] = G.g[j] * acc[rho];
        }
    });

    const auto S = kloosterman_table(chi);
    std::vector<std::pair<i64, i64>> pairs;
    for (i64 p : ps)
        for (i64 l : ls) pairs.emplace_back(p, l);
    std::vector<cplx> Z(pairs.size()), T(pairs.size());
    const i64 R = tr.R_max;
    parallel_items(pairs.size(), cfg.threads, [&](std::size_t i) {
        auto [p, l] = pairs[i];
        const i64 m = p % M * mod_inverse(l % M, M).value % M;
        const double kap = kappa(cfg, p, l);
        cplx z = 0, tt = 0;
        for (i64 rho = 0; rho < M; ++rho) {
            const std::vector<cplx> D = frequency_sums(G.x, H[rho], kap, R);
            const std::size_t bb = static_cast<std::size_t>(rho * m % M);
            z += S[0][bb] * D[static_cast<std::size_t>(R)];
            for (i64 r = 1; r <= R; ++r)
                tt += S[static_cast<std::size_t>(r % M)][bb] * D[static_cast<std::size_t>(R + r)] +
                      S[static_cast<std::size_t>(mod(-r, M))][bb] * D[static_cast<std::size_t>(R - r)];
        }
        Z[i] = z;
        T[i] = tt;
    });

    const double Ps = static_cast<double>(cfg.P), Ls = static_cast<double>(cfg.L);
    const cplx pre = power_it(cfg.N / (Md * cfg.t), cfg.t) * std::sqrt(cfg.t) / (Ps * Ps * std::sqrt(Md));
    const double pre_normalized = std::sqrt(cfg.t) / (std::sqrt(Md) * Ps * Ls);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [p, l] = pairs[i];
        const cplx wt = std::conj(chi(p)) * chi(l);
        out.zero += pre * wt * (static_cast<double>(p) / static_cast<double>(l)) * Z[i];
        out.O_exact += pre * wt * (static_cast<double>(p) / static_cast<double>(l)) * T[i];
        out.O_normalized += pre_normalized * wt * T[i];
    }
    return out;
}

cplx O_sum(const ExperimentConfig& cfg) { return dual_terms(cfg).O_normalized; }

ConnectionReport connection_check(const ExperimentConfig& cfg) {
    cfg.validate();
    const DirichletCharacter chi = cfg.character();
    ConnectionReport rep;
    rep.F1 = F1_sum(cfg);
    DualTerms d = dual_terms(cfg);
    rep.zero = d.zero;
    rep.O_exact = d.O_exact;
    rep.O_normalized = d.O_normalized;

    const NRange nr = n_range(cfg.w, cfg.N);
    const std::vector<double> c = weighted_coefficients(cfg, nr);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const i64 n = nr.lo + static_cast<i64>(k);
        if (c[k] == 0 || n % cfg.M == 0) continue;
        const double nd = static_cast<double>(n);
        rep.lhs += c[k] * chi(n) * power_it(nd, cfg.t) * V_A(cfg, nd);
    }
    double sp = 0, sl = 0;
    for (i64 p : cfg.p_primes()) sp += static_cast<double>(p);
    for (i64 l : cfg.l_primes()) sl += 1.0 / static_cast<double>(l);
    const double Ps = static_cast<double>(cfg.P), Md = static_cast<double>(cfg.M);
    rep.prefactor = power_it(two_pi / (Md * cfg.t), cfg.t) * e(-cfg.t / two_pi) * gauss_sum(chi.conj()) /
                    std::sqrt(Md) * (sp / (Ps * Ps)) * sl;
    rep.ratio = (rep.F1 - rep.O_exact) / (rep.prefactor * rep.lhs);
    rep.residual = std::abs(rep.ratio - 1.0);
    rep.poisson_rel_error = std::abs(rep.F1 - rep.zero - rep.O_exact) / std::max(std::abs(rep.F1), 1e-300);
    return rep;
}

EnvelopeReport envelope_check(const ExperimentConfig& cfg) {
    EnvelopeReport rep;
    const double N = cfg.N, P = static_cast<double>(cfg.P), L = static_cast<double>(cfg.L);
    const double Mt = static_cast<double>(cfg.M) * cfg.t;
    rep.F1_abs = std::abs(F1_sum(cfg));
    rep.F1_envelope = std::pow(N, 1.5) * P / (Mt * std::sqrt(L)) + std::pow(N, 0.75) * std::pow(Mt * P * L, 0.25);
    rep.F1_ratio = rep.F1_abs / rep.F1_envelope;
    rep.O_abs = std::abs(O_sum(cfg));
    rep.O_envelope = std::sqrt(N) * Mt / P + std::pow(Mt, 1.5) * L / P;
    rep.O_ratio = rep.O_abs / rep.O_envelope;
    rep.F1_sharp_abs = std::abs(F1_sharp_sum(cfg));
    rep.F1_sharp_envelope = std::pow(N, 1.5) / (P * Mt);
    rep.F1_sharp_ratio = rep.F1_sharp_abs / rep.F1_sharp_envelope;
    return rep;
}

}  // namespace gl3
