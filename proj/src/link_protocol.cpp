#include "cvrep/link_protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "cvrep/parallel.hpp"

namespace cvrep {

namespace {

struct RawModeMoments {
    double norm2 = 0.0;
    cdouble a{0.0, 0.0};   // <a>
    cdouble a2{0.0, 0.0};  // <a^2>
    double n = 0.0;        // <a^dag a>
};

RawModeMoments raw_mode_moments(const FockKet& ket, int mode) {
    RawModeMoments r;
    const std::size_t st = ket.stride(mode);
    const std::size_t d = static_cast<std::size_t>(ket.dim());
    const std::size_t block = st * d;
    const auto amps = ket.amplitudes();
    for (std::size_t base = 0; base < amps.size(); base += block) {
        for (std::size_t inner = 0; inner < st; ++inner) {
            const std::size_t off = base + inner;
            for (std::size_t n = 0; n < d; ++n) {
                const cdouble c = amps[off + st * n];
                if (c == cdouble(0.0, 0.0)) continue;
                const double nn = static_cast<double>(n);
                r.norm2 += std::norm(c);
                r.n += nn * std::norm(c);
                if (n + 1 < d) r.a += std::conj(c) * std::sqrt(nn + 1.0) * amps[off + st * (n + 1)];
                if (n + 2 < d)
                    r.a2 += std::conj(c) * std::sqrt((nn + 1.0) * (nn + 2.0)) * amps[off + st * (n + 2)];
            }
        }
    }
    return r;
}

void check_params(const LinkParams& p) {
    if (!p.valid()) throw std::invalid_argument("link: invalid parameters");
}

} // namespace

double tuned_gain(double eta, double chi) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("tuned_gain: eta outside (0, 1]");
    if (!(chi > 0.0 && chi < 1.0)) throw std::invalid_argument("tuned_gain: chi outside (0, 1)");
    return 1.0 / (std::pow(eta, 0.25) * chi);
}

double effective_transmission(double eta, double chi, double g) {
    const double amp = g * std::sqrt(eta) * chi;
    return amp * amp;
}

double link_success_prob_closed(double eta, double chi, double g) {
    const double c2 = chi * chi;
    const double num = -(c2 - 1.0) * (c2 * (eta * g * g + eta - 1.0) + 1.0);
    const double den = (g * g + 1.0) * ((eta - 1.0) * c2 + 1.0) * ((eta - 1.0) * c2 + 1.0);
    return num / den;
}

double link_variance_closed(double eta, double chi, double g) {
    const double c2 = chi * chi;
    const double g2 = g * g;
    const double num =
        c2 * (eta * (g2 + c2 * (4.0 * eta * g2 * g2 + (eta - 1.0) * g2 + eta - 2.0) + 2.0) + c2 - 2.0) + 1.0;
    const double den = ((eta - 1.0) * c2 + 1.0) * (c2 * (eta * g2 + eta - 1.0) + 1.0);
    return num / den;
}

LinkResult link_closed(double eta, double chi, double g) {
    LinkResult r;
    r.success_prob = link_success_prob_closed(eta, chi, g);
    r.variance = link_variance_closed(eta, chi, g);
    r.excess_noise = r.variance - 1.0;
    r.eta_eff = effective_transmission(eta, chi, g);
    r.entanglement_preserving = r.excess_noise < 2.0 * r.eta_eff;
    return r;
}

FockKet link_output_state(const LinkParams& params, cdouble beta, int cutoff) {
    check_params(params);
    const double chi = params.chi;
    const double g = params.nla.gain;
    const int N = params.nla.scissor_count;
    const cdouble u = params.alpha - beta;
    const cdouble mu = std::sqrt(params.eta) * chi * u;  // amplitude reaching the NLA

    const double log_env = 0.5 * std::norm(u) * (chi * chi - 1.0) - 0.5 * std::norm(mu) -
                           0.5 * N * std::log(g * g + 1.0);
    const double pref = std::sqrt((1.0 - chi * chi) / M_PI) * std::exp(log_env);

    FockKet ket(1, cutoff);
    cdouble pw(1.0, 0.0);
    for (int n = 0; n <= std::min(N, cutoff); ++n) {
        const double cn = std::exp(std::lgamma(N + 1.0) - std::lgamma(N - n + 1.0) -
                                   n * std::log(static_cast<double>(N)));
        ket[static_cast<std::size_t>(n)] = pref * cn * pw / std::sqrt(std::exp(std::lgamma(n + 1.0)));
        pw *= g * mu;
    }
    return apply_displacement(ket, 0, g * std::sqrt(params.eta) * chi * beta);
}

FockKet link_pipeline_state(const LinkParams& params, cdouble beta, int cutoff) {
    check_params(params);
    FockKet psi = tensor(make_coherent(params.alpha, cutoff), make_tmsv(params.chi, cutoff));
    FockKet cond = dual_homodyne_project(psi, 0, 1, beta);
    FockKet lossy = apply_loss_pure(cond, 0, params.eta);
    lossy = apply_nla(lossy, 0, params.nla);
    return apply_displacement(lossy, 0, params.nla.gain * std::sqrt(params.eta) * params.chi * beta);
}

namespace {

struct NodeMoments {
    double n2 = 0.0, x = 0.0, xx = 0.0, p = 0.0, pp = 0.0;
};

// one outcome: pipeline without the last displacement, moments shifted
// algebraically by the displacement gamma
NodeMoments link_node(const LinkParams& params, cdouble beta, int cutoff) {
    FockKet psi = tensor(make_coherent(params.alpha, cutoff), make_tmsv(params.chi, cutoff));
    FockKet cond = dual_homodyne_project(psi, 0, 1, beta);
    FockKet lossy = apply_loss_pure(cond, 0, params.eta);
    lossy = apply_nla(lossy, 0, params.nla);

    const cdouble gamma = params.nla.gain * std::sqrt(params.eta) * params.chi * beta;
    const RawModeMoments m = raw_mode_moments(lossy, 0);

    const double X = 2.0 * m.a.real();
    const double P = 2.0 * m.a.imag();
    const double X2 = 2.0 * m.a2.real() + 2.0 * m.n + m.norm2;
    const double P2 = -2.0 * m.a2.real() + 2.0 * m.n + m.norm2;
    const double gx = 2.0 * gamma.real();
    const double gp = 2.0 * gamma.imag();

    NodeMoments out;
    out.n2 = m.norm2;
    out.x = X + gx * m.norm2;
    out.p = P + gp * m.norm2;
    out.xx = X2 + 2.0 * gx * X + gx * gx * m.norm2;
    out.pp = P2 + 2.0 * gp * P + gp * gp * m.norm2;
    return out;
}

struct GridTotals {
    double P = 0.0, X = 0.0, XX = 0.0, Pq = 0.0, PPq = 0.0;
};

GridTotals grid_pass(const LinkParams& params, int cutoff, double R, int n) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    auto rows = parallel_map<GridTotals>(static_cast<std::size_t>(n), [&](std::size_t i) {
        GridTotals t;
        const double bx = R * x[i];
        for (int j = 0; j < n; ++j) {
            const cdouble beta(bx, R * x[static_cast<std::size_t>(j)]);
            const NodeMoments m = link_node(params, beta, cutoff);
            const double wj = w[static_cast<std::size_t>(j)];
            t.P += wj * m.n2;
            t.X += wj * m.x;
            t.XX += wj * m.xx;
            t.Pq += wj * m.p;
            t.PPq += wj * m.pp;
        }
        const double wi = R * R * w[i];
        t.P *= wi; t.X *= wi; t.XX *= wi; t.Pq *= wi; t.PPq *= wi;
        return t;
    });
    GridTotals tot;
    for (const auto& t : rows) {
        tot.P += t.P; tot.X += t.X; tot.XX += t.XX; tot.Pq += t.Pq; tot.PPq += t.PPq;
    }
    return tot;
}

} // namespace

LinkNumericResult link_numeric(const LinkParams& params, int cutoff,
                               const IntegratorConfig& config) {
    check_params(params);
    if (!config.valid()) throw std::invalid_argument("link_numeric: invalid integrator config");

    const double R = config.radius > 0.0 ? config.radius : 6.0 + 2.0 * std::abs(params.alpha);
    const int n = config.points_per_axis;

    const GridTotals full = grid_pass(params, cutoff, R, n);
    const GridTotals half = grid_pass(params, cutoff, R, std::max(4, n / 2));

    LinkNumericResult out;
    const double P = full.P;
    const double mx = full.X / P;
    const double mp = full.Pq / P;
    out.result.success_prob = P;
    out.result.variance = full.XX / P - mx * mx;
    out.variance_p = full.PPq / P - mp * mp;
    out.result.excess_noise = out.result.variance - 1.0;
    out.result.eta_eff = effective_transmission(params.eta, params.chi, params.nla.gain);
    out.result.entanglement_preserving = out.result.excess_noise < 2.0 * out.result.eta_eff;
    out.mean_amplitude = cdouble(mx / 2.0, mp / 2.0);
    out.p_error_estimate = std::abs(full.P - half.P) / std::max(full.P, 1e-300);
    out.converged = config.target_error <= 0.0 || out.p_error_estimate <= config.target_error;
    return out;
}

} // namespace cvrep
