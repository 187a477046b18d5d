#include "cvrep/optical_elements.hpp"

#include <cmath>
#include <stdexcept>

namespace cvrep {

std::vector<cdouble> displacement_matrix(cdouble gamma, int cutoff) {
    const std::size_t d = static_cast<std::size_t>(cutoff) + 1;
    std::vector<cdouble> D(d * d, cdouble(0.0, 0.0));
    // <0|D|n> = (-conj(gamma))^n e^{-|gamma|^2/2} / sqrt(n!), then raise m via
    // <m+1|D|n> = (sqrt(n) <m|D|n-1> + gamma <m|D|n>) / sqrt(m+1).
    D[0] = std::exp(-std::norm(gamma) / 2.0);
    for (std::size_t n = 1; n < d; ++n)
        D[n] = D[n - 1] * (-std::conj(gamma)) / std::sqrt(static_cast<double>(n));
    for (std::size_t m = 0; m + 1 < d; ++m) {
        for (std::size_t n = 0; n < d; ++n) {
            cdouble acc = gamma * D[m * d + n];
            if (n >= 1) acc += std::sqrt(static_cast<double>(n)) * D[m * d + n - 1];
            D[(m + 1) * d + n] = acc / std::sqrt(static_cast<double>(m + 1));
        }
    }
    return D;
}

FockKet apply_displacement(const FockKet& ket, int mode, cdouble gamma) {
    if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag()))
        throw std::invalid_argument("apply_displacement: non-finite displacement");
    const auto D = displacement_matrix(gamma, ket.cutoff());
    return apply_mode_matrix(ket, mode, D);
}

FockKet apply_beamsplitter(const FockKet& ket, int mode_a, int mode_b, double eta) {
    if (mode_a == mode_b)
        throw std::invalid_argument("apply_beamsplitter: modes must be distinct");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("apply_beamsplitter: eta outside [0, 1]");

    const std::size_t d = static_cast<std::size_t>(ket.dim());
    const double t = std::sqrt(eta);
    const double r = std::sqrt(1.0 - eta);

    // two-mode unitary in the (n_a, n_b) basis from the mode-operator map
    std::vector<double> lg(2 * d);
    for (std::size_t n = 0; n < 2 * d; ++n) lg[n] = std::lgamma(static_cast<double>(n) + 1.0);
    std::vector<cdouble> U(d * d * d * d, cdouble(0.0, 0.0));
    for (std::size_t n1 = 0; n1 < d; ++n1) {
        for (std::size_t n2 = 0; n2 < d; ++n2) {
            const std::size_t col = n1 * d + n2;
            for (std::size_t j = 0; j <= n1; ++j) {
                for (std::size_t k = 0; k <= n2; ++k) {
                    const std::size_t o1 = j + k;
                    const std::size_t o2 = (n1 - j) + (n2 - k);
                    if (o1 >= d || o2 >= d) continue;
                    // log of binom(n1,j) binom(n2,k) sqrt(o1! o2! / (n1! n2!))
                    const double lc = lg[n1] - lg[j] - lg[n1 - j] + lg[n2] - lg[k] - lg[n2 - k] +
                                      0.5 * (lg[o1] + lg[o2] - lg[n1] - lg[n2]);
                    double amp = std::exp(lc) * std::pow(t, static_cast<double>(j + n2 - k)) *
                                 std::pow(r, static_cast<double>(n1 - j + k));
                    if (k % 2 == 1) amp = -amp;
                    U[(o1 * d + o2) * d * d + col] += amp;
                }
            }
        }
    }

    // apply U to the (mode_a, mode_b) pair
    const std::size_t st_a = ket.stride(mode_a);
    const std::size_t st_b = ket.stride(mode_b);
    FockKet out(ket.mode_count(), ket.cutoff());
    const auto in = ket.amplitudes();
    auto dst = out.amplitudes();

    std::vector<cdouble> col(d * d), res(d * d);
    // enumerate joint index over the remaining modes by walking all flat
    // indices whose (mode_a, mode_b) digits are zero
    std::vector<int> idx(static_cast<std::size_t>(ket.mode_count()), 0);
    const std::size_t total = in.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        bool rest_rep = true;
        std::size_t f = flat;
        for (int m = ket.mode_count() - 1; m >= 0; --m) {
            const int digit = static_cast<int>(f % d);
            f /= d;
            if ((m == mode_a || m == mode_b) && digit != 0) { rest_rep = false; break; }
        }
        if (!rest_rep) continue;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                col[a * d + b] = in[flat + a * st_a + b * st_b];
        for (std::size_t rowi = 0; rowi < d * d; ++rowi) {
            cdouble acc(0.0, 0.0);
            const cdouble* row = U.data() + rowi * d * d;
            for (std::size_t c = 0; c < d * d; ++c) acc += row[c] * col[c];
            res[rowi] = acc;
        }
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                dst[flat + a * st_a + b * st_b] = res[a * d + b];
    }
    (void)idx;
    return out;
}

DensityMatrix apply_loss(const FockKet& ket, int mode, double eta) {
    FockKet with_anc = apply_loss_pure(ket, mode, eta);
    std::vector<int> keep;
    for (int m = 0; m < ket.mode_count(); ++m) keep.push_back(m);
    return partial_trace(with_anc, std::span<const int>(keep));
}

FockKet apply_loss_pure(const FockKet& ket, int mode, double eta) {
    FockKet with_anc = tensor(ket, FockKet::vacuum(1, ket.cutoff()));
    return apply_beamsplitter(with_anc, mode, ket.mode_count(), eta);
}

FockKet dual_homodyne_project(const FockKet& ket, int mode_a, int mode_r, cdouble beta) {
    if (mode_a == mode_r)
        throw std::invalid_argument("dual_homodyne_project: modes must be distinct");
    FockKet displaced = apply_displacement(ket, mode_a, -beta);
    FockKet out = contract_diagonal(displaced, mode_a, mode_r);
    out.scale(1.0 / std::sqrt(M_PI));
    return out;
}

FockKet apply_nla(const FockKet& ket, int mode, const NlaSpec& spec) {
    if (!spec.valid()) throw std::invalid_argument("apply_nla: invalid NlaSpec");
    const std::size_t d = static_cast<std::size_t>(ket.dim());
    const double g = spec.gain;
    const int N = spec.scissor_count;

    std::vector<cdouble> op(d * d, cdouble(0.0, 0.0));
    const double logpref = -0.5 * N * std::log(g * g + 1.0);
    for (std::size_t n = 0; n < d && n <= static_cast<std::size_t>(N); ++n) {
        // N!/((N-n)! N^n) g^n with the (g^2+1)^{-N/2} prefactor, in log space
        const double lc = std::lgamma(N + 1.0) - std::lgamma(N - static_cast<double>(n) + 1.0) -
                          static_cast<double>(n) * std::log(static_cast<double>(N)) +
                          static_cast<double>(n) * std::log(g) + logpref;
        op[n * d + n] = std::exp(lc);
    }
    return apply_mode_matrix(ket, mode, op);
}

FockKet scissor_circuit(const FockKet& ket, int mode, double g) {
    if (!(g > 0.0)) throw std::invalid_argument("scissor_circuit: gain must be > 0");
    const int nm = ket.mode_count();
    const double xi = gain_to_splitting(g);

    // ancilla photon in mode nm, vacuum in mode nm+1 (the output mode)
    FockKet one(1, ket.cutoff());
    one[1] = 1.0;
    FockKet psi = tensor(tensor(ket, one), FockKet::vacuum(1, ket.cutoff()));
    psi = apply_beamsplitter(psi, nm, nm + 1, xi);       // split the ancilla photon
    psi = apply_beamsplitter(psi, mode, nm, 0.5);        // mix with the signal
    // herald: zero photons on the signal-side detector, one on the other
    psi = project_mode(psi, mode, 0);                    // photon ancilla shifts to nm-1
    psi = project_mode(psi, nm - 1, 1);                  // output mode is now last
    psi = move_mode(psi, psi.mode_count() - 1, mode);
    // both detector patterns succeed with equal probability and agree up to a
    // correctable phase flip; fold that weight in so amplitudes match T_1
    psi.scale(std::sqrt(2.0));
    return psi;
}

double gain_to_splitting(double g) {
    if (!(g > 0.0)) throw std::invalid_argument("gain_to_splitting: gain must be > 0");
    return 1.0 / (g * g + 1.0);
}

double nla_success_estimate(const NlaSpec& spec) {
    if (!spec.valid()) throw std::invalid_argument("nla_success_estimate: invalid NlaSpec");
    return std::pow(1.0 / ((spec.gain + 1.0) * (spec.gain + 1.0)), spec.scissor_count);
}

} // namespace cvrep
