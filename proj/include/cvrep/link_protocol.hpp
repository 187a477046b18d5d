#pragma once

#include "cvrep/fock_state.hpp"
#include "cvrep/optical_elements.hpp"
#include "cvrep/quadrature.hpp"

namespace cvrep {

/// One error-correction link: teleportation of an input coherent state
/// through NLA-distilled entanglement distributed over a channel of power
/// transmission eta.
struct LinkParams {
    double eta = 1.0;
    double chi = 0.5;
    NlaSpec nla{};
    cdouble alpha{0.0, 0.0};

    bool valid() const {
        return eta > 0.0 && eta <= 1.0 && chi >= 0.0 && chi < 1.0 && nla.valid() &&
               std::isfinite(alpha.real()) && std::isfinite(alpha.imag());
    }
};

struct LinkResult {
    double success_prob = 0.0;
    double variance = 0.0;
    double excess_noise = 0.0;
    double eta_eff = 0.0;
    bool entanglement_preserving = false;
};

struct LinkNumericResult {
    LinkResult result;
    /// Ensemble P-quadrature variance (phase symmetry check).
    double variance_p = 0.0;
    /// Ensemble mean amplitude <a> of the output.
    cdouble mean_amplitude{0.0, 0.0};
    /// Richardson estimate of the relative error on the probability.
    double p_error_estimate = 0.0;
    bool converged = true;
};

/// Gain condition g = 1/(eta^{1/4} chi), which error-corrects the channel to
/// effective power transmission sqrt(eta).
double tuned_gain(double eta, double chi);

/// Effective power transmission (g sqrt(eta) chi)^2 of the corrected channel.
double effective_transmission(double eta, double chi, double g);

/// Closed-form success probability for the single-scissor link,
/// P = -(chi^2-1)(chi^2(eta g^2 + eta - 1) + 1) / ((g^2+1)((eta-1)chi^2+1)^2).
double link_success_prob_closed(double eta, double chi, double g);

/// Closed-form ensemble quadrature variance of the single-scissor link
/// output (beta-averaged, normalized by the success probability).
double link_variance_closed(double eta, double chi, double g);

/// Closed-form LinkResult for N = 1 at the given gain.
LinkResult link_closed(double eta, double chi, double g);

/// Conditional output state at dual-homodyne outcome beta (sub-normalized;
/// norm^2 is the joint success density). Analytic for any scissor count:
/// the teleported coherent state passes the loss, T_N, and the final
/// displacement D(g sqrt(eta) chi beta).
FockKet link_output_state(const LinkParams& params, cdouble beta, int cutoff);

/// Full numeric pipeline for one outcome beta built from the elementary
/// operations (tensor, dual-homodyne projection, loss with carried ancilla,
/// NLA, displacement). Returns the two-mode (output, loss-ancilla) state.
FockKet link_pipeline_state(const LinkParams& params, cdouble beta, int cutoff);

/// Success probability and ensemble output moments by Gauss-Legendre
/// integration of the pipeline over the outcome plane. The final
/// displacement enters the moments algebraically (it is unitary), so the
/// quoted moments carry no displacement-truncation bias.
LinkNumericResult link_numeric(const LinkParams& params, int cutoff,
                               const IntegratorConfig& config);

} // namespace cvrep
