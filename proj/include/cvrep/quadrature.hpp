#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace cvrep {

enum class IntegrationScheme { grid, monte_carlo };

struct IntegratorConfig {
    IntegrationScheme scheme = IntegrationScheme::grid;
    /// Half-width of the integration square per beta plane.
    double radius = 8.0;
    /// Gauss-Legendre nodes per axis (grid scheme).
    int points_per_axis = 48;
    /// Total sample budget (monte-carlo scheme).
    std::int64_t samples = 1'000'000;
    /// Independent batches for error estimation; must divide work evenly.
    int batches = 32;
    std::uint64_t seed = 1;
    /// Requested standard error (monte-carlo); 0 disables the check.
    double target_error = 0.0;

    bool valid() const {
        return radius > 0.0 && points_per_axis >= 4 && samples >= 4 && batches >= 2;
    }
};

struct IntegralResult {
    double value = 0.0;
    /// Grid: Richardson comparison against half resolution.
    /// Monte-carlo: standard error over batches.
    double error_estimate = 0.0;
    std::int64_t samples_used = 0;
    /// False when a requested target error was not reached.
    bool converged = true;
};

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Integral of f over the square [-R, R]^2 in the complex beta plane.
/// Grid scheme: tensor-product Gauss-Legendre, deterministic; the error
/// estimate compares against the half-resolution grid. Monte-carlo scheme:
/// uniform sampling over the square.
IntegralResult integrate_plane(const std::function<double(std::complex<double>)>& f,
                               const IntegratorConfig& config);

/// Gaussian importance proposal for one beta plane: density
/// (coeff/pi) exp(-coeff |beta - center|^2), with the center allowed to
/// depend on the previously sampled planes.
struct PlaneProposal {
    std::function<std::complex<double>(const std::vector<std::complex<double>>&)> center;
    double coeff = 1.0;
};

/// Importance-sampled Monte Carlo estimate of the integral of f over
/// (beta_1, ..., beta_k), with planes sampled in order from `proposals`.
/// Unbiased; batches draw from deterministically derived per-batch seeds and
/// are reduced in batch order, so results are reproducible for a given seed
/// and batch count.
IntegralResult integrate_multi(
    const std::function<double(const std::vector<std::complex<double>>&)>& f,
    const std::vector<PlaneProposal>& proposals, const IntegratorConfig& config);

} // namespace cvrep
