#include "cvrep/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "cvrep/parallel.hpp"
#include "cvrep/rng.hpp"

namespace cvrep {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-angle estimate
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

namespace {

double grid_pass(const std::function<double(std::complex<double>)>& f, double R, int n) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    auto rows = parallel_map<double>(static_cast<std::size_t>(n), [&](std::size_t i) {
        double acc = 0.0;
        const double bx = R * x[i];
        for (int j = 0; j < n; ++j) {
            const double v = f({bx, R * x[static_cast<std::size_t>(j)]});
            if (std::isnan(v))
                throw std::domain_error("integrate_plane: integrand returned NaN");
            acc += w[static_cast<std::size_t>(j)] * v;
        }
        return R * R * w[i] * acc;
    });
    double total = 0.0;
    for (double r : rows) total += r;
    return total;
}

} // namespace

IntegralResult integrate_plane(const std::function<double(std::complex<double>)>& f,
                               const IntegratorConfig& config) {
    if (!config.valid()) throw std::invalid_argument("integrate_plane: invalid config");
    IntegralResult res;
    if (config.scheme == IntegrationScheme::grid) {
        const int n = config.points_per_axis;
        const double full = grid_pass(f, config.radius, n);
        const double half = grid_pass(f, config.radius, std::max(4, n / 2));
        res.value = full;
        res.error_estimate = std::abs(full - half);
        res.samples_used = static_cast<std::int64_t>(n) * n + static_cast<std::int64_t>(n / 2) * (n / 2);
        res.converged = config.target_error <= 0.0 || res.error_estimate <= config.target_error;
        return res;
    }

    // uniform monte carlo over the square, batched
    const int B = config.batches;
    const std::int64_t per = config.samples / B;
    const double area = 4.0 * config.radius * config.radius;
    auto batch_means = parallel_map<double>(static_cast<std::size_t>(B), [&](std::size_t b) {
        RandomStream rs(derive_seed(config.seed, b));
        double acc = 0.0;
        for (std::int64_t s = 0; s < per; ++s) {
            const double re = (2.0 * rs.uniform01() - 1.0) * config.radius;
            const double im = (2.0 * rs.uniform01() - 1.0) * config.radius;
            const double v = f({re, im});
            if (std::isnan(v))
                throw std::domain_error("integrate_plane: integrand returned NaN");
            acc += v;
        }
        return area * acc / static_cast<double>(per);
    });
    double mean = 0.0;
    for (double v : batch_means) mean += v;
    mean /= B;
    double var = 0.0;
    for (double v : batch_means) var += (v - mean) * (v - mean);
    var /= (B - 1.0);
    res.value = mean;
    res.error_estimate = std::sqrt(var / B);
    res.samples_used = per * B;
    res.converged = config.target_error <= 0.0 || res.error_estimate <= config.target_error;
    return res;
}

IntegralResult integrate_multi(
    const std::function<double(const std::vector<std::complex<double>>&)>& f,
    const std::vector<PlaneProposal>& proposals, const IntegratorConfig& config) {
    if (!config.valid()) throw std::invalid_argument("integrate_multi: invalid config");
    if (proposals.empty()) throw std::invalid_argument("integrate_multi: no proposals");
    for (const auto& p : proposals)
        if (!(p.coeff > 0.0) || !p.center)
            throw std::invalid_argument("integrate_multi: invalid proposal");

    const int B = config.batches;
    const std::int64_t per = config.samples / B;
    const std::size_t k = proposals.size();

    auto batch_means = parallel_map<double>(static_cast<std::size_t>(B), [&](std::size_t b) {
        RandomStream rs(derive_seed(config.seed, b));
        std::vector<std::complex<double>> betas(k);
        double acc = 0.0;
        for (std::int64_t s = 0; s < per; ++s) {
            double logq = 0.0;
            betas.clear();
            for (std::size_t p = 0; p < k; ++p) {
                const auto c = proposals[p].center(betas);
                const double coeff = proposals[p].coeff;
                const double sd = std::sqrt(1.0 / (2.0 * coeff));
                const std::complex<double> z(c.real() + sd * rs.normal(),
                                             c.imag() + sd * rs.normal());
                logq += std::log(coeff / M_PI) - coeff * std::norm(z - c);
                betas.push_back(z);
            }
            const double v = f(betas);
            if (std::isnan(v))
                throw std::domain_error("integrate_multi: integrand returned NaN");
            acc += v * std::exp(-logq);
        }
        return acc / static_cast<double>(per);
    });

    double mean = 0.0;
    for (double v : batch_means) mean += v;
    mean /= B;
    double var = 0.0;
    for (double v : batch_means) var += (v - mean) * (v - mean);
    var /= (B - 1.0);

    IntegralResult res;
    res.value = mean;
    res.error_estimate = std::sqrt(var / B);
    res.samples_used = per * B;
    res.converged = config.target_error <= 0.0 || res.error_estimate <= config.target_error;
    return res;
}

} // namespace cvrep
