#include "cvrep/density_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace cvrep {

namespace {

std::size_t pow_sz(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_keep(std::span<const int> keep, int mode_count) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep_modes empty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= mode_count)
            throw std::invalid_argument("partial_trace: mode index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw std::invalid_argument("partial_trace: keep_modes must be ascending and unique");
    }
}

} // namespace

DensityMatrix::DensityMatrix(int mode_count, int cutoff)
    : mode_count_(mode_count), cutoff_(cutoff) {
    if (mode_count < 1) throw std::invalid_argument("DensityMatrix: mode_count must be >= 1");
    if (cutoff < 0) throw std::invalid_argument("DensityMatrix: cutoff must be >= 0");
    const auto n = static_cast<Eigen::Index>(pow_sz(static_cast<std::size_t>(cutoff + 1), mode_count));
    entries_ = Eigen::MatrixXcd::Zero(n, n);
}

DensityMatrix DensityMatrix::from_ket(const FockKet& ket) {
    DensityMatrix rho(ket.mode_count(), ket.cutoff());
    const auto n = rho.basis_size();
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = ket[static_cast<std::size_t>(i)];
    rho.entries_ = v * v.adjoint();
    return rho;
}

double DensityMatrix::trace() const { return entries_.trace().real(); }

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

double DensityMatrix::hermiticity_defect() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (entries_ + entries_.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityMatrix partial_trace(const FockKet& ket, std::span<const int> keep_modes) {
    check_keep(keep_modes, ket.mode_count());

    const int nm = ket.mode_count();
    const int nk = static_cast<int>(keep_modes.size());
    const std::size_t d = static_cast<std::size_t>(ket.dim());

    std::vector<int> traced;
    for (int m = 0; m < nm; ++m)
        if (std::find(keep_modes.begin(), keep_modes.end(), m) == keep_modes.end())
            traced.push_back(m);

    DensityMatrix rho(nk, ket.cutoff());
    const std::size_t nkeep = pow_sz(d, nk);
    const std::size_t ntr = pow_sz(d, static_cast<int>(traced.size()));

    auto flat_of = [&](std::size_t keep_flat, std::size_t tr_flat) {
        std::size_t flat = 0;
        for (int i = nk - 1; i >= 0; --i) {
            flat += (keep_flat % d) * ket.stride(keep_modes[static_cast<std::size_t>(i)]);
            keep_flat /= d;
        }
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
            flat += (tr_flat % d) * ket.stride(traced[static_cast<std::size_t>(i)]);
            tr_flat /= d;
        }
        return flat;
    };

    for (std::size_t i = 0; i < nkeep; ++i) {
        for (std::size_t j = 0; j < nkeep; ++j) {
            cdouble s(0.0, 0.0);
            for (std::size_t t = 0; t < ntr; ++t)
                s += ket[flat_of(i, t)] * std::conj(ket[flat_of(j, t)]);
            rho.entries()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
        }
    }
    return rho;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep_modes) {
    check_keep(keep_modes, rho.mode_count());

    const int nm = rho.mode_count();
    const int nk = static_cast<int>(keep_modes.size());
    const std::size_t d = static_cast<std::size_t>(rho.dim());

    std::vector<int> traced;
    std::vector<std::size_t> stride(static_cast<std::size_t>(nm));
    for (int m = 0; m < nm; ++m) stride[static_cast<std::size_t>(m)] = pow_sz(d, nm - 1 - m);
    for (int m = 0; m < nm; ++m)
        if (std::find(keep_modes.begin(), keep_modes.end(), m) == keep_modes.end())
            traced.push_back(m);

    DensityMatrix out(nk, rho.cutoff());
    const std::size_t nkeep = pow_sz(d, nk);
    const std::size_t ntr = pow_sz(d, static_cast<int>(traced.size()));

    auto flat_of = [&](std::size_t keep_flat, std::size_t tr_flat) {
        std::size_t flat = 0;
        for (int i = nk - 1; i >= 0; --i) {
            flat += (keep_flat % d) * stride[static_cast<std::size_t>(keep_modes[static_cast<std::size_t>(i)])];
            keep_flat /= d;
        }
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
            flat += (tr_flat % d) * stride[static_cast<std::size_t>(traced[static_cast<std::size_t>(i)])];
            tr_flat /= d;
        }
        return flat;
    };

    for (std::size_t i = 0; i < nkeep; ++i)
        for (std::size_t j = 0; j < nkeep; ++j) {
            cdouble s(0.0, 0.0);
            for (std::size_t t = 0; t < ntr; ++t)
                s += rho.entries()(static_cast<Eigen::Index>(flat_of(i, t)),
                                   static_cast<Eigen::Index>(flat_of(j, t)));
            out.entries()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
        }
    return out;
}

} // namespace cvrep
