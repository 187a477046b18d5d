#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cvrep {

using cdouble = std::complex<double>;

/// Quadrature statistics in units where a coherent state has
/// var_x = var_p = 1 (convention X = a + a^dag, P = -i(a - a^dag)).
struct QuadratureMoments {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    /// Set when the cutoff level holds more than 1e-6 of the norm^2,
    /// i.e. the moments may be truncation-biased.
    bool tail_warning = false;
};

/// Pure state of `mode_count` bosonic modes on a photon-number lattice
/// truncated at `cutoff` photons per mode (inclusive). Amplitudes are
/// stored densely in row-major order with mode 0 slowest. States may be
/// sub-normalized (conditional states after heralding/measurement) but
/// never super-normalized beyond numerical tolerance.
class FockKet {
public:
    FockKet(int mode_count, int cutoff);

    static FockKet vacuum(int mode_count, int cutoff);

    int mode_count() const { return mode_count_; }
    int cutoff() const { return cutoff_; }
    /// Per-mode dimension, cutoff + 1.
    int dim() const { return dim_; }
    /// Total number of stored amplitudes, dim^mode_count.
    std::size_t size() const { return amps_.size(); }

    cdouble& operator[](std::size_t flat) { return amps_[flat]; }
    const cdouble& operator[](std::size_t flat) const { return amps_[flat]; }

    cdouble& at(std::span<const int> idx);
    const cdouble& at(std::span<const int> idx) const;
    cdouble& at(std::initializer_list<int> idx) { return at(std::span<const int>(idx.begin(), idx.size())); }
    const cdouble& at(std::initializer_list<int> idx) const { return at(std::span<const int>(idx.begin(), idx.size())); }

    std::span<cdouble> amplitudes() { return amps_; }
    std::span<const cdouble> amplitudes() const { return amps_; }

    /// Stride of `mode` in the flat layout.
    std::size_t stride(int mode) const;

    double norm2() const;
    FockKet& scale(cdouble factor);

    /// Fraction of norm^2 sitting at occupation == cutoff in `mode`.
    double cutoff_occupancy(int mode) const;

private:
    int mode_count_;
    int cutoff_;
    int dim_;
    std::vector<cdouble> amps_;
};

/// Coherent state |alpha> truncated at `cutoff`:
/// amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!).
FockKet make_coherent(cdouble alpha, int cutoff);

/// Two-mode squeezed vacuum sqrt(1-chi^2) sum_n chi^n |n,n>, 0 <= chi < 1.
FockKet make_tmsv(double chi, int cutoff);

/// Tensor product; cutoffs must match. Mode indices of `b` follow those of `a`.
FockKet tensor(const FockKet& a, const FockKet& b);

/// <a|b>; shapes must match.
cdouble inner_product(const FockKet& a, const FockKet& b);

/// Quadrature moments of one mode of the normalized state (the ket's
/// norm^2 divides out). Throws on zero-norm input.
QuadratureMoments quadrature_moments(const FockKet& ket, int mode);

/// Applies a (dim x dim) one-mode operator, given row-major, to `mode`.
FockKet apply_mode_matrix(const FockKet& ket, int mode,
                          std::span<const cdouble> op);

/// Keeps the slice with `mode` fixed at occupation `n`; the mode is removed.
FockKet project_mode(const FockKet& ket, int mode, int n);

/// Contracts two modes against sum_n <n|_a <n|_b; both modes are removed.
FockKet contract_diagonal(const FockKet& ket, int mode_a, int mode_b);

/// Moves `from` to position `to`, shifting the modes in between.
FockKet move_mode(const FockKet& ket, int from, int to);

} // namespace cvrep
