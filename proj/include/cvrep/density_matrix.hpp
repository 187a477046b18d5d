#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "cvrep/fock_state.hpp"

namespace cvrep {

/// Mixed state over the truncated photon-number lattice. Rows and columns
/// use the same row-major multi-index packing as FockKet.
class DensityMatrix {
public:
    DensityMatrix(int mode_count, int cutoff);

    static DensityMatrix from_ket(const FockKet& ket);

    int mode_count() const { return mode_count_; }
    int cutoff() const { return cutoff_; }
    int dim() const { return cutoff_ + 1; }
    Eigen::Index basis_size() const { return entries_.rows(); }

    Eigen::MatrixXcd& entries() { return entries_; }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    double trace() const;
    double purity() const;

    /// Largest |rho - rho^dag| entry.
    double hermiticity_defect() const;
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

private:
    int mode_count_;
    int cutoff_;
    Eigen::MatrixXcd entries_;
};

/// Reduced state over `keep_modes` (ascending subset of the ket's modes).
DensityMatrix partial_trace(const FockKet& ket, std::span<const int> keep_modes);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep_modes);

inline DensityMatrix partial_trace(const FockKet& ket, std::initializer_list<int> keep) {
    return partial_trace(ket, std::span<const int>(keep.begin(), keep.size()));
}
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
    return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

} // namespace cvrep
