#include "cvrep/fock_state.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cvrep {

namespace {

std::size_t pow_sz(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace

FockKet::FockKet(int mode_count, int cutoff)
    : mode_count_(mode_count), cutoff_(cutoff), dim_(cutoff + 1) {
    if (mode_count < 1) throw std::invalid_argument("FockKet: mode_count must be >= 1");
    if (cutoff < 0) throw std::invalid_argument("FockKet: cutoff must be >= 0");
    amps_.assign(pow_sz(static_cast<std::size_t>(dim_), mode_count), cdouble(0.0, 0.0));
}

FockKet FockKet::vacuum(int mode_count, int cutoff) {
    FockKet k(mode_count, cutoff);
    k.amps_[0] = 1.0;
    return k;
}

std::size_t FockKet::stride(int mode) const {
    if (mode < 0 || mode >= mode_count_) throw std::invalid_argument("FockKet: bad mode index");
    return pow_sz(static_cast<std::size_t>(dim_), mode_count_ - 1 - mode);
}

cdouble& FockKet::at(std::span<const int> idx) {
    const auto* self = this;
    return const_cast<cdouble&>(self->at(idx));
}

const cdouble& FockKet::at(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != mode_count_)
        throw std::invalid_argument("FockKet::at: index rank mismatch");
    std::size_t flat = 0;
    for (int m = 0; m < mode_count_; ++m) {
        if (idx[m] < 0 || idx[m] > cutoff_)
            throw std::out_of_range("FockKet::at: occupation outside [0, cutoff]");
        flat = flat * dim_ + static_cast<std::size_t>(idx[m]);
    }
    return amps_[flat];
}

double FockKet::norm2() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

FockKet& FockKet::scale(cdouble factor) {
    for (auto& a : amps_) a *= factor;
    return *this;
}

double FockKet::cutoff_occupancy(int mode) const {
    const std::size_t st = stride(mode);
    const std::size_t d = static_cast<std::size_t>(dim_);
    const std::size_t block = st * d;
    double top = 0.0;
    for (std::size_t base = 0; base < amps_.size(); base += block)
        for (std::size_t inner = 0; inner < st; ++inner)
            top += std::norm(amps_[base + st * (d - 1) + inner]);
    const double n2 = norm2();
    return n2 > 0.0 ? top / n2 : 0.0;
}

FockKet make_coherent(cdouble alpha, int cutoff) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw std::invalid_argument("make_coherent: non-finite amplitude");
    FockKet k(1, cutoff);
    cdouble amp = std::exp(-std::norm(alpha) / 2.0);
    k[0] = amp;
    for (int n = 1; n <= cutoff; ++n) {
        amp *= alpha / std::sqrt(static_cast<double>(n));
        k[static_cast<std::size_t>(n)] = amp;
    }
    return k;
}

FockKet make_tmsv(double chi, int cutoff) {
    if (!(chi >= 0.0) || chi >= 1.0)
        throw std::invalid_argument("make_tmsv: chi must lie in [0, 1)");
    FockKet k(2, cutoff);
    const double pref = std::sqrt(1.0 - chi * chi);
    double amp = pref;
    for (int n = 0; n <= cutoff; ++n) {
        k.at({n, n}) = amp;
        amp *= chi;
    }
    return k;
}

FockKet tensor(const FockKet& a, const FockKet& b) {
    if (a.cutoff() != b.cutoff())
        throw std::invalid_argument("tensor: cutoffs must match");
    FockKet out(a.mode_count() + b.mode_count(), a.cutoff());
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cdouble(0.0, 0.0)) continue;
        const std::size_t base = i * nb;
        for (std::size_t j = 0; j < nb; ++j) out[base + j] = a[i] * b[j];
    }
    return out;
}

cdouble inner_product(const FockKet& a, const FockKet& b) {
    if (a.mode_count() != b.mode_count() || a.cutoff() != b.cutoff())
        throw std::invalid_argument("inner_product: shape mismatch");
    cdouble s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

QuadratureMoments quadrature_moments(const FockKet& ket, int mode) {
    const double n2 = ket.norm2();
    if (n2 <= 0.0) throw std::invalid_argument("quadrature_moments: zero-norm state");

    const std::size_t st = ket.stride(mode);
    const std::size_t d = static_cast<std::size_t>(ket.dim());
    const std::size_t block = st * d;

    // <a>, <a^2>, <n> on the given mode, all other modes contracted.
    cdouble ma(0.0, 0.0), ma2(0.0, 0.0);
    double mn = 0.0, top = 0.0;
    const auto amps = ket.amplitudes();
    for (std::size_t base = 0; base < amps.size(); base += block) {
        for (std::size_t inner = 0; inner < st; ++inner) {
            const std::size_t off = base + inner;
            for (std::size_t n = 0; n < d; ++n) {
                const cdouble c = amps[off + st * n];
                if (c == cdouble(0.0, 0.0)) continue;
                const double nn = static_cast<double>(n);
                mn += nn * std::norm(c);
                if (n + 1 < d)
                    ma += std::conj(c) * std::sqrt(nn + 1.0) * amps[off + st * (n + 1)];
                if (n + 2 < d)
                    ma2 += std::conj(c) * std::sqrt((nn + 1.0) * (nn + 2.0)) * amps[off + st * (n + 2)];
                if (n == d - 1) top += std::norm(c);
            }
        }
    }
    ma /= n2;
    ma2 /= n2;
    mn /= n2;

    QuadratureMoments q;
    q.mean_x = 2.0 * ma.real();
    q.mean_p = 2.0 * ma.imag();
    const double x2 = 2.0 * ma2.real() + 2.0 * mn + 1.0;
    const double p2 = -2.0 * ma2.real() + 2.0 * mn + 1.0;
    q.var_x = x2 - q.mean_x * q.mean_x;
    q.var_p = p2 - q.mean_p * q.mean_p;
    q.tail_warning = (top / n2 > 1e-6);
    return q;
}

FockKet apply_mode_matrix(const FockKet& ket, int mode, std::span<const cdouble> op) {
    const std::size_t d = static_cast<std::size_t>(ket.dim());
    if (op.size() != d * d)
        throw std::invalid_argument("apply_mode_matrix: operator size mismatch");
    const std::size_t st = ket.stride(mode);
    const std::size_t block = st * d;
    FockKet out(ket.mode_count(), ket.cutoff());
    const auto in = ket.amplitudes();
    auto dst = out.amplitudes();
    std::vector<cdouble> col(d);
    for (std::size_t base = 0; base < in.size(); base += block) {
        for (std::size_t inner = 0; inner < st; ++inner) {
            const std::size_t off = base + inner;
            for (std::size_t n = 0; n < d; ++n) col[n] = in[off + st * n];
            for (std::size_t m = 0; m < d; ++m) {
                cdouble acc(0.0, 0.0);
                const cdouble* row = op.data() + m * d;
                for (std::size_t n = 0; n < d; ++n) acc += row[n] * col[n];
                dst[off + st * m] = acc;
            }
        }
    }
    return out;
}

FockKet project_mode(const FockKet& ket, int mode, int n) {
    if (ket.mode_count() < 2)
        throw std::invalid_argument("project_mode: cannot remove the only mode");
    if (n < 0 || n > ket.cutoff())
        throw std::out_of_range("project_mode: occupation outside [0, cutoff]");
    const std::size_t st = ket.stride(mode);
    const std::size_t d = static_cast<std::size_t>(ket.dim());
    const std::size_t block = st * d;
    FockKet out(ket.mode_count() - 1, ket.cutoff());
    const auto in = ket.amplitudes();
    auto dst = out.amplitudes();
    std::size_t w = 0;
    for (std::size_t base = 0; base < in.size(); base += block)
        for (std::size_t inner = 0; inner < st; ++inner)
            dst[w++] = in[base + st * static_cast<std::size_t>(n) + inner];
    return out;
}

FockKet contract_diagonal(const FockKet& ket, int mode_a, int mode_b) {
    if (mode_a == mode_b)
        throw std::invalid_argument("contract_diagonal: modes must be distinct");
    if (ket.mode_count() < 3)
        throw std::invalid_argument("contract_diagonal: need a spectator mode");
    const int lo = std::min(mode_a, mode_b);
    const int hi = std::max(mode_a, mode_b);
    const std::size_t d = static_cast<std::size_t>(ket.dim());

    FockKet out(ket.mode_count() - 2, ket.cutoff());
    const std::size_t st_lo = ket.stride(lo);
    const std::size_t st_hi = ket.stride(hi);
    auto dst = out.amplitudes();
    const auto in = ket.amplitudes();

    // walk output multi-index; insert n at the two removed positions
    std::vector<int> oidx(static_cast<std::size_t>(out.mode_count()), 0);
    for (std::size_t w = 0; w < dst.size(); ++w) {
        std::size_t base = 0;
        int src_mode = 0;
        for (int m = 0; m < out.mode_count(); ++m, ++src_mode) {
            while (src_mode == lo || src_mode == hi) ++src_mode;
            base += static_cast<std::size_t>(oidx[static_cast<std::size_t>(m)]) * ket.stride(src_mode);
        }
        cdouble s(0.0, 0.0);
        for (std::size_t n = 0; n < d; ++n) s += in[base + n * st_lo + n * st_hi];
        dst[w] = s;
        for (int m = out.mode_count() - 1; m >= 0; --m) {
            if (++oidx[static_cast<std::size_t>(m)] <= ket.cutoff()) break;
            oidx[static_cast<std::size_t>(m)] = 0;
        }
    }
    return out;
}

FockKet move_mode(const FockKet& ket, int from, int to) {
    if (from == to) return ket;
    const int nm = ket.mode_count();
    if (from < 0 || from >= nm || to < 0 || to >= nm)
        throw std::invalid_argument("move_mode: bad mode index");
    // permutation: output position -> source mode
    std::vector<int> src(static_cast<std::size_t>(nm));
    int w = 0;
    for (int m = 0; m < nm; ++m) {
        if (m == from) continue;
        if (w == to) ++w;
        src[static_cast<std::size_t>(w++)] = m;
    }
    src[static_cast<std::size_t>(to)] = from;

    FockKet out(nm, ket.cutoff());
    auto dst = out.amplitudes();
    std::vector<int> oidx(static_cast<std::size_t>(nm), 0);
    for (std::size_t i = 0; i < dst.size(); ++i) {
        std::size_t flat = 0;
        for (int m = 0; m < nm; ++m)
            flat += static_cast<std::size_t>(oidx[static_cast<std::size_t>(m)]) *
                    ket.stride(src[static_cast<std::size_t>(m)]);
        dst[i] = ket[flat];
        for (int m = nm - 1; m >= 0; --m) {
            if (++oidx[static_cast<std::size_t>(m)] <= ket.cutoff()) break;
            oidx[static_cast<std::size_t>(m)] = 0;
        }
    }
    return out;
}

} // namespace cvrep
