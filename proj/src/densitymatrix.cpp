#include "naqs/densitymatrix.hpp"

#include "naqs/gates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace naqs {

namespace {

using std::size_t;

inline size_t expand_index(size_t rest, const std::vector<int>& sorted_qubits) {
    size_t idx = rest;
    for (int q : sorted_qubits) {
        const size_t low = idx & ((size_t(1) << q) - 1);
        idx = ((idx >> q) << (q + 1)) | low;
    }
    return idx;
}

inline std::vector<size_t> local_offsets(const std::vector<int>& qubits) {
    std::vector<size_t> off(size_t(1) << qubits.size(), 0);
    for (size_t b = 0; b < off.size(); ++b) {
        size_t v = 0;
        for (size_t j = 0; j < qubits.size(); ++j) {
            if ((b >> j) & 1) v |= size_t(1) << qubits[j];
        }
        off[b] = v;
    }
    return off;
}

} // namespace

DensityMatrix::DensityMatrix(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ContractError("density matrix qubit count must be in [1, " +
                            std::to_string(kMaxQubits) + "], got " + std::to_string(num_qubits));
    }
    dim_ = size_t(1) << n_;
    rho_.assign(dim_ * dim_, cplx{0.0, 0.0});
    rho_[0] = cplx{1.0, 0.0};
}

void DensityMatrix::reset() {
    std::fill(rho_.begin(), rho_.end(), cplx{0.0, 0.0});
    rho_[0] = cplx{1.0, 0.0};
}

// rho -> sum_i K_i rho K_i^dagger evaluated block-wise: for every
// (row-rest, col-rest) pair the touched 2^k x 2^k sub-block is gathered,
// transformed, and scattered back. One block of scratch per worker, no
// superoperator matrix and no extra rho-sized buffer.
namespace {

void apply_operators_blockwise(std::vector<cplx>& rho, size_t dim, const std::vector<int>& qubits,
                               const std::vector<Eigen::MatrixXcd>& ops) {
    const size_t k = qubits.size();
    const size_t block = size_t(1) << k;
    std::vector<int> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    const auto off = local_offsets(qubits);
    const size_t rest_count = dim >> k;

#pragma omp parallel for schedule(static)
    for (std::int64_t rr = 0; rr < static_cast<std::int64_t>(rest_count); ++rr) {
        const size_t rbase = expand_index(size_t(rr), sorted);
        cplx in[8][8], mid[8][8], out[8][8];
        for (size_t cr = 0; cr < rest_count; ++cr) {
            const size_t cbase = expand_index(cr, sorted);
            for (size_t i = 0; i < block; ++i) {
                for (size_t j = 0; j < block; ++j) {
                    in[i][j] = rho[(rbase + off[i]) * dim + (cbase + off[j])];
                    out[i][j] = cplx{0.0, 0.0};
                }
            }
            for (const auto& m : ops) {
                // mid = K * in
                for (size_t i = 0; i < block; ++i) {
                    for (size_t j = 0; j < block; ++j) {
                        cplx acc{0.0, 0.0};
                        for (size_t l = 0; l < block; ++l) {
                            acc += m(Eigen::Index(i), Eigen::Index(l)) * in[l][j];
                        }
                        mid[i][j] = acc;
                    }
                }
                // out += mid * K^dagger
                for (size_t i = 0; i < block; ++i) {
                    for (size_t j = 0; j < block; ++j) {
                        cplx acc{0.0, 0.0};
                        for (size_t l = 0; l < block; ++l) {
                            acc += mid[i][l] * std::conj(m(Eigen::Index(j), Eigen::Index(l)));
                        }
                        out[i][j] += acc;
                    }
                }
            }
            for (size_t i = 0; i < block; ++i) {
                for (size_t j = 0; j < block; ++j) {
                    rho[(rbase + off[i]) * dim + (cbase + off[j])] = out[i][j];
                }
            }
        }
    }
}

} // namespace

void DensityMatrix::apply(const GateOp& op) {
    if (op.kind == GateKind::BARRIER || op.kind == GateKind::ID) return;
    if (op.kind == GateKind::MEASURE) {
        throw ContractError("MEASURE has no density-matrix kernel; use probabilities()");
    }
    for (int q : op.qubits) {
        if (q < 0 || q >= n_) {
            throw ContractError("qubit index " + std::to_string(q) + " out of range");
        }
    }
    apply_operators_blockwise(rho_, dim_, op.qubits, {gate_matrix(op)});
}

void DensityMatrix::apply_channel(const KrausChannel& ch, const std::vector<int>& qubits) {
    if (static_cast<int>(qubits.size()) != ch.arity) {
        throw ContractError("channel arity " + std::to_string(ch.arity) + " does not match " +
                            std::to_string(qubits.size()) + " qubits");
    }
    for (int q : qubits) {
        if (q < 0 || q >= n_) {
            throw ContractError("qubit index " + std::to_string(q) + " out of range");
        }
    }
    validate_channel(ch);
    if (ch.is_identity()) return;
    apply_operators_blockwise(rho_, dim_, qubits, ch.kraus);
}

void DensityMatrix::run(const Circuit& c) {
    if (c.num_qubits() != n_) {
        throw ContractError("circuit qubit count mismatch");
    }
    for (const auto& op : c.ops()) {
        if (op.kind == GateKind::MEASURE) {
            throw ContractError("run() takes measurement-free circuits");
        }
        apply(op);
    }
}

void DensityMatrix::run_schedule(const NoisySchedule& schedule) {
    if (schedule.num_qubits != n_) {
        throw ContractError("schedule qubit count mismatch");
    }
    for (const auto& item : schedule.items) {
        if (const auto* op = std::get_if<GateOp>(&item)) {
            if (op->kind == GateKind::MEASURE || op->kind == GateKind::BARRIER) continue;
            apply(*op);
        } else {
            const auto& app = std::get<ChannelApplication>(item);
            apply_channel(app.channel, app.qubits);
        }
    }
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (size_t i = 0; i < dim_; ++i) t += rho_[i * dim_ + i].real();
    return t;
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    double t = 0.0;
    for (const cplx& v : rho_) t += std::norm(v);
    return t;
}

double DensityMatrix::hermiticity_residual() const {
    double worst = 0.0;
    for (size_t r = 0; r < dim_; ++r) {
        for (size_t c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs(rho_[r * dim_ + c] - std::conj(rho_[c * dim_ + r])));
        }
    }
    return worst;
}

double DensityMatrix::expectation(const PauliString& p) const {
    if (p.n != n_) {
        throw ContractError("Pauli string length does not match qubit count");
    }
    size_t flip = 0, signs = 0;
    int y_count = 0;
    for (int i = 0; i < n_; ++i) {
        switch (p.letters[size_t(i)]) {
        case 'X': flip |= size_t(1) << i; break;
        case 'Y': flip |= size_t(1) << i; signs |= size_t(1) << i; ++y_count; break;
        case 'Z': signs |= size_t(1) << i; break;
        default: break;
        }
    }
    // tr(P rho) = i^{nY} sum_y (-1)^{popcount(y & signs)} rho[y, y^flip]
    cplx total{0.0, 0.0};
    for (size_t y = 0; y < dim_; ++y) {
        const double sgn = (std::popcount(y & signs) & 1) ? -1.0 : 1.0;
        total += sgn * rho_[y * dim_ + (y ^ flip)];
    }
    static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    total *= kIPow[y_count & 3];
    if (std::abs(total.imag()) > 1e-8) {
        throw ContractError("Pauli expectation has non-real residue " +
                            std::to_string(total.imag()));
    }
    return p.coefficient * total.real();
}

std::vector<double> DensityMatrix::probabilities() const {
    std::vector<double> probs(dim_);
    double sum = 0.0;
    for (size_t i = 0; i < dim_; ++i) {
        probs[i] = std::max(0.0, rho_[i * dim_ + i].real());
        sum += probs[i];
    }
    if (sum > 0.0) {
        for (double& v : probs) v /= sum;
    }
    return probs;
}

DensityMatrix dm_run_noisy(const Circuit& c, const DeviceNoiseModel& m) {
    DensityMatrix d(c.num_qubits());
    d.run_schedule(attach_noise(c, m));
    return d;
}

} // namespace naqs
