#include "naqs/statevector.hpp"

#include "naqs/gates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace naqs {

namespace {

using std::size_t;

// Insert zero bits at the (ascending) given positions of a packed index.
inline size_t expand_index(size_t rest, const std::vector<int>& sorted_qubits) {
    size_t idx = rest;
    for (int q : sorted_qubits) {
        const size_t low = idx & ((size_t(1) << q) - 1);
        idx = ((idx >> q) << (q + 1)) | low;
    }
    return idx;
}

// Amplitude offsets of the 2^k local basis states; local bit j is the
// op's qubits[j].
inline std::vector<size_t> local_offsets(const std::vector<int>& qubits) {
    const size_t k = qubits.size();
    std::vector<size_t> off(size_t(1) << k, 0);
    for (size_t b = 0; b < off.size(); ++b) {
        size_t v = 0;
        for (size_t j = 0; j < k; ++j) {
            if ((b >> j) & 1) v |= size_t(1) << qubits[j];
        }
        off[b] = v;
    }
    return off;
}

// Fixed reduction chunk so that parallel sums are bit-identical for any
// worker count: partials are always combined in chunk order.
constexpr size_t kReduceChunk = 4096;

} // namespace

namespace detail {

void apply_matrix_inplace(std::vector<cplx>& amps, const std::vector<int>& qubits,
                          const Eigen::MatrixXcd& u) {
    const size_t k = qubits.size();
    const size_t dim = amps.size();
    std::vector<int> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    const auto off = local_offsets(qubits);

    if (k == 1) {
        const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
        const size_t stride = off[1];
        const std::int64_t count = static_cast<std::int64_t>(dim >> 1);
        const int q = sorted[0];
#pragma omp parallel for schedule(static)
        for (std::int64_t r = 0; r < count; ++r) {
            const size_t low = size_t(r) & ((size_t(1) << q) - 1);
            const size_t base = ((size_t(r) >> q) << (q + 1)) | low;
            const cplx a0 = amps[base], a1 = amps[base + stride];
            amps[base] = u00 * a0 + u01 * a1;
            amps[base + stride] = u10 * a0 + u11 * a1;
        }
        return;
    }

    const size_t block = size_t(1) << k;
    const std::int64_t count = static_cast<std::int64_t>(dim >> k);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < count; ++r) {
        const size_t base = expand_index(size_t(r), sorted);
        cplx v[8], w[8];
        for (size_t b = 0; b < block; ++b) v[b] = amps[base + off[b]];
        for (size_t row = 0; row < block; ++row) {
            cplx acc{0.0, 0.0};
            for (size_t col = 0; col < block; ++col) acc += u(row, col) * v[col];
            w[row] = acc;
        }
        for (size_t b = 0; b < block; ++b) amps[base + off[b]] = w[b];
    }
}

void apply_gate_inplace(std::vector<cplx>& amps, const GateOp& op) {
    const size_t dim = amps.size();
    switch (op.kind) {
    case GateKind::ID:
        return;
    case GateKind::X: {
        const size_t bit = size_t(1) << op.qubits[0];
        const std::int64_t count = static_cast<std::int64_t>(dim >> 1);
        const int q = op.qubits[0];
#pragma omp parallel for schedule(static)
        for (std::int64_t r = 0; r < count; ++r) {
            const size_t low = size_t(r) & (bit - 1);
            const size_t base = ((size_t(r) >> q) << (q + 1)) | low;
            std::swap(amps[base], amps[base + bit]);
        }
        return;
    }
    case GateKind::Z:
    case GateKind::S:
    case GateKind::SDG:
    case GateKind::T:
    case GateKind::TDG:
    case GateKind::RZ:
    case GateKind::U1: {
        const Eigen::MatrixXcd u = gate_matrix(op);
        const cplx d0 = u(0, 0), d1 = u(1, 1);
        const size_t bit = size_t(1) << op.qubits[0];
        const std::int64_t count = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) {
            amps[size_t(i)] *= (size_t(i) & bit) ? d1 : d0;
        }
        return;
    }
    case GateKind::CX: {
        const size_t cbit = size_t(1) << op.qubits[0];
        const size_t tbit = size_t(1) << op.qubits[1];
        std::vector<int> sorted = op.qubits;
        std::sort(sorted.begin(), sorted.end());
        const std::int64_t count = static_cast<std::int64_t>(dim >> 2);
#pragma omp parallel for schedule(static)
        for (std::int64_t r = 0; r < count; ++r) {
            const size_t base = expand_index(size_t(r), sorted) | cbit;
            std::swap(amps[base], amps[base | tbit]);
        }
        return;
    }
    case GateKind::CZ: {
        const size_t mask = (size_t(1) << op.qubits[0]) | (size_t(1) << op.qubits[1]);
        std::vector<int> sorted = op.qubits;
        std::sort(sorted.begin(), sorted.end());
        const std::int64_t count = static_cast<std::int64_t>(dim >> 2);
#pragma omp parallel for schedule(static)
        for (std::int64_t r = 0; r < count; ++r) {
            const size_t idx = expand_index(size_t(r), sorted) | mask;
            amps[idx] = -amps[idx];
        }
        return;
    }
    case GateKind::SWAP: {
        const size_t b0 = size_t(1) << op.qubits[0];
        const size_t b1 = size_t(1) << op.qubits[1];
        std::vector<int> sorted = op.qubits;
        std::sort(sorted.begin(), sorted.end());
        const std::int64_t count = static_cast<std::int64_t>(dim >> 2);
#pragma omp parallel for schedule(static)
        for (std::int64_t r = 0; r < count; ++r) {
            const size_t base = expand_index(size_t(r), sorted);
            std::swap(amps[base | b0], amps[base | b1]);
        }
        return;
    }
    case GateKind::CCX: {
        const size_t c0 = size_t(1) << op.qubits[0];
        const size_t c1 = size_t(1) << op.qubits[1];
        const size_t tbit = size_t(1) << op.qubits[2];
        std::vector<int> sorted = op.qubits;
        std::sort(sorted.begin(), sorted.end());
        const std::int64_t count = static_cast<std::int64_t>(dim >> 3);
#pragma omp parallel for schedule(static)
        for (std::int64_t r = 0; r < count; ++r) {
            const size_t base = expand_index(size_t(r), sorted) | c0 | c1;
            std::swap(amps[base], amps[base | tbit]);
        }
        return;
    }
    default:
        apply_matrix_inplace(amps, op.qubits, gate_matrix(op));
        return;
    }
}

} // namespace detail

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ContractError("state vector qubit count must be in [1, " +
                            std::to_string(kMaxQubits) + "], got " + std::to_string(num_qubits));
    }
    amps_.assign(size_t(1) << n_, cplx{0.0, 0.0});
    amps_[0] = cplx{1.0, 0.0};
}

void StateVector::reset() {
    std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
    amps_[0] = cplx{1.0, 0.0};
}

void StateVector::apply(const GateOp& op) {
    if (op.kind == GateKind::BARRIER) return;
    if (op.kind == GateKind::MEASURE) {
        throw ContractError("MEASURE has no state-vector kernel; use sample()");
    }
    for (int q : op.qubits) {
        if (q < 0 || q >= n_) {
            throw ContractError("qubit index " + std::to_string(q) + " out of range");
        }
    }
    detail::apply_gate_inplace(amps_, op);
}

void StateVector::run(const Circuit& c) {
    if (c.num_qubits() != n_) {
        throw ContractError("circuit acts on " + std::to_string(c.num_qubits()) +
                            " qubits, state has " + std::to_string(n_));
    }
    for (const auto& op : c.ops()) {
        if (op.kind == GateKind::MEASURE) {
            throw ContractError("run() takes measurement-free circuits; use sample()");
        }
        apply(op);
    }
}

double StateVector::norm_sq() const {
    const size_t dim = amps_.size();
    const size_t nchunks = (dim + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        const size_t lo = size_t(c) * kReduceChunk;
        const size_t hi = std::min(lo + kReduceChunk, dim);
        double acc = 0.0;
        for (size_t i = lo; i < hi; ++i) acc += std::norm(amps_[i]);
        partial[size_t(c)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double StateVector::expectation(const PauliString& p) const {
    if (p.n != n_) {
        throw ContractError("Pauli string length " + std::to_string(p.n) +
                            " does not match state qubit count " + std::to_string(n_));
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
    // <psi|P|psi> = i^{nY} sum_y (-1)^{popcount(y & signs)} conj(a[y^flip]) a[y]
    static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx global = kIPow[y_count & 3];
    const size_t dim = amps_.size();
    const size_t nchunks = (dim + kReduceChunk - 1) / kReduceChunk;
    std::vector<cplx> partial(nchunks, cplx{0.0, 0.0});
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        const size_t lo = size_t(c) * kReduceChunk;
        const size_t hi = std::min(lo + kReduceChunk, dim);
        cplx acc{0.0, 0.0};
        for (size_t y = lo; y < hi; ++y) {
            const double sgn = (std::popcount(y & signs) & 1) ? -1.0 : 1.0;
            acc += sgn * std::conj(amps_[y ^ flip]) * amps_[y];
        }
        partial[size_t(c)] = acc;
    }
    cplx total{0.0, 0.0};
    for (const cplx& v : partial) total += v;
    total *= global;
    return p.coefficient * total.real();
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amps_.size());
    for (size_t i = 0; i < amps_.size(); ++i) probs[i] = std::norm(amps_[i]);
    return probs;
}

std::string index_to_bitstring(std::size_t index, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int q = 0; q < n; ++q) {
        if ((index >> q) & 1) s[size_t(n - 1 - q)] = '1';
    }
    return s;
}

std::map<std::string, std::uint64_t> sample_distribution(const std::vector<double>& dist, int n,
                                                         std::uint64_t shots,
                                                         std::uint64_t seed) {
    if (shots < 1) {
        throw ContractError("shots must be >= 1");
    }
    if (dist.size() != (size_t(1) << n)) {
        throw ContractError("distribution length does not match qubit count");
    }
    // Draw all uniforms up front, sort them, and sweep the cumulative
    // probability once; avoids materializing a 2^n CDF.
    Rng rng(seed);
    std::vector<double> u(shots);
    for (auto& v : u) v = rng.next_double();
    std::sort(u.begin(), u.end());

    std::map<std::string, std::uint64_t> counts;
    double cum = 0.0;
    size_t next = 0;
    for (size_t i = 0; i < dist.size() && next < u.size(); ++i) {
        cum += dist[i];
        std::uint64_t here = 0;
        while (next < u.size() && u[next] < cum) {
            ++here;
            ++next;
        }
        if (here > 0) counts[index_to_bitstring(i, n)] += here;
    }
    if (next < u.size()) {
        // float round-off on the final cumulative; assign leftovers to the
        // last nonzero basis state
        for (size_t i = dist.size(); i-- > 0;) {
            if (dist[i] > 0.0) {
                counts[index_to_bitstring(i, n)] += u.size() - next;
                break;
            }
        }
    }
    return counts;
}

std::map<std::string, std::uint64_t> StateVector::sample(std::uint64_t shots,
                                                         std::uint64_t seed) const {
    return sample_distribution(probabilities(), n_, shots, seed);
}

void StateVector::apply_kraus_trajectory(const KrausChannel& ch, const std::vector<int>& qubits,
                                         Rng& rng) {
    if (static_cast<int>(qubits.size()) != ch.arity) {
        throw ContractError("channel arity " + std::to_string(ch.arity) + " does not match " +
                            std::to_string(qubits.size()) + " qubits");
    }
    const size_t k = qubits.size();
    const size_t block = size_t(1) << k;
    std::vector<int> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    const auto off = local_offsets(qubits);
    const size_t count = amps_.size() >> k;

    std::vector<double> weight(ch.kraus.size(), 0.0);
    for (size_t ki = 0; ki < ch.kraus.size(); ++ki) {
        const auto& m = ch.kraus[ki];
        double acc = 0.0;
        for (size_t r = 0; r < count; ++r) {
            const size_t base = expand_index(r, sorted);
            for (size_t row = 0; row < block; ++row) {
                cplx w{0.0, 0.0};
                for (size_t col = 0; col < block; ++col) {
                    w += m(Eigen::Index(row), Eigen::Index(col)) * amps_[base + off[col]];
                }
                acc += std::norm(w);
            }
        }
        weight[ki] = acc;
    }
    const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-8) {
        throw ContractError("Kraus branch probabilities sum to " + std::to_string(total) +
                            "; channel is not trace preserving on this state");
    }
    const double u = rng.next_double() * total;
    size_t chosen = weight.size() - 1;
    double cum = 0.0;
    for (size_t ki = 0; ki < weight.size(); ++ki) {
        cum += weight[ki];
        if (u < cum) {
            chosen = ki;
            break;
        }
    }
    detail::apply_matrix_inplace(amps_, qubits, ch.kraus[chosen]);
    const double scale = 1.0 / std::sqrt(weight[chosen]);
    for (auto& a : amps_) a *= scale;
}

void StateVector::run_trajectory(const NoisySchedule& schedule, Rng& rng) {
    if (schedule.num_qubits != n_) {
        throw ContractError("schedule qubit count mismatch");
    }
    for (const auto& item : schedule.items) {
        if (const auto* op = std::get_if<GateOp>(&item)) {
            if (op->kind == GateKind::MEASURE || op->kind == GateKind::BARRIER) continue;
            apply(*op);
        } else {
            const auto& app = std::get<ChannelApplication>(item);
            apply_kraus_trajectory(app.channel, app.qubits, rng);
        }
    }
}

StateVector sv_run(const Circuit& c) {
    StateVector s(c.num_qubits());
    s.run(c);
    return s;
}

} // namespace naqs
