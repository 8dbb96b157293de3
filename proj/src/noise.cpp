#include "naqs/noise.hpp"

#include "naqs/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace naqs {

namespace {

using json = nlohmann::json;

const Eigen::Matrix2cd& pauli_i() {
    static const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    return m;
}
Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::MatrixXcd kron2(const Eigen::Matrix2cd& hi, const Eigen::Matrix2cd& lo) {
    Eigen::MatrixXcd out(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block(2 * i, 2 * j, 2, 2) = hi(i, j) * lo;
        }
    }
    return out;
}

} // namespace

double KrausChannel::completeness_residual() const {
    if (kraus.empty()) return 1.0;
    const Eigen::Index dim = kraus.front().rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& k : kraus) sum += k.adjoint() * k;
    return (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

bool KrausChannel::is_identity(double tol) const {
    if (kraus.size() != 1) return false;
    const auto& k = kraus.front();
    return (k - Eigen::MatrixXcd::Identity(k.rows(), k.cols())).cwiseAbs().maxCoeff() <= tol;
}

void validate_channel(const KrausChannel& ch, double tol) {
    if (ch.arity != 1 && ch.arity != 2) {
        throw ContractError("channel arity must be 1 or 2, got " + std::to_string(ch.arity));
    }
    if (ch.kraus.empty()) {
        throw ContractError("channel needs at least one Kraus operator");
    }
    const Eigen::Index dim = Eigen::Index(1) << ch.arity;
    for (const auto& k : ch.kraus) {
        if (k.rows() != dim || k.cols() != dim) {
            throw ContractError("Kraus operator has wrong dimension");
        }
        if (!k.allFinite()) {
            throw ContractError("Kraus operator has non-finite entries");
        }
    }
    const double residual = ch.completeness_residual();
    if (residual > tol) {
        throw ContractError("Kraus completeness residual " + std::to_string(residual) +
                            " exceeds " + std::to_string(tol));
    }
}

KrausChannel identity_channel(int arity) {
    const Eigen::Index dim = Eigen::Index(1) << arity;
    return KrausChannel{arity, {Eigen::MatrixXcd::Identity(dim, dim)}};
}

KrausChannel depolarizing(double p, int arity) {
    if (p < 0.0 || p > 1.0) {
        throw ContractError("depolarizing probability must be in [0,1], got " + std::to_string(p));
    }
    if (arity != 1 && arity != 2) {
        throw ContractError("depolarizing arity must be 1 or 2");
    }
    if (p == 0.0) return identity_channel(arity);

    KrausChannel ch;
    ch.arity = arity;
    if (arity == 1) {
        if (p < 1.0) ch.kraus.push_back(std::sqrt(1.0 - p) * pauli_i());
        const double w = std::sqrt(p / 3.0);
        ch.kraus.push_back(w * pauli_x());
        ch.kraus.push_back(w * pauli_y());
        ch.kraus.push_back(w * pauli_z());
    } else {
        const Eigen::Matrix2cd paulis[4] = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
        if (p < 1.0) ch.kraus.push_back(std::sqrt(1.0 - p) * Eigen::MatrixXcd::Identity(4, 4));
        const double w = std::sqrt(p / 15.0);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a == 0 && b == 0) continue;
                ch.kraus.push_back(w * kron2(paulis[b], paulis[a]));
            }
        }
    }
    return ch;
}

KrausChannel amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) {
        throw ContractError("damping probability must be in [0,1]");
    }
    Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Identity(2, 2);
    k0(1, 1) = std::sqrt(1.0 - gamma);
    Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    KrausChannel ch{1, {k0}};
    if (gamma > 0.0) ch.kraus.push_back(k1);
    return ch;
}

KrausChannel thermal_relaxation(double t1_us, double t2_us, double duration_ns) {
    if (t1_us <= 0.0 || t2_us <= 0.0) {
        throw ContractError("thermal relaxation requires positive T1 and T2");
    }
    if (duration_ns < 0.0) {
        throw ContractError("duration must be non-negative");
    }
    if (duration_ns == 0.0) return identity_channel(1);

    const double d_us = duration_ns / 1000.0;
    const double t2_eff = std::min(t2_us, t1_us);
    const double gamma = 1.0 - std::exp(-d_us / t1_us);
    // Amplitude damping already shrinks off-diagonals by exp(-d/2T1); the
    // extra pure dephasing brings total off-diagonal decay to exp(-d/T2).
    const double lambda = 1.0 - std::exp(d_us / t1_us - 2.0 * d_us / t2_eff);

    const Eigen::MatrixXcd amp0 =
        (Eigen::MatrixXcd(2, 2) << 1, 0, 0, std::sqrt(1.0 - gamma)).finished();
    const Eigen::MatrixXcd amp1 =
        (Eigen::MatrixXcd(2, 2) << 0, std::sqrt(gamma), 0, 0).finished();
    const Eigen::MatrixXcd ph0 =
        (Eigen::MatrixXcd(2, 2) << 1, 0, 0, std::sqrt(1.0 - lambda)).finished();
    const Eigen::MatrixXcd ph1 =
        (Eigen::MatrixXcd(2, 2) << 0, 0, 0, std::sqrt(lambda)).finished();

    KrausChannel ch;
    ch.arity = 1;
    for (const auto& p : {ph0, ph1}) {
        for (const auto& a : {amp0, amp1}) {
            Eigen::MatrixXcd k = p * a;
            if (k.cwiseAbs().maxCoeff() > 1e-15) ch.kraus.push_back(std::move(k));
        }
    }
    return ch;
}

bool ReadoutModel::is_trivial() const {
    return std::all_of(qubits.begin(), qubits.end(),
                       [](const QubitReadout& q) { return q.p01 == 0.0 && q.p10 == 0.0; });
}

std::vector<double> readout_apply_dist(const std::vector<double>& dist, const ReadoutModel& r) {
    const std::size_t n = r.qubits.size();
    if (dist.size() != (std::size_t(1) << n)) {
        throw ContractError("distribution length " + std::to_string(dist.size()) +
                            " does not match 2^" + std::to_string(n));
    }
    double sum = 0.0;
    for (double v : dist) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ContractError("distribution sums to " + std::to_string(sum) + ", expected 1");
    }
    std::vector<double> out = dist;
    for (std::size_t q = 0; q < n; ++q) {
        const double p01 = r.qubits[q].p01;
        const double p10 = r.qubits[q].p10;
        if (p01 == 0.0 && p10 == 0.0) continue;
        const std::size_t bit = std::size_t(1) << q;
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            if (idx & bit) continue;
            const double v0 = out[idx];
            const double v1 = out[idx | bit];
            out[idx] = (1.0 - p10) * v0 + p01 * v1;
            out[idx | bit] = p10 * v0 + (1.0 - p01) * v1;
        }
    }
    return out;
}

std::map<std::string, std::uint64_t>
readout_apply_samples(const std::map<std::string, std::uint64_t>& counts, const ReadoutModel& r,
                      std::uint64_t seed) {
    Rng rng(seed);
    std::map<std::string, std::uint64_t> out;
    const std::size_t n = r.qubits.size();
    for (const auto& [bits, count] : counts) {
        if (bits.size() != n) {
            throw ContractError("bitstring length does not match readout model");
        }
        for (std::uint64_t shot = 0; shot < count; ++shot) {
            std::string flipped = bits;
            for (std::size_t q = 0; q < n; ++q) {
                // leftmost character is the highest qubit index
                char& c = flipped[n - 1 - q];
                const double p = (c == '1') ? r.qubits[q].p01 : r.qubits[q].p10;
                if (p > 0.0 && rng.next_double() < p) c = (c == '1') ? '0' : '1';
            }
            ++out[flipped];
        }
    }
    return out;
}

DeviceNoiseModel DeviceNoiseModel::zero_noise(int n) {
    DeviceNoiseModel m;
    m.name = "zero-noise";
    m.qubits.assign(static_cast<std::size_t>(n), QubitParams{1.0, 1.0, 0.0, 0.0});
    m.default_1q = GateParams{"default_1q", {}, 0.0, 0.0};
    m.default_2q = GateParams{"default_2q", {}, 0.0, 0.0};
    return m;
}

std::optional<DeviceNoiseModel::GateParams>
DeviceNoiseModel::find_gate(std::string_view gate, const std::vector<int>& qs) const {
    for (const auto& g : gates) {
        if (g.name == gate && g.qubits == qs) return g;
    }
    if (qs.size() == 1 && default_1q) return default_1q;
    if (qs.size() == 2 && default_2q) return default_2q;
    return std::nullopt;
}

ReadoutModel DeviceNoiseModel::readout() const {
    ReadoutModel r;
    r.qubits.reserve(qubits.size());
    for (const auto& q : qubits) {
        r.qubits.push_back({q.readout_p01, q.readout_p10});
    }
    return r;
}

namespace {

double require_number(const json& obj, const std::string& field, const std::string& where) {
    if (!obj.contains(field)) {
        throw CalibrationError("missing field '" + field + "' in " + where);
    }
    if (!obj[field].is_number()) {
        throw CalibrationError("field '" + field + "' in " + where + " must be a number");
    }
    return obj[field].get<double>();
}

double require_probability(const json& obj, const std::string& field, const std::string& where) {
    const double v = require_number(obj, field, where);
    if (v < 0.0 || v > 1.0) {
        throw CalibrationError("field '" + field + "' in " + where + " must be in [0,1], got " +
                               std::to_string(v));
    }
    return v;
}

DeviceNoiseModel::GateParams parse_default(const json& obj, const std::string& where) {
    DeviceNoiseModel::GateParams g;
    g.name = where;
    g.error = require_probability(obj, "error", where);
    g.duration_ns = require_number(obj, "duration_ns", where);
    if (g.duration_ns < 0.0) {
        throw CalibrationError("field 'duration_ns' in " + where + " must be non-negative");
    }
    return g;
}

} // namespace

DeviceNoiseModel load_calibration(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CalibrationError(std::string("malformed calibration document: ") + e.what());
    }
    if (!doc.is_object()) {
        throw CalibrationError("calibration document must be a JSON object");
    }

    DeviceNoiseModel m;
    m.name = doc.value("name", std::string("unnamed"));

    if (!doc.contains("qubits") || !doc["qubits"].is_array() || doc["qubits"].empty()) {
        throw CalibrationError("missing field 'qubits' (non-empty array required)");
    }
    int qi = 0;
    for (const auto& q : doc["qubits"]) {
        const std::string where = "qubits[" + std::to_string(qi) + "]";
        DeviceNoiseModel::QubitParams qp;
        qp.t1_us = require_number(q, "t1_us", where);
        qp.t2_us = require_number(q, "t2_us", where);
        if (qp.t1_us <= 0.0 || qp.t2_us <= 0.0) {
            throw CalibrationError("T1/T2 in " + where + " must be positive");
        }
        qp.readout_p01 = require_probability(q, "readout_p01", where);
        qp.readout_p10 = require_probability(q, "readout_p10", where);
        if (qp.t2_us > qp.t1_us) {
            m.warnings.push_back(where + ": t2_us " + std::to_string(qp.t2_us) +
                                 " exceeds t1_us " + std::to_string(qp.t1_us) +
                                 "; clamped to t1_us");
            qp.t2_us = qp.t1_us;
        }
        m.qubits.push_back(qp);
        ++qi;
    }

    if (doc.contains("gates")) {
        if (!doc["gates"].is_array()) {
            throw CalibrationError("field 'gates' must be an array");
        }
        int gi = 0;
        for (const auto& g : doc["gates"]) {
            const std::string where = "gates[" + std::to_string(gi) + "]";
            DeviceNoiseModel::GateParams gp;
            if (!g.contains("name") || !g["name"].is_string()) {
                throw CalibrationError("missing field 'name' in " + where);
            }
            gp.name = g["name"].get<std::string>();
            if (!g.contains("qubits") || !g["qubits"].is_array() || g["qubits"].empty() ||
                g["qubits"].size() > 2) {
                throw CalibrationError("field 'qubits' in " + where +
                                       " must be an array of 1 or 2 indices");
            }
            for (const auto& v : g["qubits"]) {
                if (!v.is_number_integer()) {
                    throw CalibrationError("qubit indices in " + where + " must be integers");
                }
                const int idx = v.get<int>();
                if (idx < 0 || idx >= m.num_qubits()) {
                    throw CalibrationError("qubit index " + std::to_string(idx) + " in " + where +
                                           " out of range");
                }
                gp.qubits.push_back(idx);
            }
            gp.error = require_probability(g, "error", where);
            gp.duration_ns = require_number(g, "duration_ns", where);
            if (gp.duration_ns < 0.0) {
                throw CalibrationError("field 'duration_ns' in " + where +
                                       " must be non-negative");
            }
            m.gates.push_back(std::move(gp));
            ++gi;
        }
    }

    if (doc.contains("default_1q")) m.default_1q = parse_default(doc["default_1q"], "default_1q");
    if (doc.contains("default_2q")) m.default_2q = parse_default(doc["default_2q"], "default_2q");
    return m;
}

DeviceNoiseModel load_calibration_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CalibrationError("cannot open calibration file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_calibration(buf.str());
}

std::vector<GateOp> NoisySchedule::project_ops() const {
    std::vector<GateOp> ops;
    for (const auto& item : items) {
        if (const auto* op = std::get_if<GateOp>(&item)) ops.push_back(*op);
    }
    return ops;
}

NoisySchedule attach_noise(const Circuit& c, const DeviceNoiseModel& m) {
    if (c.num_qubits() > m.num_qubits()) {
        throw ContractError("device model covers " + std::to_string(m.num_qubits()) +
                            " qubits, circuit needs " + std::to_string(c.num_qubits()));
    }
    NoisySchedule sched;
    sched.num_qubits = c.num_qubits();
    auto full = m.readout();
    sched.readout.qubits.assign(full.qubits.begin(),
                                full.qubits.begin() + c.num_qubits());

    for (const auto& op : c.ops()) {
        sched.items.push_back(op);
        if (!gate_is_unitary(op.kind)) continue;
        const int arity = static_cast<int>(op.qubits.size());
        if (arity > 2) {
            throw ContractError("no noise channel for " + std::string(gate_name(op.kind)) +
                                ": gates on more than 2 qubits are not calibratable");
        }
        const auto params = m.find_gate(gate_name(op.kind), op.qubits);
        if (!params) {
            throw ContractError("no calibration entry or default for gate '" +
                                std::string(gate_name(op.kind)) + "' on qubits [" +
                                std::to_string(op.qubits[0]) +
                                (arity == 2 ? "," + std::to_string(op.qubits[1]) : "") + "]");
        }
        sched.items.push_back(
            ChannelApplication{depolarizing(params->error, arity), op.qubits});
        for (int q : op.qubits) {
            const auto& qp = m.qubits[static_cast<std::size_t>(q)];
            sched.items.push_back(ChannelApplication{
                thermal_relaxation(qp.t1_us, qp.t2_us, params->duration_ns), {q}});
        }
    }
    return sched;
}

} // namespace naqs
