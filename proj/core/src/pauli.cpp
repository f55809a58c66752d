// Copyright 2026 The esvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "esvqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "esvqe/error.hpp"

namespace esvqe {

namespace {

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int popcount(std::uint64_t v) { return std::popcount(v); }

void check_qubits(std::size_t n_qubits) {
    if (n_qubits > kMaxQubits) {
        throw SizeMismatchError("Pauli strings support at most 63 qubits");
    }
}

std::uint64_t register_mask(std::size_t n_qubits) {
    return n_qubits >= 64 ? ~0ULL : ((1ULL << n_qubits) - 1);
}

} // namespace

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
                         int phase)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask), phase_(((phase % 4) + 4) % 4) {
    check_qubits(n_qubits);
    if (((x_mask | z_mask) & ~register_mask(n_qubits)) != 0) {
        throw IndexError("Pauli string acts outside its register");
    }
}

PauliString PauliString::from_label(std::string_view label) {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (std::size_t k = 0; k < label.size(); ++k) {
        switch (label[k]) {
        case 'I': break;
        case 'X': x |= 1ULL << k; break;
        case 'Y': x |= 1ULL << k; z |= 1ULL << k; break;
        case 'Z': z |= 1ULL << k; break;
        default: throw FormatError(std::string("invalid Pauli label character '") + label[k] + "'");
        }
    }
    return {label.size(), x, z};
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit, char pauli) {
    if (qubit >= n_qubits) {
        throw IndexError("qubit index out of range");
    }
    const std::uint64_t bit = 1ULL << qubit;
    switch (pauli) {
    case 'I': return {n_qubits, 0, 0};
    case 'X': return {n_qubits, bit, 0};
    case 'Y': return {n_qubits, bit, bit};
    case 'Z': return {n_qubits, 0, bit};
    default: throw FormatError("invalid Pauli character");
    }
}

Complex PauliString::phase_factor() const { return kPhases[phase_]; }

char PauliString::op_at(std::size_t qubit) const {
    const bool xb = (x_ >> qubit) & 1ULL;
    const bool zb = (z_ >> qubit) & 1ULL;
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

int PauliString::weight() const { return popcount(x_ | z_); }

std::string PauliString::label() const {
    std::string out(n_qubits_, 'I');
    for (std::size_t k = 0; k < n_qubits_; ++k) {
        out[k] = op_at(k);
    }
    return out;
}

// Write P(x,z) = i^{|x&z|} X^x Z^z. Moving Z^{z1} past X^{x2} costs (-1)^{|z1&x2|}.
PauliString operator*(const PauliString &a, const PauliString &b) {
    if (a.n_qubits_ != b.n_qubits_) {
        throw SizeMismatchError("Pauli string qubit counts differ");
    }
    const std::uint64_t x = a.x_ ^ b.x_;
    const std::uint64_t z = a.z_ ^ b.z_;
    const int exponent = a.phase_ + b.phase_ + popcount(a.x_ & a.z_) + popcount(b.x_ & b.z_) +
                         2 * popcount(a.z_ & b.x_) - popcount(x & z);
    return {a.n_qubits_, x, z, exponent};
}

PauliSum PauliSum::identity(std::size_t n_qubits, Complex coefficient) {
    PauliSum s(n_qubits);
    s.add_term(0, 0, coefficient);
    return s;
}

PauliSum PauliSum::from_string(const PauliString &p, Complex coefficient) {
    PauliSum s(p.n_qubits());
    s.add(p, coefficient);
    return s;
}

Complex PauliSum::coefficient(std::uint64_t x_mask, std::uint64_t z_mask) const {
    const auto it = terms_.find({x_mask, z_mask});
    return it == terms_.end() ? Complex{} : it->second;
}

Complex PauliSum::coefficient(const PauliString &p) const {
    return coefficient(p.x_mask(), p.z_mask()) / p.phase_factor();
}

void PauliSum::add_term(std::uint64_t x_mask, std::uint64_t z_mask, Complex coefficient) {
    check_qubits(n_qubits_);
    if (((x_mask | z_mask) & ~register_mask(n_qubits_)) != 0) {
        throw IndexError("Pauli term acts outside its register");
    }
    terms_[{x_mask, z_mask}] += coefficient;
}

void PauliSum::add(const PauliString &p, Complex coefficient) {
    if (p.n_qubits() != n_qubits_) {
        throw SizeMismatchError("Pauli string and sum qubit counts differ");
    }
    add_term(p.x_mask(), p.z_mask(), coefficient * p.phase_factor());
}

PauliSum &PauliSum::operator+=(const PauliSum &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw SizeMismatchError("Pauli sum qubit counts differ");
    }
    for (const auto &[key, c] : other.terms_) {
        terms_[key] += c;
    }
    return *this;
}

PauliSum &PauliSum::operator-=(const PauliSum &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw SizeMismatchError("Pauli sum qubit counts differ");
    }
    for (const auto &[key, c] : other.terms_) {
        terms_[key] -= c;
    }
    return *this;
}

PauliSum &PauliSum::operator*=(Complex scalar) {
    for (auto &[key, c] : terms_) {
        c *= scalar;
    }
    return *this;
}

PauliSum operator*(const PauliSum &a, const PauliSum &b) {
    if (a.n_qubits_ != b.n_qubits_) {
        throw SizeMismatchError("Pauli sum qubit counts differ");
    }
    PauliSum out(a.n_qubits_);
    for (const auto &[ka, ca] : a.terms_) {
        const PauliString pa(a.n_qubits_, ka.first, ka.second);
        for (const auto &[kb, cb] : b.terms_) {
            const PauliString pb(a.n_qubits_, kb.first, kb.second);
            out.add(pa * pb, ca * cb);
        }
    }
    return out;
}

PauliSum PauliSum::adjoint() const {
    // Every phase-free string is Hermitian, so only the coefficients conjugate.
    PauliSum out(n_qubits_);
    for (const auto &[key, c] : terms_) {
        out.terms_[key] = std::conj(c);
    }
    return out;
}

void PauliSum::simplify(double tol) {
    std::erase_if(terms_, [tol](const auto &item) { return std::abs(item.second) < tol; });
}

PauliSum PauliSum::simplified(double tol) const {
    PauliSum out = *this;
    out.simplify(tol);
    return out;
}

bool PauliSum::is_hermitian(double tol) const {
    for (const auto &[key, c] : terms_) {
        if (std::abs(c.imag()) > tol) {
            return false;
        }
    }
    return true;
}

double PauliSum::max_abs_difference(const PauliSum &other) const {
    double worst = 0.0;
    for (const auto &[key, c] : terms_) {
        worst = std::max(worst, std::abs(c - other.coefficient(key.first, key.second)));
    }
    for (const auto &[key, c] : other.terms_) {
        if (!terms_.contains(key)) {
            worst = std::max(worst, std::abs(c));
        }
    }
    return worst;
}

std::string PauliSum::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto &[key, c] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        char buf[64];
        if (std::abs(c.imag()) < 1e-15) {
            std::snprintf(buf, sizeof buf, "%.6g", c.real());
        } else {
            std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", c.real(), c.imag());
        }
        os << buf << " ·";
        const PauliString p(n_qubits_, key.first, key.second);
        bool any = false;
        for (std::size_t k = 0; k < n_qubits_; ++k) {
            const char op = p.op_at(k);
            if (op != 'I') {
                os << ' ' << op << k;
                any = true;
            }
        }
        if (!any) {
            os << " I";
        }
    }
    return first ? std::string("0") : os.str();
}

PauliSum qubit_ladder(LadderOp op, std::size_t n_qubits) {
    if (op.mode >= n_qubits) {
        throw IndexError("ladder operator mode " + std::to_string(op.mode) + " out of range");
    }
    PauliSum s(n_qubits);
    const double sign = op.type == Ladder::Annihilate ? 1.0 : -1.0;
    s.add(PauliString::single(n_qubits, op.mode, 'X'), 0.5);
    s.add(PauliString::single(n_qubits, op.mode, 'Y'), Complex(0.0, 0.5 * sign));
    return s;
}

PauliSum jordan_wigner(std::span<const LadderOp> ops, std::size_t n_qubits) {
    PauliSum product = PauliSum::identity(n_qubits);
    for (const LadderOp &op : ops) {
        PauliSum factor = qubit_ladder(op, n_qubits);
        const std::uint64_t parity = (1ULL << op.mode) - 1;
        factor = PauliSum::from_string(PauliString(n_qubits, 0, parity)) * factor;
        product = product * factor;
        product.simplify();
    }
    product.simplify();
    return product;
}

Eigen::MatrixXcd matrix_of(const PauliSum &sum) {
    const std::size_t n = sum.n_qubits();
    if (n > kMaxDenseQubits) {
        throw SizeMismatchError("matrix_of refuses registers above 14 qubits");
    }
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto &[key, c] : sum.terms()) {
        const auto [x, z] = key;
        const Complex base = c * kPhases[popcount(x & z) % 4];
        for (std::size_t i = 0; i < dim; ++i) {
            const double sign = (popcount(z & i) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(i ^ x), static_cast<Eigen::Index>(i)) += sign * base;
        }
    }
    return m;
}

} // namespace esvqe
