// Copyright 2026 The topophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Pure two-qudit path states. Entry (m, n) of the amplitude matrix is the
// amplitude for the signal photon in slit m and the idler photon in slit n
// (0-based here).

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "topophase/error.hpp"

namespace topophase {

using Complex = std::complex<double>;
using AmplitudeMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;

class BipartiteQuditState {
public:
    /// Validates dim >= 2, square shape and unit norm. Never renormalizes.
    explicit BipartiteQuditState(AmplitudeMatrix amplitudes)
        : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.rows() != amplitudes_.cols()) {
            throw Error(ErrorKind::DimensionMismatch, "amplitude matrix must be square");
        }
        if (amplitudes_.rows() < 2) {
            throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2");
        }
        const double norm = amplitudes_.squaredNorm();
        if (std::abs(norm - 1.0) > kNormTolerance) {
            throw Error(ErrorKind::Normalization,
                        "state is not normalized (sum |a|^2 = " + std::to_string(norm) + ")");
        }
    }

    int dim() const { return static_cast<int>(amplitudes_.rows()); }
    const AmplitudeMatrix& amplitudes() const { return amplitudes_; }
    Complex operator()(int signal, int idler) const { return amplitudes_(signal, idler); }

    /// Signal-photon reduced density matrix, Tr_idler |ψ⟩⟨ψ| = α α†.
    Eigen::MatrixXcd signal_reduced() const { return amplitudes_ * amplitudes_.adjoint(); }

private:
    AmplitudeMatrix amplitudes_;
};

/// Diagonal single-qudit phase operator Σ_k e^{iξ_k}|k⟩⟨k|.
class DiagonalPhaseOp {
public:
    DiagonalPhaseOp(int dim, std::vector<double> phases) : dim_(dim), phases_(std::move(phases)) {
        if (static_cast<int>(phases_.size()) != dim_) {
            throw Error(ErrorKind::DimensionMismatch, "phase list length must equal the dimension");
        }
    }
    explicit DiagonalPhaseOp(std::vector<double> phases)
        : dim_(static_cast<int>(phases.size())), phases_(std::move(phases)) {}

    int dim() const { return dim_; }
    std::span<const double> phases() const { return phases_; }

private:
    int dim_;
    std::vector<double> phases_;
};

/// α_{m,d−m+1} = 1/√d (1-based), the state prepared by focusing the pump on
/// the slit plane.
inline BipartiteQuditState make_antisymmetric_mes(int d) {
    if (d < 2) throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2");
    AmplitudeMatrix a = AmplitudeMatrix::Zero(d, d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int m = 0; m < d; ++m) a(m, d - 1 - m) = amp;
    return BipartiteQuditState(std::move(a));
}

inline double max_concurrence(int d) {
    if (d < 2) throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2");
    return std::sqrt(2.0 * (d - 1) / static_cast<double>(d));
}

/// Pure-state I-concurrence √(2(1 − Tr ρ_A²)).
inline double i_concurrence(const BipartiteQuditState& s) {
    const Eigen::MatrixXcd rho = s.signal_reduced();
    // Tr ρ² for Hermitian ρ is the squared Frobenius norm
    const double purity = rho.squaredNorm();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

inline BipartiteQuditState apply_signal_phases(const BipartiteQuditState& s, const DiagonalPhaseOp& u) {
    if (u.dim() != s.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "phase operator and state dimensions differ");
    }
    AmplitudeMatrix a = s.amplitudes();
    const auto xi = u.phases();
    for (int m = 0; m < s.dim(); ++m) a.row(m) *= std::polar(1.0, xi[m]);
    return BipartiteQuditState(std::move(a));
}

inline Complex inner_product(const BipartiteQuditState& a, const BipartiteQuditState& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "state dimensions differ");
    return (a.amplitudes().conjugate().cwiseProduct(b.amplitudes())).sum();
}

// JSON form: {"dim": d, "real": [[...]], "imag": [[...]]}, row index = signal slit.

inline nlohmann::json to_json(const BipartiteQuditState& s) {
    const int d = s.dim();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int m = 0; m < d; ++m) {
        nlohmann::json rr = nlohmann::json::array();
        nlohmann::json ir = nlohmann::json::array();
        for (int n = 0; n < d; ++n) {
            rr.push_back(s(m, n).real());
            ir.push_back(s(m, n).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    return {{"dim", d}, {"real", std::move(re)}, {"imag", std::move(im)}};
}

inline BipartiteQuditState state_from_json(const nlohmann::json& j) {
    try {
        const int d = j.at("dim").get<int>();
        if (d < 2) throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2");
        const auto& re = j.at("real");
        const auto& im = j.at("imag");
        if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != d ||
            static_cast<int>(im.size()) != d) {
            throw Error(ErrorKind::DimensionMismatch, "state matrices must have dim rows");
        }
        AmplitudeMatrix a(d, d);
        for (int m = 0; m < d; ++m) {
            if (static_cast<int>(re[m].size()) != d || static_cast<int>(im[m].size()) != d) {
                throw Error(ErrorKind::DimensionMismatch, "state matrices must have dim columns");
            }
            for (int n = 0; n < d; ++n) a(m, n) = Complex(re[m][n].get<double>(), im[m][n].get<double>());
        }
        return BipartiteQuditState(std::move(a));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("malformed state JSON: ") + e.what());
    }
}

}  // namespace topophase
