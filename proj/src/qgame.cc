// Copyright 2026 The qhyper Authors
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

#include "qhyper/qgame.h"

#include <algorithm>
#include <cctype>
#include <bit>
#include <cmath>

namespace qhyper {
namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Matrix2 Make2(Complex a00, Complex a01, Complex a10, Complex a11) {
  Matrix2 m;
  m.a = {a00, a01, a10, a11};
  return m;
}

std::array<Strategy, kNumStrategies> BuildStrategies() {
  const double h = kInvSqrt2;
  return {{
      {StrategyTag::kC, Make2(1.0, 0.0, 0.0, 1.0)},
      {StrategyTag::kD, Make2(0.0, 1.0, 1.0, 0.0)},
      {StrategyTag::kH, Make2(h, h, h, -h)},
      {StrategyTag::kQ, Make2(kI, 0.0, 0.0, -kI)},
      {StrategyTag::kSigma, Make2(0.0, 1.0, -1.0, 0.0)},
  }};
}

// Applies a single-qubit gate to `qubit` (0 = player A, the most significant).
void ApplyLocal(const Matrix2& u, int qubit, StateVector8& psi) {
  const int mask = 1 << (2 - qubit);
  for (int k = 0; k < 8; ++k) {
    if (k & mask) continue;
    const Complex lo = psi.amp[k];
    const Complex hi = psi.amp[k | mask];
    psi.amp[k] = u(0, 0) * lo + u(0, 1) * hi;
    psi.amp[k | mask] = u(1, 0) * lo + u(1, 1) * hi;
  }
}

}  // namespace

Matrix2 Matrix2::Identity() { return Make2(1.0, 0.0, 0.0, 1.0); }

Matrix2 Matrix2::Adjoint() const {
  return Make2(std::conj(a[0]), std::conj(a[2]), std::conj(a[1]),
               std::conj(a[3]));
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  Matrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
  return r;
}

Matrix8 Matrix8::Identity() {
  Matrix8 m;
  for (int i = 0; i < 8; ++i) m(i, i) = 1.0;
  return m;
}

Matrix8 Matrix8::Adjoint() const {
  Matrix8 r;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

Matrix8 operator*(const Matrix8& x, const Matrix8& y) {
  Matrix8 r;
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) {
      const Complex xik = x(i, k);
      if (xik == Complex{}) continue;
      for (int j = 0; j < 8; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

StateVector8 StateVector8::Basis(int label) {
  StateVector8 v;
  v.amp[label] = 1.0;
  return v;
}

double StateVector8::NormSquared() const {
  double s = 0.0;
  for (const Complex& c : amp) s += std::norm(c);
  return s;
}

std::array<double, 8> StateVector8::Probabilities() const {
  std::array<double, 8> p{};
  for (int k = 0; k < 8; ++k) p[k] = std::norm(amp[k]);
  return p;
}

StateVector8 operator*(const Matrix8& m, const StateVector8& v) {
  StateVector8 r;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) r.amp[i] += m(i, j) * v.amp[j];
  return r;
}

double UnitarityError(const Matrix2& u) {
  const Matrix2 p = u * u.Adjoint();
  const Matrix2 id = Matrix2::Identity();
  double err = 0.0;
  for (int k = 0; k < 4; ++k) err = std::max(err, std::abs(p.a[k] - id.a[k]));
  return err;
}

double UnitarityError(const Matrix8& u) {
  const Matrix8 p = u * u.Adjoint();
  const Matrix8 id = Matrix8::Identity();
  double err = 0.0;
  for (int k = 0; k < 64; ++k) err = std::max(err, std::abs(p.a[k] - id.a[k]));
  return err;
}

const Strategy& GetStrategy(StrategyTag tag) {
  static const std::array<Strategy, kNumStrategies> strategies =
      BuildStrategies();
  return strategies[Index(tag)];
}

std::string_view StrategyName(StrategyTag tag) {
  switch (tag) {
    case StrategyTag::kC: return "C";
    case StrategyTag::kD: return "D";
    case StrategyTag::kH: return "H";
    case StrategyTag::kQ: return "Q";
    case StrategyTag::kSigma: return "Sigma";
  }
  return "?";
}

std::optional<StrategyTag> ParseStrategy(std::string_view name) {
  auto equals_ci = [](std::string_view x, std::string_view y) {
    return x.size() == y.size() &&
           std::equal(x.begin(), x.end(), y.begin(), [](char p, char q) {
             return std::tolower(static_cast<unsigned char>(p)) ==
                    std::tolower(static_cast<unsigned char>(q));
           });
  };
  for (StrategyTag tag : kAllStrategies) {
    if (equals_ci(name, StrategyName(tag))) return tag;
  }
  return std::nullopt;
}

double PayoffParams::Outcome(bool defects, int other_defectors) const {
  if (defects) {
    switch (other_defectors) {
      case 0: return temptation;
      case 1: return kDefectorBesideOneDefector;
      default: return kAllDefect;
    }
  }
  switch (other_defectors) {
    case 0: return kAllCooperate;
    case 1: return kCooperatorBesideOneDefector;
    default: return kLoneCooperator;
  }
}

double PayoffParams::MaxPayoff() const {
  return std::max(kAllCooperate, temptation);
}

Matrix8 Kron3(const Matrix2& a, const Matrix2& b, const Matrix2& c) {
  Matrix8 r;
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) {
      r(row, col) = a(row >> 2, col >> 2) * b((row >> 1) & 1, (col >> 1) & 1) *
                    c(row & 1, col & 1);
    }
  }
  return r;
}

const Matrix8& Entangler() {
  static const Matrix8 j = [] {
    const Matrix2 x = GetStrategy(StrategyTag::kD).matrix;
    const Matrix8 xxx = Kron3(x, x, x);
    Matrix8 m;
    for (int k = 0; k < 64; ++k) {
      m.a[k] = kInvSqrt2 * ((k % 9 == 0 ? 1.0 : 0.0) + kI * xxx.a[k]);
    }
    return m;
  }();
  return j;
}

StateVector8 FinalState(const Strategy& a, const Strategy& b,
                        const Strategy& c) {
  // J|000> = (|000> + i|111>) / sqrt(2).
  StateVector8 psi;
  psi.amp[0] = kInvSqrt2;
  psi.amp[7] = kI * kInvSqrt2;
  ApplyLocal(a.matrix, 0, psi);
  ApplyLocal(b.matrix, 1, psi);
  ApplyLocal(c.matrix, 2, psi);
  // J^dagger = (I - i XXX) / sqrt(2); XXX maps label k to 7 - k.
  StateVector8 out;
  for (int k = 0; k < 8; ++k) {
    out.amp[k] = kInvSqrt2 * (psi.amp[k] - kI * psi.amp[7 - k]);
  }
  return out;
}

PayoffTriple Payoffs(const Strategy& a, const Strategy& b, const Strategy& c,
                     const PayoffParams& params) {
  const std::array<double, 8> prob = FinalState(a, b, c).Probabilities();
  PayoffTriple result{};
  for (int label = 0; label < 8; ++label) {
    const int total_defectors = std::popcount(static_cast<unsigned>(label));
    for (int player = 0; player < 3; ++player) {
      const bool defects = (label >> (2 - player)) & 1;
      result[player] +=
          prob[label] * params.Outcome(defects, total_defectors - defects);
    }
  }
  return result;
}

PayoffTriple Payoffs(const Profile& profile, const PayoffParams& params) {
  return Payoffs(GetStrategy(profile[0]), GetStrategy(profile[1]),
                 GetStrategy(profile[2]), params);
}

PayoffTable::PayoffTable(const PayoffParams& params) : params_(params) {
  for (StrategyTag a : kAllStrategies)
    for (StrategyTag b : kAllStrategies)
      for (StrategyTag c : kAllStrategies)
        entries_[Slot(a, b, c)] = Payoffs({a, b, c}, params);
}

PayoffTable PayoffTable::FromEntries(const PayoffParams& params,
                                     const Entries& entries) {
  return PayoffTable(params, entries);
}

std::optional<Deviation> BestDeviation(const Profile& profile,
                                       const PayoffTable& table,
                                       std::span<const StrategyTag> allowed,
                                       double tol) {
  const PayoffTriple& base = table.Lookup(profile);
  std::optional<Deviation> best;
  for (int player = 0; player < 3; ++player) {
    for (StrategyTag alt : allowed) {
      if (alt == profile[player]) continue;
      Profile deviated = profile;
      deviated[player] = alt;
      const double gain = table.Lookup(deviated)[player] - base[player];
      if (gain > tol && (!best || gain > best->gain)) {
        best = Deviation{player, alt, gain};
      }
    }
  }
  return best;
}

bool IsNash(const Profile& profile, const PayoffTable& table,
            std::span<const StrategyTag> allowed, double tol) {
  return !BestDeviation(profile, table, allowed, tol).has_value();
}

bool IsParetoOptimal(const Profile& profile, const PayoffTable& table,
                     std::span<const StrategyTag> allowed, double tol) {
  const PayoffTriple& base = table.Lookup(profile);
  for (StrategyTag a : allowed)
    for (StrategyTag b : allowed)
      for (StrategyTag c : allowed) {
        const PayoffTriple& other = table.Lookup(a, b, c);
        bool no_worse = true;
        bool strictly_better = false;
        for (int p = 0; p < 3; ++p) {
          if (other[p] < base[p] - tol) no_worse = false;
          if (other[p] > base[p] + tol) strictly_better = true;
        }
        if (no_worse && strictly_better) return false;
      }
  return true;
}

}  // namespace qhyper
