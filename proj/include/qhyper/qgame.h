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

// Quantized three-player Prisoner's Dilemma: strategy unitaries, the
// entangle/play/disentangle circuit on three qubits, the payoff cache used
// by the evolutionary loop, and equilibrium predicates over finite strategy
// sets.
//
// Basis states are labelled |ijk> with player A on the most significant bit;
// bit value 1 means the player's classical move is "defect".

#ifndef QHYPER_QGAME_H_
#define QHYPER_QGAME_H_

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace qhyper {

using Complex = std::complex<double>;

// Dense 2x2 complex matrix, row-major.
struct Matrix2 {
  std::array<Complex, 4> a{};

  Complex operator()(int row, int col) const { return a[2 * row + col]; }
  Complex& operator()(int row, int col) { return a[2 * row + col]; }

  static Matrix2 Identity();
  Matrix2 Adjoint() const;
  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y);
};

// Dense 8x8 complex matrix, row-major.
struct Matrix8 {
  std::array<Complex, 64> a{};

  Complex operator()(int row, int col) const { return a[8 * row + col]; }
  Complex& operator()(int row, int col) { return a[8 * row + col]; }

  static Matrix8 Identity();
  Matrix8 Adjoint() const;
  friend Matrix8 operator*(const Matrix8& x, const Matrix8& y);
};

// Amplitudes indexed by basis label (0b000 .. 0b111).
struct StateVector8 {
  std::array<Complex, 8> amp{};

  static StateVector8 Basis(int label);
  double NormSquared() const;
  // |<ijk|psi>|^2 for every basis label.
  std::array<double, 8> Probabilities() const;
};

StateVector8 operator*(const Matrix8& m, const StateVector8& v);

// Largest entrywise deviation of U * U^dagger from the identity.
double UnitarityError(const Matrix2& u);
double UnitarityError(const Matrix8& u);

enum class StrategyTag : std::uint8_t { kC = 0, kD = 1, kH = 2, kQ = 3, kSigma = 4 };

inline constexpr int kNumStrategies = 5;
inline constexpr std::array<StrategyTag, kNumStrategies> kAllStrategies = {
    StrategyTag::kC, StrategyTag::kD, StrategyTag::kH, StrategyTag::kQ,
    StrategyTag::kSigma};
inline constexpr std::array<StrategyTag, 2> kClassicalStrategies = {
    StrategyTag::kC, StrategyTag::kD};

constexpr int Index(StrategyTag s) { return static_cast<int>(s); }

struct Strategy {
  StrategyTag tag;
  Matrix2 matrix;
};

// The five local unitaries: C = I, D = sigma_x, H = Hadamard,
// Q = diag(i, -i), Sigma = i sigma_y.
const Strategy& GetStrategy(StrategyTag tag);

std::string_view StrategyName(StrategyTag tag);
// Accepts "C", "D", "H", "Q", "Sigma" (case-insensitive).
std::optional<StrategyTag> ParseStrategy(std::string_view name);

using Profile = std::array<StrategyTag, 3>;
using PayoffTriple = std::array<double, 3>;

// Classical outcome payoffs, parameterized by the temptation T paid to a
// lone defector facing two cooperators.
struct PayoffParams {
  double temptation = 9.0;

  static constexpr double kAllCooperate = 6.0;
  static constexpr double kCooperatorBesideOneDefector = 3.0;
  static constexpr double kDefectorBesideOneDefector = 5.0;
  static constexpr double kLoneCooperator = 0.0;
  static constexpr double kAllDefect = 1.0;

  // Payoff of a player whose own move is `defects`, while `other_defectors`
  // (0..2) of the remaining two players defect.
  double Outcome(bool defects, int other_defectors) const;

  // Maximum over all outcome payoffs: max(6, T).
  double MaxPayoff() const;
  bool IsPrisonersDilemma() const { return temptation > kAllCooperate; }
};

Matrix8 Kron3(const Matrix2& a, const Matrix2& b, const Matrix2& c);

// J = (I (x) I (x) I + i sigma_x (x) sigma_x (x) sigma_x) / sqrt(2).
const Matrix8& Entangler();

// J^dagger (U_A (x) U_B (x) U_C) J |000>.
StateVector8 FinalState(const Strategy& a, const Strategy& b, const Strategy& c);

PayoffTriple Payoffs(const Strategy& a, const Strategy& b, const Strategy& c,
                     const PayoffParams& params);
PayoffTriple Payoffs(const Profile& profile, const PayoffParams& params);

// Payoff triples for all 125 ordered strategy profiles at one temptation.
class PayoffTable {
 public:
  using Entries = std::array<PayoffTriple, kNumStrategies * kNumStrategies *
                                               kNumStrategies>;

  explicit PayoffTable(const PayoffParams& params);

  // Builds a table with caller-supplied entries. Used to install synthetic
  // payoff structures in tests; MaxPayoff() still reports params.
  static PayoffTable FromEntries(const PayoffParams& params,
                                 const Entries& entries);

  const PayoffTriple& Lookup(StrategyTag a, StrategyTag b, StrategyTag c) const {
    return entries_[Slot(a, b, c)];
  }
  const PayoffTriple& Lookup(const Profile& p) const {
    return Lookup(p[0], p[1], p[2]);
  }

  // Payoff of a player using `self` against `other1` and `other2`.
  double PlayerPayoff(StrategyTag self, StrategyTag other1,
                      StrategyTag other2) const {
    return entries_[Slot(self, other1, other2)][0];
  }

  const PayoffParams& params() const { return params_; }
  double MaxPayoff() const { return params_.MaxPayoff(); }
  const Entries& entries() const { return entries_; }

 private:
  PayoffTable(const PayoffParams& params, const Entries& entries)
      : params_(params), entries_(entries) {}

  static constexpr int Slot(StrategyTag a, StrategyTag b, StrategyTag c) {
    return (Index(a) * kNumStrategies + Index(b)) * kNumStrategies + Index(c);
  }

  PayoffParams params_;
  Entries entries_{};
};

inline constexpr double kEquilibriumTolerance = 1e-9;

struct Deviation {
  int player;  // 0, 1, 2
  StrategyTag to;
  double gain;
};

// The most profitable unilateral switch within `allowed`, if any gains more
// than `tol`. Ties go to the lowest player, then the lowest strategy.
std::optional<Deviation> BestDeviation(
    const Profile& profile, const PayoffTable& table,
    std::span<const StrategyTag> allowed = kAllStrategies,
    double tol = kEquilibriumTolerance);

// True iff no player gains more than `tol` by a unilateral switch to another
// strategy in `allowed`.
bool IsNash(const Profile& profile, const PayoffTable& table,
            std::span<const StrategyTag> allowed = kAllStrategies,
            double tol = kEquilibriumTolerance);

// True iff no profile over `allowed` weakly improves every player's payoff
// with at least one improvement exceeding `tol`.
bool IsParetoOptimal(const Profile& profile, const PayoffTable& table,
                     std::span<const StrategyTag> allowed = kAllStrategies,
                     double tol = kEquilibriumTolerance);

}  // namespace qhyper

#endif  // QHYPER_QGAME_H_
