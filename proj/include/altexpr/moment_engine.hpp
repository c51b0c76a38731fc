// Copyright 2026 The altexpr Authors
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

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "altexpr/delta_network.hpp"
#include "altexpr/rational.hpp"

namespace altexpr {

// Exact second frame potentials of layered ansatzes whose blocks form
// unitary 2-designs.
//
// For ALT with two or three layers the 2-design average over the first
// (and third) layer leaves, per m-qubit block j, a choice k_j of Weingarten
// term for every integrated block that sits on it: (k_a, k_b) for two
// layers, (k_a, k_b, k_c) for three. The remaining even-layer blocks each
// straddle the lower half of block j and the upper half of block j+1, so
// the frame potential is a chain over these choices:
//
//     F2 = a^T B^{n/m - 1} a,
//
// a indexed by 4^ell choice tuples. Every entry is a sum of delta
// networks over half-block indices of dimension d = 2^{m/2}.

/// Number of chain states, 4^ell.
std::size_t chain_size(int ell);

/// Weingarten term indices (each in 1..4) of chain state `index`, most
/// significant first: index = 16(k_a - 1) + 4(k_b - 1) + (k_c - 1) for ell = 3.
std::vector<int> chain_digits(int ell, std::size_t index);

/// Delta network for one half block: the integrated-block terms `ks` and the
/// even-layer block terms r (first-copy unitary) and s (second-copy
/// unitary). Weight 1; node count 12 (ell = 2) or 16 (ell = 3).
DeltaNetwork half_block_network(int ell, std::span<const int> ks, int r, int s);

/// free_components of half_block_network for every (state, r, s); these do
/// not depend on m. Entry [x][4(r-1) + (s-1)].
const std::vector<std::array<int, 16>>& half_block_exponents(int ell);

/// Sign-safe factorization of the chain: each block's full lambda product is
/// carried by the factor to its left, so every entry is an exact rational
/// and F2 = left^T transfer^{n/m-1} right.
struct MomentChain {
    int ell = 0;
    int m = 0;
    std::vector<Rational> left;
    RationalMatrix transfer;
    std::vector<Rational> right;

    /// Value for n/m = `blocks` (>= 1).
    Rational evaluate(int blocks) const;
};

/// Builds (or loads from the on-disk cache) the chain for (ell, m). The cache
/// directory is taken from $ALTEXPR_CACHE_DIR when set.
MomentChain build_chain(int ell, int m);
MomentChain compute_chain(int ell, int m);

std::optional<std::filesystem::path> chain_cache_directory();
nlohmann::json chain_to_json(const MomentChain& chain);
MomentChain chain_from_json(const nlohmann::json& j);

using SurdMatrix = std::vector<std::vector<SurdValue>>;

/// The symmetric vector a(ell, m), entries sqrt(prod lambda) * (integral),
/// with principal square roots. Entries are imaginary when the lambda product
/// is negative.
std::vector<SurdValue> build_a(int ell, int m);

/// The symmetric matrix B(ell, m).
SurdMatrix build_b(int ell, int m);

Rational haar_second_frame_potential_exact(int n);
Rational haar_first_frame_potential_exact(int n);

/// Exact F2 for ALT(ell, m, n), ell in {2, 3}.
Rational alt_second_frame_potential_exact(int ell, int m, int n);
double alt_second_frame_potential(int ell, int m, int n);

/// (1 / ((2^m + 1) 2^{m-1}))^{n/m}.
Rational ten_second_frame_potential_exact(int m, int n);
double ten_second_frame_potential(int m, int n);

struct BoundValue {
    double ratio;     // in units of the Haar value
    double absolute;  // ratio * F2_Haar
};

/// Upper bound on F2(ALT) for ell in {2, 3}.
BoundValue theorem4_bound(int ell, int m, int n);

struct CorollaryBound {
    bool applicable;
    double condition;  // c / (a n^{a-1} log2 n), c = 143 or 2288
    double ratio;      // valid only when applicable
    double absolute;
};

/// Large-n bound for m = 2 a log2 n. `applicable` is false when the
/// condition value is >= 1.
CorollaryBound corollary1_bound(double a_exponent, int n, int ell);

/// Leading-order structure of a and B: 2^m a = v0 + (1.2 / 2^{m/2}) v1 and
/// 2^{2m} B = D + (1.3 / 2^{m/2 - 2 ell}) X.
struct ExpansionReport {
    int ell = 0;
    int m = 0;
    std::vector<int> v0_support;                   // 1-based
    std::vector<std::pair<int, int>> d_support;    // 1-based
    bool v1_bounded = false;                       // all |v1_i| < 1, exact
    double max_abs_v1 = 0.0;
    bool x_bounded = false;                        // all |X_ij| < 1/4^ell, exact
    double max_abs_x = 0.0;
    double x_limit = 0.0;
};

/// Checks the expansion at (ell, m) with v0 = e_1 + e_{all-2s} and D the
/// matching diagonal. Supports are determined independently as the entries
/// of 2^m a and 2^{2m} B that stay O(1) at m = 64.
ExpansionReport check_expansion(int ell, int m);

}  // namespace altexpr
