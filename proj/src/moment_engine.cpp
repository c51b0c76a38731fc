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

#include "altexpr/moment_engine.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace altexpr {

namespace {

void check_ell(int ell) {
    if (ell != 2 && ell != 3) throw std::invalid_argument("moment engine: ell must be 2 or 3");
}

void check_width(int m) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("moment engine: m must be even and >= 2");
}

void check_width_and_size(int m, int n) {
    check_width(m);
    if (n < m || n % m != 0) throw std::invalid_argument("moment engine: n must be a positive multiple of m");
}

// d^e with d = 2^{m/2}.
Rational half_dim_pow(int m, int e) { return pow2(static_cast<long>(e) * (m / 2)); }

Rational lambda_product(int ell, std::size_t x, const DesignCoefficients& lam) {
    Rational p = 1;
    for (int k : chain_digits(ell, x)) p *= lam[k];
    return p;
}

// c_x: the edge half block, whose even-layer unitaries act on m/2 qubits.
std::vector<Rational> edge_vector(int ell, int m) {
    const auto& e = half_block_exponents(ell);
    const DesignCoefficients half(m / 2);
    std::vector<Rational> c(e.size());
    for (std::size_t x = 0; x < e.size(); ++x) {
        for (int r = 1; r <= 4; ++r) {
            for (int s = 1; s <= 4; ++s) {
                c[x] += half[r] * half[s] * half_dim_pow(m, e[x][static_cast<std::size_t>(4 * (r - 1) + (s - 1))]);
            }
        }
    }
    return c;
}

// K_xy: one interior block. Its deltas tie the lower half of block x to the
// upper half of block y and the two halves share no index.
RationalMatrix interior_matrix(int ell, int m) {
    const auto& e = half_block_exponents(ell);
    const DesignCoefficients full(m);
    const std::size_t size = e.size();
    RationalMatrix k(size, size);
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = x; y < size; ++y) {
            Rational sum = 0;
            for (int r = 1; r <= 4; ++r) {
                for (int s = 1; s <= 4; ++s) {
                    const auto rs = static_cast<std::size_t>(4 * (r - 1) + (s - 1));
                    sum += full[r] * full[s] * half_dim_pow(m, e[x][rs] + e[y][rs]);
                }
            }
            k(x, y) = sum;
            k(y, x) = sum;
        }
    }
    return k;
}

std::mutex& cache_mutex() {
    static std::mutex mu;
    return mu;
}

std::map<std::pair<int, int>, MomentChain>& memory_cache() {
    static std::map<std::pair<int, int>, MomentChain> cache;
    return cache;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, int ell, int m) {
    return dir / ("chain_l" + std::to_string(ell) + "_m" + std::to_string(m) + ".json");
}

}  // namespace

std::size_t chain_size(int ell) {
    check_ell(ell);
    return std::size_t{1} << (2 * ell);
}

std::vector<int> chain_digits(int ell, std::size_t index) {
    if (index >= chain_size(ell)) throw std::out_of_range("chain_digits: index out of range");
    std::vector<int> digits(static_cast<std::size_t>(ell));
    for (int p = ell - 1; p >= 0; --p) {
        digits[static_cast<std::size_t>(p)] = static_cast<int>(index % 4) + 1;
        index /= 4;
    }
    return digits;
}

DeltaNetwork half_block_network(int ell, std::span<const int> ks, int r, int s) {
    check_ell(ell);
    if (ks.size() != static_cast<std::size_t>(ell)) throw std::invalid_argument("half_block_network: need ell term indices");
    constexpr NodeId C = DeltaNetwork::kConstant;
    DeltaNetwork net;
    // Primed names belong to the second replica.
    const NodeId u = net.add_node(), up = net.add_node(), i = net.add_node(), ip = net.add_node();
    const NodeId p = net.add_node(), pp = net.add_node(), q = net.add_node(), qp = net.add_node();
    const NodeId j = net.add_node(), jp = net.add_node(), l = net.add_node(), lp = net.add_node();
    const std::array<NodeId, 8> top{u, C, up, C, i, C, ip, C};
    const std::array<NodeId, 8> bottom{p, C, pp, C, q, C, qp, C};
    if (ell == 2) {
        net.apply_delta(ks[0], top);
        net.apply_delta(ks[1], bottom);
        net.apply_delta(r, std::array<NodeId, 8>{j, u, jp, up, l, i, lp, ip});
        net.apply_delta(s, std::array<NodeId, 8>{l, p, lp, pp, j, q, jp, qp});
    } else {
        const NodeId t = net.add_node(), tp = net.add_node(), w = net.add_node(), wp = net.add_node();
        net.apply_delta(ks[0], top);
        net.apply_delta(ks[1], std::array<NodeId, 8>{j, l, jp, lp, t, w, tp, wp});
        net.apply_delta(ks[2], bottom);
        net.apply_delta(r, std::array<NodeId, 8>{t, u, tp, up, j, i, jp, ip});
        net.apply_delta(s, std::array<NodeId, 8>{l, p, lp, pp, w, q, wp, qp});
    }
    return net;
}

const std::vector<std::array<int, 16>>& half_block_exponents(int ell) {
    check_ell(ell);
    static const auto build = [](int l) {
        std::vector<std::array<int, 16>> table(chain_size(l));
        for (std::size_t x = 0; x < table.size(); ++x) {
            const auto ks = chain_digits(l, x);
            for (int r = 1; r <= 4; ++r) {
                for (int s = 1; s <= 4; ++s) {
                    table[x][static_cast<std::size_t>(4 * (r - 1) + (s - 1))] =
                        half_block_network(l, ks, r, s).free_components();
                }
            }
        }
        return table;
    };
    static const std::vector<std::array<int, 16>> two = build(2);
    static const std::vector<std::array<int, 16>> three = build(3);
    return ell == 2 ? two : three;
}

Rational MomentChain::evaluate(int blocks) const {
    if (blocks < 1) throw std::invalid_argument("MomentChain::evaluate: blocks must be >= 1");
    std::vector<Rational> v = left;
    for (int b = 1; b < blocks; ++b) v = left_multiply(v, transfer);
    return dot(v, right);
}

MomentChain compute_chain(int ell, int m) {
    check_ell(ell);
    check_width(m);
    const DesignCoefficients full(m);
    MomentChain chain;
    chain.ell = ell;
    chain.m = m;
    chain.right = edge_vector(ell, m);
    const std::size_t size = chain.right.size();
    std::vector<Rational> lam(size);
    for (std::size_t x = 0; x < size; ++x) lam[x] = lambda_product(ell, x, full);
    chain.left.resize(size);
    for (std::size_t x = 0; x < size; ++x) chain.left[x] = lam[x] * chain.right[x];
    chain.transfer = interior_matrix(ell, m);
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) chain.transfer(x, y) *= lam[y];
    }
    return chain;
}

std::optional<std::filesystem::path> chain_cache_directory() {
    const char* dir = std::getenv("ALTEXPR_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

nlohmann::json chain_to_json(const MomentChain& chain) {
    nlohmann::json j;
    j["ell"] = chain.ell;
    j["m"] = chain.m;
    auto vec = [](const std::vector<Rational>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& q : v) a.push_back(rational_to_json(q));
        return a;
    };
    j["left"] = vec(chain.left);
    j["right"] = vec(chain.right);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < chain.transfer.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < chain.transfer.cols(); ++c) row.push_back(rational_to_json(chain.transfer(r, c)));
        rows.push_back(std::move(row));
    }
    j["transfer"] = std::move(rows);
    return j;
}

MomentChain chain_from_json(const nlohmann::json& j) {
    MomentChain chain;
    chain.ell = j.at("ell").get<int>();
    chain.m = j.at("m").get<int>();
    check_ell(chain.ell);
    check_width(chain.m);
    const std::size_t size = chain_size(chain.ell);
    auto vec = [size](const nlohmann::json& a) {
        if (!a.is_array() || a.size() != size) throw std::invalid_argument("chain_from_json: bad vector length");
        std::vector<Rational> v;
        for (const auto& e : a) v.push_back(rational_from_json(e));
        return v;
    };
    chain.left = vec(j.at("left"));
    chain.right = vec(j.at("right"));
    const auto& rows = j.at("transfer");
    if (!rows.is_array() || rows.size() != size) throw std::invalid_argument("chain_from_json: bad matrix shape");
    chain.transfer = RationalMatrix(size, size);
    for (std::size_t r = 0; r < size; ++r) {
        const auto row = vec(rows[r]);
        for (std::size_t c = 0; c < size; ++c) chain.transfer(r, c) = row[c];
    }
    return chain;
}

MomentChain build_chain(int ell, int m) {
    check_ell(ell);
    check_width(m);
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto& mem = memory_cache();
    if (auto it = mem.find({ell, m}); it != mem.end()) return it->second;

    const auto dir = chain_cache_directory();
    if (dir) {
        const auto path = cache_file(*dir, ell, m);
        std::ifstream in(path);
        if (in) {
            try {
                auto chain = chain_from_json(nlohmann::json::parse(in));
                if (chain.ell == ell && chain.m == m) return mem.emplace(std::pair{ell, m}, std::move(chain)).first->second;
            } catch (const std::exception&) {
                // Unreadable cache entries are recomputed and overwritten.
            }
        }
    }

    auto chain = compute_chain(ell, m);
    if (dir) {
        std::error_code ec;
        std::filesystem::create_directories(*dir, ec);
        const auto path = cache_file(*dir, ell, m);
        const auto tmp = std::filesystem::path(path.string() + ".tmp");
        {
            std::ofstream out(tmp);
            if (out) out << chain_to_json(chain).dump();
        }
        std::filesystem::rename(tmp, path, ec);
    }
    return mem.emplace(std::pair{ell, m}, std::move(chain)).first->second;
}

std::vector<SurdValue> build_a(int ell, int m) {
    const MomentChain chain = build_chain(ell, m);
    const DesignCoefficients full(m);
    std::vector<SurdValue> a;
    a.reserve(chain.right.size());
    for (std::size_t x = 0; x < chain.right.size(); ++x) {
        a.push_back(SurdValue::principal_sqrt(lambda_product(ell, x, full)) * chain.right[x]);
    }
    return a;
}

SurdMatrix build_b(int ell, int m) {
    check_ell(ell);
    check_width(m);
    const RationalMatrix k = interior_matrix(ell, m);
    const DesignCoefficients full(m);
    const std::size_t size = k.rows();
    std::vector<SurdValue> root(size);
    for (std::size_t x = 0; x < size; ++x) root[x] = SurdValue::principal_sqrt(lambda_product(ell, x, full));
    SurdMatrix b(size, std::vector<SurdValue>(size));
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) b[x][y] = root[x] * root[y] * k(x, y);
    }
    return b;
}

Rational haar_second_frame_potential_exact(int n) {
    if (n < 1) throw std::invalid_argument("haar frame potential: n must be >= 1");
    Rational q = 1 / (pow2(n - 1) * (pow2(n) + 1));
    q.canonicalize();
    return q;
}

Rational haar_first_frame_potential_exact(int n) {
    if (n < 1) throw std::invalid_argument("haar frame potential: n must be >= 1");
    return pow2(-n);
}

Rational alt_second_frame_potential_exact(int ell, int m, int n) {
    check_ell(ell);
    check_width_and_size(m, n);
    return build_chain(ell, m).evaluate(n / m);
}

double alt_second_frame_potential(int ell, int m, int n) {
    return to_double(alt_second_frame_potential_exact(ell, m, n));
}

Rational ten_second_frame_potential_exact(int m, int n) {
    check_width_and_size(m, n);
    Rational block = 1 / ((pow2(m) + 1) * pow2(m - 1));
    block.canonicalize();
    return rational_pow(block, static_cast<unsigned long>(n / m));
}

double ten_second_frame_potential(int m, int n) { return to_double(ten_second_frame_potential_exact(m, n)); }

BoundValue theorem4_bound(int ell, int m, int n) {
    check_ell(ell);
    check_width_and_size(m, n);
    const double f = ell == 2 ? 8.0 : 32.0;
    const double c = ell == 2 ? 20.8 : 83.2;
    const double edge = 1.0 + 1.2 / std::ldexp(1.0, m);
    const double chain = std::pow(1.0 + c / std::ldexp(1.0, m / 2), n / m - 1) - 1.0;
    const double ratio = (1.0 + std::ldexp(1.0, -n)) * edge * edge * (1.0 + f * chain);
    return {ratio, ratio * to_double(haar_second_frame_potential_exact(n))};
}

CorollaryBound corollary1_bound(double a_exponent, int n, int ell) {
    check_ell(ell);
    if (!(a_exponent > 0.0)) throw std::invalid_argument("corollary1_bound: exponent must be positive");
    if (n < 2) throw std::invalid_argument("corollary1_bound: n must be >= 2");
    const double c = ell == 2 ? 143.0 : 2288.0;
    const double log_n = std::log2(static_cast<double>(n));
    const double condition = c / (a_exponent * std::pow(n, a_exponent - 1.0) * log_n);
    CorollaryBound out{condition < 1.0, condition, 0.0, 0.0};
    if (!out.applicable) return out;
    const double edge = 1.0 + 1.2 / std::pow(n, 2.0 * a_exponent);
    out.ratio = (1.0 + std::ldexp(1.0, -n)) * edge * edge * (1.0 + condition);
    out.absolute = out.ratio / (std::ldexp(1.0, n - 1) * (std::ldexp(1.0, n) + 1.0));
    return out;
}

ExpansionReport check_expansion(int ell, int m) {
    check_ell(ell);
    check_width(m);
    ExpansionReport rep;
    rep.ell = ell;
    rep.m = m;

    // Supports: entries that tend to 1 rather than 0 as m grows.
    constexpr int kProbe = 64;
    const auto a_probe = build_a(ell, kProbe);
    const auto b_probe = build_b(ell, kProbe);
    const std::size_t size = a_probe.size();
    const Rational quarter(1, 4);
    std::vector<bool> in_v0(size, false);
    for (std::size_t x = 0; x < size; ++x) {
        if ((a_probe[x] * pow2(kProbe)).within(1, quarter)) {
            in_v0[x] = true;
            rep.v0_support.push_back(static_cast<int>(x) + 1);
        }
    }
    std::vector<std::vector<bool>> in_d(size, std::vector<bool>(size, false));
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
            if ((b_probe[x][y] * pow2(2 * kProbe)).within(1, quarter)) {
                in_d[x][y] = true;
                rep.d_support.emplace_back(static_cast<int>(x) + 1, static_cast<int>(y) + 1);
            }
        }
    }

    // |2^m a - v0| < 1.2 / 2^{m/2} and |2^{2m} B - D| < (1.3 / 2^{m/2-2ell}) / 4^ell.
    const Rational v1_scale = Rational(6, 5) / pow2(m / 2);
    const Rational x_scale = Rational(13, 10) / pow2(m / 2 - 2 * ell);
    const Rational x_limit = pow2(-2 * ell);
    rep.x_limit = to_double(x_limit);

    const auto a = build_a(ell, m);
    rep.v1_bounded = true;
    for (std::size_t x = 0; x < size; ++x) {
        const SurdValue scaled = a[x] * pow2(m);
        const Rational target = in_v0[x] ? 1 : 0;
        if (!scaled.within(target, v1_scale)) rep.v1_bounded = false;
        rep.max_abs_v1 = std::max(rep.max_abs_v1, std::abs(scaled.to_complex() - to_double(target)) / to_double(v1_scale));
    }
    const auto b = build_b(ell, m);
    rep.x_bounded = true;
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
            const SurdValue scaled = b[x][y] * pow2(2 * m);
            const Rational target = in_d[x][y] ? 1 : 0;
            if (!scaled.within(target, x_scale * x_limit)) rep.x_bounded = false;
            rep.max_abs_x = std::max(rep.max_abs_x, std::abs(scaled.to_complex() - to_double(target)) / to_double(x_scale));
        }
    }
    return rep;
}

}  // namespace altexpr
