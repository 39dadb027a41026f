#include "ztower/witt_poly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "ztower/fp.hpp"

namespace ztower {

using namespace wpoly;

namespace {

// Coefficient-ring policies for the shared ghost-recursion generator.

struct ExactRing {
    using C = BigInt;
    C from_int(long long v) const { return C(v); }
    bool is_zero(const C& a) const { return a == 0; }
    C mul(const C& a, const C& b) const { return a * b; }
    // Exact division by p^n; false when the division has a remainder.
    bool div_exact(C& a, const C& pn) const {
        if (a % pn != 0) return false;
        a /= pn;
        return true;
    }
};

// Arithmetic mod p^l. Only the final mod-p reduction of each generated
// polynomial is consumed, and the recursion's divisions by p^n keep enough
// p-adic headroom at every level for that reduction to be exact.
struct ModRing {
    uint64_t mod;
    using C = uint64_t;
    C from_int(long long v) const {
        long long r = v % static_cast<long long>(mod);
        if (r < 0) r += static_cast<long long>(mod);
        return static_cast<C>(r);
    }
    bool is_zero(const C& a) const { return a == 0; }
    C mul(const C& a, const C& b) const {
        return static_cast<C>(static_cast<unsigned __int128>(a) * b % mod);
    }
    bool div_exact(C& a, const C& pn) const {
        if (a % pn != 0) return false;
        a /= pn;
        return true;
    }
};

template <class R>
void poly_add_scaled(const R& ring, PolyMap<typename R::C>& dst,
                     const PolyMap<typename R::C>& src, const typename R::C& factor) {
    for (const auto& [k, c] : src) {
        auto& slot = dst[k];
        slot = static_cast<typename R::C>(slot + ring.mul(c, factor));
        if constexpr (std::is_same_v<R, ModRing>) slot %= ring.mod;
        if (ring.is_zero(slot)) dst.erase(k);
    }
}

template <class R>
PolyMap<typename R::C> poly_mul(const R& ring, const PolyMap<typename R::C>& a,
                                const PolyMap<typename R::C>& b, size_t budget) {
    PolyMap<typename R::C> r;
    r.reserve(a.size() + b.size());
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            Key k = mul_keys(ka, kb);
            auto& slot = r[k];
            slot = static_cast<typename R::C>(slot + ring.mul(ca, cb));
            if constexpr (std::is_same_v<R, ModRing>) slot %= ring.mod;
            if (ring.is_zero(slot)) r.erase(k);
        }
    if (r.size() > budget)
        throw LengthCapExceeded("universal polynomial term budget exceeded");
    return r;
}

template <class R>
PolyMap<typename R::C> poly_pow(const R& ring, const PolyMap<typename R::C>& a,
                                long long e, size_t budget) {
    PolyMap<typename R::C> r;
    r[0] = ring.from_int(1);
    for (long long i = 0; i < e; ++i) r = poly_mul(ring, r, a, budget);
    return r;
}

template <class R>
void poly_div_exact(const R& ring, PolyMap<typename R::C>& a, const typename R::C& pn) {
    for (auto& [k, c] : a)
        if (!ring.div_exact(c, pn))
            throw InexactDivision("ghost recursion produced a non-integer coefficient");
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Ghost polynomial w^(n) applied to one variable bank (X: bank=0, Y: bank=1),
// as a polynomial: sum_{i<=n} p^i * V_i^(p^(n-i)).
template <class R>
PolyMap<typename R::C> ghost_monomials(const R& ring, int p, int n, int bank) {
    PolyMap<typename R::C> w;
    for (int i = 0; i <= n; ++i) {
        unsigned q = static_cast<unsigned>(ipow(p, n - i));
        if (q > kExpMax) throw LengthCapExceeded("monomial exponent exceeds packing width");
        Key k = make_var(bank == 0 ? x_slot(i) : y_slot(i), q);
        w[k] = ring.from_int(ipow(p, i));
    }
    return w;
}

// Solve the triangular ghost system for S_0..S_{l-1} and P_0..P_{l-1}.
template <class R>
void gen_polys(const R& ring, int p, int l, size_t budget,
               std::vector<PolyMap<typename R::C>>& S,
               std::vector<PolyMap<typename R::C>>& P) {
    using C = typename R::C;
    S.assign(l, {});
    P.assign(l, {});
    for (int n = 0; n < l; ++n) {
        C pn = ring.from_int(ipow(p, n));
        // S_n = [ w_n(X) + w_n(Y) - sum_{i<n} p^i S_i^(p^(n-i)) ] / p^n
        PolyMap<C> bs = ghost_monomials(ring, p, n, 0);
        poly_add_scaled(ring, bs, ghost_monomials(ring, p, n, 1), ring.from_int(1));
        for (int i = 0; i < n; ++i) {
            auto pw = poly_pow(ring, S[i], ipow(p, n - i), budget);
            poly_add_scaled(ring, bs, pw, ring.from_int(-ipow(p, i)));
        }
        poly_div_exact(ring, bs, pn);
        S[n] = std::move(bs);
        // P_n = [ w_n(X) * w_n(Y) - sum_{i<n} p^i P_i^(p^(n-i)) ] / p^n
        PolyMap<C> bp = poly_mul(ring, ghost_monomials(ring, p, n, 0),
                                 ghost_monomials(ring, p, n, 1), budget);
        for (int i = 0; i < n; ++i) {
            auto pw = poly_pow(ring, P[i], ipow(p, n - i), budget);
            poly_add_scaled(ring, bp, pw, ring.from_int(-ipow(p, i)));
        }
        poly_div_exact(ring, bp, pn);
        P[n] = std::move(bp);
    }
}

constexpr size_t kExactBudget = 200000;
constexpr size_t kModBudget = 2500000;

void check_length(int p, int length) {
    fp::check_prime(p);
    if (length < 1 || length > kMaxLen)
        throw LengthCapExceeded("Witt length must be in [1, 5]");
}

}  // namespace

UniversalPolys gen_universal_polys(int p, int length) {
    check_length(p, length);
    ExactRing ring;
    std::vector<PolyMap<BigInt>> S, P;
    gen_polys(ring, p, length, kExactBudget, S, P);
    UniversalPolys up;
    up.p = p;
    up.length = length;
    up.sum_polys.resize(length);
    up.prod_polys.resize(length);
    for (int n = 0; n < length; ++n) {
        up.sum_polys[n] = std::map<Key, BigInt>(S[n].begin(), S[n].end());
        up.prod_polys[n] = std::map<Key, BigInt>(P[n].begin(), P[n].end());
    }
    return up;
}

bool check_ghost_identity(const UniversalPolys& up) {
    ExactRing ring;
    int p = up.p;
    for (int n = 0; n < up.length; ++n) {
        // w^(n) evaluated on the S (resp. P) vector of polynomials.
        PolyMap<BigInt> lhs_s, lhs_p;
        for (int i = 0; i <= n; ++i) {
            BigInt pi = ipow(p, i);
            PolyMap<BigInt> si(up.sum_polys[i].begin(), up.sum_polys[i].end());
            PolyMap<BigInt> pi_poly(up.prod_polys[i].begin(), up.prod_polys[i].end());
            poly_add_scaled(ring, lhs_s, poly_pow(ring, si, ipow(p, n - i), kExactBudget * 8), pi);
            poly_add_scaled(ring, lhs_p, poly_pow(ring, pi_poly, ipow(p, n - i), kExactBudget * 8), pi);
        }
        PolyMap<BigInt> rhs_s = ghost_monomials(ring, p, n, 0);
        poly_add_scaled(ring, rhs_s, ghost_monomials(ring, p, n, 1), BigInt(1));
        PolyMap<BigInt> rhs_p = poly_mul(ring, ghost_monomials(ring, p, n, 0),
                                         ghost_monomials(ring, p, n, 1), kExactBudget * 8);
        poly_add_scaled(ring, lhs_s, rhs_s, BigInt(-1));
        poly_add_scaled(ring, lhs_p, rhs_p, BigInt(-1));
        if (!lhs_s.empty() || !lhs_p.empty()) return false;
    }
    return true;
}

namespace {

CharPoly freeze_mod_p(const PolyMap<uint64_t>& poly, int p) {
    CharPoly out;
    for (const auto& [k, c] : poly) {
        int r = static_cast<int>(c % static_cast<uint64_t>(p));
        if (r != 0) out.terms.emplace_back(k, r);
    }
    std::sort(out.terms.begin(), out.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace

const WittTables& witt_tables(int p, int length) {
    check_length(p, length);
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<WittTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, length);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    ModRing ring{static_cast<uint64_t>(ipow(p, length))};
    std::vector<PolyMap<uint64_t>> S, P;
    gen_polys(ring, p, length, kModBudget, S, P);
    auto tables = std::make_unique<WittTables>();
    tables->p = p;
    tables->length = length;
    for (int n = 0; n < length; ++n) {
        tables->sum_polys.push_back(freeze_mod_p(S[n], p));
        tables->prod_polys.push_back(freeze_mod_p(P[n], p));
    }
    return *cache.emplace(key, std::move(tables)).first->second;
}

}  // namespace ztower
