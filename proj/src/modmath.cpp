#include "fibpow/modmath.hpp"

#include <algorithm>
#include <numeric>

namespace fibpow {

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 invmod(u64 a, u64 m) {
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
    while (newr != 0) {
        i64 q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int jacobi(i64 a, u64 n) {
    if (n == 0 || (n & 1) == 0) throw std::domain_error("jacobi: n must be odd positive");
    i64 nn = static_cast<i64>(n);
    a %= nn;
    if (a < 0) a += nn;
    int result = 1;
    u64 ua = static_cast<u64>(a), un = n;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            u64 r = un % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(ua, un);
        if (ua % 4 == 3 && un % 4 == 3) result = -result;
        ua %= un;
    }
    return un == 1 ? result : 0;
}

int legendre(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    u64 e = powmod(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

u64 sqrtmod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre(a, p) != 1) throw std::domain_error("sqrtmod: non-residue");
    u64 root;
    if (p % 4 == 3) {
        root = powmod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        u64 q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (legendre(z, p) != -1) ++z;
        u64 m = s;
        u64 c = powmod(z, q, p);
        u64 t = powmod(a, q, p);
        u64 r = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            u64 b = powmod(c, u64(1) << (m - i - 1), p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
        root = r;
    }
    return std::min(root, p - root);
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> fs;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    std::vector<u64> fs = prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 f : fs) {
            if (powmod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::domain_error("primitive_root: none found (composite input?)");
}

bool has_prime_factor_above(u64 n, u64 q) {
    if (n == 0) return true;
    for (u64 d = 2; d <= q && d * d <= n; ++d) {
        while (n % d == 0) n /= d;
    }
    // Any factor left is > q or n itself is a prime > q.
    if (n > q) return true;
    return false;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
        }
        if (i * i > limit) {
            for (u64 j = i + 1; j <= limit; ++j)
                if (!comp[j]) out.push_back(j);
            break;
        }
    }
    return out;
}

QuadTable::QuadTable(u64 l) : l_(l), table_(l, false) {
    for (u64 t = 0; t <= (l - 1) / 2; ++t) {
        table_[mulmod(t, t, l)] = true;
    }
    table_[0] = false;
}

} // namespace fibpow
