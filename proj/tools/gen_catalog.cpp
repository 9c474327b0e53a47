// Exhaustive search for elliptic curves of conductor 20, 40, 100, 200:
// minimal-form models [a1,a2,a3,a4,a6] with a1,a3 in {0,1}, |a2| <= 1,
// discriminant +-2^s 5^t, conductor via Tate. Curves are grouped into
// isogeny classes by trace fingerprint; one smallest model per class is
// printed with its j-invariant and the data used to assign labels.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <vector>

#include "fibpow/curves.hpp"

using namespace fibpow;

namespace {

bool disc_is_2_5_only(long long a1, long long a2, long long a3, long long a4, long long a6) {
    __int128 b2 = a1 * a1 + 4 * a2;
    __int128 b4 = 2 * a4 + a1 * a3;
    __int128 b6 = a3 * a3 + 4 * a6;
    __int128 b8 = (__int128)(a1 * a1) * a6 + (__int128)4 * a2 * a6 - (__int128)(a1 * a3) * a4
                + (__int128)a2 * (a3 * a3) - (__int128)a4 * a4;
    __int128 d = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (d == 0) return false;
    if (d < 0) d = -d;
    while ((d & 1) == 0) d >>= 1;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

std::vector<i64> fingerprint(const CatalogCurve& c) {
    std::vector<i64> fp;
    for (u64 l : {3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101}) {
        fp.push_back(trace_of_frobenius(c.reduce(l)).a_l);
    }
    return fp;
}

} // namespace

int main() {
    std::map<std::string, std::map<std::vector<i64>, std::vector<CatalogCurve>>> by_conductor;
    long found = 0;
    for (long a1 = 0; a1 <= 1; ++a1)
        for (long a2 = -1; a2 <= 1; ++a2)
            for (long a3 = 0; a3 <= 1; ++a3)
                for (long a4 = -1000; a4 <= 1000; ++a4)
                    for (long a6 = -4000; a6 <= 4000; ++a6) {
                        if (!disc_is_2_5_only(a1, a2, a3, a4, a6)) continue;
                        CatalogCurve c;
                        c.a1 = a1;
                        c.a2 = a2;
                        c.a3 = a3;
                        c.a4 = a4;
                        c.a6 = a6;
                        mpz_class N = conductor(c);
                        if (N != 20 && N != 40 && N != 100 && N != 200) continue;
                        ++found;
                        by_conductor[N.get_str()][fingerprint(c)].push_back(c);
                    }

    std::cout << "models found: " << found << "\n";
    for (auto& [cond, classes] : by_conductor) {
        std::cout << "== conductor " << cond << ": " << classes.size() << " isogeny classes\n";
        for (auto& [fp, curves] : classes) {
            std::sort(curves.begin(), curves.end(), [](const CatalogCurve& x, const CatalogCurve& y) {
                long hx = std::labs(x.a4) + std::labs(x.a6);
                long hy = std::labs(y.a4) + std::labs(y.a6);
                return hx < hy;
            });
            const CatalogCurve& c = curves.front();
            std::cout << "  [" << c.a1 << "," << c.a2 << "," << c.a3 << "," << c.a4 << "," << c.a6 << "]"
                      << "  j=" << j_invariant(c).get_str() << "  a_l@(3,7,11,13,17,19,23)=";
            for (size_t i = 0; i < 7; ++i) std::cout << (i ? "," : "") << fp[i];
            std::cout << "  (" << curves.size() << " models)\n";
        }
    }
    return 0;
}
