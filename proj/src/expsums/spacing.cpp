#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "gl3/errors.hpp"
#include "gl3/expsums.hpp"

namespace gl3 {

SpacingResult spacing_sum(i64 P, i64 L, i64 R, std::optional<i64> M) {
    if (P < 2 || L < 2 || R < 1) throw DomainError("spacing_sum: need P, L >= 2 and R >= 1");
    SpacingResult res;
    res.P = P;
    res.L = L;
    res.R = R;
    res.modulus = M;
    auto coprime = [&](i64 v) { return !M || v % *M != 0; };
    std::vector<i64> ps, ls, rs;
    for (i64 p : primes_in_dyadic(P))
        if (coprime(p)) ps.push_back(p);
    for (i64 l : primes_in_dyadic(L))
        if (coprime(l)) ls.push_back(l);
    for (i64 r = R; r <= 2 * R; ++r)
        if (coprime(r)) rs.push_back(r);

    // The 6-tuple (p1,p2,l1,l2,r1,r2) corresponds to the pair of triples
    // (l1, r2, p2), (l2, r1, p1); the summand only sees their products.
    std::map<u64, u64> hist;
    for (i64 l : ls)
        for (i64 r : rs)
            for (i64 p : ps) ++hist[static_cast<u64>(checked_mul(checked_mul(l, r), p))];
    u64 triples = static_cast<u64>(ls.size() * rs.size() * ps.size());
    if (static_cast<long double>(triples) * triples > 1e9L)
        throw ResourceError("spacing_sum: more than 1e9 tuples");
    res.tuples = triples * triples;
    std::vector<std::pair<u64, u64>> h(hist.begin(), hist.end());
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) {
            if (i == j) continue;
            u64 v = h[i].first, w = h[j].first;
            if (M && (v % static_cast<u64>(*M)) != (w % static_cast<u64>(*M))) continue;
            res.difference_counts[v > w ? v - w : w - v] += h[i].second * h[j].second;
        }
    long double s = 0;
    // add the smallest terms first
    for (auto it = res.difference_counts.rbegin(); it != res.difference_counts.rend(); ++it)
        s += static_cast<long double>(it->second) / static_cast<long double>(it->first);
    res.value = s;
    double mn = static_cast<double>(std::min({P, L, R}));
    res.comparison = static_cast<double>(L) * P * R + mn * mn;
    res.ratio = static_cast<double>(s) / res.comparison;
    return res;
}

std::string SpacingResult::exact_rational() const {
    using boost::multiprecision::cpp_rational;
    cpp_rational q = 0;
    for (auto& [d, c] : difference_counts) q += cpp_rational(c, d);
    return q.str();
}

}  // namespace gl3
