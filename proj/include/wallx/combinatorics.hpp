#pragma once

#include <functional>
#include <vector>

namespace wallx {

/// Weak compositions of n into `parts` nonnegative parts, first part
/// largest first: (n,0,..), (n-1,1,..), ...
inline std::vector<std::vector<int>> compositions(int n, int parts)
{
    std::vector<std::vector<int>> out;
    if (parts <= 0) {
        if (n == 0) out.emplace_back();
        return out;
    }
    std::vector<int> cur(parts, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == parts - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
    return out;
}

/// Size-r subsets of {lo, ..., hi}, ascending, in lexicographic order.
inline std::vector<std::vector<int>> subsets(int lo, int hi, int r)
{
    std::vector<std::vector<int>> out;
    if (r < 0) return out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int v = next; v <= hi; ++v) {
            if (hi - v + 1 < r - static_cast<int>(cur.size())) break;
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(lo);
    return out;
}

inline long binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace wallx
