#include "chom/partition.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <stdexcept>

namespace chom {

int Partition::sum() const {
    int s = 0;
    for (int p : parts)
        s += p;
    return s;
}

Int Partition::norm() const {
    const int k = sum();
    Int n = 0;
    Int pw;
    for (int i = 0; i < length(); ++i) {
        // k^{k-1-i}
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(k),
                      static_cast<unsigned long>(k - 1 - i));
        n += parts[i] * pw;
    }
    return n;
}

std::string Partition::str() const {
    std::string s = "(";
    for (int i = 0; i < length(); ++i) {
        if (i)
            s += "+";
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

std::vector<Partition> partitions(int k) {
    if (k < 0)
        throw std::invalid_argument("partitions: negative k");
    std::vector<Partition> out;
    Partition cur;
    // enumerate weakly decreasing sequences
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.parts.push_back(p);
            rec(rest - p, p);
            cur.parts.pop_back();
        }
    };
    rec(k, k);
    std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        return a.norm() > b.norm();
    });
    return out;
}

} // namespace chom
