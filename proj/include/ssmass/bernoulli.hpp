#pragma once

#include <vector>

#include "ssmass/rational.hpp"

namespace ssmass {

/// B_n with the convention B_1 = -1/2, via the defining recurrence
/// sum_{k=0}^{n} C(n+1, k) B_k = 0.
inline Rat bernoulli(unsigned n) {
    std::vector<Rat> b(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        Rat acc(0);
        for (unsigned k = 0; k < i; ++k)
            acc += Rat(binomial(i + 1, k)) * b[k];
        b[i] = -acc / Rat(Int(i + 1));
        if (i == 0) b[i] = 1;
    }
    return b[n];
}

/// zeta(1-2j) = -B_{2j} / (2j) for j >= 1; always nonzero with sign (-1)^j.
inline Rat zeta_neg(unsigned j) {
    if (j < 1)
        throw ValidationError("zeta_neg requires j >= 1");
    return -bernoulli(2 * j) / Rat(Int(2 * j));
}

} // namespace ssmass
