#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "secgame/rng.hpp"

using namespace secgame;

TEST_CASE("identical seeds reproduce identical streams") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("derived seeds separate by label and index") {
    std::set<std::uint64_t> seen;
    seen.insert(derive_seed(7, "alpha"));
    seen.insert(derive_seed(7, "beta"));
    seen.insert(derive_seed(7, "alpha", 1));
    seen.insert(derive_seed(7, "alpha", 2));
    seen.insert(derive_seed(8, "alpha"));
    CHECK(seen.size() == 5);
    CHECK(derive_seed(7, "alpha", 1) == derive_seed(7, "alpha", 1));
}

TEST_CASE("uniform01 stays in the half-open unit interval and covers it") {
    Rng rng(99);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("uniform_int is inclusive on both ends") {
    Rng rng(5);
    std::set<int> seen;
    for (int i = 0; i < 500; ++i) {
        int v = rng.uniform_int(2, 5);
        CHECK(v >= 2);
        CHECK(v <= 5);
        seen.insert(v);
    }
    CHECK(seen.size() == 4);
}

TEST_CASE("sample_pmf matches frequencies against a hand oracle") {
    std::vector<double> pmf = {0.2, 0.0, 0.5, 0.3};
    Rng rng(424242);
    const int n = 60000;
    std::vector<int> counts(pmf.size(), 0);
    for (int i = 0; i < n; ++i) ++counts[rng.sample_pmf(pmf)];
    CHECK(counts[1] == 0); // zero-mass category never drawn
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        double freq = static_cast<double>(counts[k]) / n;
        double se = std::sqrt(pmf[k] * (1 - pmf[k]) / n);
        CHECK(std::fabs(freq - pmf[k]) <= 5 * se + 1e-9);
    }
}

TEST_CASE("shuffle is a permutation and deterministic per seed") {
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[i] = i;
    std::vector<int> w = v;
    Rng a(3), b(3);
    a.shuffle(v);
    b.shuffle(w);
    CHECK(v == w);
    std::sort(w.begin(), w.end());
    for (int i = 0; i < 50; ++i) CHECK(w[i] == i);
}
