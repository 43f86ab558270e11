#include <doctest.h>

#include <bit>
#include <cmath>
#include <functional>
#include <set>

#include "lpapprox/dimension.hpp"
#include "lpapprox/rng.hpp"

using namespace lpapprox;

namespace {

// thresholds x -> sign(x - t) sampled on 3 collinear points
FiniteFunctionClass threshold_class() {
    const std::vector<double> points = {0.0, 1.0, 2.0};
    std::vector<std::vector<double>> rows;
    for (double t : {-0.5, 0.5, 1.5, 2.5}) {
        std::vector<double> row;
        for (double x : points) row.push_back(x >= t ? 1.0 : -1.0);
        rows.push_back(row);
    }
    return FiniteFunctionClass(std::move(rows));
}

// affine x -> a x + b over a small grid, observed on 4 points
FiniteFunctionClass affine_class() {
    const std::vector<double> points = {0.0, 1.0, 2.0, 3.0};
    std::vector<std::vector<double>> rows;
    for (double a = -2.0; a <= 2.0; a += 1.0)
        for (double b = -2.0; b <= 2.0; b += 1.0) {
            std::vector<double> row;
            for (double x : points) row.push_back(a * x + b);
            rows.push_back(row);
        }
    return FiniteFunctionClass(std::move(rows));
}

FiniteFunctionClass random_class(std::size_t fns, std::size_t pts, std::uint64_t seed,
                                 double lo = 0.0, double hi = 1.0) {
    std::vector<std::vector<double>> rows(fns, std::vector<double>(pts));
    for (std::size_t i = 0; i < fns; ++i)
        for (std::size_t j = 0; j < pts; ++j)
            rows[i][j] = rng::uniform(seed, i * pts + j, lo, hi);
    return FiniteFunctionClass(std::move(rows));
}

// exhaustive pseudo-shattering oracle: tries every witness combination from
// per-point midpoint candidates over every subset of points
bool oracle_pseudo_shatters(const FiniteFunctionClass& cls,
                            const std::vector<std::size_t>& subset) {
    std::vector<std::vector<double>> cands;
    for (std::size_t pt : subset) {
        std::set<double> vals;
        for (const auto& row : cls.values) vals.insert(row[pt]);
        std::vector<double> v(vals.begin(), vals.end());
        std::vector<double> mids;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) mids.push_back(0.5 * (v[i] + v[i + 1]));
        mids.push_back(v.front() - 1.0);
        mids.push_back(v.back() + 1.0);
        cands.push_back(std::move(mids));
    }
    std::vector<std::size_t> pick(subset.size(), 0);
    while (true) {
        std::set<std::uint32_t> patterns;
        for (const auto& row : cls.values) {
            std::uint32_t pat = 0;
            for (std::size_t i = 0; i < subset.size(); ++i)
                if (row[subset[i]] >= cands[i][pick[i]]) pat |= 1u << i;
            patterns.insert(pat);
        }
        if (patterns.size() == (std::size_t(1) << subset.size())) return true;
        std::size_t axis = subset.size();
        bool done = true;
        while (axis-- > 0) {
            if (++pick[axis] < cands[axis].size()) {
                done = false;
                break;
            }
            pick[axis] = 0;
        }
        if (done) return false;
    }
}

int oracle_pseudo_dim(const FiniteFunctionClass& cls) {
    int best = 0;
    const std::size_t n = cls.n_points();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) subset.push_back(i);
        if (static_cast<int>(subset.size()) <= best) continue;
        if (cls.n_functions() < (std::size_t(1) << subset.size())) continue;
        if (oracle_pseudo_shatters(cls, subset)) best = static_cast<int>(subset.size());
    }
    return best;
}

// brute-force maximum packing by subset enumeration
int oracle_packing(const FiniteFunctionClass& cls, double eps, double p) {
    const std::size_t n = cls.n_functions();
    const std::size_t pts = cls.n_points();
    auto dist = [&](std::size_t i, std::size_t j) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k < pts; ++k)
            acc += std::pow(std::fabs(cls.values[i][k] - cls.values[j][k]), p) / pts;
        return static_cast<double>(std::pow(acc, 1.0L / p));
    };
    int best = 0;
    for (std::uint64_t subset = 1; subset < (1ull << n); ++subset) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            if (subset >> i & 1)
                for (std::size_t j = i + 1; j < n && ok; ++j)
                    if (subset >> j & 1) ok = dist(i, j) > eps;
        if (ok) best = std::max(best, std::popcount(subset));
    }
    return best;
}

} // namespace

TEST_CASE("vc dimension of thresholds on 3 collinear points is 1") {
    CHECK(vc_dim(threshold_class()) == 1);
}

TEST_CASE("vc dimension of the full pattern class on k points is k") {
    for (std::size_t k : {1u, 2u, 3u, 4u}) {
        std::vector<std::vector<double>> rows;
        for (std::uint32_t pat = 0; pat < (1u << k); ++pat) {
            std::vector<double> row;
            for (std::size_t i = 0; i < k; ++i) row.push_back(pat >> i & 1 ? 1.0 : -1.0);
            rows.push_back(row);
        }
        CHECK(vc_dim(FiniteFunctionClass(std::move(rows))) == static_cast<int>(k));
    }
}

TEST_CASE("vc dimension degenerate and error cases") {
    CHECK(vc_dim(FiniteFunctionClass({{1.0, -1.0, 1.0}})) == 0); // single function
    CHECK_THROWS_AS(static_cast<void>(vc_dim(FiniteFunctionClass({{0.5, 1.0}}))), DomainError);
    CHECK_THROWS_AS(static_cast<void>(vc_dim(random_class(2, 21, 1), 20)), CapacityError);
}

TEST_CASE("pseudo-dimension of the affine grid class is 2") {
    const auto cls = affine_class();
    const auto res = pseudo_dim(cls);
    CHECK(res.exact);
    CHECK(res.value == 2);
    CHECK(oracle_pseudo_dim(cls) == 2);
}

TEST_CASE("pseudo-dimension matches the exhaustive oracle on random classes") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto cls = random_class(5 + trial % 8, 4, 0xD1 + trial);
        const auto res = pseudo_dim(cls);
        CHECK(res.exact);
        CHECK(res.value == oracle_pseudo_dim(cls));
    }
}

TEST_CASE("pseudo-dimension degenerate cases") {
    CHECK(pseudo_dim(FiniteFunctionClass({{0.0, 0.0}})).value == 0);
    CHECK_THROWS_AS(static_cast<void>(pseudo_dim(random_class(65, 4, 2))), CapacityError);
    CHECK_THROWS_AS(static_cast<void>(pseudo_dim(random_class(4, 13, 2))), CapacityError);
}

TEST_CASE("pseudo_dim dominates vc_dim of the induced sign class") {
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        const auto cls = random_class(8, 4, 0xE0 + trial, -1.0, 1.0);
        const auto signs = sign_class(cls, 0.0);
        CHECK(pseudo_dim(cls).value >= vc_dim(signs));
    }
}

TEST_CASE("fat dimension is non-increasing in gamma and below pseudo_dim") {
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        const auto cls = random_class(12, 4, 0xF0 + trial);
        const int pdim = pseudo_dim(cls).value;
        int prev = pdim;
        for (double gamma : {0.01, 0.05, 0.1, 0.2, 0.4}) {
            const int fat = fat_dim(cls, gamma).value;
            CHECK(fat <= prev);
            CHECK(fat <= pdim);
            prev = fat;
        }
    }
    CHECK_THROWS_AS(static_cast<void>(fat_dim(random_class(4, 3, 1), 0.0)), DomainError);
    CHECK(fat_dim(FiniteFunctionClass({{0.3, 0.3}}), 0.05).value == 0);
}

TEST_CASE("clipping cannot increase the fat dimension") {
    for (std::uint64_t trial = 0; trial < 12; ++trial) {
        const auto cls = random_class(10, 4, 0x1D + trial, -1.0, 2.0);
        const auto clipped = clip_class(cls, 0.0, 1.0);
        for (double gamma : {0.05, 0.15, 0.3})
            CHECK(fat_dim(clipped, gamma).value <= fat_dim(cls, gamma).value);
    }
}

TEST_CASE("rescaling identity for the fat dimension") {
    for (std::uint64_t trial = 0; trial < 12; ++trial) {
        const auto cls = random_class(10, 4, 0x2D + trial, -1.0, 3.0);
        const double a = -1.0, b = 3.0;
        const auto scaled = rescale_class(cls, a, b);
        for (double u : {0.1, 0.25, 0.6})
            CHECK(fat_dim(scaled, u / (b - a)).value == fat_dim(cls, u).value);
    }
}

TEST_CASE("packing number basics") {
    const auto cls = random_class(10, 5, 0x3D);
    SUBCASE("eps above the diameter leaves one function") {
        CHECK(packing_number(cls, 10.0, 2.0).size == 1);
    }
    SUBCASE("eps below the minimum distance keeps all") {
        const auto res = packing_number(cls, 1e-9, 2.0);
        CHECK(res.size == static_cast<int>(cls.n_functions()));
        CHECK(res.exact);
    }
}

TEST_CASE("exact packing equals the exhaustive-subset oracle") {
    for (std::uint64_t trial = 0; trial < 12; ++trial) {
        const auto cls = random_class(12, 4, 0x4D + trial);
        for (double eps : {0.1, 0.2, 0.35}) {
            const auto res = packing_number(cls, eps, 2.0);
            CHECK(res.exact);
            CHECK(res.size == oracle_packing(cls, eps, 2.0));
        }
    }
}

TEST_CASE("greedy mode is a flagged lower bound") {
    const auto cls = random_class(30, 4, 0x5D);
    const auto greedy = packing_number(cls, 0.2, 2.0, {}, 25);
    const auto exact = packing_number(cls, 0.2, 2.0, {}, 64);
    CHECK(!greedy.exact);
    CHECK(exact.exact);
    CHECK(greedy.size <= exact.size);
    CHECK(greedy.size >= 1);
}

TEST_CASE("packing rescale identity") {
    SUBCASE("identity rescale") {
        const auto cls = random_class(8, 4, 0x6D);
        CHECK(packing_scale_identity_check(cls, 0.2, 0.0, 1.0));
    }
    SUBCASE("wide range") {
        for (std::uint64_t trial = 0; trial < 10; ++trial) {
            const auto cls = random_class(10, 5, 0x7D + trial, -1.0, 3.0);
            CHECK(packing_scale_identity_check(cls, 0.2, -1.0, 3.0));
        }
    }
    SUBCASE("single function") {
        const FiniteFunctionClass one({{0.4, 0.6}});
        CHECK(packing_scale_identity_check(one, 0.2, 0.0, 1.0));
    }
}

TEST_CASE("weighted empirical norm validates its weights") {
    const auto cls = random_class(6, 4, 0x8D);
    CHECK_THROWS_AS(static_cast<void>(packing_number(cls, 0.1, 2.0, {0.5, 0.5})),
                    ValidationError);
    CHECK_THROWS_AS(static_cast<void>(packing_number(cls, 0.1, 2.0, {0.9, 0.2, -0.1, 0.0})),
                    ValidationError);
    CHECK_NOTHROW(static_cast<void>(packing_number(cls, 0.1, 2.0, {0.7, 0.1, 0.1, 0.1})));
}

TEST_CASE("duplicate rows are removed and counted") {
    FiniteFunctionClass cls({{1.0, 2.0}, {1.0, 2.0}, {3.0, 4.0}});
    CHECK(cls.n_functions() == 2);
    CHECK(cls.duplicates_removed == 1);
}

TEST_CASE("json round trip") {
    const auto cls = random_class(5, 3, 0x9D);
    const auto back = function_class_from_json(to_json(cls));
    CHECK(back.values == cls.values);
    CHECK_THROWS_AS(static_cast<void>(function_class_from_json("{")), ParseError);
}

TEST_CASE("tiny heaviside nets: empirical pseudo-dim vs W log W (reported)") {
    // sample threshold-network outputs on 10 fixed points for three small
    // weight-slot counts and report the fitted constant pdim / (W log W);
    // the constant is existential, so this prints rather than asserts
    const std::vector<double> points = {-0.9, -0.7, -0.5, -0.3, -0.1,
                                        0.1,  0.3,  0.5,  0.7,  0.9};
    const auto heavi = [](double t) { return t >= 0 ? 1.0 : 0.0; };
    struct Shape {
        int W;
        std::function<double(const std::vector<double>&, double)> eval;
    };
    // w indexes follow each shape's slot list
    const std::vector<Shape> shapes = {
        // x -> hidden -> out: slots (edge x->h, edge h->out, bias h, bias out)
        {4, [&](const std::vector<double>& w, double x) {
             return w[1] * heavi(w[0] * x + w[2]) + w[3];
         }},
        // same plus the skip edge x -> out
        {5, [&](const std::vector<double>& w, double x) {
             return w[1] * heavi(w[0] * x + w[2]) + w[4] * x + w[3];
         }},
        // two hidden thresholds summed at the output
        {6, [&](const std::vector<double>& w, double x) {
             return w[2] * heavi(w[0] * x + w[4]) + w[3] * heavi(w[1] * x + w[5]);
         }}};
    const std::vector<double> grid = {-1.0, -0.5, 0.5, 1.0};
    double fitted = 0.0;
    for (const auto& shape : shapes) {
        std::set<std::vector<double>> rows;
        std::vector<double> w(static_cast<std::size_t>(shape.W));
        for (std::uint64_t trial = 0; trial < 4000 && rows.size() < 64; ++trial) {
            for (int i = 0; i < shape.W; ++i)
                w[static_cast<std::size_t>(i)] =
                    grid[rng::below(0x77AA, trial * static_cast<std::uint64_t>(shape.W) +
                                                static_cast<std::uint64_t>(i),
                                    grid.size())];
            std::vector<double> row;
            for (double x : points) row.push_back(shape.eval(w, x));
            rows.insert(std::move(row));
        }
        const FiniteFunctionClass cls(
            std::vector<std::vector<double>>(rows.begin(), rows.end()));
        const auto res = pseudo_dim(cls);
        CHECK(res.value >= 1);
        CHECK(res.value <= static_cast<int>(points.size()));
        fitted = std::max(fitted, res.value / (shape.W * std::log(shape.W)));
        MESSAGE("W=", shape.W, " sampled functions=", cls.n_functions(),
                " empirical pdim=", res.value,
                res.exact ? "" : " (search capped)");
    }
    MESSAGE("fitted constant: empirical pdim <= ", fitted, " * W log W");
}
