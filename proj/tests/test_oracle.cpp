#include "help2p/lattice_oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace help2p;

namespace {

TruncatedMatrix diag(std::initializer_list<std::int64_t> values, int k = 16) {
    TruncatedMatrix m(values.size(), k);
    std::size_t i = 0;
    for (auto v : values) m.set(i, i, v), ++i;
    return m;
}

LatticeVector vec(long a, long b, long c) { return {Integer(a), Integer(b), Integer(c)}; }

}  // namespace

TEST(TwoAdic, ArithmeticWraps) {
    const TruncatedTwoAdicInt half(1 << 15, 16);
    EXPECT_EQ((half + half).residue(), 0u);
    EXPECT_EQ(TruncatedTwoAdicInt(-1, 16).residue(), 65535u);
    EXPECT_EQ(TruncatedTwoAdicInt(-1, 16).signed_value(), -1);
    EXPECT_EQ(half.signed_value(), -32768);
    EXPECT_EQ((TruncatedTwoAdicInt(3, 4) * TruncatedTwoAdicInt(11, 4)).residue(), 1u);
    EXPECT_EQ((-TruncatedTwoAdicInt(5, 8)).signed_value(), -5);
    EXPECT_TRUE(TruncatedTwoAdicInt(12, 8).divisible_by_two_power(2));
    EXPECT_FALSE(TruncatedTwoAdicInt(12, 8).divisible_by_two_power(3));
}

TEST(TwoAdic, PrecisionIsChecked) {
    EXPECT_THROW(TruncatedTwoAdicInt(1, 16) + TruncatedTwoAdicInt(1, 8), PrecisionError);
    EXPECT_THROW(TruncatedTwoAdicInt(1, 0), PrecisionError);
    EXPECT_THROW(TruncatedTwoAdicInt(1, 64), PrecisionError);
    EXPECT_THROW(TruncatedMatrix(2, 16) * TruncatedMatrix(2, 12), PrecisionError);
    EXPECT_THROW(TruncatedMatrix(2, 16) + TruncatedMatrix(3, 16), DataError);
    EXPECT_THROW(TruncatedMatrix::from_rows({{1, 2}, {3}}, 16), DataError);
}

TEST(TruncatedMatrixOps, ProductTraceCongruence) {
    const auto m = TruncatedMatrix::from_rows({{1, 2}, {3, 4}}, 8);
    EXPECT_EQ(m * m, TruncatedMatrix::from_rows({{7, 10}, {15, 22}}, 8));
    EXPECT_EQ(m.trace().signed_value(), 5);
    EXPECT_TRUE(m.congruent(TruncatedMatrix::from_rows({{5, 6}, {7, 8}}, 8), 2));
    EXPECT_FALSE(m.congruent(TruncatedMatrix::from_rows({{5, 6}, {7, 8}}, 8), 3));
    EXPECT_TRUE(TruncatedMatrix::from_rows({{0, 1}, {1, 0}}, 8).is_involution());
}

TEST(TraceRecovery, InvolutionsOnly) {
    EXPECT_EQ(recover_trace(diag({1, -1, -1})), -1);
    EXPECT_EQ(recover_trace(TruncatedMatrix::from_rows({{0, 1}, {1, 0}}, 16)), 0);
    EXPECT_THROW(recover_trace(diag({1, 3})), DataError);
    // 1 + 2^15 squares to 1 modulo 2^16 but is no 2-adic involution.
    EXPECT_THROW(recover_trace(diag({1 + (1 << 15)})), DataError);
}

TEST(InvolutionShapes, Bookkeeping) {
    EXPECT_EQ(involution_shape(TruncatedMatrix::from_rows({{0, 1}, {1, 0}}, 16)), (InvolutionShape{1, 0, 0}));
    EXPECT_EQ(involution_shape(diag({1, 1, -1})), (InvolutionShape{0, 2, 1}));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto t = sample_involution_d8(4, 16, seed).value;
        const auto shape = involution_shape(t.m3());
        EXPECT_EQ(2 * shape.free_rank + shape.plus_rank + shape.minus_rank, 4);
        EXPECT_EQ(shape.free_rank + shape.plus_rank, (4 + recover_trace(t.m3())) / 2);
    }
}

TEST(Lambda, Membership) {
    EXPECT_EQ(lambda_membership(vec(1, 1, 1)), vec(1, 0, 0));
    EXPECT_EQ(lambda_membership(vec(4, 16, 0)), vec(0, 4, -1));
    EXPECT_FALSE(lambda_membership(vec(1, 3, 1)));
    EXPECT_FALSE(lambda_membership(vec(2, 1, 1)));
}

TEST(Lambda, ClosureAndLinearity) {
    const auto report = lambda_closure_check();
    EXPECT_TRUE(report.closed);
    ASSERT_EQ(report.products.size(), 9u);
    EXPECT_EQ(report.products[4].product, vec(4, 16, 0));
    EXPECT_EQ(report.products[5].coefficients, vec(0, 0, 2));
    EXPECT_EQ(report.products[8].coefficients, vec(0, 0, 4));

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> dist(-50, 50);
    const auto basis = lambda_basis();
    for (int trial = 0; trial < 200; ++trial) {
        LatticeVector v{0, 0, 0};
        const long x = dist(rng), y = dist(rng), z = dist(rng);
        for (int t = 0; t < 3; ++t) v[t] = x * basis[0][t] + y * basis[1][t] + z * basis[2][t];
        EXPECT_EQ(lambda_membership(v), vec(x, y, z));
    }
}

TEST(V4, PatternInvariant) {
    const auto x = diag({1}), y = diag({-1});
    const V4Triple t(x, y, diag({1, -1}));
    EXPECT_TRUE(check_trace_identity_v4(t));
    auto broken = diag({1, -1});
    broken.set(0, 1, 2);
    EXPECT_THROW(V4Triple(x, y, broken), DataError);
    EXPECT_THROW(V4Triple(x, y, diag({1, 1})), DataError);
    EXPECT_THROW(V4Triple(x, y, diag({1, -1}, 12)), PrecisionError);
    const V4Triple one(diag({1, 1}), diag({1}), diag({1, 1, 1}));
    EXPECT_EQ((one * one).z(), one.z());
}

TEST(V4, SamplesAreDeterministicInvolutionsInThePattern) {
    const auto first = sample_involution_v4(2, 2, 16, 42).value;
    const auto again = sample_involution_v4(2, 2, 16, 42).value;
    EXPECT_EQ(first.z(), again.z());
    std::set<std::int64_t> x_traces;
    int coupled = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto t = sample_involution_v4(2, 2, 16, seed).value;
        EXPECT_TRUE(t.x().is_involution());
        EXPECT_TRUE(t.y().is_involution());
        EXPECT_TRUE(t.z().is_involution());
        EXPECT_TRUE(satisfies_v4_pattern(t.x(), t.y(), t.z()));
        EXPECT_TRUE(check_trace_identity_v4(t)) << seed;
        x_traces.insert(recover_trace(t.x()));
        bool lower_left = false;
        for (std::size_t i = 2; i < 4; ++i)
            for (std::size_t j = 0; j < 2; ++j) lower_left |= t.z().residue(i, j) != 0;
        coupled += lower_left;
    }
    EXPECT_EQ(x_traces, (std::set<std::int64_t>{-2, 0, 2}));
    EXPECT_GT(coupled, 100);
}

TEST(V4, SamplingArguments) {
    EXPECT_THROW(sample_involution_v4(1, 1, 3, 0), UnsupportedInput);
    EXPECT_THROW(sample_involution_v4(0, 1, 16, 0), UnsupportedInput);
    EXPECT_THROW(sample_involution_v4(4, 4, 5, 0), UnsupportedInput);
    EXPECT_THROW(sample_involution_v4(1, 1, 60, 0), UnsupportedInput);
    EXPECT_NO_THROW(sample_involution_v4(1, 1, 56, 0));
}

TEST(D8, TrivialAndSampled) {
    const auto a = TruncatedMatrix::from_rows({{0, 1}, {1, 0}}, 16);
    const D8Triple plain(a, TruncatedMatrix(2, 16), TruncatedMatrix(2, 16));
    EXPECT_EQ(plain.m1(), a);
    EXPECT_TRUE(check_trace_identity_d8(plain));
    int odd_b = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto t = sample_involution_d8(3, 16, seed).value;
        EXPECT_TRUE(t.m1().congruent(t.m3(), 1));
        EXPECT_TRUE(t.m2().congruent(t.m3(), 2));
        EXPECT_TRUE(t.m1().is_involution() && t.m2().is_involution());
        EXPECT_TRUE(check_trace_identity_d8(t)) << seed;
        bool odd = false;
        for (auto r : t.b().residues()) odd |= (r & 1) != 0;
        odd_b += odd;
    }
    EXPECT_GT(odd_b, 50);
}

TEST(D8, NonInvolutionIsRejected) {
    const auto a = diag({1, 1});
    const D8Triple t(a, diag({1, 0}), TruncatedMatrix(2, 16));
    EXPECT_THROW(check_trace_identity_d8(t), DataError);
}

TEST(Experiments, ReportsAreCleanAndJobIndependent) {
    const auto serial = run_v4_trace_experiment(1, 2, 16, 60, 9);
    const auto threaded = run_v4_trace_experiment(1, 2, 16, 60, 9, 3);
    EXPECT_TRUE(serial.clean());
    EXPECT_EQ(serial.passes, 60u);
    EXPECT_EQ(to_json(serial), to_json(threaded));
    const auto json = to_json(serial);
    EXPECT_EQ(json["experiment"], "v4-trace-identity");
    EXPECT_EQ(json["parameters"]["c"], 2);
    EXPECT_TRUE(json["failures"].empty());

    const auto d8 = run_d8_trace_experiment(2, 16, 60, 9);
    EXPECT_TRUE(d8.clean());
    EXPECT_FALSE(to_json(d8)["parameters"].contains("c"));

    const auto closure = v4_pattern_closure(2, 1, 16, 100, 3);
    EXPECT_EQ(closure.passes, 100u);
    EXPECT_TRUE(to_json(lambda_closure_check())["closed"]);
}
