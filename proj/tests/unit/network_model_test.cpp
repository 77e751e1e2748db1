// Copyright 2026 The Piecemaker Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "piecemaker/network_model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace piecemaker {
namespace {

TEST(Arrivals, CertainLinksArriveInRoundOne) {
    Rng rng(1);
    const auto a = sample_arrivals(LinkConfig::homogeneous(6, 1.0, 0.0), rng);
    EXPECT_EQ(a, std::vector<std::uint64_t>(6, 1));
}

TEST(Arrivals, GeometricMean) {
    Rng rng(2);
    const auto cfg = LinkConfig::homogeneous(1, 0.5, 0.0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) sum += static_cast<double>(sample_arrivals(cfg, rng)[0]);
    EXPECT_NEAR(sum / 100000, 2.0, 0.02);
}

TEST(Arrivals, MaximumMatchesProductCdf) {
    Rng rng(3);
    LinkConfig cfg;
    cfg.p_link = {0.5, 0.3, 0.8};
    const int samples = 200000;
    std::vector<int> at_most(12, 0);
    for (int i = 0; i < samples; ++i) {
        const auto a = sample_arrivals(cfg, rng);
        const auto t = *std::max_element(a.begin(), a.end());
        for (std::uint64_t s = t; s < at_most.size(); ++s) ++at_most[s];
    }
    for (std::size_t t = 1; t < at_most.size(); ++t) {
        double cdf = 1.0;
        for (double p : cfg.p_link) cdf *= 1.0 - std::pow(1.0 - p, static_cast<double>(t));
        const double sd = std::sqrt(cdf * (1 - cdf) / samples);
        EXPECT_NEAR(at_most[t] / static_cast<double>(samples), cdf, 4 * sd + 1e-12) << "t=" << t;
    }
}

TEST(LinkConfig, Validation) {
    auto cfg = LinkConfig::homogeneous(3, 0.5, 0.01);
    EXPECT_NO_THROW(cfg.validate());
    cfg.p_link[1] = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.p_link[1] = 1.5;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = LinkConfig::homogeneous(3, 0.5, -0.1);
    EXPECT_THROW(cfg.validate(), std::invalid_argument);

    cfg = LinkConfig::homogeneous(3, 0.5, 0.0);
    cfg.tau = 100.0;
    EXPECT_NEAR(cfg.effective_p_depol(), 1.0 - std::exp(-0.01), 1e-15);
    EXPECT_NEAR(depolarizing_probability(1.0, 1.0), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(Lengths, LinkProbability) {
    EXPECT_EQ(link_probability_from_length(0.0, 0.2), 1.0);
    EXPECT_NEAR(link_probability_from_length(25.0, 0.2), 0.31623, 1e-5);
    EXPECT_NEAR(link_probability_from_length(50.0, 0.2), 0.1, 1e-15);
    EXPECT_THROW(link_probability_from_length(-1.0, 0.2), std::invalid_argument);
}

TEST(Lengths, Heterogeneous) {
    EXPECT_EQ(heterogeneous_lengths(5, 1.0), (std::vector<double>{23, 24, 25, 26, 27}));
    EXPECT_EQ(heterogeneous_lengths(5, 0.0), std::vector<double>(5, 25.0));
    for (int d = 1; d <= 10; ++d) {
        const auto l = heterogeneous_lengths(5, d);
        EXPECT_DOUBLE_EQ(std::accumulate(l.begin(), l.end(), 0.0), 125.0);
    }
    // L_1 = 25 - 2 * 12.5 = 0 is rejected.
    EXPECT_THROW(heterogeneous_lengths(5, 12.5), std::invalid_argument);
    EXPECT_THROW(heterogeneous_lengths(1, 1.0), std::invalid_argument);
}

TEST(MemoryLedger, StepsAndExposures) {
    MemoryLedger ledger(3);
    ledger.create(0, 1);
    ledger.create(1, 2);
    EXPECT_EQ(ledger.consume(1, 2), 0u);
    EXPECT_EQ(ledger.consume(0, 5), 4u);
    EXPECT_FALSE(ledger.alive(0));
    EXPECT_TRUE(ledger.ever_created(1));
    EXPECT_FALSE(ledger.ever_created(2));
    ledger.create(2, 3);
    EXPECT_EQ(ledger.alive_qubits(), std::vector<std::size_t>{2});
    ledger.consume_all(4);
    EXPECT_EQ(ledger.exposures(), 5u);
    EXPECT_THROW(ledger.consume(0, 6), std::logic_error);
    EXPECT_THROW(ledger.create(0, 6), std::logic_error);
    EXPECT_THROW(ledger.alive(3), std::out_of_range);
}

TEST(Depolarize, ZeroIsIdentity) {
    Rng rng(4);
    auto s = graph_state(cycle_graph(5));
    const auto before = s.canonical_stabilizers();
    MemoryLedger ledger(5);
    for (std::size_t q = 0; q < 5; ++q) ledger.create(q, 1);
    for (int r = 0; r < 100; ++r) depolarize_round(s, ledger, 0.0, rng);
    EXPECT_EQ(s.canonical_stabilizers(), before);
}

TEST(Depolarize, LeavesZeroWithProbabilityHalfP) {
    Rng rng(5);
    const double p = 0.2;
    const int samples = 1000000;
    MemoryLedger ledger(1);
    ledger.create(0, 1);
    int moved = 0;
    for (int i = 0; i < samples; ++i) {
        StabilizerState s(1);
        depolarize_round(s, ledger, p, rng);
        moved += s.expectation(PauliString::from_text("Z")) == -1;
    }
    const double sd = std::sqrt(p / 2 * (1 - p / 2) / samples);
    EXPECT_NEAR(moved / static_cast<double>(samples), p / 2, 4 * sd);
}

TEST(Depolarize, ErrorFrequencyIsThreeQuartersP) {
    Rng rng(6);
    const double p = 0.1;
    const int samples = 1000000;
    int errors = 0;
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < samples; ++i) {
        const auto l = sample_depolarizing_letter(p, rng);
        errors += l != PauliLetter::I;
        ++counts[static_cast<int>(l)];
    }
    const double q = 0.75 * p;
    EXPECT_NEAR(errors / static_cast<double>(samples), q, 4 * std::sqrt(q * (1 - q) / samples));
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(counts[k], samples * p / 4, 4 * std::sqrt(samples * p / 4));
}

TEST(Depolarize, BellPairFidelity) {
    // Both halves stored t rounds: F = (1 + 3 (1-p)^(2t)) / 4.
    Rng rng(7);
    const double p = 0.1;
    const int t = 3;
    const int samples = 200000;
    StabilizerState bell(2);
    bell.h(0);
    bell.cx(0, 1);
    MemoryLedger ledger(2);
    ledger.create(0, 1);
    ledger.create(1, 1);
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        auto s = bell;
        for (int r = 0; r < t; ++r) depolarize_round(s, ledger, p, rng);
        sum += overlap_sq(s, bell);
    }
    const double want = (1 + 3 * std::pow(1 - p, 2 * t)) / 4;
    const double sd = std::sqrt(want * (1 - want) / samples);
    EXPECT_NEAR(sum / samples, want, 4 * sd);
}

TEST(NoiseTape, MatchesPerRoundRate) {
    const double p = 0.2;
    const double q = 0.75 * p;
    NoiseTape tape(p, Rng(8));
    const int rounds = 1000000;
    int errors = 0;
    int counts[4] = {0, 0, 0, 0};
    for (int r = 1; r <= rounds; ++r) {
        const auto l = tape.accumulate(r, r + 1);
        errors += l != PauliLetter::I;
        ++counts[static_cast<int>(l)];
    }
    EXPECT_NEAR(errors / static_cast<double>(rounds), q, 4 * std::sqrt(q * (1 - q) / rounds));
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(counts[k], rounds * q / 3, 4 * std::sqrt(rounds * q / 3));
}

TEST(NoiseTape, IntervalProductAndOrdering) {
    // A k-round interval is non-identity with probability 3/4 (1 - (1-p)^k).
    const double p = 0.1;
    const int k = 5;
    const int samples = 200000;
    int errors = 0;
    for (int i = 0; i < samples; ++i) {
        NoiseTape tape(p, stream(9, 0, i, 0));
        errors += tape.accumulate(3, 3 + k) != PauliLetter::I;
    }
    const double want = 0.75 * (1 - std::pow(1 - p, k));
    EXPECT_NEAR(errors / static_cast<double>(samples), want, 4 * std::sqrt(want * (1 - want) / samples));

    NoiseTape tape(p, Rng(1));
    tape.accumulate(5, 9);
    EXPECT_THROW(tape.accumulate(4, 6), std::logic_error);
    EXPECT_EQ(NoiseTape(0.0, Rng(1)).accumulate(1, 1000), PauliLetter::I);
}

}  // namespace
}  // namespace piecemaker
