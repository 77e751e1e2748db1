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
#include "piecemaker/stabilizer_state.hpp"

#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "dense.hpp"

namespace piecemaker {
namespace {

using testing::DenseState;

std::vector<std::string> gens(const StabilizerState& s) {
    std::vector<std::string> out;
    for (const auto& g : s.canonical_stabilizers()) out.push_back(g.str());
    return out;
}

std::vector<std::string> canonical(std::vector<std::string> texts) {
    std::vector<PauliString> ps;
    for (const auto& t : texts) ps.push_back(PauliString::from_text(t));
    return gens(StabilizerState::from_generators(ps));
}

TEST(StabilizerState, NewStateIsAllZeros) {
    EXPECT_EQ(gens(StabilizerState(1)), std::vector<std::string>{"+Z"});
    EXPECT_EQ(gens(StabilizerState(2)), canonical({"+ZI", "+IZ"}));
    EXPECT_THROW(StabilizerState(0), std::invalid_argument);
    StabilizerState s(1);
    s.h(0);
    EXPECT_EQ(gens(s), std::vector<std::string>{"+X"});
}

TEST(StabilizerState, CliffordConjugationExamples) {
    StabilizerState bell = StabilizerState::from_generators(
        std::vector<PauliString>{PauliString::from_text("XI"), PauliString::from_text("IZ")});
    bell.cx(0, 1);
    EXPECT_EQ(gens(bell), canonical({"+XX", "+ZZ"}));

    StabilizerState pair = StabilizerState::from_generators(
        std::vector<PauliString>{PauliString::from_text("XI"), PauliString::from_text("IX")});
    pair.cz(0, 1);
    EXPECT_EQ(gens(pair), canonical({"+XZ", "+ZX"}));

    StabilizerState one(1);
    one.x(0);
    EXPECT_EQ(gens(one), std::vector<std::string>{"-Z"});
}

TEST(StabilizerState, RejectsBadTargets) {
    StabilizerState s(2);
    EXPECT_THROW(s.h(2), std::out_of_range);
    EXPECT_THROW(s.cx(1, 1), std::invalid_argument);
    const std::vector<std::size_t> three = {0, 1, 0};
    EXPECT_THROW(s.apply(Gate::CZ, three), std::invalid_argument);
}

TEST(StabilizerState, SingleQubitGatesMatchDense) {
    // Each gate on each of the six single-qubit stabilizer states.
    for (Gate prep : {Gate::X, Gate::H, Gate::S}) {
        for (Gate g : {Gate::H, Gate::S, Gate::S_DAG, Gate::SQRT_X, Gate::SQRT_X_DAG, Gate::X, Gate::Y, Gate::Z}) {
            for (bool flip : {false, true}) {
                StabilizerState s(1);
                DenseState d(1);
                if (flip) {
                    s.x(0);
                    d.apply(Gate::X, 0);
                }
                s.h(0);
                d.apply(Gate::H, 0);
                s.apply(prep, 0);
                d.apply(prep, 0);
                s.apply(g, 0);
                d.apply(g, 0);
                EXPECT_NEAR(testing::overlap_sq(DenseState::from_stabilizer(s), d), 1.0, 1e-12)
                    << gate_name(prep) << " then " << gate_name(g);
            }
        }
    }
}

TEST(StabilizerState, MeasurementExamples) {
    Rng rng(1);
    StabilizerState zero(1);
    auto r = zero.measure(PauliString::from_text("Z"), rng);
    EXPECT_TRUE(r.deterministic);
    EXPECT_EQ(r.outcome, +1);

    int plus = 0;
    for (int i = 0; i < 2000; ++i) {
        StabilizerState s(1);
        auto m = s.measure_x(0, rng);
        EXPECT_FALSE(m.deterministic);
        EXPECT_EQ(gens(s), std::vector<std::string>{m.outcome > 0 ? "+X" : "-X"});
        plus += m.outcome > 0;
    }
    EXPECT_NEAR(plus, 1000, 150);

    EXPECT_THROW(zero.measure(PauliString::from_text("iZ"), rng), std::invalid_argument);
    EXPECT_THROW(zero.measure(PauliString::from_text("ZZ"), rng), std::invalid_argument);
}

TEST(StabilizerState, ForcedOutcomes) {
    Rng rng(2);
    StabilizerState s(1);
    EXPECT_EQ(s.measure_x(0, rng, -1).outcome, -1);
    EXPECT_EQ(gens(s), std::vector<std::string>{"-X"});
    EXPECT_THROW(s.measure_x(0, rng, +1), std::logic_error);
    EXPECT_EQ(s.measure_x(0, rng, -1).outcome, -1);
}

TEST(StabilizerState, GraphStateGenerators) {
    EXPECT_EQ(gens(graph_state(path_graph(3))), canonical({"+XZI", "+ZXZ", "+IZX"}));
    EXPECT_EQ(gens(graph_state(Graph(2))), canonical({"+XI", "+IX"}));
    EXPECT_EQ(gens(graph_state(star_graph(3, 0))), canonical({"+XZZ", "+ZXI", "+ZIX"}));
}

TEST(StabilizerState, GeneratorsMeasureDeterministically) {
    Rng rng(3);
    for (const Graph& g : {path_graph(5), cycle_graph(6), complete_graph(4), star_graph(5, 2)}) {
        auto s = graph_state(g);
        const auto before = gens(s);
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            PauliString k(g.num_vertices());
            k.set_letter(v, PauliLetter::X);
            for (auto u : g.neighbors(v)) k.set_letter(u, PauliLetter::Z);
            auto r = s.measure(k, rng);
            EXPECT_TRUE(r.deterministic);
            EXPECT_EQ(r.outcome, +1);
        }
        EXPECT_EQ(gens(s), before);
    }
}

TEST(StabilizerState, OverlapExamples) {
    StabilizerState zero(1);
    StabilizerState plus(1);
    plus.h(0);
    EXPECT_EQ(overlap_sq(zero, zero), 1.0);
    EXPECT_EQ(overlap_sq(zero, plus), 0.5);

    auto ghz = StabilizerState::from_generators(std::vector<PauliString>{
        PauliString::from_text("XXX"), PauliString::from_text("ZZI"), PauliString::from_text("IZZ")});
    auto flipped = ghz;
    flipped.x(0);
    EXPECT_EQ(overlap_sq(ghz, flipped), 0.0);

    auto bell = StabilizerState::from_generators(
        std::vector<PauliString>{PauliString::from_text("XX"), PauliString::from_text("ZZ")});
    auto xx = bell;
    xx.x(0);
    xx.x(1);
    EXPECT_EQ(overlap_sq(bell, xx), 1.0);

    // Dense confirmation of the same values.
    auto dghz = testing::dense_ghz(3);
    auto dflip = dghz;
    dflip.apply(Gate::X, 0);
    EXPECT_NEAR(testing::overlap_sq(dghz, dflip), 0.0, 1e-12);

    EXPECT_THROW(overlap_sq(StabilizerState(1), StabilizerState(2)), std::invalid_argument);
}

TEST(StabilizerState, OverlapWithPauliImageIsZeroOrOne) {
    Rng rng(8);
    auto s = graph_state(cycle_graph(5));
    for (int t = 0; t < 200; ++t) {
        PauliString p(5);
        for (std::size_t q = 0; q < 5; ++q) p.set_letter(q, static_cast<PauliLetter>(rng.below(4)));
        auto moved = s;
        moved.apply_pauli(p);
        const double o = overlap_sq(s, moved);
        const auto e = s.expectation(p);
        // P|s> = |s> up to phase iff +-P is in the stabilizer group.
        EXPECT_EQ(o, e.has_value() ? 1.0 : 0.0) << p.str();
    }
}

// Random Clifford + measurement circuits, compared with the dense oracle
// after every operation.
TEST(StabilizerState, RandomCircuitsMatchDense) {
    Rng rng(12345);
    const Gate one[] = {Gate::H, Gate::S, Gate::S_DAG, Gate::SQRT_X, Gate::SQRT_X_DAG, Gate::X, Gate::Y, Gate::Z};
    for (int circuit = 0; circuit < 300; ++circuit) {
        const std::size_t n = 1 + rng.below(4);
        StabilizerState s(n);
        DenseState d(n);
        for (int step = 0; step < 30; ++step) {
            const auto kind = rng.below(10);
            if (kind < 6 || n == 1) {
                const Gate g = one[rng.below(8)];
                const auto q = rng.below(n);
                s.apply(g, q);
                d.apply(g, q);
            } else if (kind < 9) {
                const auto a = rng.below(n);
                auto b = rng.below(n - 1);
                if (b >= a) ++b;
                const Gate g = kind == 8 ? Gate::CZ : Gate::CX;
                s.apply(g, a, b);
                d.apply(g, a, b);
            } else {
                PauliString p(n);
                while (p.is_identity_letters()) {
                    for (std::size_t q = 0; q < n; ++q) p.set_letter(q, static_cast<PauliLetter>(rng.below(4)));
                }
                if (rng.below(2)) p.negate();
                const double ev = d.expectation(p);
                const auto r = s.measure(p, rng);
                if (r.deterministic) {
                    ASSERT_NEAR(ev, r.outcome, 1e-9) << p.str();
                } else {
                    ASSERT_NEAR(ev, 0.0, 1e-9) << p.str();
                }
                d.project(p, r.outcome);
            }
            ASSERT_TRUE(s.is_valid());
        }
        ASSERT_NEAR(testing::overlap_sq(DenseState::from_stabilizer(s), d), 1.0, 1e-9) << "circuit " << circuit;

        // Overlap with a second random state must agree exactly.
        StabilizerState t(n);
        DenseState e(n);
        for (int step = 0; step < 10; ++step) {
            const Gate g = one[rng.below(8)];
            const auto q = rng.below(n);
            t.apply(g, q);
            e.apply(g, q);
            if (n > 1) {
                const auto a = rng.below(n);
                const auto b = (a + 1) % n;
                t.cx(a, b);
                e.apply(Gate::CX, a, b);
            }
        }
        ASSERT_NEAR(overlap_sq(s, t), testing::overlap_sq(d, e), 1e-12) << "circuit " << circuit;
    }
}

TEST(StabilizerState, ExpectationMatchesDense) {
    Rng rng(77);
    auto s = graph_state(path_graph(4));
    s.s(1);
    s.sqrt_x(3);
    auto d = DenseState::from_stabilizer(s);
    for (int t = 0; t < 256; ++t) {
        PauliString p(4);
        for (std::size_t q = 0; q < 4; ++q) p.set_letter(q, static_cast<PauliLetter>((t >> (2 * q)) & 3));
        const auto e = s.expectation(p);
        EXPECT_NEAR(d.expectation(p), e ? *e : 0.0, 1e-12) << p.str();
    }
}

TEST(StabilizerState, FromGeneratorsValidates) {
    EXPECT_THROW(StabilizerState::from_generators(
                     std::vector<PauliString>{PauliString::from_text("XI"), PauliString::from_text("ZI")}),
                 std::invalid_argument);
    EXPECT_THROW(StabilizerState::from_generators(
                     std::vector<PauliString>{PauliString::from_text("XX"), PauliString::from_text("XX")}),
                 std::invalid_argument);
    auto s = StabilizerState::from_generators(
        std::vector<PauliString>{PauliString::from_text("-XX"), PauliString::from_text("ZZ")});
    EXPECT_TRUE(s.is_valid());
    EXPECT_EQ(s.expectation(PauliString::from_text("XX")), -1);
    EXPECT_EQ(s.expectation(PauliString::from_text("YY")), +1);
}

TEST(StabilizerState, SubsystemOfProductState) {
    Rng rng(6);
    // Bell pair on (0, 2), |-> on 1.
    StabilizerState s(3);
    s.h(0);
    s.cx(0, 2);
    s.x(1);
    s.h(1);
    const std::vector<std::size_t> pair = {0, 2};
    const auto sub = s.subsystem(pair);
    EXPECT_EQ(gens(sub), canonical({"+XX", "+ZZ"}));
    const std::vector<std::size_t> single = {1};
    EXPECT_EQ(gens(s.subsystem(single)), std::vector<std::string>{"-X"});
    const std::vector<std::size_t> half = {0};
    EXPECT_THROW(s.subsystem(half), std::invalid_argument);
}

TEST(StabilizerState, OverlapLog2) {
    auto a = graph_state(Graph(4));
    StabilizerState b(4);
    EXPECT_EQ(overlap_log2(a, b), 4u);
    EXPECT_EQ(overlap_sq(a, b), 1.0 / 16);
    b.h(0);
    b.x(1);
    EXPECT_EQ(overlap_log2(a, b), 3u);
}

}  // namespace
}  // namespace piecemaker
