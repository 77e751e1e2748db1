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
#include "piecemaker/pauli.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

namespace piecemaker {
namespace {

TEST(PauliString, ParsesAndRenders) {
    EXPECT_EQ(PauliString::from_text("+XZI").str(), "+XZI");
    EXPECT_EQ(PauliString::from_text("-Y_Z").str(), "-YIZ");
    EXPECT_EQ(PauliString::from_text("iXX").str(), "+iXX");
    EXPECT_EQ(PauliString::from_text("-iZ").str(), "-iZ");
    EXPECT_THROW(PauliString::from_text("XQ"), std::invalid_argument);
}

TEST(PauliString, SingleQubitProducts) {
    // XY = iZ, YX = -iZ, ZX = iY
    auto x = PauliString::from_text("X");
    auto y = PauliString::from_text("Y");
    auto z = PauliString::from_text("Z");
    EXPECT_EQ((x * y).str(), "+iZ");
    EXPECT_EQ((y * x).str(), "-iZ");
    EXPECT_EQ((z * x).str(), "+iY");
    EXPECT_EQ((x * x).str(), "+I");
    EXPECT_EQ((y * y).str(), "+I");
}

TEST(PauliString, CommutationIsSymplectic) {
    EXPECT_TRUE(PauliString::from_text("XX").commutes_with(PauliString::from_text("ZZ")));
    EXPECT_FALSE(PauliString::from_text("XI").commutes_with(PauliString::from_text("ZZ")));
    EXPECT_TRUE(PauliString::from_text("XYZ").commutes_with(PauliString::from_text("XYZ")));
    EXPECT_FALSE(PauliString::from_text("YII").commutes_with(PauliString::from_text("XII")));
}

TEST(PauliString, WideStringsCrossWordBoundary) {
    PauliString a(130);
    PauliString b(130);
    a.set_letter(0, PauliLetter::X);
    a.set_letter(129, PauliLetter::Z);
    b.set_letter(129, PauliLetter::X);
    EXPECT_FALSE(a.commutes_with(b));
    EXPECT_EQ(a.weight(), 2u);
    auto c = a * b;
    EXPECT_EQ(c.letter(129), PauliLetter::Y);
    EXPECT_FALSE(c.is_hermitian());
}

TEST(PauliString, SignHelpers) {
    auto p = PauliString::from_text("ZZ");
    EXPECT_FALSE(p.is_negative());
    p.negate();
    EXPECT_TRUE(p.is_negative());
    EXPECT_TRUE(p.is_hermitian());
    EXPECT_FALSE(p.is_identity_letters());
    EXPECT_TRUE(PauliString(3).is_identity_letters());
}

}  // namespace
}  // namespace piecemaker
