#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <pht/complex.hpp>
#include <pht/persistence.hpp>

#include "support/generators.hpp"

using namespace pht;

namespace {
const char* kTriangle = R"({"dim":2,"vertices":[[0,0],[1,0],[0,1]],
  "simplices":[[0,1,2],[0],[1],[2],[0,1],[1,2],[0,2]]})";

std::string expect_error(const std::string& text) {
  try {
    parse_complex(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST(Parse, SmallestValidInput) {
  const Complex k = parse_complex(R"({"dim":2,"vertices":[[0,0]],"simplices":[[0]]})");
  EXPECT_EQ(k.vertices().size(), 1u);
  EXPECT_EQ(k.size(), 1u);
}

TEST(Parse, FullTriangleCanonicalOrder) {
  const Complex k = parse_complex(kTriangle);
  ASSERT_EQ(k.size(), 7u);
  // by dimension, then lexicographic
  EXPECT_EQ(k.simplex(0).vertex_ids, std::vector<int>{0});
  EXPECT_EQ(k.simplex(3).vertex_ids, (std::vector<int>{0, 1}));
  EXPECT_EQ(k.simplex(4).vertex_ids, (std::vector<int>{0, 2}));
  EXPECT_EQ(k.simplex(6).vertex_ids, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(k.max_dim(), 2);
}

TEST(Parse, UnsortedVertexIdsAreSorted) {
  const Complex k = parse_complex(R"({"dim":2,"vertices":[[0,0],[1,0]],"simplices":[[1],[0],[1,0]]})");
  EXPECT_EQ(k.simplex(2).vertex_ids, (std::vector<int>{0, 1}));
}

TEST(Parse, Errors) {
  EXPECT_NE(expect_error(R"({"dim":2,"vertices":[[0,0],[1,0],[0,1]],
    "simplices":[[0],[1],[2],[0,1],[1,2],[0,1,2]]})").find("missing face"), std::string::npos);
  EXPECT_NE(expect_error(R"({"dim":2,"vertices":[[0,0]],"simplices":[[0],[0]]})").find("duplicate simplex"),
            std::string::npos);
  EXPECT_NE(expect_error(R"({"dim":2,"vertices":[[0,0]],"simplices":[[0],[3]]})").find("index out of range"),
            std::string::npos);
  EXPECT_NE(expect_error(R"({"dim":2,"vertices":[[0,0,1]],"simplices":[[0]]})").find("arity"), std::string::npos);
  EXPECT_NE(expect_error(R"({"dim":2,"vertices":[[0,0]],"simplices":[[0]])").find("malformed syntax"),
            std::string::npos);
  EXPECT_NE(expect_error(R"({"dim":2,"vertices":[],"simplices":[]})").find("empty complex"), std::string::npos);
  EXPECT_NE(expect_error(R"([1,2,3])").find("malformed syntax"), std::string::npos);
}

TEST(Parse, DisconnectedAccepted) {
  const Complex k = parse_complex(R"({"dim":2,"vertices":[[0,0],[5,5]],"simplices":[[0],[1]]})");
  EXPECT_EQ(betti_numbers(k)[0], 2);
}

TEST(Parse, RoundTripIsIdentity) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Complex k = gen::random_complex(rng, 6);
    const std::string once = serialize_complex(k);
    const Complex again = parse_complex(once);
    EXPECT_EQ(serialize_complex(again), once);
    EXPECT_EQ(again.vertices().size(), k.vertices().size());
    for (std::size_t i = 0; i < k.vertices().size(); ++i) EXPECT_EQ(again.vertices()[i].coords, k.vertices()[i].coords);
  }
}

TEST(Radius, Examples) {
  EXPECT_EQ(enclosing_radius(parse_complex(R"({"dim":2,"vertices":[[3,4]],"simplices":[[0]]})")), 5.0);
  EXPECT_DOUBLE_EQ(enclosing_radius(parse_complex(R"({"dim":2,"vertices":[[1,1],[-1,-1]],"simplices":[[0],[1]]})")),
                   std::sqrt(2.0));
  EXPECT_EQ(enclosing_radius(parse_complex(R"({"dim":2,"vertices":[[0,0]],"simplices":[[0]]})")), 0.0);
}

TEST(Radius, PermutationInvariant) {
  const Complex a = parse_complex(R"({"dim":2,"vertices":[[1,2],[-3,0.5],[0,0]],"simplices":[[0],[1],[2]]})");
  const Complex b = parse_complex(R"({"dim":2,"vertices":[[0,0],[1,2],[-3,0.5]],"simplices":[[0],[1],[2]]})");
  EXPECT_EQ(enclosing_radius(a), enclosing_radius(b));
}

TEST(Betti, Examples) {
  const Complex hollow = parse_complex(R"({"dim":2,"vertices":[[0,0],[1,0],[0,1]],
    "simplices":[[0],[1],[2],[0,1],[1,2],[0,2]]})");
  EXPECT_EQ(betti_numbers(hollow), (std::vector<int>{1, 1}));
  const Complex two = parse_complex(R"({"dim":2,"vertices":[[0,0],[1,0]],"simplices":[[0],[1]]})");
  EXPECT_EQ(betti_numbers(two), (std::vector<int>{2, 0}));
  EXPECT_EQ(betti_numbers(parse_complex(kTriangle)), (std::vector<int>{1, 0}));
}

TEST(Betti, TetrahedronBoundaryIsASphere) {
  const Complex k = parse_complex(R"({"dim":3,"vertices":[[1,1,1],[1,-1,-1],[-1,1,-1],[-1,-1,1]],
    "simplices":[[0],[1],[2],[3],[0,1],[0,2],[0,3],[1,2],[1,3],[2,3],[0,1,2],[0,1,3],[0,2,3],[1,2,3]]})");
  EXPECT_EQ(betti_numbers(k), (std::vector<int>{1, 0, 1, 0}));
}

TEST(Betti, MatchesEssentialCountsAtAnyDirection) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  for (int t = 0; t < 30; ++t) {
    const Complex k = gen::random_complex(rng, 7, 0.5, 0.5);
    const auto betti = betti_numbers(k);
    const Diagram d = compute_persistence(k, Direction::angle(ang(rng)));
    for (std::size_t dim = 0; dim < betti.size(); ++dim) EXPECT_EQ(d.essential_count(static_cast<int>(dim)), betti[dim]);
  }
}

TEST(DirectionType, UnitNormEnforced) {
  EXPECT_NO_THROW(Direction::unit({0.6, 0.8, 0.0}));
  EXPECT_THROW(Direction::unit({1.0, 1.0, 0.0}), InputError);
}
