#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "jacquet/rational.hpp"
#include "jacquet/weight.hpp"

using namespace jacquet;

namespace {
Weight W(std::initializer_list<Rat> xs) { return Weight{std::vector<Rat>(xs)}; }

Rat random_rat(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 6);
  return rat(num(rng), den(rng));
}
}  // namespace

TEST_CASE("rational helpers canonicalize and round-trip") {
  REQUIRE(rat(6, 4) == rat(3, 2));
  REQUIRE(rat(-6, 4) == rat(-3, 2));
  REQUIRE(rat(0, 7) == 0);
  REQUIRE(rat_to_string(rat(3, 2)) == "3/2");
  REQUIRE(rat_to_string(rat(-8, 2)) == "-4");
  REQUIRE(rat_from_string("3/2") == rat(3, 2));
  REQUIRE(rat_from_string("-5") == -5);
  REQUIRE(rat_from_string("0/7") == 0);
  REQUIRE(rat_from_string("6/4") == rat(3, 2));
  REQUIRE(is_integer(rat(4, 2)));
  REQUIRE(!is_integer(rat(1, 2)));
  REQUIRE_THROWS(rat_from_string(""));
  REQUIRE_THROWS(rat_from_string("1/0"));
  REQUIRE_THROWS(rat_from_string("a"));
  REQUIRE_THROWS(rat_from_string("1 /2"));
  for (const char* s : {"7", "-7", "22/7", "-22/7"})
    REQUIRE(rat_to_string(rat_from_string(s)) == s);
}

TEST_CASE("weight arithmetic and evaluation") {
  Weight a = W({rat(1), rat(2)});
  Weight b = W({rat(3), rat(-1)});
  REQUIRE((a + b) == W({rat(4), rat(1)}));
  REQUIRE((a - b) == W({rat(-2), rat(3)}));
  REQUIRE((rat(2) * a) == W({rat(2), rat(4)}));
  REQUIRE(is_zero(a - a));
  REQUIRE(height(W({rat(3, 4)})) == rat(3, 4));
  REQUIRE(height(a) == 3);
  REQUIRE(eval_weight(W({rat(2), rat(3)}), {rat(5), rat(7)}) == 31);
}

TEST_CASE("weight order is lexicographic in the leading coordinate") {
  REQUIRE(weight_compare(W({rat(1), rat(0)}), W({rat(0), rat(5)})) > 0);
  REQUIRE(weight_compare(W({rat(0), rat(5)}), W({rat(1), rat(0)})) < 0);
  REQUIRE(weight_compare(W({rat(1), rat(2)}), W({rat(1), rat(2)})) == 0);
  REQUIRE_THROWS(weight_compare(W({rat(1)}), W({rat(1), rat(2)})));
}

TEST_CASE("weight order properties: trichotomy, antisymmetry, transitivity, translation") {
  std::mt19937 rng(20240811);
  auto rand_w = [&] {
    std::vector<Rat> c;
    for (int i = 0; i < 3; ++i) c.push_back(random_rat(rng));
    return Weight{c};
  };
  for (int iter = 0; iter < 200; ++iter) {
    Weight a = rand_w(), b = rand_w(), c = rand_w();
    int ab = weight_compare(a, b);
    int ba = weight_compare(b, a);
    REQUIRE(ab == -ba);
    REQUIRE((ab == 0) == (a == b));
    if (ab < 0 && weight_compare(b, c) < 0) REQUIRE(weight_compare(a, c) < 0);
    // translation invariance
    REQUIRE(weight_compare(a + c, b + c) == ab);
  }
}

TEST_CASE("lattice membership") {
  REQUIRE(in_lattice(W({rat(2)}), Lattice::twoP));
  REQUIRE(in_lattice(W({rat(2)}), Lattice::twoPplus));
  REQUIRE(in_lattice(W({rat(2)}), Lattice::twoPplusplus));
  REQUIRE(in_lattice(W({rat(0)}), Lattice::twoPplus));
  REQUIRE(!in_lattice(W({rat(0)}), Lattice::twoPplusplus));
  REQUIRE(in_lattice(W({rat(-2)}), Lattice::twoP));
  REQUIRE(!in_lattice(W({rat(-2)}), Lattice::twoPplus));
  REQUIRE(in_lattice(W({rat(1)}), Lattice::P));
  REQUIRE(in_lattice(W({rat(1)}), Lattice::Pplusplus));
  REQUIRE(!in_lattice(W({rat(1)}), Lattice::twoP));
  REQUIRE(!in_lattice(W({rat(3, 2)}), Lattice::P));
  REQUIRE(in_lattice(W({rat(2), rat(0)}), Lattice::twoPplusplus));
  REQUIRE(!in_lattice(W({rat(2), rat(-2)}), Lattice::twoPplus));
  REQUIRE(in_lattice(W({rat(2), rat(-2)}), Lattice::twoP));
}

TEST_CASE("bounded lattice enumeration") {
  auto le3 = enumerate_lattice(1, Lattice::twoPplus, 3);
  REQUIRE(le3 == std::vector<Weight>{W({rat(0)}), W({rat(2)})});
  auto le5 = enumerate_lattice(1, Lattice::twoPplus, 5);
  REQUIRE(le5 == std::vector<Weight>{W({rat(0)}), W({rat(2)}), W({rat(4)})});
  auto pp5 = enumerate_lattice(1, Lattice::twoPplusplus, 5);
  REQUIRE(pp5 == std::vector<Weight>{W({rat(2)}), W({rat(4)})});

  auto p1 = enumerate_lattice(2, Lattice::Pplus, 1);
  REQUIRE(p1 == std::vector<Weight>{W({rat(0), rat(0)}), W({rat(0), rat(1)}), W({rat(1), rat(0)})});

  auto t4 = enumerate_lattice(2, Lattice::twoPplus, 4);
  REQUIRE(t4.size() == 6);
  for (const auto& w : t4) {
    REQUIRE(in_lattice(w, Lattice::twoPplus));
    REQUIRE(height(w) <= 4);
  }
  // ascending and duplicate-free in the total order
  for (size_t i = 0; i + 1 < t4.size(); ++i) REQUIRE(weight_compare(t4[i], t4[i + 1]) < 0);

  REQUIRE(enumerate_lattice(1, Lattice::twoPplusplus, 1).empty());
  REQUIRE_THROWS(enumerate_lattice(1, Lattice::P, 3));
  REQUIRE_THROWS(enumerate_lattice(1, Lattice::twoP, 3));
}

TEST_CASE("lattice fibers of the separating element") {
  using jacquet::detail::lattice_fiber;
  REQUIRE(lattice_fiber({1}, rat(4), Lattice::twoP) == std::vector<Weight>{W({rat(4)})});
  REQUIRE(lattice_fiber({1}, rat(3), Lattice::twoP).empty());
  REQUIRE(lattice_fiber({1}, rat(-2), Lattice::twoP).empty());
  auto f = lattice_fiber({1, 1}, rat(2), Lattice::twoP);
  REQUIRE(f.size() == 2);  // (0,2) and (2,0) collide
  REQUIRE(lattice_fiber({1, 2}, rat(2), Lattice::twoP) == std::vector<Weight>{W({rat(2), rat(0)})});
}

TEST_CASE("separating element for the rank-one eigenvalues") {
  // lambda = (3/4): differences +-3/2 are not even lattice points, any C works.
  std::vector<Weight> eig{W({rat(5, 4)}), W({rat(-1, 4)})};
  REQUIRE(oshima_verify({1}, eig, Lattice::twoP));
  REQUIRE(oshima_constants(eig, Lattice::twoP) == std::vector<long>{1});

  // lambda = (2): difference (4) is a lattice point and must be its own fiber.
  std::vector<Weight> eig2{W({rat(5, 2)}), W({rat(-3, 2)})};
  REQUIRE(oshima_verify({1}, eig2, Lattice::twoP));
  REQUIRE(oshima_constants(eig2, Lattice::twoP) == std::vector<long>{1});
}

TEST_CASE("separating element search rejects colliding choices") {
  // Differences include (2,0) and (0,2); C=(1,1) maps both to 2, and the
  // norm-2 and norm-3 shells are walked in order until (2,3) separates.
  std::vector<Weight> eig{W({rat(2), rat(0)}), W({rat(0), rat(0)}), W({rat(0), rat(2)})};
  REQUIRE(!oshima_verify({1, 1}, eig, Lattice::twoP));
  REQUIRE(!oshima_verify({1, 2}, eig, Lattice::twoP));
  REQUIRE(!oshima_verify({2, 2}, eig, Lattice::twoP));
  REQUIRE(oshima_verify({2, 3}, eig, Lattice::twoP));
  auto c = oshima_constants(eig, Lattice::twoP);
  REQUIRE(c == std::vector<long>{2, 3});
  REQUIRE(oshima_constants(eig, Lattice::twoP) == c);  // deterministic
}
