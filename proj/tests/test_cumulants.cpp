#include <doctest.h>

#include <random>
#include <vector>

#include "acfree/cumulants.hpp"
#include "test_support.hpp"

using namespace acfree;
using acfree::testing::draw;
using acfree::testing::random_rational;

namespace {

std::vector<Rational> rationals(std::initializer_list<long> values) {
  std::vector<Rational> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

CumulantSequence random_boolean_sequence(std::mt19937& rng, int order) {
  std::vector<Rational> values;
  for (int k = 1; k <= order; ++k) values.push_back(random_rational(rng));
  return CumulantSequence::boolean(std::move(values));
}

FreePairModel random_model(std::mt19937& rng, int order) {
  return FreePairModel(random_boolean_sequence(rng, order), random_boolean_sequence(rng, order));
}

}  // namespace

TEST_CASE("moments <-> boolean cumulants on pinned sequences") {
  // phi(a^n) = 2^(n-1): all Boolean cumulants equal 1
  MomentSequence doubling{rationals({1, 2, 4, 8, 16, 32})};
  CHECK(moments_to_boolean(doubling).values == rationals({1, 1, 1, 1, 1, 1}));

  // symmetric Bernoulli: only beta_2 survives
  MomentSequence bernoulli{rationals({0, 1, 0, 1, 0, 1})};
  CHECK(moments_to_boolean(bernoulli).values == rationals({0, 1, 0, 0, 0, 0}));

  // beta_1 = m_1, beta_2 = m_2 - m_1^2
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    MomentSequence m{{random_rational(rng), random_rational(rng)}};
    const auto beta = moments_to_boolean(m);
    CHECK(beta.at(1) == m.moment(1));
    CHECK(beta.at(2) == m.moment(2) - m.moment(1) * m.moment(1));
  }
}

TEST_CASE("moments <-> free cumulants on pinned sequences") {
  // point mass at t: kappa_1 = t, the rest vanish
  const Rational t(3, 2);
  std::vector<Rational> powers;
  Rational p = 1;
  for (int k = 1; k <= 6; ++k) powers.push_back(p *= t);
  const auto kappa = moments_to_free(MomentSequence{powers});
  CHECK(kappa.at(1) == t);
  for (int k = 2; k <= 6; ++k) CHECK(kappa.at(k) == 0);

  // standard semicircle moments are the aerated Catalan numbers
  const auto semicircle = moments_to_free(MomentSequence{rationals({0, 1, 0, 2, 0, 5})});
  CHECK(semicircle.values == rationals({0, 1, 0, 0, 0, 0}));

  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    MomentSequence m{{random_rational(rng), random_rational(rng)}};
    CHECK(moments_to_free(m).at(2) == m.moment(2) - m.moment(1) * m.moment(1));
  }
}

TEST_CASE("conversion roundtrips to order 10") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> values;
    for (int k = 0; k < 10; ++k) values.push_back(random_rational(rng));
    const MomentSequence m{values};
    CHECK(boolean_to_moments(moments_to_boolean(m)).values == m.values);
    CHECK(free_to_moments(moments_to_free(m)).values == m.values);
    const auto beta = CumulantSequence::boolean(values);
    CHECK(moments_to_boolean(boolean_to_moments(beta)).values == beta.values);
    const auto kappa = CumulantSequence::free_cumulants(values);
    CHECK(moments_to_free(free_to_moments(kappa)).values == kappa.values);
  }
}

TEST_CASE("boolean cumulants from free cumulants") {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> values;
    for (int k = 0; k < 8; ++k) values.push_back(random_rational(rng));
    const auto kappa = CumulantSequence::free_cumulants(values);
    const auto direct = boolean_from_free(kappa);
    CHECK(direct.at(1) == kappa.at(1));
    CHECK(direct.at(2) == kappa.at(2));
    CHECK(direct.at(3) == kappa.at(3) + kappa.at(1) * kappa.at(2));
    // must match the route through moments
    CHECK(direct.values == moments_to_boolean(free_to_moments(kappa)).values);
  }
}

TEST_CASE("joint Boolean cumulants of free words") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 15; ++trial) {
    const FreePairModel model = random_model(rng, 6);
    auto ba = [&](int k) { return model.beta('a', k); };
    auto bb = [&](int k) { return model.beta('b', k); };

    // the six-letter showcase word and its four-partition expansion
    const Rational expected = ba(3) * bb(1) * bb(1) * bb(1) + ba(3) * bb(1) * bb(2) +
                              ba(2) * ba(1) * bb(3) + ba(2) * ba(1) * bb(2) * bb(1);
    CHECK(joint_boolean_vnrp(model, Word("ababba")) == expected);

    // single letters
    CHECK(joint_boolean_vnrp(model, Word("a")) == ba(1));
    CHECK(joint_boolean_vnrp(model, Word("aaa")) == ba(3));

    // mixed cumulants vanish when the endpoint letters differ
    CHECK(joint_boolean_vnrp(model, Word("ab")) == 0);
    CHECK(joint_boolean_vnrp(model, Word("baaaba")) == 0);
  }
}

TEST_CASE("the two moment paths agree on all short words") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const FreePairModel model = random_model(rng, 6);
    for (int length = 1; length <= 6; ++length) {
      for (std::uint32_t mask = 0; mask < (1u << length); ++mask) {
        std::string letters;
        for (int i = 0; i < length; ++i) letters.push_back((mask >> i) & 1 ? 'b' : 'a');
        const Word w(letters);
        CHECK(joint_moment_free(model, w, MomentPath::vnrp) ==
              joint_moment_free(model, w, MomentPath::free_cumulant));
      }
    }
  }
}

TEST_CASE("moments of words factor over freeness in simple cases") {
  std::mt19937 rng(5);
  const FreePairModel model = random_model(rng, 8);
  CHECK(joint_moment_free(model, Word("ab"), MomentPath::vnrp) ==
        model.beta('a', 1) * model.beta('b', 1));
  // single-letter words reduce to the one-variable conversion
  const auto moments = boolean_to_moments(model.beta_a);
  for (int n = 1; n <= 8; ++n)
    CHECK(joint_moment_free(model, Word(std::string(static_cast<size_t>(n), 'a')),
                            MomentPath::vnrp) == moments.moment(n));
}

TEST_CASE("four-colour joint evaluation stays consistent with two colours") {
  std::mt19937 rng(41);
  const FreePairModel model = random_model(rng, 6);
  // moving the two sequences onto colours 3 and 4 must not change the value
  std::vector<CumulantSequence> four = {model.beta_b, model.beta_a, model.beta_a,
                                        model.beta_b};
  Coloring two{2, {1, 2, 2, 1}};
  Coloring relabelled{4, {3, 4, 4, 3}};  // same letter pattern (a,b,b,a)
  CHECK(joint_boolean_colored(four, relabelled) ==
        joint_boolean_colored({model.beta_a, model.beta_b}, two));
  // four genuinely distinct letters: no partition can join the endpoints
  Coloring distinct{4, {3, 4, 2, 1}};
  CHECK(joint_boolean_colored(four, distinct) == 0);
  Coloring five{5, {1, 2, 2, 1}};
  CHECK_THROWS_AS(joint_boolean_colored(four, five), std::invalid_argument);
}

TEST_CASE("products as arguments") {
  std::mt19937 rng(61);
  const FreePairModel model = random_model(rng, 8);
  auto eval_a = [&](int lo, int hi) {
    return joint_boolean_vnrp(model, Word(std::string(static_cast<size_t>(hi - lo + 1), 'a')));
  };

  // all groups singletons: only the full interval contributes
  CHECK(boolean_product_expansion({1, 1, 1}, eval_a) == model.beta('a', 3));

  // beta_1(a.a) = beta_2(a,a) + beta_1(a)^2
  CHECK(boolean_product_expansion({2}, eval_a) ==
        model.beta('a', 2) + model.beta('a', 1) * model.beta('a', 1));

  // the three-group skeleton of beta_3(ab, ab, ba): only three of the eight
  // interval terms survive the endpoint-vanishing rule
  const std::string atoms = "ababba";
  auto eval_w = [&](int lo, int hi) {
    return joint_boolean_vnrp(
        model, Word(atoms.substr(static_cast<size_t>(lo - 1), static_cast<size_t>(hi - lo + 1))));
  };
  const Rational total = boolean_product_expansion({2, 2, 2}, eval_w);
  auto jb = [&](const char* w) { return joint_boolean_vnrp(model, Word(w)); };
  CHECK(total == jb("a") * jb("babb") * jb("a") + jb("aba") * jb("bb") * jb("a") + jb("ababba"));
}

TEST_CASE("interval join condition equals the no-cut-at-boundary criterion") {
  for (int m = 2; m <= 4; ++m) {
    std::mt19937 rng(100 + m);
    std::vector<int> groups;
    int n = 0;
    for (int g = 0; g < m; ++g) {
      groups.push_back(1 + draw(rng, 2));
      n += groups.back();
    }
    std::vector<Partition::Block> sigma_blocks;
    int next = 1;
    for (int size : groups) {
      Partition::Block block;
      for (int i = 0; i < size; ++i) block.push_back(next++);
      sigma_blocks.push_back(std::move(block));
    }
    const Partition sigma(n, sigma_blocks);
    std::vector<char> boundary(static_cast<size_t>(n) + 1, 0);
    int at = 0;
    for (int size : groups) boundary[static_cast<size_t>(at += size)] = 1;
    for (const Partition& pi : enumerate_interval(n)) {
      bool no_boundary_cut = true;
      for (const auto& block : pi.blocks())
        if (block.back() != n && boundary[static_cast<size_t>(block.back())])
          no_boundary_cut = false;
      CHECK((join(pi, sigma) == Partition::full(n)) == no_boundary_cut);
    }
  }
}

TEST_CASE("unit rule") {
  CHECK(unit_rule(1, 2).vanishes);
  CHECK(unit_rule(2, 2).vanishes);
  CHECK(unit_rule(3, 3).vanishes);
  const auto middle = unit_rule(2, 3);
  CHECK_FALSE(middle.vanishes);
  CHECK(middle.dropped_position == 2);
  CHECK_THROWS_AS(unit_rule(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(unit_rule(1, 1), std::invalid_argument);
}

TEST_CASE("unit rule agrees with evaluation against a unit letter") {
  std::mt19937 rng(77);
  // b is the unit: beta_1 = 1 and all higher Boolean cumulants vanish
  CumulantSequence unit = CumulantSequence::boolean(rationals({1, 0, 0, 0, 0, 0}));
  const FreePairModel model(random_boolean_sequence(rng, 6), unit);
  for (int length = 2; length <= 6; ++length) {
    for (std::uint32_t mask = 0; mask < (1u << length); ++mask) {
      std::string letters;
      int a_count = 0;
      for (int i = 0; i < length; ++i) {
        const bool is_b = (mask >> i) & 1;
        letters.push_back(is_b ? 'b' : 'a');
        if (!is_b) ++a_count;
      }
      const Rational value = joint_boolean_vnrp(model, Word(letters));
      if (letters.front() == 'b' || letters.back() == 'b') {
        CHECK(value == 0);  // ends in a unit: vanishes
      } else {
        CHECK(value == model.beta('a', a_count));  // interior units drop out
      }
    }
  }
}

TEST_CASE("boolean cumulants of a sum") {
  std::mt19937 rng(314);
  for (int trial = 0; trial < 6; ++trial) {
    const FreePairModel model = random_model(rng, 8);
    const auto sum = boolean_cumulants_of_sum(model, 8);
    CHECK(sum.at(1) == model.beta('a', 1) + model.beta('b', 1));
    CHECK(sum.at(2) == model.beta('a', 2) + model.beta('b', 2));

    // independent route: free cumulants add across free summands
    const auto ka = model.free_a();
    const auto kb = model.free_b();
    std::vector<Rational> k_sum;
    for (int n = 1; n <= 8; ++n) k_sum.push_back(ka.at(n) + kb.at(n));
    const auto expected =
        moments_to_boolean(free_to_moments(CumulantSequence::free_cumulants(k_sum)));
    CHECK(sum.values == expected.values);
  }

  // all-ones cumulants count unique-outer-block partitions twice
  CumulantSequence ones = CumulantSequence::boolean(rationals({1, 1, 1}));
  const FreePairModel all_ones(ones, ones);
  CHECK(boolean_cumulants_of_sum(all_ones, 3).at(3) == 4);
}

TEST_CASE("doubling a distribution: free convolution in Boolean terms") {
  std::mt19937 rng(2020);
  for (int trial = 0; trial < 6; ++trial) {
    const auto mu = random_boolean_sequence(rng, 8);
    // free convolution of mu with itself, through additivity of free cumulants
    const auto k_mu = moments_to_free(boolean_to_moments(mu));
    std::vector<Rational> k_doubled;
    for (int n = 1; n <= 8; ++n) k_doubled.push_back(2 * k_mu.at(n));
    const auto beta_doubled =
        moments_to_boolean(free_to_moments(CumulantSequence::free_cumulants(k_doubled)));
    // equals twice the unique-outer-block sum in the Boolean cumulants of mu
    for (int n = 1; n <= 8; ++n) {
      Rational one_letter = 0;
      for (const auto& term : detail::depth_parity_terms(n).terms) {
        Rational product = 1;
        for (int size : term.even_sizes) product *= mu.at(size);
        for (int size : term.odd_sizes) product *= mu.at(size);
        one_letter += product;
      }
      CHECK(beta_doubled.at(n) == 2 * one_letter);
    }
  }
}

TEST_CASE("free cumulants of a product and the moment cross-check") {
  std::mt19937 rng(999);
  for (int trial = 0; trial < 6; ++trial) {
    const FreePairModel model = random_model(rng, 10);
    const auto ka = model.free_a();
    const auto kb = model.free_b();
    CHECK(free_cumulants_of_product(ka, kb, 1) == ka.at(1) * kb.at(1));
    CHECK(free_cumulants_of_product(ka, kb, 2) ==
          ka.at(2) * kb.at(1) * kb.at(1) + ka.at(1) * ka.at(1) * kb.at(2));

    // moments of (ab)^n via the product formula match the word expansion
    std::vector<Rational> kappa_ab;
    for (int n = 1; n <= 5; ++n) kappa_ab.push_back(free_cumulants_of_product(ka, kb, n));
    const auto product_moments = free_to_moments(CumulantSequence::free_cumulants(kappa_ab));
    for (int n = 1; n <= 5; ++n) {
      std::string letters;
      for (int i = 0; i < n; ++i) letters += "ab";
      CHECK(product_moments.moment(n) ==
            joint_moment_free(model, Word(letters), MomentPath::vnrp));
    }
  }
}
