#include <algorithm>

#include "doctest.h"

#include "wordtensor/dataset.hpp"
#include "wordtensor/group.hpp"
#include "wordtensor/word.hpp"

using namespace wt;

TEST_SUITE_BEGIN("group");

TEST_CASE("builtin groups validate and have documented orders") {
  CHECK(make_builtin_group("Z5").order() == 5);
  CHECK(make_builtin_group("D8").order() == 16);  // D_n has order 2n
  CHECK(make_builtin_group("Q8").order() == 8);
  CHECK(make_builtin_group("M52").order() == 32);
  CHECK(make_builtin_group("SD16").order() == 16);
  CHECK(make_builtin_group("S4").order() == 24);
  CHECK(make_builtin_group("U56").order() == 24);
  CHECK(make_builtin_group("Z4xZ2").order() == 8);
  CHECK_FALSE(make_builtin_group("Q8").is_abelian());
  CHECK(make_builtin_group("Z12").is_abelian());
}

TEST_CASE("quaternion relations") {
  FiniteGroup q8 = make_quaternion8();
  auto idx = [&](const std::string& l) {
    for (int i = 0; i < 8; ++i)
      if (q8.labels()[i] == l) return i;
    return -1;
  };
  int i = idx("i"), j = idx("j"), k = idx("k"), minus1 = idx("-1");
  CHECK(q8.mult(i, i) == minus1);
  CHECK(q8.mult(j, j) == minus1);
  CHECK(q8.mult(k, k) == minus1);
  CHECK(q8.mult(q8.mult(i, j), k) == minus1);  // ijk = -1
}

TEST_CASE("m52 presentation relations") {
  FiniteGroup g = make_m52();
  int a = 1, b = 16;  // indices a^1 b^0 and a^0 b^1
  // a^16 = e via repeated multiplication
  Element x = g.identity();
  for (int t = 0; t < 16; ++t) x = g.mult(x, a);
  CHECK(x == g.identity());
  CHECK(g.mult(b, b) == g.identity());
  // b a b = a^9
  Element bab = g.mult(g.mult(b, a), b);
  Element a9 = g.identity();
  for (int t = 0; t < 9; ++t) a9 = g.mult(a9, a);
  CHECK(bab == a9);
}

TEST_CASE("order bound enforced") {
  CHECK_THROWS(make_builtin_group("Z500"));
  CHECK_THROWS(make_builtin_group("S6"));
}

TEST_CASE("group from table") {
  CHECK(make_group_from_table({{0}}).order() == 1);
  FiniteGroup z2 = make_group_from_table({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.identity() == 0);
  CHECK_THROWS_WITH_AS(make_group_from_table({{0, 1}, {0, 1}}),
                       doctest::Contains("permutation"), std::invalid_argument);
  // Latin square that is not associative.
  CHECK_THROWS(make_group_from_table({{0, 1, 2, 3, 4},
                                      {1, 0, 3, 4, 2},
                                      {2, 4, 0, 1, 3},
                                      {3, 2, 4, 0, 1},
                                      {4, 3, 1, 2, 0}}));
}

TEST_CASE("group json round-trip") {
  FiniteGroup g = make_builtin_group("D4");
  FiniteGroup g2 = FiniteGroup::from_json(g.to_json());
  CHECK(g2.name() == g.name());
  CHECK(g2.table() == g.table());
  CHECK(g2.labels() == g.labels());
}

TEST_CASE("word parsing") {
  Word w = parse_word("a^2b");
  CHECK(w.length() == 3);
  CHECK(w.n_a() == 2);
  CHECK(w.n_b() == 1);
  CHECK(w.canonical() == "aab");

  Word lw = parse_word("aba^-1ba^2b^3ab^-1");
  CHECK(lw.n_a() == 5);
  CHECK(lw.n_b() == 6);

  CHECK_THROWS_AS(parse_word(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("a^-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("a^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("c"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("a^0"), std::invalid_argument);  // empty expansion
}

TEST_CASE("word canonical form round-trips") {
  for (const char* text : {"ab", "a^2b", "aba^-1ba^2b^3ab^-1", "b^4a^-1"}) {
    Word w = parse_word(text);
    Word again = parse_word(w.canonical());
    CHECK(again.letters == w.letters);
    CHECK(again.canonical() == w.canonical());
  }
}

TEST_CASE("word evaluation") {
  FiniteGroup z5 = make_cyclic(5);
  Word ab = parse_word("ab");
  CHECK(eval_word(z5, ab, 2, 4) == 1);  // addition mod 5
  FiniteGroup q8 = make_quaternion8();
  Word w = parse_word("ab^2a^-1b");
  CHECK(eval_word(q8, w, q8.identity(), q8.identity()) == q8.identity());

  // Conjugation in S3, checked against direct permutation composition.
  FiniteGroup s3 = make_symmetric(3);
  auto perm = [&](Element x) {
    std::vector<int> p;
    for (char c : s3.labels()[x]) p.push_back(c - '1');
    return p;
  };
  int a = -1, b = -1;
  for (int x = 0; x < 6; ++x) {
    if (s3.labels()[x] == "231") a = x;  // (123)
    if (s3.labels()[x] == "213") b = x;  // (12)
  }
  Element got = eval_word(s3, parse_word("aba^-1"), a, b);
  auto pa = perm(a), pb = perm(b);
  std::vector<int> expect(3);
  for (int x = 0; x < 3; ++x) {
    // a(b(a^-1(x)))
    int ainv = static_cast<int>(std::find(pa.begin(), pa.end(), x) - pa.begin());
    expect[x] = pa[pb[ainv]];
  }
  CHECK(perm(got) == expect);
}

TEST_CASE("eval of the multiplication word is the table") {
  for (const char* name : {"Z6", "S3", "Q8", "SD16"}) {
    FiniteGroup g = make_builtin_group(name);
    Word ab = parse_word("ab");
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y)
        CHECK(eval_word(g, ab, x, y) == g.mult(x, y));
  }
}

TEST_CASE("dataset enumeration and splitting") {
  FiniteGroup z2 = make_cyclic(2);
  Dataset ds = build_dataset(z2, parse_word("ab"));
  REQUIRE(ds.size() == 4);
  CHECK(ds.samples[1].a == 0);
  CHECK(ds.samples[1].b == 1);
  CHECK(ds.samples[1].c == 1);

  FiniteGroup g = make_builtin_group("S3");
  Dataset full = build_dataset(g, parse_word("ab"));
  CHECK(full.size() == 36);

  auto [train1, test1] = split_dataset(full, 1.0, 3);
  CHECK(train1.size() == 36);
  CHECK(test1.size() == 0);

  auto [tr, te] = split_dataset(full, 0.7, 42);
  CHECK(tr.size() + te.size() == 36);
  auto [tr2, te2] = split_dataset(full, 0.7, 42);
  for (int i = 0; i < tr.size(); ++i) {
    CHECK(tr.samples[i].a == tr2.samples[i].a);
    CHECK(tr.samples[i].b == tr2.samples[i].b);
  }
  // Disjoint union equals the full set.
  std::vector<int> seen(36, 0);
  for (const Sample& s : tr.samples) seen[s.a * 6 + s.b]++;
  for (const Sample& s : te.samples) seen[s.a * 6 + s.b]++;
  for (int c : seen) CHECK(c == 1);

  CHECK_THROWS_AS(split_dataset(full, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(split_dataset(full, 1.5, 1), std::invalid_argument);
}

TEST_CASE("one-hot helpers") {
  FiniteGroup g = make_cyclic(4);
  Eigen::VectorXd u = one_hot_input(g, 1, 3);
  CHECK(u.size() == 8);
  CHECK(u[1] == 1.0);
  CHECK(u[7] == 1.0);
  CHECK(u.sum() == 2.0);
  CHECK(argmax_decode(one_hot_label(g, 2)) == 2);
  Eigen::VectorXd tie = Eigen::VectorXd::Zero(4);
  CHECK(argmax_decode(tie) == 0);  // ties break to the lowest index
}

TEST_SUITE_END();
