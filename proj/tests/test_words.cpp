#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "mrt/catalog.hpp"
#include "mrt/words.hpp"

using namespace mrt;

TEST_CASE("find_simple_system ranks and Coxeter matrices") {
  struct Case {
    const char* name;
    int rank;
    int m01;  // order of s0 s1 (0 when rank 1)
  };
  for (const Case& c : {Case{"SU(2)", 1, 0}, Case{"A2-sc", 2, 3}, Case{"B2-sc", 2, 4},
                        Case{"G2", 2, 6}}) {
    SimpleSystem ss = find_simple_system(build_entry(c.name).lattice);
    CHECK(ss.rank() == c.rank);
    for (int i = 0; i < ss.rank(); ++i) CHECK(ss.coxeter[i][i] == 1);
    if (c.rank == 2) CHECK(ss.coxeter[0][1] == c.m01);
  }
}

TEST_CASE("prod_word convention") {
  CHECK(prod_word(1, 0, 1) == Word{0});
  CHECK(prod_word(2, 0, 1) == Word{0, 1});
  CHECK(prod_word(3, 0, 1) == Word{0, 1, 0});
  CHECK(prod_word(4, 1, 0) == Word{1, 0, 1, 0});
  CHECK(prod_word(0, 0, 1).empty());
  CHECK_THROWS_AS(prod_word(-1, 0, 1), value_error);
}

TEST_CASE("word_image basics") {
  SimpleSystem ss = find_simple_system(build_entry("A2-sc").lattice);
  CHECK(word_image(ss, {}) == ss.group->id());
  CHECK(word_image(ss, {0, 0}) == ss.group->id());
  // [0,1,0] is the third reflection of W(A2)
  int e = word_image(ss, {0, 1, 0});
  CHECK(ss.group->sigma_index(e) >= 0);
  CHECK(e != ss.simples[0]);
  CHECK(e != ss.simples[1]);
}

TEST_CASE("length is the Cayley distance") {
  SimpleSystem ss = find_simple_system(build_entry("B2-sc").lattice);
  CHECK(length(ss, ss.group->id()) == 0);
  for (int i = 0; i < ss.rank(); ++i) CHECK(length(ss, ss.simples[i]) == 1);
  int longest = 0;
  for (int e = 0; e < ss.group->size(); ++e) longest = std::max(longest, length(ss, e));
  CHECK(longest == 4);
  // braid relation in the group
  CHECK(word_image(ss, prod_word(4, 0, 1)) == word_image(ss, prod_word(4, 1, 0)));
}

TEST_CASE("reflection_sequence formula") {
  SimpleSystem ss = find_simple_system(build_entry("A2-sc").lattice);
  auto seq1 = reflection_sequence(ss, {0});
  CHECK(seq1 == std::vector<int>{ss.simple_sigma(0)});
  auto seq2 = reflection_sequence(ss, {0, 1});
  CHECK(seq2.size() == 2);
  CHECK(seq2[0] == ss.simple_sigma(0));
  // sigma_2 = s0 s1 s0
  CHECK(ss.group->reflections()[seq2[1]] == ss.group->conj(ss.simples[0], ss.simples[1]));
  // a minimal word for the longest element hits all three reflections once
  int w0 = -1;
  for (int e = 0; e < ss.group->size(); ++e)
    if (length(ss, e) == 3) w0 = e;
  REQUIRE(w0 >= 0);
  auto words = all_minimal_words(ss, w0);
  for (const Word& w : words) {
    auto seq = reflection_sequence(ss, w);
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("lex-minimal words are minimal and lexicographically first") {
  SimpleSystem ss = find_simple_system(build_entry("B2-sc").lattice);
  for (int e = 0; e < ss.group->size(); ++e) {
    const Word& w = ss.lex_min_word[e];
    CHECK(static_cast<int>(w.size()) == length(ss, e));
    CHECK(word_image(ss, w) == e);
    auto all = all_minimal_words(ss, e);
    CHECK(w == all.front());
  }
}

TEST_CASE("minimal word count limit guard") {
  SimpleSystem ss = find_simple_system(build_entry("A2-sc").lattice);
  CHECK_THROWS_AS(all_minimal_words(ss, 0, 2), value_error);
}

TEST_CASE("length multiset is independent of the marking family used") {
  // B2 has two marking families; the induced simple systems must produce the
  // same multiset of lengths
  CatalogEntry e = build_entry("B2-sc");
  auto families = all_marking_families(e.lattice.group);
  REQUIRE(families.size() == 2);
  std::vector<std::vector<int>> profiles;
  for (const auto& fam : families) {
    SimpleSystem ss = find_simple_system(fam);
    std::vector<int> lengths = ss.length;
    std::sort(lengths.begin(), lengths.end());
    profiles.push_back(lengths);
  }
  CHECK(profiles[0] == profiles[1]);
}

TEST_CASE("tits multiplicity across A3") {
  SimpleSystem ss = find_simple_system(build_entry("A3-sc").lattice);
  for (int e = 0; e < ss.group->size(); ++e)
    for (const Word& w : all_minimal_words(ss, e)) {
      std::map<int, int> count;
      for (int s : reflection_sequence(ss, w)) ++count[s];
      for (const auto& [s, n] : count) CHECK(n == 1);
    }
}

TEST_CASE("classical reduced-word counts for the longest elements") {
  // the number of minimal words of the longest element is the number of
  // standard Young tableaux of staircase shape: 16 for rank 3 type A,
  // 42 for rank 3 type B
  SimpleSystem a3 = find_simple_system(build_entry("A3-sc").lattice);
  int w0 = -1, top = -1;
  for (int e = 0; e < a3.group->size(); ++e)
    if (top < 0 || a3.length[e] > a3.length[top]) top = e;
  w0 = top;
  CHECK(a3.length[w0] == 6);
  CHECK(all_minimal_words(a3, w0).size() == 16);

  SimpleSystem b3 = find_simple_system(build_entry("B3-sc").lattice);
  top = -1;
  for (int e = 0; e < b3.group->size(); ++e)
    if (top < 0 || b3.length[e] > b3.length[top]) top = e;
  CHECK(b3.length[top] == 9);
  CHECK(all_minimal_words(b3, top).size() == 42);
}
