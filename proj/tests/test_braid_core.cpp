#include <algorithm>
#include <set>

#include "doctest.h"

#include "braidknots/braid_ops.hpp"
#include "braidknots/braid_word.hpp"
#include "braidknots/invariants.hpp"
#include "braidknots/rng.hpp"
#include "oracles.hpp"

using namespace braidknots;

TEST_CASE("braid word construction and validation") {
  BraidWord w{1, -2, 3};
  CHECK(w.strands() == 4);
  CHECK(w.max_generator() == 3);
  CHECK(w.writhe() == 1);
  CHECK(BraidWord().strands() == 1);
  CHECK(BraidWord().empty());
  CHECK_THROWS_AS(BraidWord({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(BraidWord({1, 3}, 3), std::invalid_argument);
  CHECK(BraidWord({1}, 5).strands() == 5);
  CHECK(mirror(w) == BraidWord{-1, 2, -3});
}

TEST_CASE("free reduction") {
  CHECK(free_reduce(BraidWord{1, -1}).empty());
  CHECK(free_reduce(BraidWord{2, 1, -1, -2, 3}) == BraidWord({3}, 4));
  CHECK(free_reduce(BraidWord{1, 2, -2, 1}) == BraidWord({1, 1}, 3));
  CHECK(free_reduce(BraidWord{1, 1}) == BraidWord{1, 1});
}

TEST_CASE("free reduction result does not depend on cancellation order") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    BraidWord w = oracle::random_word(rng, 0, 14, 3);
    // cancel a random adjacent inverse pair at a time until none remain
    std::vector<int> l = w.letters();
    for (;;) {
      std::vector<std::size_t> pairs;
      for (std::size_t i = 0; i + 1 < l.size(); ++i)
        if (l[i] == -l[i + 1]) pairs.push_back(i);
      if (pairs.empty()) break;
      const std::size_t i = pairs[rng.index(pairs.size())];
      l.erase(l.begin() + static_cast<std::ptrdiff_t>(i), l.begin() + static_cast<std::ptrdiff_t>(i + 2));
    }
    CHECK(free_reduce(w) == BraidWord(l, w.strands()));
  }
}

TEST_CASE("cyclic shifts") {
  BraidWord w{1, 2, -1};
  CHECK(cyclic_shift(w, ShiftDirection::Left) == BraidWord{2, -1, 1});
  CHECK(cyclic_shift(w, ShiftDirection::Right) == BraidWord{-1, 1, 2});
  CHECK(cyclic_shift(BraidWord(), ShiftDirection::Left).empty());
  CHECK(cyclic_shift(cyclic_shift(w, ShiftDirection::Left), ShiftDirection::Right) == w);
}

TEST_CASE("conjugation and (de)stabilization") {
  CHECK(conjugate_insert(BraidWord{1, 2}, -2) == BraidWord{-2, 1, 2, 2});
  CHECK_THROWS_AS(conjugate_insert(BraidWord{1}, 2), std::out_of_range);
  CHECK_THROWS_AS(conjugate_insert(BraidWord{1}, 0), std::out_of_range);
  CHECK(stabilize(BraidWord{1, 1, 1}, -1) == BraidWord{1, 1, 1, -2});
  CHECK(stabilize(BraidWord(), 1) == BraidWord{1});
}

TEST_CASE("destabilization removes a lone top generator anywhere") {
  auto d = destabilize(BraidWord{1, 2, 1, 1});
  REQUIRE(d.has_value());
  CHECK(*d == BraidWord{1, 1, 1});
  CHECK(d->strands() == 2);
  CHECK_FALSE(destabilize(BraidWord{1, 2, -2}).has_value());
  CHECK_FALSE(destabilize(BraidWord{1, 1}).has_value());
}

TEST_CASE("braid relations") {
  CHECK(braid_relation_1(BraidWord{1, 2, 1}, 0, false) == BraidWord{2, 1, 2});
  CHECK(braid_relation_1(BraidWord{-2, -1, -2}, 0, false) == BraidWord{-1, -2, -1});
  CHECK(braid_relation_1(BraidWord{1, -2, 1}, 0, false) == BraidWord{1, -2, 1});  // mixed signs do not match
  CHECK(braid_relation_1(BraidWord{3, 1, 2, 1}, 0, false) == BraidWord{3, 2, 1, 2});
  // window across the closure seam: [.., 1 | 2, 1] read cyclically from position 2
  CHECK(braid_relation_1(BraidWord{2, 1, 3, 1}, 3, true) == BraidWord{1, 2, 3, 2});
  CHECK(braid_relation_1(BraidWord{2, 1, 3, 1}, 3, false) == BraidWord{2, 1, 3, 1});
  CHECK(braid_relation_2(BraidWord{1, 3, 2}, 0, false) == BraidWord{3, 1, 2});
  CHECK(braid_relation_2(BraidWord{1, 2}, 0, true) == BraidWord{1, 2});
  CHECK(braid_relation_2(BraidWord{3, 2, 1}, 1, true) == BraidWord{1, 2, 3});  // wraps: (1, 3) swap
}

TEST_CASE("free strand removal relabels generators") {
  CHECK(remove_free_strands(BraidWord({3, -3}, 5)) == BraidWord({1, -1}, 2));
  CHECK(remove_free_strands(BraidWord({1, 4}, 5)) == BraidWord({1, 3}, 4));
  CHECK(remove_free_strands(BraidWord({}, 4)) == BraidWord());
}

TEST_CASE("non-consecutive inverses") {
  CHECK(remove_nonconsecutive_inverses(BraidWord{1, 2, -1}) == BraidWord({2}, 3));
  CHECK(remove_nonconsecutive_inverses(BraidWord{1, 3, -1, 2}) == BraidWord({3, 2}, 4));
  CHECK(remove_nonconsecutive_inverses(BraidWord{1, 2, -1, 2}) == BraidWord{1, 2, -1, 2});
}

TEST_CASE("smart collapse") {
  CHECK(smart_collapse(BraidWord{2, 1}).empty());
  CHECK(smart_collapse(BraidWord{1, -1, 2, 3}).empty());
  CHECK(smart_collapse(BraidWord{1, 1, 1}) == BraidWord{1, 1, 1});
  CHECK(smart_collapse(BraidWord{1, 1, 1, 2}) == BraidWord{1, 1, 1});
  CHECK(smart_collapse(BraidWord{-1, 2, 1, -2}) == BraidWord{-1, 2, 1, -2});
  const BraidWord once = smart_collapse(BraidWord{3, 1, -3, 2, 2, 1});
  CHECK(smart_collapse(once) == once);
}

TEST_CASE("closure permutation and components") {
  CHECK(closure_components(BraidWord()) == 1);
  CHECK(closure_components(BraidWord{1}) == 1);
  CHECK(closure_components(BraidWord{1, 1}) == 2);
  CHECK(closure_components(BraidWord({1, 1}, 4)) == 4);
  CHECK(closure_components(BraidWord{1, 2}) == 1);
  CHECK(closure_permutation(BraidWord{1, 2}) == std::vector<int>{2, 0, 1});
  const auto cycles = closure_cycles(BraidWord({1, 1, 3}, 5));
  REQUIRE(cycles.size() == 4);
  CHECK(cycles[0] == std::vector<int>{0});
  CHECK(cycles[2] == std::vector<int>{2, 3});
}

TEST_CASE("knotify produces knots and keeps the original letters as a prefix") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const BraidWord w = oracle::random_word(rng, 0, 12, 5);
    const BraidWord k = knotify(w, rng);
    if (w.empty()) {
      CHECK(k.empty());
      continue;
    }
    CHECK(closure_components(k) == 1);
    CHECK(std::equal(w.letters().begin(), w.letters().end(), k.letters().begin()));
    CHECK(k.strands() == k.max_generator() + 1);
  }
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a = Rng::derive(42, "x", 1), b = Rng::derive(42, "x", 1), c = Rng::derive(42, "x", 2);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next();
    CHECK(va == b.next());
    differs |= va != c.next();
  }
  CHECK(differs);
  Rng r(1);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.uniform_int(-2, 2);
    CHECK(v >= -2);
    CHECK(v <= 2);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
  // the engine output is fixed by the C++ standard
  std::mt19937_64 ref(5489u);
  ref.discard(9999);
  CHECK(ref() == 9981545732273789042ull);
}

TEST_CASE("knot-preserving moves keep invariants (property)") {
  Rng rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const BraidWord w = oracle::random_knot_word(rng, 10, 4);
    if (w.empty()) continue;
    const auto fp = fingerprint(w);
    const BraidWord moved[] = {
        free_reduce(w),
        cyclic_shift(w, ShiftDirection::Left),
        cyclic_shift(w, ShiftDirection::Right),
        conjugate_insert(w, static_cast<Letter>(rng.uniform_int(1, w.strands() - 1))),
        stabilize(w, rng.coin() ? 1 : -1),
        braid_relation_1(w, rng.index(w.size()), true),
        braid_relation_2(w, rng.index(w.size()), true),
        remove_nonconsecutive_inverses(w),
        smart_collapse(w),
    };
    for (const BraidWord& m : moved) {
      const auto fm = fingerprint(m);
      CHECK(fm.alexander == fp.alexander);
      CHECK(fm.arf == fp.arf);
      CHECK(fm.jones == fp.jones);
    }
  }
}
