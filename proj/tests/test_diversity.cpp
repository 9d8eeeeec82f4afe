#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "swstat/diversity.hpp"
#include "swstat/error.hpp"

using namespace swstat::diversity;
using C = std::vector<std::uint64_t>;

namespace {
AbundanceVector av(const C& c) { return AbundanceVector::from_counts(c); }
}  // namespace

TEST_CASE("shannon") {
  CHECK(shannon(av({4})) == 0.0);
  CHECK(shannon(av({1, 1, 1, 1})) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  // 0.5 ln 2 + 2 * 0.25 ln 4
  CHECK(shannon(av({2, 1, 1})) == doctest::Approx(1.0397207708399179).epsilon(1e-12));
}

TEST_CASE("simpson and gini-simpson") {
  CHECK(simpson(av({5})) == 1.0);
  CHECK(simpson(av({1, 1, 1, 1})) == 0.25);
  CHECK(simpson(av({2, 1, 1})) == 0.375);
  CHECK(gini_simpson(av({5})) == 0.0);
  CHECK(gini_simpson(av({1, 1, 1, 1})) == 0.75);
  CHECK(gini_simpson(av({2, 1, 1})) == 0.625);
}

TEST_CASE("evenness") {
  CHECK(evenness(av({3, 3, 3})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(evenness(av({9})) == 1.0);
  CHECK(evenness(av({2, 1, 1})) == doctest::Approx(0.946394630357186).epsilon(1e-12));
}

TEST_CASE("zero categories are dropped") {
  CHECK(av({0, 2, 0, 1, 1}).richness() == 3);
  CHECK(shannon(av({0, 2, 0, 1, 1})) == shannon(av({2, 1, 1})));
  CHECK(evenness(av({0, 7})) == 1.0);
}

TEST_CASE("empty ecosystem") {
  CHECK_THROWS_WITH_AS((void)shannon(av({})), "empty ecosystem", swstat::AnalysisError);
  CHECK_THROWS_WITH_AS((void)simpson(av({0, 0})), "empty ecosystem", swstat::AnalysisError);
  CHECK_THROWS_AS((void)evenness(av({0})), swstat::AnalysisError);
}

TEST_CASE("duplicate labels are rejected") {
  CHECK_THROWS_AS(AbundanceVector({{"a", 1}, {"a", 2}}), swstat::InputError);
}

TEST_CASE("scaling, permutation and bounds") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::uint64_t> count(0, 40);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  for (int trial = 0; trial < 500; ++trial) {
    C c(size(rng));
    for (auto& v : c) v = count(rng);
    c.front() += 1;
    const auto a = av(c);
    const double k = static_cast<double>(a.richness());

    C scaled = c;
    for (auto& v : scaled) v *= 3;
    C shuffled = c;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (const C& other : {scaled, shuffled}) {
      CHECK(shannon(av(other)) == doctest::Approx(shannon(a)).epsilon(1e-12));
      CHECK(simpson(av(other)) == doctest::Approx(simpson(a)).epsilon(1e-12));
      CHECK(evenness(av(other)) == doctest::Approx(evenness(a)).epsilon(1e-12));
    }
    CHECK(shannon(a) >= 0.0);
    CHECK(shannon(a) <= std::log(k) + 1e-15);
    CHECK(simpson(a) >= 1.0 / k - 1e-15);
    CHECK(simpson(a) <= 1.0);
    CHECK(evenness(a) >= 0.0);
    CHECK(evenness(a) <= 1.0);

    // Merging two categories.
    if (c.size() >= 2) {
      C merged(c.begin() + 1, c.end());
      merged.front() += c.front();
      CHECK(shannon(av(merged)) <= shannon(a) + 1e-12);
      CHECK(simpson(av(merged)) >= simpson(a) - 1e-12);
    }
  }
}

TEST_CASE("report") {
  const auto r = report(AbundanceVector({{"abstract", 2}, {"leaf", 1}, {"util", 1}}));
  CHECK(r.richness == 3);
  CHECK(r.total == 4);
  CHECK(r.simpson == 0.375);
  CHECK(r.gini_simpson == 0.625);
}
