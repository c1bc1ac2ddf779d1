#include "doctest.h"

#include "bufshuf/core.hpp"

#include <vector>

using namespace bufshuf;

namespace {

RawParameters raw(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f,
                  AssignmentMode mode = AssignmentMode::ExactPartition) {
  return RawParameters{n, k, s, f, mode};
}

}  // namespace

TEST_CASE("validate_config derives the server count") {
  const MixConfig c = validate_config(raw(16, 4, 4, 0));
  CHECK(c.n() == 16);
  CHECK(c.k() == 4);
  CHECK(c.m() == 4);
  CHECK(c.s() == 4);
  CHECK(c.f() == 0);
  CHECK(c.unmarked() == 16);
  CHECK(c.assignment() == AssignmentMode::ExactPartition);
}

TEST_CASE("validate_config rejects bad parameters with the specific error") {
  CHECK_THROWS_AS(validate_config(raw(16, 5, 1, 0)), DivisibilityError);
  CHECK_THROWS_AS(validate_config(raw(4, 2, 2, 3)), RangeError);
  CHECK_THROWS_AS(validate_config(raw(4, 2, 3, 0)), RangeError);
  CHECK_THROWS_AS(validate_config(raw(4, 2, -1, 0)), RangeError);
  CHECK_THROWS_AS(validate_config(raw(4, 1, 1, 0)), RangeError);
  CHECK_THROWS_AS(validate_config(raw(4, 8, 1, 0)), RangeError);
  CHECK_THROWS_AS(validate_config(raw(1, 2, 1, 0)), RangeError);
  CHECK_THROWS_AS(validate_config(raw(4, 2, 2, -1)), RangeError);
  CHECK_NOTHROW(validate_config(raw(4, 2, 2, 2)));
}

TEST_CASE("divisibility message names both numbers") {
  try {
    validate_config(raw(16, 5, 1, 0));
    FAIL("expected an error");
  } catch (const DivisibilityError& e) {
    const std::string what = e.what();
    CHECK(what.find("k=5") != std::string::npos);
    CHECK(what.find("n=16") != std::string::npos);
  }
  try {
    validate_config(raw(4, 5, 1, 0));
    FAIL("expected an error");
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("does not divide") != std::string::npos);
  }
}

TEST_CASE("validate_config is total over a small raw grid") {
  // Every input gives either a config or a ConfigError, never anything else.
  for (std::int64_t n = -1; n <= 9; ++n)
    for (std::int64_t k = -1; k <= 10; ++k)
      for (std::int64_t s = -1; s <= 5; ++s)
        for (std::int64_t f = -1; f <= 9; ++f)
          for (auto mode : {AssignmentMode::ExactPartition, AssignmentMode::BinomialAssignment}) {
            try {
              const MixConfig c = validate_config(raw(n, k, s, f, mode));
              CHECK(c.m() * c.k() == c.n());
              CHECK(c.s() <= c.m());
              CHECK(c.f() + 2 <= c.n());
            } catch (const ConfigError&) {
            }
          }
}

TEST_CASE("assignment mode names round trip") {
  CHECK(to_string(AssignmentMode::ExactPartition) == "exact");
  CHECK(to_string(AssignmentMode::BinomialAssignment) == "binomial");
  CHECK(parse_assignment_mode("exact") == AssignmentMode::ExactPartition);
  CHECK(parse_assignment_mode("binomial") == AssignmentMode::BinomialAssignment);
  CHECK_THROWS_AS(parse_assignment_mode("poisson"), ConfigError);
}

TEST_CASE("initial_state is a point mass on the tracked card") {
  const BeliefState a = initial_state(validate_config(raw(4, 2, 2, 0)));
  CHECK(std::vector<double>(a.weights().begin(), a.weights().end()) == std::vector<double>{1, 0, 0, 0});
  CHECK(a.round() == 0);
  CHECK(a.is_valid());

  const BeliefState b = initial_state(validate_config(raw(4, 2, 2, 1)));
  CHECK(std::vector<double>(b.weights().begin(), b.weights().end()) == std::vector<double>{1, 0, 0});

  const BeliefState c = initial_state(validate_config(raw(2, 2, 1, 0)));
  CHECK(std::vector<double>(c.weights().begin(), c.weights().end()) == std::vector<double>{1, 0});
}

TEST_CASE("BeliefState validity") {
  CHECK(BeliefState({0.5, 0.5}, 0).is_valid());
  CHECK_FALSE(BeliefState({0.6, 0.5}, 0).is_valid());
  CHECK_FALSE(BeliefState({1.5, -0.5}, 0).is_valid());
  CHECK(BeliefState({0.5, 0.5 + 1e-12}, 0).is_valid());
}

TEST_CASE("honesty and marking flags") {
  const MixConfig c = validate_config(raw(8, 2, 1, 2));
  CHECK(honest_flags(c) == std::vector<std::uint8_t>{0, 0, 0, 1});
  CHECK(marked_flags(c) == std::vector<std::uint8_t>{0, 0, 0, 0, 0, 0, 1, 1});
}

TEST_CASE("server loads") {
  RoundAssignment a{{0, 1, 1, 0, 2}, {1, 1, 1}, {0, 0, 0, 0, 0}};
  CHECK(a.servers() == 3);
  CHECK(a.server_loads() == std::vector<std::size_t>{2, 2, 1});
}
