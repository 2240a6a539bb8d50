#include <doctest.h>

#include "support.hpp"
#include "tcsat/error.hpp"
#include "tcsat/io.hpp"
#include "tcsat/oracle.hpp"

using namespace tcsat;

namespace {

std::size_t error_line(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("single-gate circuit") {
  const auto c = io::parse_circuit("tc2 1 1\ngate 1 0:1\ntop 1 g0:1\n");
  CHECK(c.n_vars == 1);
  REQUIRE(c.bottom.size() == 1);
  CHECK(c.bottom[0].threshold == 1);
  CHECK(c.bottom[0].inputs == std::vector<WeightedInput>{{0, 1}});
  CHECK(c.top_gate_weights == std::vector<std::int64_t>{1});
  CHECK(c.top_threshold == 1);
  CHECK(evaluate(c, Assignment({1})));
  CHECK_FALSE(evaluate(c, Assignment({0})));
}

TEST_CASE("comments, blank lines and direct wires") {
  const auto c = io::parse_circuit("# header\n\ntc2 3 1   # trailing\ngate -2 0:1 2:-3\ntop 0 g0:4 x1:-2\n");
  REQUIRE(c.direct_wires.size() == 1);
  CHECK(c.direct_wires[0] == WeightedInput{1, -2});
  CHECK(c.wires() == 2);
}

TEST_CASE("symmetric and ILP formats") {
  const auto s = io::parse_symmetric(
      "sc2 3 2 2\nsgate mod 2 1 0:1 1:1\nsgate set 0,3 1:1 2:2\nstop eq 1 g0:1 g1:1 x2:1\n");
  REQUIRE(s.bottom.size() == 2);
  CHECK(s.declared_c == 2);
  CHECK(s.bottom[0].predicate == Predicate{pred::Modulo{2, 1}});
  CHECK(s.bottom[1].predicate == Predicate{pred::OneOf{{0, 3}}});
  CHECK(s.top.predicate == Predicate{pred::Exactly{1}});

  const auto sys = io::parse_ilp("ilp 2 2 3\nrow ge 4 0:1 1:1\nrow lt 5 0:2\n");
  CHECK(sys.arity == 3);
  REQUIRE(sys.rows.size() == 2);
  CHECK(sys.rows[1].rel == Relation::kLt);
  CHECK(sys.rows[1].rhs == 5);
}

TEST_CASE("round trips over generated instances") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    oracle::GenSpec spec;
    spec.n = static_cast<int>(4 + seed % 12);
    spec.c = static_cast<int>(1 + seed % 3);
    spec.seed = seed;
    spec.weight_bound = 3;
    spec.arity = seed % 2 ? 2 : 3;
    const auto c = oracle::generate_circuit(spec);
    CHECK(io::parse_circuit(io::emit_circuit(c)) == c);
    const auto s = oracle::generate_symmetric(spec);
    CHECK(io::parse_symmetric(io::emit_symmetric(s)) == s);
    const auto i = oracle::generate_ilp(spec);
    CHECK(io::parse_ilp(io::emit_ilp(i)) == i);
  }
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_line([] { io::parse_circuit("tc2 1 1\ngate 1 0:1\nbottom 1 g0:1\n"); }) == 3);
  CHECK(error_line([] { io::parse_circuit("tc2 1 1\n\ngate 4294967296 0:1\ntop 1 g0:1\n"); }) == 3);
  CHECK(error_line([] { io::parse_circuit("tc2 1 2\ngate 1 0:1\ntop 1 g0:1\n"); }) == 3);
  CHECK(error_line([] { io::parse_circuit("tc2 1 1\ngate 1 3:1\ntop 1 g0:1\n"); }) == 2);
  CHECK(error_line([] { io::parse_circuit("tc2 1 1\ngate 1 0:0\ntop 1 g0:1\n"); }) == 2);
  CHECK(error_line([] { io::parse_circuit("tc2 x 1\n"); }) == 1);
  CHECK(error_line([] { io::parse_symmetric("sc2 2 1 1\nsgate foo 1 0:1\nstop ge 1 g0:1\n"); }) == 2);
  CHECK(error_line([] { io::parse_ilp("ilp 2 1 2\nrow ne 1 0:1\n"); }) == 2);
  CHECK(error_line([] { io::parse_ilp("ilp 2 1 2\nrow ge 1 0:1\nrow ge 1 0:1\n"); }) == 3);
  CHECK(error_line([] { io::parse_circuit(""); }) >= 1);
}

TEST_CASE("witness formatting") {
  CHECK(io::format_witness(Assignment({1, 0, 1})) == "101");
  CHECK(io::format_witness(Assignment({2, 0}, 3)) == "20");
  CHECK_THROWS_AS(io::read_file("/nonexistent/tcsat/file"), InputError);
}
