#include <doctest.h>

#include "generators.hpp"
#include "moyal/clifford.hpp"
#include "moyal/error.hpp"
#include "moyal/groupoid.hpp"
#include "moyal/idempotent.hpp"

using namespace moyal;

namespace {

Multivector M(const char* s, Signature sig) { return Multivector::parse(s, sig); }

RationalMatrix mat(int d, std::initializer_list<int> v) {
  std::vector<Rational> r;
  for (int x : v) r.emplace_back(x);
  return {d, d, r};
}

// Projector onto a basis vector, conjugated by an integer matrix.
RationalMatrix diag_unit(int d, int i) {
  RationalMatrix m(d, d);
  m(i, i) = 1;
  return m;
}

}  // namespace

TEST_SUITE("clifford-groupoid") {
  TEST_CASE("parse and print") {
    const Signature s{3, 0};
    CHECK(M("2*e1^e2 - 3", s).to_string() == "-3 + 2*e1^e2");
    CHECK(M("e2^e1", s) == -M("e1^e2", s));
    CHECK(M("e1^e1", s) == Multivector::scalar(s, 1));
    CHECK(M("e3^e3", Signature{2, 1}) == Multivector::scalar(Signature{2, 1}, -1));
    CHECK(M("1/2*e3 + e1", s).to_string() == "e1 + 1/2*e3");
    for (const char* bad : {"e4", "e0", "2**e1", "e1 +", "x"}) CHECK_THROWS_AS(M(bad, s), Error);
    gen::Engine e(61);
    for (int trial = 0; trial < 50; ++trial) {
      const auto v = gen::multivector(e, s, 5);
      REQUIRE(M(v.to_string().c_str(), s) == v);
    }
  }

  TEST_CASE("quaternions in Cl(0,2)") {
    const Signature q{0, 2};
    const auto i = M("e1", q), j = M("e2", q), k = M("e1^e2", q), m1 = Multivector::scalar(q, -1);
    CHECK(k * k == m1);
    CHECK(i * i == m1);
    CHECK(j * j == m1);
    CHECK(i * j == k);
    CHECK(j * k == i);
    CHECK(k * i == j);
    CHECK(i * j * k == m1);
  }

  TEST_CASE("Cl(3,0) pseudoscalar and dimensions") {
    const Signature s{3, 0};
    const auto I = M("e1^e2^e3", s);
    CHECK(I * I == Multivector::scalar(s, -1));
    for (auto [p, q] : {std::pair{0, 0}, {1, 0}, {0, 2}, {3, 0}, {1, 3}, {4, 4}}) {
      const auto t = generate_algebra(p, q);
      CHECK(t.size == (std::size_t(1) << (p + q)));
      CHECK(t.entries.size() == t.size * t.size);
    }
    CHECK_THROWS_AS(generate_algebra(5, 4), Error);
  }

  TEST_CASE("signature law and gamma anticommutation") {
    for (auto sig : {Signature{1, 3}, Signature{2, 2}, Signature{0, 4}, Signature{3, 1}}) {
      for (int a = 1; a <= sig.dimension(); ++a) {
        const auto ga = Multivector::generator(sig, a);
        CHECK(ga * ga == Multivector::scalar(sig, a <= sig.p ? 1 : -1));
        for (int b = a + 1; b <= sig.dimension(); ++b) {
          const auto gb = Multivector::generator(sig, b);
          CHECK((ga * gb + gb * ga).is_zero());
        }
      }
    }
  }

  TEST_CASE("associativity") {
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q) CHECK(table_is_associative(generate_algebra(p, q)));
    CHECK(table_is_associative(generate_algebra(4, 4), 2000, 3));
    gen::Engine e(67);
    const Signature s{2, 3};
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = gen::multivector(e, s), b = gen::multivector(e, s), c = gen::multivector(e, s);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE((a * b).reverse() == b.reverse() * a.reverse());
    }
  }

  TEST_CASE("rotors") {
    const Signature s{3, 0};
    const auto e1 = M("e1", s), e2 = M("e2", s), e3 = M("e3", s);
    CHECK(rotor_conjugate(Multivector::scalar(s, 1), M("e1 + 2*e2^e3", s)) == M("e1 + 2*e2^e3", s));
    // Quarter turn in the e1e2 plane, unnormalized: R ~ cos(pi/4) - sin(pi/4) e1e2.
    const auto R = M("1 - e1^e2", s);
    CHECK(rotor_conjugate(R, e1) == e2);
    CHECK(rotor_conjugate(R, e2) == -e1);
    CHECK(rotor_conjugate(R, e3) == e3);
    // 3-4-5 rotor: rotates e1 by the angle with cos = 3/5.
    const auto R2 = M("2 - e1^e2", s);
    CHECK(rotor_conjugate(R2, e1) == M("3/5*e1 + 4/5*e2", s));
    gen::Engine e(71);
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = gen::multivector(e, s), b = gen::multivector(e, s);
      const auto rot = Multivector::scalar(s, gen::integer(e, 1, 3)) + M("e1^e2", s).scaled(gen::small_rational(e)) +
                       M("e2^e3", s).scaled(gen::small_rational(e));
      REQUIRE(rotor_conjugate(rot, a) * rotor_conjugate(rot, b) == rotor_conjugate(rot, a * b));
      for (int k = 0; k <= 3; ++k) REQUIRE(rotor_conjugate(rot, a.grade(k)) == rotor_conjugate(rot, a.grade(k)).grade(k));
    }
    try {
      rotor_conjugate(M("1 + e1", Signature{1, 0}), M("e1", Signature{1, 0}));
      FAIL("expected an error");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::non_invertible);
    }
    CHECK_THROWS_AS(M("e1", Signature{2, 0}) * M("e1", Signature{1, 1}), Error);
  }

  TEST_CASE("groupoid arrows") {
    const LabelSet T(5);
    CHECK(*arrow_compose(T.arrow(1, 2), T.arrow(2, 3)) == T.arrow(1, 3));
    CHECK_FALSE(arrow_compose(T.arrow(1, 2), T.arrow(3, 4)).has_value());
    CHECK(*arrow_compose(T.arrow(1, 1), T.arrow(1, 1)) == T.arrow(1, 1));
    CHECK_THROWS_AS(T.arrow(0, 5), Error);
    CHECK(to_string(T.arrow(1, 3)) == "[T1,T3]");
    // The Clifford image is a functor on composable pairs.
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k)
          REQUIRE(arrow_image(T.arrow(i, j), 4) * arrow_image(T.arrow(j, k), 4) == arrow_image(T.arrow(i, k), 4));
    const auto a = arrow_image(T.arrow(1, 2), 4), b = arrow_image(T.arrow(2, 3), 4);
    CHECK((a * b + b * a).is_zero());
  }

  TEST_CASE("exploding transform") {
    const IdempotentSet eps({diag_unit(2, 0), diag_unit(2, 1)});
    const auto id = exploding_transform(RationalMatrix::identity(2), eps);
    CHECK(id.mixing == RationalMatrix::identity(2));
    const auto perm = exploding_transform(mat(2, {0, 1, 1, 0}), eps);
    CHECK(perm.mixing == mat(2, {0, 1, 1, 0}));
    const auto had = exploding_transform(mat(2, {1, 1, 1, -1}), eps);
    CHECK(to_string(had.mixing) == "[[1/2, 1/2], [1/2, 1/2]]");
    CHECK(IdempotentSet(had.transformed).complete());
    CHECK_THROWS_AS(exploding_transform(mat(2, {1, 1, 1, 1}), eps), Error);
    CHECK_THROWS_AS(exploding_transform(RationalMatrix::identity(2), IdempotentSet({diag_unit(2, 0)})), Error);
    CHECK_THROWS_AS(IdempotentSet({mat(2, {1, 1, 0, 0}) + mat(2, {0, 0, 0, 1})}), Error);

    gen::Engine e(73);
    const int d = 3;
    const IdempotentSet eps3({diag_unit(d, 0), diag_unit(d, 1), diag_unit(d, 2)});
    for (int trial = 0; trial < 30; ++trial) {
      RationalMatrix A(d, d);
      do {
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) A(i, j) = gen::small_rational(e);
      } while (A.rank() < d);
      const auto ex = exploding_transform(A, eps3);
      RationalMatrix sum(d, d);
      for (const auto& m : ex.transformed) {
        REQUIRE(m * m == m);
        sum = sum + m;
      }
      REQUIRE(sum == RationalMatrix::identity(d));
      // Rows and columns of the mixing tensor each sum to one.
      for (int j = 0; j < d; ++j) {
        Rational row = 0, col = 0;
        for (int k = 0; k < d; ++k) {
          row += ex.mixing(j, k);
          col += ex.mixing(k, j);
        }
        REQUIRE(row == 1);
        REQUIRE(col == 1);
      }
    }
  }

  TEST_CASE("idempotents need not commute") {
    const auto p = diag_unit(2, 0), q = diag_unit(2, 1);
    CHECK(commutator_witness(p, q).is_zero());
    CHECK(commutator_witness(p, p).is_zero());
    const Rational h(1, 2);
    const RationalMatrix plus(2, 2, {h, h, h, h});
    const auto c = commutator_witness(p, plus);
    CHECK(c == RationalMatrix(2, 2, {0, h, -h, 0}));
  }
}
