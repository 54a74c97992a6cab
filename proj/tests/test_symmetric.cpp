// test_symmetric.cpp — Occupation combinatorics, symmetric transfer matrices,
// Dicke-space fidelity and its maximization

#include "test_util.hpp"

#include "qfid/errors.hpp"
#include "qfid/trial_states.hpp"

using namespace qfid;
using namespace qfid::testing;

TEST_CASE("enumerate_occupations: counts and ordering") {
  const auto one = enumerate_occupations(1);
  REQUIRE(one.size() == 4);
  CHECK(one[0] == OccupationIndex{1, 0, 0, 0});
  CHECK(one[1] == OccupationIndex{0, 1, 0, 0});
  CHECK(one[2] == OccupationIndex{0, 0, 1, 0});
  CHECK(one[3] == OccupationIndex{0, 0, 0, 1});

  const auto two = enumerate_occupations(2);
  CHECK(two.size() == 10);
  CHECK(two.front() == OccupationIndex{2, 0, 0, 0});
  CHECK(two.back() == OccupationIndex{0, 0, 0, 2});

  CHECK(occupation_count(26) == 3654);
  CHECK(enumerate_occupations(26).size() == 3654);
  for (const auto& m : enumerate_occupations(5)) CHECK(m[0] + m[1] + m[2] + m[3] == 5);
}

TEST_CASE("pair_embedding: basis examples and the isometry") {
  {
    Vector c(2);
    c << 1.0, 0.0;
    const Vector phi = pair_embedding(SymmetricState{1, c});
    REQUIRE(phi.size() == 4);
    CHECK(std::abs(phi(0) - 1.0) <= 1e-15);  // occupation (1,0,0,0) = letter 00
    CHECK(phi.tail(3).norm() <= 1e-15);
  }
  {
    // Dicke |D_1^2>: weight 1/sqrt(2) on (0,1,1,0) and (1,0,0,1)
    Vector c(3);
    c << 0.0, 1.0, 0.0;
    const Vector phi = pair_embedding(SymmetricState{2, c});
    const auto basis = enumerate_occupations(2);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const double expected =
          (basis[i] == OccupationIndex{0, 1, 1, 0} || basis[i] == OccupationIndex{1, 0, 0, 1})
              ? 1.0 / std::sqrt(2.0)
              : 0.0;
      CHECK(std::abs(phi(static_cast<Index>(i)) - expected) <= 1e-14);
    }
  }
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 10;
    CHECK(std::abs(pair_embedding(SymmetricState{n, rng.haar_vector(n + 1)}).norm() - 1.0) <=
          1e-12);
  }
}

TEST_CASE("symmetric_transfer: identity, single copy, and the symmetrizer oracle") {
  const TransferMatrix id{2, Matrix::Identity(4, 4)};
  const SymmetricTransferMatrix sid = symmetric_transfer(id, 3);
  CHECK(sid.entries.rows() == 20);
  CHECK((sid.entries - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-12);

  Rng rng(72);
  const Channel ch = random_channel(rng, 2, 3);
  const TransferMatrix t = natural_representation(ch);
  CHECK((symmetric_transfer(t, 1).entries - t.mat).cwiseAbs().maxCoeff() <= 1e-12);

  // explicit P_sym T^{(x)3} P_sym restriction in the 64-dimensional space
  const SymmetricTransferMatrix s3 = symmetric_transfer(t, 3);
  const Matrix basis = symmetric_basis_4letters(3);
  const Matrix t3 = kron(kron(t.mat, t.mat), t.mat);
  const Matrix oracle = basis.adjoint() * t3 * basis;
  CHECK((s3.entries - oracle).cwiseAbs().maxCoeff() <= 1e-10);

  CHECK_THROWS_AS(symmetric_transfer(t, 28), BudgetExceeded);
  CHECK_THROWS_AS(symmetric_transfer(TransferMatrix{3, Matrix::Identity(9, 9)}, 2),
                  DimensionMismatch);
}

TEST_CASE("DickeTransfer reproduces the transfer matrix at n = 1") {
  Rng rng(73);
  const Channel ch = random_channel(rng, 2, 2);
  const DickeTransfer dt(ch, 1);
  const Matrix t = natural_representation(ch).mat;
  CHECK((dt.matrix() - t).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("DickeTransfer quadratic form equals Phi^+ T_sym Phi") {
  Rng rng(74);
  for (int n : {2, 3, 4}) {
    const Channel ch = random_channel(rng, 2, 2 + n % 2);
    const SymmetricState s{n, rng.haar_vector(n + 1)};
    const Vector phi = pair_embedding(s);
    const SymmetricTransferMatrix ts = symmetric_transfer(natural_representation(ch), n);
    const Complex explicit_form = phi.dot(ts.entries * phi);
    const double collapsed = symmetric_fidelity(ch, s);
    CHECK(std::abs(explicit_form.real() - collapsed) <= 1e-12);
    CHECK(std::abs(explicit_form.imag()) <= 1e-8);
  }
}

TEST_CASE("symmetric_fidelity: identity channel and the full-tensor oracle") {
  Rng rng(75);
  for (int n : {2, 4, 6}) {
    const SymmetricState s{n, rng.haar_vector(n + 1)};
    CHECK(symmetric_fidelity(identity_channel(2), s) == doctest::Approx(1.0).epsilon(1e-10));
  }
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 3;
    const Channel ch = random_channel(rng, 2, 2 + trial % 3);
    const SymmetricState s{n, rng.haar_vector(n + 1)};
    const double sym = symmetric_fidelity(ch, s);
    const double full = fidelity(tensor_power(ch, n), expand(s));
    CHECK(std::abs(sym - full) <= 1e-10);
  }
}

TEST_CASE("symmetric_fidelity on trial Dicke states matches the closed formula") {
  const PauliChannel p{{0.1, 0.2, 0.3, 0.4}};
  const Channel ch = to_channel(p);
  const StatePair pair(phi_plus(), phi_minus());
  for (int n : {1, 2, 3, 5, 8}) {
    const SymmetricState s = trial_dicke_coefficients(pair, n);
    const double expected = std::pow(trial_fidelity_closed(p, n), n);
    CHECK(std::abs(symmetric_fidelity(ch, s) - expected) <= 1e-10);
  }
}

TEST_CASE("symmetric_fidelity_gradient: identity stationarity and finite differences") {
  Rng rng(76);
  {
    const SymmetricState s{4, rng.haar_vector(5)};
    const Vector g = symmetric_fidelity_gradient(identity_channel(2), s);
    const Vector gt = g - s.coeffs.dot(g).real() * s.coeffs;
    CHECK(gt.norm() <= 1e-10);
  }
  const Channel fig1 = fig1_channel();
  const DickeTransfer transfer(fig1, 5);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector c = rng.haar_vector(6);
    Vector g;
    transfer.fidelity(c, &g, nullptr);
    auto f = [&transfer](const Vector& x) { return transfer.fidelity(x); };
    Vector delta = rng.haar_vector(6);
    delta -= c.dot(delta).real() * c;
    const double analytic = 2.0 * g.dot(delta).real();
    const double numeric = central_difference(f, c, delta);
    CHECK(std::abs(numeric - analytic) <= 1e-6 * std::max(std::abs(analytic), 1e-3));
  }
}

TEST_CASE("max_symmetric_fidelity: identity, full-space agreement, fig1 at n = 20") {
  OptimizerOptions opts;
  opts.seed = 77;
  CHECK(max_symmetric_fidelity(identity_channel(2), 5, opts).fidelity_root ==
        doctest::Approx(1.0).epsilon(1e-10));

  const Channel fig1 = fig1_channel();
  for (int n : {2, 4}) {
    opts.seed = 78 + n;
    const double sym = max_symmetric_fidelity(fig1, n, opts).fidelity_root;
    opts.seed = 88 + n;
    const double full = regularized_fidelity_full(fig1, n, opts);
    CHECK(std::abs(sym - full) <= 1e-6);
  }

  opts.seed = 79;
  const SymmetricMaxResult r20 = max_symmetric_fidelity(fig1, 20, opts);
  CHECK(r20.fidelity_root == doctest::Approx(0.676155431725).epsilon(2e-6));
  CHECK(r20.raw.value ==
        doctest::Approx(std::pow(r20.fidelity_root, 20)).epsilon(1e-10));

  // stationarity of the winning restart at a converged maximizer
  opts.seed = 80;
  const SymmetricMaxResult r12 = max_symmetric_fidelity(fig1, 12, opts);
  const Vector g = symmetric_fidelity_gradient(fig1, r12.argmax);
  const Vector gt = g - r12.argmax.coeffs.dot(g).real() * r12.argmax.coeffs;
  CHECK(gt.norm() <= 1e-6);

  CHECK_THROWS_AS(max_symmetric_fidelity(fig1, 28, opts), BudgetExceeded);
}

TEST_CASE("expand: basis states, Dicke state, norms, budget") {
  {
    Vector c(2);
    c << 1.0, 0.0;
    const PureState full = expand(SymmetricState{1, c});
    CHECK(std::abs(full.amplitudes()(0) - 1.0) <= 1e-15);
  }
  {
    Vector c(3);
    c << 0.0, 1.0, 0.0;
    const PureState full = expand(SymmetricState{2, c});
    REQUIRE(full.dim() == 4);
    CHECK(std::abs(full.amplitudes()(1) - 1.0 / std::sqrt(2.0)) <= 1e-14);
    CHECK(std::abs(full.amplitudes()(2) - 1.0 / std::sqrt(2.0)) <= 1e-14);
    CHECK(std::abs(full.amplitudes()(0)) <= 1e-15);
    CHECK(std::abs(full.amplitudes()(3)) <= 1e-15);
  }
  Rng rng(81);
  const SymmetricState s{8, rng.haar_vector(9)};
  CHECK(expand(s).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
  const SymmetricState big{25, rng.haar_vector(26)};
  CHECK_THROWS_AS(expand(big), BudgetExceeded);
}

TEST_CASE("symmetric state validation") {
  Vector c(3);
  c << 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(symmetric_fidelity(identity_channel(2), SymmetricState{2, c}),
                  DimensionMismatch);
  CHECK_THROWS_AS(symmetric_fidelity(identity_channel(3), SymmetricState{2, Vector(3)}),
                  DimensionMismatch);
}
