#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qbc/builders.hpp"
#include "qbc/errors.hpp"
#include "qbc/fidelity.hpp"
#include "qbc/haar.hpp"
#include "qbc/protocols.hpp"

using namespace qbc;

namespace {

const SystemLayout kQubit({2});

ConnectionGraph diag(std::initializer_list<std::size_t> dims) {
  const std::vector<std::size_t> d(dims);
  return ConnectionGraph::diagonal(d);
}

KrausChannel qutrit_erasure_to_zero() {
  ComplexMatrix keep = ComplexMatrix::Zero(3, 3), drop = ComplexMatrix::Zero(3, 3);
  keep(0, 0) = keep(1, 1) = 1.0;
  drop(0, 2) = 1.0;
  const SystemLayout q3({3});
  return KrausChannel({keep, drop}, q3, q3);
}

bool same_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex overlap = (a.adjoint() * b).trace() / static_cast<double>(a.rows());
  return std::abs(std::abs(overlap) - 1.0) < 1e-10;
}

}  // namespace

TEST(Clifford, GroupStructure) {
  const auto group = clifford_1q();
  ASSERT_EQ(group.size(), 24u);
  EXPECT_TRUE(group.exact_design);
  require_unitary_ensemble(group);
  EXPECT_TRUE(same_up_to_phase(group.elements[0], ComplexMatrix::Identity(2, 2)));
  for (std::size_t a = 0; a < group.size(); ++a) {
    for (std::size_t b = a + 1; b < group.size(); ++b) {
      EXPECT_FALSE(same_up_to_phase(group.elements[a], group.elements[b]));
    }
  }
  // Closure under multiplication.
  for (const auto& u : group.elements) {
    for (const auto& v : group.elements) {
      const ComplexMatrix w = u * v;
      bool found = false;
      for (const auto& x : group.elements) found = found || same_up_to_phase(w, x);
      EXPECT_TRUE(found);
    }
  }
}

TEST(Clifford, SecondMomentMatchesHaar) {
  // (1/N) sum |tr U|^4 = 2 for a unitary 2-design on a qubit.
  const auto group = clifford_1q();
  double m = 0.0;
  for (const auto& u : group.elements) m += std::pow(std::abs(u.trace()), 4);
  EXPECT_NEAR(m / static_cast<double>(group.size()), 2.0, 1e-12);
}

TEST(Ensembles, SampledEnsembles) {
  RandomStream rng(21);
  const auto haar = haar_ensemble(3, 10, rng);
  EXPECT_EQ(haar.size(), 10u);
  EXPECT_EQ(haar.dim(), 3u);
  EXPECT_FALSE(haar.exact_design);
  require_unitary_ensemble(haar);
  EXPECT_TRUE(design_ensemble(2, 10, rng).exact_design);
  EXPECT_FALSE(design_ensemble(3, 10, rng).exact_design);
  UnitaryEnsemble bad{{ComplexMatrix::Ones(2, 2)}, false};
  EXPECT_THROW(require_unitary_ensemble(bad), DimensionError);
}

TEST(Twirl, CliffordTwirlMatchesHaarOracle) {
  RandomStream rng(22);
  const UnitaryEnsemble ens[] = {clifford_1q()};
  for (int trial = 0; trial < 10; ++trial) {
    const auto ch = builders::random_channel(kQubit, kQubit, 1 + trial % 4, rng);
    const auto tw = twirl_channel(ch, diag({2}), ens);
    EXPECT_TRUE(validate(tw).ok);
    for (int s = 0; s < 5; ++s) {
      const auto rho = random_density(kQubit, rng);
      const ComplexMatrix expected = oracle::haar_twirl_qubit(ch.kraus(), rho.matrix());
      EXPECT_LT((apply(tw, rho).matrix() - expected).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Twirl, PureStateFidelityIsConstant) {
  RandomStream rng(23);
  const UnitaryEnsemble ens[] = {clifford_1q()};
  for (int trial = 0; trial < 10; ++trial) {
    const auto ch = builders::random_channel(kQubit, kQubit, 2, rng);
    const auto tw = twirl_channel(ch, diag({2}), ens);
    const double avg = average_fidelity_exact(ch, diag({2}));
    double lo = 1.0, hi = 0.0;
    for (int s = 0; s < 100; ++s) {
      const std::vector<ComplexVector> psi{haar_state(2, rng)};
      const double f = pure_state_fidelity(tw, diag({2}), psi);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    EXPECT_LE(hi - lo, 1e-8);
    EXPECT_NEAR(lo, avg, 1e-8);
  }
}

TEST(Twirl, IdentityAndIdempotence) {
  const UnitaryEnsemble ens[] = {clifford_1q()};
  const auto tw_id = twirl_channel(builders::identity(kQubit), diag({2}), ens);
  EXPECT_NEAR(channel_fidelity(tw_id, diag({2})), 1.0, 1e-12);

  RandomStream rng(24);
  const auto ch = builders::random_channel(kQubit, kQubit, 2, rng);
  const auto once = twirl_channel(ch, diag({2}), ens);
  const auto twice = twirl_channel(once, diag({2}), ens);
  EXPECT_LT((choi_matrix(once) - choi_matrix(twice)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Twirl, TwoConnectionsPreserveAverageFidelity) {
  RandomStream rng(25);
  const UnitaryEnsemble ens[] = {clifford_1q(), clifford_1q()};
  const SystemLayout in({2, 2});
  const auto graph = diag({2, 2});
  const auto ch = builders::random_channel(in, in, 2, rng);
  const auto tw = twirl_channel(ch, graph, ens);
  EXPECT_TRUE(validate(tw).ok);
  EXPECT_NEAR(average_fidelity_exact(tw, graph), average_fidelity_exact(ch, graph), 1e-10);
  // The twirled channel's pure-state fidelity is constant over product inputs.
  const double avg = average_fidelity_exact(ch, graph);
  for (int s = 0; s < 20; ++s) {
    const std::vector<ComplexVector> psi{haar_state(2, rng), haar_state(2, rng)};
    EXPECT_NEAR(pure_state_fidelity(tw, graph, psi), avg, 1e-8);
  }
}

TEST(Twirl, ChoiFallbackMatchesLiteralSet) {
  RandomStream rng(26);
  const UnitaryEnsemble ens[] = {clifford_1q()};
  const auto ch = builders::random_channel(kQubit, kQubit, 3, rng);
  const auto literal = twirl_channel(ch, diag({2}), ens);
  const auto fallback = twirl_channel(ch, diag({2}), ens, 8);
  EXPECT_LE(fallback.kraus_count(), 4u);
  EXPECT_LT((choi_matrix(literal) - choi_matrix(fallback)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Twirl, RejectsMismatchedEnsembles) {
  const UnitaryEnsemble ens[] = {clifford_1q()};
  EXPECT_THROW(twirl_channel(builders::identity(SystemLayout({3})), diag({3}), ens), DimensionError);
}

TEST(Teleport, PerfectResourceIsIdentity) {
  for (const std::size_t d : {2, 3}) {
    const auto ch = teleport_channel(phi_plus(d));
    const std::size_t dims[] = {d};
    EXPECT_TRUE(validate(ch).ok);
    EXPECT_NEAR(channel_fidelity(ch, ConnectionGraph::diagonal(dims)), 1.0, 1e-12);
  }
}

TEST(Teleport, MixedResourceIsFullyDepolarizing) {
  RandomStream rng(27);
  const auto ch = teleport_channel(DensityOperator::maximally_mixed(SystemLayout({2, 2})));
  for (int s = 0; s < 5; ++s) {
    const auto out = apply(ch, random_density(kQubit, rng));
    EXPECT_LT((out.matrix() - ComplexMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Teleport, ChannelFidelityEqualsResourceOverlap) {
  RandomStream rng(28);
  for (const std::size_t d : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto resource = random_density(SystemLayout({d, d}), rng);
      const ComplexVector phi = phi_plus_vector(d);
      const double overlap = (phi.adjoint() * resource.matrix() * phi)(0, 0).real();
      const std::size_t dims[] = {d};
      EXPECT_NEAR(channel_fidelity(teleport_channel(resource), ConnectionGraph::diagonal(dims)), overlap, 1e-10);
    }
  }
}

TEST(Teleport, MonotoneInNoise) {
  double previous = 2.0;
  for (int k = 0; k <= 10; ++k) {
    const double eps = k / 10.0;
    const ComplexMatrix r = (1.0 - eps) * phi_plus(2).matrix() + eps * ComplexMatrix::Identity(4, 4) / 4.0;
    const double f = channel_fidelity(teleport_channel(DensityOperator(r, SystemLayout({2, 2}))), diag({2}));
    EXPECT_NEAR(f, 1.0 - 0.75 * eps, 1e-10);
    EXPECT_LT(f, previous);
    previous = f;
  }
  EXPECT_THROW(teleport_channel(DensityOperator::maximally_mixed(SystemLayout({2, 3}))), DimensionError);
}

TEST(Extraction, IdentityRemovesNothing) {
  const std::vector<DensityOperator> inputs{DensityOperator::maximally_mixed(kQubit),
                                            DensityOperator::maximally_mixed(kQubit)};
  const auto r = extract_subspace(builders::identity(SystemLayout({2, 2})), diag({2, 2}), inputs, 1e-6);
  EXPECT_TRUE(r.steps.empty());
  for (const double a : r.alphas) EXPECT_EQ(a, 0.0);
  for (const auto& s : r.subspaces) EXPECT_EQ(s.dim(), 2u);
  EXPECT_NEAR(r.eta, 0.0, 1e-12);
}

TEST(Extraction, QutritRecoversGoodSubspace) {
  const std::vector<DensityOperator> inputs{DensityOperator::maximally_mixed(SystemLayout({3}))};
  const auto ch = qutrit_erasure_to_zero();
  const auto r = extract_subspace(ch, diag({3}), inputs, 1e-6);
  ASSERT_EQ(r.subspaces.size(), 1u);
  EXPECT_EQ(r.subspaces[0].dim(), 2u);
  ComplexMatrix good = ComplexMatrix::Zero(3, 2);
  good(0, 0) = good(1, 1) = 1.0;
  EXPECT_GE(r.subspaces[0].overlap_with(SubspaceBasis(good)), 1.0 - 1e-6);
  EXPECT_NEAR(r.alphas[0], 1.0 / 3.0, 1e-6);
  EXPECT_GE(r.final_min_fidelity[0], 1.0 - 1e-6);
}

TEST(Extraction, ReconstructionAndAccounting) {
  RandomStream rng(29);
  const auto graph = diag({3, 2});
  for (int trial = 0; trial < 5; ++trial) {
    const SystemLayout q3({3});
    const KrausChannel parts[] = {
        builders::mixture(qutrit_erasure_to_zero(), builders::random_channel(q3, q3, 2, rng), 0.01),
        builders::mixture(builders::identity(kQubit), builders::random_channel(kQubit, kQubit, 2, rng), 0.01)};
    const auto ch = builders::product(parts, graph);
    // Weight 0.2 on |2>, the rest spread over a random basis of span{|0>,|1>}.
    ComplexMatrix rho0 = ComplexMatrix::Zero(3, 3);
    const ComplexMatrix u = haar_unitary(2, rng);
    ComplexMatrix low = ComplexMatrix::Zero(2, 2);
    low(0, 0) = 0.5;
    low(1, 1) = 0.3;
    rho0.topLeftCorner(2, 2) = u * low * u.adjoint();
    rho0(2, 2) = 0.2;
    const std::vector<DensityOperator> inputs{DensityOperator(rho0, q3), random_density(kQubit, rng)};
    ExtractionOptions opts;
    opts.search.restarts = 8;
    opts.search.seed = static_cast<std::uint64_t>(trial);
    opts.max_removed_weight = 0.9;
    const auto r = extract_subspace(ch, graph, inputs, 0.03, opts);
    ASSERT_FALSE(r.steps.empty());
    EXPECT_GT(std::norm(r.steps[0].state(2)), 0.95);
    for (std::size_t i = 0; i < 2; ++i) {
      ComplexMatrix rebuilt = (1.0 - r.alphas[i]) * r.remainders[i].matrix();
      double peeled = 0.0, loss = 0.0;
      std::size_t count = 0;
      for (const auto& step : r.steps) {
        if (step.connection != i) continue;
        rebuilt += step.weight * (step.state * step.state.adjoint());
        peeled += step.weight;
        loss += step.weight * (1.0 - step.fidelity);
        ++count;
      }
      EXPECT_LT((rebuilt - inputs[i].matrix()).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_NEAR(peeled, r.alphas[i], 1e-12);
      EXPECT_LE(loss, r.stage_eta[i] + 1e-9);
      // Each peel removes one dimension of support.
      EXPECT_EQ(r.subspaces[i].dim() + count, inputs[i].dim());
      EXPECT_GE(r.final_min_fidelity[i], 1.0 - 0.03);
    }
  }
}

TEST(Extraction, RejectsHeavyPeeling) {
  const std::vector<DensityOperator> inputs{DensityOperator::maximally_mixed(kQubit)};
  EXPECT_THROW(extract_subspace(builders::depolarizing(2, 0.9), diag({2}), inputs, 1e-3), InvalidState);
}

TEST(Extraction, MixedFidelityMatchesDirectComputation) {
  RandomStream rng(30);
  const SystemLayout in({2, 2});
  const auto ch = builders::random_channel(in, in, 2, rng);
  const std::vector<DensityOperator> inputs{random_density(kQubit, rng), random_density(kQubit, rng)};
  const ComplexVector phi = haar_state(2, rng);
  std::vector<DensityOperator> replaced = inputs;
  replaced[1] = DensityOperator::pure(phi, kQubit);
  EXPECT_NEAR(mixed_fidelity(ch, diag({2, 2}), inputs, 1, phi), entanglement_fidelity(ch, replaced, diag({2, 2})),
              1e-10);
}

TEST(PhaseAverage, Examples) {
  const SubspaceBasis full[] = {SubspaceBasis::full(2)};
  const auto ident = phase_average_bound(builders::identity(kQubit), diag({2}), full);
  EXPECT_NEAR(ident.eta, 0.0, 1e-12);
  EXPECT_TRUE(ident.holds);
  const auto deph = phase_average_bound(builders::dephasing(0.1), diag({2}), full);
  EXPECT_NEAR(deph.eta, 0.1, 1e-6);
  EXPECT_NEAR(deph.fe, 0.9, 1e-12);
  EXPECT_TRUE(deph.holds);
}

TEST(PhaseAverage, NearIdentityFixtures) {
  RandomStream rng(31);
  MinFidelityOptions opts;
  opts.restarts = 8;
  for (int trial = 0; trial < 100; ++trial) {
    const bool pair = trial % 2 == 1;
    const SystemLayout in = pair ? SystemLayout({2, 2}) : SystemLayout({3});
    const auto graph = pair ? diag({2, 2}) : diag({3});
    const double eps = 0.01 + 0.09 * rng.uniform();
    const auto ch = builders::mixture(builders::identity(in), builders::random_channel(in, in, 2, rng), eps);
    std::vector<SubspaceBasis> subspaces;
    if (pair) {
      subspaces = {SubspaceBasis::full(2), SubspaceBasis::full(2)};
    } else {
      subspaces.emplace_back(ComplexMatrix(haar_unitary(3, rng).leftCols(2)));
    }
    const auto report = phase_average_bound(ch, graph, subspaces, opts);
    EXPECT_TRUE(report.holds) << "fe " << report.fe << " rhs " << report.rhs;
  }
}
