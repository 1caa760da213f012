#include "arena/envelopes.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace arena;

namespace {

TrajectoryBundle bundle_for(const ModelParams& p, double t_end, std::size_t n, std::uint64_t seed) {
  const DriverPair d = make_drivers(t_end, n, seed, 0);
  return simulate_system(p, d.b1, d.b2);
}

std::size_t index_of(const TrajectoryBundle& b, double t) {
  return static_cast<std::size_t>(std::llround(t / b.dt));
}

}  // namespace

TEST(EnvelopeY, InitialPoint) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  const TrajectoryBundle b = bundle_for(p, 1.0, 100, 1);
  const PredatorEnvelope e = envelope_y(b, p);
  EXPECT_EQ(e.y_lo[0], p.y0);
  EXPECT_EQ(e.y_hi[0], p.y0);
}

TEST(EnvelopeY, CollapsesWithoutPredatorGain) {
  ModelParams p = ModelParams::figure2(0.5, 0.3);
  p.c2 = 0.0;
  const TrajectoryBundle b = bundle_for(p, 2.0, 200, 2);
  const PredatorEnvelope e = envelope_y(b, p);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(e.y_hi[i], e.y_lo[i]);
}

TEST(EnvelopeY, ContainsPathAtFive) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  const TrajectoryBundle b = bundle_for(p, 5.0, 5000, 3);
  const PredatorEnvelope e = envelope_y(b, p);
  const std::size_t i = index_of(b, 5.0);
  EXPECT_LE(e.y_lo[i], b.y[i]);
  EXPECT_LE(b.y[i], e.y_hi[i]);
}

TEST(EnvelopeX, InitialPoint) {
  const ModelParams p = ModelParams::figure2(1.5, 1.3);
  const TrajectoryBundle b = bundle_for(p, 1.0, 100, 4);
  const PreyEnvelope e = envelope_x(b, p, classify_regime(p));
  EXPECT_EQ(e.x_lo[0], p.x0);
  EXPECT_EQ(e.x_hi[0], p.x0);
}

TEST(EnvelopeX, CollapsesWithoutPredation) {
  ModelParams p = ModelParams::figure2(1.5, 1.3);
  p.c1 = 0.0;
  const TrajectoryBundle b = bundle_for(p, 2.0, 200, 5);
  const PreyEnvelope e = envelope_x(b, p, classify_regime(p));
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(e.x_lo[i], b.l1[i]);
    EXPECT_EQ(e.x_hi[i], b.l1[i]);
  }
}

TEST(EnvelopeX, ContainsPathAtSeveralTimes) {
  const ModelParams p = ModelParams::figure2(1.5, 1.3);
  const TrajectoryBundle b = bundle_for(p, 10.0, 10000, 6);
  const PreyEnvelope e = envelope_x(b, p, classify_regime(p));
  for (double t : {1.0, 5.0, 10.0}) {
    const std::size_t i = index_of(b, t);
    EXPECT_LE(e.x_lo[i], b.x[i]) << "t=" << t;
    EXPECT_LE(b.x[i], e.x_hi[i]) << "t=" << t;
  }
}

TEST(EnvelopeX, LowerIsMaxOfBothBranches) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  const TrajectoryBundle b = bundle_for(p, 10.0, 1000, 7);
  const PreyEnvelope e = envelope_x(b, p, classify_regime(p));
  bool saw_cap = false, saw_integral = false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double cap = b.l1[i] * std::exp(-p.c1 * b.t[i]);
    EXPECT_GE(e.x_lo[i], cap * (1.0 - 1e-12));
    saw_cap |= e.branch[i] == LowerBranch::PredationCap;
    saw_integral |= e.branch[i] == LowerBranch::IntegralEnvelope;
  }
  EXPECT_TRUE(saw_cap || saw_integral);
  EXPECT_EQ(e.suggested, LowerBranch::IntegralEnvelope);
}

TEST(Audit, UncoupledHasNoViolations) {
  ModelParams p = ModelParams::figure2(1.5, 1.3);
  p.c1 = p.c2 = 0.0;
  AuditOptions strict;
  strict.tol_rel = 0.0;
  for (std::size_t n : {100u, 1000u}) {
    const ViolationReport r = audit(bundle_for(p, 5.0, n, 8), p, strict);
    EXPECT_EQ(r.n_viol_x + r.n_viol_y, 0u);
    EXPECT_EQ(r.n_points, n + 1);
  }
}

TEST(Audit, FlippedInequalitiesAreCaught) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  AuditOptions flipped;
  flipped.flip_inequalities = true;
  const ViolationReport r = audit(bundle_for(p, 5.0, 5000, 9), p, flipped);
  EXPECT_GT(r.violation_fraction(), 0.1);
}

TEST(Audit, CoupledPathsAreContained) {
  const ModelParams p = ModelParams::figure2(1.5, 1.3);
  std::vector<TrajectoryBundle> bundles;
  for (std::uint64_t s = 0; s < 20; ++s) bundles.push_back(bundle_for(p, 10.0, 10000, 100 + s));
  const ViolationReport r = audit(bundles, p);
  EXPECT_LT(r.violation_fraction(), 1e-3);
  EXPECT_EQ(r.n_points, 20u * 10001u);
}

TEST(Audit, MergeIsCommutative) {
  ViolationReport a{10, 1, 2, 0.3, 0.1};
  ViolationReport b{5, 0, 4, 0.7, 0.1};
  ViolationReport ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  EXPECT_EQ(ab.n_points, ba.n_points);
  EXPECT_EQ(ab.n_viol_x, ba.n_viol_x);
  EXPECT_EQ(ab.n_viol_y, ba.n_viol_y);
  EXPECT_EQ(ab.worst_rel_excess, ba.worst_rel_excess);
  EXPECT_DOUBLE_EQ(ab.violation_fraction(), 7.0 / 30.0);
}

TEST(Audit, EmptyCollectionRejected) {
  EXPECT_THROW(audit(std::span<const TrajectoryBundle>{}, ModelParams{}), std::invalid_argument);
}

TEST(BundleCsv, SchemaHeaderAndStride) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  const TrajectoryBundle b = bundle_for(p, 1.0, 100, 10);
  std::ostringstream os;
  write_bundle_csv(os, b, p, 10);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# arena-csv schema=bundle/1");
  std::getline(in, line);
  EXPECT_EQ(line, "t,X,Y,L1,L2,y_lo,y_hi,x_lo,x_hi,regime_used");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9);
  }
  EXPECT_EQ(rows, 11u);
}
