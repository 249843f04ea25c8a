#include <doctest.h>

#include <cmath>

#include "sdcm/reference.hpp"

using namespace sdcm;

namespace {

PlannerParams test_params(double eta = 0.3162) {
  return make_params(65.1, 9.81, 0.981, 2.3, eta, 3.0, 3.0, 0.12);
}

FootstepPlan two_segment_plan() {
  FootstepPlan plan;
  plan.steps.push_back({Vec3(0, 0, 0), M_PI / 8, 1.0});
  plan.steps.push_back({Vec3(0, 0, 0), -M_PI / 8, 1.0});
  return plan;
}

}  // namespace

TEST_CASE("empty plan is rejected") {
  FootstepPlan plan;
  CHECK_THROWS_AS(ReferenceTrajectory::build(plan, test_params()),
                  std::invalid_argument);
}

TEST_CASE("plan validation") {
  FootstepPlan plan;
  plan.steps.push_back({Vec3(0, 0, 0), 0.0, -1.0});
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan.steps[0].duration = 1.0;
  plan.steps.push_back({Vec3(0.2, 0, 0.1), 0.0, 1.0});
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);  // uneven ground
}

TEST_CASE("walking plan geometry") {
  const FootstepPlan plan = generate_walking_plan(0.25, 1.0, 4, 0.0);
  REQUIRE(plan.steps.size() == 4);
  CHECK(plan.steps[0].r_foot.x() == doctest::Approx(0.25));
  CHECK(plan.steps[1].r_foot.x() == doctest::Approx(0.50));
  CHECK(plan.steps[2].r_foot.x() == doctest::Approx(0.75));
  CHECK(plan.steps[3].r_foot.x() == doctest::Approx(1.00));

  WalkingPlanOptions opts;
  opts.vro_amplitude = M_PI / 8;
  opts.final_hold = 2.0;
  const FootstepPlan standing = generate_walking_plan(0.0, 1.0, 5, 0.0, opts);
  REQUIRE(standing.steps.size() == 6);
  for (int i = 0; i < 5; ++i) {
    CHECK(standing.steps[i].r_foot.x() == 0.0);
    const double expected = (i % 2 == 0) ? M_PI / 8 : -M_PI / 8;
    CHECK(standing.steps[i].phi_vro == doctest::Approx(expected));
  }
  CHECK(standing.steps[5].phi_vro == 0.0);
  CHECK(standing.steps[5].duration == 2.0);

  CHECK(generate_walking_plan(0.1, 0.5, 1, 0.0).steps.size() == 1);
  CHECK_THROWS_AS(generate_walking_plan(-0.1, 1.0, 1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_walking_plan(0.1, 1.0, 0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("lateral offsets alternate") {
  const FootstepPlan plan = generate_walking_plan(0.2, 1.0, 4, 0.1);
  CHECK(plan.steps[0].r_foot.y() == doctest::Approx(0.1));
  CHECK(plan.steps[1].r_foot.y() == doctest::Approx(-0.1));
  CHECK(plan.steps[2].r_foot.y() == doctest::Approx(0.1));
}

TEST_CASE("single segment with terminal at the input is the fixed point") {
  FootstepPlan plan;
  plan.steps.push_back({Vec3(0.1, 0, 0), M_PI / 8, 2.0});
  const PlannerParams p = test_params();
  const auto traj = ReferenceTrajectory::build(plan, p);
  for (double t = 0.0; t <= 2.0; t += 0.25) {
    const ReferenceSample s = traj.sample(t);
    CHECK(s.xi_a_d == doctest::Approx(M_PI / 8).epsilon(1e-15));
    CHECK(s.xi_a_dot_d == doctest::Approx(0.0).epsilon(1e-15));
    for (int i = 0; i < 3; ++i) {
      CHECK(s.xi_l_d(i) == doctest::Approx(s.r_vrp_const(i)).epsilon(1e-15));
    }
  }
}

TEST_CASE("two-segment keypoint matches the scalar recursion") {
  const PlannerParams p = test_params(0.3162);
  const auto traj = ReferenceTrajectory::build(two_segment_plan(), p,
                                               std::nullopt, M_PI / 8);

  // Independent evaluation of the backward step:
  // xi_eos0 = phi1 + exp(-dt/eta) * (terminal - phi1).
  const double expected =
      -M_PI / 8 + std::exp(-1.0 / 0.3162) * (M_PI / 8 - (-M_PI / 8));
  CHECK(traj.segments()[0].xi_a_eos == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(-0.359466).epsilon(1e-5));
}

TEST_CASE("all VRPs equal keeps the linear reference constant") {
  const PlannerParams p = test_params();
  const FootstepPlan plan = generate_walking_plan(0.0, 1.0, 3, 0.0);
  const auto traj = ReferenceTrajectory::build(plan, p);
  for (double t = 0.0; t <= 3.0; t += 0.1) {
    const ReferenceSample s = traj.sample(t);
    CHECK((s.xi_l_d - s.r_vrp_const).norm() <= 1e-14);
    CHECK(s.xi_l_dot_d.norm() <= 1e-13);
  }
}

TEST_CASE("continuity across segment boundaries") {
  WalkingPlanOptions opts;
  opts.vro_amplitude = M_PI / 6;
  opts.final_hold = 1.0;
  const FootstepPlan plan = generate_walking_plan(0.25, 1.0, 6, 0.05, opts);
  const PlannerParams p = test_params();
  const auto traj = ReferenceTrajectory::build(plan, p);
  for (size_t i = 1; i < traj.segments().size(); ++i) {
    const double tb = traj.segments()[i].t_start;
    const ReferenceSample before =
        traj.sample_in_segment(static_cast<int>(i) - 1, tb);
    const ReferenceSample after =
        traj.sample_in_segment(static_cast<int>(i), tb);
    CHECK((before.xi_l_d - after.xi_l_d).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(before.xi_a_d - after.xi_a_d) <= 1e-12);
  }
}

TEST_CASE("derivative identity holds pointwise") {
  WalkingPlanOptions opts;
  opts.vro_amplitude = M_PI / 6;
  const FootstepPlan plan = generate_walking_plan(0.25, 1.0, 5, 0.0, opts);
  const PlannerParams p = test_params();
  const auto traj = ReferenceTrajectory::build(plan, p);
  for (double t = 0.0; t < 5.0; t += 0.0321) {
    const ReferenceSample s = traj.sample(t);
    const Vec3 expect_l = (s.xi_l_d - s.r_vrp_const) / p.b;
    CHECK((s.xi_l_dot_d - expect_l).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(s.xi_a_dot_d - (s.xi_a_d - s.phi_vro_const) / p.eta) <=
          1e-12);
  }
}

TEST_CASE("derivatives match central differences at second order") {
  WalkingPlanOptions opts;
  opts.vro_amplitude = M_PI / 6;
  const FootstepPlan plan = generate_walking_plan(0.25, 1.0, 3, 0.0, opts);
  const PlannerParams p = test_params();
  const auto traj = ReferenceTrajectory::build(plan, p);

  auto max_fd_error = [&](double dt) {
    double worst = 0.0;
    for (double t = 0.2; t < 0.8; t += 0.05) {  // interior of segment 0
      const ReferenceSample mid = traj.sample(t);
      const ReferenceSample lo = traj.sample(t - dt);
      const ReferenceSample hi = traj.sample(t + dt);
      const double fd = (hi.xi_a_d - lo.xi_a_d) / (2.0 * dt);
      worst = std::max(worst, std::abs(fd - mid.xi_a_dot_d));
    }
    return worst;
  };
  const double err_h = max_fd_error(1e-3);
  const double err_h2 = max_fd_error(5e-4);
  CHECK(err_h / err_h2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("rest property at the terminal time") {
  WalkingPlanOptions opts;
  opts.vro_amplitude = M_PI / 8;
  opts.final_hold = 1.5;
  const FootstepPlan plan = generate_walking_plan(0.2, 1.0, 4, 0.0, opts);
  const PlannerParams p = test_params();
  const auto traj = ReferenceTrajectory::build(plan, p);
  const ReferenceSample end = traj.sample(traj.t_end());
  CHECK(end.xi_l_dot_d.norm() <= 1e-12);
  CHECK(std::abs(end.xi_a_dot_d) <= 1e-12);
  CHECK((end.xi_l_d - end.r_vrp_const).norm() <= 1e-12);
}

TEST_CASE("out-of-range sampling") {
  const PlannerParams p = test_params();
  const auto traj = ReferenceTrajectory::build(two_segment_plan(), p);
  CHECK_THROWS_AS(traj.sample(-0.1, OutOfRangePolicy::kError),
                  std::out_of_range);
  CHECK_THROWS_AS(traj.sample(2.5, OutOfRangePolicy::kError),
                  std::out_of_range);
  const ReferenceSample past = traj.sample(5.0, OutOfRangePolicy::kClamp);
  const ReferenceSample at_end = traj.sample(2.0);
  CHECK(past.xi_a_d == doctest::Approx(at_end.xi_a_d));
  CHECK(past.xi_a_dot_d == 0.0);
  CHECK(past.xi_l_dot_d.norm() == 0.0);
}
