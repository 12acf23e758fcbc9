#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aqs/errors.hpp"
#include "aqs/spectral.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aqs;

namespace {

Schedule schedule_for(bool modified, double n) {
  return modified ? Schedule::modified(std::sqrt(n)) : Schedule::linear();
}

}  // namespace

TEST_CASE("effective hamiltonian entries") {
  SUBCASE("N=2 linear midpoint") {
    const EffectiveHamiltonian h = effective_hamiltonian(2.0, Schedule::linear(), 0.5);
    CHECK(h.h11 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(h.h12 == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(h.h22 == doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("agrees with the projector construction") {
    for (double n : {2.0, 3.0, 100.0, 1e6}) {
      for (bool modified : {false, true}) {
        const Schedule sched = schedule_for(modified, n);
        for (double s : {0.0, 0.2, 0.5, 0.9, 1.0}) {
          const ScheduleSample p = sched.eval(s);
          const Eigen::Matrix2d ref = oracle::plane_matrix(n, p.f, p.g);
          const EffectiveHamiltonian h = effective_hamiltonian(n, sched, s);
          const double scale = std::max(1.0, std::abs(p.f) + std::abs(p.g));
          CHECK(std::abs(h.h11 - ref(0, 0)) <= 1e-14 * scale);
          CHECK(std::abs(h.h12 - ref(0, 1)) <= 1e-14 * scale);
          CHECK(std::abs(h.h22 - ref(1, 1)) <= 1e-14 * scale);
        }
      }
    }
  }
  SUBCASE("s=0 spectrum is {0, 1} for any N") {
    for (double n : {2.0, 17.0, 1e4, 1e12}) {
      const PlaneEigensystem eig = eigensystem(effective_hamiltonian(n, Schedule::linear(), 0.0));
      CHECK(std::abs(eig.e_minus) <= 1e-12);
      CHECK(std::abs(eig.e_plus - 1.0) <= 1e-12);
    }
  }
  SUBCASE("N=10^4 linear midpoint eigenvalues (1 -+ 0.01)/2") {
    const PlaneEigensystem eig =
        eigensystem(effective_hamiltonian(1e4, Schedule::linear(), 0.5));
    CHECK(eig.e_minus == doctest::Approx(0.495).epsilon(1e-12));
    CHECK(eig.e_plus == doctest::Approx(0.505).epsilon(1e-12));
  }
  SUBCASE("N < 2 is rejected") {
    CHECK_THROWS_AS(effective_hamiltonian(1.0, Schedule::linear(), 0.5), DomainError);
    CHECK_THROWS_AS(spectral_point(1.999, Schedule::linear(), 0.5), DomainError);
  }
}

TEST_CASE("ground eigenvector convention") {
  SUBCASE("s=0 ground state is the uniform superposition") {
    const double n = 64.0;
    const PlaneEigensystem eig = eigensystem(effective_hamiltonian(n, Schedule::linear(), 0.0));
    CHECK(eig.ground.m == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    CHECK(eig.ground.perp == doctest::Approx(std::sqrt(63.0) / 8.0).epsilon(1e-14));
  }
  SUBCASE("s=1 ground state is the marked item") {
    const PlaneEigensystem eig = eigensystem(effective_hamiltonian(64.0, Schedule::linear(), 1.0));
    CHECK(eig.ground.m == doctest::Approx(1.0));
    CHECK(std::abs(eig.ground.perp) <= 1e-15);
  }
  SUBCASE("pure perp ground state gets a nonnegative perp component") {
    EffectiveHamiltonian h;
    h.h11 = 1.0;
    h.h12 = 0.0;
    h.h22 = 0.0;
    const PlaneEigensystem eig = eigensystem(h);
    CHECK(eig.ground.m == 0.0);
    CHECK(eig.ground.perp == 1.0);
  }
  SUBCASE("eigenpairs solve H v = E v with m-component >= 0") {
    for (double n : {2.0, 10.0, 1e4, 1e8}) {
      for (bool modified : {false, true}) {
        const Schedule sched = schedule_for(modified, n);
        for (int i = 0; i <= 40; ++i) {
          const EffectiveHamiltonian h = effective_hamiltonian(n, sched, i / 40.0);
          const PlaneEigensystem eig = eigensystem(h);
          const double scale = std::max(1.0, std::abs(h.h11) + std::abs(h.h22));
          CHECK(eig.ground.m >= 0.0);
          const double r1 = h.h11 * eig.ground.m + h.h12 * eig.ground.perp - eig.e_minus * eig.ground.m;
          const double r2 = h.h12 * eig.ground.m + h.h22 * eig.ground.perp - eig.e_minus * eig.ground.perp;
          CHECK(std::hypot(r1, r2) <= 1e-13 * scale);
          CHECK(std::hypot(eig.ground.m, eig.ground.perp) == doctest::Approx(1.0).epsilon(1e-15));
        }
      }
    }
  }
}

TEST_CASE("spectral point examples") {
  SUBCASE("linear N=10^4 minimum gap 1/sqrt(N)") {
    CHECK(std::abs(spectral_point(1e4, Schedule::linear(), 0.5).gap - 0.01) <= 1e-15);
  }
  SUBCASE("gap is 1 at s=0") {
    for (double n : {2.0, 1e4, 1e16}) {
      CHECK(spectral_point(n, Schedule::linear(), 0.0).gap == 1.0);
      CHECK(spectral_point(n, Schedule::modified(std::sqrt(n)), 0.0).gap == 1.0);
    }
  }
  SUBCASE("modified N=10^8 midpoint") {
    // f = g = 0.5 + 10^4/4 = 2500.5, gap = 2 f / sqrt(N)
    const SpectralPoint p = spectral_point(1e8, Schedule::modified(1e4), 0.5);
    CHECK(p.gap == doctest::Approx(0.50010).epsilon(1e-12));
    CHECK(p.e_minus == doctest::Approx(2500.24995).epsilon(1e-13));
    CHECK(std::abs(p.e_minus - 1e4 / 4.0) / (1e4 / 4.0) < 1e-4);
    // large-N form 1 - 2s(1-s)
    CHECK(std::abs(p.gap - 0.5) <= 3.0 / 1e4);
  }
}

TEST_CASE("spectral point invariants") {
  for (double n : {2.0, 5.0, 1e4, 1e8}) {
    for (bool modified : {false, true}) {
      const Schedule sched = schedule_for(modified, n);
      for (int i = 0; i <= 50; ++i) {
        const SpectralPoint p = spectral_point(n, sched, i / 50.0);
        const double scale = std::max(1.0, p.f + p.g);
        CHECK(std::abs(p.gap - (p.e_plus - p.e_minus)) <= 1e-12 * scale);
        CHECK(std::abs(p.e_minus + p.e_plus - (p.f + p.g)) <= 1e-12 * scale);
        CHECK(std::abs(p.gap - oracle::gap(n, p.f, p.g)) <= 1e-12 * scale);
        CHECK(p.gap > 0.0);
      }
      CHECK(spectral_point(n, sched, 0.0).e_minus == 0.0);
      CHECK(spectral_point(n, sched, 1.0).e_minus == 0.0);
    }
  }
}

TEST_CASE("matrix element") {
  SUBCASE("closed form") {
    for (double n : {2.0, 64.0, 1e4, 1e10}) {
      for (bool modified : {false, true}) {
        const Schedule sched = schedule_for(modified, n);
        for (int i = 0; i <= 50; ++i) {
          const ScheduleSample q = sched.eval(i / 50.0);
          const SpectralPoint p = spectral_point(n, sched, q.s);
          const double ref = oracle::matrix_element(n, q.f, q.g, q.df, q.dg);
          CHECK(p.matrix_element == doctest::Approx(ref).epsilon(1e-10));
        }
      }
    }
  }
  SUBCASE("finite differences of H, 51 points, h=1e-6") {
    for (double n : {4.0, 100.0, 1e4}) {
      const double a = std::sqrt(n);
      const auto lin = [](double s) { return std::pair{1.0 - s, s}; };
      const auto mod = [a](double s) {
        return std::pair{oracle::modified_f(a, s), oracle::modified_g(a, s)};
      };
      for (int i = 0; i <= 50; ++i) {
        const double s = i / 50.0;
        CHECK(std::abs(spectral_point(n, Schedule::linear(), s).matrix_element -
                       oracle::matrix_element_fd(n, lin, s, 1e-6)) <= 1e-5);
        CHECK(std::abs(spectral_point(n, Schedule::modified(a), s).matrix_element -
                       oracle::matrix_element_fd(n, mod, s, 1e-6)) <= 1e-5);
      }
    }
  }
}

TEST_CASE("gap curves") {
  const auto gaps = [](double n, const Schedule& sched, std::size_t points) {
    std::vector<double> out;
    for (const SpectralPoint& p : gap_curve(n, sched, points)) out.push_back(p.gap);
    return out;
  };
  SUBCASE("linear N=10^4, 3 points") {
    const auto g = gaps(1e4, Schedule::linear(), 3);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == 1.0);
    CHECK(std::abs(g[1] - 0.01) <= 1e-15);
    CHECK(g[2] == 1.0);
  }
  SUBCASE("modified N=10^4, 3 points") {
    const auto g = gaps(1e4, Schedule::modified(100.0), 3);
    CHECK(g[0] == 1.0);
    // f = g = 25.5 at s = 1/2
    CHECK(std::abs(g[1] - oracle::gap(1e4, 25.5, 25.5)) <= 1e-12);
    CHECK(g[2] == 1.0);
  }
  SUBCASE("two points are the endpoints") {
    const auto curve = gap_curve(4.0, Schedule::linear(), 2);
    CHECK(curve[0].s == 0.0);
    CHECK(curve[1].s == 1.0);
    CHECK(curve[0].gap == 1.0);
    CHECK(curve[1].gap == 1.0);
  }
  SUBCASE("ascending s") {
    const auto curve = gap_curve(50.0, Schedule::linear(), 201);
    CHECK(std::is_sorted(curve.begin(), curve.end(),
                         [](const SpectralPoint& a, const SpectralPoint& b) { return a.s < b.s; }));
    CHECK(curve[100].s == 0.5);
  }
  CHECK_THROWS_AS(gap_curve(10.0, Schedule::linear(), 1), DomainError);
}

TEST_CASE("dense hamiltonian") {
  SUBCASE("N=2 linear midpoint") {
    const Eigen::MatrixXd h = dense_hamiltonian(2, Schedule::linear(), 0.5);
    CHECK(h(0, 0) == doctest::Approx(0.25));
    CHECK(h(0, 1) == doctest::Approx(-0.25));
    CHECK(h(1, 0) == doctest::Approx(-0.25));
    CHECK(h(1, 1) == doctest::Approx(0.75));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    CHECK(eig.eigenvalues()(0) == doctest::Approx((1.0 - std::sqrt(0.5)) / 2.0).epsilon(1e-14));
    CHECK(eig.eigenvalues()(1) == doctest::Approx((1.0 + std::sqrt(0.5)) / 2.0).epsilon(1e-14));
  }
  SUBCASE("N=3 at s=0 is I - P0") {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        dense_hamiltonian(3, Schedule::modified(std::sqrt(3.0)), 0.0));
    CHECK(std::abs(eig.eigenvalues()(0)) <= 1e-14);
    CHECK(eig.eigenvalues()(1) == doctest::Approx(1.0));
    CHECK(eig.eigenvalues()(2) == doctest::Approx(1.0));
  }
  SUBCASE("N=64 modified s=0.37") {
    const Schedule sched = Schedule::modified(8.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_hamiltonian(64, sched, 0.37));
    const SpectralPoint p = spectral_point(64.0, sched, 0.37);
    CHECK(std::abs(eig.eigenvalues()(0) - p.e_minus) <= 1e-10);
    CHECK(std::abs(eig.eigenvalues()(1) - p.e_plus) <= 1e-10);
  }
  SUBCASE("symmetric") {
    const Eigen::MatrixXd h = dense_hamiltonian(17, Schedule::modified(3.0), 0.3);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("size guard") {
    CHECK_THROWS_AS(dense_hamiltonian(kDenseOracleMaxN + 1, Schedule::linear(), 0.5), SizeError);
    CHECK_THROWS_AS(dense_hamiltonian(1, Schedule::linear(), 0.5), DomainError);
  }
}

TEST_CASE("dense oracle equivalence over N, schedules and s") {
  for (int n : {2, 4, 16, 64, 256}) {
    for (bool modified : {false, true}) {
      const Schedule sched = schedule_for(modified, n);
      for (int i = 0; i <= 20; ++i) {
        const double s = i / 20.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_hamiltonian(n, sched, s),
                                                           Eigen::EigenvaluesOnly);
        const SpectralPoint p = spectral_point(n, sched, s);
        const Eigen::VectorXd& ev = eig.eigenvalues();
        // The two plane eigenvalues and N-2 copies of f+g, in sorted order.
        std::vector<double> expected(n - 2, p.f + p.g);
        expected.push_back(p.e_minus);
        expected.push_back(p.e_plus);
        std::sort(expected.begin(), expected.end());
        double worst = 0.0;
        for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(ev(j) - expected[j]));
        CHECK(worst <= 1e-10);
        CHECK(std::abs(ev(0) - p.e_minus) <= 1e-10);
      }
    }
  }
}

TEST_CASE("gap properties") {
  SUBCASE("linear gap symmetric under s -> 1-s") {
    for (double n : {2.0, 37.0, 1e4, 1e9}) {
      for (int i = 0; i <= 100; ++i) {
        const double s = i / 100.0;
        CHECK(std::abs(spectral_point(n, Schedule::linear(), s).gap -
                       spectral_point(n, Schedule::linear(), 1.0 - s).gap) <= 1e-12);
      }
    }
  }
  SUBCASE("modified gap approaches 1 - 2s(1-s) at N=10^8") {
    const double n = 1e8;
    const Schedule sched = Schedule::modified(1e4);
    for (int i = 0; i <= 200; ++i) {
      const double s = i / 200.0;
      CHECK(std::abs(spectral_point(n, sched, s).gap - (1.0 - 2.0 * s * (1.0 - s))) <=
            3.0 / std::sqrt(n));
    }
  }
  SUBCASE("modified minimum sits at s=1/2") {
    const auto curve = gap_curve(1e4, Schedule::modified(100.0), 201);
    const auto it = std::min_element(curve.begin(), curve.end(),
                                     [](const auto& a, const auto& b) { return a.gap < b.gap; });
    CHECK(it->s == 0.5);
  }
}

TEST_CASE("shifted ground energy") {
  CHECK(shifted_ground_energy(spectral_point(1e4, Schedule::linear(), 0.0)) == 0.0);
  CHECK(shifted_ground_energy(spectral_point(1e8, Schedule::modified(1e4), 0.5)) ==
        doctest::Approx(2500.24995).epsilon(1e-13));
  CHECK(shifted_ground_energy(spectral_point(1e4, Schedule::linear(), 0.5)) ==
        doctest::Approx(0.495).epsilon(1e-14));
}
