#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lalign/euclid.hpp"
#include "test_util.hpp"

using lalign::Mat;
using lalign::Quat;

namespace {

Quat random_unit_quat(std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Quat q{dist(rng), dist(rng), dist(rng), dist(rng)};
    double n = std::sqrt(lalign::quat_norm2(q));
    return Quat{q.q0 / n, q.q1 / n, q.q2 / n, q.q3 / n};
}

}  // namespace

TEST_CASE("quat_mul: identity, ij = k, i^2 = -1") {
    Quat q{0.3, -0.4, 0.5, 0.7};
    Quat r = lalign::quat_mul(Quat{1, 0, 0, 0}, q);
    CHECK(r.q0 == q.q0);
    CHECK(r.q3 == q.q3);

    Quat i{0, 1, 0, 0}, j{0, 0, 1, 0};
    Quat k = lalign::quat_mul(i, j);
    CHECK(k.q0 == 0.0);
    CHECK(k.q3 == 1.0);

    Quat ii = lalign::quat_mul(i, i);
    CHECK(ii.q0 == -1.0);
    CHECK(ii.q1 == 0.0);
}

TEST_CASE("quat_mul: associativity and norm multiplicativity") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Quat a{dist(rng), dist(rng), dist(rng), dist(rng)};
        Quat b{dist(rng), dist(rng), dist(rng), dist(rng)};
        Quat c{dist(rng), dist(rng), dist(rng), dist(rng)};
        Quat ab_c = lalign::quat_mul(lalign::quat_mul(a, b), c);
        Quat a_bc = lalign::quat_mul(a, lalign::quat_mul(b, c));
        CHECK(ab_c.q0 == doctest::Approx(a_bc.q0).epsilon(1e-12));
        CHECK(ab_c.q1 == doctest::Approx(a_bc.q1).epsilon(1e-12));
        CHECK(ab_c.q2 == doctest::Approx(a_bc.q2).epsilon(1e-12));
        CHECK(ab_c.q3 == doctest::Approx(a_bc.q3).epsilon(1e-12));
        CHECK(lalign::quat_norm2(lalign::quat_mul(a, b)) ==
              doctest::Approx(lalign::quat_norm2(a) * lalign::quat_norm2(b)).epsilon(1e-12));
    }
}

TEST_CASE("quat_conj: components and norm identity") {
    Quat one = lalign::quat_conj(Quat{1, 0, 0, 0});
    CHECK(one.q0 == 1.0);
    CHECK(one.q1 == 0.0);

    Quat q{1, 2, 3, 4};
    Quat c = lalign::quat_conj(q);
    CHECK(c.q0 == 1.0);
    CHECK(c.q1 == -2.0);
    CHECK(c.q2 == -3.0);
    CHECK(c.q3 == -4.0);

    Quat qq = lalign::quat_mul(q, c);
    CHECK(qq.q0 == doctest::Approx(30.0));  // ||q||^2
    CHECK(qq.q1 == 0.0);
    CHECK(qq.q2 == 0.0);
    CHECK(qq.q3 == 0.0);
}

TEST_CASE("quat_rotate: identity, 90 degrees about z, isometry") {
    std::array<double, 3> r{0.3, -1.2, 0.8};
    auto same = lalign::quat_rotate(Quat{1, 0, 0, 0}, r);
    CHECK(same[0] == r[0]);
    CHECK(same[1] == r[1]);
    CHECK(same[2] == r[2]);

    double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
    auto rotated = lalign::quat_rotate(Quat{c, 0, 0, s}, {1, 0, 0});
    // oracle: the z-rotation matrix applied directly
    Mat rz{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
    CHECK(rotated[0] == doctest::Approx(rz(0, 0) * 1).epsilon(1e-14).scale(1.0));
    CHECK(rotated[1] == doctest::Approx(rz(1, 0) * 1).epsilon(1e-14).scale(1.0));
    CHECK(rotated[2] == doctest::Approx(0.0).scale(1.0));

    std::mt19937_64 rng(22);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        Quat q = random_unit_quat(rng);
        std::array<double, 3> v{dist(rng), dist(rng), dist(rng)};
        auto w = lalign::quat_rotate(q, v);
        double nv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        double nw = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        CHECK(nw == doctest::Approx(nv).epsilon(1e-12));
    }

    CHECK_THROWS_AS(lalign::quat_rotate(Quat{2, 0, 0, 0}, r), lalign::InvalidInput);
}

TEST_CASE("quat_to_matrix: identity, 90 degrees, double cover") {
    CHECK((lalign::quat_to_matrix(Quat{1, 0, 0, 0}) - Mat::identity(3)).frobenius_norm() == 0.0);

    double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
    Mat r = lalign::quat_to_matrix(Quat{c, 0, 0, s});
    CHECK((r - Mat{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}).frobenius_norm() <= 1e-15);

    // columns are quat_rotate of the basis vectors
    std::mt19937_64 rng(33);
    Quat q = random_unit_quat(rng);
    Mat m = lalign::quat_to_matrix(q);
    for (int j = 0; j < 3; ++j) {
        std::array<double, 3> e{0, 0, 0};
        e[static_cast<size_t>(j)] = 1.0;
        auto col = lalign::quat_rotate(q, e);
        for (int i = 0; i < 3; ++i)
            CHECK(m(i, j) == doctest::Approx(col[static_cast<size_t>(i)]).epsilon(1e-13).scale(1.0));
    }

    Quat neg{-q.q0, -q.q1, -q.q2, -q.q3};
    CHECK((lalign::quat_to_matrix(q) - lalign::quat_to_matrix(neg)).frobenius_norm() <= 1e-15);
}

TEST_CASE("kabsch: trivial and constructed cases") {
    std::mt19937_64 rng(44);
    Mat a = testutil::random_matrix(rng, 3, 5);
    lalign::KabschResult same = lalign::kabsch(a, a);
    CHECK((same.rotation - Mat::identity(3)).frobenius_norm() <= 1e-13);
    CHECK_FALSE(same.ambiguous);

    Mat basis = Mat::identity(3);
    Mat rz{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
    lalign::KabschResult r = lalign::kabsch(basis, rz * basis);
    CHECK((r.rotation - rz).frobenius_norm() <= 1e-13);
}

TEST_CASE("kabsch: recovers a random rotation from noiseless data") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        Mat r_true = lalign::quat_to_matrix(random_unit_quat(rng));
        Mat a = testutil::random_matrix(rng, 3, 10);
        lalign::KabschResult r = lalign::kabsch(a, r_true * a);
        CHECK((r.rotation - r_true).frobenius_norm() <= 1e-10);
    }
}

TEST_CASE("kabsch: proper rotation even on reflection-requiring data") {
    std::mt19937_64 rng(66);
    Mat reflect = Mat::identity(3);
    reflect(2, 2) = -1.0;
    for (int trial = 0; trial < 100; ++trial) {
        Mat a = testutil::random_matrix(rng, 3, 6);
        lalign::KabschResult r = lalign::kabsch(a, reflect * a);
        CHECK(lalign::det(r.rotation) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK((r.rotation.transposed() * r.rotation - Mat::identity(3)).frobenius_norm() <= 1e-10);
    }
}

TEST_CASE("kabsch: flags degenerate data") {
    Mat a(3, 4), b(3, 4);
    for (int j = 0; j < 4; ++j) {
        a(0, j) = j + 1.0;  // all columns along x
        b(1, j) = j + 1.0;  // all columns along y
    }
    lalign::KabschResult r = lalign::kabsch(a, b);
    CHECK(r.ambiguous);
    CHECK(lalign::det(r.rotation) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("kabsch: optimality against random rotations") {
    std::mt19937_64 rng(77);
    auto trace_obj = [](const Mat& q, const Mat& h) {
        double t = 0;
        Mat m = q.transposed() * h;
        for (int i = 0; i < 3; ++i) t += m(i, i);
        return t;
    };
    for (int problem = 0; problem < 5; ++problem) {
        Mat a = testutil::random_matrix(rng, 3, 4);
        Mat b = testutil::random_matrix(rng, 3, 4);
        Mat h = b * a.transposed();
        double best = trace_obj(lalign::kabsch(a, b).rotation, h);
        for (int probe = 0; probe < 10000; ++probe)
            CHECK(best >= trace_obj(lalign::quat_to_matrix(random_unit_quat(rng)), h) - 1e-9);
    }
}

TEST_CASE("horn: trivial and 90-degree cases") {
    std::mt19937_64 rng(88);
    Mat a = testutil::random_matrix(rng, 3, 5);
    lalign::HornResult same = lalign::horn(a, a);
    CHECK(std::fabs(same.q.q0) == doctest::Approx(1.0).epsilon(1e-10));

    Mat basis = Mat::identity(3);
    Mat rz{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
    lalign::HornResult r = lalign::horn(basis, rz * basis);
    // oracle: kabsch on the same data, quaternion identified up to sign
    CHECK((lalign::quat_to_matrix(r.q) - lalign::kabsch(basis, rz * basis).rotation).frobenius_norm() <= 1e-12);
    CHECK(r.q.q0 == doctest::Approx(std::cos(M_PI / 4)).epsilon(1e-12));
    CHECK(std::fabs(r.q.q3) == doctest::Approx(std::sin(M_PI / 4)).epsilon(1e-12));
}

TEST_CASE("horn == kabsch on random noisy problems") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> noise(0.0, 0.01);
    for (int trial = 0; trial < 1000; ++trial) {
        Mat r_true = lalign::quat_to_matrix(random_unit_quat(rng));
        Mat a = testutil::random_matrix(rng, 3, 10);
        Mat b = r_true * a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 10; ++j) b(i, j) += noise(rng);
        Mat from_horn = lalign::quat_to_matrix(lalign::horn(a, b).q);
        Mat from_kabsch = lalign::kabsch(a, b).rotation;
        CHECK((from_horn - from_kabsch).frobenius_norm() <= 1e-8);
    }
}

TEST_CASE("quat_canonical: sign conventions") {
    Quat q = lalign::quat_canonical(Quat{-0.5, 0.5, 0.5, 0.5});
    CHECK(q.q0 == 0.5);
    CHECK(q.q1 == -0.5);
    Quat z = lalign::quat_canonical(Quat{0.0, -1.0, 0.0, 0.0});
    CHECK(z.q1 == 1.0);
}
