#ifndef LALIGN_EUCLID_HPP
#define LALIGN_EUCLID_HPP

#include <array>

#include "lalign/matrix.hpp"

namespace lalign {

struct Quat {
    double q0 = 1, q1 = 0, q2 = 0, q3 = 0;
};

Quat quat_mul(const Quat& p, const Quat& q);
Quat quat_conj(const Quat& q);
double quat_norm2(const Quat& q);

/// Rotate r by the unit quaternion q (imaginary part of q (0,r) q*).
/// Throws InvalidInput when ||q|| deviates from 1 by more than 1e-10.
std::array<double, 3> quat_rotate(const Quat& q, const std::array<double, 3>& r);

/// 3x3 rotation matrix acting like quat_rotate. q and -q map to the same
/// matrix.
Mat quat_to_matrix(const Quat& q);

/// Sign-canonical form: q0 >= 0, first nonzero component positive when
/// q0 == 0. Makes test fixtures reproducible across the double cover.
Quat quat_canonical(const Quat& q);

struct KabschResult {
    Mat rotation;            // N x N, proper
    bool ambiguous = false;  // two smallest singular values of H both ~ 0
};

/// Optimal rotation R maximizing tr(R^T B A^T), columns of A and B are the
/// paired vectors. Determinant correction keeps the result in SO(N).
KabschResult kabsch(const Mat& a, const Mat& b);

struct HornResult {
    Quat q;                  // unit, canonical sign
    bool ambiguous = false;  // top eigenvalue gap < 1e-10 * ||N||_F
    double eigenvalue = 0;
};

/// Quaternion solution of the same alignment objective: principal
/// eigenvector of the symmetric 4x4 matrix built from S = A B^T.
HornResult horn(const Mat& a, const Mat& b);

}  // namespace lalign

#endif
