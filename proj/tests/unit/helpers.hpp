#pragma once

#include "semihilbert/linalg.hpp"

#include <doctest.h>

#include <initializer_list>

namespace testing {

using semihilbert::CMatrix;
using semihilbert::Complex;
using semihilbert::CVector;

inline CMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
    CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (const auto& v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline CMatrix diag(std::initializer_list<Complex> d) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (const auto& v : d) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

inline CVector vec(std::initializer_list<Complex> d) {
    CVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (const auto& x : d) v(i++) = x;
    return v;
}

inline CMatrix eye(Eigen::Index n) { return CMatrix::Identity(n, n); }

inline bool close(const CMatrix& a, const CMatrix& b, double tol = 1e-12) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() <= tol;
}

inline const CMatrix kA12 = diag({1.0, 2.0});              // A = diag(1, 2)
inline const CMatrix kX = mat({{0.0, 1.0}, {0.0, 0.0}});   // nilpotent X
inline const CMatrix kY = mat({{1.0, 0.0}, {0.0, 0.0}});   // rank-one projection Y

} // namespace testing
