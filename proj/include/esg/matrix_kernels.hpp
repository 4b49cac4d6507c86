// SPDX-License-Identifier: Apache-2.0
//
// noma-esg  uplink NOMA vs. OMA ergodic sum-rate analysis
// Copyright (C) 2026 The noma-esg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace esg {

using complexd = std::complex<double>;

class NotPositiveDefiniteError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Small dense complex matrix, row-major. Sized for detection kernels with at
// most a handful of antennas; no attempt at blocking or sparsity.
class ComplexMatrix
{
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols)
    {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("matrix dimensions must be positive");
    }

    static ComplexMatrix identity(int n)
    {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    complexd& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
    const complexd& operator()(int r, int c) const
    {
        return entries_[static_cast<std::size_t>(r) * cols_ + c];
    }

    std::span<const complexd> entries() const { return entries_; }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<complexd> entries_;
};

// Normalized zero-forcing detection vectors for one user group: vectors[k]
// has unit norm, is orthogonal to every other user's channel in the group,
// and carries the fixed phase convention (first nonzero entry real >= 0).
struct ZfVectors
{
    std::vector<std::vector<complexd>> vectors;
};

// I_dim + weight * sum_k v_k v_k^H over the given columns. The mirror-fill
// keeps the result Hermitian to the last bit.
inline ComplexMatrix gram_plus_identity(int dim, std::span<const std::vector<complexd>> vectors,
                                        double weight)
{
    ComplexMatrix a = ComplexMatrix::identity(dim);
    for (const auto& v : vectors)
    {
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("gram_plus_identity: vector length mismatch");
        for (int i = 0; i < dim; ++i)
        {
            for (int j = i; j < dim; ++j)
            {
                a(i, j) += weight * v[i] * std::conj(v[j]);
                if (j != i)
                    a(j, i) = std::conj(a(i, j));
            }
        }
    }
    return a;
}

// ln det of a Hermitian positive definite matrix via an in-place Cholesky
// factorization: 2 sum_j ln L_jj. Summing log pivots instead of taking
// det-then-log keeps eight-antenna budgets with tiny channel gains away from
// underflow. Throws NotPositiveDefiniteError on a non-positive pivot.
inline double logdet_hpd(const ComplexMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("logdet_hpd: matrix must be square");
    const int n = a.rows();
    ComplexMatrix l = a;
    double logdet = 0.0;
    for (int j = 0; j < n; ++j)
    {
        double diag = l(j, j).real();
        for (int k = 0; k < j; ++k)
            diag -= std::norm(l(j, k));
        if (!(diag > 0.0))
            throw NotPositiveDefiniteError("logdet_hpd: non-positive pivot");
        const double root = std::sqrt(diag);
        l(j, j) = root;
        logdet += std::log(root);
        for (int i = j + 1; i < n; ++i)
        {
            complexd v = l(i, j);
            for (int k = 0; k < j; ++k)
                v -= l(i, k) * std::conj(l(j, k));
            l(i, j) = v / root;
        }
    }
    return 2.0 * logdet;
}

namespace detail {

// LU factorization with partial pivoting, applied to the augmented [A | I]
// block to produce the inverse. Returns the inverse; fails on zero pivots.
inline ComplexMatrix invert_with_pivoting(const ComplexMatrix& a)
{
    const int n = a.rows();
    ComplexMatrix work = a;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (int col = 0; col < n; ++col)
    {
        int pivot_row = col;
        double pivot_mag = std::abs(work(col, col));
        for (int r = col + 1; r < n; ++r)
        {
            const double mag = std::abs(work(r, col));
            if (mag > pivot_mag)
            {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if (!(pivot_mag > 0.0))
            throw SingularMatrixError("zero pivot in group channel matrix");
        if (pivot_row != col)
        {
            for (int c = 0; c < n; ++c)
            {
                std::swap(work(pivot_row, c), work(col, c));
                std::swap(inv(pivot_row, c), inv(col, c));
            }
        }
        const complexd pivot = work(col, col);
        for (int c = 0; c < n; ++c)
        {
            work(col, c) /= pivot;
            inv(col, c) /= pivot;
        }
        for (int r = 0; r < n; ++r)
        {
            if (r == col)
                continue;
            const complexd factor = work(r, col);
            if (factor == complexd{})
                continue;
            for (int c = 0; c < n; ++c)
            {
                work(r, c) -= factor * work(col, c);
                inv(r, c) -= factor * inv(col, c);
            }
        }
    }
    return inv;
}

inline double frobenius_norm(const ComplexMatrix& a)
{
    double acc = 0.0;
    for (const complexd& v : a.entries())
        acc += std::norm(v);
    return std::sqrt(acc);
}

} // namespace detail

// ZF detection vectors from the pseudoinverse of the square group channel
// matrix: w_k is the unit-normalized k-th column of (Hg^{-1})^H, which is
// orthogonal to every h_j with j != k. Groups whose Frobenius condition
// estimate exceeds 1e10 raise SingularMatrixError so the caller can resample
// instead of working with a numerically meaningless projection.
inline ZfVectors zf_detection_vectors(const ComplexMatrix& hg)
{
    if (hg.rows() != hg.cols())
        throw std::invalid_argument("zf_detection_vectors: group matrix must be square");
    const int n = hg.rows();
    const ComplexMatrix inv = detail::invert_with_pivoting(hg);
    const double cond_estimate = detail::frobenius_norm(hg) * detail::frobenius_norm(inv);
    if (!(cond_estimate < 1e10))
        throw SingularMatrixError("ill-conditioned group channel matrix");

    ZfVectors zf;
    zf.vectors.assign(n, std::vector<complexd>(n));
    for (int k = 0; k < n; ++k)
    {
        // Column k of (Hg^{-1})^H is the conjugated k-th row of Hg^{-1}.
        std::vector<complexd>& w = zf.vectors[k];
        double norm_sq = 0.0;
        for (int m = 0; m < n; ++m)
        {
            w[m] = std::conj(inv(k, m));
            norm_sq += std::norm(w[m]);
        }
        const double inv_norm = 1.0 / std::sqrt(norm_sq);
        for (complexd& v : w)
            v *= inv_norm;
        for (int m = 0; m < n; ++m)
        {
            const double mag = std::abs(w[m]);
            if (mag > 0.0)
            {
                const complexd phase = std::conj(w[m]) / mag;
                for (complexd& v : w)
                    v *= phase;
                break;
            }
        }
    }
    return zf;
}

} // namespace esg
