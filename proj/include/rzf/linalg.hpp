// SPDX-License-Identifier: Apache-2.0
//
// rzf-loading: asymptotic SLNR analysis and user-loading optimization for RZF precoding
// Copyright (C) 2026 The rzf-loading authors
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

#ifndef RZF_LINALG_HPP
#define RZF_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rzf
{
    using cplx = std::complex<double>;

    // Dense complex matrix, column-major. Column c is contiguous, which is what
    // every kernel in this library walks along (channel vectors are columns).
    class complex_matrix
    {
    public:
        complex_matrix(std::size_t rows, std::size_t cols); // zero-filled; rows, cols >= 1

        // Row-major literal, for tests and small examples
        static complex_matrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
        static complex_matrix identity(std::size_t n);

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool is_square() const noexcept { return rows_ == cols_; }

        cplx &operator()(std::size_t r, std::size_t c) noexcept { return data_[c * rows_ + r]; }
        const cplx &operator()(std::size_t r, std::size_t c) const noexcept { return data_[c * rows_ + r]; }

        std::span<cplx> col(std::size_t c) noexcept { return {data_.data() + c * rows_, rows_}; }
        std::span<const cplx> col(std::size_t c) const noexcept { return {data_.data() + c * rows_, rows_}; }

        std::span<cplx> data() noexcept { return data_; }
        std::span<const cplx> data() const noexcept { return data_; }

        bool is_finite() const noexcept;
        double frobenius_norm() const;
        complex_matrix adjoint() const;

        complex_matrix &operator+=(const complex_matrix &other);
        complex_matrix &operator-=(const complex_matrix &other);
        complex_matrix &operator*=(cplx s);

    private:
        std::size_t rows_;
        std::size_t cols_;
        std::vector<cplx> data_;
    };

    complex_matrix operator+(complex_matrix a, const complex_matrix &b);
    complex_matrix operator-(complex_matrix a, const complex_matrix &b);
    complex_matrix operator*(const complex_matrix &a, const complex_matrix &b);

    // A^* B without forming the adjoint
    complex_matrix adjoint_times(const complex_matrix &a, const complex_matrix &b);

    // Hermitian matrix. Construction checks A = A^* to 1e-12 relative to the
    // largest entry, then stores the exactly symmetrised average.
    class hermitian_matrix
    {
    public:
        explicit hermitian_matrix(complex_matrix m);

        // Skips the tolerance check; for results of Hermitian-preserving arithmetic
        static hermitian_matrix symmetrize(complex_matrix m);
        static hermitian_matrix identity(std::size_t n);
        static hermitian_matrix diagonal(std::span<const double> d);

        std::size_t dim() const noexcept { return m_.rows(); }
        cplx operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }
        const complex_matrix &matrix() const noexcept { return m_; }

        bool is_diagonal() const noexcept;

    private:
        struct unchecked_tag
        {
        };
        hermitian_matrix(complex_matrix m, unchecked_tag);

        complex_matrix m_;
    };

    hermitian_matrix operator+(const hermitian_matrix &a, const hermitian_matrix &b);

    struct eig_decomposition
    {
        std::vector<double> values; // ascending
        complex_matrix vectors;     // unitary, column i belongs to values[i]
    };

    // Hermitian eigendecomposition: Householder reduction to real tridiagonal
    // form followed by implicit QL with Wilkinson-style shifts.
    // Throws numerical_error if QL fails to converge.
    eig_decomposition herm_eig(const hermitian_matrix &a);

    // Eigenvalues only (same algorithm, skips eigenvector accumulation)
    std::vector<double> herm_eigenvalues(const hermitian_matrix &a);

    // Principal square root of a numerically PSD matrix. Eigenvalues in
    // [-1e-10 ||A||_2, 0) are clipped to zero; anything more negative throws.
    hermitian_matrix psd_sqrt(const hermitian_matrix &a);

    // H H^* + beta I
    hermitian_matrix shifted_gram(const complex_matrix &h, double beta);

    // X with (H H^* + beta I) X = B, via Cholesky
    complex_matrix shifted_gram_solve(const complex_matrix &h, double beta, const complex_matrix &b);

    // Sum of real parts of the diagonal
    double trace_real(const complex_matrix &a);

    // Re Tr(A B) for Hermitian A, B in O(n^2)
    double trace_product(const hermitian_matrix &a, const hermitian_matrix &b);

    // Lower Cholesky factor L L^* of a Hermitian positive definite matrix
    class cholesky_factor
    {
    public:
        explicit cholesky_factor(const hermitian_matrix &a); // throws numerical_error if not PD

        std::size_t dim() const noexcept { return l_.rows(); }
        const complex_matrix &lower() const noexcept { return l_; }

        void solve_in_place(std::span<cplx> b) const;
        complex_matrix solve(const complex_matrix &b) const;
        hermitian_matrix inverse() const;

    private:
        complex_matrix l_;
    };
}

#endif
