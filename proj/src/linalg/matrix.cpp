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

#include "rzf/linalg.hpp"
#include "rzf/errors.hpp"
#include "rzf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rzf
{
    namespace
    {
        void require_same_shape(const complex_matrix &a, const complex_matrix &b, const char *op)
        {
            if (a.rows() != b.rows() || a.cols() != b.cols())
                throw dimension_error(std::string(op) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                      std::to_string(b.cols()) + ")");
        }
    }

    complex_matrix::complex_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols)
    {
        if (rows == 0 || cols == 0)
            throw dimension_error("complex_matrix: rows and cols must be at least 1");
        data_.assign(rows * cols, cplx(0.0, 0.0));
    }

    complex_matrix complex_matrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows)
    {
        const std::size_t n_rows = rows.size();
        const std::size_t n_cols = n_rows ? rows.begin()->size() : 0;
        complex_matrix m(n_rows, n_cols);
        std::size_t r = 0;
        for (const auto &row : rows)
        {
            if (row.size() != n_cols)
                throw dimension_error("complex_matrix::from_rows: ragged rows");
            std::size_t c = 0;
            for (const auto &v : row)
                m(r, c++) = v;
            ++r;
        }
        return m;
    }

    complex_matrix complex_matrix::identity(std::size_t n)
    {
        complex_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    bool complex_matrix::is_finite() const noexcept
    {
        return std::all_of(data_.begin(), data_.end(), [](const cplx &v)
                           { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
    }

    double complex_matrix::frobenius_norm() const
    {
        return std::sqrt(kernels::norm_sq(data_));
    }

    complex_matrix complex_matrix::adjoint() const
    {
        complex_matrix t(cols_, rows_);
        for (std::size_t c = 0; c < cols_; ++c)
            for (std::size_t r = 0; r < rows_; ++r)
                t(c, r) = std::conj((*this)(r, c));
        return t;
    }

    complex_matrix &complex_matrix::operator+=(const complex_matrix &other)
    {
        require_same_shape(*this, other, "operator+=");
        kernels::axpy(1.0, other.data_, data_);
        return *this;
    }

    complex_matrix &complex_matrix::operator-=(const complex_matrix &other)
    {
        require_same_shape(*this, other, "operator-=");
        kernels::axpy(-1.0, other.data_, data_);
        return *this;
    }

    complex_matrix &complex_matrix::operator*=(cplx s)
    {
        for (auto &v : data_)
            v *= s;
        return *this;
    }

    complex_matrix operator+(complex_matrix a, const complex_matrix &b)
    {
        a += b;
        return a;
    }

    complex_matrix operator-(complex_matrix a, const complex_matrix &b)
    {
        a -= b;
        return a;
    }

    complex_matrix operator*(const complex_matrix &a, const complex_matrix &b)
    {
        if (a.cols() != b.rows())
            throw dimension_error("operator*: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                                  std::to_string(b.rows()) + ")");
        complex_matrix c(a.rows(), b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t p = 0; p < a.cols(); ++p)
                if (b(p, j) != cplx(0.0, 0.0))
                    kernels::axpy(b(p, j), a.col(p), c.col(j));
        return c;
    }

    complex_matrix adjoint_times(const complex_matrix &a, const complex_matrix &b)
    {
        if (a.rows() != b.rows())
            throw dimension_error("adjoint_times: row counts differ (" + std::to_string(a.rows()) + " vs " +
                                  std::to_string(b.rows()) + ")");
        complex_matrix c(a.cols(), b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t i = 0; i < a.cols(); ++i)
                c(i, j) = kernels::dotc(a.col(i), b.col(j));
        return c;
    }

    // ---------------------------------------------------------------- hermitian

    hermitian_matrix::hermitian_matrix(complex_matrix m, unchecked_tag)
        : m_(std::move(m))
    {
        const std::size_t n = m_.rows();
        for (std::size_t c = 0; c < n; ++c)
        {
            m_(c, c) = cplx(m_(c, c).real(), 0.0);
            for (std::size_t r = c + 1; r < n; ++r)
            {
                const cplx avg = 0.5 * (m_(r, c) + std::conj(m_(c, r)));
                m_(r, c) = avg;
                m_(c, r) = std::conj(avg);
            }
        }
    }

    hermitian_matrix::hermitian_matrix(complex_matrix m)
        : m_(complex_matrix(1, 1))
    {
        if (!m.is_square())
            throw dimension_error("hermitian_matrix: matrix is " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ", not square");
        if (!m.is_finite())
            throw parameter_error("hermitian_matrix: non-finite entry");

        double scale = 0.0;
        for (const auto &v : m.data())
            scale = std::max(scale, std::abs(v));
        const double tol = 1e-12 * scale;

        const std::size_t n = m.rows();
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = c; r < n; ++r)
                if (std::abs(m(r, c) - std::conj(m(c, r))) > tol)
                    throw parameter_error("hermitian_matrix: entry (" + std::to_string(r) + "," + std::to_string(c) +
                                          ") violates conjugate symmetry");

        *this = hermitian_matrix(std::move(m), unchecked_tag{});
    }

    hermitian_matrix hermitian_matrix::symmetrize(complex_matrix m)
    {
        if (!m.is_square())
            throw dimension_error("hermitian_matrix::symmetrize: matrix is not square");
        return hermitian_matrix(std::move(m), unchecked_tag{});
    }

    hermitian_matrix hermitian_matrix::identity(std::size_t n)
    {
        return hermitian_matrix(complex_matrix::identity(n), unchecked_tag{});
    }

    hermitian_matrix hermitian_matrix::diagonal(std::span<const double> d)
    {
        complex_matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return hermitian_matrix(std::move(m), unchecked_tag{});
    }

    bool hermitian_matrix::is_diagonal() const noexcept
    {
        const std::size_t n = dim();
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = c + 1; r < n; ++r)
                if (m_(r, c) != cplx(0.0, 0.0))
                    return false;
        return true;
    }

    hermitian_matrix operator+(const hermitian_matrix &a, const hermitian_matrix &b)
    {
        return hermitian_matrix::symmetrize(a.matrix() + b.matrix());
    }

    // ---------------------------------------------------------------- traces

    double trace_real(const complex_matrix &a)
    {
        if (!a.is_square())
            throw dimension_error("trace_real: matrix is " + std::to_string(a.rows()) + "x" +
                                  std::to_string(a.cols()) + ", not square");
        double t = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            t += a(i, i).real();
        return t;
    }

    double trace_product(const hermitian_matrix &a, const hermitian_matrix &b)
    {
        if (a.dim() != b.dim())
            throw dimension_error("trace_product: dimensions differ");
        // Tr(AB) = sum_{m,n} A[m,n] B[n,m] = sum conj(B[m,n]) A[m,n] for Hermitian B
        return kernels::dotc(b.matrix().data(), a.matrix().data()).real();
    }

    // ---------------------------------------------------------------- Gram solves

    hermitian_matrix shifted_gram(const complex_matrix &h, double beta)
    {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw parameter_error("shifted_gram: beta must be positive and finite");

        const std::size_t n = h.rows();
        complex_matrix w(n, n);
        for (std::size_t i = 0; i < n; ++i)
            w(i, i) = beta;

        // Lower triangle: W[n:, n] += conj(h[n]) h[n:] for every column h of H
        for (std::size_t k = 0; k < h.cols(); ++k)
        {
            const auto hk = h.col(k);
            for (std::size_t c = 0; c < n; ++c)
                kernels::axpy(std::conj(hk[c]), hk.subspan(c), w.col(c).subspan(c));
        }
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = c + 1; r < n; ++r)
                w(c, r) = std::conj(w(r, c));

        return hermitian_matrix::symmetrize(std::move(w));
    }

    complex_matrix shifted_gram_solve(const complex_matrix &h, double beta, const complex_matrix &b)
    {
        if (b.rows() != h.rows())
            throw dimension_error("shifted_gram_solve: H has " + std::to_string(h.rows()) + " rows but B has " +
                                  std::to_string(b.rows()));
        return cholesky_factor(shifted_gram(h, beta)).solve(b);
    }
}
