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

#include "rzf/errors.hpp"
#include "rzf/kernels.hpp"
#include "rzf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace rzf
{
    namespace
    {
        struct tridiagonal
        {
            std::vector<double> diag;
            std::vector<double> off;       // |T[i+1,i]|, off[n-1] = 0
            std::vector<cplx> phase;       // D with T_complex = D T_real D^*
            complex_matrix reflectors;     // column k holds unit v_k on rows k+1..n-1
            std::vector<bool> has_reflector;
        };

        // Householder reduction A = Q T Q^*, with Q = H_0 H_1 ... H_{n-3}
        tridiagonal reduce(const hermitian_matrix &a)
        {
            const std::size_t n = a.dim();
            complex_matrix w = a.matrix();
            tridiagonal t{std::vector<double>(n), std::vector<double>(n, 0.0), std::vector<cplx>(n, 1.0),
                          complex_matrix(n, n), std::vector<bool>(n, false)};

            std::vector<cplx> p(n), q(n);
            for (std::size_t k = 0; k + 2 < n; ++k)
            {
                const std::size_t m = n - k - 1;
                auto x = w.col(k).subspan(k + 1);
                const double xnorm = std::sqrt(kernels::norm_sq(x));
                if (xnorm == 0.0)
                    continue;

                const cplx phase = std::abs(x[0]) > 0.0 ? x[0] / std::abs(x[0]) : cplx(1.0, 0.0);
                const cplx alpha = -phase * xnorm;

                auto v = t.reflectors.col(k).subspan(k + 1);
                std::copy(x.begin(), x.end(), v.begin());
                v[0] -= alpha;
                const double vnorm = std::sqrt(kernels::norm_sq(v));
                if (vnorm == 0.0)
                    continue;
                for (auto &e : v)
                    e /= vnorm;
                t.has_reflector[k] = true;

                // p = B v with B the trailing m x m block
                std::span<cplx> ps(p.data(), m), qs(q.data(), m);
                std::fill(ps.begin(), ps.end(), cplx(0.0, 0.0));
                for (std::size_t j = 0; j < m; ++j)
                    kernels::axpy(v[j], w.col(k + 1 + j).subspan(k + 1), ps);

                // q = 2 (p - (v^* p) v); B <- B - v q^* - q v^*
                const double vp = kernels::dotc(v, ps).real();
                for (std::size_t i = 0; i < m; ++i)
                    qs[i] = 2.0 * (ps[i] - vp * v[i]);
                for (std::size_t j = 0; j < m; ++j)
                {
                    auto bj = w.col(k + 1 + j).subspan(k + 1);
                    kernels::axpy(-std::conj(qs[j]), v, bj);
                    kernels::axpy(-std::conj(v[j]), qs, bj);
                }

                w(k + 1, k) = alpha;
                w(k, k + 1) = std::conj(alpha);
            }

            for (std::size_t i = 0; i < n; ++i)
                t.diag[i] = w(i, i).real();

            // Diagonal unitary that makes the subdiagonal real and nonnegative
            for (std::size_t i = 0; i + 1 < n; ++i)
            {
                const cplx e = w(i + 1, i);
                const double mag = std::abs(e);
                t.off[i] = mag;
                t.phase[i + 1] = mag > 0.0 ? t.phase[i] * (e / mag) : t.phase[i];
            }
            return t;
        }

        // Implicit QL on a real symmetric tridiagonal matrix. If z is non-null
        // its columns are rotated along with the iteration (z starts as I).
        void tridiagonal_ql(std::vector<double> &d, std::vector<double> &e, std::vector<double> *z)
        {
            const std::size_t n = d.size();
            const std::size_t max_iter = 30 * std::max<std::size_t>(n, 1);
            const double eps = std::numeric_limits<double>::epsilon();

            for (std::size_t l = 0; l < n; ++l)
            {
                std::size_t iter = 0;
                std::size_t m;
                do
                {
                    for (m = l; m + 1 < n; ++m)
                    {
                        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                        if (std::abs(e[m]) <= eps * dd)
                            break;
                    }
                    if (m == l)
                        break;

                    if (iter++ == max_iter)
                        throw numerical_error("herm_eig: QL iteration did not converge for dimension " +
                                              std::to_string(n));

                    double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                    double r = std::hypot(g, 1.0);
                    g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                    double s = 1.0, c = 1.0, p = 0.0;
                    bool deflated = false;

                    for (std::size_t i = m; i-- > l;)
                    {
                        double f = s * e[i];
                        const double b = c * e[i];
                        r = std::hypot(f, g);
                        e[i + 1] = r;
                        if (r == 0.0)
                        {
                            d[i + 1] -= p;
                            e[m] = 0.0;
                            deflated = true;
                            break;
                        }
                        s = f / r;
                        c = g / r;
                        g = d[i + 1] - p;
                        r = (d[i] - g) * s + 2.0 * c * b;
                        p = s * r;
                        d[i + 1] = g + p;
                        g = c * r - b;

                        if (z)
                        {
                            double *zi = z->data() + i * n;
                            double *zi1 = z->data() + (i + 1) * n;
                            for (std::size_t k = 0; k < n; ++k)
                            {
                                f = zi1[k];
                                zi1[k] = s * zi[k] + c * f;
                                zi[k] = c * zi[k] - s * f;
                            }
                        }
                    }
                    if (deflated)
                        continue;
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                } while (m != l);
            }
        }

        std::vector<std::size_t> ascending_order(const std::vector<double> &d)
        {
            std::vector<std::size_t> idx(d.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b)
                             { return d[a] < d[b]; });
            return idx;
        }
    }

    eig_decomposition herm_eig(const hermitian_matrix &a)
    {
        const std::size_t n = a.dim();
        tridiagonal t = reduce(a);

        std::vector<double> z(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            z[i * n + i] = 1.0;
        tridiagonal_ql(t.diag, t.off, &z);

        const auto order = ascending_order(t.diag);
        eig_decomposition out{std::vector<double>(n), complex_matrix(n, n)};

        // U = Q D Z
        for (std::size_t c = 0; c < n; ++c)
        {
            const std::size_t src = order[c];
            out.values[c] = t.diag[src];
            auto uc = out.vectors.col(c);
            for (std::size_t r = 0; r < n; ++r)
                uc[r] = t.phase[r] * z[src * n + r];
        }
        for (std::size_t k = n >= 2 ? n - 2 : 0; k-- > 0;)
        {
            if (!t.has_reflector[k])
                continue;
            const auto v = t.reflectors.col(k).subspan(k + 1);
            for (std::size_t c = 0; c < n; ++c)
            {
                auto uc = out.vectors.col(c).subspan(k + 1);
                const cplx s = kernels::dotc(v, uc);
                kernels::axpy(-2.0 * s, v, uc);
            }
        }
        return out;
    }

    std::vector<double> herm_eigenvalues(const hermitian_matrix &a)
    {
        tridiagonal t = reduce(a);
        tridiagonal_ql(t.diag, t.off, nullptr);
        std::sort(t.diag.begin(), t.diag.end());
        return t.diag;
    }

    hermitian_matrix psd_sqrt(const hermitian_matrix &a)
    {
        const std::size_t n = a.dim();
        const eig_decomposition ed = herm_eig(a);

        const double spectral = std::max(std::abs(ed.values.front()), std::abs(ed.values.back()));
        if (ed.values.front() < -1e-10 * spectral)
            throw numerical_error("psd_sqrt: matrix of dimension " + std::to_string(n) +
                                  " is not positive semidefinite (min eigenvalue " +
                                  std::to_string(ed.values.front()) + ")");

        // S = U diag(sqrt(lambda)) U^*, column by column
        complex_matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double root = std::sqrt(std::max(ed.values[i], 0.0));
            if (root == 0.0)
                continue;
            const auto ui = ed.vectors.col(i);
            for (std::size_t c = 0; c < n; ++c)
                kernels::axpy(root * std::conj(ui[c]), ui, s.col(c));
        }
        return hermitian_matrix::symmetrize(std::move(s));
    }
}
