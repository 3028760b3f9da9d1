# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stencil kernels: diagonal apply and per-axis neighbor terms.

Mirrors tunnelgrid._stencil_py; selected automatically at import when the
extension has been built.
"""

import numpy as np
cimport numpy as cnp

COMPILED = True


def diag_apply(double[::1] u, double[::1] diag, double[::1] out):
    cdef Py_ssize_t i, n = u.shape[0]
    with nogil:
        for i in range(n):
            out[i] = diag[i] * u[i]


def add_neighbors_axis(double[::1] u, double[::1] out,
                       Py_ssize_t pre, Py_ssize_t n, Py_ssize_t post,
                       double c1, double c2):
    cdef Py_ssize_t p, i, q, base, row, up, dn
    cdef bint second = c2 != 0.0 and n > 2
    with nogil:
        for p in range(pre):
            base = p * n * post
            for i in range(n):
                row = base + i * post
                if post == 1:
                    if i > 0:
                        out[row] += c1 * u[row - 1]
                    if i < n - 1:
                        out[row] += c1 * u[row + 1]
                    if second:
                        if i > 1:
                            out[row] += c2 * u[row - 2]
                        if i < n - 2:
                            out[row] += c2 * u[row + 2]
                else:
                    up = row - post
                    dn = row + post
                    if i > 0:
                        for q in range(post):
                            out[row + q] += c1 * u[up + q]
                    if i < n - 1:
                        for q in range(post):
                            out[row + q] += c1 * u[dn + q]
                    if second:
                        if i > 1:
                            for q in range(post):
                                out[row + q] += c2 * u[up - post + q]
                        if i < n - 2:
                            for q in range(post):
                                out[row + q] += c2 * u[dn + post + q]
