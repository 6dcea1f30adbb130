# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled layer loop for nested Sinc indefinite integration."""

import numpy as np


def nested_layers(double complex[:, ::1] vals, double[::1] jac, double[::1] sigma, double h):
    """Value of the outermost integral; ``vals[i]`` are letter values on the grid, outermost first.

    ``sigma[m + n - 1]`` is the Sinc weight for index offset ``m``.
    """
    cdef Py_ssize_t depth = vals.shape[0]
    cdef Py_ssize_t n = vals.shape[1]
    cdef Py_ssize_t j, k, layer, off
    cdef double ar, ai, w, vr, vi, ir, ii
    cdef double[::1] in_re = np.ones(n)
    cdef double[::1] in_im = np.zeros(n)
    cdef double[::1] f_re = np.empty(n)
    cdef double[::1] f_im = np.empty(n)
    for layer in range(depth - 1, 0, -1):
        for k in range(n):
            vr = vals[layer, k].real * jac[k]
            vi = vals[layer, k].imag * jac[k]
            f_re[k] = vr * in_re[k] - vi * in_im[k]
            f_im[k] = vr * in_im[k] + vi * in_re[k]
        for j in range(n):
            ar = 0.0
            ai = 0.0
            off = j + n - 1
            for k in range(n):
                w = sigma[off - k]
                ar += w * f_re[k]
                ai += w * f_im[k]
            in_re[j] = h * ar
            in_im[j] = h * ai
    ar = 0.0
    ai = 0.0
    for k in range(n):
        vr = vals[0, k].real * jac[k]
        vi = vals[0, k].imag * jac[k]
        ar += vr * in_re[k] - vi * in_im[k]
        ai += vr * in_im[k] + vi * in_re[k]
    return complex(h * ar, h * ai)
