# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled table composition kernel; same contract as ``_kernel_py``."""

from libc.stdlib cimport malloc, free


def compose_tables(values, Py_ssize_t n_inner, g_sources, g_tables, f_sources, f_table):
    cdef Py_ssize_t n_sources = len(values)
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t i, j, k, g_total = 0, fi, stride
    cdef long *sizes = <long *>malloc(sizeof(long) * (n_sources + 1))
    cdef long *own = <long *>malloc(sizeof(long) * (n_sources + 1))
    cdef long *gs = <long *>malloc(sizeof(long) * (n_sources + 1))
    cdef long *x = <long *>malloc(sizeof(long) * (n_sources + 1))
    cdef long *gidx = <long *>malloc(sizeof(long) * (n_inner + 1))
    cdef long *goff = <long *>malloc(sizeof(long) * (n_inner + 1))
    cdef long *fst = <long *>malloc(sizeof(long) * (n_inner + 1))
    cdef long *left = <long *>malloc(sizeof(long) * (n_inner + 1))
    cdef long *gstride = <long *>malloc(sizeof(long) * (n_inner + 1))
    cdef long *gcat = NULL
    cdef long *ft = NULL
    cdef long *res = NULL
    try:
        for j in range(n_inner):
            left[j] = len(g_sources[j])
            gstride[j] = 1
            g_total += len(g_tables[j])
        # right to left, so each source finds its position within its fiber
        for i in range(n_sources - 1, -1, -1):
            j = <Py_ssize_t>values[i] - 1
            left[j] -= 1
            if left[j] < 0:
                raise ValueError("fiber larger than the arity of its inner table")
            sizes[i] = g_sources[j][left[j]]
            own[i] = j
            gs[i] = gstride[j]
            gstride[j] *= sizes[i]
        for j in range(n_inner):
            if left[j] != 0:
                raise ValueError("fiber smaller than the arity of its inner table")
        stride = 1
        for j in range(n_inner - 1, -1, -1):
            fst[j] = stride
            stride *= <long>f_sources[j]
        for i in range(n_sources):
            total *= sizes[i]
            x[i] = 0
        src = tuple([sizes[i] for i in range(n_sources)])
        if total == 0:
            return src, ()
        gcat = <long *>malloc(sizeof(long) * (g_total + 1))
        ft = <long *>malloc(sizeof(long) * (len(f_table) + 1))
        res = <long *>malloc(sizeof(long) * total)
        k = 0
        for j in range(n_inner):
            goff[j] = k
            gidx[j] = 0
            for v in g_tables[j]:
                gcat[k] = v
                k += 1
        for k in range(len(f_table)):
            ft[k] = f_table[k]
        for k in range(total):
            fi = 0
            for j in range(n_inner):
                fi += (gcat[goff[j] + gidx[j]] - 1) * fst[j]
            res[k] = ft[fi]
            # odometer step, last source least significant
            i = n_sources - 1
            while i >= 0:
                x[i] += 1
                gidx[own[i]] += gs[i]
                if x[i] < sizes[i]:
                    break
                gidx[own[i]] -= gs[i] * x[i]
                x[i] = 0
                i -= 1
        return src, tuple([res[k] for k in range(total)])
    finally:
        free(sizes); free(own); free(gs); free(x); free(gidx)
        free(goff); free(fst); free(gcat); free(ft); free(res)
        free(left); free(gstride)
