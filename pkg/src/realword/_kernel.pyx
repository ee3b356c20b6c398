# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels for free-group words.

Words are tuples of nonzero signed generator ids (the sign is the letter
exponent).  Free reduction is a single stack scan; concatenation of two
already-reduced words only cancels across the junction.  Semantics must stay
identical to realword._kernel_py, which is the fallback when this module is
not compiled.
"""

from libc.stdlib cimport free, malloc


def reduce_ids(ids):
    """Freely reduce a sequence of signed generator ids."""
    cdef Py_ssize_t n = len(ids)
    if n == 0:
        return ()
    cdef long long* stack = <long long*> malloc(n * sizeof(long long))
    if stack == NULL:
        raise MemoryError()
    cdef Py_ssize_t top = 0
    cdef long long v
    try:
        for item in ids:
            v = item
            if top > 0 and stack[top - 1] == -v:
                top -= 1
            else:
                stack[top] = v
                top += 1
        return tuple([stack[i] for i in range(top)])
    finally:
        free(stack)


def concat_ids(a, b):
    """Concatenate two reduced words, cancelling across the junction only."""
    cdef Py_ssize_t na = len(a)
    cdef Py_ssize_t nb = len(b)
    cdef Py_ssize_t i = na
    cdef Py_ssize_t j = 0
    while i > 0 and j < nb and a[i - 1] == -b[j]:
        i -= 1
        j += 1
    return tuple(a[:i]) + tuple(b[j:])


def invert_ids(a):
    cdef Py_ssize_t n = len(a)
    return tuple([-a[n - 1 - i] for i in range(n)])
