# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled edit-distance kernel (two-row dynamic programming)."""

from cpython.mem cimport PyMem_Free, PyMem_Malloc


def levenshtein(str s not None, str t not None):
    """Unit-cost edit distance (replacement, insertion, deletion)."""
    cdef Py_ssize_t a = len(s)
    cdef Py_ssize_t b = len(t)
    if a == 0:
        return b
    if b == 0:
        return a

    cdef Py_ssize_t *prev = <Py_ssize_t *> PyMem_Malloc((b + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *curr = <Py_ssize_t *> PyMem_Malloc((b + 1) * sizeof(Py_ssize_t))
    if prev == NULL or curr == NULL:
        PyMem_Free(prev)
        PyMem_Free(curr)
        raise MemoryError()

    cdef Py_ssize_t i, j, d, result
    cdef Py_ssize_t *tmp
    cdef Py_UCS4 cs, ct
    try:
        for j in range(b + 1):
            prev[j] = j
        for i in range(1, a + 1):
            cs = s[i - 1]
            curr[0] = i
            for j in range(1, b + 1):
                ct = t[j - 1]
                d = prev[j - 1] + (0 if cs == ct else 1)
                if prev[j] + 1 < d:
                    d = prev[j] + 1
                if curr[j - 1] + 1 < d:
                    d = curr[j - 1] + 1
                curr[j] = d
            tmp = prev
            prev = curr
            curr = tmp
        result = prev[b]
    finally:
        PyMem_Free(prev)
        PyMem_Free(curr)
    return result
