# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot combinatorial kernels.

Same signatures and results as ``szero._kernels_py``.
"""

cdef enum:
    MAXR = 32


def bott(w):
    cdef int m = len(w)
    cdef long v[MAXR]
    cdef int i, j, inv = 0
    cdef long t
    if m > MAXR:
        raise ValueError("weight too long")
    for i in range(m):
        v[i] = w[i] + (m - 1 - i)
    for i in range(m):
        for j in range(i + 1, m):
            if v[i] == v[j]:
                return None, 0
            if v[i] < v[j]:
                inv += 1
    # insertion sort, descending
    for i in range(1, m):
        t = v[i]
        j = i - 1
        while j >= 0 and v[j] < t:
            v[j + 1] = v[j]
            j -= 1
        v[j + 1] = t
    return tuple([v[i] - (m - 1 - i) for i in range(m)]), inv


cdef struct LRState:
    int maxlen
    int lb
    long a[MAXR]
    long b[MAXR]
    long used[MAXR + 1]
    long nu[MAXR]
    # pos[r][i]: end column of labels <= i in row r
    long pos[MAXR][MAXR + 1]
    long before[MAXR][MAXR + 1]


cdef void _record(LRState* st, dict out):
    key = tuple([st.nu[i] for i in range(st.maxlen)])
    out[key] = out.get(key, 0) + 1


cdef void _row(LRState* st, int r, dict out):
    cdef int i, lb = st.lb
    cdef long remaining = 0
    if r == st.maxlen:
        for i in range(lb):
            if st.used[i + 1] != st.b[i]:
                return
        _record(st, out)
        return
    for i in range(lb):
        remaining += st.b[i] - st.used[i + 1]
    if remaining == 0:
        for i in range(r, st.maxlen):
            st.nu[i] = st.a[i]
        _record(st, out)
        return
    for i in range(lb + 1):
        st.before[r][i] = st.used[i]
    st.pos[r][0] = st.a[r]
    _label(st, r, 1, st.a[r], out)


cdef void _label(LRState* st, int r, int i, long p, dict out):
    cdef int top = r + 1 if r + 1 < st.lb else st.lb
    cdef int j
    cdef long limit, m
    if i > top:
        for j in range(i, st.lb + 1):
            st.pos[r][j] = p
        st.nu[r] = p
        _row(st, r + 1, out)
        return
    limit = st.b[i - 1] - st.used[i]
    if i >= 2 and st.before[r][i - 1] - st.used[i] < limit:
        limit = st.before[r][i - 1] - st.used[i]
    if r > 0 and st.pos[r - 1][i - 1] - p < limit:
        limit = st.pos[r - 1][i - 1] - p
    m = limit
    while m >= 0:
        st.used[i] += m
        st.pos[r][i] = p + m
        _label(st, r, i + 1, p + m, out)
        st.used[i] -= m
        m -= 1


def lr_expand(a, b, int maxlen):
    cdef LRState st
    cdef int i
    aa = [x for x in a if x]
    bb = [x for x in b if x]
    if len(aa) > maxlen or len(bb) > maxlen:
        return {}
    if maxlen > MAXR:
        raise ValueError("rank too large")
    st.maxlen = maxlen
    st.lb = len(bb)
    for i in range(maxlen):
        st.a[i] = aa[i] if i < len(aa) else 0
        st.nu[i] = 0
    for i in range(st.lb):
        st.b[i] = bb[i]
    for i in range(st.lb + 1):
        st.used[i] = 0
    out = {}
    _row(&st, 0, out)
    return out
