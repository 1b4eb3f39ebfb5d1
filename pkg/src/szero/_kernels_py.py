"""Pure-Python reference kernels.

These are the fallbacks used when the compiled ``szero._kernels`` extension is
unavailable; both expose the same two functions with identical results.
"""
from __future__ import annotations


def bott(w):
    """Dotted-Weyl normalisation of an integer weight.

    Returns ``(dominant, degree)`` or ``(None, 0)`` when ``w + rho`` has a
    repeated entry.
    """
    m = len(w)
    v = [w[i] + (m - 1 - i) for i in range(m)]
    if len(set(v)) != m:
        return None, 0
    inv = 0
    for i in range(m):
        vi = v[i]
        for j in range(i + 1, m):
            if vi < v[j]:
                inv += 1
    v.sort(reverse=True)
    return tuple(v[i] - (m - 1 - i) for i in range(m)), inv


def lr_expand(a, b, maxlen):
    """Littlewood-Richardson product of two partitions, truncated to ``maxlen`` rows.

    ``a`` and ``b`` are weakly decreasing tuples of nonnegative integers.
    The result maps each ``nu`` (padded to ``maxlen``) to the number of LR
    tableaux of shape ``nu / a`` and content ``b``.
    """
    a = [x for x in a if x]
    b = [x for x in b if x]
    if len(a) > maxlen or len(b) > maxlen:
        return {}
    a = a + [0] * (maxlen - len(a))
    lb = len(b)
    out = {}
    used = [0] * (lb + 1)
    nu = [0] * maxlen
    # prev_pos[i]: end column of labels <= i in the previous row (i = 0 -> a-part)
    inf = 1 << 30

    def row(r, prev_pos):
        if r == maxlen:
            if all(used[i + 1] == b[i] for i in range(lb)):
                key = tuple(nu)
                out[key] = out.get(key, 0) + 1
            return
        remaining = sum(b[i] - used[i + 1] for i in range(lb))
        if remaining == 0:
            nu[r:] = a[r:]
            key = tuple(nu)
            out[key] = out.get(key, 0) + 1
            return
        top = min(r + 1, lb)
        cur = [0] * (lb + 1)
        cur[0] = a[r]
        before = used[:]

        def label(i, pos):
            if i > top:
                cur_pos = cur[:]
                for j in range(i, lb + 1):
                    cur_pos[j] = pos
                nu[r] = pos
                row(r + 1, cur_pos)
                return
            limit = b[i - 1] - used[i]
            if i >= 2:
                limit = min(limit, before[i - 1] - used[i])
            if r > 0:
                limit = min(limit, prev_pos[i - 1] - pos)
            for m in range(limit, -1, -1):
                used[i] += m
                cur[i] = pos + m
                label(i + 1, pos + m)
                used[i] -= m

        label(1, a[r])

    first = [inf] * (lb + 1)
    row(0, first)
    return out
