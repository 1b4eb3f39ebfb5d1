"""Young diagrams, box enumeration, orders, and GL tensor/branching calculus."""
from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from . import kernels


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


class YoungDiagram(tuple):
    """Weakly decreasing tuple of nonnegative integers, trailing zeros trimmed.

    Tuple comparison on canonical diagrams coincides with lex order after
    zero padding, so sorting a list of diagrams sorts it lexicographically.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        for x, y in zip(parts, parts[1:]):
            if x < y:
                raise ValueError(f"not weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def padded(self, length: int) -> tuple:
        if len(self) > length:
            raise ValueError(f"{self} has more than {length} parts")
        return tuple(self) + (0,) * (length - len(self))

    def transpose(self) -> "YoungDiagram":
        if not self:
            return self
        return YoungDiagram(sum(1 for p in self if p > j) for j in range(self[0]))

    def fits(self, a: int, b: int) -> bool:
        """Membership in P(a, b): at most ``b`` parts, each at most ``a``."""
        return len(self) <= b and (not self or self[0] <= a)

    def __repr__(self):
        return f"YoungDiagram{tuple(self)}"


def diagram(parts) -> YoungDiagram:
    return parts if isinstance(parts, YoungDiagram) else YoungDiagram(parts)


@lru_cache(maxsize=None)
def _enumerate(a: int, b: int) -> tuple:
    out = []

    def rec(prefix, cap, left):
        if left == 0:
            out.append(YoungDiagram(prefix))
            return
        for p in range(cap + 1):
            rec(prefix + [p], p, left - 1)

    rec([], a, b)
    out.sort()
    return tuple(out)


def enumerate_P(a: int, b: int) -> list:
    """All diagrams in the ``a`` by ``b`` box, ascending lex order."""
    if a < 0 or b < 0:
        raise ValueError("box sides must be nonnegative")
    return list(_enumerate(a, b))


def box_size(a: int, b: int) -> int:
    return comb(a + b, b)


def lex_compare(lam: Sequence[int], mu: Sequence[int]) -> Ordering:
    n = max(len(lam), len(mu))
    x = tuple(lam) + (0,) * (n - len(lam))
    y = tuple(mu) + (0,) * (n - len(mu))
    if x == y:
        return Ordering.EQ
    return Ordering.LT if x < y else Ordering.GT


def prodlex_compare(t: Sequence, u: Sequence) -> Ordering:
    if len(t) != len(u):
        raise ValueError(f"tuple arity mismatch: {len(t)} vs {len(u)}")
    for x, y in zip(t, u):
        c = lex_compare(x, y)
        if c is not Ordering.EQ:
            return c
    return Ordering.EQ


# -- rational GL weights ----------------------------------------------------

def is_dominant(w: Sequence[int]) -> bool:
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1))


def gl_dual(a: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(a))


@lru_cache(maxsize=65536)
def _lr(a: tuple, b: tuple, k: int) -> tuple:
    return tuple(sorted(kernels.lr_expand(a, b, k).items()))


def gl_tensor(a: Sequence[int], b: Sequence[int]) -> dict:
    """Decompose S_a ⊗ S_b for GL_k into irreducibles, as {weight: multiplicity}."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    a, b = tuple(a), tuple(b)
    if not (is_dominant(a) and is_dominant(b)):
        raise ValueError("weights must be dominant")
    k = len(a)
    if k == 0:
        return {(): 1}
    sa = -min(a[-1], 0)
    sb = -min(b[-1], 0)
    # bigger factor first keeps the tableau enumeration small
    x = tuple(v + sa for v in a)
    y = tuple(v + sb for v in b)
    if sum(x) < sum(y):
        x, y = y, x
    shift = sa + sb
    return {tuple(v - shift for v in nu): m for nu, m in _lr(x, y, k)}


def gl_branch(lam: Sequence[int]) -> list:
    """Restriction GL_k → GL_{k-1} × GL_1 as a list of (mu, line exponent)."""
    lam = tuple(lam)
    k = len(lam)
    if k < 1:
        raise ValueError("rank must be at least 1")
    total = sum(lam)
    ranges = [range(lam[j + 1], lam[j] + 1) for j in range(k - 1)]
    return [(mu, total - sum(mu)) for mu in itertools.product(*ranges)]


def weyl_dim(w: Sequence[int]) -> int:
    """Dimension of the irreducible GL_k representation with highest weight ``w``."""
    k = len(w)
    num = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            num *= Fraction(w[i] - w[j] + j - i, j - i)
    assert num.denominator == 1
    return int(num)
