"""Borel-Weil-Bott on Grassmannians and the Ext tables built from it.

Convention: Gr(k, N) parametrises subspaces V of C^N of dimension k, Q is the
rank N-k quotient.  A homogeneous bundle S_alpha Q ⊗ S_beta V is fed to the
Bott algorithm as the concatenated GL_N weight ``alpha | beta``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from . import kernels
from .partitions import diagram, gl_dual, gl_tensor, is_dominant, weyl_dim


@dataclass(frozen=True)
class BottOutcome:
    weight: Optional[tuple]
    degree: int = 0

    @property
    def vanishes(self) -> bool:
        return self.weight is None

    def __repr__(self):
        if self.vanishes:
            return "Vanishes"
        return f"BottOutcome({self.weight}, degree={self.degree})"


VANISHES = BottOutcome(None, 0)


def bott_normalize(w: Sequence[int]) -> BottOutcome:
    if len(w) < 1:
        raise ValueError("weight must be nonempty")
    dom, deg = kernels.bott(tuple(int(x) for x in w))
    if dom is None:
        return VANISHES
    return BottOutcome(dom, deg)


def grassmann_cohomology(alpha: Sequence[int], beta: Sequence[int], N: int) -> list:
    """Cohomology of S_alpha Q ⊗ S_beta V on Gr(len(beta), N).

    Returns ``[]`` or ``[(gamma, d)]``: the only nonzero group is H^d = S_gamma C^N.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) + len(beta) != N:
        raise ValueError(f"rank mismatch: {len(alpha)} + {len(beta)} != {N}")
    if not (is_dominant(alpha) and is_dominant(beta)):
        raise ValueError("alpha and beta must be dominant")
    out = _coh(alpha + beta)
    return [] if out.vanishes else [(out.weight, out.degree)]


@lru_cache(maxsize=1 << 16)
def _coh(w: tuple) -> BottOutcome:
    return bott_normalize(w)


def _add(acc: dict, deg: int, n: int) -> None:
    acc[deg] = acc.get(deg, 0) + n


def _clean(acc: dict) -> dict:
    return {d: acc[d] for d in sorted(acc) if acc[d]}


@lru_cache(maxsize=1 << 14)
def ext_bundles(src: tuple, dst: tuple, N: int) -> tuple:
    """Graded dims of Ext(S_a Q ⊗ S_b V, S_c Q ⊗ S_d V) for src=(a,b), dst=(c,d)."""
    (a, b), (c, d) = src, dst
    q_part = gl_tensor(gl_dual(a), c)
    v_part = gl_tensor(gl_dual(b), d)
    acc: dict = {}
    for al, m1 in q_part.items():
        for be, m2 in v_part.items():
            for gamma, deg in grassmann_cohomology(al, be, N):
                _add(acc, deg, m1 * m2 * weyl_dim(gamma))
    return tuple(_clean(acc).items())


def _check_box(lam, a, b):
    lam = diagram(lam)
    if not lam.fits(a, b):
        raise ValueError(f"{tuple(lam)} not in P({a},{b})")
    return lam


def _vb(lam, k, N):
    """S_lam V as a (Q-weight, V-weight) pair."""
    return ((0,) * (N - k), diagram(lam).padded(k))


def _qb(mu, k, N):
    return (diagram(mu).padded(N - k), (0,) * k)


def ext_V(lam, mu, k: int, N: int) -> dict:
    _check_box(lam, N - k, k)
    _check_box(mu, N - k, k)
    return dict(ext_bundles(_vb(lam, k, N), _vb(mu, k, N), N))


def ext_Q(mu, mu2, k: int, N: int) -> dict:
    _check_box(mu, k, N - k)
    _check_box(mu2, k, N - k)
    return dict(ext_bundles(_qb(mu, k, N), _qb(mu2, k, N), N))


def dual_pairing(mu, lam, k: int, N: int) -> dict:
    """Graded dims of Ext(S_mu Q[-|mu|], S_lam V)."""
    mu = _check_box(mu, k, N - k)
    lam = _check_box(lam, N - k, k)
    raw = ext_bundles(_qb(mu, k, N), _vb(lam, k, N), N)
    return {d - mu.size: n for d, n in raw}


def canonical_weight(k: int, N: int) -> tuple:
    """V-weight of the canonical bundle of Gr(k, N): (det V)^N."""
    return (N,) * k


def serre_dual_ext(lam, mu, k: int, N: int) -> dict:
    """Ext(S_mu V, S_lam V ⊗ ω): the right-hand side of Serre duality."""
    lam = diagram(lam).padded(k)
    twisted = ((0,) * (N - k), tuple(x + N for x in lam))
    return dict(ext_bundles(_vb(mu, k, N), twisted, N))


@dataclass(frozen=True)
class PushResult:
    """Pushforward of a line bundle from a projective space to a point."""
    weight: Optional[tuple]
    degree: int
    label: str


def proj_push_line(i: int, n: int) -> PushResult:
    """H^*(P(C^n), O(i)) by the three-case projective bundle formula."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    if i >= 0:
        return PushResult((i,) + (0,) * (n - 1), 0, f"Sym^{i}(V)")
    if i >= 1 - n:
        return PushResult(None, 0, "0")
    j = -i - n
    # Sym^j(V^dual) has weight (0,...,0,-j); twisting by det^{-1} subtracts 1
    w = (-1,) * (n - 1) + (-j - 1,)
    return PushResult(w, n - 1, f"Sym^{j}(V^dual) ⊗ det(V)^-1")


def projective_line_cohomology(i: int, n: int) -> list:
    """Same groups computed by Bott: P(C^n) as Gr(n-1, n), O(1) = Q."""
    return grassmann_cohomology((i,), (0,) * (n - 1), n)


def total_dims(graded: dict) -> int:
    return sum(graded.values())


def euler_pairing(src: tuple, dst: tuple, N: int) -> int:
    return sum((-1) ** d * n for d, n in ext_bundles(src, dst, N))

