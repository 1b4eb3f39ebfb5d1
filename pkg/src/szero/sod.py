"""Exceptional-type collections of functors and their semiorthogonality certificates."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Optional, Sequence

from .engine import (
    Etok, Ftok, IsoIdentity, ProvenZero, Stuck, Word, compose, right_adjoint,
    simplify_full, is_valid_weight, weights_of,
)
from .partitions import Ordering, box_size, diagram, enumerate_P, prodlex_compare

F_SIDE, E_SIDE = "F", "E"


@dataclass(frozen=True)
class CollectionSpec:
    n: int
    N: int
    target: tuple
    side: str = F_SIDE

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if len(self.target) != self.n or not is_valid_weight(self.target, self.N):
            raise ValueError(f"target {self.target} not in C({self.n},{self.N})")
        if self.side not in (F_SIDE, E_SIDE):
            raise ValueError(f"unknown side {self.side!r}")
        if self.side == E_SIDE and self.n != 2:
            raise ValueError("E-side collections are only defined for n = 2")

    @property
    def source(self) -> tuple:
        if self.side == E_SIDE:
            return (self.N, 0)
        return (0,) * (self.n - 1) + (self.N,)

    def boxes(self) -> list:
        """(a, b) for each factor P(a, b) of the index set."""
        k = self.target
        if self.side == E_SIDE:
            return [(k[0], k[1])]
        partial = list(itertools.accumulate(k))
        return [(k[i + 1], partial[i]) for i in range(self.n - 1)]

    def index_set(self) -> list:
        """All index tuples, ascending in product-lex order."""
        factors = [enumerate_P(a, b) for a, b in self.boxes()]
        return [tuple(t) for t in itertools.product(*factors)]

    def expected_size(self) -> int:
        return prod(box_size(a, b) for a, b in self.boxes())

    @property
    def complement_label(self) -> str:
        k = self.target
        if self.side == E_SIDE:
            return f"B({k[0]},{k[1]})"
        return "A(" + ",".join(str(x) for x in k) + ")"


def multinomial(ks: Sequence[int]) -> int:
    return factorial(sum(ks)) // prod(factorial(x) for x in ks)


def build_word(spec: CollectionSpec, index: Sequence) -> Word:
    boxes = spec.boxes()
    if len(index) != len(boxes):
        raise ValueError(f"index has {len(index)} blocks, expected {len(boxes)}")
    toks = []
    for c, (lam, (a, b)) in enumerate(zip(index, boxes), start=1):
        lam = diagram(lam)
        if not lam.fits(a, b):
            raise ValueError(f"{tuple(lam)} not in P({a},{b})")
        if spec.side == E_SIDE:
            toks.extend(Etok(1, -x) for x in lam.padded(b))
        else:
            toks.extend(Ftok(c, x) for x in lam.padded(b))
    w = Word(tuple(toks), spec.source)
    if w.codomain != tuple(spec.target):
        raise AssertionError(f"word lands in {w.codomain}, not {spec.target}")
    return w


def hom_word(spec: CollectionSpec, t, u) -> Word:
    """R(w_t) ∘ w_u, whose value computes Hom(w_t, w_u)."""
    return compose(right_adjoint(build_word(spec, t)), build_word(spec, u))


@dataclass
class PairRecord:
    left: tuple
    right: tuple
    relation: str          # "self", "lt" or "gt"
    verdict: object
    expected: str
    steps: int
    chain: list = field(default_factory=list)

    @property
    def ok(self) -> Optional[bool]:
        if self.relation == "gt":
            return None
        if self.relation == "self":
            return self.verdict == IsoIdentity(0)
        return isinstance(self.verdict, ProvenZero)

    @property
    def stuck(self) -> bool:
        return isinstance(self.verdict, Stuck)


@dataclass
class SodCertificate:
    spec: CollectionSpec
    members: list
    selfs: list
    pairs: list
    diagnostics: list = field(default_factory=list)

    @property
    def status(self) -> str:
        recs = self.selfs + self.pairs
        if any(r.stuck for r in recs):
            return "INVALID-INCOMPLETE"
        if all(r.ok for r in recs):
            return "VALID"
        return "INVALID"

    @property
    def complement(self) -> str:
        return self.spec.complement_label

    def stuck_residues(self) -> list:
        return [(r.left, r.right, str(r.verdict)) for r in self.selfs + self.pairs if r.stuck]


def _run_pair(args):
    spec, t, u, relation, max_steps, keep_chain, seed = args
    res = simplify_full(hom_word(spec, t, u), max_steps=max_steps, rng=seed, log=keep_chain)
    expected = {"self": "IsoIdentity(0)", "lt": "ProvenZero", "gt": "no-claim"}[relation]
    chain = res.derivation.render() if keep_chain and res.derivation else []
    return PairRecord(t, u, relation, res.verdict, expected, res.steps, chain)


def verify_collection(spec: CollectionSpec, jobs: int = 1, max_steps: Optional[int] = None,
                      chains: bool = False, diagnostic: bool = False, seed=None,
                      order=None) -> SodCertificate:
    """Simplify R(w_t) w_u for every member pair with t <= u in product-lex order.

    Pairs with t > u carry no claim; they are evaluated only with ``diagnostic``.
    ``order`` optionally permutes the sweep (used to test order stability).
    """
    members = spec.index_set()
    tasks = []
    for a, t in enumerate(members):
        for b, u in enumerate(members):
            rel = prodlex_compare(t, u)
            if rel is Ordering.EQ:
                tasks.append((spec, t, u, "self", max_steps, chains, seed))
            elif rel is Ordering.LT:
                tasks.append((spec, t, u, "lt", max_steps, chains, seed))
            elif diagnostic:
                tasks.append((spec, t, u, "gt", max_steps, chains, seed))
    if order is not None:
        tasks = [tasks[i] for i in order(len(tasks))]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(_run_pair, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        records = [_run_pair(t) for t in tasks]
    # deterministic merge: member order, then pair order
    pos = {t: i for i, t in enumerate(members)}
    records.sort(key=lambda r: (pos[r.left], pos[r.right]))
    selfs = [r for r in records if r.relation == "self"]
    pairs = [r for r in records if r.relation == "lt"]
    diag = [r for r in records if r.relation == "gt"]
    return SodCertificate(spec, members, selfs, pairs, diag)


def fully_faithful_report(cert: SodCertificate) -> dict:
    return {r.left: r.verdict == IsoIdentity(0) for r in cert.selfs}


def all_targets(n: int, N: int) -> list:
    return weights_of(n, N)
