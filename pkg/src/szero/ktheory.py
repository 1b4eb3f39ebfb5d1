"""K-theory oracle on Grassmannians: word evaluation, generator matrices, relations.

Weight (k1, k2) is the Grassmannian Gr(k1, N) of k1-dimensional subspaces V, with
quotient Q of rank k2.  A K-class is a dict ``{(alpha, beta): coeff}`` standing
for sum coeff * [S_alpha Q ⊗ S_beta V].  Coordinates are taken in the basis
[S_lam V], lam in P(k2, k1), ascending lex order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from . import bott
from .engine import E, F, PM, PP, Tok, is_valid_weight, root, weights_of
from .partitions import YoungDiagram, diagram, enumerate_P, gl_branch

# -- formal complexes -------------------------------------------------------


@dataclass
class FormalComplex:
    """Terms ``((alpha on Q, beta on V), degree) -> multiplicity`` on Gr(k, N)."""
    k: int
    N: int
    terms: dict = field(default_factory=dict)

    def add(self, label, degree, mult=1):
        key = (label, degree)
        self.terms[key] = self.terms.get(key, 0) + mult
        if not self.terms[key]:
            del self.terms[key]

    def as_set(self):
        return {(lab, d, m) for (lab, d), m in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for ((a, b), d), m in sorted(self.terms.items()):
            lab = []
            if any(a):
                lab.append(f"S_{a}Q")
            if any(b):
                lab.append(f"S_{b}V")
            txt = " ⊗ ".join(lab) if lab else "O"
            parts.append((f"{m}·" if m != 1 else "") + f"{txt} in degree {d}")
        return " + ".join(parts) + f" on Gr({self.k},{self.N})"


def eval_F_word(lam, k: int, N: int) -> FormalComplex:
    """Evaluate F_{lam_1} ... F_{lam_k} on the point class of Gr(0, N)."""
    lam = tuple(lam) + (0,) * (k - len(lam))
    if len(lam) != k or not 0 <= k <= N:
        raise ValueError(f"{lam} has more than {k} parts")
    state, deg = (), 0
    for j in range(k):
        out = bott.bott_normalize((lam[k - 1 - j],) + state)
        if out.vanishes:
            return FormalComplex(k, N)
        state, deg = out.weight, deg + out.degree
    fc = FormalComplex(k, N)
    fc.add(((0,) * (N - k), state), deg)
    return fc


def eval_E_word(mu, k: int, N: int) -> FormalComplex:
    """Evaluate E_{-mu_1} ... E_{-mu_{N-k}} on the point class of Gr(N, N)."""
    m = N - k
    mu = tuple(mu) + (0,) * (m - len(mu))
    if len(mu) != m or not 0 <= k <= N:
        raise ValueError(f"{mu} has more than {m} parts")
    state, deg = (), 0
    for j in range(m):
        out = bott.bott_normalize(state + (-mu[m - 1 - j],))
        if out.vanishes:
            return FormalComplex(k, N)
        state, deg = out.weight, deg + out.degree
    fc = FormalComplex(k, N)
    fc.add((state, (0,) * k), deg)
    return fc


# -- coordinates ------------------------------------------------------------

def basis(k: int, N: int) -> list:
    return enumerate_P(N - k, k)


@lru_cache(maxsize=None)
def _pairing(k: int, N: int):
    """Signed permutation inverting the Euler pairing chi(S_mu Q, S_lam V)."""
    B = basis(k, N)
    D = enumerate_P(k, N - k)
    col = {lam: j for j, lam in enumerate(B)}
    inv = {}
    for mu in D:
        row = [(lam, bott.euler_pairing(_qlabel(mu, k, N), _vlabel(lam, k, N), N)) for lam in B]
        nz = [(lam, v) for lam, v in row if v]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            raise ArithmeticError(f"pairing row for {mu} is not a signed unit vector: {nz}")
        lam, v = nz[0]
        if col[lam] in inv:
            raise ArithmeticError("pairing matrix is not a permutation")
        inv[col[lam]] = (mu, v)
    return inv


def _vlabel(lam, k, N):
    return ((0,) * (N - k), diagram(lam).padded(k))


def _qlabel(mu, k, N):
    return (diagram(mu).padded(N - k), (0,) * k)


def coordinates(cls: dict, k: int, N: int) -> list:
    """Coordinates of a class in the [S_lam V] basis, exact integers."""
    inv = _pairing(k, N)
    out = []
    for j in range(len(basis(k, N))):
        mu, sign = inv[j]
        q = _qlabel(mu, k, N)
        out.append(sign * sum(c * bott.euler_pairing(q, lab, N) for lab, c in cls.items() if c))
    return out


# -- generator action -------------------------------------------------------

def _sgn(d):
    return -1 if d % 2 else 1


def act_on_basis(tok: Tok, lam, kk: tuple, N: int) -> dict:
    """Class of ``tok`` applied to [S_lam V] at weight ``kk``."""
    k1, k2 = kk
    lam = diagram(lam).padded(k1)
    if tok.kind == F:
        out = bott.bott_normalize((tok.idx,) + lam)
        if out.vanishes:
            return {}
        return {((0,) * (k2 - 1), out.weight): _sgn(out.degree)}
    if tok.kind == E:
        cls: dict = {}
        for mu, e in gl_branch(lam):
            out = bott.bott_normalize((0,) * k2 + (e + tok.idx,))
            if out.vanishes:
                continue
            lab = (out.weight, mu)
            cls[lab] = cls.get(lab, 0) + _sgn(out.degree)
        return cls
    e = tok.idx
    if tok.kind == PP:
        return {(tuple([e] * k2), lam): _sgn(e * (1 - k2))}
    return {((0,) * k2, tuple(x - e for x in lam)): _sgn(e * (1 - k1))}


def target_weight(tok: Tok, kk: tuple) -> tuple:
    return tok.act(tuple(kk))


@lru_cache(maxsize=None)
def euler_matrix(tok: Tok, kk: tuple, N: int):
    """Exact integer matrix of ``tok`` from K(kk) to K(tok kk); rows index the target."""
    if len(kk) != 2:
        raise NotImplementedError("generator matrices are implemented for n = 2 only")
    tk = target_weight(tok, kk)
    src = basis(kk[0], N)
    if not is_valid_weight(tk, N):
        return np.zeros((0, len(src)), dtype=object)
    M = np.zeros((len(basis(tk[0], N)), len(src)), dtype=object)
    for j, lam in enumerate(src):
        M[:, j] = coordinates(act_on_basis(tok, lam, kk, N), tk[0], N)
    return M


@dataclass(frozen=True)
class GeneratorMatrix:
    token: Tok
    source: tuple
    target: tuple
    matrix: object
    row_labels: tuple
    col_labels: tuple

    def dump(self) -> dict:
        return {
            "token": str(self.token),
            "source": list(self.source),
            "target": list(self.target),
            "rows": [list(x) for x in self.row_labels],
            "cols": [list(x) for x in self.col_labels],
            "matrix": [[int(v) for v in row] for row in self.matrix],
        }


def generator_matrix(tok: Tok, kk, N: int) -> GeneratorMatrix:
    kk = tuple(kk)
    M = euler_matrix(tok, kk, N)
    tk = target_weight(tok, kk)
    rows = tuple(basis(tk[0], N)) if is_valid_weight(tk, N) else ()
    return GeneratorMatrix(tok, kk, tk, M, rows, tuple(basis(kk[0], N)))


def word_matrix(tokens, kk: tuple, N: int):
    """Matrix of a word (rightmost token first); zero if the flow leaves C(2, N)."""
    kk = tuple(kk)
    M = np.identity(len(basis(kk[0], N)), dtype=object)
    k = kk
    for t in reversed(tuple(tokens)):
        tk = t.act(k)
        if not is_valid_weight(tk, N):
            return None
        M = euler_matrix(t, k, N).dot(M)
        k = tk
    return M


# -- relations --------------------------------------------------------------

RELATIONS = ("U01", "U03", "U04", "U05", "U06", "U07", "U09-interior", "U09-boundary")
OUT_OF_SCOPE = ("U02", "U08")


def in_range(tok: Tok, kk: tuple) -> bool:
    """Generator index ranges: -k_i-1 <= r <= 0 for E, 0 <= s <= k_{i+1}+1 for F."""
    if tok.kind == E:
        return -kk[0] - 1 <= tok.idx <= 0
    if tok.kind == F:
        return 0 <= tok.idx <= kk[1] + 1
    return True


def _word_in_range(tokens, kk) -> bool:
    k = tuple(kk)
    for t in reversed(tokens):
        if not in_range(t, k):
            return False
        k = t.act(k)
    return True


def _mat(tokens, kk, N, shape):
    M = word_matrix(tokens, kk, N)
    if M is None:
        return np.zeros(shape, dtype=object)
    return M


def _dim(kk, N):
    return len(basis(kk[0], N)) if is_valid_weight(kk, N) else 0


@dataclass
class RelationResult:
    rel: str
    N: int
    passed: bool
    checked: int
    witness: Optional[dict] = None

    def as_dict(self):
        return {"relation": self.rel, "N": self.N, "passed": self.passed,
                "checked": self.checked, "witness": self.witness}


def _compare(rel, N, kk, lhs_terms, rhs_terms, desc):
    """Each side is a list of (coeff, tokens). Returns None on success else a witness."""
    src = _dim(kk, N)
    tk = kk
    for t in reversed((lhs_terms + rhs_terms)[0][1]):
        tk = t.act(tk)
    shape = (_dim(tk, N), src)

    def total(terms):
        acc = np.zeros(shape, dtype=object)
        for c, toks in terms:
            acc = acc + c * _mat(toks, kk, N, shape)
        return acc

    L, R = total(lhs_terms), total(rhs_terms)
    if shape[0] == 0 or shape[1] == 0:
        return None
    if not np.array_equal(L, R):
        return {"weight": list(kk), **desc,
                "lhs": [[int(v) for v in r] for r in L], "rhs": [[int(v) for v in r] for r in R]}
    return None


def _index_window(N):
    return range(-N - 3, N + 4)


def _cases(rel: str, N: int):
    """Yield (weight, lhs, rhs, description) for every in-range instance."""
    e = lambda r: Tok(E, 1, r)
    f = lambda s: Tok(F, 1, s)
    for kk in weights_of(2, N):
        k1, k2 = kk
        if rel == "U03":
            for kind in (PP, PM):
                for x in (1, 2):
                    lhs = [(1, (Tok(kind, 1, x), Tok(kind, 1, -x)))]
                    yield kk, lhs, [(1, ())], {"psi": kind, "exponent": x}
        elif rel in ("U04", "U05"):
            for r, s in itertools.product(_index_window(N), repeat=2):
                if rel == "U04":
                    lhs, rhs = (e(r), e(s)), (e(s + 1), e(r - 1))
                else:
                    lhs, rhs = (f(r), f(s)), (f(s - 1), f(r + 1))
                if not (_word_in_range(lhs, kk) and _word_in_range(rhs, kk)):
                    continue
                if not is_valid_weight(lhs[0].act(lhs[1].act(kk)), N):
                    continue
                yield kk, [(1, lhs)], [(-1, rhs)], {"r": r, "s": s}
        elif rel in ("U06", "U07"):
            for kind in (PP, PM):
                for r in _index_window(N):
                    g = e if rel == "U06" else f
                    step = 1 if rel == "U06" else -1
                    lhs, rhs = (Tok(kind, 1, 1), g(r)), (g(r + step), Tok(kind, 1, 1))
                    if not (_word_in_range(lhs, kk) and _word_in_range(rhs, kk)):
                        continue
                    if not is_valid_weight(lhs[1].act(kk), N):
                        continue
                    yield kk, [(1, lhs)], [(-1, rhs)], {"psi": kind, "r": r}
        elif rel.startswith("U09"):
            for r, s in itertools.product(_index_window(N), repeat=2):
                ef, fe = (e(r), f(s)), (f(s), e(r))
                if not (_word_in_range(ef, kk) and _word_in_range(fe, kk)):
                    continue
                t = r + s
                if t in (k2 + 1, -k1 - 1):
                    continue  # h-generator cases
                interior = -k1 + 1 <= t <= k2 - 1
                if rel == "U09-interior" and not interior:
                    continue
                if rel == "U09-boundary" and interior:
                    continue
                lhs = [(1, ef), (-1, fe)]
                if interior:
                    rhs = []
                elif t == k2:
                    rhs = [(1, (Tok(PP, 1, 1),))]
                else:
                    rhs = [(-1, (Tok(PM, 1, 1),))]
                yield kk, lhs, rhs, {"r": r, "s": s}


def _check_u01(N: int) -> RelationResult:
    ws = weights_of(2, N)
    dims = [_dim(w, N) for w in ws]
    off = dict(zip(ws, itertools.accumulate([0] + dims)))
    total = sum(dims)
    assert total == 2 ** N

    def proj(w):
        P = np.zeros((total, total), dtype=object)
        for i in range(off[w], off[w] + _dim(w, N)):
            P[i, i] = 1
        return P

    checked = 0
    P = {w: proj(w) for w in ws}
    for a in ws:
        for b in ws:
            want = P[a] if a == b else np.zeros((total, total), dtype=object)
            checked += 1
            if not np.array_equal(P[a].dot(P[b]), want):
                return RelationResult("U01", N, False, checked, {"weights": [list(a), list(b)]})
    for kk in ws:
        for tok in [Tok(E, 1, r) for r in range(-kk[0] - 1, 1)] + \
                   [Tok(F, 1, s) for s in range(0, kk[1] + 2)] + [Tok(PP, 1, 1), Tok(PM, 1, 1)]:
            tk = tok.act(kk)
            if not is_valid_weight(tk, N):
                continue
            X = np.zeros((total, total), dtype=object)
            X[off[tk]:off[tk] + _dim(tk, N), off[kk]:off[kk] + _dim(kk, N)] = euler_matrix(tok, kk, N)
            checked += 1
            if not np.array_equal(X.dot(P[kk]), P[tk].dot(X)):
                return RelationResult("U01", N, False, checked,
                                      {"weight": list(kk), "token": str(tok)})
    return RelationResult("U01", N, True, checked)


def check_relation(rel: str, N: int) -> RelationResult:
    if rel in OUT_OF_SCOPE:
        raise NotImplementedError("out of scope: h-generators")
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}")
    if rel == "U01":
        return _check_u01(N)
    checked = 0
    for kk, lhs, rhs, desc in _cases(rel, N):
        checked += 1
        w = _compare(rel, N, kk, lhs, rhs, desc)
        if w is not None:
            return RelationResult(rel, N, False, checked, w)
    return RelationResult(rel, N, True, checked)


# -- engine cross-check -----------------------------------------------------

def verdict_matches(verdict, graded: dict) -> Optional[bool]:
    """None when the verdict is inconclusive (Stuck)."""
    from .engine import IsoIdentity, ProvenZero
    if isinstance(verdict, ProvenZero):
        return not any(graded.values())
    if isinstance(verdict, IsoIdentity):
        return graded == {-verdict.shift: 1}
    return None


@dataclass
class CrossCheck:
    left: tuple
    right: tuple
    k: int
    N: int
    verdict: str
    ext: dict
    outcome: str  # "agree", "mismatch", "engine-incomplete"

    def as_dict(self):
        return {"left": list(self.left), "right": list(self.right), "k": self.k, "N": self.N,
                "verdict": self.verdict, "ext": {str(d): n for d, n in sorted(self.ext.items())},
                "outcome": self.outcome}


def cross_check(lam, lam2, k: int, N: int, max_steps=None) -> CrossCheck:
    """Compare the engine's Hom(F_lam, F_lam2) with Ext(S_lam V, S_lam2 V)."""
    from .engine import simplify
    from .sod import CollectionSpec, hom_word
    lam, lam2 = YoungDiagram(lam), YoungDiagram(lam2)
    spec = CollectionSpec(2, N, (k, N - k))
    v = simplify(hom_word(spec, (lam,), (lam2,)), max_steps=max_steps)
    ext = bott.ext_V(lam, lam2, k, N)
    m = verdict_matches(v, ext)
    outcome = "engine-incomplete" if m is None else ("agree" if m else "mismatch")
    return CrossCheck(tuple(lam), tuple(lam2), k, N, str(v), ext, outcome)
