"""Words in the generators E, F, Psi± and a rewriting simplifier for them.

A word is stored left to right as written, with its domain weight at the right
end: ``E[1,-2] F[1,2] @ (0,3)`` first applies F then E.  The simplifier uses
only the following moves, each recorded in the derivation log under a clause id:

``4a``/``4b``   right adjoints of E and F
``5a``/``5b``   moving a power of Psi± past E resp. F of the same colour
``6a``/``6b``   the two exact triangles relating EF and FE
``6c``          the isomorphism EF ≅ FE in the interior range
``U03``         merging and cancelling adjacent Psi powers
``weight-zero`` a word passing through a weight outside C(n, N) is zero
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

E, F, PP, PM = "E", "F", "P+", "P-"
PSI = (PP, PM)


# -- weights ----------------------------------------------------------------

def is_valid_weight(k: Sequence[int], N: Optional[int] = None) -> bool:
    if any(x < 0 for x in k):
        return False
    return N is None or sum(k) == N


def root(i: int, n: int) -> tuple:
    """Simple root alpha_i: -1 in slot i, +1 in slot i+1 (colours are 1-based)."""
    a = [0] * n
    a[i - 1] = -1
    a[i] = 1
    return tuple(a)


def weights_of(n: int, N: int) -> list:
    """All of C(n, N) in lexicographic order."""
    if n == 1:
        return [(N,)]
    out = []
    for first in range(N + 1):
        for rest in weights_of(n - 1, N - first):
            out.append((first,) + rest)
    return out


# -- expressions ------------------------------------------------------------

@dataclass(frozen=True)
class Tok:
    kind: str
    color: int
    idx: int  # r for E, s for F, exponent for Psi

    def __str__(self):
        if self.kind == E:
            return f"E[{self.color},{self.idx}]"
        if self.kind == F:
            return f"F[{self.color},{self.idx}]"
        return f"Psi[{self.kind[1]},{self.color},{self.idx}]"

    @property
    def is_psi(self) -> bool:
        return self.kind in PSI

    def act(self, k: tuple) -> tuple:
        if self.is_psi:
            return k
        a = root(self.color, len(k))
        sgn = 1 if self.kind == E else -1
        return tuple(x + sgn * y for x, y in zip(k, a))


def Etok(i, r):
    return Tok(E, i, r)


def Ftok(i, s):
    return Tok(F, i, s)


def Psi(sign: str, i: int, e: int) -> Tok:
    return Tok(PP if sign == "+" else PM, i, e)


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Identity:
    weight: tuple
    shift: int = 0

    def __str__(self):
        return f"1_{self.weight}" + (f"[{self.shift}]" if self.shift else "")


@dataclass(frozen=True)
class Word:
    tokens: tuple
    domain: tuple
    shift: int = 0

    def __str__(self):
        body = " ".join(str(t) for t in self.tokens)
        w = "(" + ",".join(str(x) for x in self.domain) + ")"
        s = f"[{self.shift}]" if self.shift else ""
        return (body + " " if body else "") + "@ " + w + s

    @property
    def codomain(self):
        k = self.domain
        for t in reversed(self.tokens):
            k = t.act(k)
        return k


@dataclass(frozen=True)
class Filtered:
    """Exact triangle A -> B -> C."""
    A: object
    B: object
    C: object
    clause: str = ""

    def __str__(self):
        return f"[{self.A} -> {self.B} -> {self.C}]"


FunctorExpr = Union[Zero, Identity, Word, Filtered]


@dataclass(frozen=True)
class IsoIdentity:
    shift: int = 0

    def __str__(self):
        return f"IsoIdentity({self.shift})"


@dataclass(frozen=True)
class ProvenZero:
    def __str__(self):
        return "ProvenZero"


@dataclass(frozen=True)
class Stuck:
    expr: object
    reason: str = "no rule applies"

    def __str__(self):
        return f"Stuck({self.expr}; {self.reason})"


Verdict = Union[IsoIdentity, ProvenZero, Stuck]


def as_word(expr) -> Word:
    if isinstance(expr, Word):
        return expr
    if isinstance(expr, Identity):
        return Word((), tuple(expr.weight), expr.shift)
    raise TypeError(f"not a word: {expr!r}")


def compose(left, right) -> Word:
    """``left ∘ right``: apply ``right`` first."""
    left, right = as_word(left), as_word(right)
    if tuple(left.domain) != tuple(right.codomain):
        raise ValueError(f"cannot compose: {left.domain} != {right.codomain}")
    out = list(left.tokens)
    for i, t in enumerate(right.tokens):
        if not t.is_psi:
            out.extend(right.tokens[i:])
            break
        _append_psi(out, t)
    return Word(tuple(out), right.domain, left.shift + right.shift)


# -- weight flow ------------------------------------------------------------

def _flow(tokens: tuple, domain: tuple) -> list:
    """ws[p] is the weight to the right of token p; ws[len] == domain."""
    ws = [None] * (len(tokens) + 1)
    ws[-1] = domain
    k = domain
    for p in range(len(tokens) - 1, -1, -1):
        k = tokens[p].act(k)
        ws[p] = k
    return ws


def weight_flow(word, domain: Optional[Sequence[int]] = None):
    """Intermediate weights from the domain outwards, or Zero if one is invalid."""
    if not isinstance(word, Word):
        word = Word(tuple(word), tuple(domain))
    n = len(word.domain)
    for t in word.tokens:
        if not 1 <= t.color <= n - 1:
            raise ValueError(f"colour {t.color} out of range for n={n}")
    ws = _flow(word.tokens, tuple(word.domain))
    if not all(is_valid_weight(k) for k in ws):
        return Zero()
    return list(reversed(ws))


# -- right adjoints ---------------------------------------------------------

def _append_psi(out: list, tok: Tok) -> None:
    if tok.idx == 0:
        return
    if out and out[-1].is_psi and out[-1].kind == tok.kind and out[-1].color == tok.color:
        e = out[-1].idx + tok.idx
        out.pop()
        if e:
            out.append(Tok(tok.kind, tok.color, e))
    else:
        out.append(tok)


def token_adjoint(tok: Tok, k: tuple):
    """Right adjoint of ``tok`` acting on weight ``k``: (tokens, shift)."""
    i = tok.color
    if tok.kind == F:
        s = tok.idx
        toks = [Tok(PM, i, -s + 1), Etok(i, -k[i - 1] - 2), Tok(PM, i, s - 2)]
        return toks, s - 1
    if tok.kind == E:
        r = tok.idx
        toks = [Tok(PP, i, r + 1), Ftok(i, k[i] + 2), Tok(PP, i, -r - 2)]
        return toks, -r - 1
    return [Tok(tok.kind, i, -tok.idx)], 0


def right_adjoint(word) -> Word:
    word = as_word(word)
    ws = _flow(word.tokens, tuple(word.domain))
    if not all(is_valid_weight(k) for k in ws):
        raise ValueError("zero weight in flow")
    out: list = []
    shift = -word.shift
    # (T1 T2 ... Tm)^R = Tm^R ... T1^R; Tm is rightmost, so its adjoint is written first
    for p in range(len(word.tokens) - 1, -1, -1):
        toks, sh = token_adjoint(word.tokens[p], ws[p + 1])
        shift += sh
        for t in toks:
            if t.is_psi:
                _append_psi(out, t)
            else:
                out.append(t)
    return Word(tuple(out), ws[0], shift)


# -- rewriting --------------------------------------------------------------

_ZERO = ("zero",)


class _BoundExceeded(Exception):
    pass


@dataclass
class Step:
    index: int
    clause: str
    before: tuple
    after: tuple
    domain: tuple

    def render(self):
        b = str(Word(self.before, self.domain))
        a = "0" if self.after is None else str(Word(self.after, self.domain))
        return {"step": self.index, "clause": self.clause, "before": b, "after": a}


@dataclass
class Derivation:
    steps: list = field(default_factory=list)

    def add(self, clause, before, after, domain):
        self.steps.append(Step(len(self.steps) + 1, clause, before, after, domain))

    def clauses(self):
        return [s.clause for s in self.steps]

    def render(self):
        return [s.render() for s in self.steps]


def _push_psi(toks: list, log, domain) -> int:
    """Move Psi powers right through same-colour letters, merge neighbours."""
    shift = 0
    changed = True
    while changed:
        changed = False
        p = 0
        while p < len(toks):
            t = toks[p]
            if not t.is_psi:
                p += 1
                continue
            if t.idx == 0:
                before = tuple(toks)
                del toks[p]
                log(_U03, before, tuple(toks))
                changed = True
                continue
            if p + 1 >= len(toks):
                break
            u = toks[p + 1]
            if u.color != t.color:
                p += 1
                continue
            m = t.idx
            before = tuple(toks)
            if u.is_psi:
                if u.kind != t.kind:
                    p += 1
                    continue
                e = m + u.idx
                toks[p:p + 2] = [Tok(t.kind, t.color, e)] if e else []
                log(_U03, before, tuple(toks))
            elif u.kind == E:
                # (Psi±)^m E_r ≅ E_{r+m} (Psi±)^m [∓m]
                toks[p:p + 2] = [Etok(u.color, u.idx + m), t]
                shift += -m if t.kind == PP else m
                log("5a", before, tuple(toks))
            else:
                # (Psi±)^m F_s ≅ F_{s-m} (Psi±)^m [±m]
                toks[p:p + 2] = [Ftok(u.color, u.idx - m), t]
                shift += m if t.kind == PP else -m
                log("5b", before, tuple(toks))
            changed = True
    return shift


_U03 = "U03"


def classify_pair(left: Tok, right: Tok, k: tuple):
    """Which clause relates the adjacent letters ``left right`` acting on ``k``."""
    i = left.color
    if left.is_psi or right.is_psi or right.color != i or left.kind == right.kind:
        return None
    r = left.idx if left.kind == E else right.idx
    s = left.idx if left.kind == F else right.idx
    ki, ki1 = k[i - 1], k[i]
    if -ki + 1 <= r + s <= ki1 - 1:
        return "6c"
    if r + s == ki1:
        return "6a"
    if r + s == -ki:
        return "6b"
    return None


def _triangle(clause: str, ef: tuple, fe: tuple, psi: Tok):
    """Members (A, B, C) of the triangle as token tuples."""
    if clause == "6a":
        return fe, ef, (psi,)
    return ef, fe, (psi,)


class Simplifier:
    """Memoised evaluation of words at a fixed domain weight."""

    def __init__(self, domain, directions, max_steps, rng=None, log=True):
        self.domain = tuple(domain)
        self.directions = directions
        self.max_steps = max_steps
        self.rng = rng
        self.memo: dict = {}
        self.count = 0
        self.derivation = Derivation() if log else None

    def log(self, clause, before, after):
        self.count += 1
        if self.count > self.max_steps:
            raise _BoundExceeded()
        if self.derivation is not None:
            self.derivation.add(clause, before, after, self.domain)

    def value(self, tokens: tuple):
        """``("zero",)``, ``("pure", psi_tokens, shift)`` or ``("stuck", tokens, shift)``."""
        if tokens in self.memo:
            return self.memo[tokens]
        res = self._value(tokens)
        self.memo[tokens] = res
        return res

    def _value(self, tokens: tuple):
        toks = list(tokens)
        shift = 0
        while True:
            ws = _flow(tuple(toks), self.domain)
            if not all(is_valid_weight(k) for k in ws):
                self.log("weight-zero", tuple(toks), None)
                return _ZERO
            shift += _push_psi(toks, self.log, self.domain)
            if all(t.is_psi for t in toks):
                return ("pure", tuple(toks), shift)
            ws = _flow(tuple(toks), self.domain)
            pairs = []
            for p in range(len(toks) - 1):
                a, b = toks[p], toks[p + 1]
                if a.is_psi or b.is_psi or a.color != b.color or a.kind == b.kind:
                    continue
                if self.directions.get(a.color, E) != a.kind:
                    continue
                clause = classify_pair(a, b, ws[p + 2])
                if clause:
                    pairs.append((p, clause))
            pairs.reverse()
            if self.rng is not None:
                self.rng.shuffle(pairs)
            swap = next(((p, c) for p, c in pairs if c == "6c"), None)
            if swap is not None:
                p, _ = swap
                before = tuple(toks)
                toks[p], toks[p + 1] = toks[p + 1], toks[p]
                self.log("6c", before, tuple(toks))
                continue
            for p, clause in pairs:
                res = self._resolve(toks, p, clause, ws[p + 2])
                if res is not None:
                    if res[0] == "zero":
                        return _ZERO
                    return (res[0], res[1], res[2] + shift)
            return ("stuck", tuple(toks), shift)

    def _resolve(self, toks, p, clause, k):
        a, b = toks[p], toks[p + 1]
        i = a.color
        ef = (a, b) if a.kind == E else (b, a)
        fe = (ef[1], ef[0])
        psi = Tok(PP if clause == "6a" else PM, i, 1)
        A, B, C = _triangle(clause, ef, fe, psi)
        cur = (a, b)
        pre, post = tuple(toks[:p]), tuple(toks[p + 2:])
        ctx = {"A": pre + A + post, "B": pre + B + post, "C": pre + C + post}
        target = "A" if cur == A else "B"
        others = [m for m in "ABC" if m != target]
        vals = {}
        for m in others:
            vals[m] = self.value(ctx[m])
            if vals[m][0] == "zero":
                rest = [x for x in others if x != m][0]
                # A -> B -> C with one member zero: the other two agree up to shift
                if target == "A" and m == "B":
                    sh = -1  # A ≅ C[-1]
                elif target == "B" and m == "C":
                    sh = 0  # B ≅ A
                else:
                    sh = 0  # A ≅ B when C = 0; B ≅ C when A = 0
                self.log(clause, tuple(toks), ctx[rest])
                v = self.value(ctx[rest])
                if v[0] == "zero":
                    return _ZERO
                return (v[0], v[1], v[2] + sh)
        return None


def _directions(tokens) -> dict:
    """For each colour, the kind of its leftmost letter: that letter moves right."""
    d: dict = {}
    for t in tokens:
        if not t.is_psi and t.color not in d:
            d[t.color] = t.kind
    return d


@dataclass
class Result:
    verdict: object
    normal_form: object
    derivation: Optional[Derivation]
    steps: int


def default_bound(length: int) -> int:
    return max(16, 4 * length * length)


def simplify_full(expr, max_steps: Optional[int] = None, rng=None, log=True) -> Result:
    if isinstance(expr, Zero):
        return Result(ProvenZero(), Zero(), Derivation() if log else None, 0)
    if isinstance(expr, Filtered):
        return _simplify_filtered(expr, max_steps, rng, log)
    word = as_word(expr)
    n = len(word.domain)
    for t in word.tokens:
        if not 1 <= t.color <= n - 1:
            raise ValueError(f"colour {t.color} out of range for n={n}")
    bound = max_steps if max_steps is not None else default_bound(len(word.tokens))
    if isinstance(rng, int):
        rng = random.Random(rng)
    simp = Simplifier(word.domain, _directions(word.tokens), bound, rng, log)
    try:
        v = simp.value(tuple(word.tokens))
    except _BoundExceeded:
        return Result(Stuck(word, "iteration bound exceeded"), word, simp.derivation, simp.count)
    if v[0] == "zero":
        return Result(ProvenZero(), Zero(), simp.derivation, simp.count)
    nf = Word(v[1], word.domain, word.shift + v[2])
    if v[0] == "pure" and not v[1]:
        return Result(IsoIdentity(nf.shift), nf, simp.derivation, simp.count)
    reason = "irreducible Psi word" if v[0] == "pure" else "no rule applies"
    return Result(Stuck(nf, reason), nf, simp.derivation, simp.count)


def _simplify_filtered(expr: Filtered, max_steps, rng, log) -> Result:
    ra = simplify_full(expr.A, max_steps, rng, log)
    rb = simplify_full(expr.B, max_steps, rng, log)
    rc = simplify_full(expr.C, max_steps, rng, log)
    steps = ra.steps + rb.steps + rc.steps
    der = Derivation() if log else None
    if isinstance(ra.verdict, ProvenZero):
        return Result(rc.verdict, rc.normal_form, der, steps)
    if isinstance(rc.verdict, ProvenZero):
        return Result(ra.verdict, ra.normal_form, der, steps)
    if isinstance(rb.verdict, ProvenZero):
        # the total object of the triangle is B; with B = 0 it is zero
        return Result(ProvenZero(), Zero(), der, steps)
    return Result(Stuck(expr, "unresolved triangle"), expr, der, steps)


def simplify(expr, max_steps: Optional[int] = None, rng=None) -> Verdict:
    return simplify_full(expr, max_steps, rng, log=False).verdict


# -- single-rule operations -------------------------------------------------

def push_psi_right(expr) -> Word:
    word = as_word(expr)
    toks = list(word.tokens)
    shift = _push_psi(toks, lambda *a: None, word.domain)
    return Word(tuple(toks), word.domain, word.shift + shift)


def ef_step(expr):
    """Apply the EF/FE relation to the rightmost eligible same-colour pair."""
    word = as_word(expr)
    toks = word.tokens
    ws = _flow(toks, tuple(word.domain))
    for p in range(len(toks) - 2, -1, -1):
        a, b = toks[p], toks[p + 1]
        if a.is_psi or b.is_psi or a.kind == b.kind:
            continue
        if a.color != b.color:
            continue
        clause = classify_pair(a, b, ws[p + 2])
        if clause is None:
            continue
        pre, post = toks[:p], toks[p + 2:]
        if clause == "6c":
            return Word(pre + (b, a) + post, word.domain, word.shift)
        ef = (a, b) if a.kind == E else (b, a)
        fe = (ef[1], ef[0])
        psi = Tok(PP if clause == "6a" else PM, a.color, 1)
        A, B, C = _triangle(clause, ef, fe, psi)
        mk = lambda m: Word(pre + m + post, word.domain, word.shift)
        return Filtered(mk(A), mk(B), mk(C), clause)
    return word


# -- collection words -------------------------------------------------------

def lemma_word(lam: Sequence[int], i: int, k: int, N: int) -> Word:
    """The prefix word whose vanishing drives the exceptionality argument."""
    if not 2 <= i <= k:
        raise ValueError(f"need 2 <= i <= k, got i={i}, k={k}")
    lam = tuple(lam) + (0,) * (k - len(lam))
    if len(lam) != k or any(x < 0 for x in lam) or lam[0] > N - k:
        raise ValueError(f"{lam} not in P({N - k},{k})")
    L = lambda j: lam[j - 1]
    out: list = []
    _append_psi(out, Tok(PM, 1, -L(k) + 1))
    # E_{-2} (Psi-)^{l_k - l_{k-1} - 1} E_{-3} ... E_{-k+i-2} (Psi-)^{l_i - l_{i-1} - 1}
    for j in range(2, k - i + 3):
        out.append(Etok(1, -j))
        top = k - j + 2
        _append_psi(out, Tok(PM, 1, L(top) - L(top - 1) - 1))
    out.append(Ftok(1, 2))
    return Word(tuple(out), (k - i, N - k + i))


def vanishing_lemma_check(lam, i: int, k: int, N: int) -> Verdict:
    return simplify(lemma_word(lam, i, k, N))
