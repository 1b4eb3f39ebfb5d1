"""Command-line entry point.

Exit codes: 0 success, 2 a certificate or check failed, 3 the engine could not
finish (stuck), 64 bad configuration or input.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
import time

from . import bott, ktheory, report
from .engine import (
    E, F, PM, PP, IsoIdentity, ProvenZero, Tok, Word, is_valid_weight, simplify_full,
    weights_of,
)
from .partitions import enumerate_P, lex_compare, Ordering
from .sod import CollectionSpec, verify_collection

EXIT_OK, EXIT_INVALID, EXIT_STUCK, EXIT_CONFIG = 0, 2, 3, 64

WORD_HELP = """\
word grammar:  TOKEN* @ (w1,...,wn)
  F[i,s]        F_{i,s}
  E[i,r]        E_{i,r}
  Psi[+,i,e]    (Psi+_i)^e
  Psi[-,i,e]    (Psi-_i)^e
tokens are written left to right; the rightmost acts first on the weight after @.
example: 'E[1,-2] F[1,2] @ (0,3)'
"""


class ConfigError(Exception):
    pass


def max_N() -> int:
    raw = os.environ.get("SZERO_MAX_N", "6")
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"SZERO_MAX_N must be an integer, got {raw!r}")


# -- word parsing -----------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<ef>[EF])\[\s*(?P<i>-?\d+)\s*,\s*(?P<r>-?\d+)\s*\]"
    r"|Psi\[\s*(?P<sg>[+-])\s*,\s*(?P<pi>-?\d+)\s*,\s*(?P<pe>-?\d+)\s*\]"
    r"|(?P<at>@))"
)
_WEIGHT = re.compile(r"\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*$")


class ParseError(ValueError):
    def __init__(self, text, pos, msg):
        self.text, self.pos = text, pos
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {' ' * pos}^")


def parse_word(text: str) -> Word:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(text, pos + (len(text[pos:]) - len(text[pos:].lstrip())),
                             "expected F[i,s], E[i,r], Psi[+/-,i,e] or @")
        pos = m.end()
        if m.group("at"):
            break
        if m.group("ef"):
            toks.append(Tok(E if m.group("ef") == "E" else F, int(m.group("i")), int(m.group("r"))))
        else:
            toks.append(Tok(PP if m.group("sg") == "+" else PM, int(m.group("pi")), int(m.group("pe"))))
    w = _WEIGHT.match(text, pos)
    if not w:
        raise ParseError(text, pos, "expected weight '(w1,...,wn)'")
    domain = tuple(int(x) for x in w.group(1).split(","))
    if len(domain) < 2:
        raise ParseError(text, pos, "weight needs at least two entries")
    for t in toks:
        if not 1 <= t.color <= len(domain) - 1:
            raise ParseError(text, 0, f"colour {t.color} out of range for n={len(domain)}")
    return Word(tuple(toks), domain)


# -- configuration ----------------------------------------------------------

def _Ns(args) -> list:
    cap = max_N()
    if args.N is None:
        Ns = list(range(2, cap + 1))
    else:
        Ns = [args.N]
    for N in Ns:
        if N < 2:
            raise ConfigError(f"N must be at least 2, got {N}")
        if N > cap:
            raise ConfigError(f"N={N} exceeds SZERO_MAX_N={cap}")
    return Ns


def _targets(args, N: int) -> list:
    n = args.n
    if n < 2:
        raise ConfigError(f"n must be at least 2, got {n}")
    if args.k is None:
        return weights_of(n, N)
    try:
        parts = [int(x) for x in args.k.split(",")]
    except ValueError:
        raise ConfigError(f"cannot parse --k {args.k!r}")
    if len(parts) == 1 and n == 2:
        parts = [parts[0], N - parts[0]]
    k = tuple(parts)
    if len(k) != n or not is_valid_weight(k, N):
        raise ConfigError(f"--k {args.k} is not a weight in C({n},{N})")
    return [k]


def _config(args, **extra) -> dict:
    cfg = {"command": args.command, "n": getattr(args, "n", None), "N": args.N,
           "k": getattr(args, "k", None), "max_N": max_N()}
    for name in ("side", "max_steps", "relations", "chains", "diagnostic"):
        if hasattr(args, name):
            v = getattr(args, name)
            cfg[name] = v
    cfg.update(extra)
    return cfg


def _emit(args, doc) -> None:
    if getattr(args, "json", None):
        report.atomic_write(args.json, report.to_json(doc))
    if getattr(args, "md", None):
        report.atomic_write(args.md, report.to_markdown(doc))


def _maybe_timing(args, t0):
    return {"total": time.perf_counter() - t0} if getattr(args, "timing", False) else None


# -- commands ---------------------------------------------------------------

def cmd_verify_sod(args) -> int:
    t0 = time.perf_counter()
    sides = {"F": ["F"], "E": ["E"], "both": ["F", "E"]}[args.side]
    if args.n != 2 and "E" in sides:
        if args.side == "E":
            raise ConfigError("E-side collections need n = 2")
        sides = ["F"]
    certs = []
    for N in _Ns(args):
        for k in _targets(args, N):
            for side in sides:
                spec = CollectionSpec(args.n, N, k, side)
                cert = verify_collection(spec, jobs=args.jobs, max_steps=args.max_steps,
                                         chains=True, diagnostic=args.diagnostic)
                certs.append(cert)
                print(f"{side}-side n={args.n} N={N} k={k}: {len(cert.members)} members, "
                      f"{len(cert.pairs)} ordered pairs -> {cert.status}")
    statuses = [c.status for c in certs]
    if "INVALID" in statuses:
        code, status = EXIT_INVALID, "INVALID"
    elif "INVALID-INCOMPLETE" in statuses:
        code, status = EXIT_STUCK, "INVALID-INCOMPLETE"
    else:
        code, status = EXIT_OK, "VALID"
    doc = report.build(_config(args), status,
                       certificates=[report.certificate(c, args.chains) for c in certs],
                       timing=_maybe_timing(args, t0))
    _emit(args, doc)
    print(f"status: {status}")
    return code


def kapranov_suite(k: int, N: int) -> dict:
    """Exceptionality and semiorthogonality of S_lam V and of the dual S_mu Q."""
    B = enumerate_P(N - k, k)
    D = enumerate_P(k, N - k)
    fails = []
    checked = 0
    for a in B:
        for b in B:
            rel = lex_compare(a, b)
            if rel is Ordering.GT:
                continue
            got = bott.ext_V(a, b, k, N)
            want = {0: 1} if rel is Ordering.EQ else {}
            checked += 1
            if got != want:
                fails.append({"bundle": "V", "left": list(a), "right": list(b), "ext": got})
    for a in D:
        for b in D:
            rel = lex_compare(a, b)
            if rel is Ordering.LT:
                continue
            got = bott.ext_Q(a, b, k, N)
            want = {0: 1} if rel is Ordering.EQ else {}
            checked += 1
            if got != want:
                fails.append({"bundle": "Q", "left": list(a), "right": list(b), "ext": got})
    return {"k": k, "N": N, "checked": checked, "failures": fails}


def cmd_verify_kapranov(args) -> int:
    t0 = time.perf_counter()
    out = []
    for N in _Ns(args):
        ks = range(N + 1) if args.k is None else [_targets(args, N)[0][0]]
        for k in ks:
            res = kapranov_suite(k, N)
            out.append(res)
            print(f"Gr({k},{N}): {res['checked']} Ext checks, {len(res['failures'])} failures")
    ok = all(not r["failures"] for r in out)
    status = "PASS" if ok else "FAIL"
    doc = report.build(_config(args), status, oracle={"kapranov": out},
                       timing=_maybe_timing(args, t0))
    _emit(args, doc)
    print(f"status: {status}")
    return EXIT_OK if ok else EXIT_INVALID


def pairing_table(k: int, N: int) -> dict:
    D = enumerate_P(k, N - k)
    B = enumerate_P(N - k, k)
    matrix = []
    bijection = []
    delta = True
    for mu in D:
        row = [bott.dual_pairing(mu, lam, k, N) for lam in B]
        matrix.append([{str(d): n for d, n in e.items()} for e in row])
        hits = [lam for lam, e in zip(B, row) if e]
        if len(hits) != 1 or bott.dual_pairing(mu, hits[0], k, N) != {0: 1}:
            delta = False
        else:
            bijection.append((mu, hits[0]))
    targets = [lam for _, lam in bijection]
    delta = delta and len(set(targets)) == len(B)
    transpose = all(lam == mu.transpose() for mu, lam in bijection)
    return {"k": k, "N": N, "rows": [list(m) for m in D], "cols": [list(l) for l in B],
            "matrix": matrix, "delta": delta,
            "bijection": [[list(m), list(l)] for m, l in bijection],
            "bijection_is_transpose": transpose}


def cmd_dual_pairing(args) -> int:
    t0 = time.perf_counter()
    out = []
    for N in _Ns(args):
        ks = range(N + 1) if args.k is None else [_targets(args, N)[0][0]]
        for k in ks:
            t = pairing_table(k, N)
            out.append(t)
            pairs = ", ".join(f"{tuple(m)}->{tuple(l)}" for m, l in t["bijection"])
            print(f"Gr({k},{N}): delta pattern {'yes' if t['delta'] else 'NO'}; "
                  f"transpose {'yes' if t['bijection_is_transpose'] else 'no'}; {pairs}")
    ok = all(t["delta"] for t in out)
    status = "PASS" if ok else "FAIL"
    doc = report.build(_config(args), status, oracle={"dual_pairing": out},
                       timing=_maybe_timing(args, t0))
    _emit(args, doc)
    print(f"status: {status}")
    return EXIT_OK if ok else EXIT_INVALID


def _oracle_eval(word: Word):
    """Evaluate pure F-words from (0,N) and pure E-words from (N,0) geometrically."""
    if len(word.domain) != 2:
        return None
    N = sum(word.domain)
    kinds = {t.kind for t in word.tokens}
    if word.domain == (0, N) and kinds <= {F}:
        k = len(word.tokens)
        return ktheory.eval_F_word(tuple(t.idx for t in word.tokens), k, N)
    if word.domain == (N, 0) and kinds <= {E}:
        m = len(word.tokens)
        if any(t.idx > 0 for t in word.tokens):
            return None
        return ktheory.eval_E_word(tuple(-t.idx for t in word.tokens), N - m, N)
    return None


def cmd_eval_word(args) -> int:
    args.word = " ".join(args.word)
    try:
        word = parse_word(args.word)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    N = sum(word.domain)
    if not is_valid_weight(word.domain):
        print(f"weight {word.domain} has a negative entry", file=sys.stderr)
        return EXIT_CONFIG
    res = simplify_full(word, max_steps=args.max_steps, log=True)
    v = res.verdict
    if isinstance(v, IsoIdentity) and not word.tokens:
        nf = "Identity" + (f"[{v.shift}]" if v.shift else "")
    elif isinstance(v, ProvenZero):
        nf = "0"
    else:
        nf = str(res.normal_form)
    print(f"word:    {word}")
    print(f"engine:  {nf}")
    print(f"verdict: {v}")
    if args.chain and res.derivation:
        for rec in res.derivation.render():
            print(f"  {rec['step']:3d} {rec['clause']:<11} {rec['before']}  =>  {rec['after']}")
    oracle = _oracle_eval(word)
    matrix = None
    if oracle is not None:
        print(f"oracle:  {oracle}")
    elif len(word.domain) == 2 and N >= 1:
        M = ktheory.word_matrix(word.tokens, word.domain, N)
        if M is not None:
            matrix = [[int(x) for x in row] for row in M]
            print(f"oracle:  K-theory matrix {matrix}")
    doc = report.build(_config(args, word=args.word), "OK", oracle={
        "word": str(word), "engine": nf, "verdict": str(v),
        "chain": res.derivation.render() if res.derivation else [],
        "evaluation": str(oracle) if oracle is not None else None, "matrix": matrix})
    _emit(args, doc)
    return EXIT_OK


def cmd_check_relations(args) -> int:
    t0 = time.perf_counter()
    rels = ktheory.RELATIONS if not args.relations else tuple(args.relations.split(","))
    for r in rels:
        if r in ktheory.OUT_OF_SCOPE:
            print(f"{r}: out of scope: h-generators", file=sys.stderr)
            return EXIT_CONFIG
        if r not in ktheory.RELATIONS:
            raise ConfigError(f"unknown relation {r!r}")
    if args.n != 2:
        raise ConfigError("relation checks are implemented for n = 2")
    results = []
    first_fail = None
    for N in _Ns(args):
        for r in rels:
            res = ktheory.check_relation(r, N)
            results.append(res)
            print(f"N={N} {r:<13} {res.checked:5d} identities  {'pass' if res.passed else 'FAIL'}")
            if not res.passed and first_fail is None:
                first_fail = res
    ok = first_fail is None
    if not ok:
        print(f"first failure: {first_fail.rel} N={first_fail.N} {first_fail.witness}")
    status = "PASS" if ok else "FAIL"
    doc = report.build(_config(args), status, relations=[r.as_dict() for r in results],
                       timing=_maybe_timing(args, t0))
    _emit(args, doc)
    print(f"status: {status} ({sum(r.checked for r in results)} identities)")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_cross_check(args) -> int:
    t0 = time.perf_counter()
    if args.n != 2:
        raise ConfigError("cross-check is defined for n = 2")
    out = []
    for N in _Ns(args):
        for k in _targets(args, N):
            P = enumerate_P(N - k[0], k[0])
            for a in P:
                for b in P:
                    out.append(ktheory.cross_check(a, b, k[0], N, max_steps=args.max_steps))
    mism = [c for c in out if c.outcome == "mismatch"]
    claimed = [c for c in out if lex_compare(c.left, c.right) is not Ordering.GT]
    incomplete = [c for c in claimed if c.outcome != "agree"]
    print(f"{len(out)} comparisons: {sum(c.outcome == 'agree' for c in out)} agree, "
          f"{sum(c.outcome == 'engine-incomplete' for c in out)} engine-incomplete, "
          f"{len(mism)} mismatches")
    if mism:
        code, status = EXIT_INVALID, "MISMATCH"
    elif incomplete:
        code, status = EXIT_STUCK, "INCOMPLETE"
    else:
        code, status = EXIT_OK, "AGREE"
    doc = report.build(_config(args), status, crosschecks=[c.as_dict() for c in out],
                       timing=_maybe_timing(args, t0))
    _emit(args, doc)
    print(f"status: {status}")
    return code


# -- argument parsing -------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="szero", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter, epilog=WORD_HELP)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, sweep=True):
        sp.add_argument("--n", dest="n", type=int, default=2, help="number of weight slots")
        sp.add_argument("--N", dest="N", type=int, default=None, help="total rank (omit to sweep)")
        if sweep:
            sp.add_argument("--k", dest="k", default=None,
                            help="target weight: an int for n=2, or comma list (omit to sweep)")
        sp.add_argument("--json", default=None, help="write JSON report here")
        sp.add_argument("--md", default=None, help="write Markdown report here")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--max-steps", dest="max_steps", type=int, default=None)
        sp.add_argument("--timing", action="store_true", help="add wall-clock timing to reports")

    sp = sub.add_parser("verify-sod", help="engine certificates for the F/E collections")
    common(sp)
    sp.add_argument("--side", choices=["F", "E", "both"], default="F")
    sp.add_argument("--chains", action="store_true", help="embed full rewrite chains")
    sp.add_argument("--diagnostic", action="store_true", help="also evaluate reverse pairs")
    sp.set_defaults(func=cmd_verify_sod)

    sp = sub.add_parser("verify-kapranov", help="oracle Ext checks for S_lam V and S_mu Q")
    common(sp)
    sp.set_defaults(func=cmd_verify_kapranov)

    sp = sub.add_parser("eval-word", help="simplify a word and evaluate it geometrically",
                        epilog=WORD_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("word", nargs="+", help="the word (may be split across arguments)")
    sp.add_argument("--max-steps", dest="max_steps", type=int, default=None)
    sp.add_argument("--chain", action="store_true", help="print the rewrite chain")
    sp.add_argument("--json", default=None)
    sp.add_argument("--md", default=None)
    sp.set_defaults(func=cmd_eval_word, N=None)

    sp = sub.add_parser("check-relations", help="K-theory matrix checks of the relations")
    common(sp, sweep=False)
    sp.add_argument("--relations", default=None,
                    help="comma list from " + ",".join(ktheory.RELATIONS))
    sp.set_defaults(func=cmd_check_relations)

    sp = sub.add_parser("dual-pairing", help="pairing of S_mu Q[-|mu|] against S_lam V")
    common(sp)
    sp.set_defaults(func=cmd_dual_pairing)

    sp = sub.add_parser("cross-check", help="engine verdicts against oracle Ext groups")
    common(sp)
    sp.set_defaults(func=cmd_cross_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
