"""Serialisation of certificates and check tables to JSON and Markdown."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile

SCHEMA = 1


def _diagram(lam):
    return list(lam)


def _index(t):
    return [_diagram(x) for x in t]


def chain_digest(chain: list) -> str:
    h = hashlib.sha256()
    for rec in chain:
        h.update(f"{rec['step']}|{rec['clause']}|{rec['before']}|{rec['after']}\n".encode())
    return h.hexdigest()[:16]


def pair_record(rec, with_chain: bool) -> dict:
    out = {
        "left": _index(rec.left),
        "right": _index(rec.right),
        "verdict": str(rec.verdict),
        "expected": rec.expected,
        "steps": rec.steps,
        "clauses": sorted(set(r["clause"] for r in rec.chain)),
        "digest": chain_digest(rec.chain),
    }
    if with_chain:
        out["chain"] = rec.chain
    return out


def certificate(cert, with_chain: bool = False) -> dict:
    spec = cert.spec
    from .sod import fully_faithful_report
    ff = fully_faithful_report(cert)
    return {
        "collection": {
            "n": spec.n, "N": spec.N, "target": list(spec.target), "side": spec.side,
            "source": list(spec.source), "size": len(cert.members),
        },
        "status": cert.status,
        "complement": cert.complement,
        "members": [_index(t) for t in cert.members],
        "self": [pair_record(r, with_chain) for r in cert.selfs],
        "pairs": [pair_record(r, with_chain) for r in cert.pairs],
        "fully_faithful": [{"member": _index(t), "value": v} for t, v in ff.items()],
        "stuck": [{"left": _index(a), "right": _index(b), "residue": s}
                  for a, b, s in cert.stuck_residues()],
    }


def build(config: dict, status: str, certificates=(), relations=(), crosschecks=(),
          oracle=None, timing=None) -> dict:
    doc = {
        "schema": SCHEMA,
        "config": config,
        "certificates": list(certificates),
        "relations": list(relations),
        "crosschecks": list(crosschecks),
        "status": status,
    }
    if oracle is not None:
        doc["oracle"] = oracle
    if timing is not None:
        doc["timing"] = timing
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".szero-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def to_markdown(doc: dict) -> str:
    lines = ["# szero report", "", f"status: **{doc['status']}**", ""]
    cfg = doc["config"]
    lines.append("config: " + ", ".join(f"{k}={cfg[k]}" for k in sorted(cfg)))
    lines.append("")
    if doc["certificates"]:
        lines += ["## Collections", "", "| n | N | target | side | size | status | complement |",
                  "|---|---|---|---|---|---|---|"]
        for c in doc["certificates"]:
            col = c["collection"]
            lines.append(f"| {col['n']} | {col['N']} | {tuple(col['target'])} | {col['side']} | "
                         f"{col['size']} | {c['status']} | {c['complement']} |")
        lines.append("")
    if doc["relations"]:
        lines += ["## Relations", "", "| relation | N | checked | passed |", "|---|---|---|---|"]
        for r in doc["relations"]:
            lines.append(f"| {r['relation']} | {r['N']} | {r['checked']} | {r['passed']} |")
        lines.append("")
    if doc["crosschecks"]:
        agree = sum(1 for c in doc["crosschecks"] if c["outcome"] == "agree")
        inc = sum(1 for c in doc["crosschecks"] if c["outcome"] == "engine-incomplete")
        bad = sum(1 for c in doc["crosschecks"] if c["outcome"] == "mismatch")
        lines += ["## Engine vs oracle", "",
                  f"{len(doc['crosschecks'])} comparisons: {agree} agree, "
                  f"{inc} engine-incomplete, {bad} mismatches", ""]
    if doc.get("oracle"):
        lines += ["## Oracle", "", "```", json.dumps(doc["oracle"], sort_keys=True, indent=1), "```", ""]
    if doc.get("timing"):
        lines += ["## Timing", ""]
        lines += [f"- {k}: {v:.3f}s" for k, v in sorted(doc["timing"].items())]
        lines.append("")
    return "\n".join(lines)
