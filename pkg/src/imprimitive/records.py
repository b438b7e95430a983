"""JSONL result records, schema version 1.

One JSON object per line with sorted keys, so a fixed job always produces
the same bytes. Rationals are written as "num/den" strings; the only floats
are empirical densities, written as 6-place decimals next to an exact
fraction.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from fractions import Fraction

SCHEMA_VERSION = 1


def qstr(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def job_id(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, default=str).encode()
    return hashlib.sha1(blob).hexdigest()[:12]


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def make(job: str, kind: str, timestamps: bool = False, **payload) -> dict:
    rec = {"v": SCHEMA_VERSION, "job": job, "kind": kind}
    rec.update(payload)
    if timestamps:
        rec["ts"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return rec


def prime_line(job: str, kind: str, rec, ok: bool, timestamps=False) -> dict:
    payload = {
        "p": rec.p,
        "N": rec.N,
        "ord": rec.order,
        "idx": rec.index,
        "flags": {str(k): v for k, v in rec.flags.items()},
        "ok": ok,
    }
    if rec.cyclic is not None:
        payload["cyclic"] = rec.cyclic
    return make(job, kind, timestamps, **payload)


def bad_line(job: str, kind: str, p: int, timestamps=False) -> dict:
    return make(job, kind, timestamps, p=p, bad=True)


def summarize(job: str, kind: str, bound: int, lines: list[dict], timestamps=False) -> dict:
    """Summary line computed from per-prime lines only, so that a resumed job
    summarizes exactly like an uninterrupted one."""
    good = [r for r in lines if not r.get("bad")]
    ok = sum(1 for r in good if r["ok"])
    fails = [r["p"] for r in good if not r["ok"]]
    dens = Fraction(ok, len(good)) if good else Fraction(0)
    return make(
        job,
        "summary",
        timestamps,
        scan=kind,
        bound=bound,
        scanned=len(good),
        successes=ok,
        density=f"{float(dens):.6f}",
        density_exact=qstr(dens),
        counterexamples=len(fails),
        first_witness=fails[0] if fails else None,
        bad_primes=[r["p"] for r in lines if r.get("bad")],
    )


class JsonlWriter:
    """Single consumer writing lines in the order given; flushes every line."""

    def __init__(self, path: str | None, stream=None):
        self.path = path
        self.stream = stream
        self._fh = None

    def __enter__(self):
        if self.path:
            self._fh = open(self.path, "a", encoding="utf-8")
        return self

    def __exit__(self, *exc):
        if self._fh:
            self._fh.close()

    def write(self, rec: dict):
        line = dumps(rec)
        if self._fh:
            self._fh.write(line + "\n")
            self._fh.flush()
        if self.stream is not None:
            self.stream.write(line + "\n")


def read_jsonl(path: str) -> list[dict]:
    if not os.path.exists(path):
        return []
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


def truncate_for_resume(path: str, job: str, start: int) -> list[dict]:
    """Keep this job's per-prime lines with p < start, drop everything else of
    the job (later primes, the summary), and rewrite the file."""
    kept, other = [], []
    for r in read_jsonl(path):
        if r.get("job") != job:
            other.append(r)
        elif r.get("kind") != "summary" and r.get("p", start) < start:
            kept.append(r)
    with open(path, "w", encoding="utf-8") as fh:
        for r in other + kept:
            fh.write(dumps(r) + "\n")
    return kept
