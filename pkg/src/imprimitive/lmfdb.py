"""Small LMFDB client, used only to cross-check registry curves.

Nothing fetched here feeds a computation. Network trouble turns into a
skipped check with a warning.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from fractions import Fraction

from .curves import WeierstrassCurve

log = logging.getLogger(__name__)

ENV_URL = "IMPRIMITIVE_LMFDB_URL"
DEFAULT_URL = "https://www.lmfdb.org"
ENDPOINT = "/api/ec_curvedata/"


class NotFound(LookupError):
    pass


@dataclass
class CrossCheck:
    label: str
    status: str  # match | mismatch | not-found | skipped
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == "mismatch"


def base_url(flag: str | None = None) -> str:
    return (flag or os.environ.get(ENV_URL) or DEFAULT_URL).rstrip("/")


def default_cache_dir() -> str:
    return os.path.join(os.path.expanduser("~"), ".cache", "imprimitive-lab")


class LmfdbClient:
    def __init__(self, url: str | None = None, cache_dir: str | None = None, timeout: float = 10.0):
        self.url = base_url(url)
        self.cache_dir = cache_dir or default_cache_dir()
        self.timeout = timeout

    def _query_url(self, label: str) -> str:
        q = urllib.parse.urlencode({"lmfdb_label": label, "_format": "json"})
        return f"{self.url}{ENDPOINT}?{q}"

    def _cache_path(self, url: str) -> str:
        return os.path.join(self.cache_dir, hashlib.sha1(url.encode()).hexdigest()[:16] + ".json")

    def fetch_raw(self, label: str) -> str:
        url = self._query_url(label)
        path = self._cache_path(url)
        if os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        with urllib.request.urlopen(url, timeout=self.timeout) as resp:
            body = resp.read().decode("utf-8")
        os.makedirs(self.cache_dir, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(body)
        return body

    def fetch(self, label: str) -> dict:
        return parse_curve(json.loads(self.fetch_raw(label)), label)


def _rational(v) -> Fraction:
    if isinstance(v, (list, tuple)):
        return Fraction(int(v[0]), int(v[1]))
    return Fraction(str(v))


def parse_curve(payload: dict, label: str) -> dict:
    rows = payload.get("data", [])
    if not rows:
        raise NotFound(label)
    row = rows[0]
    ainvs = [int(a) for a in row["ainvs"]]
    out = {"label": row.get("lmfdb_label", label), "ainvs": ainvs}
    if "jinv" in row:
        out["j"] = _rational(row["jinv"])
    else:
        out["j"] = WeierstrassCurve(*ainvs).j
    if "torsion_structure" in row:
        out["torsion"] = [int(n) for n in row["torsion_structure"]]
    return out


def lmfdb_fetch(label: str, url: str | None = None, cache_dir: str | None = None) -> dict:
    return LmfdbClient(url, cache_dir).fetch(label)


def cross_check(label: str, E: WeierstrassCurve, torsion=None, client: LmfdbClient | None = None) -> CrossCheck:
    client = client or LmfdbClient()
    try:
        data = client.fetch(label)
    except NotFound:
        log.warning("LMFDB has no curve %s", label)
        return CrossCheck(label, "not-found", "label unknown to the server")
    except (urllib.error.URLError, OSError, TimeoutError, ValueError) as exc:
        log.warning("LMFDB check for %s skipped: %s", label, exc)
        return CrossCheck(label, "skipped", str(exc))
    if data["j"] != E.j:
        return CrossCheck(label, "mismatch", f"j = {data['j']} on the server, {E.j} locally")
    if torsion is not None and "torsion" in data:
        remote = [n for n in data["torsion"] if n > 1]
        local = [n for n in torsion if n > 1]
        if remote != local:
            return CrossCheck(label, "mismatch", f"torsion {remote} on the server, {local} locally")
    return CrossCheck(label, "match", f"j = {E.j}")
