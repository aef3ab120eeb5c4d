"""Persistent store of canonical p-adic roots.

The cache makes residue construction coherent across moduli and across
process restarts: for a given polynomial and prime it always hands back the
same p-adic root, only ever extended in precision, never replaced by a
different residue class. The on-disk format is a line-oriented append-only
text file, one entry per line:

    <poly-hash> <p> <k> <r> <0|1>

Later lines for the same (poly-hash, p) pair supersede earlier ones at
higher precision. Access within a process is expected to be single-writer.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

from .modroots import PadicRoot
from .polys import IntPoly


def poly_key(P: IntPoly) -> str:
    """Canonical hash of a polynomial's coefficient sequence."""
    payload = "v1:" + ",".join(str(c) for c in P.coeffs)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


class RootCache:
    """Map (polynomial, prime) to a canonical PadicRoot, optionally on disk."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._mem: dict[tuple[str, int], tuple[int, int, bool]] = {}
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self) -> None:
        for line in self.path.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            key, p, k, r, unit = line.split()
            self._mem[(key, int(p))] = (int(k), int(r), unit == "1")

    def get(self, P: IntPoly, p: int) -> PadicRoot | None:
        entry = self._mem.get((poly_key(P), p))
        if entry is None:
            return None
        k, r, unit = entry
        root = PadicRoot.for_poly(P, p, k, r)
        if root.unit != unit:
            raise ValueError("cache entry inconsistent with polynomial")
        return root

    def put(self, P: IntPoly, p: int, root: PadicRoot) -> None:
        key = (poly_key(P), p)
        old = self._mem.get(key)
        if old is not None:
            old_k, old_r, _ = old
            if root.k <= old_k:
                return
            if root.r % p ** old_k != old_r:
                raise ValueError("refusing to replace cached residue class")
        self._mem[key] = (root.k, root.r, root.unit)
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(f"{key[0]} {p} {root.k} {root.r} {int(root.unit)}\n")
