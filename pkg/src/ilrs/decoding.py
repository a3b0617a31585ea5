"""Pieces shared by the VILRS and HILRS decoders."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .gf import FieldTower
from .subroutines import AllSequencesEmpty, synthesize

AMBIGUOUS = "key-equation ambiguity"
ROOTS = "root space mismatch"
SOLVE = "linear solve failed"
NOT_BASE = "combined solution outside F_q^m"
ALIGN = "basis alignment failed"
POSTCHECK = "post-check mismatch"


class DecodingFailure(Exception):
    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


@dataclass
class DecodeResult:
    success: bool
    codeword: list | None = None
    decomposition: object | None = None
    reason: str | None = None
    detail: str = ""
    info: dict = field(default_factory=dict)

    @classmethod
    def failure(cls, exc: DecodingFailure, info: dict | None = None) -> "DecodeResult":
        return cls(False, reason=exc.reason, detail=exc.detail, info=info or {})


def synth(ring, seqs, offsets) -> tuple[list[int], int, bool]:
    """synthesize, where a system without equations has the trivial register."""
    try:
        return synthesize(ring, seqs, offsets)
    except AllSequencesEmpty:
        return [1], 0, True


def pad(f: Sequence[int], N: int) -> list[int]:
    f = list(f[:N])
    return f + [0] * (N - len(f))


def flatten(blocks: Sequence[Sequence[int]], params: Sequence[int]) -> tuple[list[int], list[int]]:
    """Entries of a per-block list and the per-block parameter of each entry."""
    vals, ps = [], []
    for b, a in zip(blocks, params):
        vals.extend(b)
        ps.extend([a] * len(b))
    return vals, ps


def unflatten(vals: Sequence[int], sizes: Sequence[int]) -> list[list[int]]:
    out, o = [], 0
    for c in sizes:
        out.append(list(vals[o:o + c]))
        o += c
    return out


def combine(t: FieldTower, vectors: Sequence[Sequence[int]]) -> list[int]:
    """Entrywise sum_j z^{j-1} v_j in F_{q^ms}: F_{q^m}-coordinates -> element."""
    qms = t.qms
    return [qms.from_digits(col) for col in zip(*vectors)]


def align(t: FieldTower, candidates: Sequence[int], images: Sequence[int],
          targets: Sequence[int]) -> list[int]:
    """Re-express a root-space basis so that it maps onto `targets`.

    images[u] = f(candidates[u]) for an F_q-linear f; for every target y_r we
    solve y_r = sum_u c_u images[u] over F_q and return sum_u c_u candidates[u]."""
    F, K = t.qm, t.base
    if len(candidates) != len(targets):
        raise DecodingFailure(ALIGN, "basis size differs from the erasure rank")
    if not targets:
        return []
    M = linalg.transpose([F.digits(v) for v in images])   # m x u
    out = []
    for y in targets:
        c, _ = linalg.solve(K, M, F.digits(y))
        if c is None:
            raise DecodingFailure(ALIGN, "target outside the image span")
        acc = 0
        for cu, x in zip(c, candidates):
            if cu:
                acc = F.add(acc, F.mul(cu, x))
        out.append(acc)
    return out


def default_rng(rng: random.Random | None) -> random.Random:
    return rng if rng is not None else random.Random(0)
