"""Syndrome decoding of vertically interleaved LRS codes.

The received word is an s x n matrix Y = C + E whose rows are codewords of
one component code plus errors sharing their row space (the locations).

Error-only decoding finds the error locator polynomial (ELP) lambda in
F_{q^m}[x; theta^{-1}] from the reversed syndromes, the locators x as its
root spaces, and the values A row by row.  Error-erasure decoding also uses
the values A_R of the row erasures and the locations B_C of the column
erasures.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import decoding as dc
from .decoding import DecodeResult, DecodingFailure
from .lrs import LrsCode
from .subroutines import AttemptBudgetExceeded, ZeroPivot, gabidulin_core, root_space_bases
from .sumrank import ErasureSideInfo, ErrorDecomposition, ErrorPart, sub_words, weight


@dataclass
class VilrsInstance:
    code: LrsCode
    s: int
    Y: list[list[int]]

    def __post_init__(self):
        if len(self.Y) != self.s or any(len(r) != self.code.n for r in self.Y):
            raise ValueError(f"Y must be {self.s} x {self.code.n}")


class VilrsDecodeResult(DecodeResult):
    pass


def _roots(code, lam, seeds, rng, stats):
    try:
        return root_space_bases(lam, code.xi_tilde, ring=code.Rinv, seeds=seeds,
                                rng=rng, stats=stats)
    except AttemptBudgetExceeded as exc:
        raise DecodingFailure(dc.ROOTS, str(exc))


def _theta_solve(code, known, params, rhs, sign=1):
    t = code.tower
    try:
        return gabidulin_core(t.qm, lambda y, k: t.theta(y, sign * k), known, params, rhs)
    except ZeroPivot as exc:
        raise DecodingFailure(dc.SOLVE, str(exc))


def _twisted(code, s_j: Sequence[int]) -> list[int]:
    """(s_1, theta(s_2), theta^2(s_3), ...)."""
    t = code.tower
    return [t.theta(v, l) for l, v in enumerate(s_j)]


def _reversed_syndromes(code, S):
    N = code.redundancy
    return [dc.pad(code.Rinv.reverse(s_j, N - 1), N) for s_j in S]


def _locations(code, x_blocks):
    return [code.locations_from_locators(xb, i) for i, xb in enumerate(x_blocks)]


def _finish(inst, parts, expected, info):
    code, s = inst.code, inst.s
    t = code.tower
    dec = ErrorDecomposition("vertical", s, parts)
    E = dec.recompose(t, code.partition)
    C = sub_words(t, inst.Y, E, "vertical")
    if any(any(code.syndrome(r)) for r in C):
        raise DecodingFailure(dc.POSTCHECK, "nonzero syndrome")
    w = weight(t, E, code.partition, "vertical", s)
    if w != expected:
        raise DecodingFailure(dc.POSTCHECK, f"weight {w} != {expected}")
    return VilrsDecodeResult(True, C, dec, info=info)


def _empty_part(s, ell):
    return ErrorPart([[] for _ in range(s)], [[] for _ in range(ell)], (0,) * ell)


def decode_errors(inst: VilrsInstance, rng: random.Random | None = None) -> VilrsDecodeResult:
    code, s = inst.code, inst.s
    t = code.tower
    rng = dc.default_rng(rng)
    info: dict = {}
    try:
        S = [code.syndrome(y) for y in inst.Y]
        if not any(any(v) for v in S):
            return VilrsDecodeResult(True, [list(r) for r in inst.Y],
                                     ErrorDecomposition("vertical", s, {"F": _empty_part(s, code.partition.ell)}),
                                     info={"degree": 0})
        lam, L, unique = dc.synth(code.Rinv, _reversed_syndromes(code, S), [0] * s)
        info["degree"] = L
        if not unique:
            raise DecodingFailure(dc.AMBIGUOUS, f"register length {L}")
        x_blocks = _roots(code, lam, None, rng, info)
        if sum(map(len, x_blocks)) != L:
            raise DecodingFailure(dc.ROOTS, "root spaces smaller than deg lambda")
        x, ps = dc.flatten(x_blocks, code.xi)
        A = [_theta_solve(code, x, ps, _twisted(code, s_j)) for s_j in S]
        part = ErrorPart(A, _locations(code, x_blocks), tuple(map(len, x_blocks)))
        return _finish(inst, {"F": part}, L, info)
    except DecodingFailure as exc:
        return VilrsDecodeResult.failure(exc, info)


# ---------------------------------------------------------------------------
# error-erasure decoding

def _column_locators(code, side: ErasureSideInfo) -> list[list[int]]:
    """x_C = h B_C^T, block by block."""
    return [[code.locator(b, i) for b in B] for i, B in enumerate(side.col_locations)]


def fqms_single_component_shortcut(code: LrsCode, a_R: Sequence[Sequence[int]],
                                   a_params: Sequence[int], v: Sequence[Sequence[int]],
                                   theta_deg: Sequence[int]) -> list[int] | None:
    """x_R from one component whose row-erasure values have full weight t_R,
    or None if no component qualifies."""
    t_R = len(a_params)
    for j, deg in enumerate(theta_deg):
        if deg == t_R:
            return _theta_solve(code, a_R[j], [code.tower.theta(a, -1) for a in a_params],
                                v[j], sign=-1)
    return None


def _combined_xR(code, a_R, a_params, v) -> list[int]:
    t = code.tower
    known = dc.combine(t, a_R)
    rhs = dc.combine(t, v)
    params = [t.theta(a, -1) for a in a_params]
    try:
        x = gabidulin_core(t.qms, lambda y, k: t.theta_qms(y, -k), known, params, rhs)
    except ZeroPivot as exc:
        raise DecodingFailure(dc.SOLVE, str(exc))
    if any(e >= t.qm.order for e in x):
        raise DecodingFailure(dc.NOT_BASE)
    return x


def decode_errors_erasures(inst: VilrsInstance, side: ErasureSideInfo,
                           rng: random.Random | None = None,
                           use_shortcut: bool = True) -> VilrsDecodeResult:
    code, s = inst.code, inst.s
    t = code.tower
    F = t.qm
    R, Ri = code.R, code.Rinv
    N = code.redundancy
    rng = dc.default_rng(rng)
    info: dict = {}
    try:
        if len(side.row_values) != s:
            raise ValueError("A_R must have s rows")
        xC_blocks = _column_locators(code, side)
        xC, xC_par = dc.flatten(xC_blocks, code.xi)
        xC_t = [t.theta(a, -1) for a in xC_par]
        lam_C = Ri.min_poly(xC, xC_t)
        t_C = len(lam_C) - 1
        a_R = side.row_values                      # s x t_R
        aR_par = dc.flatten([[0] * r for r in side.row_ranks], code.xi)[1]
        aR_hat = [t.theta(F.inv(a), -1) for a in aR_par]
        t_R = len(aR_par)
        S = [code.syndrome(y) for y in inst.Y]
        Shat = _reversed_syndromes(code, S)
        aux, offsets, thetas = [], [], []
        for j in range(s):
            sig_R = Ri.min_poly(a_R[j], aR_hat)
            th = len(sig_R) - 1
            cp = Ri.coeff_map(Ri.reverse(sig_R, th), N - 1)
            aux.append(dc.pad(Ri.mul(Ri.mul(lam_C, Shat[j]), cp), N))
            offsets.append(th + t_C)
            thetas.append(th)
        info["theta"] = thetas
        lam_F, t_F, unique = dc.synth(Ri, aux, offsets)
        info["degree"] = t_F
        if not unique:
            raise DecodingFailure(dc.AMBIGUOUS, f"register length {t_F}")
        lam_FC = Ri.mul(lam_F, lam_C)
        # row erasures: locators transformed by lambda_FC
        if t_R:
            neq = N - t_F - t_C
            if neq < t_R:
                raise DecodingFailure(dc.SOLVE, "too few equations for the row erasures")
            v = []
            for j in range(s):
                P = dc.pad(Ri.mul(lam_FC, Shat[j]), N)
                v.append([t.theta(P[N - 1 - r], -r) for r in range(neq)])
            xR_hat = None
            if use_shortcut:
                xR_hat = fqms_single_component_shortcut(code, a_R, aR_par, v, thetas)
                info["shortcut"] = xR_hat is not None
            if xR_hat is None:
                xR_hat = _combined_xR(code, a_R, aR_par, v)
            lam_R = Ri.min_poly(xR_hat, [t.theta(a, -1) for a in aR_par])
            if len(lam_R) - 1 != t_R:
                raise DecodingFailure(dc.SOLVE, "row-erasure locators are dependent")
        else:
            xR_hat, lam_R = [], [1]
        lam = Ri.mul(lam_R, lam_FC)
        full = _roots(code, lam_FC, xC_blocks, rng, info)
        xF_blocks = [b[len(c):] for b, c in zip(full, xC_blocks)]
        if sum(map(len, xF_blocks)) != t_F:
            raise DecodingFailure(dc.ROOTS, "root spaces smaller than deg lambda_F")
        seeds = [c + f for c, f in zip(xC_blocks, xF_blocks)]
        full = _roots(code, lam, seeds, rng, info)
        xR_blocks = []
        xRh_blocks = dc.unflatten(xR_hat, side.row_ranks)
        for i, (b, sd) in enumerate(zip(full, seeds)):
            cand = b[len(sd):]
            imgs = [Ri.eval(lam_FC, x, code.xi_tilde[i]) for x in cand]
            xR_blocks.append(dc.align(t, cand, imgs, xRh_blocks[i]))
        xR, _ = dc.flatten(xR_blocks, code.xi)
        # values of full errors and column erasures
        xF, xF_par = dc.flatten(xF_blocks, code.xi)
        known = xF + xC
        params = xF_par + xC_par
        AF, AC = [], []
        for j in range(s):
            rhs = _twisted(code, S[j])
            if t_R:
                M = R.moore(N, a_R[j], aR_par)
                for l in range(N):
                    acc = 0
                    for a, x in zip(M[l], xR):
                        if a and x:
                            acc = F.add(acc, F.mul(a, x))
                    rhs[l] = F.sub(rhs[l], acc)
            vals = _theta_solve(code, known, params, rhs) if known else []
            AF.append(vals[:t_F])
            AC.append(vals[t_F:])
        ranks_F = tuple(map(len, xF_blocks))
        ranks_C = tuple(map(len, xC_blocks))
        parts = {
            "F": ErrorPart(AF, _locations(code, xF_blocks), ranks_F),
            "R": ErrorPart([list(r) for r in a_R], _locations(code, xR_blocks), tuple(side.row_ranks)),
            "C": ErrorPart(AC, [[list(b) for b in B] for B in side.col_locations], ranks_C),
        }
        return _finish(inst, parts, t_F + t_R + t_C, info)
    except DecodingFailure as exc:
        return VilrsDecodeResult.failure(exc, info)
