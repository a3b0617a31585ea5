"""Syndrome decoding of horizontally interleaved LRS codes.

The received word y = c + e has length s*n, component-major.  The error
components share their column space (the values a), so the decoder finds the
error span polynomial (ESP) sigma from the plain syndromes, the values as its
root spaces under xi_hat, and the locators x_j component by component.
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
class HilrsInstance:
    code: LrsCode
    s: int
    y: list[int]

    def __post_init__(self):
        if len(self.y) != self.s * self.code.n:
            raise ValueError(f"y must have length {self.s * self.code.n}")

    def component(self, j: int) -> list[int]:
        n = self.code.n
        return self.y[j * n:(j + 1) * n]


class HilrsDecodeResult(DecodeResult):
    pass


def _roots(code, sig, seeds, rng, stats):
    try:
        return root_space_bases(sig, code.xi_hat, ring=code.Rinv, seeds=seeds,
                                rng=rng, stats=stats)
    except AttemptBudgetExceeded as exc:
        raise DecodingFailure(dc.ROOTS, str(exc))


def _solve(code, known, params, rhs, sign):
    t = code.tower
    try:
        return gabidulin_core(t.qm, lambda y, k: t.theta(y, sign * k), known, params, rhs)
    except ZeroPivot as exc:
        raise DecodingFailure(dc.SOLVE, str(exc))


def _locations(code, x_comp_blocks: Sequence[Sequence[Sequence[int]]]):
    """B^(i) rows (B_1^(i) | ... | B_s^(i)) from per-component locator blocks."""
    out = []
    for i in range(code.partition.ell):
        rows = None
        for xb in x_comp_blocks:
            cols = [code.location_column(i, x) for x in xb[i]]
            if rows is None:
                rows = [list(c) for c in cols]
            else:
                for r, c in zip(rows, cols):
                    r.extend(c)
        out.append(rows or [])
    return out


def _finish(inst, parts, expected, info):
    code, s = inst.code, inst.s
    t = code.tower
    dec = ErrorDecomposition("horizontal", s, parts)
    e = dec.recompose(t, code.partition)
    c = sub_words(t, inst.y, e, "horizontal")
    n = code.n
    if any(any(code.syndrome(c[j * n:(j + 1) * n])) for j in range(s)):
        raise DecodingFailure(dc.POSTCHECK, "nonzero syndrome")
    w = weight(t, e, code.partition, "horizontal", s)
    if w != expected:
        raise DecodingFailure(dc.POSTCHECK, f"weight {w} != {expected}")
    return HilrsDecodeResult(True, c, dec, info=info)


def decode_errors(inst: HilrsInstance, rng: random.Random | None = None) -> HilrsDecodeResult:
    code, s = inst.code, inst.s
    ell = code.partition.ell
    rng = dc.default_rng(rng)
    info: dict = {}
    try:
        S = [code.syndrome(inst.component(j)) for j in range(s)]
        if not any(any(v) for v in S):
            empty = ErrorPart([], [[] for _ in range(ell)], (0,) * ell)
            return HilrsDecodeResult(True, list(inst.y),
                                     ErrorDecomposition("horizontal", s, {"F": empty}),
                                     info={"degree": 0})
        sig, L, unique = dc.synth(code.Rinv, S, [0] * s)
        info["degree"] = L
        if not unique:
            raise DecodingFailure(dc.AMBIGUOUS, f"register length {L}")
        a_blocks = _roots(code, sig, None, rng, info)
        if sum(map(len, a_blocks)) != L:
            raise DecodingFailure(dc.ROOTS, "root spaces smaller than deg sigma")
        a, ps = dc.flatten(a_blocks, code.xi_tilde)
        sizes = tuple(map(len, a_blocks))
        xs = [dc.unflatten(_solve(code, a, ps, S[j], -1), sizes) for j in range(s)]
        part = ErrorPart(a, _locations(code, xs), sizes)
        return _finish(inst, {"F": part}, L, info)
    except DecodingFailure as exc:
        return HilrsDecodeResult.failure(exc, info)


# ---------------------------------------------------------------------------
# error-erasure decoding

def _column_locators(code, side: ErasureSideInfo, s: int) -> list[list[list[int]]]:
    """x_{C,j} = h B_{C,j}^T per component j, block by block."""
    out = []
    for j in range(s):
        blocks = []
        for i, (B, ni) in enumerate(zip(side.col_locations, code.partition.blocks)):
            blocks.append([code.locator(row[j * ni:(j + 1) * ni], i) for row in B])
        out.append(blocks)
    return out


def fqms_single_component_shortcut(code: LrsCode, xC: Sequence[Sequence[int]],
                                   x_params: Sequence[int], v: Sequence[Sequence[int]],
                                   rho: Sequence[int]) -> list[int] | None:
    """D^t(a_C) from one component whose column-erasure locators have full
    weight t_C, or None if no component qualifies."""
    t_C = len(x_params)
    for j, deg in enumerate(rho):
        if deg == t_C:
            return _solve(code, xC[j], x_params, v[j], 1)
    return None


def _combined(code, xC, x_params, v) -> list[int]:
    t = code.tower
    try:
        y = gabidulin_core(t.qms, lambda z, k: t.theta_qms(z, k), dc.combine(t, xC),
                           x_params, dc.combine(t, v))
    except ZeroPivot as exc:
        raise DecodingFailure(dc.SOLVE, str(exc))
    if any(e >= t.qm.order for e in y):
        raise DecodingFailure(dc.NOT_BASE)
    return y


def decode_errors_erasures(inst: HilrsInstance, side: ErasureSideInfo,
                           rng: random.Random | None = None,
                           use_shortcut: bool = True) -> HilrsDecodeResult:
    code, s = inst.code, inst.s
    t = code.tower
    F = t.qm
    Ri = code.Rinv
    N = code.redundancy
    rng = dc.default_rng(rng)
    info: dict = {}
    try:
        aR_blocks = dc.unflatten(side.row_values, side.row_ranks)
        a_R, aR_hat = dc.flatten(aR_blocks, code.xi_hat)
        sig_R = Ri.min_poly(a_R, aR_hat)
        t_R = len(sig_R) - 1
        xC_comp = _column_locators(code, side, s)
        xC, rho, aux, offsets = [], [], [], []
        S = [code.syndrome(inst.component(j)) for j in range(s)]
        for j in range(s):
            flat, par = dc.flatten(xC_comp[j], code.xi)
            xC.append(flat)
            lam_Cj = Ri.min_poly(flat, [t.theta(a, -1) for a in par])
            r = len(lam_Cj) - 1
            rho.append(r)
            rev = Ri.reverse(lam_Cj, r)
            aux.append(dc.pad(Ri.mul(Ri.mul(sig_R, S[j]), rev), N))
            offsets.append(t_R + r)
        xC_par = dc.flatten(xC_comp[0], code.xi)[1] if s else []
        t_C = len(xC_par)
        info["rho"] = rho
        sig_F, t_F, unique = dc.synth(Ri, aux, offsets)
        info["degree"] = t_F
        if not unique:
            raise DecodingFailure(dc.AMBIGUOUS, f"register length {t_F}")
        sig_FR = Ri.mul(sig_F, sig_R)
        tt = t_F + t_R
        if t_C:
            neq = N - tt
            if neq < t_C:
                raise DecodingFailure(dc.SOLVE, "too few equations for the column erasures")
            v = []
            for j in range(s):
                P = dc.pad(Ri.mul(sig_FR, S[j]), N)
                v.append([t.theta(P[tt + r], tt + r) for r in range(neq)])
            y = None
            if use_shortcut:
                y = fqms_single_component_shortcut(code, xC, xC_par, v, rho)
                info["shortcut"] = y is not None
            if y is None:
                y = _combined(code, xC, xC_par, v)
            # y_r = theta^tt(a_r) N_tt(xi_r)
            aC_hat = [t.theta(F.div(yr, t.gen_norm(xr, tt)), -tt) for yr, xr in zip(y, xC_par)]
            aC_hat_par = [t.theta(F.inv(a), -1) for a in xC_par]
            sig_C = Ri.min_poly(aC_hat, aC_hat_par)
            if len(sig_C) - 1 != t_C:
                raise DecodingFailure(dc.SOLVE, "column-erasure values are dependent")
        else:
            aC_hat, sig_C = [], [1]
        sig = Ri.mul(sig_C, sig_FR)
        full = _roots(code, sig_FR, aR_blocks, rng, info)
        aF_blocks = [b[len(r):] for b, r in zip(full, aR_blocks)]
        if sum(map(len, aF_blocks)) != t_F:
            raise DecodingFailure(dc.ROOTS, "root spaces smaller than deg sigma_F")
        seeds = [r + f for r, f in zip(aR_blocks, aF_blocks)]
        full = _roots(code, sig, seeds, rng, info)
        aCh_blocks = dc.unflatten(aC_hat, side.col_ranks)
        aC_blocks = []
        for i, (b, sd) in enumerate(zip(full, seeds)):
            cand = b[len(sd):]
            imgs = [Ri.eval(sig_FR, a, code.xi_hat[i]) for a in cand]
            aC_blocks.append(dc.align(t, cand, imgs, aCh_blocks[i]))
        a_C, _ = dc.flatten(aC_blocks, code.xi)
        a_F, aF_par = dc.flatten(aF_blocks, code.xi_tilde)
        aR_par_t = dc.flatten(aR_blocks, code.xi_tilde)[1]
        known = a_F + a_R
        params = aF_par + aR_par_t
        F_sizes = tuple(map(len, aF_blocks))
        xF_comp, xR_comp = [], []
        for j in range(s):
            rhs = list(S[j])
            if t_C:
                xt = [t.theta(a, -1) for a in xC_par]
                M = Ri.moore(N, xC[j], xt)
                for l in range(N):
                    acc = 0
                    for a, x in zip(a_C, M[l]):
                        if a and x:
                            acc = F.add(acc, F.mul(a, x))
                    rhs[l] = F.sub(rhs[l], acc)
            sol = _solve(code, known, params, rhs, -1) if known else []
            xF_comp.append(dc.unflatten(sol[:t_F], F_sizes))
            xR_comp.append(dc.unflatten(sol[t_F:], side.row_ranks))
        parts = {
            "F": ErrorPart(a_F, _locations(code, xF_comp), F_sizes),
            "R": ErrorPart(list(a_R), _locations(code, xR_comp), tuple(side.row_ranks)),
            "C": ErrorPart(a_C, [[list(b) for b in B] for B in side.col_locations],
                           tuple(side.col_ranks)),
        }
        return _finish(inst, parts, t_F + t_R + t_C, info)
    except DecodingFailure as exc:
        return HilrsDecodeResult.failure(exc, info)
