"""Level-k modular data: alcove, S/T/C matrices, quantum dimensions, Verlinde fusion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    InvalidLevel,
    ModularIdentityFailure,
    NonIntegerFusion,
    NotInAlcove,
    OnWall,
)
from .liealg import RootSystem, add, bilinear, build_root_system
from .repchar import casimir, conjugates

MODULAR_TOL = 1e-10
FUSION_INT_TOL = 1e-8
FUSION_GUARD = 1e-6


def _check_level(k):
    if int(k) != k or k < 1:
        raise InvalidLevel(f"level must be a positive integer, got {k!r}", level=k)


def _alcove_sort_key(lam):
    return (sum(lam), tuple(-c for c in lam))


def alcove_weights(rs: RootSystem, k: int):
    """Dominant weights with ``(lam, theta) <= k``, graded by label sum, weight 0 first."""
    _check_level(k)
    comarks = [bilinear(rs, w, rs.theta) for w in _fundamental(rs)]
    out = []

    def rec(prefix, budget):
        i = len(prefix)
        if i == rs.rank:
            out.append(tuple(prefix))
            return
        n = 0
        while n * comarks[i] <= budget:
            rec(prefix + [n], budget - n * comarks[i])
            n += 1

    rec([], Fraction(k))
    return tuple(sorted(out, key=_alcove_sort_key))


def _fundamental(rs):
    r = rs.rank
    return [tuple(int(i == j) for j in range(r)) for i in range(r)]


def s_matrix(rs: RootSystem, k: int, exponent_sign: int = 1, alcove=None) -> np.ndarray:
    """Kac-Peterson S-matrix with ``exp(exponent_sign * 2 pi i (lam+rho, w(mu+rho)) / (k+c_G))``."""
    alcove = alcove_weights(rs, k) if alcove is None else alcove
    h = k + rs.dual_coxeter
    shifted = np.array([add(lam, rs.rho) for lam in alcove], dtype=float)
    G = rs.gram_float
    signs = np.array([w.sign for w in rs.weyl], dtype=float)
    mats = np.array([w.matrix for w in rs.weyl], dtype=float)  # (|W|, r, r)
    # images[w, mu, :] = w(mu + rho)
    images = np.einsum("wij,mj->wmi", mats, shifted)
    pair = np.einsum("li,ij,wmj->wlm", shifted, G, images)
    total = np.einsum("w,wlm->lm", signs, np.exp(exponent_sign * 2j * np.pi * pair / h))
    prefactor = 1j ** len(rs.positive_roots) / (h ** (rs.rank / 2) * np.sqrt(rs.lattice_index))
    return prefactor * total


@dataclass(frozen=True, eq=False)
class ModularData:
    rs: RootSystem
    level: int
    alcove: tuple
    s: np.ndarray
    t: np.ndarray
    c: np.ndarray
    central_charge: Fraction
    exponent_sign: int

    @property
    def shifted_level(self) -> int:
        return self.level + self.rs.dual_coxeter

    @cached_property
    def position(self) -> dict:
        return {lam: i for i, lam in enumerate(self.alcove)}

    def index(self, lam) -> int:
        try:
            return self.position[tuple(lam)]
        except KeyError:
            raise NotInAlcove(
                f"{tuple(lam)} is not in the level-{self.level} alcove of {self.rs}",
                weight=list(lam),
                level=self.level,
            ) from None

    @cached_property
    def star(self) -> tuple:
        """``star[i]`` is the alcove position of the conjugate of ``alcove[i]``."""
        return tuple(self.position[conjugates(self.rs, lam)[1]] for lam in self.alcove)

    @cached_property
    def v(self) -> np.ndarray:
        return np.diag(self.t).copy()

    @cached_property
    def qdims(self) -> np.ndarray:
        return (self.s[:, 0] / self.s[0, 0]).real

    @cached_property
    def fusion_tensor(self) -> np.ndarray:
        """``N[a, b, c] = sum_s S_as S_bs S_cs / S_0s`` (floating point, complex)."""
        S = self.s
        return np.einsum("as,bs,cs,s->abc", S, S, S, 1.0 / S[0, :])

    @cached_property
    def fusion_integers(self) -> np.ndarray:
        N = self.fusion_tensor
        rounded = np.rint(N.real)
        dev = np.max(np.abs(N - rounded))
        if dev > FUSION_GUARD:
            raise NonIntegerFusion(
                f"Verlinde values deviate from integers by {dev:.3g}", deviation=float(dev)
            )
        return rounded.astype(np.int64)

    def N_upper(self, lam, mu, nu) -> int:
        """``N^lam_{mu nu} = N_{lam* mu nu}`` as an integer."""
        a = self.star[self.index(lam)]
        return int(self.fusion_integers[a, self.index(mu), self.index(nu)])


def _modular_deviation(S, T, C):
    S2 = np.max(np.abs(S @ S - C))
    ST = S @ T
    ST3 = np.max(np.abs(ST @ ST @ ST - C))
    return S2, ST3


@lru_cache(maxsize=None)
def _build(rs: RootSystem, k: int) -> ModularData:
    alcove = alcove_weights(rs, k)
    h = k + rs.dual_coxeter
    c = Fraction(rs.dim * k, h)
    tdiag = np.array(
        [
            np.exp(1j * np.pi * float(casimir(rs, lam)) / h) * np.exp(-1j * np.pi * float(c) / 12)
            for lam in alcove
        ]
    )
    T = np.diag(tdiag)
    pos = {lam: i for i, lam in enumerate(alcove)}
    C = np.zeros((len(alcove), len(alcove)))
    for i, lam in enumerate(alcove):
        C[i, pos[conjugates(rs, lam)[1]]] = 1.0

    report = {}
    for sign in (1, -1):
        S = s_matrix(rs, k, sign, alcove)
        d_s2, d_st3 = _modular_deviation(S, T, C)
        report[sign] = (float(d_s2), float(d_st3))
        if d_s2 < MODULAR_TOL and d_st3 < MODULAR_TOL:
            return ModularData(rs, k, alcove, S, T, C, c, sign)
    raise ModularIdentityFailure(
        f"no exponent sign satisfies S^2 = C and (ST)^3 = C for {rs} at level {k}",
        deviations={str(s): v for s, v in report.items()},
    )


def build_modular_data(rs, k: int) -> ModularData:
    if not isinstance(rs, RootSystem):
        rs = build_root_system(rs)
    _check_level(k)
    return _build(rs, int(k))


def qdim(md: ModularData, lam) -> float:
    return float(md.qdims[md.index(lam)])


def sin_product(rs: RootSystem, h: int, lam) -> float:
    """``prod_beta sin(pi (lam+rho, beta)/h) / sin(pi (rho, beta)/h)``."""
    lam_rho = add(lam, rs.rho)
    out = 1.0
    for beta in rs.positive_roots:
        out *= np.sin(np.pi * float(bilinear(rs, lam_rho, beta)) / h) / np.sin(
            np.pi * float(bilinear(rs, rs.rho, beta)) / h
        )
    return float(out)


def signed_qdim(md: ModularData, mu) -> float:
    """Quantum dimension extended to weights whose rho-shift is off every affine wall."""
    rs = md.rs
    h = md.shifted_level
    mu_rho = add(mu, rs.rho)
    for beta in rs.positive_roots:
        if (bilinear(rs, mu_rho, beta) / h).denominator == 1:
            raise OnWall(f"{tuple(mu)} + rho lies on an affine wall", weight=list(mu))
    return sin_product(rs, h, mu)


def verlinde_fusion3(md: ModularData, lam, mu, nu):
    """``N_{lam mu nu}``; returns ``(value, nearest_integer)``."""
    a, b, c = md.index(lam), md.index(mu), md.index(nu)
    value = md.fusion_tensor[a, b, c]
    n = int(round(value.real))
    dev = abs(value - n)
    if dev > FUSION_GUARD:
        raise NonIntegerFusion(
            f"N{(tuple(lam), tuple(mu), tuple(nu))} = {value} is not an integer",
            deviation=float(dev),
        )
    return complex(value), n


def fusion_matrix_identity_check(md: ModularData, tol: float = 1e-9) -> dict:
    """``sum_lam dim(lam) T_lam N^nu_{mu lam} == (TST)_{mu nu} / (T_00 S_00)``."""
    N = md.fusion_tensor
    n = len(md.alcove)
    # Nup[nu, mu, lam] = N^nu_{mu lam}
    Nup = N[list(md.star), :, :]
    lhs = np.einsum("l,l,nml->mn", md.qdims, md.v, Nup)
    T = md.t
    rhs = (T @ md.s @ T) / (md.v[0] * md.s[0, 0])
    dev = float(np.max(np.abs(lhs - rhs))) if n else 0.0
    return {"max_deviation": dev, "tolerance": tol, "pass": dev < tol}


def modular_identity_report(md: ModularData) -> dict:
    d_s2, d_st3 = _modular_deviation(md.s, md.t, md.c)
    sym = float(np.max(np.abs(md.s - md.s.T)))
    return {
        "s2_minus_c": float(d_s2),
        "st3_minus_c": float(d_st3),
        "s_asymmetry": sym,
        "exponent_sign": md.exponent_sign,
        "pass": d_s2 < MODULAR_TOL and d_st3 < MODULAR_TOL and sym < 1e-12,
    }
