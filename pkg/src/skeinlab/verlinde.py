"""
Modular data of the sl2 Verlinde categories at level k.

Simples L_0..L_(k-2). S is the colored Hopf link, s_ij = (-1)^(i+j) [(i+1)(j+1)]_q, T carries the
twists a(L_c) = (-1)^c q^(-C) with C = (c^2 + 2c)/2, and C (charge conjugation) is the identity.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .fusion import FusionRing, verlinde_sl2
from .poly import LaurentPoly
from .qnum import qint

DEFAULT_TOL = 1e-8
MAX_LEVEL = 64


class ModularError(ValueError):
    pass


def s_entry_symbolic(i: int, j: int) -> LaurentPoly:
    """(-1)^(i+j) [(i+1)(j+1)]_q."""
    if i < 0 or j < 0:
        raise ModularError("labels must be nonnegative")
    return qint((i + 1) * (j + 1)) * (-1 if (i + j) % 2 else 1)


@dataclass(frozen=True)
class ModularData:
    level: int | None
    q_val: complex | None
    q_half: complex | None
    S_num: np.ndarray
    T_num: np.ndarray
    C_num: np.ndarray
    S_sym: tuple = field(default=(), repr=False)
    q_index: int = 1

    @property
    def rank(self) -> int:
        return self.S_num.shape[0]

    @property
    def dims(self) -> np.ndarray:
        return self.S_num[0].copy()

    @property
    def twists(self) -> np.ndarray:
        return np.diag(self.T_num).copy()

    @property
    def global_dim(self) -> complex:
        return complex(np.sum(self.dims ** 2))

    @property
    def gauss_r(self) -> complex:
        return complex(np.sum(self.twists * self.dims ** 2))

    @property
    def gauss_l(self) -> complex:
        return complex(np.sum(self.dims ** 2 / self.twists))


def modular_data_sl2(k: int, q_index: int = 1, q_half: complex | None = None) -> ModularData:
    """Data at q = exp(pi i m / k), m = q_index coprime to 2k.

    Twists need q^(1/2); by default exp(pi i m / (2k)). The other square root flips the twist of
    every odd label.
    """
    if not 2 <= k <= MAX_LEVEL:
        raise ModularError(f"level must be in 2..{MAX_LEVEL}")
    m = q_index
    if math.gcd(m, 2 * k) != 1:
        raise ModularError(f"q = exp(pi i {m}/{k}) is not a primitive {2 * k}-th root of unity")
    q = cmath.exp(1j * math.pi * m / k)
    if q_half is None:
        q_half = cmath.exp(1j * math.pi * m / (2 * k))
    elif abs(q_half * q_half - q) > 1e-12:
        raise ModularError("q_half^2 != q")
    n = k - 1
    sym = tuple(tuple(s_entry_symbolic(i, j) for j in range(n)) for i in range(n))
    s = np.array([[sym[i][j].eval_complex(q) for j in range(n)] for i in range(n)])
    twists = [(-1) ** c * q_half ** (-(c * c + 2 * c)) for c in range(n)]
    return ModularData(k, q, q_half, s, np.diag(twists), np.eye(n, dtype=complex), sym, m)


def modular_data_from_json(obj) -> ModularData:
    """{"S": [[[re, im], ...]], "T": [...], "C": [...]} with optional "level"."""
    if isinstance(obj, str):
        obj = json.loads(obj)

    def mat(key):
        return np.array([[complex(re, im) for re, im in row] for row in obj[key]])

    try:
        s, t = mat("S"), mat("T")
    except KeyError as exc:
        raise ModularError(f"modular data JSON is missing {exc}") from None
    c = mat("C") if "C" in obj else np.eye(s.shape[0], dtype=complex)
    return ModularData(obj.get("level"), None, None, s, t, c)


def modular_data_to_json(d: ModularData) -> dict:
    def pairs(a):
        return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a, dtype=complex)]

    out = {"level": d.level, "q_index": d.q_index, "S": pairs(d.S_num), "T": pairs(d.T_num), "C": pairs(d.C_num)}
    if d.S_sym:
        out["S_symbolic"] = [[p.to_json() for p in row] for row in d.S_sym]
    return out


def s_prime(k: int, q_index: int = 1) -> np.ndarray:
    """(-1)^(i+j) sin(pi m (i+1)(j+1) / k): S with the factor 1/sin(pi m / k) removed."""
    n = k - 1
    return np.array([[(-1) ** (i + j) * math.sin(math.pi * q_index * (i + 1) * (j + 1) / k)
                      for j in range(n)] for i in range(n)])


@dataclass
class Check:
    name: str
    passed: bool
    deviation: float


@dataclass
class Report:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list:
        out = []
        for c in self.checks:
            measure = "|det S|" if c.name.startswith("det") else "max deviation"
            out.append(f"{'PASS' if c.passed else 'FAIL'} {c.name} ({measure} {c.deviation:.2e})")
        return out


def _dev(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) if np.size(a) else 0.0


def verify_modular_identities(d: ModularData, tol: float = DEFAULT_TOL) -> Report:
    s, t, c = d.S_num, d.T_num, d.C_num
    n = d.rank
    eye = np.eye(n)
    dim = d.global_dim
    dr, dl = d.gauss_r, d.gauss_l
    s2 = s @ s
    checks = [
        ("S symmetric", _dev(s, s.T)),
        ("C^2 = id", _dev(c @ c, eye)),
        ("T diagonal unitary", max(_dev(t, np.diag(np.diag(t))), _dev(np.abs(np.diag(t)), np.ones(n)))),
        ("S^2 = dim C", _dev(s2, dim * c)),
        ("S^4 = dim^2 id", _dev(s2 @ s2, dim * dim * eye)),
        ("(ST)^3 = Delta_r S^2", _dev(np.linalg.matrix_power(s @ t, 3), dr * s2)),
        ("dim = Delta_r Delta_l", abs(dim - dr * dl)),
    ]
    out = [Check(name, bool(dev < tol * max(1.0, abs(dim))), float(dev)) for name, dev in checks]
    det = float(abs(np.linalg.det(s)))
    out.append(Check("det S != 0", bool(det > tol), det))
    if d.level is not None:
        sp = s_prime(d.level, d.q_index)
        dev = _dev(sp @ sp, (d.level / 2) * eye)
        out.append(Check("(S')^2 = (k/2) id", bool(dev < tol), dev))
    return Report(out)


def verlinde_formula_check(d: ModularData, ring: FusionRing | None = None, tol: float = DEFAULT_TOL) -> Report:
    """dim(C) N_jk^l = sum_i s_ij s_ik s_il* / dim(L_i), rounded values must be the ring's constants."""
    if ring is None:
        ring = verlinde_sl2(d.level)
    n = d.rank
    if ring.rank != n:
        raise ModularError("ring rank does not match the modular data")
    s, dims, dim = d.S_num, d.dims, d.global_dim
    dual = ring.dual or tuple(range(n))
    out = []
    for j in range(n):
        for k in range(n):
            for l in range(n):
                val = sum(s[i, j] * s[i, k] * s[i, dual[l]] / dims[i] for i in range(n))
                want = dim * ring.N[j][k][l]
                dev = float(abs(val - want))
                exact = round((val / dim).real) == ring.N[j][k][l]
                ok = bool(dev < tol * max(1.0, abs(dim)) and exact)
                out.append(Check(f"N[{j},{k}]^{l} = {ring.N[j][k][l]}", ok, dev))
    return Report(out)


def fib_block(k: int = 5, q_index: int = 1) -> np.ndarray:
    """S restricted to even labels."""
    d = modular_data_sl2(k, q_index)
    idx = [i for i in range(d.rank) if i % 2 == 0]
    return d.S_num[np.ix_(idx, idx)]
