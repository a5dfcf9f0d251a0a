"""
Fusion rings: structure constants, action matrices, Perron-Frobenius data and growth of tensor powers.

N[i][j][k] is the multiplicity of c_k in c_i c_j. Left multiplication by x = sum x_j c_j acts on
the basis by the matrix A[k][i] = sum_j x_j N[j][i][k], so column i holds the expansion of x c_i.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np


class FusionError(ValueError):
    pass


class ConvergenceError(FusionError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (last residual {residual:.3g})")
        self.residual = residual


class UnsupportedError(FusionError):
    pass


@dataclass(frozen=True)
class FusionRing:
    labels: tuple
    unit: int
    N: tuple
    dual: tuple | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "N", tuple(tuple(tuple(int(v) for v in row) for row in mat) for mat in self.N))
        if self.dual is not None:
            object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))
        validate(self)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, int) and not isinstance(label, bool) and label not in self.labels:
            if 0 <= label < self.rank:
                return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise FusionError(f"unknown label {label!r}; labels are {list(self.labels)}") from None

    def basis_vector(self, label) -> list:
        v = [0] * self.rank
        v[self.index(label)] = 1
        return v

    def multiply(self, i: int, j: int) -> list:
        return list(self.N[i][j])


def validate(r: FusionRing) -> None:
    """Unit law, associativity and (if present) duality; raises FusionError."""
    n = len(r.labels)
    N = r.N
    if not 0 <= r.unit < n:
        raise FusionError("unit index out of range")
    if len(N) != n or any(len(row) != n or any(len(v) != n for v in row) for row in N):
        raise FusionError(f"N must have shape {n}x{n}x{n}")
    if any(v < 0 for row in N for vec in row for v in vec):
        raise FusionError("structure constants must be nonnegative")
    u = r.unit
    for j in range(n):
        for k in range(n):
            want = 1 if j == k else 0
            if N[u][j][k] != want or N[j][u][k] != want:
                raise FusionError(f"unit law fails at ({j},{k})")
    e = np.array(N, dtype=object)  # object dtype keeps integer products exact
    lhs = np.tensordot(e, e, axes=([2], [0]))  # (c_i c_j) c_k -> [i, j, k, l]
    rhs = np.tensordot(e, e, axes=([1], [2])).transpose(0, 2, 3, 1)  # c_i (c_j c_k)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k, l = (int(t) for t in bad[0])
        raise FusionError(f"associativity fails at ({i},{j},{k},{l})")
    if r.dual is not None:
        d = r.dual
        if sorted(d) != list(range(n)) or any(d[d[i]] != i for i in range(n)):
            raise FusionError("dual must be an involutive permutation")
        for i in range(n):
            for j in range(n):
                if N[i][j][u] != (1 if j == d[i] else 0):
                    raise FusionError(f"duality fails at ({i},{j})")


def _as_vector(r: FusionRing, x) -> list:
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return r.basis_vector(x)
    x = list(x)
    if len(x) != r.rank:
        raise FusionError(f"object vector has length {len(x)}, ring rank is {r.rank}")
    if any(v < 0 for v in x):
        raise FusionError("object vector must be nonnegative")
    return x


def action_matrix(r: FusionRing, x) -> list:
    """Integer matrix of left multiplication by x."""
    x = _as_vector(r, x)
    n = r.rank
    return [[sum(x[j] * r.N[j][i][k] for j in range(n)) for i in range(n)] for k in range(n)]


# -- Perron-Frobenius

@dataclass(frozen=True)
class PFData:
    eigenvalue: float
    right_eigenvector: tuple
    left_eigenvector: tuple
    residual: float


def _power(m: np.ndarray, tol: float, max_iter: int) -> tuple:
    n = m.shape[0]
    shifted = m + np.eye(n)
    v = np.full(n, 1.0 / n)
    residual = math.inf
    for _ in range(max_iter):
        w = shifted @ v
        w /= w.sum()
        residual = float(np.max(np.abs(w - v)))
        v = w
        if residual < tol:
            break
    else:
        raise ConvergenceError("power iteration did not converge", residual)
    lam = float((m @ v).sum() / v.sum())
    return lam, v


def pf_data(m, tol: float = 1e-12, max_iter: int = 100_000) -> PFData:
    """Dominant eigenvalue and nonnegative eigenvectors by power iteration on M + I.

    The shift makes the iteration aperiodic; vectors are normalized to unit sum.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise FusionError("pf_data needs a square matrix")
    if (a < 0).any():
        raise FusionError("pf_data needs a nonnegative matrix")
    if not a.any():
        raise FusionError("pf_data needs a nonzero matrix")
    lam, v = _power(a, tol, max_iter)
    _, w = _power(a.T, tol, max_iter)
    res = float(np.max(np.abs(a @ v - lam * v)))
    return PFData(lam, tuple(float(t) for t in v), tuple(float(t) for t in w), res)


def pfdim(r: FusionRing, x, tol: float = 1e-12) -> float:
    return pf_data(action_matrix(r, x), tol).eigenvalue


def pfdim_ring(r: FusionRing, tol: float = 1e-12) -> float:
    return sum(pfdim(r, i, tol) ** 2 for i in range(r.rank))


def _strongly_connected(m) -> bool:
    n = len(m)

    def reach(adj):
        seen, stack = {0}, [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if adj(i, j) and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == n

    return reach(lambda i, j: m[j][i] > 0) and reach(lambda i, j: m[i][j] > 0)


def regular_object(r: FusionRing, tol: float = 1e-9) -> tuple:
    """Positive R with X R = PFdim(X) R for every basis X, scaled so the unit coordinate is 1."""
    total = action_matrix(r, [1] * r.rank)
    if not _strongly_connected(total):
        raise FusionError("ring is not transitive")
    v = np.array(pf_data(total).right_eigenvector)
    v = v / v[r.unit]
    for i in range(r.rank):
        a = np.array(action_matrix(r, i), dtype=float)
        d = pfdim(r, i)
        if np.max(np.abs(a @ v - d * v)) > tol * max(1.0, float(np.max(v))):
            raise FusionError(f"regular object check fails for {r.labels[i]}")
    return tuple(float(t) for t in v)


# -- growth

def growth_bn(r: FusionRing, x, n_max: int) -> list:
    """b_n = number of basis summands (with multiplicity) of x^n, for n = 0..n_max."""
    a = action_matrix(r, x)
    n = r.rank
    v = [0] * n
    v[r.unit] = 1
    out = [1]
    for _ in range(n_max):
        v = [sum(a[k][i] * v[i] for i in range(n)) for k in range(n)]
        out.append(sum(v))
    return out


@dataclass(frozen=True)
class Asymptotic:
    eigenvalue: float
    period: int
    constants: tuple  # coefficient of (zeta^j)^n, j = 0..h-1

    def __call__(self, n: int) -> float:
        h = self.period
        zeta = cmath.exp(2j * math.pi / h)
        s = sum(c * zeta ** (j * n) for j, c in enumerate(self.constants))
        return float((s * self.eigenvalue ** n).real)


def growth_asymptotic(r: FusionRing, x, tol: float = 1e-8) -> Asymptotic:
    """a(n) = (sum_j S_j zeta^(jn)) lambda^n over the dominant eigenvalues zeta^j lambda.

    S_j is the column sum, at the unit column, of v_j w_j^T with w_j^T v_j = 1.
    """
    a = np.array(action_matrix(r, x), dtype=float)
    lam = pf_data(a).eigenvalue
    vals, right = np.linalg.eig(a)
    dominant = [t for t in range(len(vals)) if abs(abs(vals[t]) - lam) < tol]
    h = len(dominant)
    zeta = cmath.exp(2j * math.pi / h)
    targets = [zeta ** j * lam for j in range(h)]
    order = []
    for target in targets:
        hits = [t for t in dominant if abs(vals[t] - target) < tol]
        if len(hits) != 1:
            raise UnsupportedError("dominant eigenvalues do not form a simple root-of-unity orbit")
        order.append(hits[0])
    lvals, left = np.linalg.eig(a.T)
    constants = []
    for t in order:
        v = right[:, t]
        s = int(np.argmin(np.abs(lvals - vals[t])))
        if abs(lvals[s] - vals[t]) > tol:
            raise UnsupportedError("left eigenvector not found")
        w = left[:, s]
        norm = w @ v
        if abs(norm) < 1e-12:
            raise UnsupportedError("degenerate dominant eigenspace")
        proj = np.outer(v, w) / norm
        constants.append(complex(proj[:, r.unit].sum()))
    return Asymptotic(lam, h, tuple(constants))


@dataclass(frozen=True)
class FilteredPF:
    values: tuple
    limit: float


def pfdim_filtered(builder, levels, x, tol: float = 1e-9) -> FilteredPF:
    """PFdim of x in each ring of a nested family; must be nondecreasing."""
    vals = []
    for k in levels:
        ring = builder(k)
        vals.append(pfdim(ring, x))
    for a, b in zip(vals, vals[1:]):
        if b < a - tol:
            raise FusionError(f"filtered PF dimensions decrease: {a} -> {b}")
    return FilteredPF(tuple(vals), vals[-1] if vals else math.nan)


# -- built-in rings

def _ring(labels, unit, table, dual=None, name="") -> FusionRing:
    """table(i, j) returns a dict of label index -> multiplicity."""
    n = len(labels)
    N = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, m in table(i, j).items():
                N[i][j][k] += m
    return FusionRing(tuple(labels), unit, N, dual, name)


def verlinde_sl2(k: int) -> FusionRing:
    """L_0..L_(k-2) with the truncated Clebsch-Gordan rule."""
    if k < 2:
        raise FusionError("level k must be >= 2")
    top = k - 2

    def table(i, j):
        out = {}
        for m in range(abs(i - j), min(i + j, 2 * top - i - j) + 1, 2):
            out[m] = 1
        return out

    labels = [f"L{i}" for i in range(top + 1)]
    return _ring(labels, 0, table, list(range(top + 1)), f"verlinde_sl2({k})")


def verlinde_so3(k: int) -> FusionRing:
    """Even labels of verlinde_sl2(k)."""
    full = verlinde_sl2(k)
    keep = [i for i in range(full.rank) if i % 2 == 0]
    pos = {i: t for t, i in enumerate(keep)}

    def table(a, b):
        row = full.N[keep[a]][keep[b]]
        return {pos[m]: v for m, v in enumerate(row) if v}

    return _ring([full.labels[i] for i in keep], 0, table, list(range(len(keep))), f"verlinde_so3({k})")


def fib() -> FusionRing:
    def table(i, j):
        if i == 0:
            return {j: 1}
        if j == 0:
            return {i: 1}
        return {0: 1, 1: 1}

    return _ring(["1", "L"], 0, table, [0, 1], "fib")


def s3() -> FusionRing:
    """Representation ring of S_3: trivial 1, standard L_s, sign L_1'."""
    one, s, sgn = 0, 1, 2

    def table(i, j):
        if i == one:
            return {j: 1}
        if j == one:
            return {i: 1}
        if i == sgn and j == sgn:
            return {one: 1}
        if {i, j} == {s, sgn}:
            return {s: 1}
        return {one: 1, s: 1, sgn: 1}

    return _ring(["1", "L_s", "L_1'"], one, table, [0, 1, 2], "s3")


def group_ring(n: int) -> FusionRing:
    """Z[Z/n]."""
    if n < 1:
        raise FusionError("group order must be >= 1")
    return _ring([f"g{i}" for i in range(n)], 0, lambda i, j: {(i + j) % n: 1},
                 [(-i) % n for i in range(n)], f"Z/{n}")


def ty(n: int) -> FusionRing:
    """Tambara-Yamagami ring of Z/n: group elements plus X with X^2 = sum of the group."""
    if n < 1:
        raise FusionError("group order must be >= 1")
    x = n

    def table(i, j):
        if i < n and j < n:
            return {(i + j) % n: 1}
        if i == x and j == x:
            return {g: 1 for g in range(n)}
        return {x: 1}

    labels = [str(i) for i in range(n)] + ["X"]
    return _ring(labels, 0, table, [(-i) % n for i in range(n)] + [x], f"ty(Z/{n})")


def dihedral8() -> FusionRing:
    """Representation ring of the dihedral group of order 8: four 1-dim reps forming Z/2 x Z/2, and V."""
    v = 4

    def table(i, j):
        if i < 4 and j < 4:
            return {i ^ j: 1}
        if i == v and j == v:
            return {g: 1 for g in range(4)}
        return {v: 1}

    return _ring(["1", "a", "b", "ab", "V"], 0, table, [0, 1, 2, 3, 4], "dihedral8")


BUILTINS = {
    "fib": fib,
    "s3": s3,
    "dihedral8": dihedral8,
}


def builtin_ring(name: str, *params) -> FusionRing:
    """fib, s3, dihedral8, verlinde_sl2(k), verlinde_so3(k), ty(n), group(n); also 'sl2:4' style."""
    if ":" in name and not params:
        name, arg = name.split(":", 1)
        params = (int(arg),)
    families = {"verlinde_sl2": verlinde_sl2, "sl2": verlinde_sl2, "verlinde_so3": verlinde_so3,
                "so3": verlinde_so3, "ty": ty, "group": group_ring}
    if name in BUILTINS:
        if params:
            raise FusionError(f"ring {name} takes no parameters")
        return BUILTINS[name]()
    if name in families:
        if len(params) != 1:
            raise FusionError(f"ring family {name} needs one integer parameter")
        return families[name](int(params[0]))
    raise FusionError(f"unknown ring {name!r}")


def ring_from_json(obj) -> FusionRing:
    """{"labels": [...], "unit": i, "N": [[[...]]], "dual": [...] (optional)}."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return FusionRing(tuple(obj["labels"]), int(obj["unit"]), obj["N"], obj.get("dual"), obj.get("name", ""))
    except KeyError as exc:
        raise FusionError(f"ring JSON is missing {exc}") from None


def ring_to_json(r: FusionRing) -> dict:
    out = {"labels": list(r.labels), "unit": r.unit, "N": [[list(v) for v in row] for row in r.N]}
    if r.dual is not None:
        out["dual"] = list(r.dual)
    return out
