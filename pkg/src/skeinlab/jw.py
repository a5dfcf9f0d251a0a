"""
Jones-Wenzl projectors e_i in the Temperley-Lieb algebra End(i).

Built by the recursion
    e_i = e_(i-1) (x) id + [i-1]/[i] * (e_(i-1) (x) id) u_(i-1) (e_(i-1) (x) id).
The middle composite is computed with the turnback-killing property of e_(i-1): any term that
would feed a cup into e_(i-1) vanishes, so it is skipped rather than expanded.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .poly import LaurentPoly, RationalFn
from .qnum import Specialization, all_qbinoms_nonzero, qint
from .tl import TLDiagram, TLError, TLMorphism


@dataclass(frozen=True)
class JWProjector:
    index: int
    body: TLMorphism

    def coefficient(self, d: TLDiagram) -> RationalFn:
        return self.body.coefficient(d)

    def __len__(self):
        return len(self.body)


_cache: dict = {}
_lock = threading.Lock()


def jw_build(i: int) -> JWProjector:
    if i < 0:
        raise ValueError("JW index must be nonnegative")
    with _lock:
        hit = _cache.get(i)
    if hit is not None:
        return hit
    if i <= 1:
        body = TLMorphism.identity(i)
    else:
        prev = jw_build(i - 1).body
        a = prev.tensor(TLMorphism.identity(1))
        z = TLMorphism.u(i - 1, i).compose(a)
        # e_(i-1) kills cups at positions 1..i-2 on its bottom
        middle = a.compose(z, killed_top=range(1, i - 1))
        body = a + middle.scale(RationalFn(qint(i - 1), qint(i)))
    proj = JWProjector(i, body)
    with _lock:
        _cache.setdefault(i, proj)
        return _cache[i]


def _cap_at(j: int, n: int) -> TLMorphism:
    """(id_(j-1) (x) cap (x) id_(n-j-1)) : n -> n-2."""
    d = TLDiagram.identity(j - 1).tensor(TLDiagram.cap()).tensor(TLDiagram.identity(n - j - 1))
    return TLMorphism.from_diagram(d)


def _cup_at(j: int, n: int) -> TLMorphism:
    d = TLDiagram.identity(j - 1).tensor(TLDiagram.cup()).tensor(TLDiagram.identity(n - j - 1))
    return TLMorphism.from_diagram(d)


def identity_coefficient(e: JWProjector) -> RationalFn:
    return e.body.coefficient(TLDiagram.identity(e.index))


def kills_turnbacks(e: JWProjector) -> bool:
    """Caps on top and cups below give zero, at every adjacent position."""
    n = e.index
    for j in range(1, n):
        if not _cap_at(j, n).compose(e.body).is_zero():
            return False
        if not e.body.compose(_cup_at(j, n)).is_zero():
            return False
    return True


def is_idempotent(e: JWProjector, direct: bool = True) -> bool:
    """e o e == e.

    direct=True expands the full product. direct=False uses that every non-identity diagram
    factors through a turnback: with turnbacks killed, e o e = (identity coefficient) * e.
    """
    if direct:
        return e.body.compose(e.body) == e.body
    return kills_turnbacks(e) and identity_coefficient(e) == RationalFn(1)


def jw_partial_trace(e: JWProjector) -> TLMorphism:
    """Close the rightmost strand; equals -[i+1]/[i] * e_(i-1)."""
    if e.index == 0:
        raise TLError("partial trace of e_0 is undefined")
    return e.body.partial_trace()


def expected_partial_trace(i: int) -> TLMorphism:
    return jw_build(i - 1).body.scale(RationalFn(-qint(i + 1), qint(i)))


def jw_trace(i: int) -> LaurentPoly:
    """Markov trace of e_i; (-1)^i [i+1]."""
    return jw_build(i).body.trace().to_poly()


def jw_exists_at(i: int, spec: Specialization) -> bool:
    return all_qbinoms_nonzero(i, spec)


def jw_absorb_check(i: int, j: int, direct: bool | None = None) -> bool:
    """(e_j (x) id) o e_i == e_i == e_i o (e_j (x) id)."""
    if not 0 <= j <= i:
        raise ValueError("need 0 <= j <= i")
    ei = jw_build(i).body
    ej = jw_build(j).body.tensor(TLMorphism.identity(i - j))
    if direct is None:
        direct = len(ei) * len(ej) <= 50_000
    if direct:
        return ej.compose(ei) == ei and ei.compose(ej) == ei
    # e_i kills turnbacks on both sides, so only the identity term of e_j survives
    killed = range(1, i)
    left = ej.compose(ei, killed_bottom=killed)
    right = ei.compose(ej, killed_top=killed)
    return kills_turnbacks(jw_build(i)) and left == ei and right == ei


def jw_terms(i: int) -> list:
    """(diagram, coefficient) pairs in a fixed order."""
    return sorted(jw_build(i).body.terms.items())
