"""
Temperley-Lieb diagram calculus.

A diagram of type (m -> n) is a crossingless perfect matching of m bottom points and n top points.
Bottom points are labelled 1..m and top points m+1..m+n, both left to right. Reading the boundary
circularly as 1..m, m+n..m+1 turns planarity into the usual "no two chords interleave" condition.
Closed circles evaluate to delta = -(q + q^-1).
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable

from .poly import DELTA, LaurentPoly, RationalFn


class TLError(ValueError):
    pass


def _circular_position(p: int, m: int, n: int) -> int:
    return p if p <= m else m + n - (p - m) + 1


def _is_planar(pairs, m: int, n: int) -> bool:
    pos = {}
    for a, b in pairs:
        pa, pb = _circular_position(a, m, n), _circular_position(b, m, n)
        pos[pa], pos[pb] = pb, pa
    # chords on a circle are non-crossing iff they nest like brackets
    stack = []
    for p in range(1, m + n + 1):
        partner = pos[p]
        if partner > p:
            stack.append(partner)
        elif not stack or stack.pop() != p:
            return False
    return True


class TLDiagram:
    __slots__ = ("bottom", "top", "pairs", "_match", "_hash")

    def __init__(self, bottom: int, top: int, pairs: Iterable, check: bool = True):
        pairs = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in pairs))
        self.bottom = bottom
        self.top = top
        self.pairs = pairs
        if check:
            total = bottom + top
            if total % 2:
                raise TLError("bottom + top must be even")
            seen = sorted(p for pr in pairs for p in pr)
            if seen != list(range(1, total + 1)):
                raise TLError("pairs must match every boundary point exactly once")
            if not _is_planar(pairs, bottom, top):
                raise TLError("matching is not planar")
        match = [0] * (bottom + top + 1)
        for a, b in pairs:
            match[a], match[b] = b, a
        self._match = match
        self._hash = hash((bottom, top, pairs))

    @classmethod
    def identity(cls, n: int) -> "TLDiagram":
        return cls(n, n, [(i, n + i) for i in range(1, n + 1)], check=False)

    @classmethod
    def cap(cls) -> "TLDiagram":
        return cls(2, 0, [(1, 2)], check=False)

    @classmethod
    def cup(cls) -> "TLDiagram":
        return cls(0, 2, [(1, 2)], check=False)

    @classmethod
    def u(cls, i: int, n: int) -> "TLDiagram":
        """Generator u_i in End(n): turnbacks at positions i, i+1 on both sides."""
        if not 1 <= i < n:
            raise TLError(f"u_{i} needs 1 <= i < n = {n}")
        pairs = [(i, i + 1), (n + i, n + i + 1)]
        pairs += [(j, n + j) for j in range(1, n + 1) if j not in (i, i + 1)]
        return cls(n, n, pairs, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, TLDiagram)
            and self.bottom == other.bottom
            and self.top == other.top
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.bottom, self.top, self.pairs) < (other.bottom, other.top, other.pairs)

    def partner(self, p: int) -> int:
        return self._match[p]

    def is_identity(self) -> bool:
        return self.bottom == self.top and all(self._match[i] == self.bottom + i for i in range(1, self.bottom + 1))

    def through_strands(self) -> int:
        return sum(1 for a, b in self.pairs if a <= self.bottom < b)

    def compose(self, f: "TLDiagram") -> tuple["TLDiagram", int]:
        """self o f (f below). Returns the diagram and the number of closed circles."""
        m, k = f.bottom, f.top
        if self.bottom != k:
            raise TLError(f"cannot compose: {f.top} != {self.bottom}")
        n = self.top
        fm, gm = f._match, self._match
        visited = [False] * (k + 1)
        out = []
        done = [False] * (m + n + 1)

        for start in range(1, m + n + 1):
            if done[start]:
                continue
            if start <= m:
                p = fm[start]
                in_f = True
            else:
                p = gm[k + start - m]
                in_f = False
            while True:
                if in_f:
                    if p <= m:
                        end = p
                        break
                    j = p - m
                    visited[j] = True
                    p = gm[j]
                    in_f = False
                else:
                    if p > k:
                        end = m + p - k
                        break
                    visited[p] = True
                    p = fm[m + p]
                    in_f = True
            done[start] = done[end] = True
            out.append((start, end))

        loops = 0
        for j in range(1, k + 1):
            if visited[j]:
                continue
            loops += 1
            cur = j
            while not visited[cur]:
                visited[cur] = True
                # f side then g side
                nxt = fm[m + cur] - m
                visited[nxt] = True
                cur = gm[nxt]
        return TLDiagram(m, n, out, check=False), loops

    def tensor(self, other: "TLDiagram") -> "TLDiagram":
        """Juxtapose self (left) and other (right)."""
        m1, n1, m2, n2 = self.bottom, self.top, other.bottom, other.top
        m, n = m1 + m2, n1 + n2

        def relabel_self(p):
            return p if p <= m1 else m + (p - m1)

        def relabel_other(p):
            return m1 + p if p <= m2 else m + n1 + (p - m2)

        pairs = [(relabel_self(a), relabel_self(b)) for a, b in self.pairs]
        pairs += [(relabel_other(a), relabel_other(b)) for a, b in other.pairs]
        return TLDiagram(m, n, pairs, check=False)

    def closure_loops(self) -> int:
        """Circles formed by joining top i to bottom i for every i (right Markov closure)."""
        if self.bottom != self.top:
            raise TLError("trace needs an endomorphism")
        n = self.bottom
        seen = [False] * (2 * n + 1)
        loops = 0
        for s in range(1, 2 * n + 1):
            if seen[s]:
                continue
            loops += 1
            p = s
            while not seen[p]:
                seen[p] = True
                p2 = self._match[p]
                seen[p2] = True
                p = p2 - n if p2 > n else p2 + n
        return loops

    def partial_trace(self) -> tuple["TLDiagram", int]:
        """Close the rightmost strand; returns ((n-1)->(n-1) diagram, circles closed)."""
        if self.bottom != self.top or self.bottom == 0:
            raise TLError("partial trace needs an endomorphism of a nonempty object")
        n = self.bottom
        match = self._match
        glue = {n: 2 * n, 2 * n: n}

        def relabel(p):
            return p if p < n else p - 1

        out = []
        used = set()
        for s in range(1, 2 * n + 1):
            if s in glue or s in used:
                continue
            p = match[s]
            while p in glue:
                p = match[glue[p]]
            used.update((s, p))
            out.append((relabel(s), relabel(p)))
        loops = 1 if match[n] == 2 * n else 0
        return TLDiagram(n - 1, n - 1, out, check=False), loops

    def __repr__(self):
        return str(self)

    def __str__(self):
        body = ",".join(f"({a},{b})" for a, b in self.pairs)
        return f"TL({self.bottom}->{self.top})[{body}]"

    @classmethod
    def parse(cls, text: str) -> "TLDiagram":
        m = re.fullmatch(r"\s*TL\(\s*(\d+)\s*->\s*(\d+)\s*\)\s*\[(.*)\]\s*", text)
        if not m:
            raise TLError(f"cannot parse diagram {text!r}")
        pairs = [(int(a), int(b)) for a, b in re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", m.group(3))]
        return cls(int(m.group(1)), int(m.group(2)), pairs)


def _noncrossing(points: tuple) -> list:
    if not points:
        return [()]
    first = points[0]
    out = []
    for idx in range(1, len(points), 2):
        inside = points[1:idx]
        outside = points[idx + 1:]
        for a in _noncrossing(inside):
            for b in _noncrossing(outside):
                out.append(((first, points[idx]),) + a + b)
    return out


@lru_cache(maxsize=None)
def tl_basis(m: int, n: int) -> tuple:
    """All planar matchings of type (m -> n), in a fixed order."""
    if (m + n) % 2:
        return ()
    order = list(range(1, m + 1)) + list(range(m + n, m, -1))
    diagrams = [TLDiagram(m, n, pairs, check=False) for pairs in _noncrossing(tuple(order))]
    return tuple(sorted(diagrams))


def _top_turnbacks(d: TLDiagram) -> set:
    m = d.bottom
    return {a - m for a, b in d.pairs if a > m and b == a + 1}


def _bottom_turnbacks(d: TLDiagram) -> set:
    return {a for a, b in d.pairs if b <= d.bottom and b == a + 1}


def _delta_power(k: int) -> LaurentPoly:
    return DELTA ** k


class _Accumulator:
    """Sums RationalFn contributions per diagram, grouping by denominator to delay gcds."""

    def __init__(self):
        self.data: dict = {}

    def add(self, d: TLDiagram, num: LaurentPoly, den: LaurentPoly):
        if num.is_zero():
            return
        slot = self.data.setdefault(d, {})
        prev = slot.get(den)
        slot[den] = num if prev is None else prev + num

    def result(self) -> dict:
        out = {}
        for d, slot in self.data.items():
            total = None
            for den, num in slot.items():
                if num.is_zero():
                    continue
                r = RationalFn(num, den)
                total = r if total is None else total + r
            if total is not None and not total.is_zero():
                out[d] = total
        return out


class TLMorphism:
    """Formal linear combination of diagrams of one type with RationalFn coefficients."""

    __slots__ = ("bottom", "top", "terms")

    def __init__(self, bottom: int, top: int, terms: dict | None = None):
        self.bottom = bottom
        self.top = top
        clean = {}
        for d, c in (terms or {}).items():
            if (d.bottom, d.top) != (bottom, top):
                raise TLError("all terms must share the same type")
            c = RationalFn.coerce(c)
            if not c.is_zero():
                clean[d] = c
        self.terms = clean

    @classmethod
    def from_diagram(cls, d: TLDiagram, coeff=1) -> "TLMorphism":
        return cls(d.bottom, d.top, {d: coeff})

    @classmethod
    def identity(cls, n: int) -> "TLMorphism":
        return cls.from_diagram(TLDiagram.identity(n))

    @classmethod
    def u(cls, i: int, n: int) -> "TLMorphism":
        return cls.from_diagram(TLDiagram.u(i, n))

    @classmethod
    def zero(cls, bottom: int, top: int) -> "TLMorphism":
        return cls(bottom, top, {})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d: TLDiagram) -> RationalFn:
        return self.terms.get(d, RationalFn(0))

    def __len__(self):
        return len(self.terms)

    def _same_type(self, other):
        if (self.bottom, self.top) != (other.bottom, other.top):
            raise TLError("type mismatch")

    def __add__(self, other: "TLMorphism") -> "TLMorphism":
        self._same_type(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return TLMorphism(self.bottom, self.top, terms)

    def __neg__(self):
        return TLMorphism(self.bottom, self.top, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TLMorphism":
        c = RationalFn.coerce(c)
        return TLMorphism(self.bottom, self.top, {d: v * c for d, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, TLMorphism):
            return NotImplemented
        return (self.bottom, self.top) == (other.bottom, other.top) and self.terms == other.terms

    def compose(self, f: "TLMorphism", killed_top=(), killed_bottom=()) -> "TLMorphism":
        """self o f: f first, then self.

        killed_top lists positions j where self is known to annihilate a cup joining its bottom
        points j, j+1; terms of f with such a top turnback are skipped. killed_bottom does the
        same for caps on top of f hitting the top of terms of self.
        """
        if self.bottom != f.top:
            raise TLError(f"boundary mismatch: {f.top} != {self.bottom}")
        acc = _Accumulator()
        f_terms = list(f.terms.items())
        if killed_top:
            killed = set(killed_top)
            f_terms = [(d, c) for d, c in f_terms if not (_top_turnbacks(d) & killed)]
        g_terms = list(self.terms.items())
        if killed_bottom:
            killed = set(killed_bottom)
            g_terms = [(d, c) for d, c in g_terms if not (_bottom_turnbacks(d) & killed)]
        for dg, cg in g_terms:
            for df, cf in f_terms:
                d, loops = dg.compose(df)
                num = cg.num * cf.num
                if loops:
                    num = num * _delta_power(loops)
                den = cg.den if cf.den == 1 else (cf.den if cg.den == 1 else cg.den * cf.den)
                acc.add(d, num, den)
        return TLMorphism(f.bottom, self.top, acc.result())

    def __matmul__(self, f):
        return self.compose(f)

    def tensor(self, other: "TLMorphism") -> "TLMorphism":
        terms = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = d1.tensor(d2)
                c = c1 * c2
                terms[d] = terms[d] + c if d in terms else c
        return TLMorphism(self.bottom + other.bottom, self.top + other.top, terms)

    def trace(self) -> RationalFn:
        if self.bottom != self.top:
            raise TLError("trace needs an endomorphism")
        total = RationalFn(0)
        for d, c in self.terms.items():
            total = total + c * _delta_power(d.closure_loops())
        return total

    def partial_trace(self) -> "TLMorphism":
        acc = _Accumulator()
        for d, c in self.terms.items():
            d2, loops = d.partial_trace()
            num = c.num * _delta_power(loops) if loops else c.num
            acc.add(d2, num, c.den)
        return TLMorphism(self.bottom - 1, self.top - 1, acc.result())

    def mirror(self) -> "TLMorphism":
        return TLMorphism(self.bottom, self.top, {d: c.mirror() for d, c in self.terms.items()})

    def __repr__(self):
        return f"TLMorphism({self.bottom}->{self.top}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        return "\n".join(f"{c} * {d}" for d, c in sorted(self.terms.items()))


def tl_compose(g: TLMorphism, f: TLMorphism) -> TLMorphism:
    return g.compose(f)


def tl_tensor(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    return f.tensor(g)


def tl_trace(f: TLMorphism) -> RationalFn:
    return f.trace()


def generator(i: int, n: int) -> TLMorphism:
    return TLMorphism.u(i, n)
