"""
Link diagrams and their invariants.

PD codes list crossings as X[i,j,k,l]: edge labels read counterclockwise starting from the
incoming under-edge, so the under-strand runs i -> k. A crossing is positive when the over-strand
runs l -> j.

Bracket convention (fixed by calibration, checked at import):
    crossing = q^(1/2) * A + q^(-1/2) * B, circle = -(q + q^-1),
where the A-smoothing joins (i,j),(k,l) and the B-smoothing joins (i,l),(j,k). A positive kink
is then -q^(3/2), and the Hopf link from sigma_1^2 gives q^3 + q + q^-1 + q^-3.
"""

from __future__ import annotations

import itertools
import os
import re
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .jw import jw_build, jw_exists_at, jw_trace
from .poly import (
    DELTA,
    ONE,
    ZERO,
    LaurentPoly,
    TwoVarLaurentPoly,
    poly_gcd,
)
from .qnum import Specialization


class KnotError(ValueError):
    pass


class PDError(KnotError):
    pass


STATESUM_MAX = 16
DEFAULT_MAX_CROSSINGS = 10

A_WEIGHT = LaurentPoly.monomial(1)
B_WEIGHT = LaurentPoly.monomial(-1)
POSITIVE_KINK = -LaurentPoly.monomial(3)


# -- diagram types

@dataclass(frozen=True)
class PDCode:
    """Crossings X[i,j,k,l] plus crossing-free unknotted components."""

    crossings: tuple
    free_loops: int = 0

    def __post_init__(self):
        xs = tuple(tuple(int(v) for v in x) for x in self.crossings)
        object.__setattr__(self, "crossings", xs)
        if self.free_loops < 0:
            raise PDError("free_loops must be nonnegative")
        for x in xs:
            if len(x) != 4:
                raise PDError(f"crossing {x} does not have 4 entries")
        counts = defaultdict(int)
        for x in xs:
            for v in x:
                counts[v] += 1
        bad = sorted(v for v, c in counts.items() if c != 2)
        if bad:
            raise PDError(f"edge labels {bad} do not appear exactly twice")
        if sorted(counts) != list(range(1, 2 * len(xs) + 1)):
            raise PDError(f"edge labels must be 1..{2 * len(xs)}")

    def __len__(self):
        return len(self.crossings)

    def __str__(self):
        body = ",".join("X[" + ",".join(map(str, x)) + "]" for x in self.crossings)
        out = f"PD[{body}]"
        return out + (f" + {self.free_loops} loop(s)" if self.free_loops else "")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if self.strands < 1:
            raise KnotError("a braid needs at least one strand")
        for g in self.letters:
            if g == 0 or abs(g) >= self.strands:
                raise KnotError(f"letter {g} is invalid on {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        try:
            letters = [int(t) for t in re.split(r"[\s,]+", text.strip()) if t]
        except ValueError as exc:
            raise KnotError(f"cannot parse braid word {text!r}") from exc
        if strands is None:
            strands = max((abs(g) for g in letters), default=0) + 1
        return cls(strands, tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return f"{self.strands}:" + " ".join(map(str, self.letters))


@dataclass(frozen=True)
class OrientedDiagram:
    pd: PDCode
    component_of_edge: dict
    crossing_signs: tuple
    self_writhes: tuple
    components: tuple = field(default=())  # edge labels per component, in traversal order

    @property
    def n_components(self) -> int:
        return len(self.components) + self.pd.free_loops

    @property
    def writhe(self) -> int:
        return sum(self.crossing_signs)


# -- parsing

_QUAD = re.compile(r"X\s*\[([^\]]*)\]")


def parse_pd(text: str) -> PDCode:
    """Read `PD[X[a,b,c,d],...]` or one quadruple per line."""
    if text is None or not text.strip():
        raise PDError("empty PD input")
    s = text.strip()
    quads = []
    if "X" in s:
        stripped = _QUAD.sub("", s)
        if not re.fullmatch(r"\s*(PD\s*\[[\s,]*\])?[\s,]*", stripped):
            raise PDError(f"malformed PD text: {text!r}")
        bodies = _QUAD.findall(s)
    else:
        bodies = [line for line in s.splitlines() if line.strip()]
    for body in bodies:
        parts = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        if len(parts) != 4:
            raise PDError(f"crossing {body!r} does not have 4 entries")
        try:
            vals = [int(t) for t in parts]
        except ValueError as exc:
            raise PDError(f"non-integer label in {body!r}") from exc
        if min(vals) < 1:
            raise PDError("edge labels must be positive")
        quads.append(tuple(vals))
    if not quads:
        raise PDError("empty PD input")
    return PDCode(tuple(quads))


# -- orientation

def _occurrences(crossings) -> dict:
    occ = defaultdict(list)
    for c, x in enumerate(crossings):
        for s, v in enumerate(x):
            occ[v].append((c, s))
    return occ


def _components(crossings) -> list:
    """Oriented components as lists of (label, tail slot, head slot).

    The under-strand fixes orientation (in at slot 0, out at slot 2). A component that never
    passes under is oriented to enter the first occurrence of its smallest label.
    """
    occ = _occurrences(crossings)
    seen = set()
    comps = []
    for start in sorted(occ):
        if start in seen:
            continue
        head0 = min(occ[start])
        steps = []
        label, head = start, head0
        while True:
            tail = occ[label][1] if occ[label][0] == head else occ[label][0]
            steps.append((label, tail, head))
            seen.add(label)
            c, s = head
            out = (c, (s + 2) % 4)
            label = crossings[c][out[1]]
            a, b = occ[label]
            head = b if a == out else a
            if (label, head) == (start, head0):
                break
        fwd = any(h[1] == 0 or t[1] == 2 for _, t, h in steps)
        bwd = any(h[1] == 2 or t[1] == 0 for _, t, h in steps)
        if fwd and bwd:
            raise PDError("inconsistent orientation along a component")
        if bwd:
            steps = [(lab, h, t) for lab, t, h in reversed(steps)]
        comps.append(steps)
    return comps


def orient(pd: PDCode) -> OrientedDiagram:
    comps = _components(pd.crossings)
    comp_of = {}
    entered = set()
    for ci, steps in enumerate(comps):
        for lab, _, head in steps:
            comp_of[lab] = ci
            entered.add(head)
    signs, self_w = [], [0] * len(comps)
    for c, x in enumerate(pd.crossings):
        sign = 1 if (c, 3) in entered else -1
        signs.append(sign)
        if comp_of[x[0]] == comp_of[x[1]]:
            self_w[comp_of[x[0]]] += sign
    return OrientedDiagram(
        pd, comp_of, tuple(signs), tuple(self_w), tuple(tuple(lab for lab, _, _ in st) for st in comps)
    )


def _relabel(crossings, free_loops: int = 0) -> PDCode:
    """Relabel edges 1..2n in strand-following order."""
    comps = _components(crossings)
    new = {}
    for steps in comps:
        k = min(range(len(steps)), key=lambda t: (steps[t][2][1] != 0, steps[t][2]))
        for lab, _, _ in steps[k:] + steps[:k]:
            new[lab] = len(new) + 1
    return PDCode(tuple(tuple(new[v] for v in x) for x in crossings), free_loops)


def mirror(pd: PDCode) -> PDCode:
    """Switch every crossing; edge labels are kept."""
    od = orient(pd)
    out = []
    for (i, j, k, l), sign in zip(pd.crossings, od.crossing_signs):
        out.append((l, i, j, k) if sign > 0 else (j, k, l, i))
    return PDCode(tuple(out), pd.free_loops)


# -- braids

def braid_closure_pd(b: BraidWord) -> PDCode:
    """PD code of the closure of b, labelled in strand-following order."""
    cur = {p: ("b", p) for p in range(1, b.strands + 1)}
    fresh = itertools.count()
    raw = []
    for g in b.letters:
        p = abs(g)
        lo_l, lo_r = cur[p], cur[p + 1]
        up_l, up_r = ("e", next(fresh)), ("e", next(fresh))
        if g > 0:
            raw.append((lo_r, up_r, up_l, lo_l))
        else:
            raw.append((lo_l, lo_r, up_r, up_l))
        cur[p], cur[p + 1] = up_l, up_r
    ident = {cur[p]: ("b", p) for p in cur}
    raw = [tuple(ident.get(v, v) for v in x) for x in raw]
    free = sum(1 for p in cur if cur[p] == ("b", p))
    names = {}
    for x in raw:
        for v in x:
            names.setdefault(v, len(names) + 1)
    ints = tuple(tuple(names[v] for v in x) for x in raw)
    if not ints:
        return PDCode((), free)
    return _relabel(ints, free)


def _free_reduce(letters) -> tuple:
    out = []
    for g in letters:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def markov_move(b: BraidWord, move: str, arg: int | None = None) -> BraidWord:
    """conjugate (arg = signed letter), stabilize (arg = +1 or -1), destabilize."""
    if move == "conjugate":
        if arg is None or arg == 0 or abs(arg) >= b.strands:
            raise KnotError(f"cannot conjugate by {arg} on {b.strands} strands")
        return BraidWord(b.strands, _free_reduce((arg,) + b.letters + (-arg,)))
    if move == "stabilize":
        sign = 1 if arg is None or arg > 0 else -1
        return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))
    if move == "destabilize":
        top = b.strands - 1
        if not b.letters or abs(b.letters[-1]) != top or sum(abs(g) == top for g in b.letters) != 1:
            raise KnotError("destabilize needs a single occurrence of the top generator, at the end")
        return BraidWord(b.strands - 1, b.letters[:-1])
    raise KnotError(f"unknown Markov move {move!r}")


def closure_components(b: BraidWord) -> list:
    """Cycles of the braid permutation; each is one component of the closure."""
    perm = list(range(b.strands))
    for g in b.letters:
        p = abs(g) - 1
        perm[p], perm[p + 1] = perm[p + 1], perm[p]
    # perm[pos] = strand now at pos
    target = {perm[pos]: pos for pos in range(b.strands)}
    seen, cycles = set(), []
    for s in range(b.strands):
        if s in seen:
            continue
        cyc = []
        while s not in seen:
            seen.add(s)
            cyc.append(s)
            s = target[s]
        cycles.append(cyc)
    return cycles


# -- contraction engine

def _contract(vertices, free_loops: int = 0) -> LaurentPoly:
    """Sum over all pairings of a closed network.

    Each vertex is (legs, terms) with terms a list of (pairs of leg indices, coefficient).
    Every label occurs on exactly two legs. Vertices are absorbed one at a time, keeping a map
    from boundary matchings to coefficients; closed cycles contribute delta.
    """
    ids: dict = {}
    vertices = [(tuple(ids.setdefault(l, len(ids)) for l in legs), terms) for legs, terms in vertices]
    todo = list(range(len(vertices)))
    open_labels: set = set()
    states = {(): ONE}
    delta_pow = [ONE]
    while todo:
        best = max(todo, key=lambda v: (sum(l in open_labels for l in vertices[v][0]), -v))
        todo.remove(best)
        legs, terms = vertices[best]
        new_states: dict = defaultdict(dict)
        for match, coeff in states.items():
            for pairs, w in terms:
                adj = defaultdict(list)
                edges = list(match) + [(legs[a], legs[b]) for a, b in pairs]
                for e, (x, y) in enumerate(edges):
                    adj[x].append(e)
                    adj[y].append(e)
                used = [False] * len(edges)
                out = []
                for x, inc in adj.items():
                    if len(inc) != 1 or used[inc[0]]:
                        continue
                    cur, e = x, inc[0]
                    while True:
                        used[e] = True
                        a, b = edges[e]
                        cur = b if a == cur else a
                        nxt = [f for f in adj[cur] if not used[f]]
                        if not nxt:
                            break
                        e = nxt[0]
                    out.append((x, cur) if x < cur else (cur, x))
                loops = 0
                for e in range(len(edges)):
                    if used[e]:
                        continue
                    loops += 1
                    stack = [e]
                    while stack:
                        f = stack.pop()
                        if used[f]:
                            continue
                        used[f] = True
                        for y in edges[f]:
                            stack.extend(g for g in adj[y] if not used[g])
                while len(delta_pow) <= loops:
                    delta_pow.append(delta_pow[-1] * DELTA)
                key = tuple(sorted(out))
                bucket = new_states[key]
                term = coeff * w * delta_pow[loops]
                for h, v in term.coeffs.items():
                    bucket[h] = bucket.get(h, 0) + v
        states = {k: LaurentPoly(v) for k, v in new_states.items()}
        states = {k: v for k, v in states.items() if not v.is_zero()}
        for l in legs:
            if l in open_labels:
                open_labels.discard(l)
            else:
                open_labels.add(l)
    total = states.get((), ZERO)
    return total * DELTA ** free_loops


_A_PAIRS = ((0, 1), (2, 3))
_B_PAIRS = ((0, 3), (1, 2))
_CROSSING_TERMS = [(_A_PAIRS, A_WEIGHT), (_B_PAIRS, B_WEIGHT)]


def _bracket_dp(crossings, free_loops: int) -> LaurentPoly:
    return _contract([(tuple(x), _CROSSING_TERMS) for x in crossings], free_loops)


def _bracket_statesum(crossings, free_loops: int) -> LaurentPoly:
    n = len(crossings)
    if n > STATESUM_MAX:
        raise KnotError(f"state-sum baseline is limited to {STATESUM_MAX} crossings")
    labels = sorted({v for x in crossings for v in x})
    index = {v: t for t, v in enumerate(labels)}
    acc = defaultdict(int)
    for state in range(1 << n):
        parent = list(range(len(labels)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(index[a]), find(index[b])
            if ra != rb:
                parent[ra] = rb

        n_a = 0
        for t, (i, j, k, l) in enumerate(crossings):
            if state >> t & 1:
                union(i, l)
                union(j, k)
            else:
                n_a += 1
                union(i, j)
                union(k, l)
        loops = sum(1 for t in range(len(labels)) if find(t) == t)
        acc[(n_a - (n - n_a), loops + free_loops)] += 1
    total = ZERO
    for (half, loops), mult in acc.items():
        total = total + LaurentPoly.monomial(half, mult) * DELTA ** loops
    return total


def kauffman_bracket(pd: PDCode, method: str = "dp") -> LaurentPoly:
    """Unnormalized bracket; the unknot gives -(q + q^-1) and the empty diagram 1."""
    if method == "dp":
        return _bracket_dp(pd.crossings, pd.free_loops)
    if method == "statesum":
        return _bracket_statesum(pd.crossings, pd.free_loops)
    raise KnotError(f"unknown bracket method {method!r}")


# -- colored Jones

def _framing_factor(color: int, self_writhe: int) -> LaurentPoly:
    """((-1)^c q^C)^(-w) with C = (c^2 + 2c)/2."""
    sign = -1 if (color * self_writhe) % 2 else 1
    return LaurentPoly.monomial(-(color * color + 2 * color) * self_writhe, sign)


def _scaled_jw(c: int):
    """JW_c terms scaled to Laurent coefficients, with the scale factor."""
    terms = jw_build(c).body.terms
    den = ONE
    for coeff in terms.values():
        g = poly_gcd(den, coeff.den)
        den = (den * coeff.den).exact_div(g)
    out = []
    for d, coeff in terms.items():
        w = coeff.num * den.exact_div(coeff.den)
        pairs = tuple((a - 1, b - 1) for a, b in d.pairs)
        out.append((pairs, w))
    return out, den


def _cable_network(od: OrientedDiagram, colors) -> tuple:
    pd = od.pd
    color_of = {e: colors[od.component_of_edge[e]] for e in od.component_of_edge}
    head_of, tail_of = {}, {}
    for steps in _components(pd.crossings):
        for lab, tail, head in steps:
            head_of[lab], tail_of[lab] = head, tail
    # one projector per component on its smallest edge
    box_edge = {}
    for ci, labels in enumerate(od.components):
        if colors[ci] >= 2:
            box_edge[min(labels)] = colors[ci]

    def copy(e, t, c, s):
        if e in box_edge and tail_of[e] == (c, s):
            return ("src", e, t)
        return (e, t)

    vertices = []
    for c, x in enumerate(pd.crossings):
        i, j, k, l = x
        cu, co = color_of[i], color_of[j]
        j_in = head_of[j] == (c, 1)
        l_in = head_of[l] == (c, 3)

        def east(y):
            return copy(j, y if j_in else co + 1 - y, c, 1)

        def west(y):
            return copy(l, co + 1 - y if l_in else y, c, 3)

        def vert(xx, y):
            if y == 0:
                return copy(i, xx, c, 0)
            if y == co:
                return copy(k, xx, c, 2)
            return ("V", c, xx, y)

        def horiz(y, xx):
            if xx == 0:
                return west(y)
            if xx == cu:
                return east(y)
            return ("H", c, y, xx)

        if cu == 0:
            for y in range(1, co + 1):
                vertices.append(((west(y), east(y)), [(((0, 1),), ONE)]))
            continue
        if co == 0:
            for xx in range(1, cu + 1):
                vertices.append(((copy(i, xx, c, 0), copy(k, xx, c, 2)), [(((0, 1),), ONE)]))
            continue
        for xx in range(1, cu + 1):
            for y in range(1, co + 1):
                legs = (vert(xx, y - 1), horiz(y, xx), vert(xx, y), horiz(y, xx - 1))
                vertices.append((legs, _CROSSING_TERMS))
    scale = ONE
    for e, col in box_edge.items():
        terms, den = _scaled_jw(col)
        legs = tuple(("src", e, t) for t in range(1, col + 1)) + tuple((e, t) for t in range(1, col + 1))
        vertices.append((legs, terms))
        scale = scale * den
    return vertices, scale


def colored_jones(pd: PDCode, colors) -> LaurentPoly:
    """Cable each component, decorate with JW projectors, evaluate, and correct the framing.

    Components are ordered as in orient(pd), followed by the free loops.
    """
    od = orient(pd)
    colors = [int(c) for c in colors]
    if len(colors) != od.n_components:
        raise KnotError(f"need {od.n_components} colors, got {len(colors)}")
    if any(c < 0 for c in colors):
        raise KnotError("colors must be nonnegative")
    n_cross = len(od.components)
    vertices, scale = _cable_network(od, colors[:n_cross])
    value = _contract(vertices).exact_div(scale)
    for c in colors[n_cross:]:
        value = value * jw_trace(c)
    for c, w in zip(colors, od.self_writhes):
        value = value * _framing_factor(c, w)
    return value


def colored_jones_at(pd: PDCode, colors, spec: Specialization):
    """Numeric colored Jones; refuses colors whose projector does not exist at spec."""
    for c in colors:
        if not jw_exists_at(c, spec):
            raise KnotError(f"JW_{c} does not exist at {spec.label()}")
    return spec.evaluate(colored_jones(pd, colors))


def jones(pd: PDCode, method: str = "dp") -> LaurentPoly:
    """Bracket times the kink correction (-q^(3/2))^(-w) for each component's self-writhe."""
    od = orient(pd)
    value = kauffman_bracket(pd, method)
    for w in od.self_writhes:
        value = value * _framing_factor(1, w)
    return value


# -- built-in diagrams

TREFOIL_PD = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]"
FIGURE_EIGHT_PD = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"


def trefoil() -> PDCode:
    return parse_pd(TREFOIL_PD)


def figure_eight() -> PDCode:
    return parse_pd(FIGURE_EIGHT_PD)


def hopf() -> PDCode:
    return braid_closure_pd(BraidWord(2, (1, 1)))


def unknot() -> PDCode:
    return PDCode((), 1)


def connected_sum(pd1: PDCode, pd2: PDCode, a: int = 1, b: int = 1) -> PDCode:
    """Cut edge a of pd1 and edge b of pd2 and reconnect head to tail."""
    if not pd1.crossings or not pd2.crossings:
        raise KnotError("connected sum needs diagrams with crossings")
    off = 2 * len(pd1)
    xs = [list(x) for x in pd1.crossings] + [[v + off for v in x] for x in pd2.crossings]
    b = b + off
    heads = {}
    for steps in _components(tuple(tuple(x) for x in xs)):
        for lab, _, head in steps:
            heads[lab] = head
    (ca, sa), (cb, sb) = heads[a], heads[b]
    xs[cb][sb] = a
    xs[ca][sa] = b
    free = pd1.free_loops + pd2.free_loops
    return _relabel(tuple(tuple(x) for x in xs), free)


# -- Kauffman two-variable polynomial (Dubrovnik form)

_A = TwoVarLaurentPoly.monomial(1, 0)
_A_INV = TwoVarLaurentPoly.monomial(-1, 0)
_Z = TwoVarLaurentPoly.monomial(0, 1)
CIRCLE = (_A - _A_INV) * TwoVarLaurentPoly.monomial(0, -1) + TwoVarLaurentPoly.const(1)

_kauffman_memo: dict = {}
_kauffman_lock = threading.Lock()


def max_crossings() -> int:
    env = os.environ.get("SKEINLAB_MAX_CROSSINGS")
    if env is None:
        return DEFAULT_MAX_CROSSINGS
    try:
        return int(env)
    except ValueError as exc:
        raise KnotError(f"SKEINLAB_MAX_CROSSINGS={env!r} is not an integer") from exc


def _smooth(crossings: list, t: int, kind: str) -> tuple[list, int]:
    i, j, k, l = crossings[t]
    rest = crossings[:t] + crossings[t + 1:]
    pairs = [(i, j), (k, l)] if kind == "A" else [(i, l), (j, k)]
    loops = 0
    x, y = pairs[0]
    if x == y:
        loops += 1
    else:
        rest = [tuple(x if v == y else v for v in c) for c in rest]
        u, w = pairs[1]
        pairs[1] = (x if u == y else u, x if w == y else w)
    x, y = pairs[1]
    if x == y:
        loops += 1
    else:
        rest = [tuple(x if v == y else v for v in c) for c in rest]
    return rest, loops


def _memo_key(crossings, loops: int):
    names = {}
    out = []
    for c in crossings:
        rot = min(c, c[2:] + c[:2])
        out.append(rot)
    for c in out:
        for v in c:
            names.setdefault(v, len(names))
    return tuple(tuple(names[v] for v in c) for c in out), loops


def _walk_order(crossings):
    """Traverse components from fixed base points, returning (crossing, came-in-under) visits."""
    occ = _occurrences(crossings)
    seen, visits, comps = set(), [], 0
    for start in sorted(occ):
        if start in seen:
            continue
        comps += 1
        label, head = start, min(occ[start])
        head0 = head
        while True:
            seen.add(label)
            c, s = head
            visits.append((c, s % 2 == 0))
            out = (c, (s + 2) % 4)
            label = crossings[c][out[1]]
            a, b = occ[label]
            head = b if a == out else a
            if (label, head) == (start, head0):
                break
    return visits, comps


def _dubrovnik(crossings: list, loops: int) -> TwoVarLaurentPoly:
    """Normalized value (unknot = 1) of a diagram with `loops` extra free circles."""
    # kinks first: i == j or k == l is the positive-braid curl (factor a), otherwise a^-1
    for t, (i, j, k, l) in enumerate(crossings):
        if i == j or k == l or j == k or l == i:
            factor = _A if (i == j or k == l) else _A_INV
            kind = "A" if (i == j or k == l) else "B"
            rest, extra = _smooth(crossings, t, kind)
            # the curl's own loop is absorbed by the twist relation
            return factor * _dubrovnik(rest, loops + extra - 1)
    if not crossings:
        return CIRCLE ** (loops - 1) if loops else TwoVarLaurentPoly.const(1)
    key = _memo_key(crossings, loops)
    with _kauffman_lock:
        hit = _kauffman_memo.get(key)
    if hit is not None:
        return hit
    visits, comps = _walk_order(crossings)
    first = {}
    for c, under in visits:
        first.setdefault(c, under)
    wrong = [c for c, under in first.items() if under]
    if not wrong:
        # descending: an unlink whose components carry their self-writhe as framing
        signs = _descending_writhe(crossings)
        value = _A ** signs * CIRCLE ** (comps + loops - 1)
    else:
        # D(X) = D(X switched) + z (D(A) - D(B)); the switch removes one wrong crossing and the
        # smoothings remove a crossing, so (crossings, wrong crossings) drops lexicographically
        t = wrong[0]
        i, j, k, l = crossings[t]
        switched = crossings[:t] + [(j, k, l, i)] + crossings[t + 1:]
        ra, la = _smooth(crossings, t, "A")
        rb, lb = _smooth(crossings, t, "B")
        value = _dubrovnik(switched, loops) + _Z * (_dubrovnik(ra, loops + la) - _dubrovnik(rb, loops + lb))
    with _kauffman_lock:
        value = _kauffman_memo.setdefault(key, value)
    return value


def _descending_writhe(crossings) -> int:
    """Sum of self-crossing signs, using a traversal orientation of each component."""
    occ = _occurrences(crossings)
    comp_of, entered = {}, set()
    ci = 0
    for start in sorted(occ):
        if start in comp_of:
            continue
        label, head = start, min(occ[start])
        head0 = head
        while True:
            comp_of[label] = ci
            entered.add(head)
            c, s = head
            out = (c, (s + 2) % 4)
            label = crossings[c][out[1]]
            a, b = occ[label]
            head = b if a == out else a
            if (label, head) == (start, head0):
                break
        ci += 1
    total = 0
    for c, x in enumerate(crossings):
        if comp_of[x[0]] != comp_of[x[1]]:
            continue
        under_fwd = (c, 0) in entered
        over_l_to_j = (c, 3) in entered
        total += 1 if under_fwd == over_l_to_j else -1
    return total


def kauffman_polynomial(pd: PDCode, normalized: bool = True) -> TwoVarLaurentPoly:
    """Regular-isotopy Kauffman polynomial in Dubrovnik form.

    Skein D(X) - D(X') = z (D(A) - D(B)), curls a^(+-1), circle (a - a^-1) z^-1 + 1.
    normalized=True gives the unknot value 1; otherwise the unknot is the circle value.
    """
    cap = max_crossings()
    if len(pd) > cap:
        raise KnotError(f"{len(pd)} crossings exceeds the cap of {cap} (set SKEINLAB_MAX_CROSSINGS)")
    if not pd.crossings and not pd.free_loops:
        return TwoVarLaurentPoly.const(1)
    value = _dubrovnik(list(pd.crossings), pd.free_loops)
    return value if normalized else value * CIRCLE


# -- Alexander polynomial from a Seifert matrix

def alexander_from_seifert(s) -> LaurentPoly:
    """det(S - q S^T) by fraction-free (Bareiss) elimination."""
    n = len(s)
    if any(len(row) != n for row in s):
        raise KnotError("Seifert matrix must be square")
    q = LaurentPoly.monomial(2)
    m = [[LaurentPoly.const(int(s[r][c])) - q * int(s[c][r]) for c in range(n)] for r in range(n)]
    sign, prev = 1, ONE
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if not m[r][k].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]).exact_div(prev)
        prev = m[k][k]
    if n == 0:
        return ONE
    return m[n - 1][n - 1] * sign


# -- R-matrix route

# Matrix entries live in Z[s, s^-1], s = q_R^(1/2) for the R-matrix parameter q_R, stored as
# LaurentPoly half-exponents. Basis order v1v1, v1v2, v2v1, v2v2.
_S = LaurentPoly.monomial(1)


def r_matrix() -> list:
    s, q = _S, _S * _S
    z = ZERO
    return [
        [s, z, z, z],
        [z, z, q, z],
        [z, q, s - s ** 3, z],
        [z, z, z, s],
    ]


def r_matrix_inverse() -> list:
    s = _S
    z = ZERO
    return [
        [s ** -1, z, z, z],
        [z, s ** -1 - s ** -3, s ** -2, z],
        [z, s ** -2, z, z],
        [z, z, z, s ** -1],
    ]


@dataclass(frozen=True)
class RMatrixCalibration:
    enhancement: tuple  # diagonal of the cup/cap enhancement, in Z[s^+-1]
    substitution: int  # s -> q^substitution
    unit_per_component: int  # sign per closure component


def calibrate_rmatrix() -> RMatrixCalibration:
    """Solve for the enhancement and variable match against the skein route.

    Closing one strand of R must give a scalar: this forces h2 = s^2 h1, and a scalar of 1
    (the kink and the unknot agree, as on the skein side) forces h1 = s^-1. The eigenvalues
    of R are s and -s^3, those of the skein crossing q^(1/2) and -q^(-3/2); equal ratios need
    s^2 = q^-2. The sign comes from the unknot: s + s^-1 against -(q + q^-1).
    """
    r = r_matrix()
    h1 = _S ** -1
    h2 = h1 * _S * _S
    partial = [sum((hb * r[2 * a + b][2 * c + b] for b, hb in enumerate((h1, h2))), ZERO) for a in range(2) for c in range(2)]
    if partial != [ONE, ZERO, ZERO, ONE]:
        raise AssertionError("enhancement does not make the partial trace scalar")
    sub = -1
    unknot_r = _substitute(h1 + h2, sub)
    skein_unknot = jones(unknot())
    if unknot_r == skein_unknot:
        unit = 1
    elif unknot_r == -skein_unknot:
        unit = -1
    else:
        raise AssertionError("unknot values differ by more than a sign")
    return RMatrixCalibration((h1, h2), sub, unit)


def _substitute(p: LaurentPoly, power: int) -> LaurentPoly:
    """s -> q^power; s^h has half-exponent h, q^(power h) has half-exponent 2 power h."""
    return LaurentPoly({2 * power * h: v for h, v in p.coeffs.items()})


def rmatrix_trace(b: BraidWord, enhancement=None) -> LaurentPoly:
    """Enhanced trace of the braid's R-matrix representation, in Z[s^+-1]."""
    h = enhancement or RM_CALIBRATION.enhancement
    n = b.strands
    r, rinv = r_matrix(), r_matrix_inverse()
    ops = []
    for g in b.letters:
        mat = r if g > 0 else rinv
        sparse = {}
        for col in range(4):
            sparse[col] = [(row, mat[row][col]) for row in range(4) if not mat[row][col].is_zero()]
        ops.append((abs(g) - 1, sparse))
    total = ZERO
    for basis in itertools.product((0, 1), repeat=n):
        vec = {basis: ONE}
        for pos, sparse in ops:
            out = defaultdict(lambda: ZERO)
            for key, coeff in vec.items():
                col = 2 * key[pos] + key[pos + 1]
                for row, entry in sparse[col]:
                    nk = key[:pos] + (row >> 1, row & 1) + key[pos + 2:]
                    out[nk] = out[nk] + coeff * entry
            vec = {k: v for k, v in out.items() if not v.is_zero()}
        diag = vec.get(basis)
        if diag is None:
            continue
        weight = ONE
        for bit in basis:
            weight = weight * h[bit]
        total = total + diag * weight
    return total


def jones_via_rmatrix(b: BraidWord) -> LaurentPoly:
    """R-matrix trace mapped to the skein normalization.

    The trace is a framed-independent invariant (every kink is 1), i.e. it corrects by the total
    writhe, while jones() corrects only self-writhes; the difference is q^(3/2) per unit of
    crossings between distinct components, together with one sign per component.
    """
    cal = RM_CALIBRATION
    value = _substitute(rmatrix_trace(b, cal.enhancement), cal.substitution)
    cycles = closure_components(b)
    comp = {}
    for ci, cyc in enumerate(cycles):
        for s in cyc:
            comp[s] = ci
    order = list(range(b.strands))
    mixed = 0
    for g in b.letters:
        p = abs(g) - 1
        if comp[order[p]] != comp[order[p + 1]]:
            mixed += 1 if g > 0 else -1
        order[p], order[p + 1] = order[p + 1], order[p]
    unit = LaurentPoly.monomial(3 * mixed, cal.unit_per_component ** len(cycles))
    return value * unit


# -- statistics and census tools

@dataclass(frozen=True)
class PolyStats:
    coeff_sum_abs: int
    max_abs_coeff: int
    spread: Fraction
    zero: bool = False


def poly_stats(p: LaurentPoly) -> PolyStats:
    if p.is_zero():
        return PolyStats(0, 0, Fraction(0), True)
    vals = [abs(v) for v in p.coeffs.values()]
    return PolyStats(sum(vals), max(vals), Fraction(p.max_half() - p.min_half(), 2))


@dataclass
class DistinctReport:
    percentage: float
    n_items: int
    n_distinct: int
    collisions: list
    failures: list
    values: list = field(default_factory=list)  # (name, value or None), input order


INVARIANTS = {
    "jones": jones,
    "bracket": kauffman_bracket,
    "kauffman": kauffman_polynomial,
}


def _safe_call(fn, pd):
    try:
        return fn(pd), None
    except Exception as exc:  # noqa: BLE001 - per-item failures are reported, not raised
        return None, f"{type(exc).__name__}: {exc}"


def distinct_values(items, invariant="jones", jobs: int = 1) -> DistinctReport:
    """Share of distinct invariant values, identifying a value with its mirror image.

    With jobs > 1 the values are computed on a thread pool; the report is in input order.
    """
    fn = INVARIANTS[invariant] if isinstance(invariant, str) else invariant
    items = list(items)
    pds = [pd for _, pd in items]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda pd: _safe_call(fn, pd), pds))
    else:
        results = [_safe_call(fn, pd) for pd in pds]
    classes: dict = {}
    failures = []
    n_ok = 0
    for (name, _), (v, err) in zip(items, results):
        if err is not None:
            failures.append((name, err))
            continue
        n_ok += 1
        key = frozenset((v, v.mirror()))
        classes.setdefault(key, []).append(name)
    pct = 100.0 * len(classes) / n_ok if n_ok else 0.0
    collisions = [names for names in classes.values() if len(names) > 1]
    values = [(name, v) for (name, _), (v, _) in zip(items, results)]
    return DistinctReport(pct, n_ok, len(classes), collisions, failures, values)


def read_census_csv(path) -> list:
    """`name,pd` rows; a header row is skipped, extra columns are ignored with a warning."""
    import csv
    import warnings

    out = []
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows and rows[0] and rows[0][0].strip().lower() == "name":
        header, rows = rows[0], rows[1:]
        if len(header) > 2:
            warnings.warn(f"ignoring extra census columns {header[2:]}", stacklevel=2)
    for row in rows:
        if not row or not row[0].strip():
            continue
        if len(row) < 2:
            raise PDError(f"census row {row!r} has no PD column")
        out.append((row[0].strip(), parse_pd(row[1])))
    return out


def random_braid(rng, max_strands: int = 5, max_letters: int = 8) -> BraidWord:
    strands = rng.randint(2, max_strands)
    letters = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(1, max_letters))]
    return BraidWord(strands, tuple(letters))


def _self_test():
    h = kauffman_bracket(hopf())
    assert h == LaurentPoly({6: 1, 2: 1, -2: 1, -6: 1}), h
    kink = kauffman_bracket(parse_pd("PD[X[1,1,2,2]]"))
    assert kink == POSITIVE_KINK * DELTA, kink


_self_test()
RM_CALIBRATION = calibrate_rmatrix()
