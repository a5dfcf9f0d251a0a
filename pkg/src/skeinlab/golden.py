"""
Golden examples: fixed worked values checked end to end, each with an id and a topic tag.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fusion, knot, verlinde
from .jw import expected_partial_trace, is_idempotent, jw_build, jw_partial_trace, jw_trace
from .poly import Q, LaurentPoly, twovar_specialize
from .qnum import (
    Specialization,
    catalan,
    involution_count,
    q_characteristic,
    qbinom_at,
    qint,
    qint_at,
    root_of_unity,
)
from .tl import tl_basis


@dataclass(frozen=True)
class Golden:
    id: str
    tag: str
    title: str
    fn: object


@dataclass
class GoldenResult:
    id: str
    tag: str
    title: str
    passed: bool
    detail: str
    seconds: float


_REGISTRY: list = []


def golden(id: str, tag: str, title: str):
    def wrap(fn):
        _REGISTRY.append(Golden(id, tag, title, fn))
        return fn
    return wrap


def _close(a, b, tol=1e-9) -> bool:
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


def _row_close(got, want, tol=1e-10) -> bool:
    return len(got) == len(want) and all(_close(g, w, tol) for g, w in zip(got, want))


SQ2 = math.sqrt(2)
PHI = (1 + math.sqrt(5)) / 2
G5 = (-1 + math.sqrt(5)) / 2


# -- diagrams and invariants

@golden("hopf-bracket", "bracket", "bracket of the closed two-strand full twist")
def _hopf_bracket():
    got = knot.kauffman_bracket(knot.hopf())
    want = LaurentPoly({6: 1, 2: 1, -2: 1, -6: 1})
    return got == want, str(got)


@golden("trefoil-pd", "pd", "trefoil PD code: three crossings, one component")
def _trefoil_pd():
    od = knot.orient(knot.trefoil())
    return len(od.pd) == 3 and od.n_components == 1, f"{len(od.pd)} crossings, {od.n_components} component(s)"


@golden("figure-eight-pd", "pd", "figure-eight PD code: four crossings, writhe 0")
def _figure_eight_pd():
    od = knot.orient(knot.figure_eight())
    return len(od.pd) == 4 and od.writhe == 0, f"{len(od.pd)} crossings, writhe {od.writhe}"


@golden("colored-hopf-spot", "colored", "colored Hopf values [4] at (1,1) and -[6] at (1,2)")
def _colored_hopf_spot():
    a = knot.colored_jones(knot.hopf(), (1, 1))
    b = knot.colored_jones(knot.hopf(), (1, 2))
    return a == qint(4) and b == -qint(6), f"{a}; {b}"


@golden("colored-hopf-table", "colored", "colored Hopf (-1)^(k+l) [(k+1)(l+1)] for k, l <= 3")
def _colored_hopf_table():
    bad = [(k, l) for k in range(4) for l in range(4)
           if knot.colored_jones(knot.hopf(), (k, l)) != qint((k + 1) * (l + 1)) * (-1) ** (k + l)]
    return not bad, f"mismatches {bad}" if bad else "16 entries"


@golden("kauffman-hopf-expression", "kauffman",
        "two-variable Hopf value equals delta^2 + z(a - a^-1) delta at a = q^2")
def _kauffman_hopf():
    p = knot.kauffman_polynomial(knot.hopf(), normalized=False)
    worst = 0.0
    for q in (1.3, 2.0, 0.7, 1.1 + 0.4j, cmath.exp(0.3j)):
        a = q * q
        z = q - 1 / q
        d = (a - 1 / a) / z + 1
        want = d * d + z * (a - 1 / a) * d
        worst = max(worst, abs(twovar_specialize(p, Q ** 2, q) - want) / abs(want))
    return worst < 1e-9, f"max relative deviation {worst:.1e}"


@golden("alexander-trefoil", "alexander", "Alexander polynomial of the trefoil Seifert matrix")
def _alexander_trefoil():
    got = knot.alexander_from_seifert([[1, 0], [-1, 1]])
    return got == LaurentPoly({4: 1, 2: -1, 0: 1}), str(got)


@golden("trefoil-chiral", "mirror", "trefoil Jones differs from its mirror")
def _trefoil_chiral():
    j = knot.jones(knot.trefoil())
    return j != j.mirror() and knot.jones(knot.mirror(knot.trefoil())) == j.mirror(), str(j)


@golden("figure-eight-amphichiral", "mirror", "figure-eight Jones is palindromic")
def _figure_eight_amphichiral():
    j = knot.jones(knot.figure_eight())
    return j == j.mirror(), str(j)


# -- quantum numbers

_TABLE_9 = [
    (1, 1, [1, 2, 3, 4, 5, 6, 7, 8]),
    (1, 4, [1, 0, -1, 0, 1, 0, -1, 0]),
    (1, 3, [1, -1, 0, 1, -1, 0, 1, -1]),
    (1, 8, [1, SQ2, 1, 0, -1, -SQ2, -1, 0]),
    (1, 5, [1, G5, -G5, -1, 0, 1, G5, -G5]),
]


@golden("qint-roots-of-unity", "qnum", "[1]..[8] at q = 1, i, and primitive 3rd, 8th, 5th roots")
def _qint_roots():
    bad = []
    for num, den, want in _TABLE_9:
        spec = Specialization.complex_at(root_of_unity(num, den))
        if not _row_close([qint_at(a, spec) for a in range(1, 9)], want):
            bad.append(f"exp(2 pi i/{den})")
    return not bad, f"bad rows {bad}" if bad else "5 rows"


_TABLE_QINT = [
    (Specialization.complex_at(1), [0, 1, 2, 3, 4, 5, 6, 7, 8]),
    (Specialization.complex_at(-1), [0, 1, -2, 3, -4, 5, -6, 7, -8]),
    (Specialization.rational(2), [0, 1] + [Fraction(4 ** a - 1, 3 * 2 ** (a - 1)) for a in range(2, 9)]),
    (Specialization.finite_field(3, 1), [0, 1, 2, 0, 1, 2, 0, 1, 2]),
    (Specialization.finite_field(5, 1), [0, 1, 2, 3, 4, 0, 1, 2, 3]),
    (Specialization.finite_field(7, 1), [0, 1, 2, 3, 4, 5, 6, 0, 1]),
    (Specialization.finite_field(13, 2), [0, 1, 9, 2, 9, 1, 0, 12, 4]),
    (Specialization.finite_field(13, 3), [0, 1, 12, 0, 1, 12, 0, 1, 12]),
    (Specialization.finite_field(13, 4), [0, 1, 1, 0, 12, 12, 0, 1, 1]),
]


def _values_match(spec, got, want) -> bool:
    if spec.kind == "complex":
        return _row_close(got, want)
    return list(got) == list(want)


@golden("qint-fields", "qnum", "[0]..[8] over Q and F_p, including q = 2, 3, 4 in F_13")
def _qint_fields():
    bad = [s.label() for s, want in _TABLE_QINT if not _values_match(s, [qint_at(a, s) for a in range(9)], want)]
    return not bad, f"bad rows {bad}" if bad else f"{len(_TABLE_QINT)} rows"


@golden("qchar-f13", "qnum", "q-characteristic of q = 2 in F_13")
def _qchar_f13():
    c = q_characteristic(Specialization.finite_field(13, 2))
    return c == 6, str(c)


_TABLE_BINOM_8 = [
    (Specialization.complex_at(1), [1, 8, 28, 56, 70, 56, 28, 8, 1]),
    (Specialization.complex_at(-1), [1, -8, 28, -56, 70, -56, 28, -8, 1]),
    (Specialization.rational(2), [1, Fraction(21845, 128), Fraction(23859109, 4096), Fraction(1550842085, 32768),
                                  Fraction(6221613541, 65536), Fraction(1550842085, 32768),
                                  Fraction(23859109, 4096), Fraction(21845, 128), 1]),
    (Specialization.finite_field(3, 1), [1, 2, 1, 2, 1, 2, 1, 2, 1]),
    (Specialization.finite_field(5, 1), [1, 3, 3, 1, 0, 1, 3, 3, 1]),
    (Specialization.finite_field(7, 1), [1, 1, 0, 0, 0, 0, 0, 1, 1]),
    (Specialization.complex_at(root_of_unity(1, 3)), [1, -1, 1, 2, -2, 2, 1, -1, 1]),
    (Specialization.complex_at(root_of_unity(1, 5)), [1, -G5, -G5, 1, 0, 1, -G5, -G5, 1]),
    (Specialization.complex_at(root_of_unity(1, 7)), [1, 1, 0, 0, 0, 0, 0, 1, 1]),
    (Specialization.finite_field(13, 2), [1, 4, 1, 0, 0, 0, 1, 4, 1]),
    (Specialization.finite_field(13, 3), [1, 12, 1, 2, 11, 2, 1, 12, 1]),
    (Specialization.finite_field(13, 4), [1, 1, 1, 11, 11, 11, 1, 1, 1]),
]

_TABLE_BINOM_BIG = [
    (11, Specialization.finite_field(3, 1), [1, 2, 1, 0, 0, 0, 0, 0, 0, 1, 2, 1]),
    (11, Specialization.complex_at(root_of_unity(1, 3)), [1, -1, 1, 3, -3, 3, 3, -3, 3, 1, -1, 1]),
    (14, Specialization.finite_field(7, 1), [1, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1]),
    (14, Specialization.complex_at(root_of_unity(1, 3)), [1, -1, 1, 4, -4, 4, 6, -6, 6, 4, -4, 4, 1, -1, 1]),
    (14, Specialization.finite_field(7, 2), [1, 6, 1, 4, 3, 4, 6, 1, 6, 4, 3, 4, 1, 6, 1]),
]


@golden("qbinom-rows-8", "qnum", "[8 choose b] across twelve specializations")
def _qbinom_8():
    bad = [s.label() for s, want in _TABLE_BINOM_8
           if not _values_match(s, [qbinom_at(8, b, s) for b in range(9)], want)]
    return not bad, f"bad rows {bad}" if bad else f"{len(_TABLE_BINOM_8)} rows"


@golden("qbinom-rows-11-14", "qnum", "[11 choose b] and [14 choose b] at small characteristic")
def _qbinom_big():
    bad = [f"a={a} {s.label()}" for a, s, want in _TABLE_BINOM_BIG
           if not _values_match(s, [qbinom_at(a, b, s) for b in range(a + 1)], want)]
    return not bad, f"bad rows {bad}" if bad else f"{len(_TABLE_BINOM_BIG)} rows"


@golden("involutions", "counting", "involution counts 1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496")
def _involutions():
    got = [involution_count(n) for n in range(11)]
    return got == [1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496], str(got)


# -- Temperley-Lieb and Jones-Wenzl

@golden("tl-catalan", "tl", "crossingless matchings are counted by Catalan numbers")
def _tl_catalan():
    bad = [(m, n) for m in range(9) for n in range(9)
           if (m + n) % 2 == 0 and m + n <= 12 and len(tl_basis(m, n)) != catalan((m + n) // 2)]
    return not bad, f"bad sizes {bad}" if bad else "all sizes"


@golden("jw-small", "jw", "JW_2 and JW_3 coefficients and traces")
def _jw_small():
    e2, e3 = jw_build(2), jw_build(3)
    c2 = sorted(str(c) for _, c in e2.body.terms.items())
    c3 = sorted(str(c) for _, c in e3.body.terms.items())
    ok = len(e2) == 2 and len(e3) == 5 and jw_trace(2) == qint(3) and jw_trace(3) == -qint(4)
    return ok and is_idempotent(e3), f"JW_2 {c2}; JW_3 {c3}"


@golden("jw-traces", "jw", "trace (-1)^i [i+1] and partial trace -[i+1]/[i] e_(i-1) for i <= 8")
def _jw_traces():
    bad = [i for i in range(9) if jw_trace(i) != qint(i + 1) * (-1) ** i]
    bad += [f"partial {i}" for i in range(1, 9) if jw_partial_trace(jw_build(i)) != expected_partial_trace(i)]
    return not bad, f"bad {bad}" if bad else "i = 0..8"


# -- fusion rings

@golden("fib-pf", "fusion", "Fibonacci PF dimension is the golden ratio")
def _fib_pf():
    d = fusion.pfdim(fusion.fib(), "L")
    return _close(d, PHI, 1e-10), f"{d!r}"


@golden("s3-pf", "fusion", "S3 standard object: eigenvalue 2, eigenvector proportional to (1, 2, 1)")
def _s3_pf():
    r = fusion.s3()
    data = fusion.pf_data(fusion.action_matrix(r, "L_s"))
    v = np.array(data.right_eigenvector) / data.right_eigenvector[0]
    ok = _close(data.eigenvalue, 2, 1e-10) and np.allclose(v, [1, 2, 1], atol=1e-9)
    return ok, f"{data.eigenvalue!r} {np.round(v, 12).tolist()}"


@golden("ty3-pf", "fusion", "Tambara-Yamagami over Z/3: PFdim(X) = sqrt 3, ring PFdim 6")
def _ty3():
    r = fusion.ty(3)
    a, b = fusion.pfdim(r, "X"), fusion.pfdim_ring(r)
    return _close(a, math.sqrt(3), 1e-10) and _close(b, 6, 1e-10), f"{a!r} {b!r}"


@golden("group-ring-pf", "fusion", "group ring of Z/n has PF dimension n")
def _group_ring():
    vals = [fusion.pfdim_ring(fusion.group_ring(n)) for n in range(1, 8)]
    return all(_close(v, n, 1e-10) for v, n in zip(vals, range(1, 8))), str(np.round(vals, 12).tolist())


@golden("s3-regular", "fusion", "regular object of S3 is 1 + 2 L_s + L_1'")
def _s3_regular():
    v = fusion.regular_object(fusion.s3())
    return np.allclose(v, [1, 2, 1], atol=1e-9), str(np.round(v, 12).tolist())


@golden("sl2-fusion-k4", "fusion", "level-4 sl2 fusion: L1 L1 = L0 + L2, L2 L2 = L0")
def _sl2_k4():
    r = fusion.verlinde_sl2(4)
    return r.multiply(1, 1) == [1, 0, 1] and r.multiply(2, 2) == [1, 0, 0], f"{r.multiply(1, 1)} {r.multiply(2, 2)}"


@golden("sl2-filtered", "fusion", "PFdim of L1 in the sl2 cutoffs is 2cos(pi/k), increasing to 2")
def _sl2_filtered():
    f = fusion.pfdim_filtered(fusion.verlinde_sl2, range(3, 21), 1)
    want = [2 * math.cos(math.pi / k) for k in range(3, 21)]
    return _row_close(f.values, want, 1e-10) and f.limit < 2, f"limit {f.limit:.6f}"


# -- growth

@golden("fib-growth", "growth", "Fibonacci growth 1, 1, 2, 3, 5, 8, ...")
def _fib_growth():
    b = fusion.growth_bn(fusion.fib(), "L", 30)
    f = [1, 1]
    while len(f) < 31:
        f.append(f[-1] + f[-2])
    return b == f, str(b[:11])


def _jacobsthal(n: int) -> int:
    return (2 ** n - (-1) ** n) // 3


@golden("s3-growth", "growth", "S3 growth J(n) + 2 J(n-1)")
def _s3_growth():
    b = fusion.growth_bn(fusion.s3(), "L_s", 30)
    want = [1] + [_jacobsthal(n) + 2 * _jacobsthal(n - 1) for n in range(1, 31)]
    return b == want, str(b[:11])


@golden("dihedral-growth", "growth", "dihedral order-8 growth 4^floor(n/2)")
def _dihedral_growth():
    b = fusion.growth_bn(fusion.dihedral8(), "V", 30)
    return b == [4 ** (n // 2) for n in range(31)], str(b[:11])


@golden("sl2-growth", "growth", "untruncated sl2 growth is the middle binomials")
def _sl2_growth():
    b = fusion.growth_bn(fusion.verlinde_sl2(30), 1, 20)
    return b == [math.comb(n, n // 2) for n in range(21)], str(b[:11])


@golden("growth-asymptotics", "growth", "b_n / a(n) -> 1 for Fibonacci, S3 and dihedral")
def _asymptotics():
    out = []
    for r, x, const, lam in ((fusion.fib(), "L", PHI / math.sqrt(5), PHI), (fusion.s3(), "L_s", 2 / 3, 2)):
        a = fusion.growth_asymptotic(r, x)
        b = fusion.growth_bn(r, x, 40)[40]
        out.append(abs(b / a(40) - 1) < 0.02 and _close(a.constants[0], const, 1e-8) and _close(a.eigenvalue, lam, 1e-10))
    d = fusion.growth_asymptotic(fusion.dihedral8(), "V")
    out.append(d.period == 2 and _close(d.constants[0], 0.75, 1e-8) and _close(d.constants[1], 0.25, 1e-8))
    return all(out), str(out)


# -- modular data

_K4_S = [[1, -SQ2, 1], [-SQ2, 0, SQ2], [1, SQ2, 1]]


def _k4_data():
    return verlinde.modular_data_sl2(4, q_half=-cmath.exp(1j * math.pi / 8))


@golden("k4-s-matrix", "verlinde", "level-4 S matrix and dimensions 1, -sqrt 2, 1")
def _k4_s():
    d = _k4_data()
    dev = float(np.max(np.abs(d.S_num - np.array(_K4_S))))
    return dev < 1e-9, f"max deviation {dev:.1e}"


@golden("k4-gauss-sums", "verlinde", "level-4 Gauss sums -2 e^(5 pi i/8), 2 e^(3 pi i/8) and dim 4")
def _k4_gauss():
    d = _k4_data()
    ok = (_close(d.gauss_r, -2 * cmath.exp(5j * math.pi / 8)) and _close(d.gauss_l, 2 * cmath.exp(3j * math.pi / 8))
          and _close(d.global_dim, 4))
    return ok, f"{d.gauss_r:.6f} {d.gauss_l:.6f} {d.global_dim:.6f}"


@golden("k4-identities", "verlinde", "level-4 modular identities")
def _k4_identities():
    rep = verlinde.verify_modular_identities(_k4_data())
    return rep.passed, "; ".join(c.name for c in rep.failures()) or f"{len(rep.checks)} checks"


@golden("k4-verlinde-sums", "verlinde", "level-4 Verlinde sums: 0 for L1 L2 -> L2 and 4 for L1 L1 -> L2")
def _k4_sums():
    d = _k4_data()
    s, dims = d.S_num, d.dims

    def total(j, k, l):
        return sum(s[i, j] * s[i, k] * np.conj(s[i, l]) / dims[i] for i in range(d.rank))

    a, b = total(1, 2, 2), total(1, 1, 2)
    return _close(a, 0) and _close(b, 4), f"{a:.6f} {b:.6f}"


@golden("hopf-s-entries", "verlinde", "S entries as colored Hopf values: s_11 = [4], s_21 = -[6]")
def _s_entries():
    return verlinde.s_entry_symbolic(1, 1) == qint(4) and verlinde.s_entry_symbolic(2, 1) == -qint(6), "ok"


@golden("fib-block", "verlinde", "level-5 even block of S is [[1, phi], [phi, -1]]")
def _fib_block():
    blk = verlinde.fib_block(5)
    dev = float(np.max(np.abs(blk - np.array([[1, PHI], [PHI, -1]]))))
    return dev < 1e-9, f"max deviation {dev:.1e}"


# -- runner

def examples() -> list:
    return list(_REGISTRY)


def select(only=None) -> list:
    if not only:
        return examples()
    out = [g for g in _REGISTRY if g.id == only or g.tag == only]
    if not out:
        raise KeyError(f"no golden example matches {only!r}")
    return out


def run_golden(only=None) -> list:
    results = []
    for g in select(only):
        t = time.perf_counter()
        try:
            ok, detail = g.fn()
        except Exception as exc:  # noqa: BLE001 - the runner reports, it never raises
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(GoldenResult(g.id, g.tag, g.title, bool(ok), detail, time.perf_counter() - t))
    return results
