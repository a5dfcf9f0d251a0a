from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab import fusion
from skeinlab.fusion import (
    ConvergenceError,
    FusionError,
    FusionRing,
    UnsupportedError,
    action_matrix,
    builtin_ring,
    growth_asymptotic,
    growth_bn,
    pf_data,
    pfdim,
    pfdim_filtered,
    pfdim_ring,
    regular_object,
    ring_from_json,
    ring_to_json,
)

PHI = (1 + math.sqrt(5)) / 2
RINGS = [fusion.fib(), fusion.s3(), fusion.dihedral8(), fusion.ty(3), fusion.group_ring(5),
         fusion.verlinde_sl2(6), fusion.verlinde_so3(7)]
IDS = [r.name for r in RINGS]


def _axioms_hold(labels, unit, n, dual) -> bool:
    r = range(len(labels))
    e = np.array(n)
    unit_ok = (e[unit] == np.eye(len(labels))).all() and (e[:, unit] == np.eye(len(labels))).all()
    lhs = np.einsum("ijm,mkl->ijkl", e, e)
    rhs = np.einsum("jkm,iml->ijkl", e, e)
    dual_ok = all(e[i, j, unit] == (1 if j == dual[i] else 0) for i in r for j in r)
    return bool(unit_ok and (lhs == rhs).all() and dual_ok)


@pytest.mark.parametrize("r", [fusion.fib(), fusion.s3(), fusion.ty(2)], ids=["fib", "s3", "ty2"])
def test_single_constant_mutations(r):
    # every single-constant bump is accepted exactly when the axioms still hold
    rejected = 0
    n0 = r.rank
    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                n = [[list(v) for v in row] for row in r.N]
                n[i][j][k] += 1
                if _axioms_hold(r.labels, r.unit, n, r.dual):
                    FusionRing(r.labels, r.unit, n, r.dual)
                else:
                    rejected += 1
                    with pytest.raises(FusionError):
                        FusionRing(r.labels, r.unit, n, r.dual)
    assert rejected > 0


def test_validation_errors():
    with pytest.raises(FusionError):
        FusionRing(("1",), 1, [[[1]]])
    with pytest.raises(FusionError):
        FusionRing(("1", "x"), 0, [[[1, 0]]])
    with pytest.raises(FusionError):
        FusionRing(("1",), 0, [[[-1]]])
    with pytest.raises(FusionError):
        FusionRing(("1", "x"), 0, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], dual=(1, 0))


def test_labels_and_vectors():
    r = fusion.s3()
    assert r.index("L_s") == 1 and r.index(2) == 2
    with pytest.raises(FusionError):
        r.index("nope")
    assert action_matrix(r, "L_s") == action_matrix(r, [0, 1, 0])
    with pytest.raises(FusionError):
        action_matrix(r, [1, 0])
    with pytest.raises(FusionError):
        action_matrix(r, [1, -1, 0])


@pytest.mark.parametrize("r", RINGS, ids=IDS)
def test_pf_eigenpair(r):
    for i in range(r.rank):
        a = np.array(action_matrix(r, i), dtype=float)
        d = pf_data(a)
        v = np.array(d.right_eigenvector)
        assert np.max(np.abs(a @ v - d.eigenvalue * v)) < 1e-10
        assert (v > 0).all() or r.rank == 1
        assert d.residual < 1e-10
        # agrees with the spectral radius from a dense eigensolver
        assert abs(d.eigenvalue - max(abs(np.linalg.eigvals(a)))) < 1e-9


@pytest.mark.parametrize("r", RINGS, ids=IDS)
def test_pf_root_of_characteristic_polynomial(r):
    for i in range(r.rank):
        a = np.array(action_matrix(r, i), dtype=float)
        lam = pfdim(r, i)
        assert abs(np.polyval(np.poly(a), lam)) < 1e-8 * max(1.0, lam) ** r.rank


@pytest.mark.parametrize("r", RINGS, ids=IDS)
def test_pfdim_is_a_character(r):
    # PFdim(x) PFdim(y) = sum_k N_xy^k PFdim(k)
    d = [pfdim(r, i) for i in range(r.rank)]
    for i in range(r.rank):
        for j in range(r.rank):
            assert abs(d[i] * d[j] - sum(m * d[k] for k, m in enumerate(r.N[i][j]))) < 1e-9


@pytest.mark.parametrize("r", RINGS, ids=IDS)
def test_growth_rate(r):
    x = [1] * r.rank
    b = growth_bn(r, x, 60)
    lam = pfdim(r, x)
    assert abs(b[60] ** (1 / 60) - lam) < 0.05 * lam


def test_known_dimensions():
    assert abs(pfdim(fusion.fib(), "L") - PHI) < 1e-12
    assert abs(pfdim_ring(fusion.fib()) - (2 + PHI)) < 1e-10
    assert abs(pfdim_ring(fusion.s3()) - 6) < 1e-10
    assert abs(pfdim(fusion.ty(4), "X") - 2) < 1e-10
    assert abs(pfdim_ring(fusion.dihedral8()) - 8) < 1e-10
    for k in range(3, 12):
        assert abs(pfdim(fusion.verlinde_sl2(k), 1) - 2 * math.cos(math.pi / k)) < 1e-10


def test_pf_errors():
    with pytest.raises(FusionError):
        pf_data([[1, 2]])
    with pytest.raises(FusionError):
        pf_data([[0, -1], [1, 0]])
    with pytest.raises(FusionError):
        pf_data([[0, 0], [0, 0]])
    with pytest.raises(ConvergenceError) as exc:
        pf_data([[1, 1], [0, 1]], max_iter=5)
    assert exc.value.residual > 0


@pytest.mark.parametrize("r", RINGS, ids=IDS)
def test_regular_object(r):
    v = np.array(regular_object(r))
    assert v[r.unit] == pytest.approx(1)
    d = np.array([pfdim(r, i) for i in range(r.rank)])
    assert np.allclose(v, d, atol=1e-8)


def test_regular_object_needs_transitivity():
    # p^2 = p: nothing multiplies p back to the unit
    n = [[[1, 0], [0, 1]], [[0, 1], [0, 1]]]
    r = FusionRing(("1", "p"), 0, n)
    with pytest.raises(FusionError):
        regular_object(r)


def test_growth_sequences():
    fib_seq = [1, 1]
    while len(fib_seq) < 31:
        fib_seq.append(fib_seq[-1] + fib_seq[-2])
    assert growth_bn(fusion.fib(), "L", 30) == fib_seq
    jac = [(2 ** n - (-1) ** n) // 3 for n in range(31)]
    assert growth_bn(fusion.s3(), "L_s", 30) == [1] + [jac[n] + 2 * jac[n - 1] for n in range(1, 31)]
    assert growth_bn(fusion.dihedral8(), "V", 30) == [4 ** (n // 2) for n in range(31)]
    assert growth_bn(fusion.verlinde_sl2(30), 1, 20) == [math.comb(n, n // 2) for n in range(21)]


def test_growth_matches_matrix_power():
    r = fusion.ty(3)
    a = np.array(action_matrix(r, "X"), dtype=object)
    e = np.zeros(r.rank, dtype=object)
    e[r.unit] = 1
    for n, b in enumerate(growth_bn(r, "X", 12)):
        v = e.copy()
        for _ in range(n):
            v = a.dot(v)
        assert int(sum(v)) == b


def test_asymptotics():
    a = growth_asymptotic(fusion.fib(), "L")
    assert a.period == 1 and abs(a.constants[0] - PHI / math.sqrt(5)) < 1e-8
    assert abs(growth_bn(fusion.fib(), "L", 40)[40] / a(40) - 1) < 0.02
    a = growth_asymptotic(fusion.s3(), "L_s")
    assert abs(a.constants[0] - 2 / 3) < 1e-8
    assert abs(growth_bn(fusion.s3(), "L_s", 40)[40] / a(40) - 1) < 0.02
    d = growth_asymptotic(fusion.dihedral8(), "V")
    b = growth_bn(fusion.dihedral8(), "V", 30)
    assert d.period == 2
    assert all(abs(b[n] / d(n) - 1) < 1e-8 for n in range(10, 31))


def test_asymptotics_unsupported():
    # g0 + g2 in Z/4 has the eigenvalue 2 twice
    with pytest.raises(UnsupportedError):
        growth_asymptotic(fusion.group_ring(4), [1, 0, 1, 0])


def test_filtered():
    f = pfdim_filtered(fusion.verlinde_sl2, range(3, 30), 1)
    assert list(f.values) == sorted(f.values) and f.limit < 2
    assert 2 - f.limit < 0.02
    with pytest.raises(FusionError):
        pfdim_filtered(lambda k: [fusion.verlinde_sl2(6), fusion.verlinde_sl2(4)][k], [0, 1], 1)


@pytest.mark.parametrize("r", RINGS, ids=IDS)
def test_json_round_trip(r):
    assert ring_from_json(ring_to_json(r)) == r
    import json
    assert ring_from_json(json.dumps(ring_to_json(r))) == r


def test_builtin_ring():
    assert builtin_ring("fib") == fusion.fib()
    assert builtin_ring("sl2:5") == fusion.verlinde_sl2(5)
    assert builtin_ring("ty", 2) == fusion.ty(2)
    for bad in [("nope",), ("fib", 2), ("sl2",), ("sl2", 1)]:
        with pytest.raises(FusionError):
            builtin_ring(*bad)
    with pytest.raises(FusionError):
        ring_from_json({"labels": ["1"]})


@given(st.integers(2, 14))
@settings(max_examples=13)
def test_verlinde_rings_are_valid_and_commutative(k):
    r = fusion.verlinde_sl2(k)
    n = r.rank
    assert all(r.N[i][j] == r.N[j][i] for i in range(n) for j in range(n))
    assert pfdim(r, n - 1) == pytest.approx(1)
