from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from skeinlab import fusion
from skeinlab.knot import colored_jones, hopf
from skeinlab.verlinde import (
    ModularError,
    fib_block,
    modular_data_from_json,
    modular_data_sl2,
    modular_data_to_json,
    s_entry_symbolic,
    s_prime,
    verify_modular_identities,
    verlinde_formula_check,
)

SQ2 = math.sqrt(2)
PHI = (1 + math.sqrt(5)) / 2
K4_S = np.array([[1, -SQ2, 1], [-SQ2, 0, SQ2], [1, SQ2, 1]])
K4_HALF = -cmath.exp(1j * math.pi / 8)


def _coprime(k):
    return [m for m in range(1, 2 * k) if math.gcd(m, 2 * k) == 1]


@pytest.mark.parametrize("i,j", [(i, j) for i in range(4) for j in range(4)])
def test_s_entries_are_colored_hopf(i, j):
    assert s_entry_symbolic(i, j) == colored_jones(hopf(), (i, j))


@pytest.mark.parametrize("k", range(2, 13))
def test_identities_default(k):
    rep = verify_modular_identities(modular_data_sl2(k))
    assert rep.passed, [c.name for c in rep.failures()]


@pytest.mark.parametrize("k", range(2, 13))
def test_identities_other_roots(k):
    for m in _coprime(k)[:4]:
        d = modular_data_sl2(k, m)
        assert verify_modular_identities(d).passed
        flipped = modular_data_sl2(k, m, -d.q_half)
        assert verify_modular_identities(flipped).passed


@pytest.mark.parametrize("k", range(2, 13))
def test_dimension_identities(k):
    d = modular_data_sl2(k)
    dims = d.dims
    assert np.all(np.abs(dims.imag) < 1e-12)
    assert np.all(dims.real ** 2 > 0)
    # dim(C) = k / (2 sin^2(pi/k))
    assert abs(d.global_dim - k / (2 * math.sin(math.pi / k) ** 2)) < 1e-8
    assert abs(d.global_dim - d.gauss_r * d.gauss_l) < 1e-8
    sp = s_prime(k)
    assert np.allclose(d.S_num, sp / math.sin(math.pi / k), atol=1e-9)


def test_level_four_matrices():
    d = modular_data_sl2(4, q_half=K4_HALF)
    assert np.max(np.abs(d.S_num - K4_S)) < 1e-9
    assert np.allclose(d.dims, [1, -SQ2, 1])
    assert abs(d.gauss_r + 2 * cmath.exp(5j * math.pi / 8)) < 1e-9
    assert abs(d.gauss_l - 2 * cmath.exp(3j * math.pi / 8)) < 1e-9
    assert abs(d.global_dim - 4) < 1e-9
    assert verify_modular_identities(d).passed


def test_level_four_spot_sums():
    d = modular_data_sl2(4, q_half=K4_HALF)
    s = d.S_num

    def total(j, k, l):
        return sum(s[i, j] * s[i, k] * np.conj(s[i, l]) / d.dims[i] for i in range(3))

    assert abs(total(1, 2, 2)) < 1e-9
    assert abs(total(1, 1, 2) - 4) < 1e-9


@pytest.mark.parametrize("k", range(2, 11))
def test_verlinde_formula(k):
    rep = verlinde_formula_check(modular_data_sl2(k))
    assert rep.passed and len(rep.checks) == (k - 1) ** 3


def test_verlinde_formula_detects_wrong_ring():
    d = modular_data_sl2(3)
    assert verlinde_formula_check(d, fusion.group_ring(2)).passed
    assert not verlinde_formula_check(d, fusion.fib()).passed
    with pytest.raises(ModularError):
        verlinde_formula_check(d, fusion.s3())


def test_fib_block():
    assert np.max(np.abs(fib_block(5) - np.array([[1, PHI], [PHI, -1]]))) < 1e-9


def test_json_round_trip():
    d = modular_data_sl2(5)
    back = modular_data_from_json(modular_data_to_json(d))
    assert np.allclose(back.S_num, d.S_num) and np.allclose(back.T_num, d.T_num)
    assert verify_modular_identities(back).passed
    with pytest.raises(ModularError):
        modular_data_from_json({"T": []})


def test_broken_data_fails():
    d = modular_data_sl2(5)
    t = d.T_num.copy()
    t[1, 1] *= cmath.exp(0.1j)
    bad = modular_data_from_json({**modular_data_to_json(d), "T": [[[z.real, z.imag] for z in row] for row in t]})
    rep = verify_modular_identities(bad)
    assert [c.name for c in rep.failures()] == ["(ST)^3 = Delta_r S^2", "dim = Delta_r Delta_l"]
    assert all(line.startswith(("PASS", "FAIL")) for line in rep.lines())


def test_errors():
    with pytest.raises(ModularError):
        modular_data_sl2(1)
    with pytest.raises(ModularError):
        modular_data_sl2(4, 2)
    with pytest.raises(ModularError):
        modular_data_sl2(4, q_half=1)
    with pytest.raises(ModularError):
        s_entry_symbolic(-1, 0)
