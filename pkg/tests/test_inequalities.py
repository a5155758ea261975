import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from holder_resolvent import LpSpace
from holder_resolvent.inequalities import (INEQUALITIES, MP_DPS, MpOps, SLACK, evaluate_pairs,
                                           main1_constant, reverify)

coords = arrays(float, 3, elements=st.floats(-10, 10, allow_nan=False, allow_subnormal=False))
exps = st.sampled_from([1.1, 1.5, 2.0])


@given(p=exps, x=coords, y=coords, name=st.sampled_from(sorted(INEQUALITIES)))
def test_numpy_and_mpmath_backends_agree(p, x, y, name):
    s = LpSpace(3, p)
    ineq = INEQUALITIES[name]
    ev = evaluate_pairs(ineq, s, x[None], y[None])
    with mpmath.workdps(MP_DPS):
        ops = MpOps(s)
        lhs, base, ref, include = ineq.evaluate(ops, ops.vector(x), ops.vector(y))
        assert bool(include) == bool(ev.include[0]) or not np.isfinite(ev.margin[0])
        if ev.include[0]:
            scale = 1e-9 * max(1.0, float(abs(lhs)), float(ref))
            assert abs(ev.lhs[0] - float(lhs)) <= scale


@given(p=exps, x=coords, y=coords)
def test_true_statements_hold_on_arbitrary_pairs(p, x, y):
    s = LpSpace(3, p)
    for name in ("main1", "keyinequ2", "support"):
        ev = evaluate_pairs(INEQUALITIES[name], s, x[None], y[None])
        if ev.include[0]:
            assert ev.margin[0] >= -ev.tol[0], name


def test_reverify_rejects_rounding_noise():
    # equality case of the support inequality: v = u gives margin exactly 0
    s = LpSpace(2, 1.5)
    u = np.array([0.3, -0.9])
    w = reverify(INEQUALITIES["support"], s, u, u)
    assert not w["confirmed"]
    assert abs(w["mp_excess"]) <= 2 * SLACK


@pytest.mark.parametrize("p,delta", [(2.0, 1e-3), (1.5, 1e-4), (1.1, 1e-12)])
def test_keylem1_witnesses_survive_reverification(p, delta):
    # the separation needed shrinks quickly as p -> 1: at p = 1.1, delta = 1e-6 is not a witness
    s = LpSpace(2, p)
    w = reverify(INEQUALITIES["keylem1"], s, np.array([1.0, 0.0]), np.array([0.5, delta]))
    assert w["confirmed"]
    assert w["mp_lhs"] > 1.5 * w["mp_rhs"]


def test_keylem1_needs_small_separation_at_p11():
    s = LpSpace(2, 1.1)
    w = reverify(INEQUALITIES["keylem1"], s, np.array([1.0, 0.0]), np.array([0.5, 1e-6]))
    assert not w["confirmed"]


def test_main1_hook(monkeypatch):
    import holder_resolvent.inequalities as ineq_mod
    monkeypatch.setattr(ineq_mod, "_main1_constant", lambda q: 0.0)
    assert main1_constant(1.5) == 0.0
    w = reverify(INEQUALITIES["main1"], LpSpace(2, 1.5), np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    assert w["confirmed"]
