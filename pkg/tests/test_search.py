import numpy as np
import pytest

from holder_resolvent import InputError, LpSpace, SamplerConfig, adversarial_search, check_theorem_main1
from holder_resolvent.inequalities import INEQUALITIES, evaluate_pairs

SAMPLER = SamplerConfig(seed=42, count=10_000)


def test_hilbert_main1_ratio_is_one():
    rep = adversarial_search("main1", LpSpace(2, 2.0), restarts=20, steps=50)
    assert rep.passed
    assert rep.estimated_constant == pytest.approx(1.0, abs=1e-9)
    assert rep.estimated_constant <= 8.0


@pytest.mark.parametrize("dim,p", [(2, 1.5), (2, 1.1), (10, 1.5)])
def test_search_dominates_sampling(dim, p):
    s = LpSpace(dim, p)
    sampled = check_theorem_main1(s, SAMPLER).estimated_constant
    found = adversarial_search("main1", s, restarts=100, steps=200, sampler=SAMPLER)
    assert found.estimated_constant >= sampled
    assert found.details["sampled_best"] <= found.estimated_constant
    assert found.passed


def test_keyinequ2_ratio_approaches_two():
    # 1-D scan oracle: y = -s x gives ratio 2 / (1 + s) -> 2 as s -> 0
    s = LpSpace(2, 1.5)
    x = np.array([[0.6, -0.2]])
    scan = [evaluate_pairs(INEQUALITIES["keyinequ2"], s, x, -t * x).ratio[0] for t in np.geomspace(1e-6, 1, 30)]
    assert np.all(np.array(scan) <= 2.0) and max(scan) > 1.9999
    rep = adversarial_search("keyinequ2", s, sampler=SAMPLER)
    assert rep.passed
    assert 1.999 < rep.estimated_constant <= 2.0
    w = rep.details["witness"]
    ev = evaluate_pairs(INEQUALITIES["keyinequ2"], s, np.array([w["x"]]), np.array([w["y"]]))
    assert ev.ratio[0] == pytest.approx(rep.estimated_constant)


def test_support_search_finds_no_violation():
    rep = adversarial_search("support", LpSpace(3, 1.5), restarts=50, steps=100)
    assert rep.passed and rep.estimated_constant <= 1e-12


def test_keylem1_search_reverifies_witness():
    rep = adversarial_search("keylem1", LpSpace(2, 2.0), restarts=50, steps=100)
    assert rep.violations == 1
    assert rep.details["witness_reverified"]
    assert rep.reverified_violation


def test_search_is_deterministic():
    s = LpSpace(2, 1.5)
    a = adversarial_search("main1", s, restarts=10, steps=20).to_dict()
    b = adversarial_search("main1", s, restarts=10, steps=20).to_dict()
    assert a == b


@pytest.mark.parametrize("args", [("nope", 10, 10), ("main1", 0, 10), ("main1", 10, -1)])
def test_search_input_errors(args):
    name, restarts, steps = args
    with pytest.raises(InputError):
        adversarial_search(name, LpSpace(2, 1.5), restarts, steps)


def test_zero_steps_returns_sampled_best():
    rep = adversarial_search("main1", LpSpace(2, 1.5), restarts=5, steps=0)
    assert rep.estimated_constant == rep.details["sampled_best"]
