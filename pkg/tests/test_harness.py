"""Runner behavior: determinism, filtering, witnesses."""

import random

from cartankit import harness
from cartankit import multisym as ms


def _essence(results):
    return [(r.id, r.verdict, r.witness) for r in results]


def test_filter_selects_and_passes():
    results = harness.run_suite(r"coframe\..*", seed=3)
    assert len(results) == 10
    assert all(r.verdict == "pass" for r in results)
    assert all(r.id.startswith("coframe.") for r in results)


def test_filter_nothing_matches():
    assert harness.run_suite(r"nonexistent\..*", seed=0) == []


def test_invalid_filter_notice(capsys):
    assert harness.run_suite(r"([unclosed", seed=0) == []
    assert "invalid filter" in capsys.readouterr().err


def test_determinism():
    a = harness.run_suite(r"(lorentz|yoga)\..*", seed=11)
    b = harness.run_suite(r"(lorentz|yoga)\..*", seed=11)
    assert _essence(a) == _essence(b)


def test_sign_checks_report_info():
    results = harness.run_suite(r"(einstein|spin|yoga)\.sign|yoga\.constcalcul",
                                seed=0)
    info = {r.id: r.info for r in results}
    assert info["einstein.sign"]["sigma_einstein"] == -1
    assert info["spin.sign"]["sigma_spin"] == 1
    assert info["yoga.constcalcul"]["sigma_constcalcul"] == 1


def test_overrides_shrink_sample_counts():
    results = harness.run_suite(r"fields\.bianchi", seed=0,
                                overrides={"fields.bianchi": {"fields": 2}})
    assert results[0].verdict == "pass"


def test_registry_ids_unique():
    assert len(harness.REGISTRY_IDS) == len(set(harness.REGISTRY_IDS))


def test_failing_result_requires_witness():
    import pytest
    with pytest.raises(ValueError):
        harness.CheckResult("x", "fail", None, {}, 0.0)


def test_yoga_aggregate_report():
    rng = random.Random(5)
    pt = ms.sample_phase_point(rng, on_manifold=True)
    m = ms.random_momentum(rng)
    rep = ms.coadjoint_yoga_checks(pt, m, samples=4)
    assert rep.all_ok
