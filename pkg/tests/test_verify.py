import pytest

from symdom import verify
from symdom.serialize import dumps

FAULT_TARGETS = {
    "bergman_on_flat": "core.flat_bergman",
    "gromov_singletons": "boundary.gromov_decomposition",
    "cone_M": "boundary.hilbert_part",
    "singleton_eval": "boundary.singleton_limit",
}


@pytest.fixture(scope="module")
def report():
    return verify.run("all", seed=42)


def test_default_run_passes(report):
    assert report.passed, report.failing
    assert len(report.entries) >= 20


def test_entries_are_complete(report):
    ids = [e.lemma_id for e in report.entries]
    assert len(set(ids)) == len(ids)
    for e in report.entries:
        assert e.paper_anchor.strip()
        assert e.n_cases > 0
        assert (e.verdict == "pass") == (e.max_residual <= e.tolerance)
        assert e.scope == verify.TYPE_SCOPE


def test_every_suite_populated(report):
    assert {e.suite for e in report.entries} == {"core", "boundary", "maps"}


def test_suite_filter():
    rep = verify.run("maps", seed=42)
    assert rep.entries and all(e.suite == "maps" for e in rep.entries)


def test_entry_seeds_independent_of_suite(report):
    rep = verify.run("maps", seed=42)
    full = {e.lemma_id: e for e in report.entries}
    for e in rep.entries:
        assert e.seed == full[e.lemma_id].seed and e.max_residual == full[e.lemma_id].max_residual


def test_deterministic_bytes(report):
    again = verify.run("all", seed=42)
    assert dumps(report.as_dict()) == dumps(again.as_dict())


def test_seed_changes_cases(report):
    assert verify.entry_seed(42, "core.jordan_identity") != verify.entry_seed(43, "core.jordan_identity")


def test_timestamp_is_opt_in(report):
    assert "timestamp" not in report.as_dict()
    rep = verify.run("maps", seed=42, timestamp="2026-01-01T00:00:00+00:00")
    assert rep.as_dict()["timestamp"].startswith("2026")


@pytest.mark.parametrize("fault", sorted(FAULT_TARGETS))
def test_fault_isolated(fault):
    target = FAULT_TARGETS[fault]
    suite = target.split(".")[0]
    rep = verify.run(suite, seed=42, fault=fault)
    assert rep.failing == [target]
    assert rep.as_dict()["fault"] == fault


def test_fault_targets_cover_table():
    assert set(FAULT_TARGETS) == set(verify.FAULTS)


def test_unknown_suite_and_fault():
    with pytest.raises(ValueError):
        verify.run("nope")
    with pytest.raises(ValueError):
        verify.run("core", fault="nope")


def test_tolerance_scaling_fails_tight_entries():
    rep = verify.run("core", seed=42, tol_scale=1e-30)
    assert not rep.passed
