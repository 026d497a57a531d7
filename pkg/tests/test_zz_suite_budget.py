"""Runs last by name: the whole suite must fit the advertised time budget."""
import time

from conftest import SESSION_T0


def test_criterion_12_suite_budget(capsys):
    elapsed = time.perf_counter() - SESSION_T0
    ok = elapsed < 60.0
    status = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(f"CRITERION 12 {status}: full suite under 60s "
              f"[{elapsed:.2f}s]", flush=True)
    assert ok, f"suite took {elapsed:.2f}s"
