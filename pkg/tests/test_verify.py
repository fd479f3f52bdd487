from __future__ import annotations

from airytau.errors import CrossCheckError
from airytau.rational import Rat
from airytau.verify import (SUITES, VerifyContext, dvv_correlator,
                            run_suites)

import pytest

from oracles import LITERATURE_CORRELATORS


def test_all_suites_small_scale():
    results = run_suites(list(SUITES), scale="small")
    failures = [r.line() for r in results if not r.passed]
    assert not failures, "\n".join(failures)
    names = {(r.suite, r.name) for r in results}
    assert ("airy", "kernel-route-agreement") in names
    assert ("npoint", "genus-zero-generating-function") in names
    assert ("kp", "differential-fay") in names


def test_unknown_suite_rejected():
    with pytest.raises(CrossCheckError):
        run_suites(["nonexistent"])


def test_context_reuses_engines():
    ctx = VerifyContext(scale="small")
    assert ctx.engine is ctx.engine
    assert ctx.engine_for(8) is ctx.engine_for(8)


def test_oracle_selection_rule():
    assert dvv_correlator((0, 0)) == 0
    assert dvv_correlator((2, 2)) == 0


def test_oracle_matches_literature():
    for key, value in LITERATURE_CORRELATORS.items():
        assert dvv_correlator(key) == Rat(value), key


def test_oracle_string_and_dilaton_consistency():
    # string: adding a zero and lowering sums; dilaton: adding an exponent 1
    # multiplies by 2g - 2 + n
    base = (3, 1, 1)  # genus 1, n = 3
    assert dvv_correlator((0,) + base) == sum(
        dvv_correlator(tuple(sorted(base[:i] + (base[i] - 1,)
                                    + base[i + 1:])))
        for i in range(len(base)) if base[i] >= 1)
    g, n = 1, 3
    assert dvv_correlator(base + (1,)) == \
        (2 * g - 2 + n) * dvv_correlator(base)
