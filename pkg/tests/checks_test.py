# Copyright 2020 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
from permstat import bijections
from permstat import checks
from permstat import series_forms
from permstat.checks import CHECKS, CheckReport, parameters_for, run_all, run_check
from permstat.series import Monomial, Series
import pytest


# Small enough for the suite, large enough to exercise every branch
SMALL = {
    "theorem_main": {"n": 6},
    "catalan_counts": {"n": 6},
    "transport_rs": {"n": 6},
    "transport_krat": {"n": 6},
    "transport_bjs": {"n": 6},
    "transport_kra": {"n": 6},
    "f321_matches_oracle": {"order": 5},
    "f321_des_matches_oracle": {"order": 5},
    "f132x_matches_oracle": {"order": 5},
    "f132x_functional_eq": {"order": 6},
    "functional_eq": {"order": 6},
    "g_matches_oracle": {"order": 3, "v_max": 4},
    "g_at_v0": {"order": 5},
    "dual_identity": {"order": 3, "v_max": 4},
    "trivial1_identity": {"order": 3, "v_max": 4},
    "h_formulas": {"order": 3, "v_min": -4, "v_max": 4},
    "lemma_diag": {"order": 3, "y_min": -3, "y_max": 3, "v_min": -6, "v_max": 10},
    "involutions": {"n": 6},
    "weak_exc_shift": {"n": 6},
}


def test_small_parameters_cover_catalogue():
    assert set(SMALL) == set(CHECKS)


@pytest.mark.parametrize("check_id", sorted(SMALL))
def test_check_passes(check_id):
    report = run_check(check_id, **SMALL[check_id])
    print(f"A: {report.tostring()}")
    assert report.passed
    assert report.counterexample is None


@pytest.mark.parametrize("source", ["closed", "oracle"])
def test_lemma_diag_sources(source):
    params = dict(SMALL["lemma_diag"], source=source)
    assert run_check("lemma_diag", **params).passed


def test_lemma_diag_unknown_source():
    with pytest.raises(ValueError, match="Unknown lemma source"):
        run_check("lemma_diag", **dict(SMALL["lemma_diag"], source="guess"))


def test_wrong_closed_form_is_caught(monkeypatch):
    # Catalan carries no x, so every fixed point goes missing
    monkeypatch.setattr(series_forms, "f132_x", series_forms.catalan)
    report = run_check("f132x_matches_oracle", order=4)
    print(f"A: {report.tostring()}")
    assert report.verdict == "fail"
    assert report.counterexample.startswith("coefficient of")
    assert report.left != report.right


def test_wrong_bijection_is_caught(monkeypatch):
    kra = bijections.kra
    monkeypatch.setattr(bijections, "rs", kra)
    report = run_check("transport_rs", n=4)
    print(f"A: {report.tostring()}")
    assert report.verdict == "fail"
    assert report.counterexample is not None


def test_wrong_series_breaks_functional_equation(monkeypatch):
    f321 = series_forms.f321
    monkeypatch.setattr(series_forms, "f321", lambda order: f321(order).scale(2))
    assert not run_check("functional_eq", order=4).passed


def _with_edge_term(build, offset):
    def corrupted(order, offset_max):
        # off by one on the last offset place only, like a truncation artifact
        edge = Series.monomial(Monomial.of(**{offset: offset_max}))
        return build(order, offset_max) + edge

    return corrupted


@pytest.mark.parametrize(
    "check_id, name, offset, expected",
    [
        ("g_matches_oracle", "g_conj", "v", "G widened window at"),
        ("dual_identity", "g_dual", "v", "G_dual widened window at"),
        ("trivial1_identity", "g_tail", "v", "G_tail widened window at"),
        ("h_formulas", "h3", "y", "H3 widened window at"),
    ],
)
def test_window_dependent_error_is_caught(
    monkeypatch, check_id, name, offset, expected
):
    forms = dict(series_forms.CLOSED_FORMS)
    forms[name] = forms[name]._replace(build=_with_edge_term(forms[name].build, offset))
    monkeypatch.setattr(series_forms, "CLOSED_FORMS", forms)
    report = run_check(check_id, **SMALL[check_id])
    print(f"A: {report.tostring()}")
    assert not report.passed
    assert report.counterexample.startswith(expected)


@pytest.mark.parametrize(
    "n, expected",
    [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14), (7, 429), (12, 208012)],
)
def test_catalan_number(n, expected):
    assert checks._catalan_number(n) == expected


def test_parameters_for():
    assert parameters_for("g_matches_oracle") == {"order": 7, "v_max": 9}
    assert parameters_for("theorem_main", n=3) == {"n": 3}
    with pytest.raises(ValueError, match="Unknown check"):
        parameters_for("theorem_minor")
    with pytest.raises(ValueError, match="has no parameter"):
        parameters_for("theorem_main", order=3)


def test_report_text_and_json():
    report = CheckReport(
        "theorem_main", {"n": 3}, "fail", "n=3 (fp,exc)=(0, 1)", "1", "2"
    )
    assert not report.passed
    assert report.tostring() == (
        "theorem_main n=3: FAIL\n  at n=3 (fp,exc)=(0, 1): 1 vs 2"
    )
    data = json.loads(report.tojson())
    assert data["verdict"] == "fail"
    assert data["parameters"] == {"n": 3}
    assert data["counterexample"] == "n=3 (fp,exc)=(0, 1)"


def test_run_all_applies_overrides_where_they_exist():
    reports = run_all(n=4, order=3)
    assert [r.check_id for r in reports] == list(CHECKS) + ["lemma_diag"]
    assert reports[-1].parameters["source"] == "oracle"
    for report in reports:
        assert report.parameters.get("n", 4) == 4
        assert report.parameters.get("order", 3) == 3
        assert report.passed, report.tostring()
