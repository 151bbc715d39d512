from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from egotrans.metrics import evaluate, render_table
from egotrans.synth import ANOMALY, NORMAL


def test_perfect_prediction_table_config():
    truth = [ANOMALY] * 25 + [NORMAL] * 475
    report = evaluate(truth, truth)
    for cls in (ANOMALY, NORMAL):
        m = report.per_class[cls]
        assert m.precision == m.recall == m.f1 == 1.0
    assert report.accuracy == 1.0
    assert report.per_class[ANOMALY].support == 25
    assert report.per_class[NORMAL].support == 475
    assert report.total == 500


def test_all_normal_prediction_zeroes_anomaly_row():
    truth = [ANOMALY] * 5 + [NORMAL] * 95
    predicted = [NORMAL] * 100
    report = evaluate(predicted, truth)
    m = report.per_class[ANOMALY]
    assert m.precision == 0.0 and m.recall == 0.0 and m.f1 == 0.0
    # accuracy still looks great, which is exactly why it is not the headline
    assert report.accuracy == 0.95


def test_balanced_confusion():
    truth = [ANOMALY, ANOMALY, NORMAL, NORMAL]
    predicted = [ANOMALY, NORMAL, ANOMALY, NORMAL]
    report = evaluate(predicted, truth)
    m = report.per_class[ANOMALY]
    assert m.precision == 0.5 and m.recall == 0.5 and m.f1 == 0.5
    assert report.accuracy == 0.5


def test_swapping_positive_class_swaps_rows():
    truth = [ANOMALY] * 3 + [NORMAL] * 7
    predicted = [ANOMALY, NORMAL, ANOMALY] + [NORMAL] * 5 + [ANOMALY] * 2
    report = evaluate(predicted, truth)
    flip = {ANOMALY: NORMAL, NORMAL: ANOMALY}
    flipped = evaluate([flip[p] for p in predicted], [flip[t] for t in truth])
    assert report.per_class[ANOMALY] == flipped.per_class[NORMAL]
    assert report.per_class[NORMAL] == flipped.per_class[ANOMALY]
    assert report.accuracy == flipped.accuracy


def test_validation():
    with pytest.raises(ValueError):
        evaluate([NORMAL], [NORMAL, NORMAL])
    with pytest.raises(ValueError):
        evaluate([], [])
    with pytest.raises(ValueError):
        evaluate(["weird"], [NORMAL])


@given(
    st.lists(
        st.tuples(
            st.sampled_from([ANOMALY, NORMAL]), st.sampled_from([ANOMALY, NORMAL])
        ),
        min_size=1,
        max_size=60,
    )
)
def test_f1_between_precision_and_recall(pairs):
    predicted = [p for p, _ in pairs]
    truth = [t for _, t in pairs]
    report = evaluate(predicted, truth)
    for cls in (ANOMALY, NORMAL):
        m = report.per_class[cls]
        if m.precision + m.recall > 0:
            assert min(m.precision, m.recall) - 1e-12 <= m.f1
            assert m.f1 <= max(m.precision, m.recall) + 1e-12
        else:
            assert m.f1 == 0.0
    assert report.per_class[ANOMALY].support + report.per_class[
        NORMAL
    ].support == report.total


def test_report_json_and_table_render():
    truth = [ANOMALY] * 2 + [NORMAL] * 8
    report = evaluate(truth, truth, config={"eps": 0.5}, notes=["note"])
    obj = report.to_json_obj()
    assert json.loads(json.dumps(obj)) == obj
    assert obj["config"] == {"eps": 0.5}
    assert obj["notes"] == ["note"]
    table = render_table(report)
    assert "anomaly" in table and "normal" in table and "accuracy" in table
    assert "1.00" in table
