"""Per-class precision/recall/F1 report for anomaly detection runs.

The report keeps full-precision values and the complete effective
configuration that produced the predictions, so a result is reproducible
from its own report file.  All 0/0 ratios are defined as 0: a classifier
that never predicts a class gets precision 0 for it, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .synth import ANOMALY, NORMAL

CLASSES = (ANOMALY, NORMAL)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class EvalReport:
    per_class: dict[str, ClassMetrics]
    accuracy: float
    total: int
    config: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "classes": {
                name: {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                }
                for name, m in self.per_class.items()
            },
            "accuracy": self.accuracy,
            "total": self.total,
            "config": self.config,
            "notes": list(self.notes),
        }


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def evaluate(
    predicted: Sequence[str],
    truth: Sequence[str],
    config: dict | None = None,
    notes: Sequence[str] = (),
) -> EvalReport:
    """Score predictions against ground truth labels."""
    if len(predicted) != len(truth):
        raise ValueError(
            f"predicted has {len(predicted)} labels, truth has {len(truth)}"
        )
    if not truth:
        raise ValueError("cannot evaluate zero points")
    for lab in (*predicted, *truth):
        if lab not in CLASSES:
            raise ValueError(f"labels must be in {CLASSES}, got {lab!r}")

    per_class = {}
    correct = sum(p == t for p, t in zip(predicted, truth))
    for cls in CLASSES:
        tp = sum(p == cls and t == cls for p, t in zip(predicted, truth))
        fp = sum(p == cls and t != cls for p, t in zip(predicted, truth))
        fn = sum(p != cls and t == cls for p, t in zip(predicted, truth))
        precision = _safe_div(tp, tp + fp)
        recall = _safe_div(tp, tp + fn)
        f1 = _safe_div(2 * precision * recall, precision + recall)
        per_class[cls] = ClassMetrics(
            precision=precision,
            recall=recall,
            f1=f1,
            support=sum(t == cls for t in truth),
        )
    return EvalReport(
        per_class=per_class,
        accuracy=correct / len(truth),
        total=len(truth),
        config=dict(config or {}),
        notes=list(notes),
    )


def render_table(report: EvalReport) -> str:
    """Human-readable summary table (values rounded only for display)."""
    lines = []
    header = f"{'':>10}  {'precision':>9}  {'recall':>9}  {'f1':>9}  {'support':>9}"
    lines.append(header)
    for cls in CLASSES:
        m = report.per_class[cls]
        lines.append(
            f"{cls:>10}  {m.precision:>9.2f}  {m.recall:>9.2f}  "
            f"{m.f1:>9.2f}  {m.support:>9d}"
        )
    lines.append(
        f"{'accuracy':>10}  {'':>9}  {'':>9}  {report.accuracy:>9.2f}  "
        f"{report.total:>9d}"
    )
    return "\n".join(lines)
