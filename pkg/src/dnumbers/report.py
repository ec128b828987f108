"""Combination reports: a stable document the CLI renders for humans or machines.

Machine output is JSON with sorted keys and shortest round-trip floats, so
identical inputs always produce byte-identical bytes and consumers recover the
exact computed weights.  Human output rounds to four decimals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import fsum


def fmt4(v: float) -> str:
    return f"{v:.4f}"


def fmt_subset(labels: tuple[str, ...]) -> str:
    return "{%s}" % ", ".join(labels)


@dataclass(frozen=True)
class ReportDocument:
    """What one combination produced: rule, weights, diagnostics, input digests."""

    rule: str
    weights: tuple[tuple[tuple[str, ...], float], ...]
    diagnostics: dict
    inputs: dict

    def to_machine(self) -> str:
        payload = {
            "rule": self.rule,
            "weights": [
                {"subset": list(subset), "weight": weight}
                for subset, weight in self.weights
            ],
            "diagnostics": self.diagnostics,
            "inputs": self.inputs,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_human(self) -> str:
        lines = [f"rule: {self.rule}"]
        diag = self.diagnostics
        if diag.get("f") is not None:
            lines.append(f"f: {diag['f']}")
        if diag.get("strategy") is not None:
            lines.append(f"strategy: {diag['strategy']}")
        names = self.inputs.get("dnumbers") or []
        if names:
            lines.append("inputs: " + ", ".join(names))
        q_values = diag.get("q_values")
        if q_values:
            lines.append("Q values: " + ", ".join(fmt4(q) for q in q_values))
        if diag.get("k") is not None:
            lines.append(f"K = {fmt4(diag['k'])}")
        if diag.get("k_d") is not None:
            lines.append(f"K_D = {fmt4(diag['k_d'])}")
        if diag.get("d_t_total") is not None:
            lines.append(f"sum of D_t = {fmt4(diag['d_t_total'])}")
        if diag.get("f_value") is not None:
            lines.append(f"f(Q1, Q2) = {fmt4(diag['f_value'])}")
        lines.append("combined masses:")
        for subset, weight in self.weights:
            lines.append(f"  {fmt_subset(subset)}: {fmt4(weight)}")
        lines.append(f"total mass: {fmt4(fsum(w for _, w in self.weights))}")
        return "\n".join(lines) + "\n"
