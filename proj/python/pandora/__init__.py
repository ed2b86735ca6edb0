"""Exact solvers for Pandora's box with combinatorial inspection costs.

Rationals come back as ``fractions.Fraction``. Instances, strategies and
reports use the same JSON schema as the ``pandora`` command-line tool.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional

from . import _pandora
from ._pandora import CapabilityError, DomainError, ParseError

__all__ = [
    "CapabilityError",
    "DomainError",
    "ParseError",
    "Instance",
    "Solution",
    "solve",
    "evaluate",
    "gap",
    "validate",
    "reservation_value",
    "kappa",
    "discretize",
    "bernoullify",
    "hardness_params",
    "verify_family",
    "distinguish",
    "run_suite",
    "run_corpus",
    "canonical_names",
    "random_families",
]

canonical_names = _pandora.canonical_names
random_families = _pandora.random_families


def _q(text: str) -> Fraction:
    return Fraction(text)


def _str(x: Any) -> str:
    return str(Fraction(x))


class Instance:
    """An immutable instance held in canonical JSON form."""

    def __init__(self, data: dict | str):
        text = data if isinstance(data, str) else json.dumps(data)
        self._text = _pandora.normalize_instance(text)

    @classmethod
    def canonical(cls, name: str) -> "Instance":
        return cls(_pandora.canonical(name))

    @classmethod
    def random(cls, family: str, n: int, seed: int) -> "Instance":
        return cls(_pandora.random_instance(family, n, seed))

    @classmethod
    def load(cls, path: str | Path) -> "Instance":
        return cls(Path(path).read_text())

    @property
    def data(self) -> dict:
        return json.loads(self._text)

    @property
    def size(self) -> int:
        return len(self.data["boxes"])

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.data, indent=indent)

    def cost(self, boxes: Iterable[int]) -> Fraction:
        return _q(_pandora.eval_cost(self._text, list(boxes)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Instance) and self._text == other._text

    def __repr__(self) -> str:
        return f"Instance(n={self.size}, class={self.data.get('class', '')!r})"


@dataclass(frozen=True)
class Solution:
    utility: Fraction
    witness: dict
    unique: Optional[bool] = None


def solve(instance: Instance, cls: str = "adaptive", jobs: int = 1) -> Solution:
    """Optimal strategy within `cls`: adaptive, fixed, impulsive or weitzman."""
    r = json.loads(_pandora.solve(instance._text, cls, jobs))
    return Solution(_q(r["utility"]), r["witness"], r.get("unique"))


def evaluate(instance: Instance, strategy: dict) -> Fraction:
    """Expected utility of a fixed-order, impulsive or policy-tree strategy."""
    return _q(_pandora.evaluate(instance._text, json.dumps(strategy)))


def gap(instance: Instance, jobs: int = 1) -> dict:
    r = json.loads(_pandora.gap(instance._text, jobs))
    for key in ("opt_adaptive", "opt_fixed_order", "opt_impulsive"):
        if r.get(key) is not None:
            r[key] = _q(r[key])
    return r


def validate(instance: Instance, cls: str) -> dict:
    return json.loads(_pandora.validate(instance._text, cls))


def reservation_value(atoms: Iterable[tuple[Any, Any]], cost: Any) -> tuple[Fraction, bool]:
    """Reservation value of a box given as (value, probability) pairs."""
    box = {"atoms": [[_str(v), _str(p)] for v, p in atoms]}
    z, never_open = _pandora.reservation_value(json.dumps(box), _str(cost))
    return _q(z), never_open


def kappa(instance: Instance, epsilon: Any) -> Fraction:
    return _q(_pandora.kappa(instance._text, _str(epsilon)))


def discretize(instance: Instance, epsilon: Any) -> Instance:
    return Instance(_pandora.discretize(instance._text, _str(epsilon)))


def bernoullify(instance: Instance) -> tuple[Instance, dict]:
    r = json.loads(_pandora.bernoullify(instance._text))
    return Instance(r["instance"]), r["map"]


def hardness_params(n: int) -> dict:
    return json.loads(_pandora.hardness_params(n))


def verify_family(n: int) -> dict:
    return json.loads(_pandora.verify_family(n))


def distinguish(n: int = 4096, alpha: Optional[int] = None, beta: Optional[int] = None,
                trials: int = 10000, seed: int = 0) -> dict:
    return json.loads(_pandora.distinguish(n, alpha, beta, trials, seed))


def run_suite(name: str, trials: int, seed: int = 42, jobs: int = 1) -> dict:
    return json.loads(_pandora.run_suite(name, trials, seed, jobs))


def run_corpus() -> dict:
    return json.loads(_pandora.run_corpus())
