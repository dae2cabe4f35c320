"""Seeded random monomial-algebra sampler.

Samples Artinian monomial quotients k[x_1..x_e]/I where I is generated by
an antichain of monomials that always contains a pure power of every
variable (so the quotient is finite-dimensional and ``build_algebra``
succeeds).  Streams are fully determined by the seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterator, Optional

from .algebra import FiniteLocalAlgebra, build_algebra
from .field import GF, QQ, FieldSpec
from .presentation import Presentation


class ScanConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    """Parameters for one sampling run."""

    field: FieldSpec
    e: int
    max_degree: int
    min_extra_gens: int
    max_extra_gens: int
    samples: int
    seed: int
    checks: tuple = ("betti", "golod", "star", "burch", "exceptional", "fibre")
    max_dim: Optional[int] = None

    def __post_init__(self):
        if self.e < 1:
            raise ScanConfigError("e must be positive")
        if self.max_degree < 2:
            raise ScanConfigError("max_degree must be at least 2")
        if not 0 <= self.min_extra_gens <= self.max_extra_gens:
            raise ScanConfigError("generator-count range must be 0 <= lo <= hi")
        if self.samples < 1:
            raise ScanConfigError("samples must be positive")
        if self.max_dim is not None and self.max_dim < 1:
            raise ScanConfigError("max_dim must be positive")

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "e": self.e,
            "max_degree": self.max_degree,
            "extra_gens": [self.min_extra_gens, self.max_extra_gens],
            "samples": self.samples,
            "seed": self.seed,
            "checks": list(self.checks),
            "max_dim": self.max_dim,
        }


def _parse_field_text(text: str) -> FieldSpec:
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("F"):
        try:
            return GF(int(text[1:].lstrip("_ ")))
        except ValueError as exc:
            raise ScanConfigError(f"bad field {text!r}: {exc}") from None
    raise ScanConfigError(f"bad field {text!r}; use Q or F<p>")


def config_from_dict(data: dict) -> ScanConfig:
    try:
        lo, hi = data.get("extra_gens", [0, 3])
        return ScanConfig(
            field=_parse_field_text(data.get("field", "F101")),
            e=int(data["e"]),
            max_degree=int(data.get("max_degree", 3)),
            min_extra_gens=int(lo),
            max_extra_gens=int(hi),
            samples=int(data.get("samples", 10)),
            seed=int(data.get("seed", 1)),
            checks=tuple(data.get("checks",
                                  ("betti", "golod", "star", "burch",
                                   "exceptional", "fibre"))),
            max_dim=(int(data["max_dim"]) if data.get("max_dim") else None),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ScanConfigError):
            raise
        raise ScanConfigError(f"invalid scan config: {exc}") from None


def load_config(path: str) -> ScanConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScanConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ScanConfigError("config must be a JSON object")
    return config_from_dict(data)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _comparable(a, b) -> bool:
    return _divides(a, b) or _divides(b, a)


def sample_presentation(config: ScanConfig, rng: random.Random) -> Presentation:
    """One random monomial presentation: pure powers plus a random antichain."""
    e, d = config.e, config.max_degree
    variables = [f"x{i + 1}" for i in range(e)] if e > 3 else ["x", "y", "z"][:e]
    powers = [rng.randint(2, d) for _ in range(e)]
    gens = []
    for i, p in enumerate(powers):
        mono = [0] * e
        mono[i] = p
        gens.append(tuple(mono))
    candidates = [m for m in product(*(range(d + 1) for _ in range(e)))
                  if 2 <= sum(m) <= d and m not in gens]
    rng.shuffle(candidates)
    target = rng.randint(config.min_extra_gens, config.max_extra_gens)
    for mono in candidates:
        if target == 0:
            break
        if any(_comparable(mono, g) for g in gens):
            continue
        gens.append(mono)
        target -= 1
    relations = [{g: 1} for g in gens]
    trunc = max(sum(g) for g in gens) + 2
    return Presentation(config.field, variables, relations, trunc)


def sample_algebras(config: ScanConfig) -> Iterator[tuple]:
    """Yield ``(index, attempt_seed, algebra)`` for ``config.samples`` algebras.

    Samples whose quotient dimension exceeds ``max_dim`` are rejected and
    redrawn; the rejection loop is part of the deterministic stream.
    """
    attempt = 0
    produced = 0
    while produced < config.samples:
        attempt_seed = config.seed * (2 ** 32) + attempt
        rng = random.Random(attempt_seed)
        attempt += 1
        pres = sample_presentation(config, rng)
        algebra = build_algebra(pres)
        if config.max_dim is not None and algebra.dim > config.max_dim:
            continue
        yield produced, attempt_seed, algebra
        produced += 1
