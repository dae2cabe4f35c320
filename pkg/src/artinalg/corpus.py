"""Bundled example corpus with expected-result annotations.

Each entry records a presentation (or a fibre-product recipe), a
provenance tag, and the verdicts the build is expected to reproduce.
``run_entry`` re-computes every annotated check and reports mismatches,
so the corpus doubles as a regression gate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .algebra import FiniteLocalAlgebra, algebra_from_text, build_algebra, fibre_product
from .field import FieldSpec
from .modules import resolution_of_k
from .presentation import parse_presentation
from .structure import (
    DEFAULT_SEED, burch_depth_zero_test, exceptional_test, simple_summand_test,
    star_property_scan,
)


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    text: str                      # ring text, or "" for a fibre product
    provenance: str
    expected: dict
    factor_texts: Optional[tuple] = None  # (s_text, t_text) for fibre products

    def build(self, field: Optional[FieldSpec] = None) -> FiniteLocalAlgebra:
        if self.factor_texts is not None:
            s, t = (_build_text(txt, field) for txt in self.factor_texts)
            return fibre_product(s, t)
        return _build_text(self.text, field)


def _build_text(text: str, field: Optional[FieldSpec]) -> FiniteLocalAlgebra:
    pres = parse_presentation(text)
    if field is not None:
        pres = replace(pres, field=field)
    return build_algebra(pres)


CORPUS = (
    CorpusEntry(
        id="R1",
        text="field Q; vars x, y, z; rels x^3, y^3, z^3, x*y, x*z^2;",
        provenance="worked example: simple summand first appears at syzygy 3",
        expected={"simple_summand": {2: False, 3: True}},
    ),
    CorpusEntry(
        id="R2",
        text="field F 101; vars x, y, z; rels x^3, y^3, z^3, x^2*y, y*z^2;",
        provenance="worked example: simple summand first appears at syzygy 4",
        expected={"simple_summand": {2: False, 3: False, 4: True}},
    ),
    CorpusEntry(
        id="R3",
        text="field Q; vars x, z; rels x^4, x^2*z^2, z^4;",
        provenance="counterexample: summand behaviour without the Burch property",
        expected={"simple_summand": {2: False, 3: True}, "burch": False},
    ),
    CorpusEntry(
        id="R4",
        text="",
        provenance="fibre product of two complete intersections: exceptional, "
                   "maximal ideal splits off the second syzygy pair",
        expected={"beta1": 4, "exceptional": True, "star_pair": [1, 2]},
        factor_texts=("field F 101; vars x, y; rels x^2, y^2;",
                      "field F 101; vars z, w; rels z^2, w^2;"),
    ),
)


def entry_by_id(entry_id: str) -> CorpusEntry:
    for entry in CORPUS:
        if entry.id == entry_id:
            return entry
    raise KeyError(f"no corpus entry {entry_id!r}")


def run_entry(entry: CorpusEntry, field: Optional[FieldSpec] = None,
              seed: int = DEFAULT_SEED) -> dict:
    """Re-check every annotation of one entry.

    Returns ``{"id", "ok", "checks": [(name, expected, got, ok), ...]}``.
    """
    algebra = entry.build(field)
    checks = []
    exp = entry.expected
    if "simple_summand" in exp:
        top = max(exp["simple_summand"])
        res = resolution_of_k(algebra, top + 1)
        for n, want in sorted(exp["simple_summand"].items()):
            got = simple_summand_test(res.syzygy(n)).ok
            checks.append((f"simple summand of syz_{n}(k)", want, got, got == want))
    if "burch" in exp:
        got = burch_depth_zero_test(algebra)
        checks.append(("burch", exp["burch"], got, got == exp["burch"]))
    if "beta1" in exp:
        got = resolution_of_k(algebra, 1).betti[1]
        checks.append(("beta_1(k)", exp["beta1"], got, got == exp["beta1"]))
    if "exceptional" in exp:
        got = exceptional_test(algebra, 4)
        checks.append(("exceptional", exp["exceptional"], got,
                       got == exp["exceptional"]))
    if "star_pair" in exp:
        a, b = exp["star_pair"]
        pairs = star_property_scan(algebra, b, seed=seed)
        got = (a, b) in pairs
        checks.append((f"star pair ({a},{b})", True, got, got))
    return {
        "id": entry.id,
        "field": str(algebra.field),
        "provenance": entry.provenance,
        "ok": all(c[3] for c in checks),
        "checks": [{"name": n, "expected": w, "got": g, "ok": o}
                   for n, w, g, o in checks],
    }


def run_corpus(field: Optional[FieldSpec] = None,
               seed: int = DEFAULT_SEED) -> list:
    return [run_entry(entry, field, seed) for entry in CORPUS]
