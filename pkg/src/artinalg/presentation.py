"""Ring presentation language: parsing and normalization.

Grammar (UTF-8, whitespace insignificant, "#" starts a line comment):

    file      := ["field" fieldspec ";"] "vars" ident ("," ident)* ";"
                 "rels" poly ("," poly)* ";" ["trunc" INT ";"]
    fieldspec := "Q" | "F" INT
    poly      := term (("+"|"-") term)*
    term      := INT | [INT "*"] factor ("*" factor)*
    factor    := ident ["^" INT]

The field section defaults to Q.  Polynomials are normalized to
{exponent_tuple: coefficient} with zero coefficients dropped.  A relation
with a nonzero constant term is rejected here; relations with linear terms
are rejected at algebra-build time, where the maximal-ideal structure is
known.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import FieldSpec, QQ, GF

Monomial = tuple  # exponent tuple, one slot per variable
Polynomial = dict  # {Monomial: coefficient}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass
class Presentation:
    field: FieldSpec
    variables: list
    relations: list  # list of Polynomial
    truncation_degree: int

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_monomial(self) -> bool:
        return all(len(rel) == 1 for rel in self.relations)

    def max_relation_degree(self) -> int:
        return max((sum(m) for rel in self.relations for m in rel), default=0)

    def canonical_text(self) -> str:
        """Round-trippable normal form, used for hashing."""
        parts = []
        if self.field.is_prime_field:
            parts.append(f"field F {self.field.characteristic};")
        else:
            parts.append("field Q;")
        parts.append("vars " + ",".join(self.variables) + ";")
        rels = []
        for rel in self.relations:
            terms = []
            for mono in sorted(rel):
                c = rel[mono]
                factors = [f"{self.variables[i]}^{e}" if e > 1 else self.variables[i]
                           for i, e in enumerate(mono) if e]
                body = "*".join(factors) if factors else "1"
                terms.append(f"{c}*{body}")
            rels.append("+".join(terms))
        parts.append("rels " + ",".join(rels) + ";")
        parts.append(f"trunc {self.truncation_degree};")
        return " ".join(parts)


# -- tokenizer ---------------------------------------------------------

_PUNCT = set(";,+-*^")


def _tokenize(text: str):
    tokens = []  # (kind, value, line, col)
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, msg: str):
        _, _, line, col = self.peek()
        raise ParseError(msg, line, col)

    def expect_punct(self, ch: str):
        kind, val, line, col = self.next()
        if kind != "punct" or val != ch:
            raise ParseError(f"expected {ch!r}, got {val or kind!r}", line, col)

    def expect_keyword(self, word: str):
        kind, val, line, col = self.next()
        if kind != "ident" or val != word:
            raise ParseError(f"expected {word!r}, got {val or kind!r}", line, col)

    def parse(self) -> Presentation:
        field = QQ
        kind, val, _, _ = self.peek()
        if kind == "ident" and val == "field":
            self.next()
            field = self._fieldspec()
            self.expect_punct(";")
        self.expect_keyword("vars")
        variables = self._ident_list()
        self.expect_punct(";")
        var_index = {v: i for i, v in enumerate(variables)}
        self.expect_keyword("rels")
        relations = [self._poly(var_index)]
        while self.peek()[:2] == ("punct", ","):
            self.next()
            relations.append(self._poly(var_index))
        self.expect_punct(";")
        trunc = None
        kind, val, _, _ = self.peek()
        if kind == "ident" and val == "trunc":
            self.next()
            trunc = self._int()
            self.expect_punct(";")
        if self.peek()[0] != "eof":
            self.error("trailing input")
        max_deg = max((sum(m) for rel in relations for m in rel), default=0)
        if trunc is None:
            trunc = 2 + max_deg
        if trunc < 2:
            self.error("trunc must be at least 2")
        return Presentation(field, variables, relations, trunc)

    def _fieldspec(self) -> FieldSpec:
        kind, val, line, col = self.next()
        if kind != "ident":
            raise ParseError("expected field name Q or F", line, col)
        if val == "Q":
            return QQ
        if val == "F":
            p = self._int()
            try:
                return GF(p)
            except ValueError as exc:
                raise ParseError(str(exc), line, col) from None
        raise ParseError(f"unknown field {val!r}", line, col)

    def _ident_list(self):
        names = []
        seen = set()
        while True:
            kind, val, line, col = self.next()
            if kind != "ident":
                raise ParseError("expected variable name", line, col)
            if val not in seen:
                names.append(val)
                seen.add(val)
            if self.peek()[:2] == ("punct", ","):
                self.next()
                continue
            return names

    def _int(self) -> int:
        kind, val, line, col = self.next()
        if kind != "int":
            raise ParseError("expected integer", line, col)
        return int(val)

    def _poly(self, var_index) -> Polynomial:
        nvars = len(var_index)
        poly: Polynomial = {}
        sign = 1
        first = True
        while True:
            if not first:
                kind, val, _, _ = self.peek()
                if kind == "punct" and val in "+-":
                    self.next()
                    sign = 1 if val == "+" else -1
                else:
                    break
            first = False
            coeff, mono = self._term(var_index, nvars)
            coeff *= sign
            sign = 1
            poly[mono] = poly.get(mono, 0) + coeff
        zero_mono = (0,) * nvars
        poly = {m: c for m, c in poly.items() if c != 0}
        if zero_mono in poly:
            self.error("constant-term relation")
        if not poly:
            self.error("relation is identically zero")
        return poly

    def _term(self, var_index, nvars):
        coeff = 1
        kind, val, _, _ = self.peek()
        if kind == "int":
            coeff = self._int()
            kind, val, _, _ = self.peek()
            if kind == "punct" and val == "*":
                self.next()
            else:
                return coeff, (0,) * nvars  # bare constant
        expo = [0] * nvars
        while True:
            kind, val, line, col = self.next()
            if kind != "ident":
                raise ParseError("expected variable in term", line, col)
            if val not in var_index:
                raise ParseError(f"unknown variable {val!r}", line, col)
            power = 1
            if self.peek()[:2] == ("punct", "^"):
                self.next()
                power = self._int()
            expo[var_index[val]] += power
            if self.peek()[:2] == ("punct", "*"):
                self.next()
                continue
            break
        return coeff, tuple(expo)


def parse_presentation(text: str) -> Presentation:
    """Parse ring presentation text into a normalized Presentation."""
    return _Parser(text).parse()
