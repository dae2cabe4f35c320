"""Finite-dimensional Artinian local algebras.

An algebra is stored by a monomial-tagged k-basis (basis[0] = 1) together
with the multiplication-by-variable matrices.  Monomial ideals take a fast
path through standard monomials; general relations are handled by row
reduction of truncated relation multiples.  Every build is certified:
action matrices commute, are nilpotent, and annihilate the relations.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

from .field import FieldSpec
from .matrix import SparseMatrix, column_space_basis
from .presentation import Presentation, parse_presentation


class AlgebraBuildError(ValueError):
    pass


def _monomials_up_to(nvars: int, max_deg: int):
    """All exponent tuples of total degree <= max_deg, by (degree, lex)."""
    out = []
    for deg in range(max_deg + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), deg):
            expo = [0] * nvars
            for v in combo:
                expo[v] += 1
            out.append(tuple(expo))
    # stable order inside each degree block
    out.sort(key=lambda m: (sum(m), m))
    return out


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass
class HilbertData:
    """Dimensions of the successive powers' quotients m^j / m^(j+1)."""
    dims: list

    @property
    def total(self) -> int:
        return sum(self.dims)


class FiniteLocalAlgebra:
    """Artinian local k-algebra with distinguished maximal ideal and socle."""

    def __init__(self, presentation: Presentation, basis, action, socle_basis,
                 hilbert: HilbertData):
        self.presentation = presentation
        self.field: FieldSpec = presentation.field
        self.basis = basis  # list of exponent tuples, basis[0] == (0,...,0)
        self.dim = len(basis)
        self.action = action  # one dim x dim SparseMatrix per variable
        self.socle_basis = socle_basis  # SparseMatrix, columns span the socle
        self.hilbert = hilbert
        self.embedding_dimension = presentation.nvars
        self._mono_action_cache: dict = {}

    @property
    def e(self) -> int:
        return self.embedding_dimension

    @property
    def maximal_ideal_indices(self):
        return list(range(1, self.dim))

    def monomial_action(self, mono) -> SparseMatrix:
        """Multiplication by the monomial x^mono as a dim x dim matrix."""
        mono = tuple(mono)
        cached = self._mono_action_cache.get(mono)
        if cached is not None:
            return cached
        m = SparseMatrix.identity(self.dim, self.field)
        for v, exp in enumerate(mono):
            for _ in range(exp):
                m = self.action[v].matmul(m)
        self._mono_action_cache[mono] = m
        return m

    def element_action(self, poly: dict) -> SparseMatrix:
        """Multiplication matrix of an algebra element given as {monomial: int coeff}."""
        out = SparseMatrix.zeros(self.dim, self.dim, self.field)
        for mono, coeff in poly.items():
            out = out.add(self.monomial_action(mono).scale(self.field.of(coeff)))
        return out

    def hash(self) -> str:
        text = self.presentation.canonical_text()
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def describe(self) -> str:
        pres = self.presentation
        return (f"{pres.field}[{','.join(pres.variables)}]"
                f", dim {self.dim}, e = {self.e}")

    def __repr__(self) -> str:
        return f"FiniteLocalAlgebra({self.describe()})"


# -- construction ------------------------------------------------------

def _standard_monomial_basis(pres: Presentation):
    """Basis for a monomial ideal: monomials divisible by no generator."""
    gens = []
    for rel in pres.relations:
        (mono, coeff), = rel.items()
        if pres.field.is_prime_field and coeff % pres.field.characteristic == 0:
            continue
        gens.append(mono)
    nvars = pres.nvars
    for v in range(nvars):
        if not any(all(e == 0 for i, e in enumerate(g) if i != v) and g[v] > 0
                   for g in gens):
            raise AlgebraBuildError(
                f"no pure power of {pres.variables[v]} among the relations: "
                "increase truncation_degree or ideal not Artinian")
    basis = []
    seen = set()
    frontier = [(0,) * nvars]
    seen.add(frontier[0])
    while frontier:
        nxt = []
        for mono in frontier:
            basis.append(mono)
            for v in range(nvars):
                cand = tuple(e + (1 if i == v else 0) for i, e in enumerate(mono))
                if cand in seen:
                    continue
                seen.add(cand)
                if not any(_divides(g, cand) for g in gens):
                    nxt.append(cand)
        frontier = nxt
    basis.sort(key=lambda m: (sum(m), m))
    return basis, gens


def _monomial_actions(pres: Presentation, basis, gens):
    F = pres.field
    index = {m: i for i, m in enumerate(basis)}
    action = []
    one = F.one()
    for v in range(pres.nvars):
        m = SparseMatrix.zeros(len(basis), len(basis), F)
        for j, mono in enumerate(basis):
            prod = tuple(e + (1 if i == v else 0) for i, e in enumerate(mono))
            i = index.get(prod)
            if i is not None:
                m.rows[i][j] = one
        action.append(m)
    return action


def _general_basis_and_actions(pres: Presentation):
    """Row-reduce truncated relation multiples; basis = free monomial columns."""
    F = pres.field
    nvars = pres.nvars
    D = pres.truncation_degree
    monos = _monomials_up_to(nvars, D)
    col_of = {m: j for j, m in enumerate(monos)}
    rows = []
    for rel in pres.relations:
        mindeg = min(sum(m) for m in rel)
        for mult in _monomials_up_to(nvars, D - mindeg):
            row = {}
            for mono, coeff in rel.items():
                prod = _mono_mul(mult, mono)
                if sum(prod) <= D:
                    j = col_of[prod]
                    c = F.add(row.get(j, F.zero()), F.of(coeff))
                    if F.is_zero(c):
                        row.pop(j, None)
                    else:
                        row[j] = c
            if row:
                rows.append(row)
    rel_matrix = SparseMatrix(len(rows), len(monos), F, rows)
    res = rel_matrix.rref()
    pivot_set = set(res.pivot_columns)
    basis = [monos[j] for j in range(len(monos)) if j not in pivot_set]
    if any(sum(m) >= D for m in basis):
        raise AlgebraBuildError(
            "increase truncation_degree or ideal not Artinian")
    reducer = {c: row for (c, row) in zip(res.pivot_columns, res.reduced_rows)}

    def reduce_vec(vec: dict) -> dict:
        out = dict(vec)
        for c in list(out):
            if c in reducer:
                coeff = out.pop(c)
                for cc, v in reducer[c].items():
                    if cc == c:
                        continue
                    nv = F.sub(out.get(cc, F.zero()), F.mul(coeff, v))
                    if F.is_zero(nv):
                        out.pop(cc, None)
                    else:
                        out[cc] = nv
        return out

    basis_index = {m: i for i, m in enumerate(basis)}
    action = []
    for v in range(nvars):
        m = SparseMatrix.zeros(len(basis), len(basis), F)
        for j, mono in enumerate(basis):
            prod = tuple(e + (1 if i == v else 0) for i, e in enumerate(mono))
            red = reduce_vec({col_of[prod]: F.one()})
            for c, val in red.items():
                m.rows[basis_index[monos[c]]][j] = val
        action.append(m)
    return basis, action


def _certify(pres: Presentation, basis, action):
    dim = len(basis)
    F = pres.field
    # pairwise commutativity
    for a in range(len(action)):
        for b in range(a + 1, len(action)):
            if action[a].matmul(action[b]) != action[b].matmul(action[a]):
                raise AlgebraBuildError(
                    f"action matrices for {pres.variables[a]} and "
                    f"{pres.variables[b]} do not commute")
    # nilpotency within dim steps
    for v, m in enumerate(action):
        power = m
        steps = 1
        while not power.is_zero():
            if steps > dim:
                raise AlgebraBuildError(
                    f"multiplication by {pres.variables[v]} is not nilpotent: "
                    "increase truncation_degree or ideal not Artinian")
            power = power.matmul(m)
            steps += 1
    # the relations must annihilate the regular representation
    for rel in pres.relations:
        acc = SparseMatrix.zeros(dim, dim, F)
        for mono, coeff in rel.items():
            part = SparseMatrix.identity(dim, F)
            for v, exp in enumerate(mono):
                for _ in range(exp):
                    part = action[v].matmul(part)
            acc = acc.add(part.scale(F.of(coeff)))
        if not acc.is_zero():
            raise AlgebraBuildError("relation does not vanish on the built algebra")


def _hilbert_data(dim, action, field) -> HilbertData:
    # successive spans: m^(j+1) is spanned by the variable images of m^j
    cur = SparseMatrix.from_columns(
        dim, field, [{i: field.one()} for i in range(1, dim)])
    spans = []
    cur_rank = cur.rref().rank if cur.ncols else 0
    spans.append(cur_rank)
    while cur_rank > 0:
        nxt_cols = []
        for a in action:
            prod = a.matmul(cur)
            for j in range(prod.ncols):
                col = prod.column(j)
                if col:
                    nxt_cols.append(col)
        cur = SparseMatrix.from_columns(dim, field, nxt_cols)
        cur, _ = column_space_basis(cur)  # re-basis to keep column counts flat
        cur_rank = cur.ncols
        spans.append(cur_rank)
    dims = [1]
    for j in range(len(spans) - 1):
        dims.append(spans[j] - spans[j + 1])
    return HilbertData(dims)


def build_algebra(pres: Presentation) -> FiniteLocalAlgebra:
    """Construct the quotient algebra with certified multiplication structure."""
    max_deg = pres.max_relation_degree()
    if max_deg > pres.truncation_degree:
        raise AlgebraBuildError(
            f"truncation degree {pres.truncation_degree} below relation degree {max_deg}")
    for ri, rel in enumerate(pres.relations):
        if any(sum(m) == 1 for m in rel):
            raise AlgebraBuildError(
                f"relation {ri + 1} has a linear term: relations must lie in "
                "the square of the maximal ideal")
    if pres.is_monomial():
        basis, gens = _standard_monomial_basis(pres)
        action = _monomial_actions(pres, basis, gens)
    else:
        basis, action = _general_basis_and_actions(pres)
    if not basis or sum(basis[0]) != 0:
        raise AlgebraBuildError("degenerate algebra: no unit in the basis")
    _certify(pres, basis, action)
    dim = len(basis)
    stacked = action[0]
    for a in action[1:]:
        stacked = stacked.vstack(a)
    socle = stacked.rref().kernel_basis if pres.nvars else SparseMatrix.identity(dim, pres.field)
    hilbert = _hilbert_data(dim, action, pres.field)
    if len(hilbert.dims) > 1 and hilbert.dims[1] != pres.nvars:
        raise AlgebraBuildError(
            "embedding dimension differs from the variable count; "
            "a relation eliminates a variable")
    if dim > 1 and len(hilbert.dims) == 1:
        raise AlgebraBuildError("inconsistent power filtration")
    return FiniteLocalAlgebra(pres, basis, action, socle, hilbert)


def algebra_from_text(text: str) -> FiniteLocalAlgebra:
    return build_algebra(parse_presentation(text))


def socle(A: FiniteLocalAlgebra):
    """Basis vectors (as dicts) of the joint kernel of the variable actions."""
    return [A.socle_basis.column(j) for j in range(A.socle_basis.ncols)]


def gorenstein_test(A: FiniteLocalAlgebra) -> bool:
    return A.socle_basis.ncols == 1


def hypersurface_test(A: FiniteLocalAlgebra) -> bool:
    """True iff the first Koszul homology of the algebra has dimension <= 1."""
    from .koszul import koszul_profile
    from .modules import regular_module
    profile = koszul_profile(regular_module(A))
    return (profile.h[1] if len(profile.h) > 1 else 0) <= 1


def fibre_product(S: FiniteLocalAlgebra, T: FiniteLocalAlgebra) -> FiniteLocalAlgebra:
    """Pullback of the two residue maps, as a quotient presentation.

    Variables are concatenated; the relations are those of the factors plus
    all cross products of one variable from each side.
    """
    if S.field != T.field:
        raise AlgebraBuildError("fibre product requires a common field")
    if S.e == 0 or T.e == 0:
        raise AlgebraBuildError("fibre product factors must differ from the field")
    ps, pt = S.presentation, T.presentation
    overlap = set(ps.variables) & set(pt.variables)
    if overlap:
        raise AlgebraBuildError(f"variable names must be disjoint: {sorted(overlap)}")
    variables = list(ps.variables) + list(pt.variables)
    ns, nt = len(ps.variables), len(pt.variables)

    def lift_s(mono):
        return tuple(mono) + (0,) * nt

    def lift_t(mono):
        return (0,) * ns + tuple(mono)

    relations = []
    for rel in ps.relations:
        relations.append({lift_s(m): c for m, c in rel.items()})
    for rel in pt.relations:
        relations.append({lift_t(m): c for m, c in rel.items()})
    for i in range(ns):
        for j in range(nt):
            mono = tuple(1 if x == i else 0 for x in range(ns)) + \
                tuple(1 if x == j else 0 for x in range(nt))
            relations.append({mono: 1})
    max_deg = max(sum(m) for rel in relations for m in rel)
    pres = Presentation(S.field, variables, relations, 2 + max_deg)
    R = build_algebra(pres)
    if R.dim != S.dim + T.dim - 1:
        raise AlgebraBuildError(
            f"fibre product dimension check failed: {R.dim} != {S.dim} + {T.dim} - 1")
    return R
