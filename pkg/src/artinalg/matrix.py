"""Sparse exact matrices and the row-reduction workhorse.

Matrices are stored row-major as dicts {col: value} with no explicit zeros.
`rref` returns the rank, the pivot columns, and a kernel basis in reduced
form: the kernel vector attached to a free column f has entry 1 at f and
support otherwise only on pivot columns.  Since the reduced row echelon
form of a matrix is unique, this output does not depend on pivot-row
choices, which keeps syzygy bases reproducible across runs.

For prime fields, small or dense matrices are eliminated with a vectorized
numpy routine; large sparse ones use dict-based elimination with a
sparsest-row pivot heuristic to limit fill-in.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import FieldSpec, FieldMismatchError

# dense fallback threshold (cells); beyond this the sparse path is used
_DENSE_CELLS = 60_000_000
_RREF_BLOCK = 64


def _mod_matmul(x, y, p):
    """Exact x @ y mod p for int64 arrays with entries in [0, p)."""
    inner = x.shape[1]
    if inner == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    if (p - 1) * (p - 1) * inner < 2 ** 53:
        prod = np.rint(x.astype(np.float64) @ y.astype(np.float64))
        return prod.astype(np.int64) % p
    return (x @ y) % p


def _dense_rref_modp_inplace(A, p):
    """Reduced row echelon form of an int64 matrix mod p, in place.

    Blocked elimination: each panel gathers up to _RREF_BLOCK pivots with
    immediate updates only on the columns it scans, then applies the
    accumulated multipliers to the trailing columns with one matrix
    product; a symmetric blocked backward sweep clears entries above the
    pivots.  Returns (rank, pivot_columns).

    Works on int64 or float64 storage.  Float64 is exact as long as
    (p-1)^2 * _RREF_BLOCK < 2^53 (the caller's choice) and avoids the
    int->float->int round-trips of the modular matrix product.
    """
    n, m = A.shape
    fastf = A.dtype == np.float64
    piv_cols = []
    r = 0
    c0 = 0
    while c0 < m and r < n:
        c1 = min(c0 + _RREF_BLOCK, m)
        r0 = r
        L = np.zeros((n - r0, c1 - c0), dtype=A.dtype)
        inv_scale = []
        k = 0
        for c in range(c0, c1):
            if r == n:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                A[[r, pr]] = A[[pr, r]]
                L[[r - r0, pr - r0]] = L[[pr - r0, r - r0]]
            inv = pow(int(A[r, c]), -1, p)
            inv_scale.append(inv)
            A[r, c:c1] = (A[r, c:c1] * inv) % p
            mult = A[r + 1:, c].copy()
            L[r + 1 - r0:, k] = mult
            if mult.any():
                A[r + 1:, c:c1] = (A[r + 1:, c:c1]
                                   - np.outer(mult, A[r, c:c1])) % p
            piv_cols.append(c)
            k += 1
            r += 1
        c0 = c1
        # apply the panel to the trailing columns
        if k and c0 < m:
            for t in range(k):
                row = (A[r0 + t, c0:] - L[t, :k] @ A[r0:r0 + k, c0:]) % p
                A[r0 + t, c0:] = (row * inv_scale[t]) % p
            tail = A[r0 + k:, c0:]
            if tail.size:
                if fastf:
                    tail -= L[k:, :k] @ A[r0:r0 + k, c0:]
                    tail %= p
                else:
                    A[r0 + k:, c0:] = (tail - _mod_matmul(
                        L[k:, :k], A[r0:r0 + k, c0:], p)) % p
    rank = r
    # backward sweep: clear entries above the pivots, highest panels first
    thi = rank
    while thi > 0:
        tlo = max(0, thi - _RREF_BLOCK)
        for t in range(thi - 2, tlo - 1, -1):
            cols = [piv_cols[s] for s in range(t + 1, thi)]
            mult = A[t, cols]
            if np.any(mult):
                A[t] = (A[t] - mult @ A[t + 1:thi]) % p
        if tlo:
            cols = [piv_cols[s] for s in range(tlo, thi)]
            u = A[:tlo, cols]
            if np.any(u):
                if fastf:
                    A[:tlo] -= u @ A[tlo:thi]
                    A[:tlo] %= p
                else:
                    A[:tlo] = (A[:tlo] - _mod_matmul(u, A[tlo:thi], p)) % p
        thi = tlo
    return rank, piv_cols


class DimensionMismatchError(ValueError):
    pass


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "field", "rows")

    def __init__(self, nrows: int, ncols: int, field: FieldSpec, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if rows is None:
            self.rows = [dict() for _ in range(nrows)]
        else:
            self.rows = rows

    # -- constructors --------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec) -> "SparseMatrix":
        return cls(nrows, ncols, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "SparseMatrix":
        one = field.one()
        return cls(n, n, field, [{i: one} for i in range(n)])

    @classmethod
    def from_dense(cls, entries, field: FieldSpec) -> "SparseMatrix":
        """Build from a list of lists of ints / Fractions."""
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise DimensionMismatchError("ragged rows")
            row = {}
            for j, v in enumerate(r):
                fv = field.of(v) if isinstance(v, int) else v
                if not field.is_zero(fv):
                    row[j] = fv
            rows.append(row)
        return cls(nrows, ncols, field, rows)

    @classmethod
    def from_triplets(cls, nrows, ncols, field, triplets) -> "SparseMatrix":
        m = cls(nrows, ncols, field)
        for i, j, v in triplets:
            fv = field.of(v) if isinstance(v, int) else v
            if not field.is_zero(fv):
                m.rows[i][j] = fv
        return m

    @classmethod
    def from_columns(cls, nrows, field, columns) -> "SparseMatrix":
        """columns: list of dicts {row: value}."""
        m = cls(nrows, len(columns), field)
        for j, col in enumerate(columns):
            for i, v in col.items():
                if not field.is_zero(v):
                    m.rows[i][j] = v
        return m

    # -- basic queries -------------------------------------------------
    def get(self, i: int, j: int):
        return self.rows[i].get(j, self.field.zero())

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def triplets(self):
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                yield i, j, v

    def copy(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, self.field,
                            [dict(r) for r in self.rows])

    def to_dense(self):
        z = self.field.zero()
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows == other.nrows and self.ncols == other.ncols
                and self.field == other.field and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols} over {self.field}, nnz={self.nnz()})"

    # -- arithmetic ----------------------------------------------------
    def _check_field(self, other: "SparseMatrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def add(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatchError("add: shape mismatch")
        F = self.field
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            row = dict(ra)
            for j, v in rb.items():
                s = F.add(row.get(j, F.zero()), v)
                if F.is_zero(s):
                    row.pop(j, None)
                else:
                    row[j] = s
            rows.append(row)
        return SparseMatrix(self.nrows, self.ncols, F, rows)

    def sub(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.add(other.scale(self.field.of(-1)))

    def scale(self, c) -> "SparseMatrix":
        F = self.field
        if F.is_zero(c):
            return SparseMatrix(self.nrows, self.ncols, F)
        rows = [{j: F.mul(c, v) for j, v in r.items()} for r in self.rows]
        return SparseMatrix(self.nrows, self.ncols, F, rows)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"matmul: {self.nrows}x{self.ncols} times {other.nrows}x{other.ncols}")
        F = self.field
        p = F.characteristic
        brows = other.rows
        rows = []
        for ra in self.rows:
            acc: dict = {}
            for k, v in ra.items():
                for j, w in brows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            if p:
                row = {j: s % p for j, s in acc.items() if s % p}
            else:
                row = {j: s for j, s in acc.items() if s != 0}
            rows.append(row)
        return SparseMatrix(self.nrows, other.ncols, F, rows)

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector {index: value}."""
        F = self.field
        p = F.characteristic
        acc: dict = {}
        for i, r in enumerate(self.rows):
            s = 0
            for j, v in r.items():
                if j in vec:
                    s += v * vec[j]
            if p:
                s %= p
            if s:
                acc[i] = s
        return acc

    def transpose(self) -> "SparseMatrix":
        rows = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return SparseMatrix(self.ncols, self.nrows, self.field, rows)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_field(other)
        if self.nrows != other.nrows:
            raise DimensionMismatchError("hstack: row count mismatch")
        off = self.ncols
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            row = dict(ra)
            for j, v in rb.items():
                row[j + off] = v
            rows.append(row)
        return SparseMatrix(self.nrows, self.ncols + other.ncols, self.field, rows)

    def vstack(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_field(other)
        if self.ncols != other.ncols:
            raise DimensionMismatchError("vstack: column count mismatch")
        rows = [dict(r) for r in self.rows] + [dict(r) for r in other.rows]
        return SparseMatrix(self.nrows + other.nrows, self.ncols, self.field, rows)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Kronecker product self (x) other."""
        self._check_field(other)
        F = self.field
        mb, nb = other.nrows, other.ncols
        out = SparseMatrix(self.nrows * mb, self.ncols * nb, F)
        for ia, ra in enumerate(self.rows):
            for ja, va in ra.items():
                for ib, rb in enumerate(other.rows):
                    orow = out.rows[ia * mb + ib]
                    for jb, vb in rb.items():
                        prod = F.mul(va, vb)
                        if not F.is_zero(prod):
                            orow[ja * nb + jb] = prod
        return out

    # -- elimination ---------------------------------------------------
    def rref(self) -> "RrefResult":
        """Rank, pivot columns, and kernel basis, exactly."""
        p = self.field.characteristic
        # dense path only for primes where float64 accumulation is exact;
        # larger primes would overflow int64 dot products as well
        if p and self.nrows and self.ncols \
                and (p - 1) ** 2 * _RREF_BLOCK < 2 ** 53:
            nz_cols = len({j for r in self.rows for j in r})
            if self.nrows * nz_cols <= _DENSE_CELLS:
                return self._rref_dense_modp()
        return self._rref_sparse()

    def _rref_sparse(self) -> "RrefResult":
        F = self.field
        p = F.characteristic
        rows = [dict(r) for r in self.rows]
        col2rows: dict = {}
        for i, r in enumerate(rows):
            for j in r:
                col2rows.setdefault(j, set()).add(i)
        pivots: list = []  # (col, row)
        pivot_rows: set = set()
        for col in range(self.ncols):
            holders = col2rows.get(col)
            if not holders:
                continue
            cands = [i for i in holders if i not in pivot_rows]
            if not cands:
                continue
            pi = min(cands, key=lambda i: (len(rows[i]), i))
            prow = rows[pi]
            inv = F.inv(prow[col])
            if inv != F.one():
                for c in prow:
                    prow[c] = F.mul(inv, prow[c])
            for ri in list(holders):
                if ri == pi:
                    continue
                row = rows[ri]
                factor = row[col]
                if p:
                    for c, v in prow.items():
                        nv = (row.get(c, 0) - factor * v) % p
                        if nv:
                            if c not in row:
                                col2rows.setdefault(c, set()).add(ri)
                            row[c] = nv
                        elif c in row:
                            del row[c]
                            col2rows[c].discard(ri)
                else:
                    for c, v in prow.items():
                        nv = row.get(c, 0) - factor * v
                        if nv:
                            if c not in row:
                                col2rows.setdefault(c, set()).add(ri)
                            row[c] = nv
                        elif c in row:
                            del row[c]
                            col2rows[c].discard(ri)
            pivots.append((col, pi))
            pivot_rows.add(pi)
        pivot_cols = [c for c, _ in pivots]
        kernel = self._kernel_from_reduced(rows, pivots)
        reduced = [rows[pi] for _, pi in pivots]
        return RrefResult(len(pivots), pivot_cols, kernel, self, reduced)

    def _kernel_from_reduced(self, rows, pivots) -> "SparseMatrix":
        F = self.field
        pivot_col_set = {c for c, _ in pivots}
        free_cols = [j for j in range(self.ncols) if j not in pivot_col_set]
        cols = []
        for f in free_cols:
            vec = {f: F.one()}
            for c, pi in pivots:
                coeff = rows[pi].get(f)
                if coeff is not None:
                    vec[c] = F.neg(coeff)
            cols.append(vec)
        return SparseMatrix.from_columns(self.ncols, F, cols)

    def _rref_dense_modp(self) -> "RrefResult":
        p = self.field.characteristic
        # zero columns never carry a pivot and contribute only unit kernel
        # vectors, so drop them before the dense elimination
        nz_cols = sorted({j for r in self.rows for j in r})
        colmap = {j: t for t, j in enumerate(nz_cols)}
        dtype = (np.float64 if (p - 1) ** 2 * _RREF_BLOCK < 2 ** 53
                 else np.int64)
        A = np.zeros((self.nrows, len(nz_cols)), dtype=dtype)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                A[i, colmap[j]] = v
        rank, piv_compact = _dense_rref_modp_inplace(A, p)
        pivots_cols = [nz_cols[c] for c in piv_compact]
        pivot_col_set = set(pivots_cols)
        free_cols = [j for j in range(self.ncols) if j not in pivot_col_set]
        F = self.field
        neg = (-A[:rank]) % p
        cols = []
        for f in free_cols:
            vec = {f: 1}
            fc = colmap.get(f)
            if fc is not None:
                for ri in np.nonzero(neg[:, fc])[0].tolist():
                    vec[pivots_cols[ri]] = int(neg[ri, fc])
            cols.append(vec)
        kernel = SparseMatrix.from_columns(self.ncols, F, cols)
        reduced = []
        for ri in range(rank):
            nz = np.nonzero(A[ri])[0]
            reduced.append({nz_cols[int(j)]: int(A[ri, j]) for j in nz})
        return RrefResult(rank, pivots_cols, kernel, self, reduced)

    def rank(self) -> int:
        return self.rref().rank


@dataclass
class RrefResult:
    rank: int
    pivot_columns: list
    kernel_basis: SparseMatrix  # columns span the kernel
    matrix: SparseMatrix
    reduced_rows: list = None  # normalized pivot rows, in pivot-column order

    @property
    def nullity(self) -> int:
        return self.kernel_basis.ncols

    @property
    def free_columns(self) -> list:
        pset = set(self.pivot_columns)
        return [j for j in range(self.matrix.ncols) if j not in pset]


def rref(m: SparseMatrix) -> RrefResult:
    return m.rref()


def matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return a.matmul(b)


def direct_sum(blocks: list) -> SparseMatrix:
    """Block-diagonal assembly of square or rectangular matrices."""
    if not blocks:
        raise ValueError("direct_sum of nothing")
    F = blocks[0].field
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    out = SparseMatrix(nrows, ncols, F)
    ro = co = 0
    for b in blocks:
        if b.field != F:
            raise FieldMismatchError("direct_sum: mixed fields")
        for i, j, v in b.triplets():
            out.rows[ro + i][co + j] = v
        ro += b.nrows
        co += b.ncols
    return out


def column_space_basis(m: SparseMatrix):
    """Echelonized basis of the column space of m.

    Returns (basis, pivot_rows) where basis is nrows x rank, and
    basis[pivot_rows, :] is the identity, so coordinates of any vector in
    the span can be read off at the pivot rows.
    """
    res = m.transpose().rref()
    basis = SparseMatrix.from_columns(m.nrows, m.field, res.reduced_rows or [])
    return basis, list(res.pivot_columns)


def solve_column_space(basis: SparseMatrix, pivot_rows: list, target: SparseMatrix) -> SparseMatrix:
    """Coordinates of target's columns in the span of basis' columns.

    `pivot_rows` must index rows where basis restricts to the identity
    (the free-column rows of an rref kernel basis).  The caller guarantees
    the targets lie in the span; this is just coordinate extraction.
    """
    out = SparseMatrix(basis.ncols, target.ncols, basis.field)
    for idx, r in enumerate(pivot_rows):
        out.rows[idx] = dict(target.rows[r])
    return out


def solve_linear(a: SparseMatrix, b: SparseMatrix):
    """One solution X of a @ X = b (free variables set to 0), or None."""
    if a.nrows != b.nrows:
        raise DimensionMismatchError("solve_linear: row mismatch")
    res = a.hstack(b).rref()
    x = SparseMatrix.zeros(a.ncols, b.ncols, a.field)
    for p, row in zip(res.pivot_columns, res.reduced_rows):
        if p >= a.ncols:
            return None  # a pivot in the right-hand block: inconsistent
        for c, v in row.items():
            if c >= a.ncols:
                x.rows[p][c - a.ncols] = v
    return x


def invert(a: SparseMatrix):
    """Inverse of a square matrix, or None if singular."""
    if a.nrows != a.ncols:
        raise DimensionMismatchError("invert: matrix not square")
    x = solve_linear(a, SparseMatrix.identity(a.nrows, a.field))
    if x is None or a.matmul(x) != SparseMatrix.identity(a.nrows, a.field):
        return None
    return x


def dense_modp_array(m: SparseMatrix):
    """Dense int64 array of a prime-field matrix, or None if oversized."""
    if not m.field.is_prime_field or m.nrows * m.ncols > _DENSE_CELLS \
            or not m.ncols or not m.nrows:
        return None
    out = np.zeros((m.nrows, m.ncols), dtype=np.int64)
    for i, r in enumerate(m.rows):
        for j, v in r.items():
            out[i, j] = v
    return out


def product_rows(a: SparseMatrix, b: SparseMatrix, rows_needed,
                 b_dense=None) -> list:
    """Rows of a @ b at the given indices, as sparse dicts.

    Avoids materializing the full product; with a prime field and a
    moderately sized right factor the accumulation is vectorized.
    """
    if a.ncols != b.nrows:
        raise DimensionMismatchError(
            f"product_rows: {a.nrows}x{a.ncols} times {b.nrows}x{b.ncols}")
    F = a.field
    p = F.characteristic
    if b_dense is None and p and a.ncols * p * p < 2 ** 62:
        b_dense = dense_modp_array(b)
    if b_dense is not None:
        out_rows = []
        buf = np.zeros(b.ncols, dtype=np.int64)
        for r in rows_needed:
            buf[:] = 0
            for k, v in a.rows[r].items():
                buf += v * b_dense[k]
            buf %= p
            nz = np.nonzero(buf)[0]
            out_rows.append({int(j): int(buf[j]) for j in nz})
        return out_rows
    out_rows = []
    for r in rows_needed:
        acc: dict = {}
        for k, v in a.rows[r].items():
            for j, w in b.rows[k].items():
                acc[j] = acc.get(j, 0) + v * w
        if p:
            out_rows.append({j: s % p for j, s in acc.items() if s % p})
        else:
            out_rows.append({j: s for j, s in acc.items() if s})
    return out_rows
