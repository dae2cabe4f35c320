"""Decision procedures on Artinian local algebras.

Serre bound / Golod detection, the (B_n)/(H_{m,l}) condition tables,
direct-summand certificates (simple, free, and general over prime fields),
randomized module decomposition, the syzygy-summand scan, Burch and
exceptional tests, Golod syzygy-decomposition verification, Betti
monotonicity, and the Ext-vanishing probe for the canonical module.

Randomized verdicts (decompose, isomorphism matching) are Monte Carlo and
one-sided: certificates are verified exactly, negative verdicts only hold
to the recorded trial budget and seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb

from .algebra import FiniteLocalAlgebra, hypersurface_test
from .field import FieldSpec
from .koszul import algebra_profile, koszul_profile
from .matrix import SparseMatrix, column_space_basis, invert, solve_linear
from .modules import (
    ActionModule, ModuleError, canonical_module, direct_sum_modules,
    hom_module, radical_span, regular_module, resolution_of_k, resolve,
    submodule, syzygy_step, tor_from_resolution, ext_modules,
)

DECOMPOSE_TRIALS = 64
ISO_SAMPLES = 32
DEFAULT_SEED = 1


class InternalConsistencyError(RuntimeError):
    """A proved inequality failed: the computation itself is broken."""


class UnsupportedFieldError(ValueError):
    pass


# -- Serre bound and Golod ---------------------------------------------

def _serre_bounds(A: FiniteLocalAlgebra, n_max: int):
    beta = resolution_of_k(A, n_max).betti_numbers(n_max)
    h = algebra_profile(A).h
    e = A.e
    bounds = []
    for n in range(n_max + 1):
        total = comb(e, n)
        for j in range(1, e + 1):
            i = n - j - 1
            if i >= 0:
                total += beta[i] * h[j]
        bounds.append(total)
    return beta, bounds


def serre_bound_check(A: FiniteLocalAlgebra, n_max: int):
    """Slack of the term-wise Betti bound for k; negative slack is fatal."""
    beta, bounds = _serre_bounds(A, n_max)
    slacks = [b - x for b, x in zip(bounds, beta)]
    for n, s in enumerate(slacks):
        if s < 0:
            raise InternalConsistencyError(
                f"Betti bound violated at degree {n}: beta = {beta[n]}, "
                f"bound = {bounds[n]}")
    return slacks


@dataclass
class GolodReport:
    n_max: int
    slacks: list
    verdict: str                    # "GolodToPrecision" | "NotGolod"
    first_failure: int | None

    @property
    def is_golod_to_precision(self) -> bool:
        return self.verdict == "GolodToPrecision"

    def to_dict(self) -> dict:
        return {"n_max": self.n_max, "slacks": list(self.slacks),
                "verdict": self.verdict, "first_failure": self.first_failure}


def golod_check(A: FiniteLocalAlgebra, n_max: int | None = None) -> GolodReport:
    """Term-wise equality check; a finite-precision verdict, never a proof.

    Works degree by degree and stops at the first positive slack: once one
    term falls short of the bound, the verdict is settled and the deeper
    (and much larger) resolution steps are never computed.
    """
    if n_max is None:
        n_max = A.e + 6
    h = algebra_profile(A).h
    e = A.e
    slacks = []
    first = None
    for n in range(n_max + 1):
        beta = resolution_of_k(A, n).betti_numbers(n)
        bound = comb(e, n)
        for j in range(1, e + 1):
            i = n - j - 1
            if i >= 0:
                bound += beta[i] * h[j]
        s = bound - beta[n]
        if s < 0:
            raise InternalConsistencyError(
                f"Betti bound violated at degree {n}: beta = {beta[n]}, "
                f"bound = {bound}")
        slacks.append(s)
        if s > 0:
            first = n
            break
    verdict = "GolodToPrecision" if first is None else "NotGolod"
    return GolodReport(n_max, slacks, verdict, first)


# -- condition tables --------------------------------------------------

@dataclass
class ConditionTable:
    n_max: int
    l_max: int
    bn: dict                        # n -> bool
    hml: dict                       # (m, l) -> bool
    equivalences: dict              # n -> (a, b, c) truth values

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max, "l_max": self.l_max,
            "bn": {str(n): v for n, v in self.bn.items()},
            "hml": {f"{m},{l}": v for (m, l), v in self.hml.items()},
            "equivalences": {str(n): list(v) for n, v in self.equivalences.items()},
        }


def bn_hml_table(A: FiniteLocalAlgebra, n_max: int, l_max: int) -> ConditionTable:
    e = A.e
    depth = max(n_max, e + l_max + 1)
    res = resolution_of_k(A, depth)
    beta = res.betti_numbers(depth)
    h = algebra_profile(A).h

    def ht(j):
        return 0 if j <= 0 or j > e else h[j]

    def prof(i):
        if i < 0:
            return [0] * (e + 1)
        return koszul_profile(res.syzygy(i)).h

    def b(i):
        return beta[i] if i >= 0 else 0

    slacks = serre_bound_check(A, n_max)
    bn = {n: slacks[n] == 0 for n in range(n_max + 1)}
    hml = {}
    for m in range(e + 1):
        for l in range(l_max + 1):
            lhs = prof(e + l + 1)[m]
            rhs = sum(prof(e + l - j)[m] * h[j] for j in range(1, e + 1))
            hml[(m, l)] = lhs == rhs
    equivalences = {}
    for n in range(n_max + 1):
        cond_a = bn[n]
        cond_b = True
        cond_c = True
        for i in range(n):
            lhs = prof(n - i)[i] if i <= e else 0
            if i == 0:
                expect_b = prof(n - 1)[1] if e >= 1 else 0
            else:
                nxt = prof(n - i - 1)[i + 1] if i + 1 <= e else 0
                expect_b = b(n - i - 1) * (h[i] if i <= e else 0) + nxt
            if lhs != expect_b:
                cond_b = False
            expect_c = sum(b(n - j - 1) * ht(j) for j in range(max(i, 1), e + 1)) \
                + comb(e, n)
            if lhs != expect_c:
                cond_c = False
        equivalences[n] = (cond_a, cond_b, cond_c)
    return ConditionTable(n_max, l_max, bn, hml, equivalences)


# -- summand certificates ----------------------------------------------

@dataclass
class SummandCertificate:
    ok: bool
    f: SparseMatrix | None = None   # A -> B
    g: SparseMatrix | None = None   # B -> A, with g o f = id_A
    refutation: str | None = None   # SocleCriterion | Dimension |
    #                                 DecompositionMismatch | SearchExhausted
    trials: int = 0
    seed: int | None = None

    def verify(self) -> bool:
        if not self.ok:
            return False
        prod = self.g.matmul(self.f)
        return prod == SparseMatrix.identity(prod.nrows, prod.field)

    def to_dict(self) -> dict:
        out = {"ok": self.ok, "refutation": self.refutation,
               "trials": self.trials, "seed": self.seed}
        if self.ok:
            out["f"] = list(self.f.triplets())
            out["g"] = list(self.g.triplets())
        return out


def _socle_basis(M: ActionModule) -> SparseMatrix:
    stacked = M.action[0]
    for a in M.action[1:]:
        stacked = stacked.vstack(a)
    return stacked.rref().kernel_basis


def _split_functional(M: ActionModule, rad: SparseMatrix, piv: list, v: dict):
    """A functional killing mM with value 1 on v, or None if v lies in mM."""
    F = M.field
    resid = dict(v)
    for k, r in enumerate(piv):
        c = resid.pop(r, None)
        if c is None or F.is_zero(c):
            continue
        for i, row in enumerate(rad.rows):
            w = row.get(k)
            if w is None or i == r:
                continue
            nv = F.sub(resid.get(i, F.zero()), F.mul(c, w))
            if F.is_zero(nv):
                resid.pop(i, None)
            else:
                resid[i] = nv
    if not resid:
        return None
    r0, w0 = next(iter(resid.items()))
    inv = F.inv(w0)
    lam = SparseMatrix.zeros(1, M.dim, F)
    lam.rows[0][r0] = inv
    for k, r in enumerate(piv):
        coeff = rad.rows[r0].get(k) if r0 < len(rad.rows) else None
        if coeff is not None and not F.is_zero(coeff):
            lam.rows[0][r] = F.neg(F.mul(inv, coeff))
    return lam


def simple_summand_test(M: ActionModule) -> SummandCertificate:
    """Certificate that k is a direct summand of M, or a proof it is not.

    k splits off exactly when some socle vector escapes mM; the split pair
    is (inclusion of the vector, a functional vanishing on mM).
    """
    if M.dim == 0:
        raise ModuleError("simple summand test on the zero module")
    rad, piv = radical_span(M)
    soc = _socle_basis(M)
    F = M.field
    for j in range(soc.ncols):
        v = soc.column(j)
        lam = _split_functional(M, rad, piv, v)
        if lam is None:
            continue
        f = SparseMatrix.from_columns(M.dim, F, [v])
        cert = SummandCertificate(True, f, lam)
        if not cert.verify():
            raise InternalConsistencyError("simple-summand split failed to verify")
        return cert
    return SummandCertificate(False, refutation="SocleCriterion")


# -- randomized decomposition over prime fields ------------------------

@dataclass
class DecompositionReport:
    factors: list                   # (ActionModule, multiplicity)
    pieces: list                    # one ActionModule per factor copy
    embeddings: list                # one embedding per factor copy, into M
    idempotents: list               # one per factor copy, in End(M)
    seed: int
    monte_carlo: bool               # some factor verdict relied on trials only

    def verify(self, M: ActionModule) -> bool:
        F = M.field
        total = SparseMatrix.zeros(M.dim, M.dim, F)
        for i, e1 in enumerate(self.idempotents):
            total = total.add(e1)
            if e1.matmul(e1) != e1:
                return False
            for a in M.action:
                if a.matmul(e1) != e1.matmul(a):
                    return False
            for j, e2 in enumerate(self.idempotents):
                if i != j and not e1.matmul(e2).is_zero():
                    return False
        return total == SparseMatrix.identity(M.dim, F)

    def multiplicity_map(self) -> list:
        return [(m.dim, mult) for m, mult in self.factors]


def _random_endo(H: ActionModule, rng: random.Random, p: int) -> SparseMatrix:
    out = SparseMatrix.zeros(H.hom_maps[0].nrows, H.hom_maps[0].ncols, H.field)
    for m in H.hom_maps:
        c = rng.randrange(p)
        if c:
            out = out.add(m.scale(H.field.of(c)))
    return out


# Polynomials over F_p as lowest-degree-first coefficient lists, used to
# split a module along the primary decomposition of a random endomorphism:
# if the minimal polynomial of f factors as m1 * m2 with gcd(m1, m2) = 1,
# then M = ker m1(f) (+) ker m2(f), and both kernels are submodules.

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    a = list(a)
    out = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and _ptrim(a):
        shift = len(a) - len(b)
        c = (a[-1] * inv) % p
        out[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _ptrim(a)
    return _ptrim(out), a


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(x * inv) % p for x in a]
    return a


def _pmulmod(a, b, m, p):
    return _pdivmod(_pmul(a, b, p), m, p)[1]


def _ppowmod(base, e, m, p):
    out = [1]
    cur = _pdivmod(base, m, p)[1]
    while e:
        if e & 1:
            out = _pmulmod(out, cur, m, p)
        cur = _pmulmod(cur, cur, m, p)
        e >>= 1
    return out


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _ptrim(out)


def _primary_part(m, u, p):
    """The largest divisor of m all of whose irreducible factors divide u."""
    a = list(u)
    while True:
        q = _pdivmod(m, a, p)[0]
        g = _pgcd(a, q, p)
        if len(g) <= 1:
            return a
        a = _pmul(a, g, p)


def _radical(m, p):
    """Squarefree radical (product of the distinct irreducible factors)."""
    if len(m) <= 2:
        return list(m)
    deriv = _ptrim([(i * c) % p for i, c in enumerate(m)][1:])
    if not deriv:
        # m(x) = g(x^p) = g(x)^p over F_p, coefficientwise
        return _radical([m[i] for i in range(0, len(m), p)], p)
    g = _pgcd(m, deriv, p)
    r1 = _pdivmod(m, g, p)[0]
    if len(g) <= 1:
        return r1
    r2 = _radical(g, p)
    extra = _pdivmod(r2, _pgcd(r2, r1, p), p)[0]
    return _pmul(r1, extra, p)


def _coprime_split(m, p, rng):
    """(m1, m2) nonconstant coprime with m = m1 * m2, or None if primary."""
    if len(m) <= 2:
        return None
    sf = _radical(m, p)
    if len(sf) <= 2:
        return None                 # a single linear factor: primary
    x = [0, 1]
    frob = list(x)
    for d in range(1, len(sf)):
        frob = _ppowmod(frob, p, sf, p)
        u = _pgcd(_psub(frob, x, p), sf, p)
        if len(u) <= 1:
            continue
        if len(u) < len(sf):
            m1 = _primary_part(m, u, p)
            return m1, _pdivmod(m, m1, p)[0]
        # every factor has degree d; equal-degree split if there are several
        if len(sf) - 1 > d:
            piece = _cz_split(sf, d, p, rng)
            if piece is not None:
                m1 = _primary_part(m, piece, p)
                return m1, _pdivmod(m, m1, p)[0]
        return None
    return None


def _cz_split(s, d, p, rng, attempts=24):
    """A proper factor of squarefree s (all factors of degree d), or None."""
    for _ in range(attempts):
        t = [rng.randrange(p) for _ in range(len(s) - 1)]
        if not _ptrim(list(t)):
            continue
        if p == 2:
            h = list(t)
            acc = list(t)
            for _ in range(d - 1):
                acc = _pmulmod(acc, acc, s, p)
                h = _psub(h, [(-c) % p for c in acc], p)
            g = _pgcd(h, s, p)
        else:
            h = _ppowmod(t, (p ** d - 1) // 2, s, p)
            g = _pgcd(_psub(h, [1], p), s, p)
        if 1 < len(g) < len(s):
            return g
    return None


def _to_dense(mat: SparseMatrix, p: int):
    import numpy as np
    out = np.zeros((mat.nrows, mat.ncols), dtype=np.int64)
    for i, j, v in mat.triplets():
        out[i, j] = v % p
    return out


def _min_poly(fd, p: int, rng: random.Random):
    """Minimal polynomial of a dense matrix mod p (Monte Carlo via vectors)."""
    import numpy as np
    n = fd.shape[0]
    mp = [1]
    for _ in range(4):
        v = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
        # local minimal polynomial of (f, v) by incremental elimination of
        # the Krylov vectors f^k v, tracking each as a polynomial in f
        basis = []              # (pivot, normalized vector, combo poly)
        w = v % p
        k = 0
        local = None
        while local is None:
            red = w.copy()
            cpoly = [0] * k + [1]            # x^k
            for piv, bvec, bpoly in basis:
                c = int(red[piv])
                if c:
                    red = (red - c * bvec) % p
                    for i, y in enumerate(bpoly):
                        cpoly[i] = (cpoly[i] - c * y) % p
            nz = np.nonzero(red)[0]
            if len(nz) == 0:
                local = _ptrim(cpoly)        # monic: degree-k term untouched
            else:
                piv = int(nz[0])
                inv = pow(int(red[piv]), p - 2, p)
                basis.append((piv, (red * inv) % p,
                              [(x * inv) % p for x in cpoly] + [0]))
                w = (fd @ w) % p
                k += 1
        g = _pgcd(mp, local, p)
        mp = _pdivmod(_pmul(mp, local, p), g or [1], p)[0]
        if len(mp) - 1 >= n:
            break
    return mp


def _eval_poly_vec(poly, fd, v, p):
    import numpy as np
    acc = np.zeros_like(v)
    for c in reversed(poly):
        acc = ((fd @ acc) + c * v) % p
    return acc


def _eval_poly_matrix(poly, fd, p):
    import numpy as np
    n = fd.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(poly):
        acc = ((fd @ acc) + c * eye) % p
    return acc


def _try_split(B: ActionModule, rng: random.Random, trials: int):
    """((kernel_basis, kpiv, image_basis, ipiv), trials_used, monte_carlo)."""
    import numpy as np
    H = hom_module(B, B)
    if H.dim <= 1:
        return None, 0, False       # only scalars: indecomposable, proved
    p = B.field.characteristic
    dense_basis = [_to_dense(m, p) for m in H.hom_maps]
    for t in range(trials):
        fd = np.zeros_like(dense_basis[0])
        for mb in dense_basis:
            c = rng.randrange(p)
            if c:
                fd = (fd + c * mb) % p
        mp = _min_poly(fd, p, rng)
        split = _coprime_split(mp, p, rng)
        if split is None:
            continue
        m1, m2 = split
        if len(m1) > len(m2):
            m1, m2 = m2, m1
        gd = _eval_poly_matrix(m1, fd, p)
        g = SparseMatrix.from_dense(gd.tolist(), B.field)
        res = g.rref()
        if not 0 < res.rank < B.dim:
            continue                # minimal polynomial was undersampled
        ker = res.kernel_basis
        kpiv = res.free_columns
        img, ipiv = column_space_basis(g)
        return (ker, kpiv, img, ipiv), t + 1, False
    return None, trials, True


def decompose(M: ActionModule, seed: int = DEFAULT_SEED) -> DecompositionReport:
    """Fitting decomposition into indecomposables via random endomorphisms."""
    if M.field.characteristic == 0:
        raise UnsupportedFieldError(
            "randomized decomposition needs a prime field")
    if M.dim == 0:
        raise ModuleError("decomposition of the zero module")
    rng = random.Random(seed)
    monte_carlo = False
    pieces = []                     # (module, embedding into M)
    stack = [(M, SparseMatrix.identity(M.dim, M.field))]
    while stack:
        B, emb = stack.pop()
        split, _, mc = _try_split(B, rng, DECOMPOSE_TRIALS)
        if split is None:
            monte_carlo = monte_carlo or mc
            pieces.append((B, emb))
            continue
        ker, kpiv, img, ipiv = split
        stack.append((submodule(B, ker, kpiv), emb.matmul(ker)))
        stack.append((submodule(B, img, ipiv), emb.matmul(img)))
    pieces.sort(key=lambda pe: pe[0].dim)
    # idempotents: P = [emb_1 | ... | emb_t] is invertible; the block rows of
    # P^{-1} are the projections
    P = pieces[0][1]
    for _, emb in pieces[1:]:
        P = P.hstack(emb)
    Pinv = invert(P)
    if Pinv is None:
        raise InternalConsistencyError("decomposition basis is singular")
    idempotents = []
    off = 0
    for B, emb in pieces:
        proj = SparseMatrix(B.dim, M.dim, M.field,
                            [dict(Pinv.rows[off + i]) for i in range(B.dim)])
        idempotents.append(emb.matmul(proj))
        off += B.dim
    # group isomorphic factors
    groups = []                     # (representative, multiplicity)
    for B, _ in pieces:
        for gi, (rep, mult) in enumerate(groups):
            if modules_isomorphic(rep, B, rng) is not None:
                groups[gi] = (rep, mult + 1)
                break
        else:
            groups.append((B, 1))
    report = DecompositionReport(groups, [b for b, _ in pieces],
                                 [emb for _, emb in pieces],
                                 idempotents, seed, monte_carlo)
    if not report.verify(M):
        raise InternalConsistencyError("decomposition certificate failed")
    return report


def modules_isomorphic(B1: ActionModule, B2: ActionModule,
                       rng: random.Random, samples: int = ISO_SAMPLES):
    """A pair (f, f^{-1}) of inverse equivariant maps, or None (one-sided)."""
    if B1.dim != B2.dim:
        return None
    if B1.dim == 0:
        z = SparseMatrix.zeros(0, 0, B1.field)
        return z, z
    H = hom_module(B1, B2)
    if H.dim == 0:
        return None
    p = B1.field.characteristic
    for _ in range(samples):
        if p:
            f = _random_endo(H, rng, p)
        else:
            f = SparseMatrix.zeros(B2.dim, B1.dim, B1.field)
            for m in H.hom_maps:
                c = rng.randrange(-3, 4)
                if c:
                    f = f.add(m.scale(B1.field.of(c)))
        finv = invert(f)
        if finv is not None:
            return f, finv
    return None


# -- general summand testing -------------------------------------------

def _is_free(M: ActionModule):
    """Rank if M is free, else None."""
    if M.dim == 0:
        return 0
    step = syzygy_step(M)
    if step.syzygy.is_zero() and M.dim == step.free_rank * M.algebra.dim:
        return step.free_rank
    return None


def _monomial_columns(M: ActionModule, x: dict) -> SparseMatrix:
    """Columns b_t . x for every algebra basis monomial b_t."""
    A = M.algebra
    cols = [M.monomial_action(mono).apply(x) for mono in A.basis]
    return SparseMatrix.from_columns(M.dim, M.field, cols)


def _free_summand_certificate(r: int, B: ActionModule):
    """Split a free rank-r module off B, or refute."""
    A = B.algebra
    F = B.field
    dimA = A.dim
    f_blocks = []
    g_blocks = []
    cur = B
    emb = SparseMatrix.identity(B.dim, F)
    pi = SparseMatrix.identity(B.dim, F)  # projection of B onto cur's ambient
    for _ in range(r):
        H = hom_module(cur, regular_module(A))
        unit_row = None
        for m in H.hom_maps:
            if m.rows[0]:
                unit_row = m
                break
        if unit_row is None:
            return SummandCertificate(False, refutation="DecompositionMismatch")
        e0 = SparseMatrix.zeros(dimA, 1, F)
        e0.rows[0][0] = F.one()
        x = solve_linear(unit_row, e0)
        if x is None:
            return SummandCertificate(False, refutation="DecompositionMismatch")
        xv = x.column(0)
        xv_in_B = emb.apply(xv)
        f_blocks.append(_monomial_columns(B, xv_in_B))
        g_blocks.append(unit_row.matmul(pi))
        # pass to the kernel of the split surjection
        res = unit_row.rref()
        ker = res.kernel_basis
        kpiv = res.free_columns
        xmap = _monomial_columns(cur, xv)
        proj_cur = SparseMatrix.identity(cur.dim, F).sub(xmap.matmul(unit_row))
        coords = SparseMatrix(ker.ncols, cur.dim, F,
                              [dict(proj_cur.rows[rr]) for rr in kpiv])
        nxt = submodule(cur, ker, kpiv)
        emb = emb.matmul(ker)
        pi = coords.matmul(pi)
        cur = nxt
        if cur.dim == 0 and _ < r - 1:
            return SummandCertificate(False, refutation="DecompositionMismatch")
    f = f_blocks[0]
    for blk in f_blocks[1:]:
        f = f.hstack(blk)
    g = g_blocks[0]
    for blk in g_blocks[1:]:
        g = g.vstack(blk)
    cert = SummandCertificate(True, f, g)
    if not cert.verify():
        raise InternalConsistencyError("free-summand split failed to verify")
    return cert


def _simple_power_certificate(s: int, B: ActionModule):
    """Split k^s off B, or refute via the socle criterion."""
    F = B.field
    rad, piv = radical_span(B)
    soc = _socle_basis(B)
    chosen = []
    ext = rad
    for j in range(soc.ncols):
        if len(chosen) == s:
            break
        v = soc.column(j)
        cb, cpiv = column_space_basis(ext)
        lam = _split_functional(B, cb, cpiv, v)
        if lam is None:
            continue
        chosen.append(v)
        ext = ext.hstack(SparseMatrix.from_columns(B.dim, F, [v]))
    if len(chosen) < s:
        return SummandCertificate(False, refutation="SocleCriterion")
    # functionals: lam_i kills mB and the other chosen vectors
    V = SparseMatrix.from_columns(B.dim, F, chosen)
    G = rad.hstack(V)
    rhs = SparseMatrix.zeros(G.ncols, s, F)
    for i in range(s):
        rhs.rows[rad.ncols + i][i] = F.one()
    sol = solve_linear(G.transpose(), rhs)
    if sol is None:
        raise InternalConsistencyError("socle functionals are inconsistent")
    g = sol.transpose()
    cert = SummandCertificate(True, V, g)
    if not cert.verify():
        raise InternalConsistencyError("simple-power split failed to verify")
    return cert


def summand_test(A_mod: ActionModule, B: ActionModule,
                 seed: int = DEFAULT_SEED,
                 da: DecompositionReport | None = None,
                 db: DecompositionReport | None = None) -> SummandCertificate:
    """Certificate or refutation for A_mod being a direct summand of B.

    Precomputed decompositions (``da`` for A_mod with the given seed,
    ``db`` for B with seed + 1) may be passed to avoid recomputation.
    """
    if A_mod.algebra.hash() != B.algebra.hash():
        raise ModuleError("summand test across different algebras")
    F = A_mod.field
    if A_mod.dim > B.dim:
        return SummandCertificate(False, refutation="Dimension")
    if A_mod.dim == 0:
        z = SparseMatrix.zeros(B.dim, 0, F)
        return SummandCertificate(True, z, z.transpose())
    if all(a.is_zero() for a in A_mod.action):
        return _simple_power_certificate(A_mod.dim, B)
    r = _is_free(A_mod)
    if r is not None:
        return _free_summand_certificate(r, B)
    if F.characteristic == 0:
        raise UnsupportedFieldError(
            "general summand testing needs a prime field")
    rng = random.Random(seed)
    if da is None:
        da = decompose(A_mod, seed=seed)
    if db is None:
        db = decompose(B, seed=seed + 1)
    monte_carlo = da.monte_carlo or db.monte_carlo
    # match every factor copy of A_mod to an unused factor copy of B
    a_pieces = list(zip(da.embeddings, da.pieces))
    b_pieces = list(zip(db.embeddings, db.pieces))
    used = [False] * len(b_pieces)
    matches = []
    for a_emb, a_fac in a_pieces:
        found = None
        for bi, (b_emb, b_fac) in enumerate(b_pieces):
            if used[bi] or b_fac.dim != a_fac.dim:
                continue
            iso = modules_isomorphic(a_fac, b_fac, rng)
            if iso is not None:
                used[bi] = True
                found = (a_emb, b_emb, iso)
                break
        if found is None:
            return SummandCertificate(
                False, refutation="DecompositionMismatch",
                trials=DECOMPOSE_TRIALS, seed=seed)
        matches.append(found)
    Pa = invert(_hstack_all([e for e, _ in a_pieces]))
    Pb = invert(_hstack_all([e for e, _ in b_pieces]))
    f = SparseMatrix.zeros(B.dim, A_mod.dim, F)
    g = SparseMatrix.zeros(A_mod.dim, B.dim, F)
    a_off = 0
    for (a_emb, b_emb, (phi, phi_inv)), (_, a_fac) in zip(matches, a_pieces):
        proj_a = _block_rows(Pa, a_off, a_fac.dim)
        b_off = _offset_of(db.embeddings, b_emb)
        proj_b = _block_rows(Pb, b_off, a_fac.dim)
        f = f.add(b_emb.matmul(phi).matmul(proj_a))
        g = g.add(a_emb.matmul(phi_inv).matmul(proj_b))
        a_off += a_fac.dim
    cert = SummandCertificate(True, f, g, trials=DECOMPOSE_TRIALS, seed=seed)
    if not cert.verify():
        raise InternalConsistencyError("assembled summand split failed to verify")
    return cert


def _hstack_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = out.hstack(m)
    return out


def _block_rows(P: SparseMatrix, off: int, n: int) -> SparseMatrix:
    return SparseMatrix(n, P.ncols, P.field,
                        [dict(P.rows[off + i]) for i in range(n)])


def _offset_of(embeddings, emb):
    off = 0
    for e in embeddings:
        if e is emb:
            return off
        off += e.ncols
    raise InternalConsistencyError("embedding not found")


# -- the syzygy-summand scan and its consumers -------------------------

def star_property_scan(A: FiniteLocalAlgebra, bound: int,
                       seed: int = DEFAULT_SEED,
                       max_pair_dim: int | None = None) -> list:
    """All pairs a < b <= bound with syz_a(k) a direct summand of syz_b(k).

    Pairs with a = 0 (simple summands) are decided over any field; other
    pairs need a prime field and are Monte Carlo one-sided.  Pairs whose
    larger syzygy exceeds max_pair_dim are skipped for a > 0.
    """
    res = resolution_of_k(A, bound)
    pairs = []
    dec_a = {}   # syzygy index -> decomposition with base seed
    dec_b = {}   # syzygy index -> decomposition with seed + 1
    for a in range(bound):
        for b in range(a + 1, bound + 1):
            Sb = res.syzygy(b)
            if a == 0:
                if simple_summand_test(Sb).ok:
                    pairs.append((a, b))
                continue
            Sa = res.syzygy(a)
            if max_pair_dim is not None and Sb.dim > max_pair_dim:
                continue
            if (Sa.dim > Sb.dim or Sa.dim == 0
                    or all(m.is_zero() for m in Sa.action)
                    or _is_free(Sa) is not None):
                cert = summand_test(Sa, Sb, seed=seed)
            elif Sa.field.characteristic == 0:
                continue
            else:
                if a not in dec_a:
                    dec_a[a] = decompose(Sa, seed=seed)
                if b not in dec_b:
                    dec_b[b] = decompose(Sb, seed=seed + 1)
                cert = summand_test(Sa, Sb, seed=seed,
                                    da=dec_a[a], db=dec_b[b])
            if cert.ok:
                pairs.append((a, b))
    return pairs


def burch_depth_zero_test(A: FiniteLocalAlgebra) -> bool:
    """Depth-zero Burch criterion: k splits off the second syzygy of k."""
    res = resolution_of_k(A, 2)
    return simple_summand_test(res.syzygy(2)).ok


def exceptional_test(A: FiniteLocalAlgebra, bound: int) -> bool:
    """No syzygy of k up to the bound has a simple direct summand."""
    res = resolution_of_k(A, bound)
    return not any(simple_summand_test(res.syzygy(n)).ok
                   for n in range(1, bound + 1))


# -- Golod syzygy decomposition ----------------------------------------

@dataclass
class GolodDecompositionReport:
    mode: str
    shift_ok: dict                  # shift -> bool
    golod: GolodReport
    ok: bool
    seed: int
    details: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "ok": self.ok, "seed": self.seed,
                "shift_ok": {str(s): v for s, v in self.shift_ok.items()},
                "golod": self.golod.to_dict(), "details": list(self.details)}


def verify_golod_decomposition(A: FiniteLocalAlgebra, m: int,
                               mode: str = "numeric",
                               seed: int = DEFAULT_SEED,
                               betti_terms: int = 2) -> GolodDecompositionReport:
    """Check syz_{e+1+s}(k) against the predicted sum of smaller syzygies.

    The compared decomposition for shift s is
    syz_{e+1+s}(k) vs sum over j of syz_{e-j+s}(k)^{h_j(R)}, j = 1..e.
    Numeric mode compares Betti numbers and Koszul profiles of both sides;
    structural mode (prime fields) certifies an isomorphism directly.
    """
    if mode not in ("numeric", "structural"):
        raise ValueError(f"unknown mode {mode!r}")
    e = A.e
    h = algebra_profile(A).h
    depth = e + 1 + m + (betti_terms if mode == "numeric" else 0)
    details = []
    shift_ok = {}
    rng = random.Random(seed)
    if mode == "numeric":
        # Betti comparisons ordered by resolution depth, stopping at the
        # first mismatch: a refuted decomposition never pays for the
        # deeper (and much larger) resolution steps.
        mismatch = False
        for d in range(e + 1, depth + 1):
            beta = resolution_of_k(A, d).betti_numbers(d)
            for s in range(m + 1):
                i = d - (e + 1 + s)
                if not 0 <= i <= betti_terms:
                    continue
                left = beta[d]
                right = sum(h[j] * beta[e - j + s + i]
                            for j in range(1, e + 1) if e - j + s + i >= 0)
                if left != right:
                    mismatch = True
                    shift_ok[s] = False
                    details.append(
                        f"shift {s}: beta_{i} mismatch {left} vs {right}")
            if mismatch:
                break
        if not mismatch:
            res = resolution_of_k(A, depth)
            for s in range(m + 1):
                left_prof = koszul_profile(res.syzygy(e + 1 + s)).h
                right_prof = [0] * (e + 1)
                for j in range(1, e + 1):
                    if e - j + s < 0:
                        continue
                    pj = koszul_profile(res.syzygy(e - j + s)).h
                    right_prof = [x + h[j] * y for x, y in zip(right_prof, pj)]
                good = left_prof == right_prof
                if not good:
                    details.append(
                        f"shift {s}: profile mismatch {left_prof} vs {right_prof}")
                shift_ok[s] = shift_ok.get(s, True) and good
    else:
        res = resolution_of_k(A, depth)
        for s in range(m + 1):
            if A.field.characteristic == 0:
                raise UnsupportedFieldError("structural mode needs a prime field")
            left = res.syzygy(e + 1 + s)
            parts = []
            for j in range(1, e + 1):
                if e - j + s < 0:
                    continue
                parts.extend([res.syzygy(e - j + s)] * h[j])
            right, _, _ = direct_sum_modules(parts)
            if left.dim != right.dim:
                shift_ok[s] = False
                details.append(
                    f"shift {s}: dimension mismatch {left.dim} vs {right.dim}")
                continue
            iso = modules_isomorphic(left, right, rng)
            shift_ok[s] = iso is not None
            if iso is None:
                details.append(f"shift {s}: no isomorphism found "
                               f"({ISO_SAMPLES} samples)")
    golod = golod_check(A, depth)
    return GolodDecompositionReport(mode, shift_ok, golod,
                                    all(shift_ok.values()), seed, details)


# -- Betti monotonicity ------------------------------------------------

@dataclass
class MonotonicityReport:
    ok: bool
    branch: str                     # "monotone" | "hypersurface-dichotomy"
    period: int | None
    checks: list = dc_field(default_factory=list)
    details: list = dc_field(default_factory=list)


def monotonicity_check(A: FiniteLocalAlgebra, M: ActionModule, a: int, b: int,
                       bound: int, seed: int = DEFAULT_SEED,
                       resolution=None) -> MonotonicityReport:
    """Non-decrease of the arithmetic Betti subsequences forced by a
    syzygy summand pair (a, b), with the Tor cross-check of the proof.

    If a > b the pair can only exist on a hypersurface; that dichotomy
    branch verifies hypersurface_test instead.  Pass a resolution of M to
    reuse one across several pairs.
    """
    if a == b:
        raise ValueError("the summand pair must have distinct indices")
    if a > b:
        is_hs = hypersurface_test(A)
        return MonotonicityReport(
            is_hs, "hypersurface-dichotomy", None,
            details=["a > b requires a hypersurface: "
                     f"hypersurface_test = {is_hs}"])
    res = resolution_of_k(A, bound)
    cert = summand_test(res.syzygy(a), res.syzygy(b), seed=seed)
    if not cert.ok:
        raise ValueError(
            f"no summand certificate for the pair ({a}, {b}): {cert.refutation}")
    gres = cert.g.rref()
    N = submodule(res.syzygy(b), gres.kernel_basis, gres.free_columns)
    if N.dim != res.syzygy(b).dim - res.syzygy(a).dim:
        raise InternalConsistencyError("complement dimension mismatch")
    p = b - a
    resM = resolution if resolution is not None else resolve(M, bound)
    resM.ensure(bound)
    betaM = resM.betti_numbers(bound)
    tor = tor_from_resolution(resM, N, bound - 1)
    checks = []
    ok = True
    for q in range(1, p + 1):
        n = 0
        while True:
            lo = p * n + q
            hi = p * (n + 1) + q
            t = p * n - a + q
            if hi > bound or t > bound - 1:
                break
            if lo > a:
                mono = betaM[hi] >= betaM[lo]
                ident = (t >= 0) and betaM[hi] == betaM[lo] + tor[t]
                checks.append((q, n, betaM[lo], betaM[hi],
                               tor[t] if t >= 0 else None, mono and ident))
                ok = ok and mono and ident
            n += 1
    return MonotonicityReport(ok, "monotone", p, checks)


# -- Ext-vanishing probes for the canonical module ---------------------

@dataclass
class TachikawaReport:
    n_max: int
    ext_dims: list                  # dim Ext^i(K_R, R) for i = 1..n_max
    first_nonvanishing: int | None
    star_pairs: list
    is_hypersurface: bool
    consistent: bool

    def to_dict(self) -> dict:
        return {"n_max": self.n_max, "ext_dims": list(self.ext_dims),
                "first_nonvanishing": self.first_nonvanishing,
                "star_pairs": [list(p) for p in self.star_pairs],
                "is_hypersurface": self.is_hypersurface,
                "consistent": self.consistent}


def tachikawa_probe(A: FiniteLocalAlgebra, n_max: int,
                    scan_bound: int = 4, seed: int = DEFAULT_SEED,
                    max_pair_dim: int | None = 400) -> TachikawaReport:
    """Ext^i(K_R, R) vanishing up to n_max, cross-referenced with the
    syzygy-summand scan: a summand pair on a non-hypersurface forces some
    nonvanishing Ext."""
    K = canonical_module(A)
    R = regular_module(A)
    ext = ext_modules(K, R, n_max)[1:]
    first = next((i + 1 for i, v in enumerate(ext) if v != 0), None)
    pairs = star_property_scan(A, scan_bound, seed=seed,
                               max_pair_dim=max_pair_dim)
    is_hs = hypersurface_test(A)
    if pairs and not is_hs:
        consistent = first is not None
    else:
        consistent = True
    return TachikawaReport(n_max, ext, first, pairs, is_hs, consistent)


@dataclass
class BoundednessReport:
    values: list                    # beta_i(M) for i = 0..n_max
    nondecreasing_tail: bool        # over i >= 1
    constant_tail: bool
    strictly_increasing_tail: bool

    def to_dict(self) -> dict:
        return {"values": list(self.values),
                "nondecreasing_tail": self.nondecreasing_tail,
                "constant_tail": self.constant_tail,
                "strictly_increasing_tail": self.strictly_increasing_tail}


def betti_boundedness_probe(A: FiniteLocalAlgebra, n_max: int,
                            M: ActionModule | None = None) -> BoundednessReport:
    """Trend of the Betti numbers of M (default: the canonical module)."""
    if M is None:
        M = canonical_module(A)
    values = resolve(M, n_max).betti_numbers(n_max)
    tail = values[1:]
    nondec = all(x <= y for x, y in zip(tail, tail[1:]))
    const = all(x == tail[0] for x in tail)
    strict = all(x < y for x, y in zip(tail, tail[1:]))
    return BoundednessReport(values, nondec, const, strict)
