"""Koszul complex on the variables of the algebra and its homology.

h_i(M) is the dimension of the i-th homology of K_(x_1..x_e) tensor M.
The differential uses the standard ordered-subset sign convention
(drop the j-th element of a sorted subset with sign (-1)^position);
only dimensions are consumed downstream, which are convention-free.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

from .algebra import FiniteLocalAlgebra
from .matrix import SparseMatrix
from .modules import ActionModule, FreeResolution, resolution_of_k, resolve


@dataclass
class KoszulProfile:
    label: str
    h: list

    def to_dict(self) -> dict:
        return {"label": self.label, "h": list(self.h)}

    def __getitem__(self, i: int) -> int:
        return self.h[i]

    def tilde(self, i: int) -> int:
        """h with the degree-0 entry zeroed out."""
        if i < 0 or i >= len(self.h):
            return 0
        return 0 if i == 0 else self.h[i]


def _koszul_differential(M: ActionModule, i: int) -> SparseMatrix:
    """d_i : Lambda^i tensor M -> Lambda^{i-1} tensor M."""
    e = M.algebra.e
    F = M.field
    md = M.dim
    tgt_index = {S: a for a, S in enumerate(combinations(range(e), i - 1))}
    src_subsets = list(combinations(range(e), i))
    d = SparseMatrix.zeros(len(tgt_index) * md, len(src_subsets) * md, F)
    for a, S in enumerate(src_subsets):
        for pos, j in enumerate(S):
            rest = tgt_index[S[:pos] + S[pos + 1:]]
            sign = pos % 2 == 1
            for ri, ci, v in M.action[j].triplets():
                val = F.neg(v) if sign else v
                row = rest * md + ri
                col = a * md + ci
                cur = d.rows[row].get(col, F.zero())
                nv = F.add(cur, val)
                if F.is_zero(nv):
                    d.rows[row].pop(col, None)
                else:
                    d.rows[row][col] = nv
    return d


def koszul_profile(M: ActionModule) -> KoszulProfile:
    if M._koszul_profile is not None:
        return M._koszul_profile
    e = M.algebra.e
    md = M.dim
    if md == 0:
        prof = KoszulProfile(M.label or "0", [0] * (e + 1))
        M._koszul_profile = prof
        return prof
    ranks = [_koszul_differential(M, i).rref().rank for i in range(1, e + 1)]
    h = []
    for i in range(e + 1):
        total = comb(e, i) * md
        rank_out = ranks[i - 1] if i >= 1 else 0
        rank_in = ranks[i] if i < e else 0
        h.append((total - rank_out) - rank_in)
    prof = KoszulProfile(M.label or "M", h)
    M._koszul_profile = prof
    return prof


def algebra_profile(A: FiniteLocalAlgebra) -> KoszulProfile:
    prof = getattr(A, "_self_profile", None)
    if prof is None:
        from .modules import regular_module
        prof = koszul_profile(regular_module(A))
        A._self_profile = prof
    return prof


def depth_from_koszul(M: ActionModule) -> int:
    if M.dim == 0:
        raise ValueError("depth of the zero module is undefined")
    h = koszul_profile(M).h
    top = max(i for i, v in enumerate(h) if v != 0)
    return M.algebra.e - top


@dataclass
class CheckReport:
    ok: bool
    checks: list = dc_field(default_factory=list)  # (name, ok, detail)

    def failures(self):
        return [c for c in self.checks if not c[1]]


def _check(checks, name, ok, detail=""):
    checks.append((name, bool(ok), detail))


def verify_l32(M: ActionModule, n: int,
               resolution: FreeResolution | None = None) -> CheckReport:
    """Syzygy/Koszul comparison inequalities for syz_n(M), n >= 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    res = resolution if resolution is not None else resolve(M, n)
    res.ensure(n)
    hR = algebra_profile(M.algebra).h
    e = M.algebra.e
    prev = koszul_profile(res.syzygy(n - 1)).h
    cur = koszul_profile(res.syzygy(n)).h
    beta = res.betti_numbers(n)
    checks: list = []
    for i in range(1, e + 1):
        bound = beta[n - 1] * hR[i] + (prev[i + 1] if i + 1 <= e else 0)
        _check(checks, f"h_{i}(syz_{n}) <= beta_{n-1}*h_{i}(R) + h_{i+1}(syz_{n-1})",
               cur[i] <= bound, f"{cur[i]} vs {bound}")
    _check(checks, f"h_0(syz_{n}) <= h_1(syz_{n-1})", cur[0] <= prev[1],
           f"{cur[0]} vs {prev[1]}")
    _check(checks, f"h_0(syz_{n}) = beta_{n}", cur[0] == beta[n],
           f"{cur[0]} vs {beta[n]}")
    if n >= 2:
        _check(checks, f"h_{e}(syz_{n}) = beta_{n-1}*h_{e}(R)",
               cur[e] == beta[n - 1] * hR[e], f"{cur[e]} vs {beta[n - 1] * hR[e]}")
    return CheckReport(all(c[1] for c in checks), checks)


def verify_l35(A: FiniteLocalAlgebra) -> CheckReport:
    """Closed formulas for the profiles of k, syz_1(k) and syz_2(k)."""
    e = A.e
    res = resolution_of_k(A, 2)
    hR = algebra_profile(A)
    checks: list = []
    prof0 = koszul_profile(res.syzygy(0)).h
    for i in range(e + 1):
        _check(checks, f"h_{i}(k) = C({e},{i})", prof0[i] == comb(e, i),
               f"{prof0[i]} vs {comb(e, i)}")
    prof1 = koszul_profile(res.syzygy(1)).h
    for i in range(e + 1):
        expect = comb(e, i + 1) + hR.tilde(i)
        _check(checks, f"h_{i}(syz_1 k) = C({e},{i + 1}) + ~h_{i}(R)",
               prof1[i] == expect, f"{prof1[i]} vs {expect}")
    prof2 = koszul_profile(res.syzygy(2)).h
    beta1 = res.betti_numbers(1)[1]
    for i in range(e + 1):
        expect = comb(e, i + 2) + hR.tilde(i + 1) + beta1 * hR.tilde(i)
        _check(checks,
               f"h_{i}(syz_2 k) = C({e},{i + 2}) + ~h_{i + 1}(R) + beta_1*~h_{i}(R)",
               prof2[i] == expect, f"{prof2[i]} vs {expect}")
    return CheckReport(all(c[1] for c in checks), checks)


def verify_l37_depth0(A: FiniteLocalAlgebra, n_max: int) -> CheckReport:
    """Top Koszul homology of syzygies of k (the in-range depth-0 instance).

    Checks h_e(syz_n k) = beta_{n-1}(k) * ~h_e(R) + C(e, n + e) for
    0 <= n <= n_max, with beta_{-1}(k) = 0.
    """
    e = A.e
    res = resolution_of_k(A, max(n_max, 0))
    hR = algebra_profile(A)
    beta = res.betti_numbers(n_max)
    checks: list = []
    for n in range(n_max + 1):
        b_prev = beta[n - 1] if n >= 1 else 0
        expect = b_prev * hR.tilde(e) + comb(e, n + e)
        got = koszul_profile(res.syzygy(n)).h[e]
        _check(checks, f"h_{e}(syz_{n} k) = beta_{n-1}*~h_{e}(R) + C({e},{n + e})",
               got == expect, f"{got} vs {expect}")
    return CheckReport(all(c[1] for c in checks), checks)
