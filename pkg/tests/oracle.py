"""Brute-force Betti oracle, independent of the resolution code.

Computes dim Tor_n(M, k) as homology of the reduced bar complex
C_n = M (x) m^{(x)n}, whose differential multiplies adjacent tensor slots.
Exponential in n, so only usable for small n, but it shares no code path
with syzygy_step/resolve beyond the exact matrix kernel.
"""
from itertools import product

from artinalg.matrix import SparseMatrix


def bar_betti(M, n_max):
    """dim Tor_i(M, k) for i = 0..n_max via the reduced bar complex."""
    A = M.algebra
    F = A.field
    dm = A.dim - 1          # basis of the maximal ideal: A.basis[1:]
    md = M.dim

    # product of two maximal-ideal basis monomials, in algebra coordinates
    def mono_product(i, j):
        col = A.monomial_action(A.basis[1 + i]).column(1 + j)
        assert 0 not in col, "product of maximal-ideal elements left the ideal"
        return col

    # action of the i-th maximal-ideal basis monomial on M
    def m_action(i):
        return M.monomial_action(A.basis[1 + i])

    def chain_dim(n):
        return md * dm ** n

    def index_of(x, word):
        idx = x
        for a in word:
            idx = idx * dm + a
        return idx

    def differential(n):
        """d_n : C_n -> C_{n-1}."""
        d = SparseMatrix.zeros(chain_dim(n - 1), chain_dim(n), F)
        for x in range(md):
            for word in product(range(dm), repeat=n):
                src = index_of(x, word)
                # slot 0: move the first tensor factor onto M
                img = m_action(word[0]).column(x)
                for y, v in img.items():
                    tgt = index_of(y, word[1:])
                    cur = d.rows[tgt].get(src, F.zero())
                    nv = F.add(cur, v)
                    if F.is_zero(nv):
                        d.rows[tgt].pop(src, None)
                    else:
                        d.rows[tgt][src] = nv
                # inner slots: multiply adjacent factors, sign (-1)^i
                for i in range(1, n):
                    prod_col = mono_product(word[i - 1], word[i])
                    sign = F.one() if i % 2 == 0 else F.neg(F.one())
                    for t, v in prod_col.items():
                        new_word = word[: i - 1] + (t - 1,) + word[i + 1:]
                        tgt = index_of(x, new_word)
                        cur = d.rows[tgt].get(src, F.zero())
                        nv = F.add(cur, F.mul(sign, v))
                        if F.is_zero(nv):
                            d.rows[tgt].pop(src, None)
                        else:
                            d.rows[tgt][src] = nv
        return d

    diffs = [differential(n) for n in range(1, n_max + 2)]
    for a, b in zip(diffs, diffs[1:]):
        assert a.matmul(b).is_zero(), "bar complex differential fails d*d = 0"
    ranks = [d.rref().rank for d in diffs]
    out = []
    for i in range(n_max + 1):
        total = chain_dim(i)
        rank_out = ranks[i - 1] if i >= 1 else 0
        rank_in = ranks[i]
        out.append((total - rank_out) - rank_in)
    return out
