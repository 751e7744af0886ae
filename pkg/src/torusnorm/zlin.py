"""Exact linear algebra over F2 (bit-packed) and over Z/2^K (int64 numpy).

Everything here is deterministic and exact: no floating point is used for
arithmetic, only integer ops.  Matrices over Z/2^K keep K <= 30 so that
int64 products of two reduced residues never overflow.
"""

from __future__ import annotations

import numpy as np

MAX_K = 30


class CapExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# F2: rows are Python ints, bit j = entry in column j.


class MatF2:
    """Bit-packed matrix over F2; rows are ints, LSB = column 0."""

    def __init__(self, rows, ncols):
        self.rows = [int(r) for r in rows]
        self.ncols = int(ncols)

    @classmethod
    def from_dense(cls, a):
        a = np.asarray(a) % 2
        rows = [int(sum((1 << j) for j in range(a.shape[1]) if a[i, j])) for i in range(a.shape[0])]
        return cls(rows, a.shape[1])

    def to_dense(self):
        out = np.zeros((len(self.rows), self.ncols), dtype=np.int64)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = (r >> j) & 1
        return out

    @property
    def nrows(self):
        return len(self.rows)


def f2_rref(rows, ncols):
    """Reduced row echelon form over F2. Returns (rref rows, pivot columns)."""
    work = [int(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and ((work[i] >> col) & 1):
                work[i] ^= work[rank]
        pivots.append(col)
        rank += 1
    return work[:rank], pivots


def rank_f2(m: MatF2) -> int:
    """Row rank over F2."""
    _, pivots = f2_rref(m.rows, m.ncols)
    return len(pivots)


def kernel_f2(m: MatF2) -> list[int]:
    """Basis of the right null space, each vector bit-packed (bit j = coord j)."""
    rref, pivots = f2_rref(m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, pc in enumerate(pivots):
            if (rref[i] >> free) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def f2_solve(m: MatF2, b: int):
    """One solution x of M x = b over F2 (b bit-packed by row index), or None."""
    aug = [r | (((b >> i) & 1) << m.ncols) for i, r in enumerate(m.rows)]
    rref, pivots = f2_rref(aug, m.ncols)
    x = 0
    for i, pc in enumerate(pivots):
        if (rref[i] >> m.ncols) & 1:
            x |= 1 << pc
    # check
    for i, r in enumerate(m.rows):
        if bin(r & x).count("1") % 2 != ((b >> i) & 1):
            return None
    return x


def f2_span_contains(basis_rows, ncols, v) -> bool:
    r0 = f2_rref(basis_rows, ncols)[0]
    r1 = f2_rref(list(basis_rows) + [v], ncols)[0]
    return len(r0) == len(r1)


def bits_to_vec(v, n):
    return np.array([(v >> j) & 1 for j in range(n)], dtype=np.int64)


def vec_to_bits(a):
    return int(sum((1 << j) for j, x in enumerate(np.asarray(a) % 2) if x))


# ---------------------------------------------------------------------------
# Z/2^K: dense int64 arrays, entries reduced into [0, 2^K).


def zmod(a, K):
    return np.asarray(a, dtype=np.int64) % (1 << K)


def zmat(a, K):
    m = np.array(a, dtype=np.int64) % (1 << K)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    return m


def matmul(a, b, K):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % (1 << K)


def identity(n):
    return np.eye(n, dtype=np.int64)


def inv_unit(u, K):
    """Inverse of an odd residue mod 2^K."""
    u = int(u) % (1 << K)
    if u % 2 == 0:
        raise ValueError("not a unit mod 2^K")
    return pow(u, -1, 1 << K)


def inv_mat(a, K):
    """Inverse of a matrix invertible mod 2^K (odd determinant)."""
    a = zmat(a, K)
    n = a.shape[0]
    work = np.concatenate([a.copy(), identity(n)], axis=1)
    mod = 1 << K
    for col in range(n):
        piv = None
        for i in range(col, n):
            if work[i, col] % 2 == 1:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix not invertible mod 2^K")
        if piv != col:
            work[[col, piv]] = work[[piv, col]]
        work[col] = (work[col] * inv_unit(work[col, col], K)) % mod
        for i in range(n):
            if i != col and work[i, col]:
                work[i] = (work[i] - work[i, col] * work[col]) % mod
    return work[:, n:]


def _v2_table(a, K):
    """Elementwise 2-adic valuation; zeros get K."""
    v = np.full(a.shape, K, dtype=np.int64)
    nz = a != 0
    if nz.any():
        lsb = (a[nz] & -a[nz]).astype(np.float64)
        v[nz] = np.log2(lsb).astype(np.int64)
    return v


def smith_mod2k(a, K, want_u=False, want_v=False):
    """Smith normal form over Z/2^K by 2-adic-valuation pivoting.

    Returns (exps, U, V) with U A V = diag(2^exps) mod 2^K; pivots are chosen
    with the smallest valuation first, ties broken by lowest row then column
    index, so the output is deterministic.  exps has length min(m, n), with
    exponent K standing for a zero diagonal entry.
    """
    a = zmat(np.atleast_2d(a), K).copy()
    m, n = a.shape
    mod = 1 << K
    U = identity(m) if want_u else None
    V = identity(n) if want_v else None
    r = min(m, n)
    exps = []
    for t in range(r):
        sub = a[t:, t:]
        v2 = _v2_table(sub, K)
        e = int(v2.min())
        if e >= K:
            exps.extend([K] * (r - t))
            break
        # lowest row index, then lowest column index
        idx = np.argwhere(v2 == e)
        i0, j0 = idx[np.lexsort((idx[:, 1], idx[:, 0]))[0]]
        i0, j0 = int(i0) + t, int(j0) + t
        if i0 != t:
            a[[t, i0]] = a[[i0, t]]
            if want_u:
                U[[t, i0]] = U[[i0, t]]
        if j0 != t:
            a[:, [t, j0]] = a[:, [j0, t]]
            if want_v:
                V[:, [t, j0]] = V[:, [j0, t]]
        uinv = inv_unit(a[t, t] >> e, K)
        a[t] = (a[t] * uinv) % mod
        if want_u:
            U[t] = (U[t] * uinv) % mod
        col = a[t + 1:, t]
        if col.any():
            f = (col >> e) % mod
            a[t + 1:] = (a[t + 1:] - np.outer(f, a[t])) % mod
            if want_u:
                U[t + 1:] = (U[t + 1:] - np.outer(f, U[t])) % mod
        row = a[t, t + 1:]
        if row.any():
            f = (row >> e) % mod
            a[:, t + 1:] = (a[:, t + 1:] - np.outer(a[:, t], f)) % mod
            if want_v:
                V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], f)) % mod
        exps.append(e)
    exps.extend([K] * (r - len(exps)))
    return exps, U, V


def smith_z2k(a, K):
    """Invariant exponents 2^{e_1} | ... of a matrix over Z/2^K (e=K: zero)."""
    return smith_mod2k(a, K)[0]


def kernel_mod2k(a, K):
    """Columns generating {x : A x = 0 mod 2^K}. Shape (n, #gens)."""
    a = zmat(np.atleast_2d(a), K)
    m, n = a.shape
    exps, _, V = smith_mod2k(a, K, want_v=True)
    cols = []
    for j, e in enumerate(exps):
        if e > 0:
            cols.append((V[:, j] * (1 << (K - e))) % (1 << K))
    for j in range(min(m, n), n):
        cols.append(V[:, j])
    if not cols:
        return np.zeros((n, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def solve_mod2k(a, b, K):
    """One solution x of A x = b mod 2^K, or None."""
    a = zmat(np.atleast_2d(a), K)
    m, n = a.shape
    b = zmod(np.asarray(b, dtype=np.int64).reshape(m), K)
    exps, U, V = smith_mod2k(a, K, want_u=True, want_v=True)
    c = (U @ b) % (1 << K)
    y = np.zeros(n, dtype=np.int64)
    for j in range(min(m, n)):
        e = exps[j]
        if e >= K:
            if c[j] % (1 << K):
                return None
            continue
        if c[j] % (1 << e):
            return None
        y[j] = c[j] >> e
    for j in range(min(m, n), m):
        if c[j] % (1 << K):
            return None
    return (V @ y) % (1 << K)


class AbelianStructure:
    """Isomorphism type of a f.g. abelian 2-group: cyclic 2-power torsion + free rank."""

    def __init__(self, exponents=(), free_rank=0):
        self.exponents = tuple(sorted(int(e) for e in exponents if int(e) > 0))
        self.free_rank = int(free_rank)

    def __eq__(self, other):
        if isinstance(other, AbelianStructure):
            return self.exponents == other.exponents and self.free_rank == other.free_rank
        return NotImplemented

    def __hash__(self):
        return hash((self.exponents, self.free_rank))

    @property
    def order_log2(self):
        return sum(self.exponents)

    def f2_rank(self):
        """Dimension as F2-vector space; raises if not elementary abelian."""
        if any(e != 1 for e in self.exponents) or self.free_rank:
            raise ValueError("not an elementary abelian 2-group")
        return len(self.exponents)

    def is_trivial(self):
        return not self.exponents and not self.free_rank

    def __repr__(self):
        return f"AbelianStructure({list(self.exponents)}, free_rank={self.free_rank})"

    def __str__(self):
        parts = [f"Z/{1 << e}" for e in reversed(self.exponents)]
        if self.free_rank:
            parts = [f"T^{self.free_rank}"] + parts
        return " x ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, s):
        s = s.strip()
        if s in ("0", "1", "triv"):
            return cls()
        exps = []
        free = 0
        for part in s.split("x"):
            part = part.strip()
            if part.startswith("T^"):
                free = int(part[2:])
            elif part.startswith("T"):
                free = 1
            else:
                q = int(part.split("/")[1])
                e = q.bit_length() - 1
                exps.append(e)
                if (1 << e) != q:
                    raise ValueError(f"not a 2-power: {part}")
        return cls(exps, free)


def span_structure(gens, K):
    """Structure of the subgroup of (Z/2^K)^N generated by the columns of gens."""
    gens = np.asarray(gens, dtype=np.int64)
    if gens.size == 0:
        return AbelianStructure()
    exps, _, _ = smith_mod2k(gens, K)
    return AbelianStructure([K - e for e in exps if e < K])


def cokernel_structure(relations, ambient_exponents) -> AbelianStructure:
    """Isomorphism type of (prod_i Z/2^{a_i}) / (column span of relations)."""
    amb = [int(a) for a in ambient_exponents]
    N = len(amb)
    M = max(amb) if amb else 1
    rel = np.asarray(relations, dtype=np.int64).reshape(N, -1) if np.size(relations) else np.zeros((N, 0), dtype=np.int64)
    B = np.concatenate([np.diag([1 << a for a in amb]).astype(np.int64), rel], axis=1)
    exps = smith_z2k(zmod(B, M), M)
    return AbelianStructure([min(e, M) for e in exps if e > 0])


class Subquotient:
    """A finite subquotient (span(num)+span(den))/span(den) of (Z/2^K)^N.

    All reasoning happens mod 2^K; elements are ambient column vectors and two
    vectors represent the same class iff their difference lies in span(den).
    """

    def __init__(self, num, den, K, N=None):
        self.K = int(K)
        num = np.asarray(num, dtype=np.int64)
        den = np.asarray(den, dtype=np.int64)
        if N is None:
            N = num.shape[0] if num.size else den.shape[0]
        self.N = int(N)
        self.num = num.reshape(self.N, -1) if num.size else np.zeros((self.N, 0), dtype=np.int64)
        self.den = den.reshape(self.N, -1) if den.size else np.zeros((self.N, 0), dtype=np.int64)
        mod = 1 << self.K
        if self.den.shape[1]:
            exps, U, _ = smith_mod2k(self.den, self.K, want_u=True)
            self._Ud = U
            f = np.full(self.N, self.K, dtype=np.int64)
            for j, e in enumerate(exps):
                f[j] = min(e, self.K)
            self._f = f
        else:
            self._Ud = identity(self.N)
            self._f = np.full(self.N, self.K, dtype=np.int64)
        self._scale = (1 << (self.K - self._f)) % mod
        self._fmod = np.array([1 << int(e) for e in self._f], dtype=np.int64)
        ghat = self._tohat(self.num)
        self._ghat = ghat
        exps, Ug, Vg = smith_mod2k(ghat, self.K, want_u=True, want_v=True) if ghat.size else ([], None, None)
        gens, orders = [], []
        if ghat.size:
            prod = (ghat @ Vg) % mod
            for j, e in enumerate(exps):
                if e < self.K:
                    gens.append(prod[:, j])
                    orders.append(self.K - e)
            for j in range(len(exps), ghat.shape[1]):
                col = prod[:, j]
                if col.any():
                    raise AssertionError("smith postcondition violated")
        self._gen_hat = np.stack(gens, axis=1) if gens else np.zeros((self.N, 0), dtype=np.int64)
        self.orders = tuple(orders)
        self.structure = AbelianStructure(orders)

    def _tohat(self, x):
        """Quotient coordinates, scaled into the uniform modulus 2^K."""
        mod = 1 << self.K
        z = (self._Ud @ np.asarray(x, dtype=np.int64).reshape(self.N, -1)) % mod
        z = z % self._fmod[:, None]
        return (z * self._scale[:, None]) % mod

    def generators(self):
        """Ambient representatives of independent generators (col i has order 2^orders[i])."""
        mod = 1 << self.K
        if not hasattr(self, "_gen_amb"):
            if self._gen_hat.size:
                z = (self._gen_hat // self._scale[:, None]) % mod
                Udi = inv_mat(self._Ud, self.K)
                self._gen_amb = (Udi @ z) % mod
            else:
                self._gen_amb = np.zeros((self.N, 0), dtype=np.int64)
        return self._gen_amb

    def is_zero(self, x):
        return not self._tohat(x).any()

    def same_class(self, x, y):
        return self.is_zero(np.asarray(x, dtype=np.int64) - np.asarray(y, dtype=np.int64))

    def contains(self, x):
        """Is the class of x in span(num) mod span(den)?"""
        big = np.concatenate([self._gen_hat, self._tohat(np.asarray(x).reshape(self.N, 1))], axis=1)
        return span_structure(big, self.K) == self.structure

    def express(self, x):
        """Coefficients c with x = sum c_i gen_i mod den, or None."""
        xh = self._tohat(np.asarray(x).reshape(self.N, 1))
        if self._gen_hat.shape[1] == 0:
            return np.zeros(0, dtype=np.int64) if not xh.any() else None
        sol = solve_mod2k(self._gen_hat, xh[:, 0], self.K)
        if sol is None:
            return None
        return np.array([int(sol[i]) % (1 << o) for i, o in enumerate(self.orders)], dtype=np.int64)

    def elements(self, cap=4096):
        """All class representatives (ambient vectors); raises CapExceeded if too many."""
        total = 1
        for o in self.orders:
            total <<= o
            if total > cap:
                raise CapExceeded(f"subquotient has {total}+ elements")
        gens = self.generators()
        mod = 1 << self.K
        out = [np.zeros(self.N, dtype=np.int64)]
        for i, o in enumerate(self.orders):
            new = []
            for c in range(1, 1 << o):
                base = (c * gens[:, i]) % mod
                new.extend((x + base) % mod for x in out)
            out.extend(new)
        return out

    def fixed_subgroup(self, mats):
        """Subquotient of classes fixed by every matrix in mats (ambient action)."""
        mod = 1 << self.K
        carriers = np.concatenate([self.num, self.den], axis=1)
        p = carriers.shape[1]
        if p == 0:
            return self
        rows = []
        for P in mats:
            diff = ((np.asarray(P, dtype=np.int64) - identity(self.N)) @ carriers) % mod
            rows.append(self._tohat(diff))
        big = np.concatenate(rows, axis=0)
        ker = kernel_mod2k(big, self.K)
        new_num = (carriers @ ker) % mod if ker.size else np.zeros((self.N, 0), dtype=np.int64)
        return Subquotient(new_num, self.den, self.K, self.N)
