"""Exact integer linear algebra over Z.

Smith normal form with tracked unimodular transforms, integer lattice
membership, cokernel presentations of finitely generated abelian groups,
and the kernel/image subquotient construction that the cohomology layer
is built on.

Everything uses plain Python ints, so there is no overflow anywhere.
All public values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


class NotUnimodular(ValueError):
    """Matrix is not invertible over the integers."""


class MatrixDoesNotDescend(ValueError):
    """An endomorphism of Z^m does not preserve the relation lattice."""


class CompositeNotZero(ValueError):
    """im_of does not land inside ker_of on the presented group."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"matrix entries must be ints, got {type(e).__name__}")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows, *, cols=None):
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise DimensionMismatch("ragged rows")
            if cols is not None and cols != ncols:
                raise DimensionMismatch("cols does not match row length")
        else:
            if cols is None:
                raise DimensionMismatch("empty matrix needs explicit cols")
            ncols = cols
        flat = tuple(x for r in rows for x in r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [tuple(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatch("column of wrong length")
        flat = tuple(columns[j][i] for i in range(rows) for j in range(len(columns)))
        return cls(rows, len(columns), flat)

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag, rows=None, cols=None):
        diag = list(diag)
        r = len(diag) if rows is None else rows
        c = len(diag) if cols is None else cols
        if len(diag) > min(r, c):
            raise DimensionMismatch("too many diagonal entries")
        return cls(r, c, tuple(
            diag[i] if i == j and i < len(diag) else 0
            for i in range(r) for j in range(c)
        ))

    @classmethod
    def block_diag(cls, blocks):
        blocks = list(blocks)
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        out = [[0] * c for _ in range(r)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[i0 + i][j0 + j] = b.at(i, j)
            i0 += b.rows
            j0 += b.cols
        return cls.from_rows(out, cols=c)

    # -- access -------------------------------------------------------

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    # -- arithmetic ---------------------------------------------------

    def __matmul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        a = self.to_rows()
        b = other.to_rows()
        n, k, m = self.rows, self.cols, other.cols
        flat = []
        for i in range(n):
            ai = a[i]
            for j in range(m):
                flat.append(sum(ai[t] * b[t][j] for t in range(k)))
        return IntMatrix(n, m, tuple(flat))

    def __add__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols,
                         tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __mul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return IntMatrix(self.rows, self.cols, tuple(scalar * x for x in self.entries))

    __rmul__ = __mul__

    def apply(self, vec):
        """Matrix-vector product, returns a tuple of length self.rows."""
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector length {len(vec)} != cols {self.cols}")
        return tuple(
            sum(self.row(i)[j] * vec[j] for j in range(self.cols))
            for i in range(self.rows)
        )

    def power(self, k):
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, tuple(out))

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return all(x == 0 for x in self.entries)

    def is_identity(self):
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def main_diagonal(self):
        return tuple(self.at(i, i) for i in range(min(self.rows, self.cols)))

    def __repr__(self):
        if self.rows * self.cols <= 16:
            return f"IntMatrix({self.to_rows()!r})"
        return f"IntMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class SmithDecomposition:
    """u @ source @ v == s with s = diag(d1, d2, ...), d1 | d2 | ... >= 0.

    u and v are unimodular; their exact integer inverses are tracked
    during elimination and exposed as u_inv, v_inv.
    """

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    source: IntMatrix

    @property
    def diagonal(self):
        return self.s.main_diagonal()

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def _find_pivot(s, t, m, n):
    # smallest nonzero |entry| in the block [t:, t:], first in row-major order
    best = None
    for i in range(t, m):
        row = s[i]
        for j in range(t, n):
            x = row[j]
            if x != 0:
                if best is None or abs(x) < best[0]:
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best[1], best[2]
    return None if best is None else (best[1], best[2])


def snf(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form by elimination with minimal-|pivot| selection.

    Every row operation on s is mirrored on u and undone on u_inv (as a
    column operation); likewise for columns, v and v_inv. The invariants
    u @ a @ v == s, u @ u_inv == 1, v @ v_inv == 1 therefore hold at
    every step, and the final diagonal is nonnegative with each entry
    dividing the next.
    """
    m, n = a.rows, a.cols
    s = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    uinv = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()
    vinv = IntMatrix.identity(n).to_rows()

    def row_swap(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def row_sub(i, j, q):
        # row i -= q * row j
        if q == 0:
            return
        s[i] = [x - q * y for x, y in zip(s[i], s[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]
        for r in uinv:
            r[j] += q * r[i]

    def row_neg(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    def col_swap(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def col_sub(i, j, q):
        # col i -= q * col j
        if q == 0:
            return
        for r in s:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]
        vinv[j] = [x + q * y for x, y in zip(vinv[j], vinv[i])]

    t = 0
    while t < min(m, n):
        piv = _find_pivot(s, t, m, n)
        if piv is None:
            break
        i, j = piv
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)

        while True:
            if s[t][t] < 0:
                row_neg(t)
            restart = False
            for i in range(t + 1, m):
                if s[i][t] == 0:
                    continue
                q, r = divmod(s[i][t], s[t][t])
                row_sub(i, t, q)
                if r:
                    row_swap(t, i)  # strictly smaller pivot
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, n):
                if s[t][j] == 0:
                    continue
                q, r = divmod(s[t][j], s[t][t])
                col_sub(j, t, q)
                if r:
                    col_swap(t, j)
                    restart = True
                    break
            if restart:
                continue
            # pivot cleared; enforce that it divides the rest of the block
            d = s[t][t]
            bad_row = None
            for i in range(t + 1, m):
                if any(x % d for x in s[i][t + 1:]):
                    bad_row = i
                    break
            if bad_row is None:
                break
            # folding the offending row into row t shrinks the pivot to a
            # gcd on the next pass
            s[t] = [x + y for x, y in zip(s[t], s[bad_row])]
            u[t] = [x + y for x, y in zip(u[t], u[bad_row])]
            for r in uinv:
                r[bad_row] -= r[t]
        t += 1

    dec = SmithDecomposition(
        u=IntMatrix.from_rows(u, cols=m),
        s=IntMatrix.from_rows(s, cols=n),
        v=IntMatrix.from_rows(v, cols=n),
        u_inv=IntMatrix.from_rows(uinv, cols=m),
        v_inv=IntMatrix.from_rows(vinv, cols=n),
        source=a,
    )
    return dec


def det(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Inverse of a matrix that is invertible over Z."""
    if a.rows != a.cols:
        raise NotUnimodular("not square")
    dec = snf(a)
    if not dec.s.is_identity():
        raise NotUnimodular(f"element divisors {dec.diagonal} != all 1")
    # u a v == 1  =>  a^-1 == v u
    return dec.v @ dec.u


def _solve(dec: SmithDecomposition, b) -> tuple | None:
    """One integer solution x of source @ x == b, or None."""
    m, n = dec.source.rows, dec.source.cols
    b = tuple(b)
    if len(b) != m:
        raise DimensionMismatch(f"vector length {len(b)} != rows {m}")
    c = dec.u.apply(b)
    dg = dec.diagonal
    y = [0] * n
    for i in range(m):
        di = dg[i] if i < len(dg) else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            q, r = divmod(c[i], di)
            if r:
                return None
            y[i] = q
    return dec.v.apply(y)


def lattice_member(a: IntMatrix, b) -> tuple | None:
    """Solve a @ x == b over Z; returns one solution or None.

    Equivalently: decide whether b lies in the lattice generated by the
    columns of a, with an explicit coordinate certificate.
    """
    return _solve(snf(a), b)


def kernel(a: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel {x : a @ x == 0}, as matrix columns."""
    dec = snf(a)
    cols = [dec.v.col(j) for j in range(dec.rank, a.cols)]
    return IntMatrix.from_columns(cols, a.cols)


def lattice_basis(gens: IntMatrix) -> IntMatrix:
    """Basis (independent columns) of the lattice spanned by the columns."""
    dec = snf(gens)
    cols = []
    for i in range(dec.rank):
        d = dec.diagonal[i]
        cols.append(tuple(d * x for x in dec.u_inv.col(i)))
    return IntMatrix.from_columns(cols, gens.rows)


@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group Z^ambient_rank / (column lattice).

    invariant_factors and free_rank are the normalized isomorphism
    invariants (unit factors dropped, each factor dividing the next);
    equality compares those, not the presentation.
    """

    invariant_factors: tuple
    free_rank: int
    ambient_rank: int = field(compare=False)
    relations: IntMatrix = field(compare=False)

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.invariant_factors} not a divisibility chain")
        if any(f < 2 for f in self.invariant_factors):
            raise ValueError("invariant factors must be > 1")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def order(self):
        if not self.is_finite:
            return None
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    def p_rank(self, p):
        """Number of invariant factors divisible by p (the p-rank)."""
        return sum(1 for f in self.invariant_factors if f % p == 0)

    def p_part_elementary(self, p):
        """True when the p-primary part is a direct sum of Z/p's."""
        return all(f % (p * p) for f in self.invariant_factors)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{f}" for f in self.invariant_factors)
        return " x ".join(parts) if parts else "0"


def cokernel(relations: IntMatrix) -> FgAbGroup:
    """The group Z^m / (lattice spanned by the columns of relations)."""
    dec = snf(relations)
    inv = tuple(d for d in dec.diagonal if d > 1)
    return FgAbGroup(
        invariant_factors=inv,
        free_rank=relations.rows - dec.rank,
        ambient_rank=relations.rows,
        relations=relations,
    )


def free_abelian(n: int) -> FgAbGroup:
    return cokernel(IntMatrix.zeros(n, 0))


def from_invariants(factors, free_rank=0) -> FgAbGroup:
    """Group with the given invariant factors plus a free part, presented
    on len(factors) + free_rank generators with a diagonal relation block."""
    factors = [int(f) for f in factors]
    ambient = len(factors) + free_rank
    rel = IntMatrix.diagonal(factors, rows=ambient, cols=len(factors))
    return cokernel(rel)


def _require_descends(phi: IntMatrix, rel_dec: SmithDecomposition, what: str):
    prod = phi @ rel_dec.source
    for j in range(prod.cols):
        if _solve(rel_dec, prod.col(j)) is None:
            raise MatrixDoesNotDescend(
                f"{what} maps relation column {j} outside the relation lattice"
            )


def induced_subquotient(group: FgAbGroup, ker_of: IntMatrix, im_of: IntMatrix) -> FgAbGroup:
    """Ker(ker_of) / Im(im_of) inside group = Z^m / L.

    Both matrices are endomorphisms of Z^m that must descend to group,
    and im_of must land inside the kernel of ker_of there. The numerator
    is the preimage lattice K = {x : ker_of x in L}, obtained by
    projecting the kernel of [ker_of | relations] onto the first m
    coordinates; the result is K modulo (im_of columns + L), rewritten
    in a basis of K and normalized.
    """
    m = group.ambient_rank
    rel = group.relations
    for name, mat in (("ker_of", ker_of), ("im_of", im_of)):
        if mat.rows != m or mat.cols != m:
            raise DimensionMismatch(f"{name} must be {m}x{m}, got {mat.rows}x{mat.cols}")
    rel_dec = snf(rel)
    _require_descends(ker_of, rel_dec, "ker_of")
    _require_descends(im_of, rel_dec, "im_of")
    comp = ker_of @ im_of
    for j in range(m):
        if _solve(rel_dec, comp.col(j)) is None:
            raise CompositeNotZero(
                f"ker_of @ im_of is nonzero on the group (generator {j})"
            )

    big = snf(ker_of.hstack(rel))
    k_gens = [big.v.col(j)[:m] for j in range(big.rank, big.v.cols)]
    num_basis = lattice_basis(IntMatrix.from_columns(k_gens, m))

    denom_cols = im_of.columns() + rel.columns()
    basis_dec = snf(num_basis)
    coords = []
    for colvec in denom_cols:
        z = _solve(basis_dec, colvec)
        if z is None:
            # cannot happen once the checks above pass
            raise CompositeNotZero("denominator generator escapes the numerator lattice")
        coords.append(z)
    inner = IntMatrix.from_columns(coords, num_basis.cols)
    return cokernel(inner)
