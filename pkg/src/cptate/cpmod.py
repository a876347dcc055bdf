"""Modules over a cyclic group of prime order p, and their Tate cohomology.

A module is a finitely generated abelian group G = Z^m / L together with
an integer matrix tau whose induced map on G is an automorphism of order
dividing p. With S = tau - 1 and N = 1 + tau + ... + tau^(p-1):

    H^0 = Ker S / Im N        (fixed points modulo norms)
    H^1 = Ker N / Im S

Both are elementary abelian p-groups, and for finite G they have equal
rank (the Herbrand quotient is trivial).
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlinalg import (
    FgAbGroup,
    IntMatrix,
    cokernel,
    free_abelian,
    induced_subquotient,
    lattice_basis,
    snf,
    _solve,
)


class CpModuleError(ValueError):
    """Base class for module construction and operation failures."""


class NotPrime(CpModuleError):
    pass


class TauDoesNotDescend(CpModuleError):
    """tau does not preserve the relation lattice."""


class TauNotInvertible(CpModuleError):
    """tau is not an automorphism of the presented group."""


class TauOrderNotDividingP(CpModuleError):
    """tau^p is not the identity on the presented group."""


class PrimeMismatch(CpModuleError):
    pass


class ModuleNotFinite(CpModuleError):
    pass


class ModuleNotTorsionFree(CpModuleError):
    pass


class InconsistentRank(CpModuleError):
    """Cohomology dimensions are impossible for any sum of the three
    indecomposable torsion-free module types."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CpModule:
    """Action of C_p = <t | t^p> on group, with t acting via tau."""

    p: int
    group: FgAbGroup
    tau: IntMatrix

    @property
    def ambient_rank(self):
        return self.group.ambient_rank

    def __str__(self):
        return f"C_{self.p}-module on {self.group}"


def _in_lattice_all(mat: IntMatrix, rel_dec) -> bool:
    return all(_solve(rel_dec, mat.col(j)) is not None for j in range(mat.cols))


def new_cp_module(p: int, relations: IntMatrix, tau: IntMatrix) -> CpModule:
    """Validated constructor.

    Checks, in order: p prime, shapes consistent, tau preserves the
    relation lattice, tau induces an automorphism (the lattice spanned by
    tau's columns together with the relations is all of Z^m), and
    tau^p = 1 on the group.
    """
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    m = relations.rows
    if tau.rows != m or tau.cols != m:
        raise CpModuleError(f"tau must be {m}x{m}, got {tau.rows}x{tau.cols}")
    group = cokernel(relations)
    rel_dec = snf(relations)
    if not _in_lattice_all(tau @ relations, rel_dec):
        raise TauDoesNotDescend(
            "tau does not map the relation lattice into itself"
        )
    # surjectivity on a f.g. group is equivalent to invertibility
    if not cokernel(tau.hstack(relations)).is_trivial:
        raise TauNotInvertible("tau is not surjective on the group")
    tp = tau.power(p) - IntMatrix.identity(m)
    if not _in_lattice_all(tp, rel_dec):
        raise TauOrderNotDividingP(f"tau^{p} is not the identity on the group")
    return CpModule(p=p, group=group, tau=tau)


def trivial_module(p: int, group: FgAbGroup) -> CpModule:
    """The group with tau acting as the identity."""
    return new_cp_module(p, group.relations, IntMatrix.identity(group.ambient_rank))


def norm_operator(module: CpModule) -> IntMatrix:
    """N = 1 + tau + ... + tau^(p-1)."""
    m = module.ambient_rank
    acc = IntMatrix.identity(m)
    out = IntMatrix.identity(m)
    for _ in range(module.p - 1):
        acc = module.tau @ acc
        out = out + acc
    return out


@dataclass(frozen=True)
class TateCohomology:
    h0: FgAbGroup
    h1: FgAbGroup
    dim_h0: int
    dim_h1: int


def tate(module: CpModule) -> TateCohomology:
    """Both Tate groups of the module, with F_p dimensions.

    The construction guarantees elementary abelian p-group output; a
    violation would mean the module failed validation, so it is treated
    as an internal error rather than a verdict.
    """
    m = module.ambient_rank
    s_op = module.tau - IntMatrix.identity(m)
    n_op = norm_operator(module)
    h0 = induced_subquotient(module.group, s_op, n_op)
    h1 = induced_subquotient(module.group, n_op, s_op)
    for name, h in (("H^0", h0), ("H^1", h1)):
        if h.free_rank != 0 or any(f != module.p for f in h.invariant_factors):
            raise CpModuleError(
                f"{name} = {h} is not an elementary abelian {module.p}-group; "
                "module validation was bypassed or broken"
            )
    return TateCohomology(
        h0=h0, h1=h1,
        dim_h0=len(h0.invariant_factors),
        dim_h1=len(h1.invariant_factors),
    )


def herbrand_check(module: CpModule) -> bool:
    """dim H^0 == dim H^1; valid only for finite modules."""
    if not module.group.is_finite:
        raise ModuleNotFinite(f"{module.group} has free rank {module.group.free_rank}")
    t = tate(module)
    return t.dim_h0 == t.dim_h1


def fixed_points(module: CpModule) -> FgAbGroup:
    """The subgroup of elements fixed by tau, as an abstract group."""
    m = module.ambient_rank
    s_op = module.tau - IntMatrix.identity(m)
    return induced_subquotient(module.group, s_op, IntMatrix.zeros(m, m))


@dataclass(frozen=True)
class TypeMultiplicities:
    """Multiplicities (f, t, a) of the indecomposable torsion-free types:
    free Z[C_p] summands, trivial Z summands, augmentation-ideal summands."""

    f: int
    t: int
    a: int


def classify_free(module: CpModule) -> TypeMultiplicities:
    """Recover type multiplicities of a torsion-free module from rank and
    cohomology: t = dim H^0, a = dim H^1, f = (rank - t - a(p-1)) / p."""
    if module.group.invariant_factors:
        raise ModuleNotTorsionFree(f"{module.group} has torsion")
    rank = module.group.free_rank
    co = tate(module)
    t, a = co.dim_h0, co.dim_h1
    rem = rank - t - a * (module.p - 1)
    if rem < 0 or rem % module.p:
        raise InconsistentRank(
            f"rank {rank} with cohomology dims ({t}, {a}) fits no type decomposition"
        )
    return TypeMultiplicities(f=rem // module.p, t=t, a=a)


def sharp_dual(module: CpModule) -> CpModule:
    """Same group, generator acting by the inverse automorphism."""
    inv = module.tau.power(module.p - 1)
    return new_cp_module(module.p, module.group.relations, inv)


def _clean_free_presentation(module: CpModule):
    """Rewrite the free quotient G / torsion on a basis of Z^r.

    In coordinates y = U x from the Smith form of the relations, the
    saturation of the relation lattice is spanned by the first `rank`
    basis vectors, so the induced action on the quotient is the lower
    right block of U tau U^-1.
    """
    dec = snf(module.group.relations)
    r = dec.rank
    m = module.ambient_rank
    conj = dec.u @ module.tau @ dec.u_inv
    block = [[conj.at(i, j) for j in range(r, m)] for i in range(r, m)]
    return IntMatrix.from_rows(block, cols=m - r)


def free_module(module: CpModule) -> CpModule:
    """The torsion-free quotient G / G_tor with the induced action."""
    block = _clean_free_presentation(module)
    return new_cp_module(module.p, IntMatrix.zeros(block.rows, 0), block)


def tor_module(module: CpModule) -> CpModule:
    """The torsion subgroup with the restricted action.

    The saturation of the relation lattice has basis the first `rank`
    columns of U^-1; in that basis the relations become the diagonal of
    the Smith form and the restricted action is solved for exactly.
    """
    dec = snf(module.group.relations)
    r = dec.rank
    basis = IntMatrix.from_columns([dec.u_inv.col(i) for i in range(r)], module.ambient_rank)
    rel = IntMatrix.diagonal(list(dec.diagonal[:r]))
    basis_dec = snf(basis)
    cols = []
    for j in range(r):
        z = _solve(basis_dec, (module.tau @ basis).col(j))
        if z is None:
            raise CpModuleError("torsion subgroup is not tau-stable; validation broken")
        cols.append(z)
    tau_t = IntMatrix.from_columns(cols, r)
    return new_cp_module(module.p, rel, tau_t)


def star_dual(module: CpModule) -> CpModule:
    """Hom(V, Z) with the contragredient action, for torsion-free V.

    On a clean basis the action matrix is exactly invertible over Z, and
    the dual action is the transpose of its inverse.
    """
    if module.group.invariant_factors:
        raise ModuleNotTorsionFree(f"{module.group} has torsion")
    clean = _clean_free_presentation(module)
    dual_tau = clean.power(module.p - 1).transpose()
    return new_cp_module(module.p, IntMatrix.zeros(clean.rows, 0), dual_tau)


def direct_sum(a: CpModule, b: CpModule) -> CpModule:
    if a.p != b.p:
        raise PrimeMismatch(f"cannot sum a C_{a.p}-module with a C_{b.p}-module")
    ra, rb = a.group.relations, b.group.relations
    rel = IntMatrix.block_diag([ra, rb])
    tau = IntMatrix.block_diag([a.tau, b.tau])
    return new_cp_module(a.p, rel, tau)


# -- standard torsion-free building blocks ---------------------------------


def free_regular_module(p: int) -> CpModule:
    """Z[C_p]: rank p, generator permuting the basis cyclically."""
    cols = [[1 if i == (j + 1) % p else 0 for i in range(p)] for j in range(p)]
    tau = IntMatrix.from_columns(cols, p)
    return new_cp_module(p, IntMatrix.zeros(p, 0), tau)


def trivial_free_module(p: int, rank: int = 1) -> CpModule:
    return new_cp_module(p, IntMatrix.zeros(rank, 0), IntMatrix.identity(rank))


def augmentation_module(p: int) -> CpModule:
    """Z[zeta_p] = Z[x]/(1 + x + ... + x^(p-1)), generator acting by zeta.

    Companion matrix on the basis 1, zeta, ..., zeta^(p-2).
    """
    n = p - 1
    cols = []
    for j in range(n - 1):
        cols.append([1 if i == j + 1 else 0 for i in range(n)])
    cols.append([-1] * n)
    tau = IntMatrix.from_columns(cols, n)
    return new_cp_module(p, IntMatrix.zeros(n, 0), tau)
