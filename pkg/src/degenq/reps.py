"""Representations: the natural module, duals, tensor powers, weight analysis.

Index conventions, fixed once for the whole package:

* The natural module V has basis v_1, ..., v_{m+n} (stored 0-based).
* Tensor product bases are ordered lexicographically with the LEFT factor most
  significant, matching :meth:`SparseMat.kron`.
* Iterated tensor powers are left-nested: V^{(x)r} = ((V (x) V) (x) V) ...;
  the coassociativity check in :func:`check_hopf_axioms` justifies ignoring
  the nesting order elsewhere.

A representation stores one matrix per generator atom, including K inverses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DimensionMismatch,
    NotSimultaneouslyDiagonal,
    ParamsMismatch,
    ResourceLimit,
)
from .expr import Gen, antipode, cartan, cartan_inv, coproduct_terms, counit, eval_in_rep
from .linalg import SparseMat, Subspace, Vec, kron, nullspace
from .relations import RelationEntry, k2rho_expr, relation_catalog
from .reports import Report
from .scalars import GLParams, RatFn

DEFAULT_MAX_DIM = 20000

_ATOMS = ("e", "f", "K", "Kinv")


@dataclass(frozen=True)
class Weight:
    """Eigenvalues of K_1..K_{m+n} on a simultaneous eigenvector."""

    values: tuple[RatFn, ...]

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass
class Representation:
    params: GLParams
    dim: int
    gens: dict[tuple[str, int], SparseMat]
    label: str = ""
    _catalog: list[RelationEntry] | None = field(default=None, repr=False)

    def __post_init__(self):
        for key, mat in self.gens.items():
            if mat.nrows != self.dim or mat.ncols != self.dim:
                raise DimensionMismatch(f"generator {key} is not {self.dim}x{self.dim}")
        # Cheap sanity on the Cartan part: K Kinv = 1.
        for b in self.params.index_set:
            prod = self.gens[("K", b)] * self.gens[("Kinv", b)]
            if prod != SparseMat.identity(self.dim):
                raise ValueError(f"K{b} * K{b}^-1 is not the identity in {self.label!r}")

    def gen(self, kind: str, index: int) -> SparseMat:
        return self.gens[(kind, index)]

    def atoms(self) -> list[tuple[str, int]]:
        keys = []
        for a in self.params.iprime:
            keys.extend([("e", a), ("f", a)])
        for b in self.params.index_set:
            keys.extend([("K", b), ("Kinv", b)])
        return keys

    def generator_atoms(self) -> list[Gen]:
        """e_a, f_a, K_b as expression atoms (the API surface for Hopf checks)."""
        out = [Gen("e", a) for a in self.params.iprime]
        out += [Gen("f", a) for a in self.params.iprime]
        out += [Gen("K", b) for b in self.params.index_set]
        return out

    def catalog(self) -> list[RelationEntry]:
        if self._catalog is None:
            self._catalog = relation_catalog(self.params)
        return self._catalog


def natural_rep(params: GLParams) -> Representation:
    """The defining module: e_a, f_a act by matrix units, K_b scales v_b by q_b."""
    d = params.size
    gens: dict[tuple[str, int], SparseMat] = {}
    for a in params.iprime:
        gens[("e", a)] = SparseMat.unit(d, d, a - 1, a)
        gens[("f", a)] = SparseMat.unit(d, d, a, a - 1)
    for b in params.index_set:
        qb = params.q_sub(b)
        diag = [qb if i == b - 1 else RatFn.one() for i in range(d)]
        gens[("K", b)] = SparseMat.diagonal(diag)
        gens[("Kinv", b)] = SparseMat.diagonal([v.inv() for v in diag])
    return Representation(params, d, gens, label=f"V({params.m},{params.n})")


def dual_rep(rep: Representation) -> Representation:
    """The dual module: x acts by the transpose of the antipode image."""
    gens: dict[tuple[str, int], SparseMat] = {}
    for kind, index in rep.atoms():
        mat = eval_in_rep(antipode(Gen(kind, index)), rep)
        gens[(kind, index)] = mat.transpose()
    return Representation(rep.params, rep.dim, gens, label=f"({rep.label})*")


def tensor_rep(r1: Representation, r2: Representation, side: str = "Delta") -> Representation:
    """Tensor product module under the chosen comultiplication."""
    if r1.params != r2.params:
        raise ParamsMismatch(f"{r1.label} over {r1.params} vs {r2.label} over {r2.params}")
    params = r1.params
    d1, d2 = r1.dim, r2.dim
    id1, id2 = SparseMat.identity(d1), SparseMat.identity(d2)
    gens: dict[tuple[str, int], SparseMat] = {}
    for a in params.iprime:
        k1 = eval_in_rep(cartan(a), r1)
        k2 = eval_in_rep(cartan(a), r2)
        k1inv = eval_in_rep(cartan_inv(a), r1)
        k2inv = eval_in_rep(cartan_inv(a), r2)
        if side == "Delta":
            gens[("e", a)] = kron(r1.gen("e", a), k2) + kron(id1, r2.gen("e", a))
            gens[("f", a)] = kron(r1.gen("f", a), id2) + kron(k1inv, r2.gen("f", a))
        elif side == "DeltaPrime":
            gens[("e", a)] = kron(r1.gen("e", a), id2) + kron(k1, r2.gen("e", a))
            gens[("f", a)] = kron(r1.gen("f", a), k2inv) + kron(id1, r2.gen("f", a))
        else:
            raise ValueError(f"unknown side {side!r}")
    for b in params.index_set:
        gens[("K", b)] = kron(r1.gen("K", b), r2.gen("K", b))
        gens[("Kinv", b)] = kron(r1.gen("Kinv", b), r2.gen("Kinv", b))
    tag = "" if side == "Delta" else "'"
    return Representation(params, d1 * d2, gens, label=f"{r1.label}(x){tag}{r2.label}")


def iterated_tensor(
    rep: Representation, r: int, side: str = "Delta", max_dim: int = DEFAULT_MAX_DIM
) -> Representation:
    """Left-nested r-th tensor power of rep."""
    if r < 1:
        raise ValueError("tensor power needs r >= 1")
    if rep.dim**r > max_dim:
        raise ResourceLimit(f"dimension {rep.dim}^{r} exceeds cap {max_dim}")
    out = rep
    for _ in range(r - 1):
        out = tensor_rep(out, rep, side)
    return out


def weight_decomposition(rep: Representation) -> list[tuple[Weight, list[Vec]]]:
    """Simultaneous K eigenspaces; requires diagonal K matrices in the working basis."""
    diags = []
    for b in rep.params.index_set:
        mat = rep.gen("K", b)
        if not mat.is_diagonal():
            raise NotSimultaneouslyDiagonal(f"K{b} is not diagonal in the basis of {rep.label!r}")
        diags.append(mat.diagonal_values())
    buckets: dict[tuple[RatFn, ...], list[int]] = {}
    for i in range(rep.dim):
        key = tuple(d[i] for d in diags)
        buckets.setdefault(key, []).append(i)
    out = []
    for key in sorted(buckets, key=lambda k: buckets[k][0]):
        out.append((Weight(key), [Vec.unit(rep.dim, i) for i in buckets[key]]))
    return out


def highest_weight_vectors(rep: Representation) -> list[tuple[Weight, Vec]]:
    """A weight basis of the joint kernel of all raising generators."""
    raising = [rep.gen("e", a) for a in rep.params.iprime]
    found: list[tuple[Weight, Vec]] = []
    for weight, basis in weight_decomposition(rep):
        cols = {t: v for t, v in enumerate(basis)}
        # Stack the images of the weight basis under every e_a.
        entries: dict[tuple[int, int], RatFn] = {}
        row_block = 0
        for mat in raising:
            for t, v in cols.items():
                image = mat.apply(v)
                for i, val in image.entries.items():
                    entries[(row_block + i, t)] = val
            row_block += rep.dim
        stacked = SparseMat(row_block, len(basis), entries)
        for combo in nullspace(stacked):
            v = Vec(rep.dim)
            for t, c in combo.entries.items():
                v = v + basis[t].scale(c)
            found.append((weight, v))
    return found


def submodule_closure(rep: Representation, seeds: list[Vec]) -> Subspace:
    """Smallest subspace containing the seeds and closed under every generator."""
    for s in seeds:
        if s.dim != rep.dim:
            raise DimensionMismatch(f"seed dim {s.dim} in module of dim {rep.dim}")
    space = Subspace(rep.dim, [])
    frontier = []
    for s in seeds:
        if space.add_vector(s):
            frontier.append(s)
    mats = [rep.gens[key] for key in rep.atoms()]
    while frontier:
        next_frontier = []
        for v in frontier:
            for mat in mats:
                w = mat.apply(v)
                if w and space.add_vector(w):
                    next_frontier.append(w)
        frontier = next_frontier
    return space


def quotient_rep(rep: Representation, sub: Subspace, label: str = "") -> Representation:
    """The quotient module rep / sub.

    The quotient basis is the set of non-pivot coordinates of the subspace's
    echelon basis; classes are computed by eliminating pivot coordinates.
    """
    pivots = sub.pivot_columns()
    keep = [j for j in range(rep.dim) if j not in set(pivots)]
    pos = {j: t for t, j in enumerate(keep)}
    gens: dict[tuple[str, int], SparseMat] = {}
    for key, mat in rep.gens.items():
        entries: dict[tuple[int, int], RatFn] = {}
        for t, j in enumerate(keep):
            image = sub.reduce(mat.apply(Vec.unit(rep.dim, j)))
            for i, val in image.entries.items():
                entries[(pos[i], t)] = val
        gens[key] = SparseMat(len(keep), len(keep), entries)
    return Representation(rep.params, len(keep), gens, label=label or f"{rep.label}/sub")


def verify_relations(rep: Representation, entries: list[RelationEntry] | None = None) -> Report:
    """Evaluate every catalog entry in rep; all must be exactly zero."""
    report = Report()
    for entry in entries if entries is not None else rep.catalog():
        value = eval_in_rep(entry.expr, rep)
        if value.is_zero():
            report.add("relations", entry.name, True)
        else:
            witness_key = min(value.entries)
            witness = value.entries[witness_key]
            report.add(
                "relations",
                entry.name,
                False,
                f"{value.nnz()} nonzero entries; entry {witness_key} = {witness}",
            )
    return report


def check_hopf_axioms(rep: Representation, max_dim: int = DEFAULT_MAX_DIM) -> Report:
    """Coassociativity, counit, antipode, and the inner form of the antipode squared.

    All four are verified as exact matrix identities on the generators.
    """
    report = Report()
    params = rep.params

    if rep.dim**3 > max_dim:
        raise ResourceLimit(f"coassociativity needs dim^3 = {rep.dim ** 3} > cap {max_dim}")
    left_nested = tensor_rep(tensor_rep(rep, rep), rep)
    right_nested = tensor_rep(rep, tensor_rep(rep, rep))
    for g in rep.generator_atoms():
        name = f"{g.kind}{g.index}"
        report.add(
            "hopf-coassoc",
            name,
            left_nested.gen(g.kind, g.index) == right_nested.gen(g.kind, g.index),
        )

    identity = SparseMat.identity(rep.dim)
    for g in rep.generator_atoms():
        name = f"{g.kind}{g.index}"
        legs = coproduct_terms(g)
        right_counit = SparseMat.zero(rep.dim, rep.dim)
        left_counit = SparseMat.zero(rep.dim, rep.dim)
        antipode_left = SparseMat.zero(rep.dim, rep.dim)
        antipode_right = SparseMat.zero(rep.dim, rep.dim)
        for lhs, rhs in legs:
            right_counit = right_counit + eval_in_rep(lhs, rep).scale(counit(rhs))
            left_counit = left_counit + eval_in_rep(rhs, rep).scale(counit(lhs))
            antipode_left = antipode_left + eval_in_rep(antipode(lhs), rep) * eval_in_rep(rhs, rep)
            antipode_right = antipode_right + eval_in_rep(lhs, rep) * eval_in_rep(antipode(rhs), rep)
        target = rep.gen(g.kind, g.index)
        report.add("hopf-counit", f"(id x eps) on {name}", right_counit == target)
        report.add("hopf-counit", f"(eps x id) on {name}", left_counit == target)
        eps_target = identity.scale(counit(g))
        report.add("hopf-antipode", f"mu(S x id)Delta on {name}", antipode_left == eps_target)
        report.add("hopf-antipode", f"mu(id x S)Delta on {name}", antipode_right == eps_target)

    k2rho = eval_in_rep(k2rho_expr(params), rep)
    k2rho_inv = eval_in_rep(antipode(k2rho_expr(params)), rep)
    report.add("hopf-s2", "K2rho invertible", k2rho * k2rho_inv == identity)
    for g in rep.generator_atoms():
        name = f"{g.kind}{g.index}"
        s2 = eval_in_rep(antipode(antipode(Gen(g.kind, g.index))), rep)
        conj = k2rho * rep.gen(g.kind, g.index) * k2rho_inv
        report.add("hopf-s2", f"S^2 = Ad(K2rho) on {name}", s2 == conj)
    return report
