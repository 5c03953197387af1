"""Finite dimensional modules of the rank-(2,1) algebra: induced modules and
their simple quotients.

A highest weight is a pair (lambda_1, lambda_2) of nonzero scalars with
lambda_1 = +-q^ell for a nonnegative integer ell (the finiteness criterion in
this rank).  The induced module has the monomial basis

    F^{eF} f_2^{e2} f_1^k v,    eF, e2 in {0, 1},  0 <= k <= ell,

where F = f_1 f_2 - q f_2 f_1, so its dimension is 4(ell+1).  The action is
assembled from the closed commutation rules

    f_1 F = q^-1 F f_1,   f_2 F = -q^-1 F f_2,   F^2 = 0,
    [e_1, F] = f_2 k_1^-1,   [e_2, F] = -q f_1 k_2,
    f_1^k f_2 = [k]_q F f_1^{k-1} + q^k f_2 f_1^k,
    [e_1, f_1^k] = [k]_q f_1^{k-1} (k_1 q^{1-k} - k_1^-1 q^{k-1})/(q - q^-1).

The module is realized as a full gl(2,1) representation: K_3 acts by 1 on the
highest vector and the K_b weights follow the generator bookkeeping, which
makes the whole relation-verification stack directly applicable.

The simple quotient is computed linear-algebraically: repeatedly find weight
vectors killed by both raising operators away from the top weight, close them
under the action, and take the quotient.  The trichotomy:

    typical      (q l1 l2 - q^-1 l1^-1 l2^-1)(l2 - l2^-1) != 0  -> dim 4(ell+1)
    atypical A   l2 = +-1                                       -> dim 2 ell + 1
    atypical B   l2 = +-q^-1 l1^-1                              -> dim 2(ell+1) + 1
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .linalg import SparseMat, Vec
from .reps import (
    Representation,
    highest_weight_vectors,
    quotient_rep,
    submodule_closure,
    verify_relations,
    weight_decomposition,
)
from .scalars import GLParams, Q_MINUS_QINV, RatFn, quantum_int

P21 = GLParams(2, 1)


class ModuleType(Enum):
    TYPICAL = "Typical"
    ATYPICAL_A = "AtypicalA"
    ATYPICAL_B = "AtypicalB"


@dataclass(frozen=True)
class HighestWeightSL21:
    """lambda_1 = sign1 * q^ell with ell >= 0; lambda_2 an arbitrary nonzero scalar."""

    ell: int
    sign1: int
    lambda2: RatFn

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError("ell must be a nonnegative integer")
        if self.sign1 not in (1, -1):
            raise ValueError("sign1 must be +1 or -1")
        if not self.lambda2:
            raise ValueError("lambda2 must be nonzero")

    @property
    def lambda1(self) -> RatFn:
        return RatFn.q(self.ell, self.sign1)


@dataclass
class ModuleData:
    """A concrete module: basis labels (eF, e2, k) and a gl(2,1) representation."""

    hw: HighestWeightSL21
    rep: Representation
    basis_labels: list[tuple[int, int, int]]
    highest_index: int

    @property
    def dim(self) -> int:
        return self.rep.dim


def atypicality_type(hw: HighestWeightSL21) -> tuple[ModuleType, int]:
    """Classify the highest weight and return the expected simple-module dimension."""
    l1, l2 = hw.lambda1, hw.lambda2
    one = RatFn.one()
    if l2 == one or l2 == -one:
        return ModuleType.ATYPICAL_A, 2 * hw.ell + 1
    crit = RatFn.q(1) * l1 * l2 - RatFn.q(-1) * l1.inv() * l2.inv()
    if not crit:
        return ModuleType.ATYPICAL_B, 2 * (hw.ell + 1) + 1
    return ModuleType.TYPICAL, 4 * (hw.ell + 1)


def _label_index(labels: list[tuple[int, int, int]]) -> dict[tuple[int, int, int], int]:
    return {lab: t for t, lab in enumerate(labels)}


def verma_module(hw: HighestWeightSL21) -> ModuleData:
    """The induced module on the basis F^eF f_2^e2 f_1^k v, dimension 4(ell+1)."""
    ell = hw.ell
    l1, l2 = hw.lambda1, hw.lambda2
    q = RatFn.q(1)
    labels = [(eF, e2, k) for eF in (0, 1) for e2 in (0, 1) for k in range(ell + 1)]
    pos = _label_index(labels)
    dim = len(labels)

    def c_raise(k: int) -> RatFn:
        # [e_1, f_1^k] applied to the highest vector: [k]_q (l1 q^{1-k} - l1^-1 q^{k-1})/(q-q^-1)
        if k == 0:
            return RatFn.zero()
        return (
            RatFn(quantum_int(k))
            * (l1 * RatFn.q(1 - k) - l1.inv() * RatFn.q(k - 1))
            / Q_MINUS_QINV
        )

    def d_weight(k: int) -> RatFn:
        # (k_2 - k_2^-1)/(q - q^-1) on f_1^k v, where k_2 acts there by l2 q^k
        mu = l2 * RatFn.q(k)
        return (mu - mu.inv()) / Q_MINUS_QINV

    f1 = {}
    f2 = {}
    e1 = {}
    e2 = {}
    for (eF, ee2, k), col in pos.items():
        # f_1
        if eF == 0 and ee2 == 0:
            if k < ell:
                f1[(pos[(0, 0, k + 1)], col)] = RatFn.one()
        elif eF == 0 and ee2 == 1:
            f1[(pos[(1, 0, k)], col)] = RatFn.one()
            if k < ell:
                f1[(pos[(0, 1, k + 1)], col)] = q
        elif eF == 1 and ee2 == 0:
            if k < ell:
                f1[(pos[(1, 0, k + 1)], col)] = q.inv()
        else:
            if k < ell:
                f1[(pos[(1, 1, k + 1)], col)] = RatFn.one()
        # f_2
        if ee2 == 0 and eF == 0:
            f2[(pos[(0, 1, k)], col)] = RatFn.one()
        elif ee2 == 0 and eF == 1:
            f2[(pos[(1, 1, k)], col)] = -q.inv()
        # e_1
        ck = c_raise(k)
        if ck:
            e1[(pos[(eF, ee2, k - 1)], col)] = ck
        if eF == 1 and ee2 == 0:
            e1[(pos[(0, 1, k)], col)] = (e1.get((pos[(0, 1, k)], col), RatFn.zero())) + (
                l1.inv() * RatFn.q(2 * k)
            )
        # e_2
        if eF == 0 and ee2 == 1:
            e2[(pos[(0, 0, k)], col)] = d_weight(k)
        elif eF == 1 and ee2 == 0:
            if k < ell:
                e2[(pos[(0, 0, k + 1)], col)] = -l2 * RatFn.q(k + 1)
        elif eF == 1 and ee2 == 1:
            e2[(pos[(1, 0, k)], col)] = d_weight(k) + l2 * RatFn.q(k + 1)
            if k < ell:
                e2[(pos[(0, 1, k + 1)], col)] = l2 * RatFn.q(k + 2)

    # Cartan weights: each f_1 scales K_1 by q^-1 and K_2 by q; each f_2 scales
    # K_2 by q^-1 and K_3 by p.  Top values (l1 l2, l2, 1) realize k_1, k_2.
    p_signed = RatFn.q(-1, -1)
    k1d, k2d, k3d = [], [], []
    for eF, ee2, k in labels:
        n1 = k + eF  # number of f_1 letters
        n2 = ee2 + eF  # number of f_2 letters
        k1d.append(l1 * l2 * RatFn.q(-n1))
        k2d.append(l2 * RatFn.q(n1 - n2))
        k3d.append(p_signed**n2)

    gens = {
        ("e", 1): SparseMat(dim, dim, e1),
        ("e", 2): SparseMat(dim, dim, e2),
        ("f", 1): SparseMat(dim, dim, f1),
        ("f", 2): SparseMat(dim, dim, f2),
        ("K", 1): SparseMat.diagonal(k1d),
        ("K", 2): SparseMat.diagonal(k2d),
        ("K", 3): SparseMat.diagonal(k3d),
        ("Kinv", 1): SparseMat.diagonal([v.inv() for v in k1d]),
        ("Kinv", 2): SparseMat.diagonal([v.inv() for v in k2d]),
        ("Kinv", 3): SparseMat.diagonal([v.inv() for v in k3d]),
    }
    rep = Representation(
        P21, dim, gens, label=f"V(ell={hw.ell}, sign={hw.sign1:+d}, l2={hw.lambda2})"
    )
    return ModuleData(hw, rep, labels, pos[(0, 0, 0)])


def simple_quotient(vm: ModuleData) -> ModuleData:
    """The unique simple quotient: strip singular vectors until none remain."""
    rep = vm.rep
    labels = list(vm.basis_labels)
    highest = vm.highest_index
    while True:
        top_weight = tuple(
            rep.gen("K", b)[highest, highest] for b in rep.params.index_set
        )
        singular = [
            v
            for w, v in highest_weight_vectors(rep)
            if w.values != top_weight
        ]
        if not singular:
            break
        sub = submodule_closure(rep, singular)
        if sub.rank == 0:
            break
        pivots = set(sub.pivot_columns())
        keep = [j for j in range(rep.dim) if j not in pivots]
        new_rep = quotient_rep(rep, sub, label=f"L({vm.hw.ell},{vm.hw.sign1:+d})")
        labels = [labels[j] for j in keep]
        # The highest vector never lies in a proper submodule, so its
        # coordinate survives the quotient; track its new position.
        old_highest = vm.basis_labels[vm.highest_index]
        highest = labels.index(old_highest)
        rep = new_rep
    return ModuleData(vm.hw, rep, labels, highest)


def simple_module(hw: HighestWeightSL21) -> ModuleData:
    return simple_quotient(verma_module(hw))


def operator_f_cap(rep: Representation) -> SparseMat:
    """The image of F = f_1 f_2 - q f_2 f_1."""
    f1, f2 = rep.gen("f", 1), rep.gen("f", 2)
    return f1 * f2 - (f2 * f1).scale(RatFn.q(1))


def check_structural_identities(mod: ModuleData) -> list[tuple[str, bool]]:
    """The closed-form identities tying F f_1^k v to f_2 f_1^{k+1} v in quotients."""
    hw = mod.hw
    kind, _ = atypicality_type(hw)
    rep = mod.rep
    v = Vec.unit(rep.dim, mod.highest_index)
    F = operator_f_cap(rep)
    f1, f2 = rep.gen("f", 1), rep.gen("f", 2)
    checks: list[tuple[str, bool]] = []

    def f1_power(k: int, vec: Vec) -> Vec:
        out = vec
        for _ in range(k):
            out = f1.apply(out)
        return out

    if kind is ModuleType.ATYPICAL_A:
        for k in range(hw.ell):
            lhs = F.apply(f1_power(k, v))
            coeff = -RatFn.q(k + 1) / RatFn(quantum_int(k + 1))
            rhs = f2.apply(f1_power(k + 1, v)).scale(coeff)
            checks.append((f"F f1^{k} v = -(q^{k + 1}/[{k + 1}]q) f2 f1^{k + 1} v", lhs == rhs))
    if kind is ModuleType.ATYPICAL_B:
        for k in range(hw.ell):
            lhs = F.apply(f1_power(k, v)).scale(RatFn(quantum_int(hw.ell - k)))
            rhs = f2.apply(f1_power(k + 1, v)).scale(RatFn.q(k - hw.ell))
            checks.append((f"[{hw.ell - k}]q F f1^{k} v = q^{k - hw.ell} f2 f1^{k + 1} v", lhs == rhs))
    if kind is not ModuleType.TYPICAL:
        ff = F * f2
        zero = all(not ff.apply(f1_power(k, v)) for k in range(hw.ell + 1))
        checks.append(("F f2 f1^k v = 0 for all k", zero))
    return checks


def module_report(hw: HighestWeightSL21):
    """Build the simple module and bundle type, dimensions, and relation check."""
    kind, expected = atypicality_type(hw)
    vm = verma_module(hw)
    simple = simple_quotient(vm)
    relation_report = verify_relations(simple.rep)
    return {
        "type": kind,
        "expected_dim": expected,
        "verma_dim": vm.dim,
        "simple_dim": simple.dim,
        "module": simple,
        "relations_ok": relation_report.all_passed,
        "identities": check_structural_identities(simple),
    }
