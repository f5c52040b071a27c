"""Maximal subgroup classes of PSL(2,q) and the structural computation of Psi2.

The subgroup-class list follows Dickson's classification, with the exact
congruence conditions on q deciding maximality.  Both dihedral records are
always present (flagged) because the pair {Borel, nonsplit dihedral} is a
2-covering of the group whether or not the dihedral is maximal.

Class-intersection profiles are computed symbolically: a profile maps each
conjugacy-class label to the set of subgroup-class ids whose members meet
it.  The profile universe is the maximal classes plus the nonsplit-dihedral
covering record.  Two nonidentity classes invariably generate iff no single
maximal subgroup class meets both, which is what ``psi2_structural`` tests.

Conventions for the kinds that come as two classes (q odd): variant 1 of a
subfield PGL is the copy whose unipotents have square parameter, variant 2
the nonsquare one; the same convention labels the variants of an
exceptional kind whose order is divisible by p.  Swapping the labels swaps
two identical-shaped profiles, so no downstream count depends on it; the
oracle certifies the variant split as a multiset.
"""

from __future__ import annotations

from dataclasses import dataclass

from invgen.gf import GFContext
from invgen.psl2 import ClassInventory, ClassLabel, inventory

BOREL = "borel"
DIH_SPLIT = "dih_split"
DIH_NONSPLIT = "dih_nonsplit"
SUBFIELD_PSL = "subfield_psl"
SUBFIELD_PGL = "subfield_pgl"
EXC_A4 = "exc_a4"
EXC_S4 = "exc_s4"
EXC_A5 = "exc_a5"

# element orders occurring in the exceptional subgroups
_EXC_ORDERS = {EXC_A4: (2, 3), EXC_S4: (2, 3, 4), EXC_A5: (2, 3, 5)}


@dataclass(frozen=True)
class SubgroupClass:
    kind: str
    order: int
    maximal: bool
    variant: int | None = None  # 1 or 2 for kinds that come as two classes
    q0: int | None = None  # subfield size for subfield kinds
    sub_degree: int | None = None  # e with q0 = p^e

    @property
    def id(self) -> str:
        parts = [self.kind]
        if self.q0 is not None:
            parts.append(f"q0={self.q0}")
        if self.variant is not None:
            parts.append(f"v{self.variant}")
        return ":".join(parts)

    def __str__(self) -> str:
        return self.id


def maximal_subgroup_classes(ctx: GFContext) -> list[SubgroupClass]:
    """Dickson's list for PSL(2,q) with exact maximality flags.

    The two dihedral records are always present; the nonsplit one doubles
    as the covering subgroup for the 2-covering check.
    """
    p, f, q = ctx.p, ctx.f, ctx.q
    if q < 4:
        raise ValueError("subgroup classification requires q >= 4")
    d = 2 if q % 2 == 1 else 1
    out = [
        SubgroupClass(BOREL, q * (q - 1) // d, True),
        SubgroupClass(DIH_SPLIT, 2 * (q - 1) // d, q % 2 == 0 or q >= 13),
        SubgroupClass(DIH_NONSPLIT, 2 * (q + 1) // d, q % 2 == 0 or q not in (7, 9)),
    ]
    for r in (r for r in range(3, f + 1, 2) if f % r == 0 and _is_prime_small(r)):
        q0 = p ** (f // r)
        if q0 == 2:
            continue
        d0 = 2 if q0 % 2 == 1 else 1
        out.append(SubgroupClass(SUBFIELD_PSL, q0 * (q0 * q0 - 1) // d0, True,
                                 q0=q0, sub_degree=f // r))
    if f % 2 == 0:
        q0 = p ** (f // 2)
        if q0 != 2:
            order = q0 * (q0 * q0 - 1)
            if q % 2 == 1:
                out.append(SubgroupClass(SUBFIELD_PGL, order, True, variant=1,
                                         q0=q0, sub_degree=f // 2))
                out.append(SubgroupClass(SUBFIELD_PGL, order, True, variant=2,
                                         q0=q0, sub_degree=f // 2))
            else:
                out.append(SubgroupClass(SUBFIELD_PGL, order, True,
                                         q0=q0, sub_degree=f // 2))
    if f == 1 and q % 40 in (3, 5, 13, 27, 37):
        out.append(SubgroupClass(EXC_A4, 12, True))
    if f == 1 and q % 8 in (1, 7):
        out.append(SubgroupClass(EXC_S4, 24, True, variant=1))
        out.append(SubgroupClass(EXC_S4, 24, True, variant=2))
    if (f == 1 and q % 10 in (1, 9)) or (f == 2 and p % 10 in (3, 7)):
        out.append(SubgroupClass(EXC_A5, 60, True, variant=1))
        out.append(SubgroupClass(EXC_A5, 60, True, variant=2))
    return out


def _is_prime_small(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def label_meets(ctx: GFContext, label: ClassLabel, order: int, sc: SubgroupClass) -> bool:
    """Does the conjugacy class `label` (element order `order`) meet a
    conjugate of the subgroup class `sc`?"""
    q = ctx.q
    even = q % 2 == 0
    kind = label.kind
    if kind == "id":
        return True
    if sc.kind == BOREL:
        if kind == "unip":
            return True
        if kind == "split":
            return True
        if kind == "inv":
            return q % 4 == 1
        return False
    if sc.kind == DIH_SPLIT:
        if kind == "split":
            return True
        if kind == "inv":
            return True
        return even and kind == "unip"  # reflections are the involution class
    if sc.kind == DIH_NONSPLIT:
        if kind == "nonsplit":
            return True
        if kind == "inv":
            return True
        return even and kind == "unip"
    if sc.kind == SUBFIELD_PSL:
        if kind in ("unip", "inv"):
            return True  # odd-degree extensions preserve square classes
        return ctx.in_subfield(label.trace, sc.sub_degree)
    if sc.kind == SUBFIELD_PGL:
        if kind == "inv":
            return True
        if kind == "unip":
            if even:
                return True
            # GF(q0)* consists of squares of GF(q0^2), so the standard copy
            # meets the square class and its twisted conjugate the other
            return label.sq is (sc.variant == 1)
        t2 = ctx.mul(label.trace, label.trace)
        return ctx.in_subfield(t2, sc.sub_degree)
    if sc.kind in _EXC_ORDERS:
        orders = _EXC_ORDERS[sc.kind]
        if kind == "inv":
            return True
        if kind == "unip":
            if ctx.p not in orders:
                return False
            if sc.variant is None:
                raise RuntimeError(
                    "single-class exceptional subgroup with unipotent members "
                    "cannot occur for q >= 4"
                )
            return label.sq is (sc.variant == 1)
        return order in orders
    raise ValueError(f"unknown subgroup kind {sc.kind}")


def profile_universe(classes: list[SubgroupClass]) -> list[SubgroupClass]:
    """Maximal classes plus the nonsplit-dihedral covering record."""
    return [sc for sc in classes if sc.maximal or sc.kind == DIH_NONSPLIT]


def build_profiles(ctx: GFContext, inv: ClassInventory | None = None,
                   classes: list[SubgroupClass] | None = None,
                   ) -> dict[ClassLabel, frozenset[str]]:
    """Profile of every nonidentity label over the profile universe."""
    if inv is None:
        inv = inventory(ctx)
    if classes is None:
        classes = maximal_subgroup_classes(ctx)
    universe = profile_universe(classes)
    out: dict[ClassLabel, frozenset[str]] = {}
    for entry in inv:
        if entry.label.kind == "id":
            continue
        out[entry.label] = frozenset(
            sc.id for sc in universe if label_meets(ctx, entry.label, entry.order, sc)
        )
    return out


def maximal_profiles(ctx: GFContext, inv: ClassInventory | None = None,
                     classes: list[SubgroupClass] | None = None,
                     ) -> dict[ClassLabel, frozenset[str]]:
    """Profiles restricted to maximal subgroup classes (the Psi2 universe)."""
    if inv is None:
        inv = inventory(ctx)
    if classes is None:
        classes = maximal_subgroup_classes(ctx)
    maximal_ids = {sc.id for sc in classes if sc.maximal}
    full = build_profiles(ctx, inv, classes)
    return {label: prof & maximal_ids for label, prof in full.items()}


@dataclass
class Psi2Table:
    """Ordered pairs of nonidentity class labels that invariably generate S."""

    q: int
    method: str  # "structural" | "oracle"
    pairs: set[tuple[ClassLabel, ClassLabel]]

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def unordered_edges(self) -> set[frozenset[ClassLabel]]:
        return {frozenset(p) for p in self.pairs}

    def sorted_pairs(self) -> list[tuple[str, str]]:
        return sorted((a.str_form(), b.str_form()) for a, b in self.pairs)

    def isolated(self, inv: ClassInventory) -> set[ClassLabel]:
        touched = {c for pair in self.pairs for c in pair}
        return {lab for lab in inv.nonidentity_labels() if lab not in touched}

    def to_json(self) -> dict:
        return {"q": self.q, "method": self.method, "count": len(self.pairs),
                "pairs": self.sorted_pairs()}

    def to_csv(self) -> str:
        lines = ["label1,label2"]
        lines += [f"{a},{b}" for a, b in self.sorted_pairs()]
        return "\n".join(lines) + "\n"


def psi2_structural(ctx: GFContext, inv: ClassInventory | None = None) -> Psi2Table:
    """Psi2 via maximal-class disjointness.

    A pair fails to invariably generate iff some representatives lie in a
    common maximal subgroup, i.e. iff some maximal class meets both; so
    membership is exactly profile disjointness.
    """
    if inv is None:
        inv = inventory(ctx)
    profs = maximal_profiles(ctx, inv)
    labels = inv.nonidentity_labels()
    pairs: set[tuple[ClassLabel, ClassLabel]] = set()
    for i, c in enumerate(labels):
        pc = profs[c]
        for dlab in labels[i:]:
            if pc.isdisjoint(profs[dlab]):
                pairs.add((c, dlab))
                pairs.add((dlab, c))
    return Psi2Table(ctx.q, "structural", pairs)


@dataclass
class CoveringResult:
    ok: bool
    only_borel: set[ClassLabel]  # covered by the Borel side only
    only_dihedral: set[ClassLabel]  # covered by the nonsplit-dihedral side only
    both: set[ClassLabel]

    def parts(self) -> tuple[set[ClassLabel], set[ClassLabel]]:
        """Bipartition parts (P1, P2) = (dihedral side, Borel side)."""
        return set(self.only_dihedral), set(self.only_borel)


def verify_2covering(ctx: GFContext, inv: ClassInventory | None = None) -> CoveringResult:
    """Check that {Borel, nonsplit dihedral} covers S and classify labels.

    Classes meeting both sides are isolated in the generating graph; the
    remaining two sets give the bipartition of the plus graph.
    """
    if inv is None:
        inv = inventory(ctx)
    classes = maximal_subgroup_classes(ctx)
    borel = next(sc for sc in classes if sc.kind == BOREL)
    dihedral = next(sc for sc in classes if sc.kind == DIH_NONSPLIT)
    only_b: set[ClassLabel] = set()
    only_d: set[ClassLabel] = set()
    both: set[ClassLabel] = set()
    ok = True
    for entry in inv:
        if entry.label.kind == "id":
            continue
        in_b = label_meets(ctx, entry.label, entry.order, borel)
        in_d = label_meets(ctx, entry.label, entry.order, dihedral)
        if in_b and in_d:
            both.add(entry.label)
        elif in_b:
            only_b.add(entry.label)
        elif in_d:
            only_d.add(entry.label)
        else:
            ok = False
    return CoveringResult(ok, only_b, only_d, both)


# ---------------------------------------------------------------------------
# profile census: labels grouped by identical maximal profile.  Labels with
# the same profile are interchangeable for every pair test, which collapses
# the up-to-q^2/4 pair sweep to a handful of bucket products.
# ---------------------------------------------------------------------------

@dataclass
class ProfileCensus:
    q: int
    buckets: list[frozenset[str]]  # distinct maximal profiles
    members: list[list[ClassLabel]]  # labels per bucket, same order

    def psi2_count(self) -> int:
        sizes = [len(m) for m in self.members]
        total = 0
        for i, pi in enumerate(self.buckets):
            for j, pj in enumerate(self.buckets):
                if pi.isdisjoint(pj):
                    total += sizes[i] * sizes[j]
        return total


def profile_census(ctx: GFContext, inv: ClassInventory | None = None) -> ProfileCensus:
    if inv is None:
        inv = inventory(ctx)
    profs = maximal_profiles(ctx, inv)
    grouped: dict[frozenset[str], list[ClassLabel]] = {}
    for label in inv.nonidentity_labels():
        grouped.setdefault(profs[label], []).append(label)
    buckets = sorted(grouped, key=sorted)
    return ProfileCensus(ctx.q, buckets, [grouped[b] for b in buckets])


def profiles_to_json(profiles: dict[ClassLabel, frozenset[str]]) -> dict[str, list[str]]:
    """Debug dump: stable label string -> sorted subgroup-class ids."""
    return {lab.str_form(): sorted(ids) for lab, ids in sorted(
        profiles.items(), key=lambda kv: kv[0].str_form())}
