"""Action of Aut(S) = PGammaL(2,q) on class labels and on Psi2.

Inner automorphisms fix every label, so the induced action is generated by

  * the diagonal map (q odd): conjugation by a determinant-nonsquare
    element of PGL; it swaps the two unipotent labels and fixes all
    semisimple labels (traces are conjugation invariants), and
  * the field map: entrywise Frobenius; it sends a trace pair {t, -t} to
    {t^p, -t^p} and preserves unipotent square-class flags.

The number of orbits of the diagonal action on Psi2 equals beta(S), the
largest t for which S^t is invariably 2-generated.  Orbits are computed by
union-find on the explicit pair set; ``beta_fast`` counts them by Burnside
over profile buckets instead, which is what the large-q sweeps use.
"""

from __future__ import annotations

from dataclasses import dataclass

from invgen.gf import GFContext
from invgen.psl2 import ClassInventory, ClassLabel, inventory, trace_key
from invgen.structure import ProfileCensus, Psi2Table, profile_census

LabelPerm = dict[ClassLabel, ClassLabel]
Pair = tuple[ClassLabel, ClassLabel]


@dataclass
class AutAction:
    ctx: GFContext
    diagonal: LabelPerm | None  # None for q even
    frobenius: LabelPerm  # identity map when f = 1

    def generators(self) -> list[LabelPerm]:
        gens = [self.frobenius]
        if self.diagonal is not None:
            gens.append(self.diagonal)
        return gens

    def elements(self) -> list[LabelPerm]:
        """The full induced permutation group (order divides d*f)."""
        labels = list(self.frobenius)
        ident = {lab: lab for lab in labels}
        seen = {self._key(ident): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for perm in frontier:
                for gen in self.generators():
                    comp = {lab: gen[perm[lab]] for lab in labels}
                    k = self._key(comp)
                    if k not in seen:
                        seen[k] = comp
                        nxt.append(comp)
            frontier = nxt
        return list(seen.values())

    @staticmethod
    def _key(perm: LabelPerm) -> tuple:
        return tuple(sorted((a.str_form(), b.str_form()) for a, b in perm.items()))


def aut_action(ctx: GFContext, inv: ClassInventory | None = None) -> AutAction:
    if inv is None:
        inv = inventory(ctx)
    labels = inv.labels()
    diagonal: LabelPerm | None = None
    if ctx.q % 2 == 1:
        diagonal = {}
        for lab in labels:
            if lab.kind == "unip":
                diagonal[lab] = ClassLabel("unip", sq=not lab.sq)
            else:
                diagonal[lab] = lab
    frob: LabelPerm = {}
    for lab in labels:
        if lab.kind in ("split", "nonsplit"):
            image = ClassLabel(lab.kind, trace_key(ctx, ctx.frobenius(lab.trace)))
            if image not in inv.index:
                raise RuntimeError(f"Frobenius image {image} missing from inventory")
            frob[lab] = image
        else:
            frob[lab] = lab
    return AutAction(ctx, diagonal, frob)


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass
class OrbitPartition:
    beta: int
    orbits: list[list[Pair]]
    orbit_of: dict[Pair, int]

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "orbit_of": {
                f"{a.str_form()}|{b.str_form()}": i
                for (a, b), i in sorted(
                    self.orbit_of.items(),
                    key=lambda kv: (kv[0][0].str_form(), kv[0][1].str_form()),
                )
            },
            "orbits": [
                sorted((a.str_form(), b.str_form()) for a, b in orbit)
                for orbit in self.orbits
            ],
        }


def beta(action: AutAction, psi2: Psi2Table) -> OrbitPartition:
    """Orbit count of the diagonal Aut(S)-action on Psi2, by union-find.

    Also checks that no orbit contains both (C, D) and (D, C): the swap
    direction can never be reached because the bipartition parts are
    Aut-invariant, and a violation would falsify the evenness of beta.
    """
    if not psi2.pairs:
        raise ValueError("Psi2 is empty")
    uf = UnionFind(psi2.pairs)
    for gen in action.generators():
        for c, dlab in psi2.pairs:
            image = (gen[c], gen[dlab])
            if image not in psi2.pairs:
                raise RuntimeError(
                    f"automorphism image {image} left Psi2; the action is broken"
                )
            uf.union((c, dlab), image)
    orbits = sorted(uf.groups(), key=lambda o: sorted(
        (a.str_form(), b.str_form()) for a, b in o))
    for orbit in orbits:
        members = set(orbit)
        for c, dlab in orbit:
            if (dlab, c) in members:
                raise RuntimeError(
                    f"orbit of ({c}, {dlab}) contains its swap; the action is broken"
                )
    orbit_of = {pair: i for i, orbit in enumerate(orbits) for pair in orbit}
    return OrbitPartition(len(orbits), orbits, orbit_of)


def beta_fast(ctx: GFContext, inv: ClassInventory | None = None,
              census: ProfileCensus | None = None) -> int:
    """Orbit count by Burnside's lemma over profile buckets.

    Psi2 membership depends only on the maximal profile, so the number of
    fixed pairs of an automorphism sigma is the bucket-product count taken
    over sigma-fixed labels.  Avoids materializing Psi2 for large q.
    """
    if inv is None:
        inv = inventory(ctx)
    if census is None:
        census = profile_census(ctx, inv)
    action = aut_action(ctx, inv)
    elements = action.elements()
    total = 0
    for perm in elements:
        fixed_sizes = [sum(1 for lab in mem if perm[lab] == lab)
                       for mem in census.members]
        for i, pi in enumerate(census.buckets):
            for j, pj in enumerate(census.buckets):
                if pi.isdisjoint(pj):
                    total += fixed_sizes[i] * fixed_sizes[j]
    count, rem = divmod(total, len(elements))
    if rem:
        raise RuntimeError("Burnside count is not an integer; action is inconsistent")
    return count
