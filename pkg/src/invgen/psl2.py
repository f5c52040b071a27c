"""Elements and conjugacy classes of S = PSL(2,q).

An element is a 4-tuple (a, b, c, d) of field elements with ad - bc = 1,
stored as the canonical representative of the matrix pair {M, -M}: scan
the entries in order and negate the whole matrix if the first nonzero
entry is not the smaller (as an int) of itself and its negative.  For q
even M = -M and every determinant-1 tuple is canonical.

Conjugacy classes are symbolic labels:

  id                      the identity class
  inv                     the involution class (q odd)
  unip:sq / unip:nsq      the two order-p classes (q odd), split by the
                          square class of the upper-right entry of the
                          unitriangular normal form
  unip                    the single order-2 class (q even)
  split:t=K               semisimple with eigenvalues in GF(q), order >= 3
  nonsplit:t=K            semisimple with eigenvalues in GF(q^2) only

where K is the canonical trace key: the smaller int of the trace pair
{t, -t}.  Every class of order l >= 3 is determined by its trace pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from invgen.gf import GFContext, factorize

Mat = tuple[int, int, int, int]


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ClassLabel:
    kind: str  # "id" | "inv" | "unip" | "split" | "nonsplit"
    trace: int = -1  # canonical trace key for split/nonsplit, else -1
    sq: bool | None = None  # square-class flag for unipotents, q odd only

    def str_form(self) -> str:
        if self.kind in ("split", "nonsplit"):
            return f"{self.kind}:t={self.trace}"
        if self.kind == "unip" and self.sq is not None:
            return "unip:sq" if self.sq else "unip:nsq"
        return self.kind

    def __str__(self) -> str:
        return self.str_form()


@dataclass(frozen=True)
class ClassEntry:
    label: ClassLabel
    order: int
    size: int


class ClassInventory:
    """Complete class list of PSL(2,q), with sizes from centralizer formulas."""

    def __init__(self, ctx: GFContext, entries: list[ClassEntry]):
        self.ctx = ctx
        self.q = ctx.q
        self.d = 2 if ctx.q % 2 == 1 else 1
        self.entries = entries
        self.index = {e.label: i for i, e in enumerate(entries)}
        self.order_of = {e.label: e.order for e in entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def labels(self) -> list[ClassLabel]:
        return [e.label for e in self.entries]

    def nonidentity_labels(self) -> list[ClassLabel]:
        return [e.label for e in self.entries if e.label.kind != "id"]

    def group_order(self) -> int:
        q = self.q
        return q * (q * q - 1) // self.d

    def to_json(self) -> list[dict]:
        return [
            {"label": e.label.str_form(), "order": e.order, "size": e.size}
            for e in self.entries
        ]


# ---------------------------------------------------------------------------
# matrix arithmetic
# ---------------------------------------------------------------------------

def identity_mat(ctx: GFContext) -> Mat:
    return (1, 0, 0, 1)


def canon(ctx: GFContext, m: Mat) -> Mat:
    """Canonical representative of {M, -M}."""
    if ctx.p == 2:
        return m
    for x in m:
        if x != 0:
            if x > ctx.neg(x):
                return (ctx.neg(m[0]), ctx.neg(m[1]), ctx.neg(m[2]), ctx.neg(m[3]))
            return m
    raise ValueError("zero matrix")


def make(ctx: GFContext, a: int, b: int, c: int, d: int) -> Mat:
    for x in (a, b, c, d):
        ctx._check(x)
    det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
    if det != 1:
        raise ValueError(f"determinant must be 1, got {det}")
    return canon(ctx, (a, b, c, d))


def psl2_mul(ctx: GFContext, x: Mat, y: Mat) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    mul, add = ctx.mul, ctx.add
    return canon(ctx, (
        add(mul(a, e), mul(b, g)),
        add(mul(a, f), mul(b, h)),
        add(mul(c, e), mul(d, g)),
        add(mul(c, f), mul(d, h)),
    ))


def psl2_inv(ctx: GFContext, x: Mat) -> Mat:
    a, b, c, d = x
    return canon(ctx, (d, ctx.neg(b), ctx.neg(c), a))


def psl2_order(x_ctx: GFContext, x: Mat) -> int:
    """Least n >= 1 with x^n = 1; divides p, (q-1)/d or (q+1)/d."""
    ident = identity_mat(x_ctx)
    acc = x
    n = 1
    bound = max(x_ctx.p, x_ctx.q + 1)
    while acc != ident:
        acc = psl2_mul(x_ctx, acc, x)
        n += 1
        if n > bound:
            raise RuntimeError("order iteration exceeded the group exponent bound")
    return n


def trace(ctx: GFContext, m: Mat) -> int:
    return ctx.add(m[0], m[3])


def trace_key(ctx: GFContext, t: int) -> int:
    return min(t, ctx.neg(t))


def is_split_trace(ctx: GFContext, t: int) -> bool:
    """Eigenvalues of a trace-t det-1 matrix lie in GF(q); assumes t^2 != 4."""
    if ctx.p != 2:
        disc = ctx.sub(ctx.mul(t, t), ctx.scalar(4))
        return ctx.is_square(disc)
    # q even: x^2 - tx + 1 splits iff the Artin-Schreier trace of 1/t^2 vanishes
    u = ctx.inv(ctx.mul(t, t))
    return ctx.absolute_trace(u) == 0


def psl2_class_of(ctx: GFContext, m: Mat) -> ClassLabel:
    if ctx.q < 4:
        raise ValueError("class labels are defined for q >= 4")
    ident = identity_mat(ctx)
    if m == ident:
        return ClassLabel("id")
    t = trace(ctx, m)
    if ctx.p == 2:
        if t == 0:
            return ClassLabel("unip")
        kind = "split" if is_split_trace(ctx, t) else "nonsplit"
        return ClassLabel(kind, trace_key(ctx, t))
    four = ctx.scalar(4)
    two = ctx.scalar(2)
    if ctx.mul(t, t) == four:
        # order p; normalize to trace +2 and read off the unitriangular parameter
        if t != two:
            m = (ctx.neg(m[0]), ctx.neg(m[1]), ctx.neg(m[2]), ctx.neg(m[3]))
        a, b, c, d = m
        param = b if c == 0 else ctx.neg(c)
        return ClassLabel("unip", sq=ctx.is_square(param))
    if t == 0:
        return ClassLabel("inv")
    kind = "split" if is_split_trace(ctx, t) else "nonsplit"
    return ClassLabel(kind, trace_key(ctx, t))


def enumerate_psl2(ctx: GFContext, cap: int = 31):
    """Yield each element of PSL(2,q) exactly once, in canonical form.

    Runs over the standard SL(2,q) parametrization and keeps only the
    canonical member of each pair {M, -M}.
    """
    if ctx.q > cap:
        raise ValueError(f"q={ctx.q} exceeds the enumeration cap {cap}")
    q = ctx.q
    mul, inv, sub = ctx.mul, ctx.inv, ctx.sub
    for a in range(1, q):
        ia = inv(a)
        for b in range(q):
            for c in range(q):
                d = mul(ia, ctx.add(1, mul(b, c)))
                m = (a, b, c, d)
                if canon(ctx, m) == m:
                    yield m
    # a = 0: need bc = -1
    for b in range(1, q):
        c = ctx.neg(inv(b))
        for d in range(q):
            m = (0, b, c, d)
            if canon(ctx, m) == m:
                yield m


# ---------------------------------------------------------------------------
# trace/order bookkeeping for semisimple classes
# ---------------------------------------------------------------------------

def dickson(ctx: GFContext, t: int, k: int) -> int:
    """Trace of the k-th power: D_k with D_0 = 2, D_1 = t, D_{k+1} = t*D_k - D_{k-1}.

    Computed by Lucas-sequence fast doubling.
    """
    two = ctx.scalar(2)
    if k == 0:
        return two
    # maintain (D_m, D_{m+1}) over the bits of k
    dm, dm1 = two, t
    for bit in bin(k)[2:]:
        if bit == "0":
            dm, dm1 = (
                ctx.sub(ctx.mul(dm, dm), two),
                ctx.sub(ctx.mul(dm, dm1), t),
            )
        else:
            dm, dm1 = (
                ctx.sub(ctx.mul(dm, dm1), t),
                ctx.sub(ctx.mul(dm1, dm1), two),
            )
    return dm


def _psl_order_from_sl(ctx: GFContext, n: int) -> int:
    if ctx.p == 2:
        return n
    return n // 2 if n % 2 == 0 else n


def nonsplit_generator_trace(ctx: GFContext) -> int:
    """Trace of a generator of the nonsplit torus (cyclic of order q+1)."""
    n = ctx.q + 1
    primes = list(factorize(n))
    two = ctx.scalar(2)
    four = ctx.scalar(4)
    for t in range(ctx.q):
        if ctx.mul(t, t) == four:
            continue
        if is_split_trace(ctx, t):
            continue
        if all(dickson(ctx, t, n // r) != two for r in primes):
            return t
    raise RuntimeError(f"no nonsplit torus generator trace found for q={ctx.q}")


def inventory(ctx: GFContext) -> ClassInventory:
    """Full conjugacy class inventory of PSL(2,q), q >= 4."""
    q = ctx.q
    if q < 4:
        raise ValueError("PSL(2,q) class inventory requires q >= 4")
    d = 2 if q % 2 == 1 else 1
    entries: list[ClassEntry] = [ClassEntry(ClassLabel("id"), 1, 1)]
    if d == 2:
        eps = 1 if q % 4 == 1 else -1
        entries.append(ClassEntry(ClassLabel("inv"), 2, q * (q + eps) // 2))
        unip_size = (q * q - 1) // 2
        entries.append(ClassEntry(ClassLabel("unip", sq=True), ctx.p, unip_size))
        entries.append(ClassEntry(ClassLabel("unip", sq=False), ctx.p, unip_size))
    else:
        entries.append(ClassEntry(ClassLabel("unip"), 2, q * q - 1))

    # split classes: powers of a generator of GF(q)* give the whole torus
    split: dict[int, int] = {}
    g = ctx.generator
    lam = 1
    for k in range(1, (q - 1) // 2 + 1):
        lam = ctx.mul(lam, g)
        n = (q - 1) // gcd(k, q - 1)
        order = _psl_order_from_sl(ctx, n)
        if order < 3:
            continue
        t = ctx.add(lam, ctx.inv(lam))
        key = trace_key(ctx, t)
        prev = split.setdefault(key, order)
        if prev != order:
            raise RuntimeError("inconsistent split trace fold")
    for key in sorted(split):
        entries.append(ClassEntry(ClassLabel("split", key), split[key], q * (q + 1)))

    # nonsplit classes: Dickson recursion along a generator of the order-(q+1) torus
    nonsplit: dict[int, int] = {}
    t0 = nonsplit_generator_trace(ctx)
    two = ctx.scalar(2)
    dk_prev, dk = two, t0
    for k in range(1, (q + 1) // 2 + 1):
        n = (q + 1) // gcd(k, q + 1)
        order = _psl_order_from_sl(ctx, n)
        if order >= 3:
            key = trace_key(ctx, dk)
            prev = nonsplit.setdefault(key, order)
            if prev != order:
                raise RuntimeError("inconsistent nonsplit trace fold")
        dk_prev, dk = dk, ctx.sub(ctx.mul(t0, dk), dk_prev)
    for key in sorted(nonsplit):
        entries.append(ClassEntry(ClassLabel("nonsplit", key), nonsplit[key], q * (q - 1)))

    inv = ClassInventory(ctx, entries)
    expected = (q + 4 * d - 3) // d
    if len(inv) != expected:
        raise RuntimeError(
            f"class count mismatch for q={q}: built {len(inv)}, formula gives {expected}"
        )
    if sum(e.size for e in entries) != inv.group_order():
        raise RuntimeError(f"class sizes do not sum to |PSL(2,{q})|")
    return inv
