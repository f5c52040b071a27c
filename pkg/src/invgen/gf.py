"""Exact arithmetic in GF(p^f).

A field element is a plain int in [0, q): the base-p packing of its
coefficient vector c0 + c1*x + ... + c_{f-1}*x^{f-1} (c0 is the least
significant digit).  The packing is a bijection onto canonical reduced
residues, so equality of elements is equality of ints.

The reduction modulus is chosen deterministically: the lexicographically
least monic irreducible of degree f, comparing the coefficient tuple
(c0, c1, ..., c_{f-1}) with c0 most significant.  Irreducibility is
certified by trial division against every monic polynomial of degree
at most f/2 (a plain root check for f <= 3).

For small fields the context precomputes exp/log tables over a fixed
multiplicative generator; these are an internal accelerator only, the
coefficient encoding stays canonical.
"""

from __future__ import annotations

from functools import lru_cache

Q_CAP = 1 << 20  # contexts refuse q above this
TABLE_CAP = 1 << 12  # build exp/log tables when q <= this


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: multiplicity}."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power_split(q: int) -> tuple[int, int] | None:
    """Return (p, f) with q = p^f, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    (p, f), = fac.items()
    return p, f


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); a polynomial is a list of ints mod p,
# index = degree, no trailing-zero normalization required by callers
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c == 0:
            continue
        scale = (c * inv_lead) % p
        for j in range(dm + 1):
            a[i - dm + j] = (a[i - dm + j] - scale * m[j]) % p
    del a[dm:]
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_divides(d: list[int], a: list[int], p: int) -> bool:
    return not _poly_trim(_poly_mod(a, d, p))


def _is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree 1..deg(m)//2."""
    f = len(m) - 1
    if m[0] == 0 and f > 1:
        return False
    for deg in range(1, f // 2 + 1):
        for packed in range(p ** deg):
            cand = _unpack(packed, p, deg) + [1]
            if _poly_divides(cand, m, p):
                return False
    return True


def _unpack(v: int, p: int, f: int) -> list[int]:
    out = []
    for _ in range(f):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _pack(coeffs: list[int] | tuple[int, ...], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _find_modulus(p: int, f: int) -> list[int]:
    """Lexicographically least monic irreducible of degree f over GF(p)."""
    if f == 1:
        return [0, 1]
    # lex order on (c0, c1, ...) with c0 most significant
    from itertools import product
    for tail in product(range(p), repeat=f):
        m = list(tail) + [1]
        if _is_irreducible(m, p):
            return m
    raise RuntimeError(f"no irreducible of degree {f} over GF({p})")  # unreachable


class GFContext:
    """Fixed field GF(p^f); immutable after construction, all ops pure."""

    def __init__(self, p: int, f: int, table_cap: int = TABLE_CAP):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if f < 1:
            raise ValueError(f"f must be positive, got {f}")
        q = p ** f
        if q > Q_CAP:
            raise ValueError(f"q={q} exceeds the supported cap {Q_CAP}")
        self.p = p
        self.f = f
        self.q = q
        self.modulus = _find_modulus(p, f)
        self._exp: list[int] | None = None
        self._log: dict[int, int] | None = None
        self._generator: int | None = None
        if q <= table_cap:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GFContext(p={self.p}, f={self.f})"

    # -- representation -----------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (c0, ..., c_{f-1}) of a."""
        return tuple(_unpack(a, self.p, self.f))

    def scalar(self, n: int) -> int:
        """The prime-field constant n mod p as a field element."""
        return n % self.p

    def from_coeffs(self, coeffs) -> int:
        cs = list(coeffs)
        if len(cs) != self.f or any(not 0 <= c < self.p for c in cs):
            raise ValueError("coefficient vector must have length f with entries in [0, p)")
        return _pack(cs, self.p)

    def elements(self):
        return range(self.q)

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"element {a} out of range for q={self.q}")
        return a

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.f == 1:
            return (a + b) % p
        s = 0
        mult = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            s += ((ra + rb) % p) * mult
            mult *= p
        return s

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.f == 1:
            return (-a) % p
        s = 0
        mult = 1
        while a:
            a, ra = divmod(a, p)
            s += ((-ra) % p) * mult
            mult *= p
        return s

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.f == 1:
            return (a * b) % self.p
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        prod = _poly_mul(_unpack(a, self.p, self.f), _unpack(b, self.p, self.f), self.p)
        return _pack(_poly_mod(prod, self.modulus, self.p), self.p)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero")
        if self.f == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- field predicates ----------------------------------------------------

    def is_square(self, a: int) -> bool:
        """True iff a = b^2 for some b; zero counts, everything for q even."""
        if self.p == 2 or a == 0:
            return True
        if self._log is not None:
            return self._log[a] % 2 == 0
        return self.pow(a, (self.q - 1) // 2) == 1

    def frobenius(self, a: int) -> int:
        """a -> a^p (generates the Galois group; f-fold iterate is identity)."""
        return self.pow(a, self.p)

    def in_subfield(self, a: int, e: int) -> bool:
        """True iff a lies in the subfield GF(p^e); requires e | f."""
        if e < 1 or self.f % e != 0:
            raise ValueError(f"e={e} does not divide f={self.f}")
        if a == 0 or e == self.f:
            return True
        pe = self.p ** e
        if self._log is not None:
            return self._log[a] % ((self.q - 1) // (pe - 1)) == 0
        return self.pow(a, pe) == a

    def absolute_trace(self, a: int) -> int:
        """Trace down to the prime field: sum of a^(p^i), i < f (an int < p)."""
        s = 0
        x = a
        for _ in range(self.f):
            s = self.add(s, x)
            x = self.frobenius(x)
        return s  # lies in the prime subfield, so the packed value is < p

    # -- multiplicative structure ---------------------------------------------

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        if self._log is not None:
            from math import gcd
            return n // gcd(self._log[a], n) if n else 1
        order = n
        for r in factorize(n):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    @property
    def generator(self) -> int:
        """A fixed generator of the multiplicative group (least by int value)."""
        if self._generator is None:
            self._generator = self._find_generator()
        return self._generator

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        primes = list(factorize(n))
        for a in range(2, self.q):
            if all(self.pow(a, n // r) != 1 for r in primes):
                return a
        raise RuntimeError("no multiplicative generator found")  # unreachable

    def _build_tables(self) -> None:
        g = self._find_generator()
        self._generator = g
        n = self.q - 1
        exp = [1] * n
        for i in range(1, n):  # mul takes the table-free path until installed below
            exp[i] = self.mul(exp[i - 1], g)
        self._exp = exp
        self._log = {v: i for i, v in enumerate(exp)}


@lru_cache(maxsize=None)
def gf_make(p: int, f: int) -> GFContext:
    """Shared immutable context for GF(p^f)."""
    return GFContext(p, f)


@lru_cache(maxsize=None)
def gf_for_q(q: int) -> GFContext:
    pf = prime_power_split(q)
    if pf is None:
        raise ValueError(f"{q} is not a prime power")
    return gf_make(*pf)
