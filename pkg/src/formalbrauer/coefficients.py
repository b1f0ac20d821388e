"""Exact coefficient arithmetic.

Provides the coefficient rings the series layer is generic over:

* the rational field (gmpy2.mpq when available, fractions.Fraction otherwise),
* residue rings Z/p^M for an odd prime p,
* sparse multivariate polynomial rings truncated at a total degree.

Everything is exact. Heights and exactness verdicts downstream are detected by
exact vanishing of coefficients, so no floating point appears anywhere.

A coefficient ring is a plain object with the small method set the series
layer calls: zero/one/from_int/coerce, is_zero/eq, add/sub/neg/mul, div_int,
is_unit/invert. Elements themselves carry the arithmetic operators (rationals
and TruncPoly natively, residues via a thin wrapper), so generic code can mix
ring-method calls with infix arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionFailure, NonIntegral, NotAUnit, RingMismatch

try:
    from gmpy2 import mpq as _mpq

    def rat(num=0, den=1):
        """Exact rational from ints, a rational, or a 'num/den' string."""
        return _mpq(num, den)

except ImportError:  # pragma: no cover - exercised only without gmpy2
    def rat(num=0, den=1):
        return Fraction(num, den)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Prime:
    """An odd prime. Characteristic 2 is outside scope (quartic surfaces in
    char 2 need a different treatment), so p >= 3 is enforced here once and
    relied on everywhere else."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3:
            raise ValueError(f"need an odd prime >= 3, got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __int__(self) -> int:
        return self.p

    def __index__(self) -> int:
        return self.p

    def __repr__(self) -> str:
        return f"Prime({self.p})"


def val_p(x, p) -> int | float:
    """p-adic valuation of a rational; math.inf for 0 (order sentinel only,
    never arithmetic)."""
    p = int(p)
    if isinstance(x, int):
        num, den = x, 1
    else:
        num, den = x.numerator, x.denominator
    if num == 0:
        return math.inf
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    # lowest terms: at most one of the two loops can run
    while den % p == 0:
        den //= p
        v -= 1
    return v


def multinomial(n: int, parts) -> int:
    """n! / (k_1! ... k_r!) for parts summing to n."""
    parts = tuple(parts)
    if any(k < 0 for k in parts):
        raise ValueError(f"negative part in {parts}")
    if sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    out = 1
    rem = n
    for k in parts:
        out *= math.comb(rem, k)
        rem -= k
    return out


class RationalField:
    """The rational numbers. Singleton QQ below."""

    zero = rat(0)
    one = rat(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def from_int(self, n):
        return rat(n)

    def coerce(self, x):
        if isinstance(x, int):
            return rat(x)
        if isinstance(x, (type(self.zero), Fraction)):
            return rat(x.numerator, x.denominator)
        raise RingMismatch(f"cannot coerce {x!r} into QQ")

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div_int(self, a, n: int):
        if n == 0:
            raise DivisionFailure("division by zero")
        return a / n

    def is_unit(self, a):
        return bool(a)

    def invert(self, a):
        if not a:
            raise NotAUnit("0 is not invertible in QQ")
        return 1 / a


QQ = RationalField()


class Residue:
    """Element of Z/p^M. Thin wrapper so infix arithmetic reduces mod p^M."""

    __slots__ = ("ring", "v")

    def __init__(self, ring, v: int):
        self.ring = ring
        self.v = v % ring.modulus

    def _match(self, other):
        if isinstance(other, Residue):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        w = self._match(other)
        if w is NotImplemented:
            return NotImplemented
        return Residue(self.ring, self.v + w)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._match(other)
        if w is NotImplemented:
            return NotImplemented
        return Residue(self.ring, self.v - w)

    def __rsub__(self, other):
        w = self._match(other)
        if w is NotImplemented:
            return NotImplemented
        return Residue(self.ring, w - self.v)

    def __mul__(self, other):
        w = self._match(other)
        if w is NotImplemented:
            return NotImplemented
        return Residue(self.ring, self.v * w)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(self.ring, -self.v)

    def __pow__(self, e: int):
        return Residue(self.ring, pow(self.v, e, self.ring.modulus))

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.ring == other.ring and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.ring.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


@dataclass(frozen=True)
class ResidueRing:
    """Z/p^M for an odd prime p and precision M >= 1."""

    prime: Prime
    precision: int = 1

    def __post_init__(self):
        if not isinstance(self.prime, Prime):
            object.__setattr__(self, "prime", Prime(int(self.prime)))
        if self.precision < 1:
            raise ValueError("precision must be >= 1")

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def __repr__(self):
        if self.precision == 1:
            return f"Z/{self.p}"
        return f"Z/{self.p}^{self.precision}"

    @property
    def zero(self):
        return Residue(self, 0)

    @property
    def one(self):
        return Residue(self, 1)

    def from_int(self, n):
        return Residue(self, n)

    def coerce(self, x):
        if isinstance(x, Residue):
            if x.ring != self:
                raise RingMismatch(f"{x.ring} vs {self}")
            return x
        if isinstance(x, int):
            return Residue(self, x)
        return Residue(self, reduce_mod(x, self))

    def is_zero(self, a):
        return a.v == 0

    def eq(self, a, b):
        return self.coerce(a) == self.coerce(b)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div_int(self, a, n: int):
        try:
            inv = pow(n % self.modulus, -1, self.modulus)
        except ValueError:
            raise DivisionFailure(
                f"{n} is not invertible mod {self.modulus}") from None
        return Residue(self, a.v * inv)

    def is_unit(self, a):
        return a.v % self.p != 0

    def invert(self, a):
        try:
            return Residue(self, pow(a.v, -1, self.modulus))
        except ValueError:
            raise NotAUnit(f"{a.v} is not a unit mod {self.modulus}") from None


def reduce_mod(x, ring: ResidueRing) -> int:
    """Image of a p-integral rational in Z/p^M, as a canonical int in
    [0, p^M). Raises NonIntegral when val_p(x) < 0."""
    if isinstance(x, int):
        return x % ring.modulus
    num, den = int(x.numerator), int(x.denominator)
    if den % ring.p == 0:
        raise NonIntegral(
            f"{x} is not {ring.p}-integral", value=x)
    return num * pow(den, -1, ring.modulus) % ring.modulus


class TruncPoly:
    """Sparse multivariate polynomial with rational coefficients, truncated at
    a total degree cap. Terms of degree above the cap are discarded on
    multiplication; that is the only lossy step, and `truncated` records
    whether it ever happened to this value."""

    __slots__ = ("vars", "cap", "terms", "truncated")

    def __init__(self, vars, cap, terms, truncated=False):
        self.vars = tuple(vars)
        self.cap = cap
        clean = {}
        for e, c in terms.items():
            if len(e) != len(self.vars):
                raise RingMismatch(f"exponent {e} has wrong arity")
            if sum(e) > cap:
                raise ValueError(f"term {e} exceeds degree cap {cap}")
            if c:
                clean[e] = c
        self.terms = clean
        self.truncated = truncated

    def _match(self, other):
        if not isinstance(other, TruncPoly):
            raise RingMismatch(f"expected TruncPoly, got {type(other)}")
        if other.vars != self.vars or other.cap != self.cap:
            raise RingMismatch(
                f"({self.vars}, cap {self.cap}) vs ({other.vars}, cap {other.cap})")

    def __add__(self, other):
        if isinstance(other, (int, type(rat(0)), Fraction)):
            other = _const_like(self, other)
        self._match(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TruncPoly(self.vars, self.cap, out,
                         self.truncated or other.truncated)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncPoly) else -rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TruncPoly(self.vars, self.cap,
                         {e: -c for e, c in self.terms.items()},
                         self.truncated)

    def __mul__(self, other):
        if isinstance(other, (int, type(rat(0)), Fraction)):
            if not other:
                return TruncPoly(self.vars, self.cap, {}, self.truncated)
            return TruncPoly(self.vars, self.cap,
                             {e: c * other for e, c in self.terms.items()},
                             self.truncated)
        self._match(other)
        out = {}
        cap = self.cap
        dropped = False
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    dropped = True
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return TruncPoly(self.vars, self.cap, out,
                         self.truncated or other.truncated or dropped)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power; use TruncPolyRing.invert")
        out = _const_like(self, rat(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({} if other == 0 else
                                  {(0,) * len(self.vars): rat(other)})
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return (self.vars == other.vars and self.cap == other.cap
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, self.cap, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), rat(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            mono = "*".join(f"{v}^{k}" if k > 1 else v
                            for v, k in zip(self.vars, e) if k)
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(bits)


def _const_like(tp: TruncPoly, c) -> TruncPoly:
    c = rat(c.numerator, c.denominator) if not isinstance(c, int) else rat(c)
    return TruncPoly(tp.vars, tp.cap, {(0,) * len(tp.vars): c})


@dataclass(frozen=True)
class TruncPolyRing:
    """Q[t_1, ..., t_k] truncated at total degree `cap`; k = 0 gives constants.

    p-locality is a property of how downstream code uses the ring (integrality
    checks, unit tests against a chosen prime), not of the arithmetic here,
    which is plain exact rational arithmetic on sparse terms.
    """

    variables: tuple
    cap: int

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.cap < 0:
            raise ValueError("cap must be >= 0")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable in {self.variables}")

    def __repr__(self):
        vs = ",".join(self.variables) if self.variables else ""
        return f"Q[{vs}]<=deg {self.cap}"

    @property
    def zero(self):
        return TruncPoly(self.variables, self.cap, {})

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return TruncPoly(self.variables, self.cap,
                         {(0,) * len(self.variables): rat(n)})

    def from_rat(self, q):
        return _const_like(self.zero, q)

    def var(self, name: str):
        if name not in self.variables:
            raise RingMismatch(f"{name!r} not among {self.variables}")
        e = tuple(1 if v == name else 0 for v in self.variables)
        if self.cap < 1:
            raise ValueError("cap too small to hold a variable")
        return TruncPoly(self.variables, self.cap, {e: rat(1)})

    def monomial(self, exps, coeff):
        return TruncPoly(self.variables, self.cap,
                         {tuple(exps): rat(coeff) if isinstance(coeff, int)
                          else coeff})

    def coerce(self, x):
        if isinstance(x, TruncPoly):
            if x.vars != self.variables or x.cap != self.cap:
                raise RingMismatch(f"{x.vars}/{x.cap} vs {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        return self.from_rat(x)

    def is_zero(self, a):
        return not a.terms

    def eq(self, a, b):
        return self.coerce(a) == self.coerce(b)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div_int(self, a, n: int):
        if n == 0:
            raise DivisionFailure("division by zero")
        return a * rat(1, n)

    def is_unit(self, a):
        return bool(a.constant_term())

    def invert(self, a):
        """Inverse when the constant term is nonzero: geometric series in the
        positive-degree part, exact because that part is nilpotent mod the
        degree cap."""
        c0 = a.constant_term()
        if not c0:
            raise NotAUnit("constant term is 0; not a unit in the truncated ring")
        n = (a * rat(1, 1) - _const_like(a, c0)) * (-1 / c0)  # a = c0*(1 - n)
        out = self.one
        term = self.one
        for _ in range(self.cap):
            term = term * n
            if not term.terms:
                break
            out = out + term
        return out * (1 / c0)
