"""Truncated power series over an exact coefficient ring.

A Series is a sparse dict of exponent tuples over named variables, cut off at
a total-degree cap. The same class serves one variable (logarithms, p-series),
two (formal group laws) and three (associativity checks); all arithmetic runs
through the ring protocol from coefficients.py plus the elements' own infix
operators.

Truncation discipline: a series of cap N represents a full power series known
exactly through total degree N. Multiplication and substitution of
zero-constant-term series preserve that meaning (degree filtration), which is
why compose/subst insist on zero constant terms in the inner argument.
"""

from __future__ import annotations

from .errors import CapTooSmall, NotAUnit, RingMismatch


class Series:
    __slots__ = ("ring", "vars", "cap", "coeffs")

    def __init__(self, ring, vars, cap, coeffs):
        self.ring = ring
        self.vars = tuple(vars)
        if cap < 0:
            raise ValueError("cap must be >= 0")
        self.cap = cap
        clean = {}
        nvars = len(self.vars)
        for e, c in coeffs.items():
            if len(e) != nvars:
                raise RingMismatch(f"exponent {e} has arity {len(e)}, expected {nvars}")
            if sum(e) > cap:
                raise ValueError(f"term {e} above cap {cap}")
            if not ring.is_zero(c):
                clean[e] = c
        self.coeffs = clean

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring, cap, vars=("T",)):
        return cls(ring, vars, cap, {})

    @classmethod
    def constant(cls, ring, cap, c, vars=("T",)):
        return cls(ring, vars, cap, {(0,) * len(vars): ring.coerce(c)})

    @classmethod
    def variable(cls, ring, cap, name="T", vars=None):
        vars = (name,) if vars is None else tuple(vars)
        if name not in vars:
            raise RingMismatch(f"{name!r} not among {vars}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(ring, vars, cap, {e: ring.one})

    @classmethod
    def univariate(cls, ring, cap, coeffs, var="T"):
        """Build from {degree: coefficient} with plain int degrees."""
        return cls(ring, (var,), cap,
                   {(d,): ring.coerce(c) for d, c in coeffs.items()})

    # ----- inspection ---------------------------------------------------

    def is_univariate(self):
        return len(self.vars) == 1

    def coeff(self, e):
        """Coefficient at an exponent tuple, or at an int degree if univariate."""
        if isinstance(e, int):
            if not self.is_univariate():
                raise RingMismatch("int degree only valid for univariate series")
            e = (e,)
        return self.coeffs.get(tuple(e), self.ring.zero)

    def constant_coeff(self):
        return self.coeffs.get((0,) * len(self.vars), self.ring.zero)

    def degrees(self):
        """Sorted total degrees carrying a nonzero term."""
        return sorted({sum(e) for e in self.coeffs})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.ring == other.ring and self.vars == other.vars
                and self.cap == other.cap and self.coeffs == other.coeffs)

    def __hash__(self):
        raise TypeError("Series is not hashable")

    def __repr__(self):
        if not self.coeffs:
            return f"O(deg>{self.cap})"
        bits = []
        for e in sorted(self.coeffs, key=lambda e: (sum(e), e))[:12]:
            mono = "*".join(f"{v}^{k}" if k > 1 else v
                            for v, k in zip(self.vars, e) if k)
            c = self.coeffs[e]
            bits.append(f"({c})" if not mono else f"({c})*{mono}")
        tail = " + ..." if len(self.coeffs) > 12 else ""
        return " + ".join(bits) + tail + f" + O(deg>{self.cap})"

    # ----- cap handling -------------------------------------------------

    def truncate(self, n):
        if n >= self.cap:
            return self.with_cap(n)
        return Series(self.ring, self.vars, n,
                      {e: c for e, c in self.coeffs.items() if sum(e) <= n})

    def with_cap(self, n):
        """Reinterpret at a higher cap. Coefficients between the old and new
        cap are taken to be zero; callers must know that is what they mean
        (Newton iteration does)."""
        if n < self.cap:
            raise CapTooSmall(f"use truncate to lower the cap ({n} < {self.cap})")
        return Series(self.ring, self.vars, n, self.coeffs)

    # ----- linear structure ----------------------------------------------

    def _match(self, other):
        if not isinstance(other, Series):
            raise RingMismatch(f"expected Series, got {type(other)}")
        if (other.ring != self.ring or other.vars != self.vars
                or other.cap != self.cap):
            raise RingMismatch(
                f"series mismatch: {self.ring}/{self.vars}/{self.cap} vs "
                f"{other.ring}/{other.vars}/{other.cap}")

    def add(self, other):
        self._match(other)
        out = dict(self.coeffs)
        rng = self.ring
        for e, c in other.coeffs.items():
            if e in out:
                s = out[e] + c
                if rng.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Series(rng, self.vars, self.cap, out)

    def neg(self):
        return Series(self.ring, self.vars, self.cap,
                      {e: -c for e, c in self.coeffs.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scalar_mul(self, c):
        c = self.ring.coerce(c)
        if self.ring.is_zero(c):
            return Series.zero(self.ring, self.cap, self.vars)
        return Series(self.ring, self.vars, self.cap,
                      {e: v * c for e, v in self.coeffs.items()})

    # ----- multiplication -------------------------------------------------

    def mul(self, other):
        self._match(other)
        cap = self.cap
        rng = self.ring
        buckets_a = {}
        for e, c in self.coeffs.items():
            buckets_a.setdefault(sum(e), []).append((e, c))
        buckets_b = {}
        for e, c in other.coeffs.items():
            buckets_b.setdefault(sum(e), []).append((e, c))
        out = {}
        for da, la in buckets_a.items():
            for db, lb in buckets_b.items():
                if da + db > cap:
                    continue
                for ea, ca in la:
                    for eb, cb in lb:
                        e = tuple(x + y for x, y in zip(ea, eb))
                        prev = out.get(e)
                        out[e] = ca * cb if prev is None else prev + ca * cb
        out = {e: c for e, c in out.items() if not rng.is_zero(c)}
        return Series(rng, self.vars, cap, out)

    def _pow_memo(self, n, memo):
        if n in memo:
            return memo[n]
        half = self._pow_memo(n // 2, memo)
        out = half.mul(half)
        if n % 2:
            out = out.mul(self)
        memo[n] = out
        return out

    # ----- composition and substitution -----------------------------------

    def compose(self, inner):
        """self(inner) for univariate self; inner may have any arity but must
        have zero constant term (otherwise truncation would lie). A constant
        term in self is allowed and passes through."""
        if not self.is_univariate():
            raise RingMismatch("compose needs a univariate outer series")
        if not isinstance(inner, Series) or inner.ring != self.ring:
            raise RingMismatch("inner series over a different ring")
        if not self.ring.is_zero(inner.constant_coeff()):
            raise ValueError("inner series must have zero constant term")
        # the composite is exact only through the smaller cap
        if inner.cap > self.cap:
            inner = inner.truncate(self.cap)
        out = Series.zero(self.ring, inner.cap, inner.vars)
        c0 = self.constant_coeff()
        if not self.ring.is_zero(c0):
            out = out.add(Series.constant(self.ring, inner.cap, c0, inner.vars))
        ks = [d for (d,) in self.coeffs if 1 <= d <= inner.cap]
        ks.sort()
        memo = {1: inner}
        cur = None
        cur_k = 0
        for k in ks:
            step = inner._pow_memo(k - cur_k, memo) if cur is not None else \
                inner._pow_memo(k, memo)
            cur = step if cur is None else cur.mul(step)
            cur_k = k
            out = out.add(cur.scalar_mul(self.coeffs[(k,)]))
        return out

    def subst(self, repls):
        """Substitute one series per variable of self. All replacement series
        share ring, variables and cap, and have zero constant term."""
        repls = list(repls)
        if len(repls) != len(self.vars):
            raise RingMismatch(f"{len(self.vars)} variables, {len(repls)} replacements")
        tpl = repls[0]
        for r in repls:
            tpl._match(r)
            if not self.ring.is_zero(r.constant_coeff()):
                raise ValueError("replacement series must have zero constant term")
        if tpl.ring != self.ring:
            raise RingMismatch("replacements over a different ring")
        if self.cap < tpl.cap:
            raise CapTooSmall(
                f"substituting into a cap-{self.cap} series cannot be exact "
                f"through cap {tpl.cap}")

        def horner(terms, depth):
            # terms: dict of exponent tuples of length depth+1
            if not terms:
                return Series.zero(tpl.ring, tpl.cap, tpl.vars)
            if depth == 0:
                by_deg = {e[0]: c for e, c in terms.items()}
            else:
                grouped = {}
                for e, c in terms.items():
                    grouped.setdefault(e[-1], {})[e[:-1]] = c
                by_deg = {j: horner(sub, depth - 1) for j, sub in grouped.items()}
            r = repls[depth]
            jmax = max(by_deg)
            acc = None
            for j in range(jmax, -1, -1):
                if acc is not None:
                    acc = acc.mul(r)
                piece = by_deg.get(j)
                if piece is None:
                    continue
                if depth == 0:
                    piece = Series.constant(tpl.ring, tpl.cap, piece, tpl.vars)
                acc = piece if acc is None else acc.add(piece)
            return acc if acc is not None else Series.zero(tpl.ring, tpl.cap, tpl.vars)

        return horner(self.coeffs, len(self.vars) - 1)

    def remap(self, new_vars, assignment=None):
        """Move to a new variable tuple; assignment maps old names to new
        names (identity by default). Covers promotion (adding variables) and
        permutation (e.g. swapping X and Y)."""
        new_vars = tuple(new_vars)
        assignment = assignment or {v: v for v in self.vars}
        pos = {}
        for old in self.vars:
            new = assignment[old]
            if new not in new_vars:
                raise RingMismatch(f"{new!r} not among {new_vars}")
            pos[old] = new_vars.index(new)
        if len({pos[v] for v in self.vars}) != len(self.vars):
            raise RingMismatch("assignment collapses variables")
        out = {}
        for e, c in self.coeffs.items():
            ne = [0] * len(new_vars)
            for v, k in zip(self.vars, e):
                ne[pos[v]] = k
            out[tuple(ne)] = c
        return Series(self.ring, new_vars, self.cap, out)

    # ----- univariate calculus -------------------------------------------

    def _need_univariate(self):
        if not self.is_univariate():
            raise RingMismatch("univariate series required")

    def derivative(self):
        self._need_univariate()
        out = {}
        for (d,), c in self.coeffs.items():
            if d >= 1:
                out[(d - 1,)] = c * d
        return Series(self.ring, self.vars, self.cap, out)

    def integral(self, cap=None):
        """Termwise antiderivative with zero constant. An integrand exact
        through degree N determines the integral through N + 1, so the result
        cap may be raised that far; by default it stays at self.cap and the
        top term is dropped."""
        self._need_univariate()
        rng = self.ring
        out_cap = self.cap if cap is None else cap
        if out_cap > self.cap + 1:
            raise CapTooSmall(
                f"integral of a cap-{self.cap} series is exact only through "
                f"{self.cap + 1}")
        out = {}
        for (d,), c in self.coeffs.items():
            if d + 1 <= out_cap:
                out[(d + 1,)] = rng.div_int(c, d + 1)
        return Series(rng, self.vars, out_cap, out)

    def shift_up(self, k):
        self._need_univariate()
        out = {(d + k,): c for (d,), c in self.coeffs.items() if d + k <= self.cap}
        return Series(self.ring, self.vars, self.cap, out)

    def shift_down(self, k):
        self._need_univariate()
        if any(d < k for (d,) in self.coeffs):
            raise ValueError(f"cannot shift down by {k}: lower-degree terms present")
        return Series(self.ring, self.vars, self.cap,
                      {(d - k,): c for (d,), c in self.coeffs.items()})

    # ----- inversion and reversion ----------------------------------------

    def invert_unit(self):
        """Multiplicative inverse of a series with unit constant term."""
        self._need_univariate()
        rng = self.ring
        c0 = self.constant_coeff()
        if not rng.is_unit(c0):
            raise NotAUnit("constant term is not a unit")
        inv0 = rng.invert(c0)
        support = sorted(d for (d,) in self.coeffs if d >= 1)
        out = {0: inv0}
        for n in range(1, self.cap + 1):
            s = None
            for k in support:
                if k > n:
                    break
                prev = out.get(n - k)
                if prev is None:
                    continue
                term = self.coeffs[(k,)] * prev
                s = term if s is None else s + term
            if s is not None and not rng.is_zero(s):
                out[n] = -(inv0 * s)
        return Series(rng, self.vars, self.cap,
                      {(d,): c for d, c in out.items() if not rng.is_zero(c)})

    def reversion(self):
        """Compositional inverse of T*(unit + ...), by Newton iteration.

        Works over any coefficient ring in which the linear coefficient is a
        unit (no division by integers occurs, so residue rings are fine).
        Each step doubles the number of correct coefficients: if a(b) = T
        mod T^(m+1) then the corrected b matches mod T^(2m+2).
        """
        self._need_univariate()
        rng = self.ring
        if not rng.is_zero(self.constant_coeff()):
            raise ValueError("reversion needs zero constant term")
        a1 = self.coeff(1)
        if not rng.is_unit(a1):
            raise NotAUnit("linear coefficient is not a unit")
        N = self.cap
        b = Series(rng, self.vars, 1, {(1,): rng.invert(a1)})
        m = 1
        while m < N:
            m2 = min(2 * m + 1, N)
            a = self.truncate(m2)
            bc = b.with_cap(m2)
            err = a.compose(bc).sub(Series.variable(rng, m2, self.vars[0]))
            if err.is_zero():
                b = bc
                m = m2
                continue
            slope = a.derivative().compose(bc)
            b = bc.sub(err.mul(slope.invert_unit()))
            m = m2
        return b
