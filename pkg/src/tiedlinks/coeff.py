"""Exact coefficient arithmetic.

``MPoly`` is a sparse multivariate polynomial with integer coefficients in the
variables ``u, v, a, b, q``.  ``Frac`` is a quotient of two such polynomials,
reduced only by integer content, common monomial factors and exact division
(no multivariate GCD).  ``Scalar`` adjoins a formal square root of a scaling
factor ``c`` and ``DeltaExt`` adjoins a root of the quadratic defining the
isomorphism parameter.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Mapping, Union

VARS = ("u", "v", "a", "b", "q")
NVARS = len(VARS)

Monomial = tuple  # exponent vector of length NVARS


class CoeffError(ArithmeticError):
    """Division by zero or a substitution that kills a denominator."""


def _mono_key(m: Monomial) -> tuple:
    # graded lex, u > v > a > b > q
    return (sum(m), *m)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(m1, m2))


def _mono_div(m1: Monomial, m2: Monomial) -> Monomial | None:
    out = tuple(x - y for x, y in zip(m1, m2))
    if min(out) < 0:
        return None
    return out


ZERO_MONO: Monomial = (0,) * NVARS


class MPoly:
    """Immutable sparse polynomial ``{exponent vector: int}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> MPoly:
        return cls({ZERO_MONO: c}) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> MPoly:
        e = [0] * NVARS
        e[VARS.index(name)] = power
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: int = 1) -> MPoly:
        return cls({m: c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self) -> MPoly:
        return MPoly({m: -c for m, c in self.terms.items()})

    def __add__(self, other: MPoly | int) -> MPoly:
        if isinstance(other, int):
            other = MPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __sub__(self, other: MPoly | int) -> MPoly:
        if isinstance(other, int):
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> MPoly:
        return MPoly.const(other) - self

    def __mul__(self, other: MPoly | int) -> MPoly:
        if isinstance(other, int):
            return MPoly({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_const(self) -> bool:
        return all(m == ZERO_MONO for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading(self) -> tuple[Monomial, int]:
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def content(self) -> int:
        return reduce(math.gcd, self.terms.values(), 0)

    def min_monomial(self) -> Monomial:
        """Componentwise minimum exponent, i.e. the largest monomial dividing every term."""
        return tuple(map(min, zip(*self.terms)))

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(ZERO_MONO) == 1

    def degree(self, name: str) -> int:
        k = VARS.index(name)
        return max((m[k] for m in self.terms), default=0)

    def exponents(self, name: str) -> set[int]:
        k = VARS.index(name)
        return {m[k] for m in self.terms}

    def divexact(self, other: MPoly) -> MPoly | None:
        """Return ``self / other`` if the division is exact, else ``None``."""
        if not other:
            raise CoeffError("division by the zero polynomial")
        lm, lc = other.leading()
        rem = dict(self.terms)
        quot: dict[Monomial, int] = {}
        while rem:
            m = max(rem, key=_mono_key)
            c = rem[m]
            qm = _mono_div(m, lm)
            if qm is None or c % lc:
                return None
            qc = c // lc
            quot[qm] = qc
            for om, oc in other.terms.items():
                pm = _mono_mul(qm, om)
                v = rem.get(pm, 0) - qc * oc
                if v:
                    rem[pm] = v
                else:
                    rem.pop(pm, None)
        return MPoly(quot)

    def _divide_monomial(self, m: Monomial, k: int = 1) -> MPoly:
        return MPoly({_mono_div(t, m): c // k for t, c in self.terms.items()})

    def subs(self, bindings: Mapping[str, "Frac"]) -> "Frac":
        """Substitute variables by fractions; unbound variables are kept."""
        idx = [(VARS.index(name), val) for name, val in bindings.items()]
        powers: dict[tuple[int, int], Frac] = {}
        total = Frac.zero()
        for m, c in self.terms.items():
            keep = list(m)
            term = Frac(MPoly.const(c))
            for k, val in idx:
                e = m[k]
                if e:
                    keep[k] = 0
                    key = (k, e)
                    if key not in powers:
                        powers[key] = val ** e
                    term = term * powers[key]
            total = total + term * Frac(MPoly.monomial(tuple(keep)))
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(VARS, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(("+ " if c > 0 else "- ") + text)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self.render()})"


def _as_frac(x: "Frac | MPoly | int") -> "Frac":
    if isinstance(x, Frac):
        return x
    if isinstance(x, int):
        return Frac(MPoly.const(x))
    return Frac(x)


class Frac:
    """Quotient ``num/den`` of polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, *, reduced: bool = False):
        if den is None:
            den = MPoly.const(1)
        if not den:
            raise CoeffError("zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> Frac:
        return cls(MPoly(), MPoly.const(1), reduced=True)

    @classmethod
    def one(cls) -> Frac:
        return cls(MPoly.const(1), MPoly.const(1), reduced=True)

    @classmethod
    def var(cls, name: str) -> Frac:
        return cls(MPoly.var(name), MPoly.const(1), reduced=True)

    @classmethod
    def const(cls, c: int) -> Frac:
        return cls(MPoly.const(c), MPoly.const(1), reduced=True)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, MPoly)):
            other = _as_frac(other)
        if not isinstance(other, Frac):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        # cross-multiplication equality admits no cheap canonical hash
        raise TypeError("Frac is not hashable")

    def __neg__(self) -> Frac:
        return Frac(-self.num, self.den, reduced=True)

    def __add__(self, other: Frac | MPoly | int) -> Frac:
        if not isinstance(other, (Frac, MPoly, int)):
            return NotImplemented
        other = _as_frac(other)
        if not other.num:
            return self
        if not self.num:
            return other
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return Frac(self.num + other.num, d1, reduced=True)
        if d1 == d2:
            return Frac(self.num + other.num, d1)
        if d1.is_const() and d1.terms.get(ZERO_MONO) == 1:
            return Frac(self.num * d2 + other.num, d2)
        if d2.is_const() and d2.terms.get(ZERO_MONO) == 1:
            return Frac(self.num + other.num * d1, d1)
        k = d2.divexact(d1)
        if k is not None:
            return Frac(self.num * k + other.num, d2)
        k = d1.divexact(d2)
        if k is not None:
            return Frac(self.num + other.num * k, d1)
        return Frac(self.num * d2 + other.num * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other: Frac | MPoly | int) -> Frac:
        if not isinstance(other, (Frac, MPoly, int)):
            return NotImplemented
        return self + (-_as_frac(other))

    def __rsub__(self, other: Frac | MPoly | int) -> Frac:
        return _as_frac(other) - self

    def __mul__(self, other: Frac | MPoly | int) -> Frac:
        if not isinstance(other, (Frac, MPoly, int)):
            return NotImplemented
        other = _as_frac(other)
        if not self.num or not other.num:
            return Frac.zero()
        if self.den.is_one() and other.den.is_one():
            return Frac(self.num * other.num, self.den, reduced=True)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> Frac:
        if not self.num:
            raise CoeffError("division by zero")
        return Frac(self.den, self.num)

    def __truediv__(self, other: Frac | MPoly | int) -> Frac:
        if not isinstance(other, (Frac, MPoly, int)):
            return NotImplemented
        return self * _as_frac(other).inverse()

    def __rtruediv__(self, other: Frac | MPoly | int) -> Frac:
        return _as_frac(other) * self.inverse()

    def __pow__(self, k: int) -> Frac:
        if k < 0:
            return self.inverse() ** (-k)
        return Frac(self.num**k, self.den**k)

    def subs(self, bindings: Mapping[str, "Frac | MPoly | int"]) -> Frac:
        if not bindings:
            return self
        b = {k: _as_frac(v) for k, v in bindings.items()}
        den = self.den.subs(b)
        if not den:
            raise CoeffError(
                f"denominator ({self.den.render()}) vanishes under substitution"
            )
        return self.num.subs(b) / den

    def render(self) -> str:
        return f"({self.num.render()})/({self.den.render()})"

    def __repr__(self) -> str:
        return f"Frac{self.render()}"


def _reduce(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if not num:
        return MPoly(), MPoly.const(1)
    g = math.gcd(num.content(), den.content())
    if den.leading()[1] < 0:
        g = -g
    m = tuple(min(x, y) for x, y in zip(num.min_monomial(), den.min_monomial()))
    if g != 1 or any(m):
        num = num._divide_monomial(m, g)
        den = den._divide_monomial(m, g)
    if den.is_monomial():
        # content and common monomial already removed
        return num, den
    q = num.divexact(den)
    if q is not None:
        return q, MPoly.const(1)
    if not num.is_monomial():
        q = den.divexact(num)
        if q is not None:
            # num | den: 1/q, renormalising the sign
            if q.leading()[1] < 0:
                return MPoly.const(-1), -q
            return MPoly.const(1), q
    return num, den


FracLike = Union[Frac, MPoly, int]

U = Frac.var("u")
V = Frac.var("v")
A = Frac.var("a")
B = Frac.var("b")
Q = Frac.var("q")
ONE = Frac.one()
ZERO = Frac.zero()

#: a + b(1 - v), the only non-monomial denominator factor of invariants
D_FACTOR = A + B * (1 - V)
#: scaling factor c = (a + b(1 - v)) / (a u)
C_GENERIC = D_FACTOR / (A * U)


class Scalar:
    """``even + odd * sqrt(c)`` with ``(sqrt c)^2 = c``.

    ``c`` defaults to the generic scaling factor and follows substitutions.
    """

    __slots__ = ("even", "odd", "c")

    def __init__(self, even: FracLike = 0, odd: FracLike = 0, c: Frac | None = None):
        self.even = _as_frac(even)
        self.odd = _as_frac(odd)
        self.c = C_GENERIC if c is None else c

    @classmethod
    def sqrt_c(cls, c: Frac | None = None) -> Scalar:
        return cls(0, 1, c)

    @classmethod
    def sqrt_c_power(cls, k: int, c: Frac | None = None) -> Scalar:
        """``(sqrt c)^k`` for any integer ``k``."""
        cc = C_GENERIC if c is None else c
        half, odd = divmod(k, 2)
        base = cc**half
        return cls(0, base, cc) if odd else cls(base, 0, cc)

    def _lift(self, other: "Scalar | FracLike") -> Scalar:
        if isinstance(other, Scalar):
            if other.c is not self.c and other.c != self.c:
                raise ValueError("Scalars over different square roots")
            return other
        return Scalar(other, 0, self.c)

    def __bool__(self) -> bool:
        return bool(self.even) or bool(self.odd)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, MPoly, Frac)):
            other = Scalar(other, 0, self.c)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd and (
            not other.odd or other.c is self.c or other.c == self.c
        )

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> Scalar:
        return Scalar(-self.even, -self.odd, self.c)

    def __add__(self, other: "Scalar | FracLike") -> Scalar:
        o = self._lift(other)
        return Scalar(self.even + o.even, self.odd + o.odd, self.c)

    __radd__ = __add__

    def __sub__(self, other: "Scalar | FracLike") -> Scalar:
        o = self._lift(other)
        return Scalar(self.even - o.even, self.odd - o.odd, self.c)

    def __rsub__(self, other: FracLike) -> Scalar:
        return self._lift(other) - self

    def __mul__(self, other: "Scalar | FracLike") -> Scalar:
        o = self._lift(other)
        e1, o1, e2, o2 = self.even, self.odd, o.even, o.odd
        even = e1 * e2
        if o1 and o2:
            even = even + o1 * o2 * self.c
        odd = e1 * o2 + o1 * e2
        return Scalar(even, odd, self.c)

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        return Scalar(self.even, -self.odd, self.c)

    def norm(self) -> Frac:
        return self.even * self.even - self.odd * self.odd * self.c

    def inverse(self) -> Scalar:
        n = self.norm()
        if not n:
            raise CoeffError("division by zero")
        inv = n.inverse()
        return Scalar(self.even * inv, -self.odd * inv, self.c)

    def __truediv__(self, other: "Scalar | FracLike") -> Scalar:
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other: FracLike) -> Scalar:
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1, 0, self.c)
        for _ in range(k):
            out = out * self
        return out

    def subs(self, bindings: Mapping[str, FracLike]) -> Scalar:
        return Scalar(self.even.subs(bindings), self.odd.subs(bindings), self.c.subs(bindings))

    def render(self) -> str:
        return f"even: {self.even.render()} ; odd: {self.odd.render()}"

    def __repr__(self) -> str:
        return f"Scalar[{self.render()}]"


def substitute(x: Scalar, bindings: Mapping[str, FracLike]) -> Scalar:
    return x.subs(bindings)


def canonical_render(x: Scalar) -> str:
    return x.render()


class DeltaExt:
    """``c0 + c1*z`` modulo ``u(z+1)^2 - (v-1)(z+1) - 1``, coefficients in Frac(u, v).

    Reduction uses ``z^2 = ((v - 1 - 2u) z + (v - u)) / u``.
    """

    __slots__ = ("c0", "c1")

    Z2_LINEAR = (V - 1 - 2 * U) / U
    Z2_CONST = (V - U) / U

    def __init__(self, c0: FracLike = 0, c1: FracLike = 0):
        self.c0 = _as_frac(c0)
        self.c1 = _as_frac(c1)

    @classmethod
    def z(cls) -> DeltaExt:
        return cls(0, 1)

    def _lift(self, other: "DeltaExt | FracLike") -> DeltaExt:
        return other if isinstance(other, DeltaExt) else DeltaExt(other)

    def __bool__(self) -> bool:
        return bool(self.c0) or bool(self.c1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, MPoly, Frac)):
            other = DeltaExt(other)
        if not isinstance(other, DeltaExt):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> DeltaExt:
        return DeltaExt(-self.c0, -self.c1)

    def __add__(self, other: "DeltaExt | FracLike") -> DeltaExt:
        o = self._lift(other)
        return DeltaExt(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __sub__(self, other: "DeltaExt | FracLike") -> DeltaExt:
        o = self._lift(other)
        return DeltaExt(self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other: FracLike) -> DeltaExt:
        return self._lift(other) - self

    def __mul__(self, other: "DeltaExt | FracLike") -> DeltaExt:
        o = self._lift(other)
        c0 = self.c0 * o.c0
        c1 = self.c0 * o.c1 + self.c1 * o.c0
        zz = self.c1 * o.c1
        if zz:
            c0 = c0 + zz * self.Z2_CONST
            c1 = c1 + zz * self.Z2_LINEAR
        return DeltaExt(c0, c1)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> DeltaExt:
        if k < 0:
            return self.inverse() ** (-k)
        out = DeltaExt(1)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> DeltaExt:
        # (x0 + x1 z)(y0 + y1 z) = 1 as a 2x2 linear system in (y0, y1)
        m00, m10 = self.c0, self.c1
        col = self * DeltaExt(0, 1)
        m01, m11 = col.c0, col.c1
        det = m00 * m11 - m01 * m10
        if not det:
            raise CoeffError("division by zero in DeltaExt")
        return DeltaExt(m11 / det, -m10 / det)

    def __truediv__(self, other: "DeltaExt | FracLike") -> DeltaExt:
        return self * self._lift(other).inverse()

    def __repr__(self) -> str:
        return f"DeltaExt({self.c0.render()} + {self.c1.render()}*z)"


def delta_minimal_poly(z: DeltaExt) -> DeltaExt:
    """Evaluate ``u(z+1)^2 - (v-1)(z+1) - 1``."""
    w = z + 1
    return U * w * w - (V - 1) * w - 1


def frac_arith(x: FracLike, y: FracLike, op: str) -> Frac:
    x, y = _as_frac(x), _as_frac(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def frac_sum(items: Iterable[Frac]) -> Frac:
    total = Frac.zero()
    for x in items:
        total = total + x
    return total
