"""Exact truncated power series, Fibonacci polynomials and counting series.

Coefficients are :class:`fractions.Fraction`; nothing here touches floats.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt
from typing import Iterable, Sequence

from .core import PolyenumError


class NonInvertibleConstantTerm(PolyenumError, ZeroDivisionError):
    pass


class NonSquareConstantTerm(PolyenumError, ValueError):
    pass


class ConstantTermNotZero(PolyenumError, ValueError):
    pass


class UnknownFamily(PolyenumError, ValueError):
    pass


class IdentityFailed(PolyenumError, AssertionError):
    def __init__(self, name: str, k: int):
        super().__init__(f"identity {name} failed at k={k}")
        self.name = name
        self.k = k


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _rational_sqrt(q: Fraction) -> Fraction:
    if q < 0:
        raise NonSquareConstantTerm(f"{q} is negative")
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NonSquareConstantTerm(f"{q} is not a rational square")
    return Fraction(rn, rd)


# ---------------------------------------------------------------------------
# univariate


class Series:
    """Power series in one variable, known for degrees 0..N."""

    __slots__ = ("c", "N", "var")

    def __init__(self, coeffs: Iterable, N: int, var: str = "x"):
        c = [_frac(v) for v in coeffs][: N + 1]
        c += [Fraction(0)] * (N + 1 - len(c))
        self.c = c
        self.N = N
        self.var = var

    # constructors
    @classmethod
    def const(cls, v, N: int, var: str = "x") -> "Series":
        return cls([v], N, var)

    @classmethod
    def gen(cls, N: int, var: str = "x") -> "Series":
        return cls([0, 1], N, var)

    @classmethod
    def poly(cls, coeffs: Sequence, N: int, var: str = "x") -> "Series":
        return cls(coeffs, N, var)

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            if other.N != self.N:
                n = min(self.N, other.N)
                return Series(other.c, n, self.var)
            return other
        return Series.const(other, self.N, self.var)

    def _lift(self, other):
        o = self._coerce(other)
        n = min(self.N, o.N)
        return (self if self.N == n else Series(self.c, n, self.var)), o, n

    def __add__(self, other):
        a, b, n = self._lift(other)
        return Series([x + y for x, y in zip(a.c, b.c)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Series([-x for x in self.c], self.N, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            o = _frac(other)
            return Series([x * o for x in self.c], self.N, self.var)
        a, b, n = self._lift(other)
        out = [Fraction(0)] * (n + 1)
        bc = b.c
        for i, x in enumerate(a.c):
            if x:
                for j in range(n + 1 - i):
                    if bc[j]:
                        out[i + j] += x * bc[j]
        return Series(out, n, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        c0 = self.c[0]
        if c0 == 0:
            raise NonInvertibleConstantTerm("constant term is zero")
        g = [Fraction(0)] * (self.N + 1)
        g[0] = 1 / c0
        for n in range(1, self.N + 1):
            s = sum(self.c[k] * g[n - k] for k in range(1, n + 1))
            g[n] = -s / c0
        return Series(g, self.N, self.var)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            return self * (1 / _frac(other))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Series.const(1, self.N, self.var)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def sqrt(self) -> "Series":
        g0 = _rational_sqrt(self.c[0])
        if g0 == 0:
            raise NonSquareConstantTerm("square root of a series with zero constant term")
        g = [Fraction(0)] * (self.N + 1)
        g[0] = g0
        for n in range(1, self.N + 1):
            s = sum(g[k] * g[n - k] for k in range(1, n))
            g[n] = (self.c[n] - s) / (2 * g0)
        return Series(g, self.N, self.var)

    def compose(self, inner: "Series") -> "Series":
        """self(inner(x)); inner must have zero constant term."""
        if inner.c[0] != 0:
            raise ConstantTermNotZero("inner series must vanish at 0")
        n = min(self.N, inner.N)
        inner = Series(inner.c, n, self.var)
        out = Series.const(0, n, self.var)
        for a in reversed(self.c[: n + 1]):
            out = out * inner + a
        return out

    def shift(self, k: int) -> "Series":
        """Multiply by var**k."""
        return Series([0] * k + self.c, self.N, self.var)

    def truncate(self, N: int) -> "Series":
        return Series(self.c, N, self.var)

    def __getitem__(self, n: int) -> Fraction:
        return self.c[n]

    def coefficients(self) -> list[Fraction]:
        return list(self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.N, other.N)
        return self.c[: n + 1] == other.c[: n + 1]

    def __hash__(self):
        return hash(tuple(self.c))

    def __repr__(self) -> str:
        terms = [f"{v}*{self.var}^{i}" for i, v in enumerate(self.c) if v]
        return f"Series({' + '.join(terms) or '0'} + O({self.var}^{self.N + 1}))"

    def to_csv(self, start: int = 0, end: int | None = None) -> str:
        end = self.N if end is None else end
        return "".join(f"{n},{self.c[n].numerator},{self.c[n].denominator}\n" for n in range(start, end + 1))


def geometric(N: int, var: str = "x") -> Series:
    return Series([1] * (N + 1), N, var)


# ---------------------------------------------------------------------------
# bivariate, truncated by total degree


class Series2:
    """Power series in (x, z), known for total degree <= N."""

    __slots__ = ("c", "N")

    def __init__(self, coeffs: dict, N: int):
        self.N = N
        self.c = {k: _frac(v) for k, v in coeffs.items() if v and k[0] + k[1] <= N}

    @classmethod
    def const(cls, v, N):
        return cls({(0, 0): v}, N)

    @classmethod
    def x(cls, N):
        return cls({(1, 0): 1}, N)

    @classmethod
    def z(cls, N):
        return cls({(0, 1): 1}, N)

    def _coerce(self, other):
        if isinstance(other, Series2):
            return other
        return Series2.const(other, self.N)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.c)
        for k, v in o.c.items():
            out[k] = out.get(k, 0) + v
        return Series2(out, min(self.N, o.N))

    __radd__ = __add__

    def __neg__(self):
        return Series2({k: -v for k, v in self.c.items()}, self.N)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series2):
            o = _frac(other)
            return Series2({k: v * o for k, v in self.c.items()}, self.N)
        n = min(self.N, other.N)
        out: dict = {}
        for (a, b), u in self.c.items():
            for (c, d), v in other.c.items():
                if a + b + c + d <= n:
                    key = (a + c, b + d)
                    out[key] = out.get(key, 0) + u * v
        return Series2(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "Series2":
        c0 = self.c.get((0, 0), 0)
        if c0 == 0:
            raise NonInvertibleConstantTerm("constant term is zero")
        g: dict = {(0, 0): 1 / c0}
        rest = [(k, v) for k, v in self.c.items() if k != (0, 0)]
        for deg in range(1, self.N + 1):
            for i in range(deg + 1):
                j = deg - i
                s = Fraction(0)
                for (a, b), v in rest:
                    if a <= i and b <= j:
                        gv = g.get((i - a, j - b))
                        if gv:
                            s += v * gv
                if s:
                    g[(i, j)] = -s / c0
        return Series2(g, self.N)

    def __truediv__(self, other):
        if not isinstance(other, Series2):
            return self * (1 / _frac(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def subs_z(self, u: "Series2") -> "Series2":
        """Replace z by u(x, z); u must vanish at the origin."""
        if u.c.get((0, 0), 0) != 0:
            raise ConstantTermNotZero("substituted series must vanish at 0")
        n = min(self.N, u.N)
        maxj = max((k[1] for k in self.c), default=0)
        powers = [Series2.const(1, n)]
        for _ in range(maxj):
            powers.append(powers[-1] * u)
        out: dict = {}
        for (i, j), v in self.c.items():
            for (a, b), w in powers[j].c.items():
                if i + a + b <= n:
                    out[(i + a, b)] = out.get((i + a, b), 0) + v * w
        return Series2(out, n)

    def diagonal(self) -> Series:
        """Set z = x."""
        out = [Fraction(0)] * (self.N + 1)
        for (i, j), v in self.c.items():
            out[i + j] += v
        return Series(out, self.N)

    def __eq__(self, other):
        if not isinstance(other, Series2):
            return NotImplemented
        n = min(self.N, other.N)
        a = {k: v for k, v in self.c.items() if sum(k) <= n}
        b = {k: v for k, v in other.c.items() if sum(k) <= n}
        return a == b

    def __repr__(self):
        return f"Series2({len(self.c)} terms, N={self.N})"


# ---------------------------------------------------------------------------
# polynomials in (x, z) with integer coefficients


class Poly2:
    __slots__ = ("c",)

    def __init__(self, coeffs: dict):
        self.c = {k: v for k, v in coeffs.items() if v}

    @classmethod
    def const(cls, v):
        return cls({(0, 0): v})

    X: "Poly2"
    Z: "Poly2"

    def __add__(self, o):
        o = o if isinstance(o, Poly2) else Poly2.const(o)
        out = dict(self.c)
        for k, v in o.c.items():
            out[k] = out.get(k, 0) + v
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -v for k, v in self.c.items()})

    def __sub__(self, o):
        return self + (-(o if isinstance(o, Poly2) else Poly2.const(o)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Poly2):
            return Poly2({k: v * o for k, v in self.c.items()})
        out: dict = {}
        for (a, b), u in self.c.items():
            for (c, d), v in o.c.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + u * v
        return Poly2(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly2.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, o):
        if not isinstance(o, Poly2):
            o = Poly2.const(o)
        return self.c == o.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def at(self, x, z):
        return sum(v * _frac(x) ** a * _frac(z) ** b for (a, b), v in self.c.items())

    def diagonal(self) -> "Poly2":
        """Specialize z = x (result only uses x)."""
        out: dict = {}
        for (a, b), v in self.c.items():
            out[(a + b, 0)] = out.get((a + b, 0), 0) + v
        return Poly2(out)

    def to_series(self, N: int) -> Series:
        """Univariate series after z = x."""
        d = self.diagonal()
        out = [0] * (N + 1)
        for (a, _), v in d.c.items():
            if a <= N:
                out[a] += v
        return Series(out, N)

    def to_series2(self, N: int) -> Series2:
        return Series2(dict(self.c), N)

    def __repr__(self):
        def mono(a, b):
            s = ("x" + (f"^{a}" if a > 1 else "")) * (a > 0) + ("z" + (f"^{b}" if b > 1 else "")) * (b > 0)
            return s
        parts = [f"{v}{'*' + mono(a, b) if a or b else ''}" for (a, b), v in sorted(self.c.items())]
        return " + ".join(parts) or "0"


Poly2.X = Poly2({(1, 0): 1})
Poly2.Z = Poly2({(0, 1): 1})


_FIB_CACHE: list[Poly2] = []


def fib_poly(k: int) -> Poly2:
    """F_0 = F_1 = 1, F_2 = 1 - z, F_k = F_{k-1} - x F_{k-2}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not _FIB_CACHE:
        _FIB_CACHE.extend([Poly2.const(1), Poly2.const(1), Poly2.const(1) - Poly2.Z])
    while len(_FIB_CACHE) <= k:
        _FIB_CACHE.append(_FIB_CACHE[-1] - Poly2.X * _FIB_CACHE[-2])
    return _FIB_CACHE[k]


def fib_poly_at(k: int, x, z) -> Fraction:
    return fib_poly(k).at(x, z)


def fib_identities(k_max: int) -> dict[str, bool]:
    """Check the Fibonacci-polynomial relations at z = x for 1 <= k <= k_max.

    Raises IdentityFailed on the first failure of a relation that should
    hold.  The misprinted variant of the Catalan-type relation is evaluated
    too and reported under "catalan_printed" (it is expected to fail).
    """
    x = Poly2.X
    F = lambda j: fib_poly(j).diagonal()  # noqa: E731
    report = {"square": True, "odd": True, "continued_fraction": True, "catalan": True, "catalan_printed": True}
    for k in range(1, k_max + 1):
        if F(k) ** 2 - x * F(k - 1) ** 2 != F(2 * k):
            raise IdentityFailed("square", k)
        if F(k) * (F(k + 1) - x * F(k - 1)) != F(2 * k + 1):
            raise IdentityFailed("odd", k)
        # F_k / F_{k+1} = 1 / (1 - x F_{k-1} / F_k), cleared of denominators
        if F(k) - x * F(k - 1) != F(k + 1):
            raise IdentityFailed("continued_fraction", k)
        if F(k + 1) ** 2 != x ** (k + 1) + F(k) * F(k + 2):
            raise IdentityFailed("catalan", k)
        if F(k - 1) ** 2 != x ** (k + 1) + F(k) * F(k + 2):
            report["catalan_printed"] = False
    return report


def fib_lemma_holds(k: int, N: int) -> bool:
    """F_k(x, x/(1-z)) (1-z) = F_{k+1}(x, z) as series in x, z to total degree N."""
    one = Series2.const(1, N)
    Z = Series2.z(N)
    sub = Series2.x(N) / (one - Z)
    lhs = fib_poly(k).to_series2(N).subs_z(sub) * (one - Z)
    return lhs == fib_poly(k + 1).to_series2(N)


# ---------------------------------------------------------------------------
# k-parallelogram series


def _ratio(a: int, b: int, N: int) -> Series:
    return fib_poly(a).to_series(N) / fib_poly(b).to_series(N)


def gf_k_parallelogram(k: int, N: int) -> Series:
    """P_k(x): parallelogram polyominoes of convexity degree at most k, by sp."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x2 = Series.gen(N).shift(1)
    r1 = _ratio(k + 1, k + 2, N)
    r0 = _ratio(k, k + 1, N)
    return x2 * r1 * r1 - x2 * (r1 - r0) * (r1 - r0)


def gf_zero(N: int) -> Series:
    """Bars: xy + x^2 y/(1-x) + x y^2/(1-y) at y = x."""
    x = Series.gen(N)
    one = Series.const(1, N)
    return x * x + 2 * (x * x * x) / (one - x)


def _recurrence_pieces(k: int, N: int):
    """A_k, B_k, Abar_k, Bbar_k with y = x, as series in (x, second variable)."""
    X = Series2.x(N)
    Z = Series2.z(N)
    one = Series2.const(1, N)
    sub = X / (one - Z)  # x / (1 - z), also used for t -> y/(1-t) since y = x
    A = Z * Z * X / ((one - Z - X) * (one - Z))
    Abar = Z * Z / (one - Z)
    B = Z + Z * Z / (one - Z)
    Bhat = Z * Z / (one - Z)
    Bbar = Z * Z / (one - Z)
    for j in range(2, k + 1):
        if j == 2:
            A = Z * A.subs_z(sub)
            Abar = Z * Abar.subs_z(sub)
            B = X / (one - Z) + Z * Bhat.subs_z(sub)
            Bbar = Z * Bbar.subs_z(sub)
        else:
            f = Z / (one - Z)
            A = f * A.subs_z(sub)
            Abar = f * Abar.subs_z(sub)
            B = X / (one - Z) + f * Bhat.subs_z(sub)
            Bbar = f * Bbar.subs_z(sub)
        Bhat = B - X
    return A, B, Abar, Bbar


def gf_exact_degree(k: int, N: int, method: str = "difference") -> Series:
    """Gf_k(x): parallelogram polyominoes of convexity degree exactly k.

    method "difference" uses P_k - P_{k-1}; "recurrence" uses the boundary
    path recurrences, 2 A_k B_k + Abar_k Bbar_k at all variables equal;
    "closed" uses the Fibonacci closed forms.
    """
    if k == 0:
        return gf_zero(N)
    if method == "difference":
        return gf_k_parallelogram(k, N) - gf_k_parallelogram(k - 1, N)
    if method == "recurrence":
        A, B, Abar, Bbar = _recurrence_pieces(k, N)
        return (2 * A * B + Abar * Bbar).diagonal()
    if method == "closed":
        x = Series.gen(N)
        F = lambda j: fib_poly(j).to_series(N)  # noqa: E731
        up = 2 * (x ** (k + 3)) * F(k) / (F(k + 1) * F(k + 1) * F(k + 2))
        flat = x ** (2 * k + 2) / (F(k) * F(k) * F(k + 1) * F(k + 1))
        return up + flat
    raise ValueError(f"unknown method {method!r}")


def closed_A(k: int, N: int) -> Series2:
    """z x^{k+1} / (F_{k+1}(x,z) F_{k+2}(x,z)), the bivariate closed form."""
    num = Series2({(k + 1, 1): 1}, N)
    return num / (fib_poly(k + 1).to_series2(N) * fib_poly(k + 2).to_series2(N))


def recurrence_A(k: int, N: int) -> Series2:
    return _recurrence_pieces(k, N)[0]


def gf1_printed(N: int) -> Series:
    """The sign-flipped Gf_1 as printed: x^4 (2x - 3)/((1-x)^2 (1-2x))."""
    x = Series.gen(N)
    one = Series.const(1, N)
    return x ** 4 * (2 * x - 3) / ((one - x) ** 2 * (one - 2 * x))


def gf1_corrected(N: int) -> Series:
    x = Series.gen(N)
    one = Series.const(1, N)
    return x ** 4 * (3 - 2 * x) / ((one - x) ** 2 * (one - 2 * x))


def gf2_printed(N: int) -> Series:
    x = Series.gen(N)
    one = Series.const(1, N)
    num = x ** 5 * (2 - 5 * x + 3 * x * x - x ** 3)
    den = (one - x) ** 2 * (one - 2 * x) ** 2 * (one - 3 * x + x * x)
    return num / den


# ---------------------------------------------------------------------------
# family series (coefficient of t^n counts semi-perimeter n)


def _convex_closed(N: int) -> Series:
    c = [0] * (N + 1)
    for sp in range(2, N + 1):
        m = sp - 2
        if m == 0:
            c[sp] = 1
        elif m == 1:
            c[sp] = 2
        else:
            n = m - 2
            c[sp] = (2 * n + 11) * 4 ** n - 4 * (2 * n + 1) * comb(2 * n, n)
    return Series(c, N, "t")


def _convex_dv(N: int, printed: bool = False) -> Series:
    """Algebraic semi-perimeter series of convex polyominoes.

    The default is t^2(1-6t+11t^2-4t^3)/(1-4t)^2 - 4t^4/(1-4t)^{3/2}.  With
    ``printed`` the misprinted variant with numerator 1-8t+21t^2-19t^3+4t^4
    over (1-2t)(1-4t)^2 and 2t^4 is returned; it departs from the counts at
    t^5.
    """
    t = Series.gen(N, "t")
    one = Series.const(1, N, "t")
    q = one - 4 * t
    if printed:
        first = t * t * (one - 8 * t + 21 * t ** 2 - 19 * t ** 3 + 4 * t ** 4) / ((one - 2 * t) * q * q)
        return first - 2 * t ** 4 / (q * q.sqrt())
    first = t * t * (one - 6 * t + 11 * t ** 2 - 4 * t ** 3) / (q * q)
    return first - 4 * t ** 4 / (q * q.sqrt())


def _column_convex(N: int) -> Series:
    # f = (1-t)(1 - 2/(3 - s)) with s = sqrt((1 + t + r)/2) and
    # r = sqrt((t^2 - 6t + 1)(1+t)^2/(1-t)^2); the factor sqrt 2 of the
    # printed form cancels, which keeps every coefficient rational.
    # Expanded, the coefficient of t^n already counts half-perimeter n.
    M = N
    t = Series.gen(M, "t")
    one = Series.const(1, M, "t")
    inner = (t * t - 6 * t + 1) * (one + t) ** 2 / ((one - t) ** 2)
    r = inner.sqrt()
    s = ((one + t + r) / 2).sqrt()
    return (one - t) * (one - 2 / (3 - s))


def _l_convex(N: int) -> Series:
    c = [0] * (N + 1)
    f = [1, 2, 7]
    while len(f) < N:
        f.append(4 * f[-1] - 2 * f[-2])
    for sp in range(2, N + 1):
        c[sp] = f[sp - 2]
    return Series(c, N, "t")


def family_series(name: str, N: int, variant: str | None = None) -> Series:
    t = Series.gen(N, "t")
    one = Series.const(1, N, "t")
    if name == "convex":
        closed = _convex_closed(N)
        if variant == "closed":
            return closed
        dv = _convex_dv(N)
        if variant == "delest-viennot":
            return dv
        if variant == "printed":
            return _convex_dv(N, printed=True)
        if closed != dv:
            raise AssertionError("convex closed formula and algebraic series disagree")
        return closed
    if name == "directedConvex":
        return t * t / (one - 4 * t).sqrt()
    if name == "parallelogram":
        disc = one - 4 * t  # x^2 + y^2 - 2x - 2y - 2xy + 1 at x = y = t
        return (one - 2 * t - disc.sqrt()) / 2
    if name == "stack":
        return t * t * (one - t) / (one - 3 * t + t * t)
    if name == "ferrer":
        return t * t / (one - 2 * t)
    if name == "columnConvex":
        return _column_convex(N)
    if name == "lConvex":
        return _l_convex(N)
    raise UnknownFamily(name)


FAMILY_SERIES = ("convex", "directedConvex", "parallelogram", "stack", "ferrer", "columnConvex", "lConvex")


def catalan(N: int) -> Series:
    return Series([comb(2 * n, n) // (n + 1) for n in range(N + 1)], N)


def agreement_horizon(k: int, N: int) -> int:
    """Largest n <= N such that P_k and the parallelogram series agree on 2..n (1 if none)."""
    pk = gf_k_parallelogram(k, N)
    par = family_series("parallelogram", N)
    h = 1
    for n in range(2, N + 1):
        if pk[n] != par[n]:
            break
        h = n
    return h


def catalan_limit_check(k: int, N: int) -> bool:
    """Low orders of P_k already match the full parallelogram count up to min(N, k+2)."""
    return agreement_horizon(k, N) >= min(N, k + 2)
