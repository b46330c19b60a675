"""Exact polynomial rings: Z[d, U], Z[sqrt3][d, U], and polynomials in V over it."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Exp = tuple[int, int]


class InexactDivision(ArithmeticError):
    pass


class IntPoly2:
    """Sparse polynomial in ``d`` and ``U`` with integer coefficients.

    Keys are ``(deg_d, deg_U)``; zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Exp, int] | None = None):
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c: int) -> "IntPoly2":
        return cls({(0, 0): c})

    @classmethod
    def d(cls) -> "IntPoly2":
        return cls({(1, 0): 1})

    @classmethod
    def U(cls) -> "IntPoly2":
        return cls({(0, 1): 1})

    @classmethod
    def from_u_coeffs(cls, coeffs: Iterable[int], d_power: int = 0) -> "IntPoly2":
        """``sum c_k U**k``, optionally times ``d**d_power``."""
        return cls({(d_power, k): c for k, c in enumerate(coeffs)})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly2.const(other)
        return isinstance(other, IntPoly2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return IntPoly2({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = _as_int2(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return IntPoly2(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_int2(other))

    def __rsub__(self, other):
        return _as_int2(other) - self

    def __mul__(self, other):
        other = _as_int2(other)
        out: dict[Exp, int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return IntPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPoly2.const(1)
        for _ in range(n):
            out = out * self
        return out

    def leading(self) -> tuple[Exp, int]:
        k = max(self.terms)
        return k, self.terms[k]

    def exact_div(self, other: "IntPoly2") -> "IntPoly2":
        """Quotient when ``other`` divides ``self`` exactly in Z[d, U]."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        (di, dj), dc = other.leading()
        rem = dict(self.terms)
        quot: dict[Exp, int] = {}
        while rem:
            (i, j) = max(rem)
            c = rem[(i, j)]
            q, r = divmod(c, dc)
            if r or i < di or j < dj:
                raise InexactDivision("polynomial division is not exact")
            qk = (i - di, j - dj)
            quot[qk] = q
            for (oi, oj), oc in other.terms.items():
                k = (oi + qk[0], oj + qk[1])
                v = rem.get(k, 0) - q * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return IntPoly2(quot)

    def deg_U(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def deg_d(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def diff_U(self) -> "IntPoly2":
        return IntPoly2({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def subs_d(self, value: Union[int, Fraction]) -> "IntPoly2":
        """Substitute an integer for ``d``."""
        out: dict[Exp, int] = {}
        for (i, j), c in self.terms.items():
            out[(0, j)] = out.get((0, j), 0) + c * value ** i
        return IntPoly2(out)

    def subs_d_squared(self, value: int) -> "IntPoly2":
        """Substitute ``d**2 = value``; only even powers of ``d`` are allowed."""
        out: dict[Exp, int] = {}
        for (i, j), c in self.terms.items():
            if i % 2:
                raise ValueError("odd power of d present")
            out[(0, j)] = out.get((0, j), 0) + c * value ** (i // 2)
        return IntPoly2(out)

    def evaluate(self, d, U):
        return sum(c * d ** i * U ** j for (i, j), c in self.terms.items())

    def __repr__(self):
        return f"IntPoly2({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            mono = "*".join(s for s in (_pw("d", i), _pw("U", j)) if s)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _pw(name: str, k: int) -> str:
    return "" if k == 0 else (name if k == 1 else f"{name}^{k}")


def _as_int2(x) -> IntPoly2:
    if isinstance(x, IntPoly2):
        return x
    if isinstance(x, int):
        return IntPoly2.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as IntPoly2")


class SurdPoly:
    """``rat + surd * sqrt(3)`` with ``rat, surd`` in Z[d, U]."""

    __slots__ = ("rat", "surd")

    def __init__(self, rat: IntPoly2 | int = 0, surd: IntPoly2 | int = 0):
        self.rat = _as_int2(rat)
        self.surd = _as_int2(surd)

    @classmethod
    def sqrt3(cls) -> "SurdPoly":
        return cls(0, 1)

    def is_zero(self) -> bool:
        return self.rat.is_zero() and self.surd.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _as_surd(other)
        return self.rat == other.rat and self.surd == other.surd

    def __hash__(self):
        return hash((self.rat, self.surd))

    def __neg__(self):
        return SurdPoly(-self.rat, -self.surd)

    def __add__(self, other):
        other = _as_surd(other)
        return SurdPoly(self.rat + other.rat, self.surd + other.surd)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_surd(other))

    def __rsub__(self, other):
        return _as_surd(other) - self

    def __mul__(self, other):
        other = _as_surd(other)
        rat = self.rat * other.rat + 3 * (self.surd * other.surd)
        surd = self.rat * other.surd + self.surd * other.rat
        return SurdPoly(rat, surd)

    __rmul__ = __mul__

    def conjugate(self) -> "SurdPoly":
        """The image under ``sqrt3 -> -sqrt3``."""
        return SurdPoly(self.rat, -self.surd)

    def norm(self) -> IntPoly2:
        return self.rat * self.rat - 3 * (self.surd * self.surd)

    def exact_div(self, other: "SurdPoly") -> "SurdPoly":
        other = _as_surd(other)
        if other.surd.is_zero():
            return SurdPoly(self.rat.exact_div(other.rat), self.surd.exact_div(other.rat))
        num = self * other.conjugate()
        n = other.norm()
        return SurdPoly(num.rat.exact_div(n), num.surd.exact_div(n))

    def evaluate(self, d, U, sqrt3):
        return self.rat.evaluate(d, U) + self.surd.evaluate(d, U) * sqrt3

    def __repr__(self):
        return f"SurdPoly({self})"

    def __str__(self):
        if self.surd.is_zero():
            return str(self.rat)
        return f"({self.rat}) + ({self.surd})*sqrt3"


def _as_surd(x) -> SurdPoly:
    if isinstance(x, SurdPoly):
        return x
    if isinstance(x, (int, IntPoly2)):
        return SurdPoly(x, 0)
    raise TypeError(f"cannot use {type(x).__name__} as SurdPoly")


class SurdPolyInV:
    """Polynomial in ``V`` with SurdPoly coefficients ``[c_0, c_1, ...]``.

    Trailing zero coefficients are stripped, so ``degree`` is exact
    (-1 for the zero polynomial).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_surd(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def V(cls) -> "SurdPolyInV":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> SurdPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else SurdPoly()

    def __eq__(self, other):
        other = _as_inv(other)
        return self.coeffs == other.coeffs

    def __neg__(self):
        return SurdPolyInV([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_inv(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SurdPolyInV([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_inv(other))

    def __rsub__(self, other):
        return _as_inv(other) - self

    def __mul__(self, other):
        other = _as_inv(other)
        if not self.coeffs or not other.coeffs:
            return SurdPolyInV()
        out = [SurdPoly() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return SurdPolyInV(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = SurdPolyInV([1])
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "SurdPolyInV":
        return SurdPolyInV([c.conjugate() for c in self.coeffs])

    def map_coeffs(self, fn) -> "SurdPolyInV":
        return SurdPolyInV([fn(c) for c in self.coeffs])

    def evaluate(self, d, U, V, sqrt3):
        return sum(c.evaluate(d, U, sqrt3) * V ** k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return "SurdPolyInV([" + ", ".join(str(c) for c in self.coeffs) + "])"


def _as_inv(x) -> SurdPolyInV:
    if isinstance(x, SurdPolyInV):
        return x
    return SurdPolyInV([_as_surd(x)])


def poly_in_U(p: IntPoly2) -> SurdPolyInV:
    """View ``p`` as a polynomial in ``U`` whose coefficients lie in Z[d]."""
    cols: dict[int, dict[Exp, int]] = {}
    for (i, j), c in p.terms.items():
        cols.setdefault(j, {})[(i, 0)] = c
    return SurdPolyInV([SurdPoly(IntPoly2(cols.get(j, {}))) for j in range(p.deg_U() + 1)])
