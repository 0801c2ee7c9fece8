"""Exact arithmetic substrate: rationals, polynomials in t, dense matrices.

Every quantity feeding the perturbation recursion is either an
arbitrary-precision rational (``fractions.Fraction``) or a dense univariate
polynomial in the dimensionless coupling t with rational coefficients
(:class:`TPoly`).  Matrices are square and dense with :class:`TPoly`
entries, so integer and rational matrices are the degree-0 special case.

No floating point enters these types: constructors reject ``float``
outright, which is what makes the no-rounding-error guarantee checkable
rather than aspirational.

Serialization: a rational is the string ``"num/den"`` (just ``"num"`` when
the denominator is 1, i.e. exactly ``str(Fraction)``); a polynomial is the
ordered list of such strings, index = power of t.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]


def as_rational(value: Scalar) -> Fraction:
    """Coerce an int or Fraction to Fraction, rejecting floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(
        f"exact arithmetic needs int or Fraction, got {type(value).__name__}"
    )


def rational_to_str(value: Scalar) -> str:
    return str(as_rational(value))


def rational_from_str(text: str) -> Fraction:
    return Fraction(text.strip())


class TPoly:
    """Dense polynomial in the coupling t over the rationals.

    Coefficients are stored lowest power first with trailing zeros
    stripped; the zero polynomial stores an empty tuple.  Instances are
    immutable and hashable.
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TPoly is immutable")

    @classmethod
    def zero(cls) -> "TPoly":
        return cls()

    @classmethod
    def one(cls) -> "TPoly":
        return cls((1,))

    @classmethod
    def t(cls) -> "TPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, value: Scalar) -> "TPoly":
        return cls((value,))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, TPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == TPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "TPoly":
        other = _as_tpoly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return TPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return TPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "TPoly":
        return self + (-_as_tpoly(other))

    def __rsub__(self, other) -> "TPoly":
        return _as_tpoly(other) + (-self)

    def __mul__(self, other) -> "TPoly":
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return TPoly(tuple(c * a for a in self.coeffs))
        if not isinstance(other, TPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return TPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return TPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "TPoly":
        c = as_rational(scalar)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero scalar")
        return self * Fraction(c.denominator, c.numerator)

    def __pow__(self, exponent: int) -> "TPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = TPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, point: Scalar) -> Fraction:
        """Exact value at a rational point (Horner)."""
        x = as_rational(point)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_float(self, point: float) -> float:
        """Floating-point value; the only inexact operation on this type."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * point + float(c)
        return acc

    def derivative(self) -> "TPoly":
        return TPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "TPoly":
        return cls(tuple(Fraction(s) for s in items))

    def __repr__(self) -> str:
        return f"TPoly({self.coeffs!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{c}*{var}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_tpoly(value) -> TPoly:
    if isinstance(value, TPoly):
        return value
    return TPoly.constant(value)


class ExactMatrix:
    """Dense square matrix with :class:`TPoly` entries.

    Supports exact addition, subtraction, matrix product (``@``) and
    scaling by rationals or polynomials.  Instances are immutable.
    """

    __slots__ = ("n", "rows")

    n: int
    rows: tuple[tuple[TPoly, ...], ...]

    def __init__(self, rows: Iterable[Iterable]):
        packed = tuple(tuple(_as_tpoly(e) for e in row) for row in rows)
        n = len(packed)
        if n == 0 or any(len(row) != n for row in packed):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", packed)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        z = TPoly.zero()
        return cls([[z] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        z = TPoly.zero()
        rows = [[z] * n for _ in range(n)]
        for i, v in enumerate(values):
            rows[i][i] = _as_tpoly(v)
        return cls(rows)

    def __getitem__(self, index: tuple[int, int]) -> TPoly:
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def _require_same_size(self, other: "ExactMatrix"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_size(other)
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_size(other)
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-e for e in row] for row in self.rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_size(other)
        n = self.n
        cols = tuple(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = TPoly.zero()
                for a, b in zip(row, col):
                    if a.is_zero or b.is_zero:
                        continue
                    acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return ExactMatrix(out)

    def __mul__(self, scalar) -> "ExactMatrix":
        factor = _as_tpoly(scalar)
        return ExactMatrix([[e * factor for e in row] for row in self.rows])

    __rmul__ = __mul__

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.rows)))

    def diagonal_entries(self) -> tuple[TPoly, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    def max_degree(self) -> int:
        return max(e.degree for row in self.rows for e in row)

    def to_rational_strings(self) -> list[list[str]]:
        """Serialize a degree-0 matrix as "num/den" strings."""
        if self.max_degree() > 0:
            raise ValueError("matrix entries depend on t; not a scalar matrix")
        return [[str(e.coefficient(0)) for e in row] for row in self.rows]

    def to_poly_strings(self) -> list[list[list[str]]]:
        return [[e.to_strings() for e in row] for row in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(str(e) for e in row) for row in self.rows
        )
        return f"ExactMatrix[{body}]"
