"""Scalars, finite function spaces, measures and verdicts.

Real mode works over ``fractions.Fraction``; complex mode over Gaussian
rationals.  Everything here is immutable and exact.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Any, Mapping, Sequence, Union

from . import linalg

SCHEMA_VERSION = "choquet-lab/1"
TOOL_VERSION = "0.1.0"


class ChoquetLabError(Exception):
    """Base class for every error raised by the package."""


class DuplicatePoints(ChoquetLabError):
    pass


class DependentBasis(ChoquetLabError):
    pass


class NonSeparating(ChoquetLabError):
    def __init__(self, p, q):
        super().__init__(f"points {p!r} and {q!r} have identical rows")
        self.pair = (p, q)


class MalformedScalar(ChoquetLabError):
    pass


class DimensionMismatch(ChoquetLabError):
    pass


class InternalInconsistency(ChoquetLabError):
    pass


# ---------------------------------------------------------------- scalars

class Gaussian:
    """Exact complex number a + bi with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian is immutable")

    @staticmethod
    def lift(x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        return Gaussian(x, 0)

    def __add__(self, o):
        if isinstance(o, Gaussian):
            return Gaussian(self.re + o.re, self.im + o.im)
        if isinstance(o, (int, Fraction)):
            return Gaussian(self.re + o, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, o):
        if isinstance(o, (Gaussian, int, Fraction)):
            return self + (-o)
        return NotImplemented

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Gaussian):
            return Gaussian(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)
        if isinstance(o, (int, Fraction)):
            return Gaussian(self.re * o, self.im * o)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return Gaussian(self.re / o, self.im / o)
        if isinstance(o, Gaussian):
            d = o.norm2()
            if d == 0:
                raise ZeroDivisionError("division by zero")
            return self * o.conjugate() / d
        return NotImplemented

    def __rtruediv__(self, o):
        return Gaussian.lift(o) / self

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, o):
        if isinstance(o, Gaussian):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


Scalar = Union[Fraction, Gaussian]


def conj(x):
    return x.conjugate() if isinstance(x, Gaussian) else x


def abs2(x) -> Fraction:
    """Squared modulus, always rational."""
    if isinstance(x, Gaussian):
        return x.norm2()
    return Fraction(x) * Fraction(x)


def real_part(x) -> Fraction:
    return x.re if isinstance(x, Gaussian) else Fraction(x)


def imag_part(x) -> Fraction:
    return x.im if isinstance(x, Gaussian) else Fraction(0)


def exact_sqrt(q: Fraction):
    """Rational square root of q, or None when it is irrational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    a, b = q.numerator, q.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, o):
        if isinstance(o, RationalInterval):
            return RationalInterval(self.lo + o.lo, self.hi + o.hi)
        o = Fraction(o)
        return RationalInterval(self.lo + o, self.hi + o)

    __radd__ = __add__

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self):
        return {"lo": str(self.lo), "hi": str(self.hi)}


def sqrt_enclosure(q: Fraction, bits: int = 48) -> RationalInterval:
    """Certified [lo, hi] around sqrt(q) with hi - lo <= 2**-bits."""
    q = Fraction(q)
    exact = exact_sqrt(q)
    if exact is not None:
        return RationalInterval(exact, exact)
    scale = 1 << bits
    # floor(sqrt(q) * scale) = isqrt(floor(q * scale^2))
    lo_int = isqrt((q.numerator * scale * scale) // q.denominator)
    return RationalInterval(Fraction(lo_int, scale), Fraction(lo_int + 1, scale))


def sqrt_lower(q: Fraction, bits: int = 48) -> Fraction:
    return sqrt_enclosure(q, bits).lo


def modulus(x, bits: int = 48):
    """|x| exactly when rational, otherwise a certified enclosure."""
    if not isinstance(x, Gaussian):
        return abs(Fraction(x))
    if x.im == 0:
        return abs(x.re)
    if x.re == 0:
        return abs(x.im)
    enc = sqrt_enclosure(x.norm2(), bits)
    return enc.lo if enc.lo == enc.hi else enc


def rational_modulus(x):
    """|x| as a Fraction, or None if irrational."""
    if not isinstance(x, Gaussian):
        return abs(Fraction(x))
    return exact_sqrt(x.norm2())


def parse_scalar(raw, field: str = "real") -> Scalar:
    """Parse "p/q" strings, ints, or {re, im} objects."""
    try:
        if isinstance(raw, Mapping):
            if set(raw) - {"re", "im"}:
                raise MalformedScalar(f"unexpected keys in {raw!r}")
            value = Gaussian(_parse_rational(raw.get("re", "0")),
                             _parse_rational(raw.get("im", "0")))
        else:
            value = _parse_rational(raw)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise MalformedScalar(f"cannot parse scalar {raw!r}") from exc
    if field == "real":
        if isinstance(value, Gaussian):
            if value.im != 0:
                raise MalformedScalar(f"non-real scalar {raw!r} in a real space")
            return value.re
        return value
    return Gaussian.lift(value)


def _parse_rational(raw) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise MalformedScalar(f"floats are not accepted: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        text = raw.strip()
        if not text or any(c in text for c in ".eE"):
            raise MalformedScalar(f"not an exact rational: {raw!r}")
        return Fraction(text)
    raise MalformedScalar(f"not a scalar: {raw!r}")


def format_scalar(x):
    if isinstance(x, Gaussian):
        return {"re": str(x.re), "im": str(x.im)}
    return str(Fraction(x))


def to_field(x, field: str):
    if field == "complex":
        return Gaussian.lift(x)
    if isinstance(x, Gaussian):
        if x.im != 0:
            raise MalformedScalar(f"non-real scalar {x} in a real space")
        return x.re
    return Fraction(x)


# ---------------------------------------------------------------- spaces

@dataclass(frozen=True)
class FiniteCompact:
    labels: tuple

    def __post_init__(self):
        seen = set()
        for p in self.labels:
            if p in seen:
                raise DuplicatePoints(f"point {p!r} listed twice")
            seen.add(p)

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class FunctionSpace:
    """Finite-dimensional separating space given by its evaluation matrix.

    Row x of ``basis`` holds the values of the m basis functions at x.
    """

    name: str
    field: str
    points: tuple
    basis: tuple
    contains_constants: bool = field(init=False, compare=False)
    constants_coeffs: tuple | None = field(init=False, compare=False, repr=False)
    _index: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.field not in ("real", "complex"):
            raise MalformedScalar(f"unknown field {self.field!r}")
        FiniteCompact(tuple(self.points))
        rows = tuple(tuple(to_field(v, self.field) for v in row) for row in self.basis)
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "basis", rows)
        n = len(rows)
        if n != len(self.points) or n == 0:
            raise DimensionMismatch("need one basis row per point")
        m = len(rows[0])
        if m == 0 or any(len(r) != m for r in rows):
            raise DimensionMismatch("basis rows have unequal lengths")
        if m > n or linalg.rank([list(r) for r in rows]) < m:
            raise DependentBasis("basis functions are linearly dependent")
        first = {}
        for label, row in zip(self.points, rows):
            if row in first:
                raise NonSeparating(first[row], label)
            first[row] = label
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})
        one = 1 if self.field == "real" else Gaussian(1)
        sol = linalg.solve([list(r) for r in rows], [to_field(one, self.field)] * n)
        object.__setattr__(self, "contains_constants", sol is not None)
        object.__setattr__(self, "constants_coeffs", tuple(sol) if sol is not None else None)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.basis[0])

    @property
    def is_complex(self) -> bool:
        return self.field == "complex"

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown point {label!r}") from None

    def row(self, label) -> tuple:
        return self.basis[self.index(label)]

    def zero(self):
        return Gaussian(0) if self.is_complex else Fraction(0)

    def one(self):
        return Gaussian(1) if self.is_complex else Fraction(1)

    def values(self, coeffs: Sequence) -> list:
        """Point values of the function with the given basis coefficients."""
        if len(coeffs) != self.m:
            raise DimensionMismatch(f"expected {self.m} coefficients, got {len(coeffs)}")
        return [linalg.dot(r, coeffs) for r in self.basis]

    def value_at(self, coeffs: Sequence, label):
        if len(coeffs) != self.m:
            raise DimensionMismatch(f"expected {self.m} coefficients, got {len(coeffs)}")
        return linalg.dot(self.row(label), coeffs)

    def coeffs_of(self, values: Sequence):
        """Basis coefficients of a point-value vector, or None if not in H."""
        return linalg.solve([list(r) for r in self.basis], list(values))

    def with_basis(self, basis, name=None) -> "FunctionSpace":
        return FunctionSpace(name or self.name, self.field, self.points, tuple(map(tuple, basis)))

    def restrict_field(self, field_name: str) -> "FunctionSpace":
        return FunctionSpace(self.name, field_name, self.points, self.basis)

    def to_document(self) -> dict:
        return {
            "name": self.name,
            "field": self.field,
            "points": list(self.points),
            "basis": [[format_scalar(v) for v in row] for row in self.basis],
        }

    def digest(self) -> dict:
        canon = json.dumps(self.to_document(), sort_keys=True, separators=(",", ":"))
        return {
            "name": self.name,
            "n": self.n,
            "m": self.m,
            "field": self.field,
            "sha256": hashlib.sha256(canon.encode()).hexdigest(),
        }


def load_space(document) -> FunctionSpace:
    """Build a FunctionSpace from a schema document (dict or JSON text)."""
    if isinstance(document, (str, bytes)):
        document = json.loads(document)
    try:
        field_name = document.get("field", "real")
        points = document["points"]
        basis = document["basis"]
    except (KeyError, AttributeError) as exc:
        raise MalformedScalar(f"malformed space document: {exc}") from exc
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise MalformedScalar("points must be a list of strings")
    FiniteCompact(tuple(points))
    rows = [[parse_scalar(v, field_name) for v in row] for row in basis]
    return FunctionSpace(document.get("name", "unnamed"), field_name, tuple(points), tuple(map(tuple, rows)))


def save_space(space: FunctionSpace) -> str:
    return json.dumps(space.to_document(), indent=2)


# ---------------------------------------------------------------- measures

@dataclass(frozen=True)
class Measure:
    """Finitely supported scalar measure keyed by point label."""

    values: Mapping[str, Any]

    def __post_init__(self):
        clean = {k: v for k, v in dict(self.values).items() if v != 0}
        object.__setattr__(self, "values", clean)

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self.values == other.values

    def __getitem__(self, label):
        return self.values.get(label, 0)

    @property
    def support(self) -> frozenset:
        return frozenset(self.values)

    def __add__(self, other: "Measure") -> "Measure":
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, 0) + v
        return Measure(out)

    def __neg__(self):
        return Measure({k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Measure":
        return Measure({k: c * v for k, v in self.values.items()})

    def restrict(self, labels) -> "Measure":
        labels = set(labels)
        return Measure({k: v for k, v in self.values.items() if k in labels})

    def vector(self, space: FunctionSpace) -> list:
        vec = [space.zero()] * space.n
        for k, v in self.values.items():
            vec[space.index(k)] = to_field(v, space.field)
        return vec

    @staticmethod
    def from_vector(space: FunctionSpace, vec) -> "Measure":
        return Measure({p: v for p, v in zip(space.points, vec)})

    @staticmethod
    def dirac(label, weight=1) -> "Measure":
        return Measure({label: Fraction(weight) if not isinstance(weight, Gaussian) else weight})

    def to_json(self) -> dict:
        return {k: format_scalar(v) for k, v in sorted(self.values.items())}

    @staticmethod
    def from_json(doc, field_name="real") -> "Measure":
        return Measure({k: parse_scalar(v, field_name) for k, v in doc.items()})


def total_variation(mu: Measure, field_name: str = "real"):
    """Sum of |mu(x)|; an enclosure only for irrational complex moduli."""
    exact = Fraction(0)
    lo = hi = Fraction(0)
    inexact = False
    for v in mu.values.values():
        m = modulus(v, bits=48)
        if isinstance(m, RationalInterval):
            inexact = True
            lo += m.lo
            hi += m.hi
        else:
            exact += m
    if not inexact:
        return exact
    return RationalInterval(exact + lo, exact + hi)


def integrate(f: Sequence, mu: Measure, space: FunctionSpace):
    """Exact sum of f(x) mu(x) for f given by basis coefficients."""
    if len(f) != space.m:
        raise DimensionMismatch(f"expected {space.m} coefficients, got {len(f)}")
    total = space.zero()
    for label, w in mu.values.items():
        total = total + linalg.dot(space.row(label), f) * w
    return total


def pushforward(mu: Measure, space: FunctionSpace) -> tuple:
    """The functional f -> integral of f against mu, as coefficients."""
    acc = [space.zero()] * space.m
    for label, w in mu.values.items():
        row = space.row(label)
        acc = [a + r * w for a, r in zip(acc, row)]
    return tuple(acc)


@dataclass(frozen=True)
class Functional:
    coeffs: tuple

    def __call__(self, f: Sequence):
        if len(f) != len(self.coeffs):
            raise DimensionMismatch("length mismatch")
        return linalg.dot(self.coeffs, f)


def evaluation_functional(space: FunctionSpace, label) -> Functional:
    return Functional(space.row(label))


# ---------------------------------------------------------------- verdicts

class Status(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @staticmethod
    def of(flag: bool) -> "Status":
        return Status.TRUE if flag else Status.FALSE


@dataclass(frozen=True)
class Verdict:
    status: Status
    method: str
    witness: Any = None
    gap: Any = None
    reason: str | None = None

    @property
    def decided(self) -> bool:
        return self.status is not Status.UNKNOWN

    def __bool__(self):
        raise TypeError("use verdict.status instead of truthiness")

    def to_json(self) -> dict:
        out = {"status": self.status.value, "method": self.method}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.gap is not None:
            out["gap"] = jsonable(self.gap)
        if self.reason:
            out["reason"] = self.reason
        return out


def jsonable(obj):
    """Convert exact values and containers into JSON-friendly data."""
    if isinstance(obj, (Fraction, Gaussian)):
        return format_scalar(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Measure):
        return obj.to_json()
    if isinstance(obj, RationalInterval):
        return obj.to_json()
    if isinstance(obj, Status):
        return obj.value
    if isinstance(obj, Verdict):
        return obj.to_json()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Mapping):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=str)
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")
