"""Polynomial and truncated-Taylor (jet) arithmetic over exact scalars.

Three representations cover everything downstream:

* :class:`MultiPoly` -- sparse polynomials in k variables over Q, stored as a
  map from exponent tuples to nonzero Fraction coefficients.
* :class:`UniPoly` -- dense univariate polynomials, lowest-degree coefficient
  first, over any exact scalar type (Fraction or QuadExtElem).  The same
  division and evaluation code therefore serves Q and its quadratic
  extensions.
* :class:`MultiJet` -- a function truncated at a point: the coefficients of
  (x - c)^alpha for |alpha| <= m, i.e. D^alpha f(c) / alpha!.  Storing the
  scaled derivatives makes jet multiplication and division convolutions.

Everything is exact; floats are rejected at construction time.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterator, Mapping, Sequence

from .errors import PoleAtNodeError
from .exactnum import QuadExtElem, RationalLike, Scalar, as_rational

MultiIndex = tuple[int, ...]


# ---------------------------------------------------------------------------
# multi-index helpers
# ---------------------------------------------------------------------------

def mi_total(alpha: MultiIndex) -> int:
    return sum(alpha)

def mi_factorial(alpha: MultiIndex) -> int:
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out

def mi_leq(beta: MultiIndex, alpha: MultiIndex) -> bool:
    """Componentwise partial order beta <= alpha."""
    return all(b <= a for b, a in zip(beta, alpha))

def mi_sub(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a - b for a, b in zip(alpha, beta))

def grlex_key(alpha: MultiIndex) -> tuple[int, MultiIndex]:
    return (sum(alpha), alpha)

def iter_multi_indices(k: int, max_total: int) -> Iterator[MultiIndex]:
    """All alpha with |alpha| <= max_total, in graded-lex ascending order."""
    for total in range(max_total + 1):
        yield from _compositions(total, k)

def _compositions(total: int, k: int) -> Iterator[MultiIndex]:
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def _coerce_scalar(value) -> Scalar:
    if isinstance(value, QuadExtElem):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    return Fraction(value)


def default_var_names(k: int) -> tuple[str, ...]:
    """x, y, z for k <= 3, otherwise x1..xk (the shared grammar's convention)."""
    if k <= 3:
        return ("x", "y", "z")[:k]
    return tuple(f"x{i + 1}" for i in range(k))


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over Q
# ---------------------------------------------------------------------------

class MultiPoly:
    """Sparse polynomial in ``num_vars`` variables over Q.

    Terms map exponent tuples to nonzero coefficients; the zero polynomial has
    an empty map.  Instances are immutable by convention: no method mutates
    ``self`` and the constructor copies its input.
    """

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars: int, terms: Mapping[MultiIndex, RationalLike] | None = None):
        if num_vars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[MultiIndex, Fraction] = {}
        for alpha, coeff in (terms or {}).items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != num_vars:
                raise ValueError(f"exponent {alpha} has wrong length for {num_vars} variables")
            if any(e < 0 for e in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            if isinstance(coeff, float):
                raise TypeError("floating-point coefficients are not supported")
            c = Fraction(coeff)
            if c:
                clean[alpha] = c
        self.num_vars = num_vars
        self._terms = clean

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> MultiPoly:
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value: RationalLike) -> MultiPoly:
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> MultiPoly:
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range for {num_vars} variables")
        exp = [0] * num_vars
        exp[index] = 1
        return cls(num_vars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, num_vars: int, alpha: MultiIndex, coeff: RationalLike = 1) -> MultiPoly:
        return cls(num_vars, {tuple(alpha): coeff})

    # -- inspection -------------------------------------------------------------

    @property
    def terms(self) -> dict[MultiIndex, Fraction]:
        return dict(self._terms)

    def coefficient(self, alpha: MultiIndex) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int:
        """Max |alpha| over stored terms; -1 for the zero polynomial."""
        return max((sum(a) for a in self._terms), default=-1)

    # -- arithmetic ---------------------------------------------------------------

    def _require_same_vars(self, other: MultiPoly):
        if self.num_vars != other.num_vars:
            raise ValueError("polynomials live in different variable counts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.num_vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._require_same_vars(other)
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            out[alpha] = out.get(alpha, Fraction(0)) + c
        return MultiPoly(self.num_vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MultiPoly(self.num_vars, {a: -c for a, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return MultiPoly(self.num_vars, {a: v * c for a, v in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._require_same_vars(other)
        out: dict[MultiIndex, Fraction] = {}
        for a1, c1 in self._terms.items():
            for a2, c2 in other._terms.items():
                key = tuple(x + y for x, y in zip(a1, a2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MultiPoly(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = MultiPoly.constant(self.num_vars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __call__(self, point: Sequence[RationalLike]) -> Fraction:
        values = [as_rational(v) for v in point]
        if len(values) != self.num_vars:
            raise ValueError("evaluation point has wrong dimension")
        total = Fraction(0)
        for alpha, coeff in self._terms.items():
            term = coeff
            for e, v in zip(alpha, values):
                if e:
                    term *= v ** e
            total += term
        return total

    def derivative(self, alpha: MultiIndex) -> MultiPoly:
        """The exact partial derivative D^alpha."""
        alpha = tuple(int(e) for e in alpha)
        if len(alpha) != self.num_vars:
            raise ValueError("derivative multi-index has wrong length")
        out: dict[MultiIndex, Fraction] = {}
        for beta, coeff in self._terms.items():
            if not mi_leq(alpha, beta):
                continue
            c = coeff
            for b, a in zip(beta, alpha):
                c *= math.perm(b, a)
            out[mi_sub(beta, alpha)] = out.get(mi_sub(beta, alpha), Fraction(0)) + c
        return MultiPoly(self.num_vars, out)

    def as_unipoly(self) -> UniPoly:
        if self.num_vars != 1:
            raise ValueError("only single-variable polynomials convert to UniPoly")
        coeffs = [Fraction(0)] * (self.total_degree + 1)
        for (e,), c in self._terms.items():
            coeffs[e] = c
        return UniPoly(coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __str__(self) -> str:
        return format_multipoly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_vars}, {self._terms!r})"


def format_multipoly(p: MultiPoly, names: Sequence[str] | None = None) -> str:
    """Canonical text form: terms in graded-lex descending order."""
    names = tuple(names) if names is not None else default_var_names(p.num_vars)
    if len(names) != p.num_vars:
        raise ValueError("wrong number of variable names")
    if p.is_zero:
        return "0"
    pieces: list[str] = []
    for alpha in sorted(p._terms, key=grlex_key, reverse=True):
        coeff = p._terms[alpha]
        mono = "*".join(
            f"{names[i]}^{e}" if e > 1 else names[i]
            for i, e in enumerate(alpha) if e > 0
        )
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# dense univariate polynomials over an exact scalar field
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial, lowest-degree coefficient first.

    Coefficients may be Fractions or QuadExtElem values from one extension;
    the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cleaned = [_coerce_scalar(c) for c in coeffs]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        self.coeffs = tuple(cleaned)

    @classmethod
    def zero(cls) -> UniPoly:
        return cls()

    @classmethod
    def one(cls) -> UniPoly:
        return cls((1,))

    @classmethod
    def constant(cls, value) -> UniPoly:
        return cls((value,))

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> UniPoly:
        return cls((0,) * degree + (coeff,))

    @classmethod
    def from_roots(cls, roots: Sequence) -> UniPoly:
        """The monic polynomial with the given roots (with repetition)."""
        result = cls.one()
        for r in roots:
            result = result * cls((-_coerce_scalar(r), 1))
        return result

    # -- inspection -------------------------------------------------------------

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        other = _as_unipoly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coefficient(i) + other.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_unipoly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coefficient(i) - other.coefficient(i) for i in range(n)])

    def __rsub__(self, other):
        other = _as_unipoly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExtElem)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = UniPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        """Exact polynomial division: self = quotient * other + remainder."""
        if not isinstance(other, UniPoly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by the zero polynomial")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(0, len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c / lead
            quot[i - dd] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - dd + j] = rem[i - dd + j] - f * oc
        return UniPoly(quot), UniPoly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: UniPoly) -> UniPoly:
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("polynomial division is not exact")
        return q

    def __call__(self, x) -> Scalar:
        x = _coerce_scalar(x)
        acc: Scalar = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shifted(self, a) -> UniPoly:
        """Coefficients of p(a + t) as a polynomial in t (Taylor shift)."""
        a = _coerce_scalar(a)
        acc = UniPoly.zero()
        shift = UniPoly((a, 1))
        for c in reversed(self.coeffs):
            acc = acc * shift + UniPoly.constant(c)
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QuadExtElem)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self) -> str:
        return format_unipoly(self)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"


def _as_unipoly(value) -> UniPoly | None:
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (int, Fraction, QuadExtElem)):
        return UniPoly.constant(value)
    return None


def format_unipoly(p: UniPoly, name: str = "x") -> str:
    """Text form with powers descending; extension coefficients are parenthesized."""
    if p.is_zero:
        return "0"
    pieces: list[str] = []
    for e in range(p.degree, -1, -1):
        c = p.coefficient(e)
        if c == 0:
            continue
        mono = f"{name}^{e}" if e > 1 else (name if e == 1 else "")
        if isinstance(c, QuadExtElem) and not c.is_rational:
            body = f"({c})*{mono}" if mono else f"({c})"
            pieces.append(f"+ {body}" if pieces else body)
            continue
        c = c.rational() if isinstance(c, QuadExtElem) else c
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# jets: truncated Taylor expansions at a point
# ---------------------------------------------------------------------------

class MultiJet:
    """Scaled derivatives of a function at a point, up to a total order.

    The coefficient at alpha is D^alpha f(center) / alpha!, i.e. the
    coefficient of (x - center)^alpha in the Taylor expansion.  Zero
    coefficients are stored implicitly.
    """

    __slots__ = ("num_vars", "center", "order", "_coeffs")

    def __init__(self, num_vars: int, center: Sequence[RationalLike], order: int,
                 coeffs: Mapping[MultiIndex, RationalLike] | None = None):
        if order < 0:
            raise ValueError("jet order must be non-negative")
        center = tuple(as_rational(c) for c in center)
        if len(center) != num_vars:
            raise ValueError("jet center has wrong dimension")
        clean: dict[MultiIndex, Fraction] = {}
        for alpha, coeff in (coeffs or {}).items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != num_vars or any(e < 0 for e in alpha):
                raise ValueError(f"bad multi-index {alpha}")
            if sum(alpha) > order:
                raise ValueError(f"multi-index {alpha} exceeds jet order {order}")
            c = Fraction(coeff)
            if c:
                clean[alpha] = c
        self.num_vars = num_vars
        self.center = center
        self.order = order
        self._coeffs = clean

    @property
    def coefficients(self) -> dict[MultiIndex, Fraction]:
        return dict(self._coeffs)

    def coefficient(self, alpha: MultiIndex) -> Fraction:
        alpha = tuple(alpha)
        if sum(alpha) > self.order:
            raise ValueError(f"multi-index {alpha} exceeds jet order {self.order}")
        return self._coeffs.get(alpha, Fraction(0))

    def raw_derivative(self, alpha: MultiIndex) -> Fraction:
        """D^alpha f(center), i.e. the coefficient rescaled by alpha!."""
        return self.coefficient(alpha) * mi_factorial(tuple(alpha))

    def _require_compatible(self, other: MultiJet):
        if (self.num_vars, self.center, self.order) != (other.num_vars, other.center, other.order):
            raise ValueError("jets have different centers or orders")

    def __add__(self, other: MultiJet) -> MultiJet:
        self._require_compatible(other)
        out = dict(self._coeffs)
        for a, c in other._coeffs.items():
            out[a] = out.get(a, Fraction(0)) + c
        return MultiJet(self.num_vars, self.center, self.order, out)

    def __sub__(self, other: MultiJet) -> MultiJet:
        self._require_compatible(other)
        out = dict(self._coeffs)
        for a, c in other._coeffs.items():
            out[a] = out.get(a, Fraction(0)) - c
        return MultiJet(self.num_vars, self.center, self.order, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiJet):
            return NotImplemented
        return (self.num_vars, self.center, self.order, self._coeffs) == \
               (other.num_vars, other.center, other.order, other._coeffs)

    def __repr__(self) -> str:
        return f"MultiJet(center={self.center}, order={self.order}, coeffs={self._coeffs!r})"


def taylor_jet(p: MultiPoly, center: Sequence[RationalLike], order: int) -> MultiJet:
    """The jet of a polynomial at a point: D^alpha p(center)/alpha! for |alpha| <= order.

    Computed by substituting x = center + y and collecting the coefficients of
    y^alpha, which is exact and needs no differentiation.
    """
    center = tuple(as_rational(c) for c in center)
    k = p.num_vars
    if len(center) != k:
        raise ValueError("center has wrong dimension")
    out: dict[MultiIndex, Fraction] = {}
    for beta, coeff in p._terms.items():
        # expand prod_i (c_i + y_i)^{beta_i} and keep |gamma| <= order
        for gamma in cartesian(*(range(min(b, order) + 1) for b in beta)):
            if sum(gamma) > order:
                continue
            w = coeff
            for c_i, b, g in zip(center, beta, gamma):
                w *= math.comb(b, g)
                if b > g:
                    w *= c_i ** (b - g)
            if w:
                out[gamma] = out.get(gamma, Fraction(0)) + w
    return MultiJet(k, center, order, out)


def jet_to_poly(jet: MultiJet) -> MultiPoly:
    """Expand sum_alpha coeff_alpha * (x - center)^alpha into a polynomial."""
    k = jet.num_vars
    out: dict[MultiIndex, Fraction] = {}
    for alpha, coeff in jet._coeffs.items():
        for gamma in cartesian(*(range(a + 1) for a in alpha)):
            w = coeff
            for c_i, a, g in zip(jet.center, alpha, gamma):
                w *= math.comb(a, g)
                if a > g:
                    w *= (-c_i) ** (a - g)
            if w:
                out[gamma] = out.get(gamma, Fraction(0)) + w
    return MultiPoly(k, out)


def jet_multiply(x: MultiJet, y: MultiJet) -> MultiJet:
    """Product jet, truncated at the common order."""
    x._require_compatible(y)
    out: dict[MultiIndex, Fraction] = {}
    for a1, c1 in x._coeffs.items():
        for a2, c2 in y._coeffs.items():
            key = tuple(i + j for i, j in zip(a1, a2))
            if sum(key) > x.order:
                continue
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return MultiJet(x.num_vars, x.center, x.order, out)


def jet_divide(num: MultiJet, den: MultiJet) -> MultiJet:
    """Truncated power-series division: the jet g with g * den == num up to the order.

    Solved degree layer by degree layer from the constant term of the divisor,
    the standard well-founded recurrence for series inversion.
    """
    num._require_compatible(den)
    k = num.num_vars
    d0 = den.coefficient((0,) * k)
    if d0 == 0:
        raise ZeroDivisionError("jet division needs a divisor with nonzero constant term")
    g: dict[MultiIndex, Fraction] = {}
    for alpha in iter_multi_indices(k, num.order):
        s = num.coefficient(alpha)
        for beta in cartesian(*(range(a + 1) for a in alpha)):
            if beta == alpha:
                continue
            gb = g.get(beta)
            if gb:
                s -= den.coefficient(mi_sub(alpha, beta)) * gb
        g[alpha] = s / d0
    return MultiJet(k, num.center, num.order, g)


def rational_taylor_coeffs(p: UniPoly, psi: UniPoly, a, order: int) -> list[Scalar]:
    """The first ``order + 1`` Taylor coefficients of p/psi at the point a.

    Equivalently (1/j!) (p/psi)^(j)(a) for j = 0..order, computed by shifting
    both polynomials to the point and dividing as truncated power series.
    Requires psi(a) != 0.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    ps = p.shifted(a)
    qs = psi.shifted(a)
    q0 = qs.coefficient(0)
    if q0 == 0:
        raise PoleAtNodeError(f"denominator vanishes at the expansion point {a}")
    out: list[Scalar] = []
    for j in range(order + 1):
        s = ps.coefficient(j)
        for i in range(1, j + 1):
            qi = qs.coefficient(i)
            if qi != 0:
                s = s - qi * out[j - i]
        out.append(s / q0)
    return out
