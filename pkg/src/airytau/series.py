"""Truncated formal Laurent series, the carrier of all generating functions.

``Series1`` is a sparse univariate Laurent series with an explicit reliability
order: terms with exponent >= -order are exact, everything below is unknown
(truncated), never silently zero.  ``order=None`` marks a series that is exact
everywhere (a finite Laurent polynomial, e.g. a multiplier like z**2).

``Laurent2`` is a sparse *exact* Laurent polynomial in two variables.  All
bivariate objects in this package are built from explicitly truncated inputs
whose adequacy is checked by the caller (the kernel assembly enforces its
input-order precondition), so no per-cell reliability bookkeeping is carried
here; truncation honesty is certified by cross-route equality checks instead.

Coefficient storage is sparse by exponent and zero coefficients are never
stored; equality is structural on canonical forms.  All values are immutable
after construction and every operation is pure, so unrestricted concurrent
use is safe and results do not depend on evaluation order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .errors import InvalidKeyError, WindowError
from .rational import Rat, format_rat, parse_rat


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Series1:
    """Sparse univariate Laurent series with a reliability order.

    ``coeffs`` maps exponent -> nonzero Fraction.  ``order = N`` means every
    coefficient with exponent >= -N is exact; reading below -N raises
    WindowError.  N may be negative (e.g. after multiplying by a positive
    power of the variable).
    """

    __slots__ = ("var", "coeffs", "order")

    def __init__(self, var: str, coeffs: dict[int, Rat] | None = None,
                 order: int | None = None):
        clean: dict[int, Rat] = {}
        if coeffs:
            for e, c in coeffs.items():
                if c == 0:
                    continue
                if order is not None and e < -order:
                    continue  # below the reliable window: not representable
                clean[e] = Rat(c)
        self.var = var
        self.coeffs = clean
        self.order = order

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var: str) -> Series1:
        return cls(var, {}, None)

    @classmethod
    def const(cls, var: str, value) -> Series1:
        return cls(var, {0: Rat(value)}, None)

    @classmethod
    def monomial(cls, var: str, exp: int, value=1) -> Series1:
        return cls(var, {exp: Rat(value)}, None)

    # -- inspection --------------------------------------------------------

    @property
    def top(self) -> int | None:
        """Most positive exponent present, or None for the zero series."""
        return max(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, exp: int) -> Rat:
        """Exact coefficient of var**exp; raises below the reliable window."""
        if self.order is not None and exp < -self.order:
            raise WindowError(
                f"coefficient of {self.var}^{exp} outside reliable window "
                f"(order {self.order})")
        return self.coeffs.get(exp, Rat(0))

    def get(self, exp: int) -> Rat:
        """Unchecked access (0 for anything not stored)."""
        return self.coeffs.get(exp, Rat(0))

    def terms(self) -> list[tuple[int, Rat]]:
        """(exponent, coefficient) pairs, exponents descending."""
        return sorted(self.coeffs.items(), reverse=True)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Series1) and self.var == other.var
                and self.coeffs == other.coeffs and self.order == other.order)

    def __hash__(self):
        return hash((self.var, frozenset(self.coeffs.items()), self.order))

    def __repr__(self) -> str:
        body = " + ".join(f"({format_rat(c)}){self.var}^{e}"
                          for e, c in self.terms()) or "0"
        tail = "" if self.order is None else f"  [exact >= {self.var}^{-self.order}]"
        return body + tail

    def agrees_with(self, other: Series1, through: int | None = None) -> bool:
        """True iff both series match on the overlap of reliable windows.

        ``through=K`` additionally demands that the shared window reach down
        to exponent -K.
        """
        n = _min_order(self.order, other.order)
        if through is not None:
            if n is not None and n < through:
                return False
            n = through
        lo = None if n is None else -n
        for e in set(self.coeffs) | set(other.coeffs):
            if lo is not None and e < lo:
                continue
            if self.coeffs.get(e, Rat(0)) != other.coeffs.get(e, Rat(0)):
                return False
        return True

    # -- arithmetic --------------------------------------------------------

    def _check_var(self, other: Series1) -> None:
        if self.var != other.var:
            raise InvalidKeyError(
                f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other: Series1) -> Series1:
        self._check_var(other)
        n = _min_order(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Rat(0)) + c
        return Series1(self.var, out, n)

    def __sub__(self, other: Series1) -> Series1:
        return self + (-other)

    def __neg__(self) -> Series1:
        return Series1(self.var, {e: -c for e, c in self.coeffs.items()},
                       self.order)

    def scale(self, factor) -> Series1:
        f = Rat(factor)
        if f == 0:
            return Series1(self.var, {}, self.order)
        return Series1(self.var, {e: c * f for e, c in self.coeffs.items()},
                       self.order)

    def __mul__(self, other: Series1) -> Series1:
        self._check_var(other)
        if self.is_zero() or other.is_zero():
            # zero is exact everywhere; the degenerate sentinel of the design
            return Series1(self.var, {}, _zero_mul_order(self, other))
        n = _mul_order(self.order, self.top, other.order, other.top)
        lo = None if n is None else -n
        out: dict[int, Rat] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if lo is not None and e < lo:
                    continue
                out[e] = out.get(e, Rat(0)) + c1 * c2
        return Series1(self.var, out, n)

    def shift(self, k: int) -> Series1:
        """Multiply by var**k."""
        n = None if self.order is None else self.order - k
        return Series1(self.var, {e + k: c for e, c in self.coeffs.items()}, n)

    def derivative(self) -> Series1:
        """Term-wise d/dvar; the reliable window deepens by one exponent."""
        n = None if self.order is None else self.order + 1
        return Series1(self.var,
                       {e - 1: c * e for e, c in self.coeffs.items() if e != 0},
                       n)

    def negate_var(self) -> Series1:
        """Substitute var -> -var (an involution)."""
        return Series1(self.var,
                       {e: (c if e % 2 == 0 else -c)
                        for e, c in self.coeffs.items()},
                       self.order)

    def truncated(self, order: int) -> Series1:
        """Restrict the reliable window to exponents >= -order."""
        n = order if self.order is None else min(self.order, order)
        return Series1(self.var, self.coeffs, n)

    def rename(self, var: str) -> Series1:
        return Series1(var, self.coeffs, self.order)

    # -- dump format -------------------------------------------------------

    def dump(self) -> str:
        """One term per line ``exponent<TAB>p/q``, exponents descending,
        preceded by a ``# var=<tag> reliable=<N>`` header."""
        rel = "inf" if self.order is None else str(self.order)
        lines = [f"# var={self.var} reliable={rel}"]
        for e, c in self.terms():
            lines.append(f"{e}\t{format_rat(c)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> Series1:
        var, order = "z", None
        coeffs: dict[int, Rat] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for field in line[1:].split():
                    if field.startswith("var="):
                        var = field[4:]
                    elif field.startswith("reliable="):
                        val = field[9:]
                        order = None if val == "inf" else int(val)
                continue
            exp_text, _, coeff_text = line.partition("\t")
            coeffs[int(exp_text)] = parse_rat(coeff_text)
        return cls(var, coeffs, order)


def _mul_order(na: int | None, ta: int | None, nb: int | None,
               tb: int | None) -> int | None:
    """Reliable order of a product.

    Unknown terms of one factor (below its window) land against the top
    exponent of the other, so the product is exact for exponents
    >= -min(N_a - top_b, N_b - top_a).
    """
    ca = None if (na is None or tb is None) else na - tb
    cb = None if (nb is None or ta is None) else nb - ta
    return _min_order(ca, cb)


def _zero_mul_order(a: Series1, b: Series1) -> int | None:
    # 0 * (possibly truncated) stays unknown below the partner's window only
    # if the zero itself is truncated; an exact zero annihilates everything.
    if a.is_zero() and a.order is None:
        return None
    if b.is_zero() and b.order is None:
        return None
    return _min_order(a.order, b.order)


class Laurent2:
    """Sparse exact Laurent polynomial in an ordered variable pair."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, vars: tuple[str, str],
                 coeffs: dict[tuple[int, int], Rat] | None = None):
        self.vars = vars
        clean: dict[tuple[int, int], Rat] = {}
        if coeffs:
            for key, c in coeffs.items():
                if c != 0:
                    clean[key] = Rat(c)
        self.coeffs = clean

    @classmethod
    def zero(cls, vars: tuple[str, str]) -> Laurent2:
        return cls(vars, {})

    @classmethod
    def const(cls, vars: tuple[str, str], value) -> Laurent2:
        return cls(vars, {(0, 0): Rat(value)})

    @classmethod
    def monomial(cls, vars: tuple[str, str], ex: int, ey: int,
                 value=1) -> Laurent2:
        return cls(vars, {(ex, ey): Rat(value)})

    @classmethod
    def outer(cls, fx: Series1, fy: Series1,
              vars: tuple[str, str] | None = None) -> Laurent2:
        """Product f(x) * g(y) of two univariate series."""
        pair = vars or (fx.var, fy.var)
        out: dict[tuple[int, int], Rat] = {}
        for e1, c1 in fx.coeffs.items():
            for e2, c2 in fy.coeffs.items():
                out[(e1, e2)] = c1 * c2
        return cls(pair, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, ex: int, ey: int) -> Rat:
        return self.coeffs.get((ex, ey), Rat(0))

    def _check(self, other: Laurent2) -> None:
        if self.vars != other.vars:
            raise InvalidKeyError(
                f"variable mismatch: {self.vars} vs {other.vars}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Laurent2) and self.vars == other.vars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.vars, frozenset(self.coeffs.items())))

    def __add__(self, other: Laurent2) -> Laurent2:
        self._check(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, Rat(0)) + c
        return Laurent2(self.vars, out)

    def __sub__(self, other: Laurent2) -> Laurent2:
        return self + other.scale(-1)

    def __neg__(self) -> Laurent2:
        return self.scale(-1)

    def scale(self, factor) -> Laurent2:
        f = Rat(factor)
        if f == 0:
            return Laurent2(self.vars, {})
        return Laurent2(self.vars,
                        {k: c * f for k, c in self.coeffs.items()})

    def mul(self, other: Laurent2, xmin: int | None = None,
            ymin: int | None = None) -> Laurent2:
        """Product, optionally discarding cells below (xmin, ymin)."""
        self._check(other)
        out: dict[tuple[int, int], Rat] = {}
        for (x1, y1), c1 in self.coeffs.items():
            for (x2, y2), c2 in other.coeffs.items():
                ex, ey = x1 + x2, y1 + y2
                if xmin is not None and ex < xmin:
                    continue
                if ymin is not None and ey < ymin:
                    continue
                key = (ex, ey)
                out[key] = out.get(key, Rat(0)) + c1 * c2
        return Laurent2(self.vars, out)

    def __mul__(self, other):
        if isinstance(other, Laurent2):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def shift(self, dx: int, dy: int) -> Laurent2:
        return Laurent2(self.vars,
                        {(x + dx, y + dy): c
                         for (x, y), c in self.coeffs.items()})

    def swap(self) -> Laurent2:
        """Interchange the two variables."""
        return Laurent2((self.vars[1], self.vars[0]),
                        {(y, x): c for (x, y), c in self.coeffs.items()})

    def restrict(self, xmin=None, xmax=None, ymin=None, ymax=None) -> Laurent2:
        def keep(key: tuple[int, int]) -> bool:
            x, y = key
            return ((xmin is None or x >= xmin) and (xmax is None or x <= xmax)
                    and (ymin is None or y >= ymin)
                    and (ymax is None or y <= ymax))

        return Laurent2(self.vars,
                        {k: c for k, c in self.coeffs.items() if keep(k)})

    def cells(self) -> Iterator[tuple[int, int, Rat]]:
        for (x, y), c in sorted(self.coeffs.items()):
            yield x, y, c

    def __repr__(self) -> str:
        u, v = self.vars
        body = " + ".join(f"({format_rat(c)}){u}^{x}{v}^{y}"
                          for x, y, c in self.cells())
        return body or "0"


def geometric_inv_diff(vars: tuple[str, str], kmax: int) -> Laurent2:
    """Expansion of 1/(x - y) in the region |x| > |y|, truncated at y**kmax."""
    return Laurent2(vars, {(-1 - k, k): Rat(1) for k in range(kmax + 1)})


def geometric_inv_diff_squares(vars: tuple[str, str], kmax: int) -> Laurent2:
    """Expansion of 1/(x**2 - y**2) in |x| > |y|, truncated at y**(2*kmax)."""
    return Laurent2(vars, {(-2 - 2 * k, 2 * k): Rat(1) for k in range(kmax + 1)})


def geometric_inv_diff_squares_sq(vars: tuple[str, str],
                                  kmax: int) -> Laurent2:
    """Expansion of 1/(x**2 - y**2)**2 in |x| > |y|."""
    return Laurent2(vars,
                    {(-4 - 2 * k, 2 * k): Rat(k + 1) for k in range(kmax + 1)})
