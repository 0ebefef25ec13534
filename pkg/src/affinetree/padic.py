"""Bounded-precision arithmetic in the field of p-adic numbers.

A value is stored as ``unit * p**valuation`` where ``unit`` is an integer
coprime to ``p`` known modulo ``p**precision``.  Every operation tracks how
many significant base-p digits survive; cancellation raises the valuation
and shrinks the precision instead of fabricating digits.  A value that is
congruent to zero modulo everything we know is kept in a distinct
"zero to precision" state rather than being promoted to a true zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    MalformedSyntax,
    PrecisionExhausted,
    PrimeMismatch,
    ZeroDenominator,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    # deterministic Miller-Rabin for 64-bit range
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def int_valuation(n: int, p: int) -> int:
    """Largest k with p**k dividing n.  Undefined for n == 0."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PrecisionBudget:
    """Working precision (digits) and the floor below which results error."""

    working: int = 48
    min_acceptable: int = 6

    def __post_init__(self):
        if not (1 <= self.min_acceptable <= self.working):
            raise ValueError("need 1 <= min_acceptable <= working")


DEFAULT_BUDGET = PrecisionBudget()


def fraction_truncate(value, p: int, exponent: int) -> Fraction:
    """Canonical representative of a rational modulo p**exponent.

    Keeps the base-p digits at exponents below ``exponent``; the result is
    a nonnegative fraction whose denominator is a power of p.
    """
    value = Fraction(value)
    if value == 0:
        return Fraction(0)
    den = value.denominator
    dv = int_valuation(den, p) if den % p == 0 else 0
    modexp = exponent + dv
    if modexp <= 0:
        return Fraction(0)
    den_unit = den // p ** dv
    mod = p ** modexp
    kept = value.numerator * pow(den_unit, -1, mod) % mod
    return Fraction(kept, p ** dv)


class PAdic:
    """An element of Q_p known to finitely many significant digits.

    Immutable.  ``zero_bound`` is set (and ``unit``/``valuation`` are not)
    when the value is indistinguishable from zero: it is then only known
    to be divisible by ``p**zero_bound`` (``None`` means exactly zero).

    ``exact`` carries the underlying rational when the value came from
    exact inputs through exact operations; such values never lose digits.
    """

    __slots__ = ("prime", "valuation", "unit", "precision", "zero_bound",
                 "budget", "exact")

    def __init__(self, prime, valuation, unit, precision, *, zero_bound=False,
                 budget=DEFAULT_BUDGET, exact=None, _checked=False):
        if not _checked:
            if not is_prime(prime):
                raise ValueError(f"{prime} is not prime")
            if zero_bound is False:
                if precision < 1:
                    raise PrecisionExhausted("no significant digits left")
                unit %= prime ** precision
                if unit % prime == 0:
                    raise ValueError("unit must be coprime to p")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "zero_bound", zero_bound)
        object.__setattr__(self, "budget", budget)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("PAdic values are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, prime, bound=None, budget=DEFAULT_BUDGET):
        """Zero, or 'divisible by p**bound' when bound is an int."""
        exact = Fraction(0) if bound is None else None
        return cls(prime, None, None, 0, zero_bound=bound, budget=budget,
                   exact=exact, _checked=True)

    @classmethod
    def from_int(cls, n, prime, budget=DEFAULT_BUDGET):
        return cls.from_rational(n, 1, prime, budget)

    @classmethod
    def from_rational(cls, num, den, prime, budget=DEFAULT_BUDGET):
        """Exact rational num/den embedded in Q_p at working precision."""
        if den == 0:
            raise ZeroDenominator("denominator is zero")
        if not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        if num == 0:
            return cls.zero(prime, None, budget)
        sign = -1 if (num < 0) != (den < 0) else 1
        num, den = abs(num), abs(den)
        vn = int_valuation(num, prime)
        vd = int_valuation(den, prime)
        val = vn - vd
        mod = prime ** budget.working
        un = num // prime ** vn
        ud = den // prime ** vd
        unit = sign * un * pow(ud, -1, mod) % mod
        return cls(prime, val, unit, budget.working, budget=budget,
                   exact=Fraction(sign * num, den), _checked=False)

    @classmethod
    def from_fraction(cls, frac, prime, budget=DEFAULT_BUDGET):
        f = Fraction(frac)
        return cls.from_rational(f.numerator, f.denominator, prime, budget)

    # -- predicates and views ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.zero_bound is not False

    @property
    def is_exact_zero(self) -> bool:
        return self.zero_bound is None and self.is_zero

    @property
    def known_exponent(self):
        """The value is determined modulo p**known_exponent (None = exact)."""
        if self.is_zero:
            return self.zero_bound
        return self.valuation + self.precision

    def norm(self) -> Fraction:
        """p-adic absolute value p**(-valuation); 0 for (to-precision) zero.

        For a zero-to-precision value the true norm may be anything up to
        p**(-zero_bound); ``is_zero`` flags that 0 is only an upper bound.
        """
        if self.is_zero:
            return Fraction(0)
        return Fraction(1, self.prime ** self.valuation) if self.valuation >= 0 \
            else Fraction(self.prime ** -self.valuation)

    def digits(self):
        """Significant base-p digits, least significant first; d0 != 0."""
        if self.is_zero:
            return []
        u, out = self.unit, []
        for _ in range(self.precision):
            out.append(u % self.prime)
            u //= self.prime
        return out

    def residue(self, exponent: int) -> Fraction:
        """Canonical representative of the value modulo p**exponent.

        The result is the truncation of the digit expansion to exponents
        below ``exponent``, as an exact Fraction in [0, ...).  Errors when
        the expansion is not known that far.
        """
        p = self.prime
        if self.exact is not None:
            return fraction_truncate(self.exact, p, exponent)
        if self.is_zero:
            if self.zero_bound is None or self.zero_bound >= exponent:
                return Fraction(0)
            raise PrecisionExhausted(
                f"zero only known modulo p^{self.zero_bound}, need p^{exponent}")
        if self.valuation >= exponent:
            return Fraction(0)
        if self.valuation + self.precision < exponent:
            raise PrecisionExhausted(
                f"value known modulo p^{self.valuation + self.precision}, "
                f"need p^{exponent}")
        trunc = self.unit % p ** (exponent - self.valuation)
        return Fraction(trunc * p ** self.valuation) if self.valuation >= 0 \
            else Fraction(trunc, p ** -self.valuation)

    def with_known_exponent(self, exponent: int) -> "PAdic":
        """Forget digits at and above ``exponent`` (weaken the knowledge).

        Used when a computed value is only certified modulo p**exponent,
        e.g. the limit of a convergent series summed to finitely many terms.
        """
        if self.is_zero:
            if self.zero_bound is None or self.zero_bound >= exponent:
                return PAdic.zero(self.prime, exponent, self.budget)
            return self
        if self.known_exponent <= exponent:
            return self
        if self.valuation >= exponent:
            return PAdic.zero(self.prime, exponent, self.budget)
        # a deliberate weakening, so the min_acceptable floor does not apply
        prec = exponent - self.valuation
        return PAdic(self.prime, self.valuation,
                     self.unit % self.prime ** prec, prec,
                     budget=self.budget, _checked=True)

    def _require_same(self, other):
        if not isinstance(other, PAdic):
            raise TypeError(f"expected PAdic, got {type(other).__name__}")
        if self.prime != other.prime:
            raise PrimeMismatch(f"p={self.prime} vs p={other.prime}")

    def eq_to_precision(self, other) -> bool:
        """Whether the two values agree on the common known window."""
        self._require_same(other)
        return (self - other).is_zero

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self):
        if self.is_zero:
            return self
        return PAdic(self.prime, self.valuation,
                     self.prime ** self.precision - self.unit,
                     self.precision, budget=self.budget,
                     exact=None if self.exact is None else -self.exact,
                     _checked=True)

    def __add__(self, other):
        self._require_same(other)
        exact = None if (self.exact is None or other.exact is None) \
            else self.exact + other.exact
        try:
            out = self._add_modular(other)
        except PrecisionExhausted:
            if exact is None:
                raise
            return PAdic.from_fraction(exact, self.prime, self.budget)
        if exact is None or out.exact is not None:
            return out
        if out.is_zero or out.precision < self.budget.working:
            # cancellation cost the modular form digits the exact form keeps
            return PAdic.from_fraction(exact, self.prime, self.budget)
        return PAdic(out.prime, out.valuation, out.unit, out.precision,
                     zero_bound=out.zero_bound, budget=out.budget,
                     exact=exact, _checked=True)

    def _add_modular(self, other):
        p, budget = self.prime, self.budget
        kx, ky = self.known_exponent, other.known_exponent
        if self.is_zero and other.is_zero:
            if kx is None and ky is None:
                return self
            bound = kx if ky is None else ky if kx is None else min(kx, ky)
            return PAdic.zero(p, bound, budget)
        if self.is_zero or other.is_zero:
            z, nz = (self, other) if self.is_zero else (other, self)
            if z.zero_bound is None:
                return nz
            known = min(z.zero_bound, nz.known_exponent)
            if nz.valuation >= known:
                return PAdic.zero(p, known, budget)
            prec = known - nz.valuation
            if prec < budget.min_acceptable:
                raise PrecisionExhausted(f"{prec} digits left after addition")
            return PAdic(p, nz.valuation, nz.unit % p ** prec, prec,
                         budget=budget, _checked=True)
        k = min(kx, ky)
        m = min(self.valuation, other.valuation)
        mod = p ** (k - m)
        total = (self.unit * p ** (self.valuation - m)
                 + other.unit * p ** (other.valuation - m)) % mod
        if total == 0:
            return PAdic.zero(p, k, budget)
        w = int_valuation(total, p)
        val = m + w
        prec = k - val
        if prec < budget.min_acceptable:
            raise PrecisionExhausted(f"{prec} digits left after cancellation")
        return PAdic(p, val, total // p ** w, prec, budget=budget, _checked=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._require_same(other)
        p, budget = self.prime, self.budget
        if self.is_zero or other.is_zero:
            if self.is_exact_zero or other.is_exact_zero:
                return PAdic.zero(p, None, budget)
            bx, by = self.zero_bound, other.zero_bound
            if self.is_zero and other.is_zero:
                bound = None if (bx is None or by is None) else bx + by
            elif self.is_zero:
                bound = None if bx is None else bx + other.valuation
            else:
                bound = None if by is None else by + self.valuation
            return PAdic.zero(p, bound, budget)
        exact = None if (self.exact is None or other.exact is None) \
            else self.exact * other.exact
        prec = min(self.precision, other.precision)
        unit = self.unit * other.unit % p ** prec
        return PAdic(p, self.valuation + other.valuation, unit, prec,
                     budget=budget, exact=exact, _checked=True)

    def inverse(self):
        if self.is_zero:
            raise DivisionByZero("cannot invert a (to-precision) zero")
        p, prec = self.prime, self.precision
        unit = pow(self.unit % p ** prec, -1, p ** prec)
        exact = None if self.exact is None else 1 / self.exact
        return PAdic(p, -self.valuation, unit, prec, budget=self.budget,
                     exact=exact, _checked=True)

    def __truediv__(self, other):
        return self * other.inverse()

    # -- text ---------------------------------------------------------------

    def render(self) -> str:
        """Log/CSV form: the exact rational when known, else the digit form
        "p^v * (d0.d1...)_p"; to-precision zero as "0 (mod p^k)"."""
        if self.exact is not None:
            return str(self.exact)
        if self.is_zero:
            if self.zero_bound is None:
                return "0"
            return f"0 (mod {self.prime}^{self.zero_bound})"
        ds = ".".join(str(d) for d in self.digits())
        return f"{self.prime}^{self.valuation} * ({ds})_{self.prime}"

    __repr__ = render

    def __eq__(self, other):
        if not isinstance(other, PAdic):
            return NotImplemented
        return (self.prime == other.prime
                and self.zero_bound == other.zero_bound
                and self.valuation == other.valuation
                and self.unit == other.unit
                and self.precision == other.precision)

    def __hash__(self):
        return hash((self.prime, self.valuation, self.unit,
                     self.precision, self.zero_bound))


_RATIONAL_RE = re.compile(r"^([+-]?\d+)\s*(?:/\s*(\d+))?$")
_DIGITS_RE = re.compile(r"^(\d+)\^([+-]?\d+)\s*\*\s*\(([\d.]+)\)_(\d+)$")


def parse_padic(text: str, prime: int, budget=DEFAULT_BUDGET) -> PAdic:
    """Parse "num/den", "int" or the digit rendering back into a value."""
    text = text.strip()
    m = _RATIONAL_RE.match(text)
    if m:
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        return PAdic.from_rational(num, den, prime, budget)
    m = _DIGITS_RE.match(text)
    if m:
        p, val, digit_str, p2 = int(m.group(1)), int(m.group(2)), m.group(3), int(m.group(4))
        if p != prime or p2 != prime:
            raise PrimeMismatch(f"literal base {p} vs configured prime {prime}")
        digits = [int(d) for d in digit_str.split(".")]
        if not digits or digits[0] == 0:
            raise MalformedSyntax(f"leading digit must be nonzero in {text!r}")
        unit = sum(d * prime ** i for i, d in enumerate(digits))
        return PAdic(prime, val, unit, len(digits), budget=budget)
    raise MalformedSyntax(f"cannot parse p-adic literal {text!r}")
