"""Exact scalar fields: the rationals and prime fields F_p.

Scalars are plain Python objects supporting ``+ - * /`` and truthiness
(``not x`` iff ``x == 0``); over Q they are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, NotInvertibleError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class FpElement:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise DomainError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return (other.numerator * pow(other.denominator, -1, self.p)) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise NotInvertibleError(f"0 is not invertible in F_{self.p}")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        return FpElement(self._coerce(other), self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FpElement(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class RationalField:
    characteristic = 0
    name = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, FpElement):
            raise DomainError("cannot coerce an F_p element into Q")
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def format(self, x) -> str:
        return str(x)

    def numerator_size(self, x) -> int:
        return abs(Fraction(x).numerator)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"Fp:{p}"

    def __call__(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.characteristic:
                raise DomainError(f"cannot coerce F_{x.p} element into F_{self.characteristic}")
            return x
        x = Fraction(x)
        if x.denominator % self.characteristic == 0:
            raise NotInvertibleError(f"denominator of {x} vanishes in F_{self.characteristic}")
        return FpElement(x.numerator * pow(x.denominator, -1, self.characteristic), self.characteristic)

    @property
    def zero(self):
        return FpElement(0, self.characteristic)

    @property
    def one(self):
        return FpElement(1, self.characteristic)

    def parse(self, text: str) -> FpElement:
        return self(Fraction(text.strip()))

    def format(self, x) -> str:
        return str(self(x).value)

    def numerator_size(self, x) -> int:
        return self(x).value

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Fp", self.characteristic))

    def __repr__(self):
        return f"F_{self.characteristic}"


Q = RationalField()


def parse_field(spec: str):
    """Parse ``Q`` or ``Fp:<p>`` (``F<p>`` and ``GF(<p>)`` also accepted)."""
    s = spec.strip()
    if s.upper() in ("Q", "QQ"):
        return Q
    for prefix in ("Fp:", "FP:", "fp:", "GF(", "F"):
        if s.startswith(prefix):
            body = s[len(prefix):].rstrip(")")
            try:
                return PrimeField(int(body))
            except ValueError:
                break
    raise DomainError(f"unknown field {spec!r}; expected Q or Fp:<prime>")
