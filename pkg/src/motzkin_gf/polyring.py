"""Exact sparse multivariate polynomials over a fixed variable set.

Every value in the library lives in one ring: polynomials with exact rational
coefficients in the variables of :data:`VARIABLES`.

``Z``, ``ZH``
    weight of an up/down step and of a horizontal step.
``QH``
    square root of the area variable; the exponent of ``QH`` is twice the
    area, so half-plaquette areas stay integral.
``U``, ``V``
    the two single-level weights ``z*omega`` and ``z/omega`` of the
    exclusion picture (``U + V = ZH``, ``U*V = Z**2``).
``TD``, ``CD``, ``TU``, ``CU``
    touch-down, creep-down, touch-up and creep-up markers.
``Z1``, ``Z2``
    auxiliary step weights of the two-step Dyck ladder (``Z = Z1*Z2``,
    ``ZH = Z1**2 + Z2**2``).

Exponent vectors are packed into one Python integer with a per-slot bias, so
monomial multiplication is a single integer addition and integer order equals
lexicographic exponent order. Only ``QH`` may carry a negative exponent, and
only in Laurent mode.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import (
    DivisionByZero,
    IndexOutOfRange,
    MissingAssignment,
    NonUnitConstantTerm,
    NonZeroRemainder,
    NotSymmetric,
)

VARIABLES: Tuple[str, ...] = ("Z", "ZH", "QH", "U", "V", "TD", "CD", "TU", "CU", "Z1", "Z2")
NVARS = len(VARIABLES)
INDEX = {name: i for i, name in enumerate(VARIABLES)}

# Grade = path length: each of Z, ZH, U, V is one step.
GRADED = ("Z", "ZH", "U", "V")

_BITS = 16
_MASK = (1 << _BITS) - 1
_B = 1 << (_BITS - 1)
_SHIFT = tuple(_BITS * (NVARS - 1 - i) for i in range(NVARS))
_BIAS = sum(_B << s for s in _SHIFT)
MAX_EXPONENT = _B - 1

Coeff = Union[int, Fraction]
Exponents = Tuple[int, ...]


def pack(exps: Sequence[int]) -> int:
    key = 0
    for e, s in zip(exps, _SHIFT):
        if not -_B < e < _B:
            raise OverflowError(f"exponent {e} outside the packable range")
        key |= (e + _B) << s
    return key


def unpack(key: int) -> Exponents:
    return tuple(((key >> s) & _MASK) - _B for s in _SHIFT)


def _digit(key: int, i: int) -> int:
    return ((key >> _SHIFT[i]) & _MASK) - _B


_UNIT_KEY = {name: _BIAS + (1 << _SHIFT[i]) for i, name in enumerate(VARIABLES)}
_S_Z, _S_ZH, _S_QH, _S_U, _S_V = (_SHIFT[INDEX[v]] for v in ("Z", "ZH", "QH", "U", "V"))


def _grade(key: int) -> int:
    return (((key >> _S_Z) & _MASK) + ((key >> _S_ZH) & _MASK)
            + ((key >> _S_U) & _MASK) + ((key >> _S_V) & _MASK) - 4 * _B)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coerce_coeff(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """Immutable sparse polynomial; ``terms`` maps packed exponents to coefficients."""

    __slots__ = ("_terms", "laurent", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | None = None, laurent: bool = False):
        # Trusted internal constructor: keys packed, coefficients nonzero int/Fraction.
        self._terms: Dict[int, Coeff] = dict(terms) if terms else {}
        self.laurent = laurent
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        c = _coerce_coeff(c)
        return cls({_BIAS: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({_UNIT_KEY[name]: 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int] | Sequence[int], coeff=1, laurent: bool = False) -> "Poly":
        if isinstance(exps, Mapping):
            vec = [0] * NVARS
            for name, e in exps.items():
                vec[INDEX[name]] = e
        else:
            vec = list(exps)
        _check_exps(vec, laurent)
        c = _coerce_coeff(coeff)
        return cls({pack(vec): c} if c else {}, laurent)

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Sequence[int], object]], laurent: bool = False) -> "Poly":
        out: Dict[int, Coeff] = {}
        for exps, c in items:
            _check_exps(exps, laurent)
            k = pack(exps)
            v = out.get(k, 0) + _coerce_coeff(c)
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return cls(out, laurent)

    @staticmethod
    def _wrap(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return Poly.const(x)

    # -- inspection -----------------------------------------------------
    @property
    def raw(self) -> Dict[int, Coeff]:
        return self._terms

    def terms(self) -> Iterator[Tuple[Exponents, Coeff]]:
        """Terms as ``(exponent tuple, coefficient)`` in ascending lex order."""
        for k in sorted(self._terms):
            yield unpack(k), self._terms[k]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    def coeff(self, exps: Mapping[str, int]) -> Coeff:
        vec = [0] * NVARS
        for name, e in exps.items():
            vec[INDEX[name]] = e
        return self._terms.get(pack(vec), 0)

    def constant_term(self) -> Coeff:
        return self._terms.get(_BIAS, 0)

    def degree(self, name: str) -> int:
        i = INDEX[name]
        return max((_digit(k, i) for k in self._terms), default=0)

    def min_degree(self, name: str) -> int:
        i = INDEX[name]
        return min((_digit(k, i) for k in self._terms), default=0)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for k in self._terms:
            for i, e in enumerate(unpack(k)):
                if e:
                    used.add(i)
        return tuple(VARIABLES[i] for i in sorted(used))

    def grades(self) -> Dict[int, "Poly"]:
        """Split into homogeneous parts by step grade (degree in Z, ZH, U, V)."""
        parts: Dict[int, Dict[int, Coeff]] = {}
        for k, c in self._terms.items():
            parts.setdefault(_grade(k), {})[k] = c
        return {g: Poly(t, self.laurent) for g, t in parts.items()}

    def total_grade(self) -> int:
        return max((_grade(k) for k in self._terms), default=0)

    # -- arithmetic -----------------------------------------------------
    def __neg__(self) -> "Poly":
        return Poly({k: -c for k, c in self._terms.items()}, self.laurent)

    def __pos__(self) -> "Poly":
        return self

    def __add__(self, other) -> "Poly":
        if isinstance(other, (Series, RatFunc)):
            return NotImplemented
        other = Poly._wrap(other)
        if len(other._terms) > len(self._terms):
            big, small = other, self
        else:
            big, small = self, other
        out = dict(big._terms)
        for k, c in small._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                del out[k]
        return Poly(out, self.laurent or other.laurent)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (Series, RatFunc)):
            return NotImplemented
        return self + (-Poly._wrap(other))

    def __rsub__(self, other) -> "Poly":
        return Poly._wrap(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (Series, RatFunc)):
            return NotImplemented
        if not isinstance(other, Poly):
            c = _coerce_coeff(other)
            if not c:
                return Poly()
            return Poly({k: _norm(v * c) for k, v in self._terms.items()}, self.laurent)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[int, Coeff] = {}
        get = out.get
        bias = _BIAS
        for kb, cb in b.items():
            off = kb - bias
            for ka, ca in a.items():
                k = ka + off
                out[k] = get(k, 0) + ca * cb
        return Poly({k: _norm(v) for k, v in out.items() if v}, self.laurent or other.laurent)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers are not polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return exact_div(self, other)
        c = _coerce_coeff(other)
        if not c:
            raise DivisionByZero("division by zero")
        return self * (Fraction(1) / c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({_BIAS: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitutions ----------------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Substitute polynomials (or rationals) for variables."""
        idx = {INDEX[n]: Poly._wrap(p) for n, p in mapping.items()}
        if not idx:
            return self
        cache: Dict[Tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            p = cache.get((i, e))
            if p is None:
                if e < 0:
                    raise ValueError("cannot substitute into a negative power")
                p = idx[i] ** e
                cache[(i, e)] = p
            return p

        out = Poly()
        groups: Dict[Tuple[Tuple[int, int], ...], Dict[int, Coeff]] = {}
        for k, c in self._terms.items():
            exps = unpack(k)
            sel = tuple((i, exps[i]) for i in idx if exps[i])
            rest = list(exps)
            for i, _ in sel:
                rest[i] = 0
            groups.setdefault(sel, {})[pack(rest)] = c
        for sel, t in groups.items():
            part = Poly(t, self.laurent)
            for i, e in sel:
                part = part * power(i, e)
            out = out + part
        return out

    def scale_shift(self, n: int) -> "Poly":
        return scale_shift(self, n)

    def invert_qh(self) -> "Poly":
        """``QH -> 1/QH`` (Laurent result)."""
        out = {}
        s = _S_QH
        for k, c in self._terms.items():
            e = ((k >> s) & _MASK) - _B
            out[k - (2 * e << s)] = c
        return Poly(out, True)

    def swap_uv(self) -> "Poly":
        out = {}
        for k, c in self._terms.items():
            du = ((k >> _S_U) & _MASK) - _B
            dv = ((k >> _S_V) & _MASK) - _B
            out[k + ((dv - du) << _S_U) + ((du - dv) << _S_V)] = c
        return Poly(out, self.laurent)

    def map_qh(self, factor: int) -> "Poly":
        """``QH -> QH**factor``."""
        out = {}
        s = _S_QH
        for k, c in self._terms.items():
            e = ((k >> s) & _MASK) - _B
            out[k + ((factor - 1) * e << s)] = c
        return Poly(out, self.laurent)

    def halve_qh(self) -> "Poly":
        """``QH**(2e) -> QH**e``; used to evaluate at a rational ``q`` instead of ``sqrt(q)``."""
        out = {}
        s = _S_QH
        for k, c in self._terms.items():
            e = ((k >> s) & _MASK) - _B
            if e % 2:
                raise ValueError("odd QH exponent cannot be halved")
            out[k - ((e // 2) << s)] = c
        return Poly(out, self.laurent)

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        return eval_rational(self, assignment)

    # -- display ----------------------------------------------------------
    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=lambda k: (_grade(k), -k)):
            c = self._terms[k]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(VARIABLES, unpack(k)) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _check_exps(vec: Sequence[int], laurent: bool) -> None:
    if len(vec) != NVARS:
        raise ValueError(f"exponent vector must have {NVARS} entries")
    for i, e in enumerate(vec):
        if e < 0 and not (laurent and i == INDEX["QH"]):
            raise ValueError(f"negative exponent for {VARIABLES[i]}")


ZERO = Poly()
ONE = Poly.const(1)
Z = Poly.var("Z")
ZH = Poly.var("ZH")
QH = Poly.var("QH")
U = Poly.var("U")
V = Poly.var("V")
TD = Poly.var("TD")
CD = Poly.var("CD")
TU = Poly.var("TU")
CU = Poly.var("CU")
Z1 = Poly.var("Z1")
Z2 = Poly.var("Z2")


def qh_power(e: int) -> Poly:
    return Poly.monomial({"QH": e}, laurent=e < 0)


def q_power(e: int) -> Poly:
    """``q**e`` with ``q = QH**2``."""
    return qh_power(2 * e)


# -- named operations ------------------------------------------------------

def arith(a, b, op: str) -> Poly:
    a = Poly._wrap(a)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


def _quo(c: Coeff, d: Coeff) -> Coeff:
    if type(c) is int and type(d) is int and c % d == 0:
        return c // d
    return _norm(Fraction(c) / d)


def exact_div(num: Poly, den: Poly) -> Poly:
    """Quotient of an exact polynomial division.

    Raises ``NonZeroRemainder`` as soon as the leading remainder term is not
    divisible by the leading divisor term (lex order), which happens iff the
    division is inexact.
    """
    num, den = Poly._wrap(num), Poly._wrap(den)
    if not den:
        raise DivisionByZero("division by the zero polynomial")
    if num.laurent or den.laurent:
        raise ValueError("exact_div does not support Laurent polynomials")
    dterms = den.raw
    if len(dterms) == 1:
        (dk, dc), = dterms.items()
        dexp = unpack(dk)
        out = {}
        for k, c in num.raw.items():
            if any(x < y for x, y in zip(unpack(k), dexp)):
                raise NonZeroRemainder(f"{num} is not divisible by {den}")
            out[k - dk + _BIAS] = _quo(c, dc)
        return Poly(out)
    lead = max(dterms)
    lead_exp = unpack(lead)
    lead_c = dterms[lead]
    others = [(k - _BIAS, c) for k, c in dterms.items() if k != lead]
    rem = dict(num.raw)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: Dict[int, Coeff] = {}
    while heap:
        key = -heapq.heappop(heap)
        c = rem.pop(key, None)
        if c is None:
            continue
        kexp = unpack(key)
        if any(x < y for x, y in zip(kexp, lead_exp)):
            raise NonZeroRemainder(f"{num} is not divisible by {den}")
        qc = _quo(c, lead_c)
        qkey = key - lead + _BIAS
        quot[qkey] = qc
        for off, dc in others:
            nk = qkey + off
            v = rem.get(nk)
            if v is None:
                rem[nk] = -qc * dc
                heapq.heappush(heap, -nk)
            else:
                v = v - qc * dc
                if v:
                    rem[nk] = _norm(v)
                else:
                    del rem[nk]
    return Poly(quot)


def scale_shift(p: Poly, n: int) -> Poly:
    """Substitute ``zeta -> zeta * q**n``: ``Z -> Z*QH**(2n)``, ``ZH -> ZH*QH**(2n)``.

    ``U`` and ``V`` are step weights too and shift alongside.
    """
    p = Poly._wrap(p)
    if n == 0:
        return p
    out = {}
    s = _S_QH
    for k, c in p.raw.items():
        out[k + ((2 * n * _grade(k)) << s)] = c
    return Poly(out, p.laurent or n < 0)


# -- truncated series --------------------------------------------------------

class Series:
    """Formal power series in the step grade, truncated at order ``L``.

    ``coeffs[d]`` is the homogeneous grade-``d`` part.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Poly], check: bool = True):
        coeffs = tuple(Poly._wrap(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the grade-0 coefficient")
        if check:
            for d, c in enumerate(coeffs):
                if any(_grade(k) != d for k in c.raw):
                    raise ValueError(f"coefficient {d} is not homogeneous of grade {d}")
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, p: Poly, L: int) -> "Series":
        parts = Poly._wrap(p).grades()
        return cls([parts.get(d, ZERO) for d in range(L + 1)], check=False)

    @classmethod
    def zero(cls, L: int) -> "Series":
        return cls([ZERO] * (L + 1), check=False)

    def __getitem__(self, d: int) -> Poly:
        return self.coeffs[d]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, L: int) -> "Series":
        if L > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(self.coeffs[: L + 1], check=False)

    def to_poly(self) -> Poly:
        out = ZERO
        for c in self.coeffs:
            out = out + c
        return out

    def _other(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.from_poly(Poly._wrap(other), self.order)

    def __add__(self, other) -> "Series":
        other = self._other(other)
        L = min(self.order, other.order)
        return Series([self.coeffs[d] + other.coeffs[d] for d in range(L + 1)], check=False)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], check=False)

    def __sub__(self, other) -> "Series":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "Series":
        return self._other(other) - self

    def __mul__(self, other) -> "Series":
        other = self._other(other)
        L = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        nz_a = [i for i in range(L + 1) if a[i]]
        nz_b = [j for j in range(L + 1) if b[j]]
        out = [ZERO] * (L + 1)
        for i in nz_a:
            for j in nz_b:
                if i + j > L:
                    break
                out[i + j] = out[i + j] + a[i] * b[j]
        return Series(out, check=False)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def scale_shift(self, n: int) -> "Series":
        return Series([scale_shift(c, n) for c in self.coeffs], check=False)

    def subs(self, mapping) -> "Series":
        # Only grade-preserving substitutions keep the series well formed.
        return Series([c.subs(mapping) for c in self.coeffs])

    def map(self, fn) -> "Series":
        return Series([fn(c) for c in self.coeffs], check=False)

    def divide_monomial(self, z_power: int, qh_power: int) -> "Series":
        """Remove a ``Z**z_power * QH**qh_power`` prefactor, dropping grades below it."""
        mono = Poly.monomial({"Z": z_power, "QH": qh_power})
        out = []
        for d in range(z_power, self.order + 1):
            out.append(exact_div(self.coeffs[d], mono))
        return Series(out, check=False)

    def is_nonnegative_integral(self) -> bool:
        return all(type(c) is int and c >= 0 for p in self.coeffs for c in p.raw.values())

    def __repr__(self) -> str:
        return f"Series(order={self.order}, {[str(c) for c in self.coeffs]})"


def series_invert(p, L: int) -> Series:
    """Multiplicative inverse through grade ``L``; the grade-0 part must be 1."""
    s = p if isinstance(p, Series) else Series.from_poly(Poly._wrap(p), L)
    if s.coeffs[0] != ONE:
        raise NonUnitConstantTerm(f"constant term {s.coeffs[0]} is not 1")
    a = list(s.coeffs[: L + 1]) + [ZERO] * max(0, L + 1 - len(s.coeffs))
    nz = [j for j in range(1, L + 1) if a[j]]
    t = [ONE] + [ZERO] * L
    for d in range(1, L + 1):
        acc = ZERO
        for j in nz:
            if j > d:
                break
            if t[d - j]:
                acc = acc + a[j] * t[d - j]
        t[d] = -acc
    return Series(t, check=False)


def series_log(s: Series) -> Series:
    if s.coeffs[0] != ONE:
        raise NonUnitConstantTerm(f"constant term {s.coeffs[0]} is not 1")
    L = s.order
    u = [ZERO] * (L + 1)
    for d in range(1, L + 1):
        acc = ZERO
        for j in range(1, d):
            if u[j] and s.coeffs[d - j]:
                acc = acc + u[j] * s.coeffs[d - j] * j
        u[d] = s.coeffs[d] - acc * Fraction(1, d)
    return Series(u, check=False)


def series_exp(u: Series) -> Series:
    if u.coeffs[0]:
        raise ValueError("series_exp needs a vanishing grade-0 part")
    L = u.order
    e = [ONE] + [ZERO] * L
    for d in range(1, L + 1):
        acc = ZERO
        for j in range(1, d + 1):
            if u.coeffs[j] and e[d - j]:
                acc = acc + u.coeffs[j] * e[d - j] * j
        e[d] = acc * Fraction(1, d)
    return Series(e, check=False)


# -- q-analogues and symmetric reduction --------------------------------------

@lru_cache(maxsize=None)
def q_binomial(a: int, b: int) -> Poly:
    """Gaussian binomial ``[a choose b]_q`` in ``q = QH**2`` via the q-Pascal rule."""
    if not 0 <= b <= a:
        raise IndexOutOfRange(f"q_binomial({a}, {b}) needs 0 <= b <= a")
    if b == 0 or b == a:
        return ONE
    return q_binomial(a - 1, b - 1) + q_power(b) * q_binomial(a - 1, b)


@lru_cache(maxsize=None)
def _power_sum(r: int) -> Poly:
    # U**r + V**r in terms of e1 = ZH, e2 = Z**2.
    if r == 0:
        return Poly.const(2)
    if r == 1:
        return ZH
    return ZH * _power_sum(r - 1) - Z * Z * _power_sum(r - 2)


def sym_reduce(p: Poly) -> Poly:
    """Rewrite a ``U<->V`` symmetric polynomial through ``U+V -> ZH``, ``U*V -> Z**2``."""
    p = Poly._wrap(p)
    for name in ("Z", "ZH", "Z1", "Z2"):
        if p.degree(name) or p.min_degree(name):
            raise ValueError(f"sym_reduce input must not involve {name}")
    if p.swap_uv() != p:
        raise NotSymmetric(f"not symmetric under U<->V: {p}")
    iu, iv = INDEX["U"], INDEX["V"]
    iz = INDEX["Z"]
    groups: Dict[Tuple[int, int], Dict[int, Coeff]] = {}
    for k, c in p.raw.items():
        exps = list(unpack(k))
        i, j = exps[iu], exps[iv]
        if i < j:
            continue
        exps[iu] = exps[iv] = 0
        exps[iz] = 2 * j
        groups.setdefault((i - j, 0), {})[pack(exps)] = c
    out = ZERO
    for (r, _), t in groups.items():
        rest = Poly(t, p.laurent)
        out = out + (rest if r == 0 else rest * _power_sum(r))
    return out


def sym_expand(p: Poly) -> Poly:
    """Inverse of :func:`sym_reduce` on its image: ``ZH -> U+V``; even ``Z`` powers ``-> (U*V)``."""
    p = Poly._wrap(p)
    iz = INDEX["Z"]
    if p.degree("U") or p.degree("V"):
        raise ValueError("sym_expand input must not involve U or V")
    out: Dict[int, Coeff] = {}
    for k, c in p.raw.items():
        exps = list(unpack(k))
        if exps[iz] % 2:
            raise ValueError("odd Z power has no U,V preimage")
        half = exps[iz] // 2
        exps[iz] = 0
        exps[INDEX["U"]] += half
        exps[INDEX["V"]] += half
        out[pack(exps)] = c
    return Poly(out, p.laurent).subs({"ZH": U + V})


def eval_rational(p: Poly, assignment: Mapping[str, object]) -> Fraction:
    p = Poly._wrap(p)
    vals: Dict[int, Fraction] = {}
    for name, v in assignment.items():
        vals[INDEX[name]] = Fraction(v) if not isinstance(v, Fraction) else v
    total = Fraction(0)
    for k, c in p.raw.items():
        term = Fraction(c)
        for i, e in enumerate(unpack(k)):
            if not e:
                continue
            if i not in vals:
                raise MissingAssignment(VARIABLES[i])
            x = vals[i]
            if e < 0:
                if x == 0:
                    raise DivisionByZero(f"{VARIABLES[i]} = 0 in a negative power")
                term /= x ** (-e)
            else:
                term *= x ** e
        total += term
    return total


# -- matrices ------------------------------------------------------------------

class PolyMatrix:
    """Dense square matrix with :class:`Poly` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[object]]):
        rows = tuple(tuple(Poly._wrap(x) for x in r) for r in rows)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("PolyMatrix must be square with dimension >= 1")
        self.rows = rows

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: Tuple[int, int]) -> Poly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-a for a in r] for r in self.rows])

    def __rsub__(self, other):
        if other == 1:
            return PolyMatrix.identity(self.dim) - self
        return NotImplemented

    def __radd__(self, other):
        if other == 1:
            return PolyMatrix.identity(self.dim) + self
        return NotImplemented

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(a) for a in r] for r in self.rows])

    def minor(self, row: int, col: int) -> "PolyMatrix":
        return PolyMatrix([[a for j, a in enumerate(r) if j != col]
                           for i, r in enumerate(self.rows) if i != row])

    def row_times(self, vec: Sequence[Poly]) -> list:
        """Left action ``vec @ self`` (row vector times matrix)."""
        n = self.dim
        out = [ZERO] * n
        for i, v in enumerate(vec):
            if not v:
                continue
            for j, a in enumerate(self.rows[i]):
                if a:
                    out[j] = out[j] + v * a
        return out

    def det(self, method: str | None = None) -> Poly:
        return det(self, method)

    def __repr__(self) -> str:
        return "PolyMatrix([\n" + "\n".join("  [" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "\n])"


def _det_laplace(rows) -> Poly:
    n = len(rows)
    memo: Dict[int, Poly] = {}

    def rec(r: int, used: int) -> Poly:
        if r == n:
            return ONE
        hit = memo.get(used)
        if hit is not None:
            return hit
        acc = ZERO
        free_before = 0
        for c in range(n):
            if used >> c & 1:
                continue
            a = rows[r][c]
            if a:
                sub = rec(r + 1, used | (1 << c))
                if sub:
                    term = a * sub
                    acc = acc - term if free_before & 1 else acc + term
            free_before += 1
        memo[used] = acc
        return acc

    return rec(0, 0)


def _det_bareiss(rows) -> Poly:
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return ZERO
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                mij = m[i][j]
                if mik and m[k][j]:
                    num = mij * pk - mik * m[k][j]
                elif mij:
                    num = mij * pk
                else:
                    continue
                m[i][j] = exact_div(num, prev) if num and prev != ONE else num
            m[i][k] = ZERO
        prev = pk
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def det(mat: PolyMatrix, method: str | None = None) -> Poly:
    """Exact determinant: memoized Laplace expansion up to 8x8, Bareiss above."""
    if method is None:
        method = "laplace" if mat.dim <= 8 else "bareiss"
    if method == "laplace":
        return _det_laplace(mat.rows)
    if method == "bareiss":
        return _det_bareiss(mat.rows)
    raise ValueError(f"unknown determinant method {method!r}")


# -- rational functions ------------------------------------------------------

class RatFunc:
    """Unreduced quotient ``num / den``; equality is decided by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        self.num = Poly._wrap(num)
        self.den = Poly._wrap(den)
        if not self.den:
            raise DivisionByZero("zero denominator")

    def _o(self, other) -> "RatFunc":
        return other if isinstance(other, RatFunc) else RatFunc(other)

    def __add__(self, other):
        o = self._o(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._o(other))

    def __rsub__(self, other):
        return self._o(other) - self

    def __mul__(self, other):
        o = self._o(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._o(other)
        return RatFunc(self.num * o.den, self.den * o.num)

    def equals(self, other) -> bool:
        o = self._o(other)
        return self.num * o.den == o.num * self.den

    def map(self, fn) -> "RatFunc":
        return RatFunc(fn(self.num), fn(self.den))

    def series(self, L: int) -> Series:
        return Series.from_poly(self.num, L) * series_invert(self.den, L)

    def evaluate(self, assignment) -> Fraction:
        d = eval_rational(self.den, assignment)
        if d == 0:
            raise DivisionByZero("denominator vanishes at this point")
        return eval_rational(self.num, assignment) / d

    def __repr__(self) -> str:
        return f"RatFunc(({self.num}) / ({self.den}))"
