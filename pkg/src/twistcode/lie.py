"""Characters of U(q): Haar norms, decomposition of (F x F*)^t, and branching to finite subgroups."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

import numpy as np

from .characters import ClassFunction, IrrepTable
from .cyclotomic import Cyclotomic
from .errors import CharacterDataError, EigenvalueRecognitionError, ValidationError
from .groups import FiniteMatrixGroup, det, trace

MAX_T = 6


# -- partitions and tableaux -------------------------------------------


def partitions(n: int, max_parts: int | None = None, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, None if max_parts is None else max_parts - 1, first):
            yield (first,) + rest


def hooks(shape: tuple[int, ...]) -> list[int]:
    conj = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    return [shape[i] - j + conj[j] - i - 1 for i in range(len(shape)) for j in range(shape[i])]


def num_standard_tableaux(shape: tuple[int, ...]) -> int:
    shape = tuple(p for p in shape if p)
    return math.factorial(sum(shape)) // math.prod(hooks(shape))


def haar_norm(q: int, t: int) -> int:
    """||F^t|| for the defining representation F of U(q)."""
    if q < 1 or t < 0:
        raise ValidationError("need q >= 1 and t >= 0")
    return sum(num_standard_tableaux(lam) ** 2 for lam in partitions(t, q))


# -- symmetric Laurent polynomials -----------------------------------------


class SymLaurentPoly:
    """Integer Laurent polynomial in q variables, stored as {exponent vector: coeff}."""

    __slots__ = ("q", "terms")

    def __init__(self, q: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.q = q
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, exps: tuple[int, ...], coeff: int = 1) -> SymLaurentPoly:
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def one(cls, q: int) -> SymLaurentPoly:
        return cls(q, {(0,) * q: 1})

    def __add__(self, other: SymLaurentPoly) -> SymLaurentPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymLaurentPoly(self.q, out)

    def __sub__(self, other: SymLaurentPoly) -> SymLaurentPoly:
        return self + other * -1

    def __mul__(self, other) -> SymLaurentPoly:
        if isinstance(other, int):
            return SymLaurentPoly(self.q, {k: v * other for k, v in self.terms.items()})
        out: dict[tuple[int, ...], int] = defaultdict(int)
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                out[tuple(x + y for x, y in zip(ka, kb))] += va * vb
        return SymLaurentPoly(self.q, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SymLaurentPoly:
        out = SymLaurentPoly.one(self.q)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymLaurentPoly) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def shift(self, k: int) -> SymLaurentPoly:
        """Multiply by det^k = (x_1 ... x_q)^k."""
        return SymLaurentPoly(self.q, {tuple(e + k for e in key): v for key, v in self.terms.items()})

    def is_symmetric(self) -> bool:
        return all(
            self.terms.get(tuple(p), 0) == v
            for key, v in self.terms.items()
            for p in itertools.permutations(key)
        )

    def leading(self) -> tuple[tuple[int, ...], int]:
        key = max(self.terms)
        return key, self.terms[key]

    def at_identity(self) -> int:
        return sum(self.terms.values())

    def evaluate_roots(self, exponents: tuple[int, ...], order: int) -> Cyclotomic:
        """Value at x_i = zeta_order^exponents[i]."""
        acc = [0] * order
        for key, v in self.terms.items():
            acc[sum(a * b for a, b in zip(key, exponents)) % order] += v
        return Cyclotomic.from_terms(order, enumerate(acc))


@lru_cache(maxsize=None)
def complete_homogeneous(k: int, q: int) -> SymLaurentPoly:
    """h_k(x_1..x_q): the degree-k part of prod 1/(1 - x_i)."""
    if k < 0:
        return SymLaurentPoly(q)
    # truncated expansion of each geometric series, multiplied out variable by variable
    terms: dict[tuple[int, ...], int] = {(): 1}
    for i in range(q):
        nxt: dict[tuple[int, ...], int] = {}
        for key in terms:
            used = sum(key)
            lo = k - used if i == q - 1 else 0
            for e in range(lo, k - used + 1):
                nxt[key + (e,)] = 1
        terms = nxt
    return SymLaurentPoly(q, terms)


@lru_cache(maxsize=None)
def schur_polynomial(partition: tuple[int, ...], q: int) -> SymLaurentPoly:
    """Jacobi-Trudi: s_lambda = det[h_{lambda_i - i + j}]."""
    lam = tuple(p for p in partition if p)
    if len(lam) > q:
        return SymLaurentPoly(q)
    ell = len(lam)
    if ell == 0:
        return SymLaurentPoly.one(q)
    out = SymLaurentPoly(q)
    for perm in itertools.permutations(range(ell)):
        sign = _perm_sign(perm)
        term = SymLaurentPoly.one(q)
        for i, j in enumerate(perm):
            h = complete_homogeneous(lam[i] - i + j, q)
            if not h:
                term = SymLaurentPoly(q)
                break
            term = term * h
        if term:
            out = out + term * sign
    return out


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign, seen = 1, set()
    for start in range(len(perm)):
        if start in seen:
            continue
        j, length = start, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- irreps of U(q) ------------------------------------------------------


@dataclass(frozen=True, order=True)
class UIrrep:
    """det^det_twist (x) S_partition(C^q); ``partition`` has exactly q entries, the last one 0."""

    partition: tuple[int, ...]
    det_twist: int = 0

    def __post_init__(self):
        p = tuple(self.partition)
        if any(a < b for a, b in zip(p, p[1:])) or (p and p[-1] < 0):
            raise ValidationError(f"{p} is not a partition")
        if p and p[-1]:
            object.__setattr__(self, "det_twist", self.det_twist + p[-1])
            p = tuple(a - p[-1] for a in p)
        object.__setattr__(self, "partition", p)

    @classmethod
    def from_weight(cls, weight: tuple[int, ...]) -> UIrrep:
        w = tuple(weight)
        if any(a < b for a, b in zip(w, w[1:])):
            raise ValidationError(f"{w} is not a dominant weight")
        return cls(tuple(a - w[-1] for a in w), w[-1])

    @classmethod
    def trivial(cls, q: int) -> UIrrep:
        return cls((0,) * q)

    @classmethod
    def fundamental(cls, q: int) -> UIrrep:
        return cls((1,) + (0,) * (q - 1))

    @property
    def q(self) -> int:
        return len(self.partition)

    @property
    def weight(self) -> tuple[int, ...]:
        return tuple(a + self.det_twist for a in self.partition)

    @property
    def dimension(self) -> int:
        """Hook-content formula."""
        shape = tuple(p for p in self.partition if p)
        if not shape:
            return 1
        num = math.prod(self.q + j - i for i in range(len(shape)) for j in range(shape[i]))
        return num // math.prod(hooks(shape))

    @property
    def dynkin(self) -> tuple[int, ...]:
        w = self.weight
        return tuple(a - b for a, b in zip(w, w[1:]))

    def conjugate(self) -> UIrrep:
        return UIrrep.from_weight(tuple(-a for a in reversed(self.weight)))

    def is_trivial(self) -> bool:
        return not any(self.weight)

    @property
    def display_name(self) -> str:
        """Dimension label; ``bar`` marks the member of a conjugate pair with the smaller Dynkin label."""
        d = self.dynkin
        return f"{self.dimension}bar" if d < d[::-1] else f"{self.dimension}"

    @property
    def label(self) -> str:
        return "[" + ",".join(str(a) for a in self.weight) + "]"

    def character(self) -> SymLaurentPoly:
        return schur_polynomial(self.partition, self.q).shift(self.det_twist)

    def __str__(self) -> str:
        return self.display_name


def ffstar_character(q: int, t: int) -> SymLaurentPoly:
    """Character of (F x F*)^t as a Laurent polynomial."""
    x = SymLaurentPoly(q, {tuple(int(i == j) for j in range(q)): 1 for i in range(q)})
    xinv = SymLaurentPoly(q, {tuple(-int(i == j) for j in range(q)): 1 for i in range(q)})
    return (x * xinv) ** t


@lru_cache(maxsize=None)
def decompose_FFstar_power(q: int, t: int) -> tuple[tuple[UIrrep, int], ...]:
    """The set E_t with multiplicities: (F x F*)^t = sum m_R R.

    Works in the polynomial ring after twisting by det^t, peeling off the
    lexicographically leading (hence dominant) monomial's Schur polynomial
    until nothing remains.
    """
    if q not in (2, 3) or not 0 <= t <= MAX_T:
        raise ValidationError(f"supported range is q in {{2, 3}}, 0 <= t <= {MAX_T}; got q={q}, t={t}")
    # (sum x_i)^t * (e_{q-1})^t, e_{q-1} = det * sum x_i^-1
    x = SymLaurentPoly(q, {tuple(int(i == j) for j in range(q)): 1 for i in range(q)})
    e = SymLaurentPoly(q, {tuple(int(i != j) for j in range(q)): 1 for i in range(q)})
    rest = (x**t) * (e**t)
    found: dict[tuple[int, ...], int] = {}
    while rest:
        lead, coeff = rest.leading()
        if coeff < 0:
            raise CharacterDataError(f"negative leading coefficient at {lead}")
        found[lead] = coeff
        rest = rest - schur_polynomial(lead, q) * coeff
    out = [(UIrrep.from_weight(tuple(a - t for a in lam)), m) for lam, m in found.items()]
    out.sort(key=lambda rm: (rm[0].dimension, rm[0].display_name, rm[0].weight))
    total = sum(m * r.dimension for r, m in out)
    if total != q ** (2 * t):
        raise CharacterDataError(f"dimension check failed: {total} != {q ** (2 * t)}")
    return tuple(out)


def E_t(q: int, t: int) -> list[UIrrep]:
    return [r for r, _ in decompose_FFstar_power(q, t)]


# -- eigenvalues and branching ------------------------------------------


def eigen_exponents(group: FiniteMatrixGroup, element: int, tol: float = 1e-6) -> tuple[int, tuple[int, ...]]:
    """(m, (k_1..k_q)) with eigenvalues zeta_m^k_j, m the element order; validated exactly."""
    m = int(group.order_map[element])
    vals = np.linalg.eigvals(group.numeric[element])
    ks = []
    for v in vals:
        pos = np.angle(v) * m / (2 * np.pi)
        k = int(np.round(pos))
        if abs(pos - k) > tol * m or abs(abs(v) - 1) > tol:
            raise EigenvalueRecognitionError(f"eigenvalue {v} of element {element} is not an order-{m} root of unity")
        ks.append(k % m)
    ks = tuple(sorted(ks))
    mat = group.matrix(element)
    tr = Cyclotomic.from_terms(m, [(k, 1) for k in ks])
    dt = Cyclotomic.from_terms(m, [(sum(ks), 1)])
    if tr != trace(mat) or dt != det(mat):
        raise EigenvalueRecognitionError(f"snapped eigenvalues of element {element} fail the exact trace/det check")
    return m, ks


def eigenvalues_as_roots_of_unity(group: FiniteMatrixGroup, element: int) -> list[Cyclotomic]:
    m, ks = eigen_exponents(group, element)
    return [Cyclotomic.from_terms(m, [(k, 1)]) for k in ks]


def _class_eigen(group: FiniteMatrixGroup) -> list[tuple[int, tuple[int, ...]]]:
    cache = group._cache
    if "eig" not in cache:
        cache["eig"] = [eigen_exponents(group, r) for r in group.class_reps]
    return cache["eig"]


def restrict(R: UIrrep, group: FiniteMatrixGroup) -> ClassFunction:
    """The class function R restricted to the finite subgroup (evaluated on class representatives)."""
    if R.q != group.degree:
        raise ValidationError(f"U({R.q}) irrep cannot restrict to a degree-{group.degree} group")
    cache = group._cache.setdefault("restrict", {})
    if R not in cache:
        poly = R.character()
        cache[R] = ClassFunction(group, [poly.evaluate_roots(ks, m) for m, ks in _class_eigen(group)])
    return cache[R]


def branch(R: UIrrep, group: FiniteMatrixGroup, table: IrrepTable) -> list[tuple[str, int]]:
    """Decomposition of R restricted to ``group`` into the irreducibles of ``table``."""
    down = restrict(R, group)
    try:
        parts = table.decompose(down)
    except CharacterDataError as exc:
        raise CharacterDataError(f"branching {R} failed, class/table misalignment? ({exc})") from exc
    degs = dict(zip(table.names, table.degrees))
    if sum(m * degs[n] for n, m in parts) != R.dimension:
        raise CharacterDataError(f"branching {R} does not preserve dimension")
    return parts
