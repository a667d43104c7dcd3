"""Finite matrix groups over cyclotomic fields.

Groups are enumerated by breadth-first closure of exact generator matrices.
Internally each element is packed as an integer coefficient array over a
common conductor ``N`` plus a denominator, which makes products cheap and
gives an exact hashable key.  Only right multiplication by generators is
computed with matrices; every other product (left multiplication,
inverses, conjugation) is derived from the BFS spanning tree by index
lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic, _field, get_conductor_cap
from .errors import CapExceededError, ConductorOverflowError, ValidationError

DEFAULT_GROUP_CAP = 100_000

CycMatrix = tuple[tuple[Cyclotomic, ...], ...]


# -- exact matrix helpers ------------------------------------------------


def as_matrix(rows: Sequence[Sequence[Cyclotomic | int]]) -> CycMatrix:
    return tuple(tuple(Cyclotomic.coerce(x) for x in row) for row in rows)


def identity(q: int) -> CycMatrix:
    one, zero = Cyclotomic.rational(1), Cyclotomic.rational(0)
    return tuple(tuple(one if i == j else zero for j in range(q)) for i in range(q))


def matmul(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = Cyclotomic.rational(0)
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def dagger(a: CycMatrix) -> CycMatrix:
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*a))


def trace(a: CycMatrix) -> Cyclotomic:
    acc = Cyclotomic.rational(0)
    for i, row in enumerate(a):
        acc = acc + row[i]
    return acc


def det(a: CycMatrix) -> Cyclotomic:
    """Laplace expansion; fine for the small degrees used here."""
    q = len(a)
    if q == 1:
        return a[0][0]
    acc = Cyclotomic.rational(0)
    for j, x in enumerate(a[0]):
        if x.is_zero():
            continue
        minor = tuple(row[:j] + row[j + 1 :] for row in a[1:])
        term = x * det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def is_unitary(a: CycMatrix) -> bool:
    return matmul(a, dagger(a)) == identity(len(a))


def embed_matrix(a: CycMatrix) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in a], dtype=complex)


def matrix_conductor(a: CycMatrix) -> int:
    n = 1
    for row in a:
        for x in row:
            c = x.minimal().conductor
            n = n * c // math.gcd(n, c)
    return n


# -- packed representation ----------------------------------------------


class _Packer:
    """Integer-array encoding of q x q matrices over Q(zeta_N)."""

    def __init__(self, conductor: int, degree: int):
        fld = _field(conductor)
        self.n = conductor
        self.q = degree
        self.phi = fld.phi
        phi = fld.phi
        red = np.zeros((phi, phi, phi), dtype=np.int64)
        for u in range(phi):
            for v in range(phi):
                red[u, v] = fld.red[(u + v) % conductor]
        self.red = red

    def pack(self, m: CycMatrix) -> tuple[int, np.ndarray]:
        lifted = [[x.lift(self.n) for x in row] for row in m]
        den = 1
        for row in lifted:
            for x in row:
                den = den * x.den // math.gcd(den, x.den)
        arr = np.zeros((self.q, self.q, self.phi), dtype=np.int64)
        for i, row in enumerate(lifted):
            for j, x in enumerate(row):
                arr[i, j] = [c * (den // x.den) for c in x.num]
        return den, arr

    def unpack(self, den: int, arr: np.ndarray) -> CycMatrix:
        return tuple(
            tuple(Cyclotomic(self.n, arr[i, j].tolist(), den).minimal() for j in range(self.q))
            for i in range(self.q)
        )

    def mul(self, a: tuple[int, np.ndarray], b: tuple[int, np.ndarray]) -> tuple[int, np.ndarray]:
        da, xa = a
        db, xb = b
        prod = np.einsum("iku,kjv,uvw->ijw", xa, xb, self.red)
        den = da * db
        g = math.gcd(den, *np.unique(np.abs(prod)).tolist())
        if g > 1:
            prod //= g
            den //= g
        if np.abs(prod).max(initial=0) > 2**40:
            raise ConductorOverflowError("packed coefficients too large; group is not finite?")
        return den, prod

    @staticmethod
    def key(p: tuple[int, np.ndarray]) -> tuple[int, bytes]:
        return p[0], p[1].tobytes()


# -- groups ------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    matrix: CycMatrix
    index: int


class FiniteMatrixGroup:
    """An enumerated finite subgroup of U(q) with its conjugacy classes.

    Element 0 is the identity.  Conjugacy classes are sorted by
    ``(order, size, Re trace, Im trace)`` with the smallest member index as
    a final tiebreak; ``class_reps[c]`` is that smallest member.
    """

    def __init__(self, name, degree, conductor, packer, packed, parent, gen_of, right, generators):
        self.name = name
        self.degree = degree
        self.conductor = conductor
        self._packer = packer
        self._packed = packed
        self.parent = parent
        self.gen_of = gen_of
        self.right = right  # right[j][i] = index of g_i * s_j
        self.generators = generators  # element indices of the (sorted) generators
        self._cache: dict = {}
        self._compute_inverses()
        self._compute_classes()

    def __len__(self) -> int:
        return len(self._packed)

    @property
    def order(self) -> int:
        return len(self._packed)

    def __getitem__(self, i: int) -> GroupElement:
        return GroupElement(self.matrix(i), i)

    def __repr__(self) -> str:
        return f"FiniteMatrixGroup({self.name!r}, degree={self.degree}, order={self.order})"

    def matrix(self, i: int) -> CycMatrix:
        return self._packer.unpack(*self._packed[i])

    @cached_property
    def elements(self) -> list[GroupElement]:
        return [self[i] for i in range(self.order)]

    @cached_property
    def numeric(self) -> np.ndarray:
        """All elements embedded as complex matrices, shape (|G|, q, q)."""
        fld = _field(self.conductor)
        basis = np.exp(2j * np.pi * np.arange(fld.phi) / self.conductor)
        out = np.empty((self.order, self.degree, self.degree), dtype=complex)
        for i, (den, arr) in enumerate(self._packed):
            out[i] = arr @ basis / den
        return out

    def word(self, i: int) -> list[int]:
        """Generator slots whose ordered product is element ``i``."""
        w = []
        while i:
            w.append(self.gen_of[i])
            i = self.parent[i]
        return w[::-1]

    def left_map(self, h: int) -> np.ndarray:
        """Array ``L`` with ``L[i]`` = index of ``g_h * g_i``."""
        out = np.empty(self.order, dtype=np.int64)
        out[0] = h
        for i in range(1, self.order):
            out[i] = self.right[self.gen_of[i]][out[self.parent[i]]]
        return out

    def right_map(self, h: int) -> np.ndarray:
        """Array ``R`` with ``R[i]`` = index of ``g_i * g_h``."""
        out = np.arange(self.order)
        for j in self.word(h):
            out = self.right[j][out]
        return out

    def multiply(self, a: int, b: int) -> int:
        for j in self.word(b):
            a = int(self.right[j][a])
        return a

    def _compute_inverses(self) -> None:
        n = self.order
        gen_inv = []
        for j, g in enumerate(self.generators):
            x = g
            while True:  # walk powers until the identity; the previous power is g^-1
                nxt = int(self.right[j][x])
                if nxt == 0:
                    break
                x = nxt
            gen_inv.append(x)
        left_inv = [self.left_map(h) for h in gen_inv]
        inv = np.zeros(n, dtype=np.int64)
        for i in range(1, n):
            inv[i] = left_inv[self.gen_of[i]][inv[self.parent[i]]]
        self.inverse_map = inv
        self._gen_inv = gen_inv

    def _compute_classes(self) -> None:
        n = self.order
        conj_maps = []
        for j, h in enumerate(self.generators):
            # h g h^-1
            conj_maps.append(self.right_map(self._gen_inv[j])[self.left_map(h)])
        class_of = np.full(n, -1, dtype=np.int64)
        raw = []
        for start in range(n):
            if class_of[start] >= 0:
                continue
            cid = len(raw)
            members = [start]
            class_of[start] = cid
            stack = [start]
            while stack:
                x = stack.pop()
                for cm in conj_maps:
                    y = int(cm[x])
                    if class_of[y] < 0:
                        class_of[y] = cid
                        members.append(y)
                        stack.append(y)
            raw.append(sorted(members))
        reps = [m[0] for m in raw]
        orders = [self._element_order(r) for r in reps]
        traces = [trace(self.matrix(r)) for r in reps]
        emb = [complex(t) for t in traces]
        keyed = sorted(
            range(len(raw)),
            key=lambda c: (orders[c], len(raw[c]), round(emb[c].real, 9), round(emb[c].imag, 9), reps[c]),
        )
        self.classes = [np.array(raw[c], dtype=np.int64) for c in keyed]
        self.class_sizes = [len(raw[c]) for c in keyed]
        self.class_reps = [reps[c] for c in keyed]
        self.class_orders = [orders[c] for c in keyed]
        self.class_traces = [traces[c] for c in keyed]
        relabel = np.empty(len(raw), dtype=np.int64)
        for new, old in enumerate(keyed):
            relabel[old] = new
        self.class_of = relabel[class_of]
        self.order_map = np.array(self.class_orders, dtype=np.int64)[self.class_of]

    def _element_order(self, i: int) -> int:
        k, x = 1, i
        word = self.word(i)
        while x != 0:
            for j in word:
                x = int(self.right[j][x])
            k += 1
        return k if i != 0 else 1

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_fingerprints(self) -> list[tuple[int, int]]:
        return list(zip(self.class_orders, self.class_sizes))


def enumerate_group(
    generators: Sequence[Sequence[Sequence[Cyclotomic | int]]],
    cap: int = DEFAULT_GROUP_CAP,
    name: str = "G",
) -> FiniteMatrixGroup:
    """Close ``generators`` under multiplication (breadth first)."""
    if cap < 1:
        raise ValidationError("cap must be >= 1")
    mats = [as_matrix(g) for g in generators]
    if not mats:
        raise ValidationError("at least one generator is required")
    q = len(mats[0])
    for k, m in enumerate(mats):
        if len(m) != q or any(len(row) != q for row in m):
            raise ValidationError(f"generator {k} is not a {q}x{q} matrix")
        if not is_unitary(m):
            raise ValidationError(f"generator {k} is not exactly unitary")
    conductor = 1
    for m in mats:
        c = matrix_conductor(m)
        conductor = conductor * c // math.gcd(conductor, c)
    if conductor > get_conductor_cap():
        raise ConductorOverflowError(f"generator conductor {conductor} exceeds cap")
    packer = _Packer(conductor, q)
    # deterministic generator order, duplicates and identities dropped
    uniq: dict[tuple, tuple[int, np.ndarray]] = {}
    ident = packer.pack(identity(q))
    for m in sorted(mats, key=lambda m: repr(m)):
        p = packer.pack(m)
        k = packer.key(p)
        if k != packer.key(ident) and k not in uniq:
            uniq[k] = p
    gens = list(uniq.values())

    packed = [ident]
    index = {packer.key(ident): 0}
    parent = [0]
    gen_of = [-1]
    right: list[list[int]] = [[] for _ in gens]
    gen_index = [0] * len(gens)
    head = 0
    while head < len(packed):
        cur = packed[head]
        for j, g in enumerate(gens):
            prod = packer.mul(cur, g)
            k = packer.key(prod)
            idx = index.get(k)
            if idx is None:
                idx = len(packed)
                if idx >= cap:
                    raise CapExceededError(f"group closure exceeds cap of {cap} elements")
                index[k] = idx
                packed.append(prod)
                parent.append(head)
                gen_of.append(j)
            right[j].append(idx)
            if head == 0:
                gen_index[j] = idx
        head += 1
    right_arr = [np.array(r, dtype=np.int64) for r in right]
    return FiniteMatrixGroup(name, q, conductor, packer, packed, parent, gen_of, right_arr, gen_index)
