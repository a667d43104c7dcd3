"""Class functions on a finite matrix group and their decomposition into irreducibles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import Cyclotomic, parse
from .errors import CharacterDataError, ValidationError
from .groups import FiniteMatrixGroup


class ClassFunction:
    """Values of a class function, one per conjugacy class in canonical class order."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteMatrixGroup, values: Iterable[Cyclotomic | int | Fraction]):
        values = tuple(Cyclotomic.coerce(v) for v in values)
        if len(values) != group.num_classes:
            raise ValidationError(
                f"class function has {len(values)} values, group has {group.num_classes} classes"
            )
        self.group = group
        self.values = values

    @classmethod
    def constant(cls, group: FiniteMatrixGroup, value=1) -> ClassFunction:
        return cls(group, [value] * group.num_classes)

    def _check(self, other: ClassFunction) -> None:
        if other.group is not self.group:
            raise ValidationError("class functions live on different groups")

    def __getitem__(self, c: int) -> Cyclotomic:
        return self.values[c]

    def __len__(self) -> int:
        return len(self.values)

    def at(self, element: int) -> Cyclotomic:
        return self.values[self.group.class_of[element]]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> ClassFunction:
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, other) -> ClassFunction:
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [a * other for a in self.values])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ClassFunction:
        if n < 0:
            raise ValueError("negative tensor power")
        return ClassFunction(self.group, [a**n for a in self.values])

    def conjugate(self) -> ClassFunction:
        """Character of the dual representation."""
        return ClassFunction(self.group, [a.conjugate() for a in self.values])

    def galois(self, k: int) -> ClassFunction:
        return ClassFunction(self.group, [a.galois(k) for a in self.values])

    def inner(self, other: ClassFunction) -> Cyclotomic:
        return inner_product(self, other)

    def norm(self) -> int:
        return norm(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.group is self.group and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"ClassFunction([{', '.join(str(v) for v in self.values)}])"


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum over classes of size * conj(a) * b."""
    a._check(b)
    acc = Cyclotomic.rational(0)
    for size, x, y in zip(a.group.class_sizes, a.values, b.values):
        if not x.is_zero() and not y.is_zero():
            acc = acc + x.conjugate() * y * size
    return (acc / a.group.order).minimal()


def _as_int(value: Cyclotomic, what: str) -> int:
    if not value.is_integer():
        raise CharacterDataError(f"{what} = {value} is not an integer")
    return int(value.to_fraction())


def multiplicity(chi: ClassFunction, pi: ClassFunction) -> int:
    """<chi, pi> as an exact integer (raises if it is not one)."""
    return _as_int(inner_product(chi, pi), "inner product")


def norm(a: ClassFunction) -> int:
    n = _as_int(inner_product(a, a), "norm")
    if n < 0:
        raise CharacterDataError(f"negative norm {n}")
    return n


def pointwise(a: ClassFunction, b: ClassFunction | None = None, op: str = "tensor", n: int = 1) -> ClassFunction:
    if op == "tensor":
        return a * b
    if op == "conjugate":
        return a.conjugate()
    if op == "power":
        return a**n
    raise ValueError(f"unknown op {op!r}")


def power_map(group: FiniteMatrixGroup, k: int) -> list[int]:
    """Class index of g^k for g in each class."""
    out = []
    for rep in group.class_reps:
        x = 0
        for _ in range(k % group.class_orders[group.class_of[rep]]):
            x = group.multiply(x, rep)
        out.append(int(group.class_of[x]))
    return out


def adams(chi: ClassFunction, k: int) -> ClassFunction:
    """psi^k chi (g) = chi(g^k); a virtual character."""
    pm = power_map(chi.group, k)
    return ClassFunction(chi.group, [chi.values[c] for c in pm])


def defining_character(group: FiniteMatrixGroup) -> ClassFunction:
    """Character of the matrices themselves (trace at each class representative)."""
    return ClassFunction(group, group.class_traces)


@dataclass
class IrrepTable:
    group: FiniteMatrixGroup
    names: list[str]
    characters: list[ClassFunction]
    alignment: list[int] = field(default_factory=list)  # source column -> our class
    alignment_candidates: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        order = self.group.order
        degs = [_as_int(c.degree, f"degree of {n}") for n, c in zip(self.names, self.characters)]
        if any(d <= 0 for d in degs):
            raise CharacterDataError("irreducible degrees must be positive")
        if sum(d * d for d in degs) != order:
            raise CharacterDataError(f"sum of squared degrees {sum(d * d for d in degs)} != |G| = {order}")
        for (ni, a), (nj, b) in itertools.combinations_with_replacement(zip(self.names, self.characters), 2):
            expect = 1 if ni == nj else 0
            if inner_product(a, b) != expect:
                raise CharacterDataError(f"<{ni}, {nj}> != {expect}: table is not orthonormal")

    @property
    def degrees(self) -> list[int]:
        return [int(c.degree.to_fraction()) for c in self.characters]

    def __getitem__(self, name: str) -> ClassFunction:
        try:
            return self.characters[self.names.index(name)]
        except ValueError:
            raise KeyError(f"no irrep named {name!r}; have {', '.join(self.names)}") from None

    def __iter__(self):
        return iter(zip(self.names, self.characters))

    def __len__(self) -> int:
        return len(self.names)

    def trivial(self) -> ClassFunction:
        return ClassFunction.constant(self.group, 1)

    def multiplicities(self, a: ClassFunction) -> list[int]:
        return [multiplicity(chi, a) for chi in self.characters]

    def decompose(self, a: ClassFunction, virtual: bool = False) -> list[tuple[str, int]]:
        """Irreducible constituents of ``a`` with their multiplicities (nonzero only)."""
        mults = self.multiplicities(a)
        if not virtual and any(m < 0 for m in mults):
            raise CharacterDataError("negative multiplicity: not a character of this group")
        rebuilt = ClassFunction.constant(self.group, 0)
        for m, chi in zip(mults, self.characters):
            if m:
                rebuilt = rebuilt + chi * m
        if rebuilt != a:
            raise CharacterDataError("class function is not in the span of the irreducible table")
        return [(n, m) for n, m in zip(self.names, mults) if m]

    def name_of(self, a: ClassFunction) -> str:
        for n, chi in zip(self.names, self.characters):
            if chi == a:
                return n
        raise KeyError("class function is not an irreducible character of this table")


def decompose(a: ClassFunction, table: IrrepTable) -> list[tuple[str, int]]:
    return table.decompose(a)


def align_table(
    group: FiniteMatrixGroup,
    fingerprints: Sequence[tuple[int, int]],
    irreps: Sequence[tuple[str, Sequence[Cyclotomic | str]]],
    fundamental: str,
    max_candidates: int = 100_000,
) -> IrrepTable:
    """Reorder a character table given in foreign class order into ours.

    Columns are matched on (element order, class size, value of the
    defining character, which must equal the ``fundamental`` row).  Any
    remaining freedom is filtered by requiring integral decompositions of
    small tensor powers and Adams operations of the defining character;
    the first surviving alignment is used and the number of survivors is
    recorded.
    """
    names = [n for n, _ in irreps]
    cols = [[parse(v) if isinstance(v, str) else Cyclotomic.coerce(v) for v in vals] for _, vals in irreps]
    k = group.num_classes
    if len(fingerprints) != k or any(len(c) != k for c in cols):
        raise CharacterDataError(f"table has {len(fingerprints)} classes, group has {k}")
    if fundamental not in names:
        raise CharacterDataError(f"fundamental irrep {fundamental!r} not in table")
    f_ours = defining_character(group)
    f_row = cols[names.index(fundamental)]
    ours = group.class_fingerprints()
    options = []
    for j, fp in enumerate(fingerprints):
        opts = [c for c in range(k) if ours[c] == tuple(fp) and f_ours[c] == f_row[j]]
        if not opts:
            raise CharacterDataError(
                f"table column {j} {tuple(fp)} with defining value {f_row[j]} matches no class"
            )
        options.append(opts)

    tests = [f_ours**a * f_ours.conjugate() ** b for a in range(4) for b in range(4 - a) if a + b]
    tests += [adams(f_ours, p) for p in (2, 3, 5)]

    survivors: list[list[int]] = []
    seen = 0

    def consistent(perm: list[int]) -> bool:
        table_vals = [[None] * k for _ in names]
        for j, c in enumerate(perm):
            for r in range(len(names)):
                table_vals[r][c] = cols[r][j]
        chars = [ClassFunction(group, row) for row in table_vals]
        for t in tests:
            for chi in chars:
                ip = inner_product(chi, t)
                if not ip.is_integer():
                    return False
        return True

    def search(j: int, used: set[int], perm: list[int]) -> None:
        nonlocal seen
        if seen >= max_candidates:
            return
        if j == k:
            seen += 1
            if consistent(perm):
                survivors.append(list(perm))
            return
        for c in options[j]:
            if c not in used:
                used.add(c)
                perm.append(c)
                search(j + 1, used, perm)
                perm.pop()
                used.discard(c)

    search(0, set(), [])
    if not survivors:
        raise CharacterDataError("no class alignment makes the table consistent with the group")
    perm = survivors[0]
    chars = []
    for r in range(len(names)):
        vals = [None] * k
        for j, c in enumerate(perm):
            vals[c] = cols[r][j]
        chars.append(ClassFunction(group, vals))
    return IrrepTable(group, names, chars, alignment=perm, alignment_candidates=len(survivors))
