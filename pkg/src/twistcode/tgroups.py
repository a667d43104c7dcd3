"""Unitary and twisted unitary t-group decisions.

Both criteria are always evaluated:

1. the norm test ``||lam f^t|| == ||F^t||``;
2. the branching test ``<lam lam*, R|G> == 0`` for every ``R != 1`` in ``E_t``.

They are tied by the exact identity
``||lam f^t|| = m_1 + sum_{R != 1} m_R <lam lam*, R|G>`` (with ``m_1 = ||F^t||``),
which is asserted on every call.  A disagreement raises
:class:`InternalConsistencyError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .characters import ClassFunction, IrrepTable, inner_product, norm
from .errors import InternalConsistencyError, PreconditionError, ValidationError
from .lie import MAX_T, decompose_FFstar_power, haar_norm, restrict


@dataclass
class Criterion1:
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class BranchTerm:
    irrep: str
    label: str
    multiplicity: int
    value: int

    @property
    def passed(self) -> bool:
        return self.value == 0


@dataclass
class TGroupReport:
    group: str
    t: int
    twisted_by: str | None
    criterion1: Criterion1
    criterion2: list[BranchTerm] = field(default_factory=list)
    max_t: int | None = None

    @property
    def criterion2_passed(self) -> bool:
        return all(term.passed for term in self.criterion2)

    @property
    def verdict(self) -> bool:
        return self.criterion1.passed

    @property
    def first_violation(self) -> BranchTerm | None:
        return next((term for term in self.criterion2 if not term.passed), None)

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "t": self.t,
            "twisted_by": self.twisted_by,
            "criterion1": {"lhs": self.criterion1.lhs, "rhs": self.criterion1.rhs, "pass": self.criterion1.passed},
            "criterion2": [
                {"R": term.irrep, "weight": term.label, "m_R": term.multiplicity, "value": term.value, "pass": term.passed}
                for term in self.criterion2
            ],
            "verdict": self.verdict,
            "max_t": self.max_t,
        }


def weight_check(lam: ClassFunction) -> Fraction:
    """Total weight sum_g |lam(g)|^2 / |G|; equals 1 exactly iff lam is irreducible."""
    return inner_product(lam, lam).to_fraction()


def _require_irreducible(lam: ClassFunction) -> None:
    w = weight_check(lam)
    if w != 1:
        raise PreconditionError(f"twist must be irreducible; its weights sum to {w}")


def _evaluate(group_name: str, f: ClassFunction, lam: ClassFunction, t: int, twisted_by: str | None) -> TGroupReport:
    if not 0 <= t <= MAX_T:
        raise ValidationError(f"t must lie in 0..{MAX_T}")
    q = f.degree.to_fraction()
    if q.denominator != 1 or q < 2:
        raise PreconditionError("f must be the character of a degree >= 2 embedding")
    q = int(q)
    group = f.group
    rhs = haar_norm(q, t)
    lhs = norm(lam * f**t)
    gram = lam * lam.conjugate()
    terms = []
    m_trivial = 0
    for R, m in (decompose_FFstar_power(q, t) if t else ()):
        if R.is_trivial():
            m_trivial = m
            continue
        value = int(inner_product(gram, restrict(R, group)).to_fraction())
        terms.append(BranchTerm(R.display_name, R.label, m, value))
    if t == 0:
        m_trivial = 1
    report = TGroupReport(group_name, t, twisted_by, Criterion1(lhs, rhs), terms)
    if m_trivial != rhs or lhs != m_trivial + sum(term.multiplicity * term.value for term in terms):
        raise InternalConsistencyError(f"norm identity fails for {group_name} at t={t}")
    if report.criterion1.passed != report.criterion2_passed:
        raise InternalConsistencyError(
            f"criteria disagree for {group_name}, t={t}: norm test {report.criterion1.passed}, "
            f"branching test {report.criterion2_passed}"
        )
    return report


def is_unitary_tgroup(f: ClassFunction, t: int, group_name: str = "G") -> TGroupReport:
    return _evaluate(group_name, f, ClassFunction.constant(f.group, 1), t, None)


def is_twisted_tgroup(f: ClassFunction, lam: ClassFunction, t: int, group_name: str = "G",
                      lam_name: str = "lambda") -> TGroupReport:
    _require_irreducible(lam)
    report = _evaluate(group_name, f, lam, t, lam_name)
    if report.verdict and not is_unitary_tgroup(f, t, group_name).verdict:
        raise InternalConsistencyError(f"{lam_name}-twisted {t}-group that is not a plain {t}-group")
    return report


def max_t(f: ClassFunction, lam: ClassFunction | None = None, cap: int = MAX_T) -> int:
    """Largest t <= cap passing the (twisted) test; 0 if t = 1 already fails."""
    if not 0 <= cap <= MAX_T:
        raise ValidationError(f"cap must lie in 0..{MAX_T}")
    if lam is None:
        lam = ClassFunction.constant(f.group, 1)
    else:
        _require_irreducible(lam)
    best = 0
    for t in range(1, cap + 1):
        if not _evaluate("G", f, lam, t, None).verdict:
            break
        best = t
    return best


def scan(f: ClassFunction, table: IrrepTable, lam_name: str | None, cap: int = MAX_T,
         group_name: str = "G") -> list[TGroupReport]:
    """Reports for t = 1 .. first failure (inclusive), each carrying the resulting max_t."""
    lam = table[lam_name] if lam_name else None
    reports = []
    for t in range(1, cap + 1):
        rep = (is_twisted_tgroup(f, lam, t, group_name, lam_name) if lam is not None
               else is_unitary_tgroup(f, t, group_name))
        reports.append(rep)
        if not rep.verdict:
            break
    best = sum(1 for r in reports if r.verdict)
    for r in reports:
        r.max_t = best
    return reports
