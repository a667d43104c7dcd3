"""Codes that transform in an irrep lam of G inside f^n, and their verification.

Matrix-level work is double precision.  Every floating result is checked
against an exact invariant (traces against character multiplicities, hom
dimensions against <lam, f^n>).

Conventions: ``X|j> = |j+1 mod q>``, ``Z|j> = w^j |j>`` with ``w = exp(2 pi i/q)``,
and the weight of an error is the number of non-identity tensor factors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .characters import ClassFunction, multiplicity
from .config import DIM_CAP_LIMIT, Config
from .data import GroupBundle
from .errors import CapExceededError, NumericalFailure, TwistSelectionError, ValidationError
from .groups import CycMatrix, FiniteMatrixGroup, embed_matrix

SCHEMA_VERSION = "1"


# -- tensor-power actions --------------------------------------------------


def _check_dim(q: int, n: int, dim_cap: int) -> None:
    if dim_cap > DIM_CAP_LIMIT:
        raise CapExceededError(f"dimension cap may not exceed {DIM_CAP_LIMIT}")
    if q**n > dim_cap:
        raise CapExceededError(f"q^n = {q}^{n} = {q**n} exceeds the dimension cap {dim_cap}")


def apply_local(op: np.ndarray, site: int, psi: np.ndarray, n: int) -> np.ndarray:
    """Apply a single-qudit operator at ``site`` to the columns of ``psi`` (shape q^n x k)."""
    q = op.shape[0]
    k = psi.shape[1]
    view = psi.reshape(q**site, q, q ** (n - site - 1) * k)
    return np.einsum("ab,ibj->iaj", op, view).reshape(q**n, k)


def apply_tensor_power(u: np.ndarray, psi: np.ndarray, n: int) -> np.ndarray:
    """u^{(x) n} applied to the columns of ``psi``."""
    for site in range(n):
        psi = apply_local(u, site, psi, n)
    return psi


def tensor_power(u: np.ndarray, n: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        out = np.kron(out, u)
    return out


def isotypic_projector(group: FiniteMatrixGroup, lam: ClassFunction, n: int,
                       dim_cap: int = Config.dim_cap, tol: float = Config.projector_tol) -> np.ndarray:
    """(|lam|/|G|) sum_g conj(lam(g)) f(g)^{(x) n}, checked against the exact multiplicity."""
    q = group.degree
    _check_dim(q, n, dim_cap)
    weights = np.array([complex(lam.at(i)).conjugate() for i in range(group.order)])
    deg = int(lam.degree.to_fraction())
    mats = group.numeric
    proj = np.zeros((q**n, q**n), dtype=complex)
    for i in range(group.order):
        if weights[i] != 0:
            proj += weights[i] * tensor_power(mats[i], n)
    proj *= deg / group.order
    f = ClassFunction(group, group.class_traces)
    expected = multiplicity(lam, f**n) * deg
    if abs(np.trace(proj).real - expected) > tol * max(1, expected) * 10:
        raise NumericalFailure(f"trace(P) = {np.trace(proj).real:.12g}, expected {expected}")
    if np.linalg.norm(proj - proj.conj().T) > tol * q**n or np.linalg.norm(proj @ proj - proj) > tol * q**n:
        raise NumericalFailure("isotypic projector is not an orthogonal projector")
    return proj


# -- Galois-twisted representations -------------------------------------------


def galois_twist_rep(matrices: list[CycMatrix], k: int) -> list[CycMatrix]:
    """Entrywise Galois automorphism zeta -> zeta^k."""
    return [tuple(tuple(x.galois(k) for x in row) for row in m) for m in matrices]


def twist_candidates(bundle: GroupBundle, lam_name: str) -> list[int]:
    target = bundle.table[lam_name]
    f = bundle.f
    n = bundle.group.conductor
    return [k for k in range(1, max(n, 2)) if math.gcd(k, n) == 1 and f.galois(k) == target]


def find_twist(bundle: GroupBundle, lam_name: str) -> int:
    """Smallest k with sigma_k(f) = lam as characters."""
    found = twist_candidates(bundle, lam_name)
    if not found:
        n = bundle.group.conductor
        reached = sorted({bundle.table.name_of(bundle.f.galois(k)) for k in range(1, max(n, 2)) if math.gcd(k, n) == 1})
        raise TwistSelectionError(
            f"{lam_name} is not a Galois conjugate of the defining representation; "
            f"automorphisms of Q(zeta_{n}) reach {', '.join(reached)}"
        )
    return found[0]


@dataclass
class TwistedRep:
    name: str
    k: int
    numeric: np.ndarray  # (|G|, d, d)

    @property
    def degree(self) -> int:
        return self.numeric.shape[1]


def lambda_rep(bundle: GroupBundle, lam_name: str) -> TwistedRep:
    group = bundle.group
    k = find_twist(bundle, lam_name)
    cache = group._cache.setdefault("twisted", {})
    if k not in cache:
        mats = galois_twist_rep([group.matrix(i) for i in range(group.order)], k)
        cache[k] = np.stack([embed_matrix(m) for m in mats])
    return TwistedRep(lam_name, k, cache[k])


# -- equivariant maps and codes ------------------------------------------------


def _average(group: FiniteMatrixGroup, lam: np.ndarray, probes: np.ndarray, n: int) -> np.ndarray:
    """(1/|G|) sum_g f(g)^n X lam(g)^-1 for a stack of probes X (p, q^n, d)."""
    p, dim, d = probes.shape
    flat = probes.transpose(1, 0, 2).reshape(dim, p * d)
    acc = np.zeros((dim, p, d), dtype=complex)
    for i in range(group.order):
        moved = apply_tensor_power(group.numeric[i], flat, n).reshape(dim, p, d)
        acc += moved @ lam[i].conj().T
    return (acc / group.order).transpose(1, 0, 2)


def equivariance_error(group: FiniteMatrixGroup, lam: np.ndarray, t: np.ndarray, n: int,
                       elements=None) -> float:
    elements = group.generators if elements is None else elements
    return max(
        float(np.linalg.norm(apply_tensor_power(group.numeric[g], t, n) - t @ lam[g])) for g in elements
    )


def hom_basis(bundle: GroupBundle, rep: TwistedRep, n: int, seed: int = 0,
              dim_cap: int = Config.dim_cap, tol: float = Config.equivariance_tol) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of Hom_G(lam, f^n) from seeded random probes."""
    group = bundle.group
    q, d = group.degree, rep.degree
    _check_dim(q, n, dim_cap)
    target = multiplicity(bundle.table[rep.name], bundle.f**n)
    rng = np.random.default_rng(seed)
    basis: list[np.ndarray] = []
    used, budget = 0, d * q**n
    while len(basis) < target:
        if used >= budget:
            raise NumericalFailure(f"only {len(basis)} of {target} independent maps after {used} probes")
        batch = min(target - len(basis), budget - used)
        probes = rng.standard_normal((batch, q**n, d)) + 1j * rng.standard_normal((batch, q**n, d))
        used += batch
        for t in _average(group, rep.numeric, probes, n):
            scale = np.linalg.norm(t)
            for _ in range(2):
                for b in basis:
                    t = t - np.vdot(b, t) * b
            if np.linalg.norm(t) > 1e-8 * scale:
                basis.append(t / np.linalg.norm(t))
    for t in basis:
        if equivariance_error(group, rep.numeric, t, n) > tol:
            raise NumericalFailure("averaged map is not equivariant")
    return basis


@dataclass
class CodeSpace:
    n: int
    q: int
    logical_dim: int
    isometry: np.ndarray
    lambda_name: str
    group_name: str
    seed: int
    twist_k: int
    hom_dimension: int
    group: FiniteMatrixGroup = field(repr=False)
    lam: np.ndarray = field(repr=False)

    def projector(self) -> np.ndarray:
        return self.isometry @ self.isometry.conj().T

    def to_dict(self) -> dict:
        v = self.isometry
        return {
            "schema_version": SCHEMA_VERSION,
            "group": self.group_name,
            "n": self.n,
            "q": self.q,
            "lambda_name": self.lambda_name,
            "logical_dim": self.logical_dim,
            "seed": self.seed,
            "twist_k": self.twist_k,
            "hom_dimension": self.hom_dimension,
            "shape": list(v.shape),
            "isometry": [[float(x.real), float(x.imag)] for x in v.reshape(-1)],
        }


def code_from_hom(t: np.ndarray, group: FiniteMatrixGroup, rep: TwistedRep, n: int, *, group_name: str = "G",
                  seed: int = 0, hom_dimension: int = 1, tol: float = Config.projector_tol,
                  eq_tol: float = Config.equivariance_tol) -> CodeSpace:
    """Codeword isometry spanning the image of an equivariant map.

    Uses the polar factor of ``t``.  By Schur's lemma t^dagger t is scalar, so
    the polar factor is t rescaled and stays equivariant; an unpivoted QR would
    multiply columns by unrelated phases.
    """
    if np.linalg.norm(t) < 1e-12:
        raise NumericalFailure("equivariant map is numerically zero")
    u, s, wh = np.linalg.svd(t, full_matrices=False)
    if (s.max() - s.min()) > 1e-6 * s.max():
        raise NumericalFailure(f"singular values {s} are not all equal: map is not equivariant")
    v = u @ wh
    if np.linalg.norm(v.conj().T @ v - np.eye(v.shape[1])) > tol:
        raise NumericalFailure("isometry columns are not orthonormal")
    if equivariance_error(group, rep.numeric, v, n) > eq_tol:
        raise NumericalFailure("code space does not transform in lambda")
    return CodeSpace(n, group.degree, v.shape[1], v, rep.name, group_name, seed, rep.k, hom_dimension,
                     group, rep.numeric)


def build_code(bundle: GroupBundle, lam_name: str, n: int, seed: int = 0,
               config: Config | None = None) -> CodeSpace:
    config = config or Config()
    rep = lambda_rep(bundle, lam_name)
    basis = hom_basis(bundle, rep, n, seed, config.dim_cap, config.equivariance_tol)
    if not basis:
        raise ValidationError(f"{lam_name} does not occur in f^{n}: no code")
    return code_from_hom(basis[0], bundle.group, rep, n, group_name=bundle.name, seed=seed,
                         hom_dimension=len(basis), tol=config.projector_tol, eq_tol=config.equivariance_tol)


# -- errors and Knill-Laflamme ------------------------------------------------


@lru_cache(maxsize=None)
def pauli(q: int, a: int, b: int) -> np.ndarray:
    x = np.roll(np.eye(q), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(q) / q))
    return np.linalg.matrix_power(x, a % q) @ np.linalg.matrix_power(z, b % q)


@dataclass(frozen=True)
class ErrorOperator:
    support: tuple[int, ...]
    labels: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.support) != len(self.labels) or len(set(self.support)) != len(self.support):
            raise ValidationError("support and labels must match, with distinct sites")
        if any(a == 0 and b == 0 for a, b in self.labels):
            raise ValidationError("identity factor on a supported site")

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def name(self) -> str:
        if not self.support:
            return "I"
        parts = []
        for site, (a, b) in zip(self.support, self.labels):
            s = ("X" if a == 1 else f"X^{a}" if a else "") + ("Z" if b == 1 else f"Z^{b}" if b else "")
            parts.append(f"{s}@{site}")
        return " ".join(parts)

    def apply(self, psi: np.ndarray, n: int, q: int) -> np.ndarray:
        for site, (a, b) in zip(self.support, self.labels):
            psi = apply_local(pauli(q, a, b), site, psi, n)
        return psi

    def local_matrix(self, q: int) -> np.ndarray:
        out = np.ones((1, 1), dtype=complex)
        for a, b in self.labels:
            out = np.kron(out, pauli(q, a, b))
        return out


def enumerate_errors(n: int, q: int, weight: int):
    local = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
    for support in itertools.combinations(range(n), weight):
        for labels in itertools.product(local, repeat=weight):
            yield ErrorOperator(support, labels)


def count_errors(n: int, q: int, weight: int) -> int:
    return math.comb(n, weight) * (q * q - 1) ** weight


@lru_cache(maxsize=None)
def _permutation_frame(q: int, w: int):
    perms = []
    dim = q**w
    for perm in itertools.permutations(range(w)):
        m = np.zeros((dim, dim))
        for idx in itertools.product(range(q), repeat=w):
            src = np.ravel_multi_index(idx, (q,) * w)
            dst = np.ravel_multi_index(tuple(idx[perm[i]] for i in range(w)), (q,) * w)
            m[dst, src] = 1
        perms.append(m)
    stack = np.stack(perms)
    gram = np.einsum("aij,bij->ab", stack, stack)
    return stack, np.linalg.pinv(gram)


def trivial_component_norm(error: ErrorOperator, q: int) -> float:
    """Norm of the U(q)-invariant part of the error (its Haar twirl under u^{(x) n}).

    The twirl of a local operator is its projection onto the span of site
    permutations of its support.
    """
    if error.weight == 0:
        return 1.0
    stack, gram_inv = _permutation_frame(q, error.weight)
    e = error.local_matrix(q)
    coeffs = gram_inv @ np.einsum("aij,ij->a", stack, e)
    return float(np.linalg.norm(np.einsum("a,aij->ij", coeffs, stack)))


@dataclass
class KLEntry:
    error: ErrorOperator
    c_e: complex
    residual: float
    trivial_norm: float

    @property
    def weight(self) -> int:
        return self.error.weight


@dataclass
class KLReport:
    t_checked: int
    tolerance: float
    entries: list[KLEntry]

    @property
    def verdict(self) -> bool:
        return all(e.residual <= self.tolerance for e in self.entries)

    @property
    def errors_checked(self) -> int:
        return len(self.entries)

    @property
    def max_residual(self) -> float:
        return max((e.residual for e in self.entries), default=0.0)

    def violations(self) -> list[KLEntry]:
        return [e for e in self.entries if e.residual > self.tolerance]

    def to_dict(self, include_entries: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "t_checked": self.t_checked,
            "tolerance": self.tolerance,
            "errors_checked": self.errors_checked,
            "max_residual": self.max_residual,
            "verdict": self.verdict,
        }
        if include_entries:
            out["entries"] = [
                {"error": e.error.name, "weight": e.weight, "c_E": [e.c_e.real, e.c_e.imag],
                 "residual": e.residual, "trivial_norm": e.trivial_norm}
                for e in self.entries
            ]
        return out


def kl_entry(code: CodeSpace, error: ErrorOperator) -> KLEntry:
    v = code.isometry
    m = v.conj().T @ error.apply(v, code.n, code.q)
    c = complex(np.trace(m) / code.logical_dim)
    resid = float(np.linalg.norm(m - c * np.eye(code.logical_dim)))
    return KLEntry(error, c, resid, trivial_component_norm(error, code.q))


def kl_check(code: CodeSpace, t: int, tol: float = Config.kl_tol) -> KLReport:
    """Knill-Laflamme over every generalized Pauli of weight 1..t."""
    if t < 1:
        raise ValidationError("t must be at least 1")
    entries = [kl_entry(code, e) for w in range(1, t + 1) for e in enumerate_errors(code.n, code.q, w)]
    return KLReport(t, tol, entries)


@dataclass
class DistanceResult:
    d: int
    exact: bool
    errors_checked: int
    witness: KLEntry | None

    def __str__(self) -> str:
        return str(self.d) if self.exact else f">= {self.d}"


def measure_distance(code: CodeSpace, cap: int = Config.distance_cap, tol: float = Config.kl_tol) -> DistanceResult:
    """Smallest weight w <= cap with a KL violation (d = w); otherwise a lower bound cap + 1."""
    if not 1 <= cap <= 4:
        raise ValidationError("distance cap must lie in 1..4")
    checked = 0
    for w in range(1, cap + 1):
        for e in enumerate_errors(code.n, code.q, w):
            entry = kl_entry(code, e)
            checked += 1
            if entry.residual > tol:
                return DistanceResult(w, True, checked, entry)
    return DistanceResult(cap + 1, False, checked, None)


# -- transversality ------------------------------------------------------------


@dataclass
class TransversalEntry:
    element: int
    logical_deviation: float
    commutator_deviation: float
    phase_only: bool


@dataclass
class TransversalReport:
    entries: list[TransversalEntry]

    @property
    def max_deviation(self) -> float:
        return max((max(e.logical_deviation, e.commutator_deviation) for e in self.entries), default=0.0)

    def passed(self, tol: float = Config.equivariance_tol) -> bool:
        return self.max_deviation <= tol


def transversal_check(code: CodeSpace, elements=None) -> TransversalReport:
    """Does g^{(x) n} act on the code as lam(g)?  Defaults to the group generators."""
    group = code.group
    elements = group.generators if elements is None else elements
    v = code.isometry
    entries = []
    for g in elements:
        a = apply_tensor_power(group.numeric[g], v, code.n)
        b = apply_tensor_power(group.numeric[group.inverse_map[g]], v, code.n)
        logical = v.conj().T @ a
        dev = float(np.linalg.norm(logical - code.lam[g]))
        # [g, P] splits into the blocks (1-P) g P and P g (1-P); each has the norm of a q^n x k residual
        comm = float(np.hypot(np.linalg.norm(a - v @ logical), np.linalg.norm(b - v @ (v.conj().T @ b))))
        overlap = np.trace(code.lam[g].conj().T @ logical)
        phase = overlap / abs(overlap) if abs(overlap) > 1e-12 else 1.0
        phase_only = dev > 1e-8 and np.linalg.norm(logical - phase * code.lam[g]) <= 1e-8
        entries.append(TransversalEntry(int(g), dev, comm, bool(phase_only)))
    return TransversalReport(entries)
