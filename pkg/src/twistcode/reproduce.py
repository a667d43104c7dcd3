"""Published reference values and the twelve acceptance checks built on them."""

from __future__ import annotations

import time
import traceback
from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .characters import ClassFunction, multiplicity, norm
from .codes import build_code, isotypic_projector, kl_check, measure_distance, transversal_check
from .config import Config
from .data import load_bundled
from .lie import UIrrep, branch, decompose_FFstar_power, haar_norm
from .tgroups import is_twisted_tgroup, is_unitary_tgroup, max_t

CLASS_SIZES = {
    "2I": [1, 12, 12, 20, 30, 20, 12, 1, 12],
    "sigma360": [1, 1, 1, 45, 45, 45, 120, 120, 90, 90, 90, 72, 72, 72, 72, 72, 72],
}
GROUP_ORDERS = {"2I": 120, "sigma360": 1080}

NORM_LADDERS = {
    ("2I", "chi3"): [1, 2, 6],
    ("sigma360", "chi3"): [1, 3],
    ("sigma360", "chi4"): [1, 3],
}

HAAR_NORMS = {(2, 1): 1, (2, 2): 2, (2, 3): 5, (2, 4): 14, (2, 5): 42, (3, 3): 6}

FFSTAR = {
    (2, 1): {"1": 1, "3": 1},
    (2, 2): {"1": 2, "3": 3, "5": 1},
    (2, 3): {"1": 5, "3": 9, "5": 5, "7": 1},
    (3, 1): {"1": 1, "8": 1},
    (3, 2): {"1": 2, "8": 4, "10": 1, "10bar": 1, "27": 1},
    (3, 3): {"1": 6, "8": 17, "10": 7, "10bar": 7, "27": 9, "35": 2, "35bar": 2, "64": 1},
    (3, 4): {"1": 23, "8": 80, "10": 42, "10bar": 42, "27": 63, "28": 2, "28bar": 2, "35": 23, "35bar": 23,
             "64": 16, "81": 3, "81bar": 3, "125": 1},
}

# U(2) irrep of dimension 2k+1 has weight (k, -k)
BRANCH_2I = {
    1: {"chi1": 1},
    3: {"chi5": 1},
    5: {"chi8": 1},
    7: {"chi4": 1, "chi6": 1},
    9: {"chi6": 1, "chi8": 1},
    11: {"chi4": 1, "chi5": 1, "chi8": 1},
    13: {"chi1": 1, "chi5": 1, "chi6": 1, "chi8": 1},
    15: {"chi4": 1, "chi5": 1, "chi6": 1, "chi8": 1},
    17: {"chi4": 1, "chi6": 1, "chi8": 2},
    19: {"chi4": 1, "chi5": 1, "chi6": 2, "chi8": 1},
    21: {"chi1": 1, "chi4": 1, "chi5": 1, "chi6": 1, "chi8": 2},
}

_S4_27 = {"chi6": 1, "chi7": 1, "chi11": 1, "chi12": 1}
_S4_35 = {"chi10": 1, "chi11": 1, "chi12": 1, "chi15": 1}
_S4_28 = {"chi1": 1, "chi6": 1, "chi7": 1, "chi10": 1, "chi12": 1}
_S4_81 = {"chi6": 1, "chi7": 1, "chi10": 2, "chi11": 2, "chi12": 1, "chi15": 3}
BRANCH_SIGMA = {
    "1": {"chi1": 1},
    "8": {"chi10": 1},
    "10": {"chi15": 1},
    "10bar": {"chi15": 1},
    "27": _S4_27,
    "35": _S4_35,
    "35bar": _S4_35,
    "64": {"chi6": 1, "chi7": 1, "chi10": 1, "chi11": 1, "chi12": 2, "chi15": 2},
    "28": _S4_28,
    "28bar": _S4_28,
    "81": _S4_81,
    "81bar": _S4_81,
    "125": {"chi1": 1, "chi6": 2, "chi7": 2, "chi10": 3, "chi11": 3, "chi12": 4, "chi15": 2},
}

MULTIPLICITIES = {
    ("2I", "chi3"): {7: 1, 9: 8, 11: 44, 13: 209, 15: 924, 17: 3928, 19: 16321, 21: 66880},
    ("sigma360", "chi3"): {7: 15, 10: 477, 13: 13222, 16: 358450, 19: 9684357},
    ("sigma360", "chi4"): {5: 1, 8: 49, 11: 1452, 14: 39754, 17: 1075727, 20: 29054667},
}


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title}: {self.detail} ({self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def _group_structure():
    bad = []
    for name, sizes in CLASS_SIZES.items():
        g = load_bundled(name).group
        if g.order != GROUP_ORDERS[name] or Counter(g.class_sizes) != Counter(sizes):
            bad.append(f"{name}: |G|={g.order}, sizes={g.class_sizes}")
    return not bad, "; ".join(bad) or "|2I| = 120, |Sigma(360phi)| = 1080, class sizes match"


def _norm_ladder(keys):
    got = {}
    for name, lam in keys:
        b = load_bundled(name)
        got[(name, lam)] = [norm(b.table[lam] * b.f**k) for k in range(1, len(NORM_LADDERS[(name, lam)]) + 1)]
    ok = all(got[k] == NORM_LADDERS[k] for k in keys)
    return ok, ", ".join(f"{n}/{lam}: {v}" for (n, lam), v in got.items())


def _haar():
    got = {k: haar_norm(*k) for k in HAAR_NORMS}
    ok = got == HAAR_NORMS
    # ||F^t|| is the trivial multiplicity in (F x F*)^t, and sum m_R^2 over E_t equals ||F^{2t}||
    for (q, t) in HAAR_NORMS:
        triv = dict((r.display_name, m) for r, m in decompose_FFstar_power(q, t))["1"]
        ok &= triv == haar_norm(q, t)
    for q, t in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (3, 4)):
        ok &= sum(m * m for _, m in decompose_FFstar_power(q, t)) == haar_norm(q, 2 * t)
    return ok, f"{[got[(2, t)] for t in range(1, 6)]}, q=3,t=3 -> {got[(3, 3)]}; m_1(E_t) and sum m_R^2 = ||F^2t|| agree"


def _tgroups():
    two_i, sig = load_bundled("2I"), load_bundled("sigma360")
    checks = {
        "2I unitary 5-group": is_unitary_tgroup(two_i.f, 5).verdict,
        "2I not 6-group": not is_unitary_tgroup(two_i.f, 6).verdict,
        "2I max_t = 5": max_t(two_i.f) == 5,
        "2I chi3-twisted 2-group": is_twisted_tgroup(two_i.f, two_i.table["chi3"], 2).verdict,
        "2I chi3 not twisted 3-group": not is_twisted_tgroup(two_i.f, two_i.table["chi3"], 3).verdict,
        "Sigma unitary 3-group": is_unitary_tgroup(sig.f, 3).verdict,
        "Sigma not 4-group": not is_unitary_tgroup(sig.f, 4).verdict,
        "Sigma chi3-twisted 1-group": is_twisted_tgroup(sig.f, sig.table["chi3"], 1).verdict,
        "Sigma chi4-twisted 1-group": is_twisted_tgroup(sig.f, sig.table["chi4"], 1).verdict,
        "Sigma chi3 not twisted 2-group": not is_twisted_tgroup(sig.f, sig.table["chi3"], 2).verdict,
        "Sigma chi4 not twisted 2-group": not is_twisted_tgroup(sig.f, sig.table["chi4"], 2).verdict,
    }
    failed = [k for k, v in checks.items() if not v]
    return not failed, "failed: " + ", ".join(failed) if failed else f"{len(checks)} verdicts correct, criteria agree"


def _ffstar():
    bad = []
    for (q, t), want in FFSTAR.items():
        got = {r.display_name: m for r, m in decompose_FFstar_power(q, t)}
        if got != want:
            bad.append(f"q={q},t={t}: {got}")
    return not bad, "; ".join(bad) or f"{len(FFSTAR)} decompositions exact (incl. 125:1 at q=3,t=4)"


def _branching():
    bad = []
    b = load_bundled("2I")
    for dim, want in BRANCH_2I.items():
        k = (dim - 1) // 2
        got = dict(branch(UIrrep.from_weight((k, -k)), b.group, b.table))
        if got != want:
            bad.append(f"2I {dim}: {got}")
    s = load_bundled("sigma360")
    for r, _ in decompose_FFstar_power(3, 4):
        got = dict(branch(r, s.group, s.table))
        if got != BRANCH_SIGMA[r.display_name]:
            bad.append(f"Sigma {r.display_name}: {got}")
    return not bad, "; ".join(bad) or f"{len(BRANCH_2I)} rows of U(2)->2I and {len(BRANCH_SIGMA)} rows of U(3)->Sigma"


def _multiplicities():
    bad = []
    for (name, lam), want in MULTIPLICITIES.items():
        b = load_bundled(name)
        chi, f = b.table[lam], b.f
        top = max(want)
        got = {n: m for n in range(1, top + 1) if (m := multiplicity(chi, f**n))}
        if got != want:
            bad.append(f"{name}/{lam}: {got}")
    return not bad, "; ".join(bad) or "2I chi3 n<=21, Sigma chi3 n<=19, Sigma chi4 n<=20 (29054667)"


def _code_2i(config: Config):
    b = load_bundled("2I")
    proj = isotypic_projector(b.group, b.table["chi3"], 7)
    code = build_code(b, "chi3", 7, seed=config.seed, config=config)
    v = code.isometry
    kl = kl_check(code, 2, config.kl_tol)
    dist = measure_distance(code, 3, config.kl_tol)
    tr = transversal_check(code)
    checks = [
        abs(np.trace(proj).real - 2) <= 1e-9,
        code.hom_dimension == 1,
        np.linalg.norm(v.conj().T @ v - np.eye(2)) <= 1e-9,
        kl.errors_checked == 210 and kl.verdict,
        dist.exact and dist.d == 3,
        len(tr.entries) == 2 and tr.max_deviation < 1e-8,
    ]
    detail = (f"trace(P)={np.trace(proj).real:.12f}, hom={code.hom_dimension}, KL {kl.errors_checked} errors "
              f"max residual {kl.max_residual:.1e}, d={dist}, transversal {tr.max_deviation:.1e}")
    return all(checks), detail


def _code_sigma(config: Config):
    b = load_bundled("sigma360")
    code = build_code(b, "chi4", 5, seed=config.seed, config=config)
    kl = kl_check(code, 1, config.kl_tol)
    dist = measure_distance(code, 2, config.kl_tol)
    tr = transversal_check(code)
    checks = [
        code.hom_dimension == 1,
        code.isometry.shape == (243, 3),
        kl.errors_checked == 40 and kl.verdict,
        dist.exact and dist.d == 2,
        tr.max_deviation < 1e-8,
    ]
    detail = (f"hom={code.hom_dimension}, KL {kl.errors_checked} errors max residual {kl.max_residual:.1e}, "
              f"d={dist}, transversal {tr.max_deviation:.1e}")
    return all(checks), detail


def _moduli(config: Config):
    b = load_bundled("2I")
    seeds = (config.seed, config.seed + 1)
    codes = [build_code(b, "chi3", 9, seed=s, config=config) for s in seeds]
    dists = [measure_distance(c, 3, config.kl_tol) for c in codes]
    gap = float(np.linalg.norm(codes[0].projector() - codes[1].projector()))
    checks = [
        all(c.hom_dimension == 8 for c in codes),
        gap > 1e-6,
        all(d.d >= 3 for d in dists),
        len({(c.n, c.q, c.logical_dim, d.d, d.exact) for c, d in zip(codes, dists)}) == 1,
    ]
    return all(checks), (f"hom={codes[0].hom_dimension} (CP^{codes[0].hom_dimension - 1}), seeds {seeds} "
                         f"images differ by {gap:.3f}, d = {dists[0]} and {dists[1]}")


def _properties(config: Config):
    notes = []
    ok = True
    # criterion equivalence: the checker raises on any disagreement
    combos = 0
    for name in ("2I", "sigma360"):
        b = load_bundled(name)
        for lam in b.table.names:
            for t in range(1, 5):
                is_twisted_tgroup(b.f, b.table[lam], t)
                combos += 1
    notes.append(f"{combos} (G, lam, t) combos agree")
    # reconstruction of random products
    rng = np.random.default_rng(config.seed)
    for i in range(100):
        b = load_bundled(("2I", "sigma360")[i % 2])
        names = b.table.names
        a, c = rng.choice(len(names), 2)
        prod = b.table[names[a]] * b.table[names[c]].conjugate()
        parts = b.table.decompose(prod)
        rebuilt = ClassFunction.constant(b.group, 0)
        for nm, m in parts:
            rebuilt = rebuilt + b.table[nm] * m
        ok &= rebuilt == prod
    notes.append("100 products rebuilt")
    # c_E = 0 whenever the error has no U(q)-invariant part
    worst = 0.0
    for name, lam, n, t in (("2I", "chi3", 7, 2), ("sigma360", "chi4", 5, 1)):
        code = build_code(load_bundled(name), lam, n, seed=config.seed, config=config)
        for e in kl_check(code, t, config.kl_tol).entries:
            if e.trivial_norm < 1e-9:
                worst = max(worst, abs(e.c_e))
    ok &= worst < 1e-9
    notes.append(f"max |c_E| on nontrivial errors {worst:.1e}")
    return ok, ", ".join(notes)


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "group structure", lambda cfg: _group_structure()),
    (2, "norm ladder 2I", lambda cfg: _norm_ladder([("2I", "chi3")])),
    (3, "norm ladder Sigma(360phi)", lambda cfg: _norm_ladder([("sigma360", "chi3"), ("sigma360", "chi4")])),
    (4, "Haar norms", lambda cfg: _haar()),
    (5, "t-group verdicts", lambda cfg: _tgroups()),
    (6, "U(q) decompositions", lambda cfg: _ffstar()),
    (7, "branching tables", lambda cfg: _branching()),
    (8, "multiplicity tables", lambda cfg: _multiplicities()),
    (9, "7-qubit 2I chi3 code", _code_2i),
    (10, "5-qutrit Sigma chi4 code", _code_sigma),
    (11, "moduli of 9-qubit codes", _moduli),
    (12, "property suite", _properties),
]


def run_criterion(number: int, config: Config | None = None) -> CriterionResult:
    config = config or Config()
    _, title, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        passed, detail = fn(config)
    except Exception as exc:  # a crash is a failed criterion, reported with its cause
        passed, detail = False, f"{type(exc).__name__}: {exc}"
        detail += " | " + traceback.format_exc(limit=1).strip().splitlines()[-1]
    return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - start)


def run_all(numbers=None, config: Config | None = None) -> list[CriterionResult]:
    numbers = numbers or [n for n, _, _ in CRITERIA]
    return [run_criterion(n, config) for n in numbers]
