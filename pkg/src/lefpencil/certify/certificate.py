"""Certificate assembly: runs the stages in order and derives the verdict."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field

from .. import __version__
from ..ellcurve import CoverDatum
from ..sections import SeriesDivisionError, build_fiber0_data, g_invariance_check
from ..multipoly import NotDivisible
from .config import RunConfig
from .ledger import euler_ledger
from .pipeline import (
    Backend, BadPrimeSuspected, base_locus_smoothness, base_points, critical_scheme,
    cover_validation, eta_definedness, parameter_eliminant,
)

__all__ = ["Certificate", "run_certificate", "STAGES", "EXIT_PASS", "EXIT_USAGE", "EXIT_FAILED",
           "EXIT_INCONCLUSIVE"]

log = logging.getLogger("lefpencil")

EXIT_PASS, EXIT_USAGE, EXIT_FAILED, EXIT_INCONCLUSIVE = 0, 1, 2, 3
STAGES = ("base-points", "base-locus", "critical", "eliminant", "eta", "euler")
_NEEDS = {"eliminant": ("critical",), "eta": ("critical",)}


@dataclass
class Certificate:
    body: dict
    timings_ms: dict = field(default_factory=dict)
    exit_code: int = EXIT_PASS

    @property
    def verdict(self) -> str:
        return self.body["verdict"]

    def to_json(self, embed_timings: bool = False) -> str:
        body = dict(self.body)
        if embed_timings:
            body["timings_ms"] = self.timings_ms
        return json.dumps(body, indent=2, ensure_ascii=False) + "\n"

    def timings_json(self) -> str:
        return json.dumps({"timings_ms": self.timings_ms}, indent=2) + "\n"


class _Timer:
    def __init__(self, sink: dict, name: str):
        self.sink, self.name = sink, name

    def __enter__(self):
        log.info("stage %s ...", self.name)
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        ms = round((time.perf_counter() - self.t0) * 1000)
        self.sink[self.name] = ms
        log.info("stage %s done in %d ms", self.name, ms)


def _conclusions(crit, elim, ledger) -> list[str]:
    n = elim.singular_members
    return [
        "The base curve of the pencil is smooth and every member has at most isolated singularities.",
        f"Exactly {n} members of the pencil are singular (degree of the squarefree eliminant).",
        f"Critical points on the cover come in free orbits of size 3, and the total length "
        f"{crit.grand_total} equals 3 x {n}, so every critical point has length 1.",
        f"The Milnor numbers of the singular points on the quotient add up to e(J)e(Z) - e(Y) = "
        f"{ledger.target} and each of the {n} singular members contributes at least 1, so each "
        f"singular member has exactly one singular point, an ordinary double point.",
        "The eta map is defined at every critical point.",
    ]


def run_certificate(config: RunConfig, stages=STAGES) -> Certificate:
    """Run ``stages`` (plus their prerequisites) and assemble the certificate."""
    opts = config.options
    wanted = set(stages)
    for s in list(wanted):
        wanted.update(_NEEDS.get(s, ()))
    full = wanted >= set(STAGES)
    backend = Backend.create(opts.mode, opts.prime_count, opts.seed)
    timings: dict = {}
    body: dict = {
        "toolkit": {"name": "lefpencil", "version": __version__},
        "config": config.to_dict(),
        "mode": backend.mode,
        "primes": list(backend.primes),
        "seed": opts.seed,
        "stages": [s for s in STAGES if s in wanted],
    }
    checks: dict = {}
    cover: CoverDatum = config.cover

    def finish(verdict: str, code: int, reason: str | None = None) -> Certificate:
        body["checks"] = checks
        if reason:
            body["reason"] = reason
        body["verdict"] = verdict
        return Certificate(body, timings, code)

    with _Timer(timings, "cover"):
        cv = cover_validation(cover)
    body["cover"] = cv
    checks["cover"] = cv["passed"]
    if not cv["passed"]:
        return finish("fail", EXIT_FAILED, "cover validation failed")

    try:
        with _Timer(timings, "sections"):
            ginv = g_invariance_check(cover)
            fd = build_fiber0_data(cover, opts.series_order)
        body["sections"] = {
            "g_invariance": ginv,
            "jets": {f"chi{i + 1}": {"value": v.to_str(), "t_derivative": d.to_str()}
                     for i, (v, d) in enumerate(zip(fd.values, fd.derivatives))},
            "series_order": fd.series_order,
        }
        checks["g_invariance"] = ginv["passed"]
        if not ginv["passed"]:
            return finish("fail", EXIT_FAILED, "G-invariance check failed")

        if "base-points" in wanted:
            with _Timer(timings, "base-points"):
                bp = base_points(cover, backend, fiber0=fd)
            body["base_points"] = bp.to_dict()
            checks["base_points"] = bp.passed
        if "base-locus" in wanted:
            with _Timer(timings, "base-locus"):
                bl = base_locus_smoothness(cover, config.pencil, backend, fiber0=fd)
            body["base_locus"] = bl.to_dict()
            checks["base_locus_smooth"] = bl.passed
        crit = elim = None
        if "critical" in wanted:
            with _Timer(timings, "critical"):
                crit = critical_scheme(cover, config.pencil, backend, fiber0=fd)
            body["critical_scheme"] = crit.to_dict()
            checks["critical_scheme"] = crit.passed
        if "eliminant" in wanted and crit is not None and crit.grand_total is not None:
            with _Timer(timings, "eliminant"):
                elim = parameter_eliminant(crit, backend, opts.irreducibility_prime_bound)
            body["eliminant"] = elim.to_dict()
            checks["eliminant_squarefree"] = elim.passed
        if "eta" in wanted and crit is not None and crit.grand_total is not None:
            with _Timer(timings, "eta"):
                eta = eta_definedness(cover, crit, backend, fiber0=fd)
            body["eta"] = eta.to_dict()
            checks["eta_defined"] = eta.passed
    except BadPrimeSuspected as exc:
        return finish("inconclusive", EXIT_INCONCLUSIVE, str(exc))
    except (SeriesDivisionError, NotDivisible) as exc:
        return finish("fail", EXIT_FAILED, f"inconsistent cover datum: {exc}")

    ledger = None
    if "euler" in wanted:
        with _Timer(timings, "euler"):
            ledger = euler_ledger()
        body["euler"] = ledger.to_dict()
        checks["euler_ledger"] = True

    witness_missing = False
    if full and crit is not None and elim is not None:
        consistent = crit.grand_total == 3 * elim.singular_members == 3 * ledger.target
        body["consistency"] = {
            "grand_total": crit.grand_total,
            "three_times_singular_members": 3 * elim.singular_members,
            "three_times_euler_target": 3 * int(ledger.target),
            "consistent": consistent,
        }
        checks["consistency"] = consistent
        witness_missing = elim.witness is None or elim.witness.verdict != "irreducible-certified"
        if all(checks.values()):
            body["conclusions"] = _conclusions(crit, elim, ledger)

    if not all(checks.values()):
        failed = sorted(k for k, v in checks.items() if not v)
        return finish("fail", EXIT_FAILED, f"failed checks: {', '.join(failed)}")
    if backend.mode == "modular":
        return finish("pass-modular", EXIT_INCONCLUSIVE)
    if witness_missing:
        return finish("pass", EXIT_INCONCLUSIVE, "no irreducibility witness below the prime bound")
    return finish("pass", EXIT_PASS)
