"""Named verification suites and the runner behind the command line."""

from __future__ import annotations

import json
import os
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import duality, matrixrep, nullplane, rmatrix
from .algebra import check_jacobi
from .hopf import check_all_axioms
from .nullplane import UZP31, build_presentation
from .report import CheckResult, Report
from .series import DEFAULT_ORDER

SCHEMA = "hopf-verifier/1"
SUITES = ("jacobi", "hopf", "subalgebra", "casimir", "duality", "phi", "rmatrix", "qybe",
          "rep", "frt", "poisson")
BUILTIN = ("uzp31", "uzg", "funzg", "funzg_E", "poincare_classical")
HOPF_BUILTIN = ("uzp31", "uzg", "funzg", "funzg_E")

# caps used where a full-order computation is needlessly slow; always reported
DUALITY_DEGREE = 5
QYBE_ORDER = 4
INTERTWINING_ORDER = 4
FRT_ORDER = 3


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suites: tuple = SUITES
    order: int = DEFAULT_ORDER
    degree: int | None = None
    format: str = "text"
    seed: int = 0
    sample: int = 8
    algebra: str | None = None
    jobs: int = 1
    timings: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self):
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s) {bad}; choose from {SUITES}")
        if self.order < 0:
            raise ConfigError("order must be non-negative")
        if self.degree is not None and self.degree < 1:
            raise ConfigError("degree must be at least 1")
        if self.format not in ("text", "json"):
            raise ConfigError("format is text or json")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        return self

    @property
    def D(self) -> int:
        return self.degree if self.degree is not None else self.order

    def header(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k not in ("format", "jobs", "timings", "extra")}
        d["suites"] = list(self.suites)
        return d


def _presentations(cfg: SuiteConfig, names=BUILTIN):
    if cfg.algebra is not None:
        return [load_algebra(cfg.algebra, cfg.order, cfg.degree)]
    N = max(cfg.order, 1)
    return [build_presentation(n, N, cfg.D if n == "funzg" else None) for n in names]


def load_algebra(spec: str, order: int, degree: int | None = None):
    """A built-in name or a path to a DSL file."""
    if spec in BUILTIN:
        return build_presentation(spec, max(order, 1), degree if spec == "funzg" else None)
    from .dsl import load_presentation
    if not os.path.exists(spec):
        raise ConfigError(f"{spec!r} is neither a built-in algebra {BUILTIN} nor a file")
    return load_presentation(spec, order=max(order, 1), degree=degree)


# -- suite bodies ---------------------------------------------------------------


def suite_jacobi(cfg):
    rep = Report("jacobi", caps={"order": cfg.order})
    for p in _presentations(cfg):
        rep.extend(check_jacobi(p))
    if cfg.algebra is None:
        alt = build_presentation("uzp31", max(cfg.order, 1), pbw=tuple(reversed(UZP31)))
        sub = check_jacobi(alt)
        for e in sub:
            e.check = "alt_pbw_" + e.check
        rep.extend(sub)
    return rep


def suite_hopf(cfg):
    rep = Report("hopf", caps={"order": cfg.order, "sample": cfg.sample, "seed": cfg.seed})
    for p in _presentations(cfg, HOPF_BUILTIN):
        rep.extend(check_all_axioms(p, sample=cfg.sample, seed=cfg.seed))
    return rep


def suite_subalgebra(cfg):
    return nullplane.check_subalgebra_closure(max(cfg.order, 1))


def suite_casimir(cfg):
    return nullplane.casimir_centrality(max(cfg.order, 1))


def suite_duality(cfg):
    D = cfg.degree if cfg.degree is not None else DUALITY_DEGREE
    N = min(max(cfg.order, 1), D)
    rep = Report("duality", caps={"order": N, "degree": D})
    F = duality.structure_tensor(D, N)
    rep.extend(duality.check_f_families(D, N))
    rep.extend(duality.dual_relation_check(D, N, F))
    rep.extend(duality.dual_product_check(D, N, F))
    rep.extend(duality.dual_associativity(max(D - 1, 1), max(N - 1, 1)))
    rep.extend(duality.t_matrix_check(min(D, 4), N))
    return rep


def suite_phi(cfg):
    return nullplane.phi_morphism_check(max(cfg.order, 1))


def suite_rmatrix(cfg):
    N = max(cfg.order, 1)
    Ni = min(N, INTERTWINING_ORDER)
    rep = Report("rmatrix", caps={"order": N, "intertwining_order": Ni})
    rep.extend(rmatrix.r_classical_limit(N))
    rep.extend(rmatrix.check_inverse(N))
    rep.extend(rmatrix.check_triangularity(N))
    rep.extend(rmatrix.check_intertwining(Ni))
    return rep


def suite_qybe(cfg):
    N = min(cfg.order, QYBE_ORDER)
    rep = Report("qybe", caps={"order": N})
    rep.extend(rmatrix.check_qybe(N))
    if cfg.order > 0:
        rep.extend(nullplane.cybe_classical())
    return rep


def suite_rep(cfg):
    N = max(cfg.order, 1)
    rep = Report("rep", caps={"order": N})
    rep.extend(matrixrep.check_rep_relations(N))
    rep.extend(matrixrep.rep_T_and_coproduct(N))
    rep.extend(matrixrep.rep_R_and_qybe())
    return rep


def suite_frt(cfg):
    rep = Report("frt", caps={"order": FRT_ORDER})
    rep.extend(matrixrep.frt_check(FRT_ORDER))
    rep.extend(matrixrep.compare_relation_sets())
    rep.extend(matrixrep.relation_consistency(FRT_ORDER))
    rep.extend(matrixrep.quantum_group_hopf(FRT_ORDER))
    return rep


def suite_poisson(cfg):
    return matrixrep.poisson_check()


RUNNERS = {name: globals()[f"suite_{name}"] for name in SUITES}


def run_one(name: str, cfg: SuiteConfig) -> Report:
    """Run a suite; any exception becomes a failed entry instead of escaping."""
    t0 = time.perf_counter()
    try:
        rep = RUNNERS[name](cfg)
        rep.name = name
    except Exception as e:  # noqa: BLE001 -- reported, never raised
        rep = Report(name, caps={"order": cfg.order})
        rep.flag(f"{name}_error", "suite raised an exception", False,
                 f"{type(e).__name__}: {e}")
        rep.entries[-1].residual = traceback.format_exc()
    rep.caps = dict(rep.caps)
    rep.caps["seconds"] = time.perf_counter() - t0
    for e in rep.entries:
        e.residual = None
    return rep


def run_suite(cfg: SuiteConfig) -> list[Report]:
    cfg.validate()
    if cfg.algebra is not None:
        load_algebra(cfg.algebra, cfg.order, cfg.degree)   # surface parse errors early
    names = [s for s in SUITES if s in cfg.suites]
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            futs = [ex.submit(run_one, n, cfg) for n in names]
            return [f.result() for f in futs]
    return [run_one(n, cfg) for n in names]


# -- rendering -------------------------------------------------------------------


def _entry(e: CheckResult, timings: bool) -> dict:
    return e.as_dict(timings)


def to_json(reports, cfg: SuiteConfig) -> str:
    suites = []
    for r in reports:
        caps = {k: v for k, v in r.caps.items() if k != "seconds"}
        d = {"suite": r.name, "passed": r.passed, "caps": caps, "checks": len(r.entries),
             "failures": len(r.failures()),
             "entries": [_entry(e, cfg.timings) for e in r.entries]}
        if cfg.timings:
            d["seconds"] = round(r.caps.get("seconds", 0.0), 3)
        suites.append(d)
    doc = {"schema": SCHEMA, "config": cfg.header(), "passed": all(r.passed for r in reports),
           "suites": suites}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def to_text(reports, cfg: SuiteConfig) -> str:
    h = cfg.header()
    lines = [f"hopf-verifier  order={h['order']} degree={h['degree']} seed={h['seed']} "
             f"sample={h['sample']} algebra={h['algebra'] or 'built-in'}"]
    for r in reports:
        caps = " ".join(f"{k}={v}" for k, v in sorted(r.caps.items()) if k != "seconds")
        t = f" {r.caps.get('seconds', 0.0):.2f}s" if cfg.timings else ""
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name:<11} {len(r.entries):5d} checks  [{caps}]{t}")
        for e in r.failures():
            extra = f"  ({e.detail})" if e.detail else ""
            lines.append(f"      failed {e.check}: {e.nterms} residual terms, "
                         f"max degree {e.max_degree}{extra}")
    ok = all(r.passed for r in reports)
    nfail = sum(len(r.failures()) for r in reports)
    lines.append(f"{'PASS' if ok else 'FAIL'}: {sum(len(r) for r in reports)} checks, {nfail} failed")
    return "\n".join(lines) + "\n"
