"""FastAPI service exposing the polynomial engine and the identity harness.

The CLI talks to the same handler functions either in process or over HTTP,
so the service is the single implementation of the external surface:

    POST /compute   build one polynomial (family + label + parameters)
    POST /verify    run one identity case
    POST /scan      run an identity scan from ranges
    GET  /report    collected reports of this instance (json or text)
    GET  /healthz
"""

from __future__ import annotations

import time

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import identities
from .cache import CacheStore
from .exactnum import PoleError
from .hermlag import a_mode, hermite, laguerre
from .jackcore import jack_antisymmetric, jack_nonsymmetric, jack_symmetric
from .macdonald import (macdonald_antisymmetric, macdonald_nonsymmetric,
                        macdonald_symmetric)
from .partlib import FrequencyNotation, alpha_mode, qt_mode_parse
from .report import IdentityCase
from .serialize import mpoly_record

FAMILIES = ("jack_sym", "jack_nonsym", "jack_antisym",
            "hermite_sym", "hermite_nonsym",
            "laguerre_sym", "laguerre_nonsym",
            "macdonald_sym", "macdonald_nonsym", "macdonald_antisym")


def parse_label(text):
    """Comma-separated parts, or frequency notation in brackets."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated frequency list {text!r}")
        freqs = [int(x) for x in text[1:-1].split(",") if x.strip() != ""]
        return FrequencyNotation(freqs).to_partition().parts
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def compute_poly(family, label, n=None, alpha=None, qt=None, a=None):
    """Build one polynomial; returns (MPoly, parameter description)."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    parts = parse_label(label) if isinstance(label, str) else tuple(label)
    n = n or len(parts)
    if family.startswith("macdonald"):
        mode = qt_mode_parse(qt or "generic")
        desc = f"qt={mode.label()}"
        if family == "macdonald_sym":
            poly = macdonald_symmetric(parts, n, mode)
        elif family == "macdonald_nonsym":
            poly = macdonald_nonsymmetric(parts, n, mode)
        else:
            poly = macdonald_antisymmetric(parts, n, mode)
        return poly, desc
    am = alpha_mode(alpha)
    desc = f"alpha={am.label()}"
    if family == "jack_sym":
        return jack_symmetric(parts, n, am).poly, desc
    if family == "jack_nonsym":
        return jack_nonsymmetric(parts, n, am).poly, desc
    if family == "jack_antisym":
        return jack_antisymmetric(parts, n, am).poly, desc
    symmetric = family.endswith("_sym")
    if family.startswith("hermite"):
        return hermite(parts, n, symmetric=symmetric, alpha=am), desc
    amode = a_mode(a)
    return (laguerre(parts, n, symmetric=symmetric, alpha=am, a=amode),
            desc + f", a={amode.label()}")


def run_verify(identity, params):
    case = IdentityCase(identity, _normalize_params(params))
    return identities.verify(case)


def run_scan(idlist, ranges, budget_seconds=None, halt_on_violation=True,
             cache_dir=None, progress=None):
    cache = CacheStore(cache_dir) if cache_dir else None
    return identities.scan(idlist, ranges, budget_seconds=budget_seconds,
                           cache=cache, halt_on_violation=halt_on_violation,
                           progress=progress)


def _normalize_params(params):
    out = {}
    for k, v in params.items():
        if isinstance(v, list):
            v = tuple(int(x) for x in v)
        out[k] = v
    return out


# ---------------------------------------------------------------------------
# wire models
# ---------------------------------------------------------------------------

class ComputeRequest(BaseModel):
    family: str
    label: str = Field(description="parts '4,2,0' or frequencies '[1,0,1,0,1]'")
    n: int | None = None
    alpha: str | None = None
    qt: str | None = None
    a: str | None = None


class ComputeResponse(BaseModel):
    family: str
    label: list[int]
    n: int
    parameters: str
    polynomial: str
    timing_ms: float


class VerifyRequest(BaseModel):
    identity: str
    params: dict


class ReportModel(BaseModel):
    identity: str
    params: dict
    verdict: str
    anchor: str
    witness_poly: str | None = None
    witness_constant: str | None = None
    detail: str = ""
    timing_ms: float = 0.0


class ScanRequest(BaseModel):
    identities: list[str]
    ranges: dict = Field(default_factory=dict)
    budget_seconds: float | None = None
    halt_on_violation: bool = True


class ScanResponse(BaseModel):
    reports: list[ReportModel]
    summary: dict


def report_text(reports):
    lines = []
    for r in reports:
        head = f"[{r['verdict']:>22}] {r['identity']} {r['params']}"
        tail = f" ({r['timing_ms']:.0f} ms)"
        lines.append(head + tail)
        if r.get("witness_constant"):
            lines.append(f"    constant: {r['witness_constant']}")
        if r.get("detail"):
            lines.append(f"    {r['detail']}")
        if r.get("witness_poly"):
            lines.append(f"    witness: {r['witness_poly']}")
    bad = sum(1 for r in reports
              if r["verdict"] in ("fails", "conjecture-violated"))
    lines.append(f"-- {len(reports)} case(s), {bad} failing --")
    return "\n".join(lines)


def create_app(cache_dir=None):
    app = FastAPI(title="jackcluster",
                  description="exact Jack/Macdonald polynomial engine and "
                              "clustering-identity verifier")
    app.state.reports = []
    app.state.cache_dir = cache_dir

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/compute", response_model=ComputeResponse)
    def compute(req: ComputeRequest):
        t0 = time.perf_counter()
        try:
            poly, desc = compute_poly(req.family, req.label, req.n,
                                      req.alpha, req.qt, req.a)
        except (ValueError, PoleError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        parts = parse_label(req.label)
        return ComputeResponse(
            family=req.family, label=list(parts),
            n=req.n or len(parts), parameters=desc,
            polynomial=mpoly_record(poly),
            timing_ms=(time.perf_counter() - t0) * 1e3)

    @app.post("/verify", response_model=ReportModel)
    def verify(req: VerifyRequest):
        try:
            rep = run_verify(req.identity, req.params)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        data = rep.to_dict()
        app.state.reports.append(data)
        return ReportModel(**data)

    @app.post("/scan", response_model=ScanResponse)
    def scan(req: ScanRequest):
        unknown = set(req.identities) - set(identities.IDENTITY_IDS)
        if unknown:
            raise HTTPException(status_code=422,
                                detail=f"unknown identities {sorted(unknown)}")
        reps = run_scan(req.identities, req.ranges,
                        budget_seconds=req.budget_seconds,
                        halt_on_violation=req.halt_on_violation,
                        cache_dir=app.state.cache_dir)
        data = [r.to_dict() for r in reps]
        app.state.reports.extend(data)
        summary = {
            "cases": len(data),
            "failing": sum(1 for r in data
                           if r["verdict"] in ("fails", "conjecture-violated")),
            "verdicts": {v: sum(1 for r in data if r["verdict"] == v)
                         for v in sorted({r["verdict"] for r in data})},
        }
        return ScanResponse(reports=[ReportModel(**r) for r in data],
                            summary=summary)

    @app.get("/report")
    def report(format: str = "json"):
        if format == "json":
            return {"reports": app.state.reports}
        if format == "text":
            from fastapi.responses import PlainTextResponse
            return PlainTextResponse(report_text(app.state.reports))
        raise HTTPException(status_code=422, detail="format must be json|text")

    return app
