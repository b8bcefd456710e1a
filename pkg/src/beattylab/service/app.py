"""HTTP face of the laboratory: every operation the CLI exposes is a POST
endpoint with a pydantic request/response pair."""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..exact import PrecisionExhausted
from . import handlers
from . import schemas as S

app = FastAPI(
    title="beattylab",
    description=(
        "Least primes in Beatty sequences: exact enumeration, log-space bound "
        "evaluation, and numerical verification of the explicit inequalities "
        "behind them."
    ),
    version=__version__,
)


def _wrap(fn, req):
    try:
        return fn(req)
    except PrecisionExhausted as e:
        raise HTTPException(status_code=422, detail=f"precision exhausted: {e}")
    except (ValueError, ArithmeticError) as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.get("/v1/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/v1/bound", response_model=S.BoundResponse)
def bound(req: S.BoundRequest):
    return _wrap(handlers.run_bound, req)


@app.post("/v1/least-prime", response_model=S.LeastPrimeResponse)
def least_prime(req: S.LeastPrimeRequest):
    return _wrap(handlers.run_least_prime, req)


@app.post("/v1/members", response_model=S.MembersResponse)
def members(req: S.MembersRequest):
    return _wrap(handlers.run_members, req)


@app.post("/v1/cf", response_model=S.CFResponse)
def cf(req: S.CFRequest):
    return _wrap(handlers.run_cf, req)


@app.post("/v1/rational", response_model=S.RationalResponse)
def rational_decomposition(req: S.RationalRequest):
    return _wrap(handlers.run_rational, req)


@app.post("/v1/expsum", response_model=S.ExpSumResponse)
def expsum(req: S.ExpSumRequest):
    return _wrap(handlers.run_expsum, req)


@app.post("/v1/bridge", response_model=S.VerifyResponse)
def bridge(req: S.BridgeRequest):
    return _wrap(handlers.run_bridge, req)


@app.post("/v1/rayleigh", response_model=S.VerifyResponse)
def rayleigh(req: S.RayleighRequest):
    return _wrap(handlers.run_rayleigh, req)


@app.post("/v1/verify/vaughan", response_model=S.VerifyResponse)
def verify_vaughan(req: S.VaughanVerifyRequest):
    return _wrap(handlers.verify_vaughan, req)


@app.post("/v1/verify/explicit", response_model=S.VerifyResponse)
def verify_explicit(req: S.ExplicitVerifyRequest):
    return _wrap(handlers.verify_explicit, req)
