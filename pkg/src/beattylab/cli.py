"""Command-line client. Every subcommand builds the same request models the
HTTP service consumes and calls the shared handlers in-process, so reports
are byte-identical between the two faces.

Exit codes: 0 success, 1 at least one verification record failed, 2 usage.
"""
from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

import click

from . import __version__
from .exact import PrecisionExhausted
from .records import emit_report
from .service import handlers
from .service import schemas as S


@dataclass(frozen=True)
class RunConfig:
    """Run-wide knobs; a fixed config (seed included) reproduces reports
    byte for byte."""

    precision_digits: int = 50
    enumeration_cap: int = 10_000
    sieve_limit: int = 10_000_000
    worker_count: int = 1
    seed: int = 0

    def __post_init__(self):
        if min(self.precision_digits, self.enumeration_cap, self.sieve_limit, self.worker_count) < 1:
            raise ValueError("caps must be positive")

EXPLAIN = {
    "bound": (
        "Evaluates the least-prime bound for an irrational alpha > 1 in "
        "log-space: locates the numerator index m from the threshold "
        "L^16 alpha^2, picks the shift ell from the explicit rule (or an "
        "override), and assembles log bound = (35-16e) log L + 2(1-e) log "
        "alpha + log B + (1+e) log p_{m+ell}."
    ),
    "least-prime": (
        "Scans members floor(n alpha + beta) in ascending order and reports "
        "the first prime up to the limit, with its witness index n."
    ),
    "members": "Prints the first members of the sequence with primality flags.",
    "cf": (
        "Prints partial quotients (with the detected period for quadratic "
        "surds) and arbitrary-precision convergents p_n/q_n."
    ),
    "rational": (
        "Decomposes B(a/q, beta) into residue classes offset + a*N0 and "
        "flags prime classes (gcd(offset, a) = 1) and prime offsets."
    ),
    "expsum": "Computes sum_{n<=N} Lambda(n) e(frak_a h n) with compensated summation.",
    "verify-vaughan": (
        "Numerical verification suites for the exponential-sum machinery: "
        "the four-sum identity, the two linear-form bounds (lemma6), the "
        "bilinear bounds (lemma7), the dyadic block bound, the aggregated "
        "S(H) bound, the master bound (theorem3), the indicator sandwich "
        "polynomials (lemma8), and the exact Abel rearrangement."
    ),
    "verify-explicit": (
        "Audits of the explicit constants: pointwise divisor bounds "
        "d(x) <= min(139 x^(1/6), 9 x^(1/4), 2 x^(1/2)), the divisor "
        "mean-square bounds (every prefix X), and the classical psi/theta "
        "inequalities. Violations are reported as records, not errors; the "
        "d^2 bound at X = 2 and the pi(sqrt N) log N display are known "
        "boundary flags."
    ),
    "report": "Runs a curated desk-scale bundle of every verification suite.",
}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _finish_verify(resp: S.VerifyResponse, fmt: str, out: Optional[str]) -> None:
    recs = handlers.records_from_response(resp)
    _emit(emit_report(recs, fmt), out)
    if not resp.all_passed:
        sys.exit(1)


def _explain_option(name: str):
    def cb(ctx, param, value):
        if value:
            click.echo(EXPLAIN[name])
            ctx.exit(0)

    return click.option(
        "--explain", is_flag=True, expose_value=False, is_eager=True, callback=cb,
        help="Describe what this command computes/verifies and exit.",
    )


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Beatty-sequence least primes and their explicit inequality suite."""


@main.command()
@click.option("--alpha", required=True, help="rat:a/q | surd:(P+sqrt(D))/Q | dec:LIT~BUDGET")
@click.option("--beta", default="rat:0/1", show_default=True)
@click.option("--eps", "epsilon", type=float, required=True)
@click.option("--ell", type=float, default=None, help="Override the shift index.")
@click.option("--mode", type=click.Choice(["auto", "exact", "estimate"]), default="auto")
@click.option("--cap", "enumeration_cap", type=int, default=10_000, show_default=True)
@click.option("--precision-digits", type=int, default=50, show_default=True,
              help="Guard digits of the certified threshold interval.")
@click.option("--out", type=click.Path(), default=None)
@_explain_option("bound")
def bound(alpha, beta, epsilon, ell, mode, enumeration_cap, precision_digits, out):
    """Least-prime bound report (JSON)."""
    cfg = RunConfig(precision_digits=precision_digits, enumeration_cap=enumeration_cap)
    req = S.BoundRequest(alpha=alpha, beta=beta, epsilon=epsilon, ell=ell, mode=mode,
                         enumeration_cap=cfg.enumeration_cap,
                         precision_digits=cfg.precision_digits)
    resp = handlers.run_bound(req)
    payload = {
        "m": resp.m,
        "ell": resp.ell,
        "ell_exact": resp.ell_exact,
        "epsilon": resp.epsilon,
        "log_p_m_ell": resp.log_p_m_ell,
        "provenance": resp.log_p_provenance,
        "log_bound": resp.log_bound,
        "log10_bound": resp.log10_bound,
    }
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


@main.command("least-prime")
@click.option("--alpha", required=True)
@click.option("--beta", default="rat:0/1", show_default=True)
@click.option("--limit", type=int, default=10**6, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", type=click.Path(), default=None)
@_explain_option("least-prime")
def least_prime(alpha, beta, limit, fmt, out):
    """First prime member of B(alpha, beta) up to a limit."""
    resp = handlers.run_least_prime(S.LeastPrimeRequest(alpha=alpha, beta=beta, limit=limit))
    if fmt == "json":
        _emit(json.dumps({"prime": resp.prime, "n": resp.n, "scanned_up_to": resp.scanned_up_to},
                         sort_keys=True) + "\n", out)
    else:
        _emit("prime,n,scanned_up_to\n"
              f"{resp.prime if resp.prime is not None else ''},"
              f"{resp.n if resp.n is not None else ''},{resp.scanned_up_to}\n", out)


@main.command()
@click.option("--alpha", required=True)
@click.option("--beta", default="rat:0/1", show_default=True)
@click.option("--count", type=int, default=20, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(), default=None)
@_explain_option("members")
def members(alpha, beta, count, fmt, out):
    """First members as CSV rows (n, element, is_prime) or JSON."""
    resp = handlers.run_members(S.MembersRequest(alpha=alpha, beta=beta, count=count))
    if fmt == "csv":
        lines = ["n,element,is_prime"] + [
            f"{r.n},{r.element},{str(r.is_prime).lower()}" for r in resp.rows
        ]
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(json.dumps([r.model_dump() for r in resp.rows], sort_keys=True) + "\n", out)


@main.command()
@click.option("--alpha", required=True)
@click.option("--terms", type=int, default=32, show_default=True)
@click.option("--convergents", "conv_count", type=int, default=16, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@_explain_option("cf")
def cf(alpha, terms, conv_count, out):
    """Partial quotients and convergents, one CSV line each."""
    resp = handlers.run_cf(S.CFRequest(alpha=alpha, terms=terms, convergents=conv_count))
    lines = ["quotients," + ",".join(str(a) for a in resp.quotients)]
    if resp.period is not None:
        lines.append(f"period_start,{resp.period_start}")
        lines.append("period," + ",".join(str(a) for a in resp.period))
    lines.append(f"certified_terms,{resp.certified_terms}")
    for c in resp.convergents:
        lines.append(f"convergent,{c.n},{c.p},{c.q}")
    _emit("\n".join(lines) + "\n", out)


@main.command()
@click.option("--a", "a_", type=int, required=True)
@click.option("--q", "q_", type=int, required=True)
@click.option("--beta", default="rat:0/1", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", type=click.Path(), default=None)
@_explain_option("rational")
def rational(a_, q_, beta, fmt, out):
    """Residue-class decomposition of B(a/q, beta)."""
    resp = handlers.run_rational(S.RationalRequest(a=a_, q=q_, beta=beta))
    if fmt == "json":
        _emit(resp.model_dump_json(indent=2) + "\n", out)
    else:
        lines = ["offset,gcd_with_modulus,is_prime_class,offset_is_prime,contains_prime"]
        for c in resp.classes:
            lines.append(
                f"{c.offset},{c.gcd_with_modulus},{str(c.is_prime_class).lower()},"
                f"{str(c.offset_is_prime).lower()},{str(c.contains_prime).lower()}"
            )
        _emit("\n".join(lines) + "\n", out)


@main.command()
@click.option("--frak-a", "frak_a", required=True, help="Frequency as a real spec.")
@click.option("--n", "n_", type=int, required=True)
@click.option("--h", "h_", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@_explain_option("expsum")
def expsum(frak_a, n_, h_, out):
    """Lambda-weighted exponential sum (JSON)."""
    resp = handlers.run_expsum(S.ExpSumRequest(frak_a=frak_a, n=n_, h=h_))
    _emit(json.dumps({
        "real": resp.real, "imag": resp.imag,
        "modulus": resp.modulus, "psi_n": resp.psi_n,
    }, sort_keys=True) + "\n", out)


@main.group()
def verify() -> None:
    """Verification suites emitting one CSV/JSON row per record."""


@verify.command("vaughan")
@click.option("--suite", type=click.Choice(list(S.VAUGHAN_SUITES)), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--n", "n_", type=int, default=2000, show_default=True)
@click.option("--cases", type=int, default=10, show_default=True)
@click.option("--workers", type=int, default=lambda: int(os.environ.get("BEATTYLAB_WORKERS", "1")))
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(), default=None)
@_explain_option("verify-vaughan")
def verify_vaughan(suite, seed, n_, cases, workers, fmt, out):
    """Exponential-sum suites: identity, lemma6, lemma7, dyadic, sh, theorem3,
    sandwich, partial-summation."""
    workers = workers() if callable(workers) else workers
    req = S.VaughanVerifyRequest(suite=suite, seed=seed, n=n_, cases=cases, workers=workers)
    _finish_verify(handlers.verify_vaughan(req), fmt, out)


@verify.command("explicit")
@click.option("--check", type=click.Choice(list(S.EXPLICIT_CHECKS)), required=True)
@click.option("--xmax", type=int, default=100_000, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(), default=None)
@_explain_option("verify-explicit")
def verify_explicit(check, xmax, fmt, out):
    """Explicit-constant audits: divisor, d3sq, dsq, rs."""
    req = S.ExplicitVerifyRequest(check=check, xmax=xmax)
    _finish_verify(handlers.verify_explicit(req), fmt, out)


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--xmax", type=int, default=100_000, show_default=True)
@click.option("--n", "n_", type=int, default=2000, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(), default=None)
@_explain_option("report")
def report(seed, xmax, n_, workers, fmt, out):
    """Curated bundle: every suite at desk scale; exit 1 if any record fails
    (the two known boundary flags in the explicit checks do fail by design)."""
    records = []
    for suite in S.VAUGHAN_SUITES:
        req = S.VaughanVerifyRequest(suite=suite, seed=seed, n=n_, cases=5, workers=workers)
        records += handlers.records_from_response(handlers.verify_vaughan(req))
    for check in S.EXPLICIT_CHECKS:
        req = S.ExplicitVerifyRequest(check=check, xmax=xmax)
        records += handlers.records_from_response(handlers.verify_explicit(req))
    _emit(emit_report(records, fmt), out)
    if not all(r.passed for r in records):
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8642, show_default=True)
def serve(host, port):
    """Run the HTTP service (uvicorn)."""
    import uvicorn

    uvicorn.run("beattylab.service.app:app", host=host, port=port)


def run() -> None:
    try:
        main(standalone_mode=True)
    except PrecisionExhausted as e:  # pragma: no cover - defensive
        click.echo(f"precision exhausted: {e}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()
