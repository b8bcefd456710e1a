"""Pydantic request/response models shared by the HTTP service and the CLI.

Real numbers travel as the textual syntax of the exact layer
(rat:a/q, surd:(P+sqrt(D))/Q, dec:LITERAL~BUDGET).
"""
from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class BoundRequest(BaseModel):
    alpha: str
    beta: str = "rat:0/1"
    epsilon: float = Field(gt=0)
    ell: Optional[float] = None
    mode: Literal["auto", "exact", "estimate"] = "auto"
    enumeration_cap: int = 10_000
    precision_digits: int = Field(default=50, ge=10, le=10_000)


class BoundResponse(BaseModel):
    epsilon: float
    m: int
    ell: float
    ell_exact: Optional[int]
    log_p_m_ell: float
    log_p_provenance: str
    log_bound: float
    log10_bound: float


class LeastPrimeRequest(BaseModel):
    alpha: str
    beta: str = "rat:0/1"
    limit: int = Field(ge=2)


class LeastPrimeResponse(BaseModel):
    prime: Optional[int]
    n: Optional[int]
    scanned_up_to: int


class MembersRequest(BaseModel):
    alpha: str
    beta: str = "rat:0/1"
    count: int = Field(ge=1, le=1_000_000)


class MemberRow(BaseModel):
    n: int
    element: int
    is_prime: bool


class MembersResponse(BaseModel):
    rows: list[MemberRow]


class CFRequest(BaseModel):
    alpha: str
    terms: int = Field(default=32, ge=1, le=100_000)
    convergents: int = Field(default=16, ge=0)


class ConvergentRow(BaseModel):
    n: int
    p: str  # decimal strings: the integers outgrow every native type
    q: str


class CFResponse(BaseModel):
    quotients: list[int]
    certified_terms: int
    period_start: Optional[int]
    period: Optional[list[int]]
    convergents: list[ConvergentRow]


class RationalRequest(BaseModel):
    a: int = Field(ge=3)
    q: int = Field(ge=2)
    beta: str = "rat:0/1"


class ResidueClassModel(BaseModel):
    offset: int
    gcd_with_modulus: int
    is_prime_class: bool
    offset_is_prime: bool
    contains_prime: bool


class RationalResponse(BaseModel):
    modulus: int
    offsets: list[int]
    classes: list[ResidueClassModel]
    has_prime_class: bool
    contains_any_prime: bool


class ExpSumRequest(BaseModel):
    frak_a: str
    n: int = Field(ge=1, le=10_000_000)
    h: int = Field(default=1, ge=1)


class ExpSumResponse(BaseModel):
    real: float
    imag: float
    modulus: float
    psi_n: float


class RecordModel(BaseModel):
    check_id: str
    params: dict[str, Any]
    lhs: float
    rhs: float
    margin: float
    passed: bool = Field(alias="pass")

    model_config = {"populate_by_name": True}


class VerifyResponse(BaseModel):
    records: list[RecordModel]
    all_passed: bool


VAUGHAN_SUITES = (
    "identity",
    "lemma6",
    "lemma7",
    "dyadic",
    "sh",
    "theorem3",
    "sandwich",
    "partial-summation",
)

EXPLICIT_CHECKS = ("divisor", "d3sq", "dsq", "rs")


class VaughanVerifyRequest(BaseModel):
    suite: Literal[
        "identity",
        "lemma6",
        "lemma7",
        "dyadic",
        "sh",
        "theorem3",
        "sandwich",
        "partial-summation",
    ]
    seed: int = 0
    n: int = Field(default=2000, ge=2, le=1_000_000)
    cases: int = Field(default=10, ge=1, le=200)
    workers: int = Field(default=1, ge=1, le=64)


class ExplicitVerifyRequest(BaseModel):
    check: Literal["divisor", "d3sq", "dsq", "rs"]
    xmax: int = Field(default=100_000, ge=2, le=20_000_000)


class BridgeRequest(BaseModel):
    alpha: str
    beta: str = "rat:0/1"
    n: int = Field(default=2000, ge=2, le=100_000)
    plus_form: bool = False


class RayleighRequest(BaseModel):
    alpha: str
    n: int = Field(default=10_000, ge=1, le=10_000_000)
