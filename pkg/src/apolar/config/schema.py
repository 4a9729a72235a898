"""Pydantic models for corpus configuration."""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator, model_validator

from apolar.algebra.field import FieldSpec, FieldSpecError


class SlpOptions(BaseModel):
    """Strong Lefschetz search settings for corpus runs."""

    enabled: bool = Field(default=False, description="Search for a witness on homogeneous CI instances")
    trials: int = Field(default=8, ge=0, description="Random candidates after x1 + ... + xN")
    pool_bound: int = Field(default=5, ge=1, description="Coefficients are drawn from ±1..±pool_bound")
    override: bool = Field(
        default=False, description="Allow the search over prime fields (char 0 results do not apply)"
    )


class CorpusSpec(BaseModel):
    """Deterministic description of a binomial corpus.

    Generation is a pure function of these fields.
    """

    n_vars_range: tuple[int, int] = Field(default=(2, 4), description="Inclusive range of N")
    max_a: int = Field(default=2, ge=0, description="Upper bound on the shared exponents a_i")
    max_b: int = Field(default=2, ge=1, description="Upper bound on the residual exponents b_i")
    coeff_pool: int = Field(default=3, ge=1, description="Coefficients come from ±1..±coeff_pool")
    count: int = Field(default=100, description="Number of binomials")
    seed: int = Field(default=0, description="Generator seed")
    homogeneous_only: bool = Field(default=False, description="Only emit homogeneous binomials")
    allow_d2_zero: bool = Field(
        default=False, description="Also emit binomials whose right residual is trivial"
    )
    field: str = Field(default="q", description="'q' for the rationals or 'p:<prime>'")
    workers: int = Field(default=1, ge=1, description="Worker processes")
    check_truncation: bool = Field(default=False, description="Recompute the oracle at degree D+2")
    slp: SlpOptions = Field(default_factory=SlpOptions, description="Lefschetz search settings")

    model_config = {"extra": "forbid"}

    @field_validator("count")
    @classmethod
    def validate_count(cls, v: int) -> int:
        if v < 1:
            raise ValueError("count must be at least 1")
        return v

    @field_validator("n_vars_range")
    @classmethod
    def validate_range(cls, v: tuple[int, int]) -> tuple[int, int]:
        lo, hi = v
        if lo < 1 or hi < lo:
            raise ValueError(f"n_vars_range must satisfy 1 <= lo <= hi, got {v}")
        return v

    @field_validator("field")
    @classmethod
    def validate_field(cls, v: str) -> str:
        try:
            FieldSpec.parse(v)
        except FieldSpecError as e:
            raise ValueError(str(e)) from e
        return v

    @model_validator(mode="after")
    def check_pool(self) -> CorpusSpec:
        if self.homogeneous_only and self.n_vars_range[1] < 2:
            raise ValueError("Homogeneous binomials need at least two variables")
        return self

    @property
    def field_spec(self) -> FieldSpec:
        return FieldSpec.parse(self.field)
