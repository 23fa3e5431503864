"""Pydantic request/response models for the HTTP surface.

All numeric results travel as decimal strings: orders here overflow any
fixed-width integer long before the math gets interesting.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Family = Literal["A", "B", "D", "G2", "F4", "E6", "E7", "E8"]
SystemKind = Literal["boolean", "arrangement"]


class OrderRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Family
    n: Optional[int] = Field(default=None, ge=1, le=12)
    system: SystemKind = "arrangement"
    method: Literal["formula", "enumerate", "both"] = "formula"
    max_group_order: int = Field(default=2000, ge=1, le=100_000)


class GreenRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Family
    n: Optional[int] = Field(default=None, ge=1, le=12)
    system: SystemKind = "arrangement"
    max_group_order: int = Field(default=2000, ge=1, le=100_000)


class MuRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    model: Optional[Literal["In", "Jn", "hexagon"]] = None
    family: Optional[Family] = None
    n: Optional[int] = Field(default=None, ge=1, le=12)
    system: SystemKind = "boolean"
    max_group_order: int = Field(default=2000, ge=1, le=100_000)


class TableRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Family
    n: Optional[int] = Field(default=None, ge=1, le=12)
    system: SystemKind = "arrangement"
    kind: Literal["ranks", "orbits", "orbit-data"] = "ranks"
    max_group_order: int = Field(default=2000, ge=1, le=100_000)


class ResultItem(BaseModel):
    label: str
    value: str


class Discrepancy(BaseModel):
    formula: str
    printed: str
    oracle: str


class Report(BaseModel):
    request: dict
    results: list[ResultItem]
    discrepancies: list[Discrepancy] = []
