"""Request/response models for the HTTP API.

Bodies mirror the JSON document formats used by the CLI: rationals as
"p/q" strings, spaces as signed block lists, relations as basis rows or
pair lists. Requests are self-contained (no name references).
"""
from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field


class SpaceBody(BaseModel):
    blocks: list[tuple[int, int]] = Field(default_factory=list)


class CanRelBody(BaseModel):
    target: SpaceBody
    source: SpaceBody
    basis: list[list[str]]


class FinSetBody(BaseModel):
    name: str
    elements: list[str]


class FinRelBody(BaseModel):
    target: FinSetBody
    source: FinSetBody
    pairs: list[tuple[str, str]] = Field(default_factory=list)


MorphismBody = Union[CanRelBody, FinRelBody]


class PathBody(BaseModel):
    engine: Literal["finrel", "symplin"]
    word: list[MorphismBody] = Field(default_factory=list)
    object: Optional[Union[SpaceBody, FinSetBody]] = None


class TraceStepBody(BaseModel):
    move: Literal["expand", "collapse"]
    index: int = Field(ge=0)
    defects: tuple[int, int]


class FactorizationBody(BaseModel):
    engine: Literal["symplin"] = "symplin"
    reduction: CanRelBody
    coreduction: CanRelBody
    middle: SpaceBody
    trace: list[TraceStepBody] = Field(default_factory=list)


class ComposeRequest(BaseModel):
    engine: Literal["finrel", "symplin"]
    left: MorphismBody
    right: MorphismBody


class CheckRequest(BaseModel):
    engine: Literal["finrel", "symplin"]
    predicate: str
    morphism: MorphismBody


class FactorizeRequest(BaseModel):
    mode: Literal["prop4", "ww"] = "ww"
    path: PathBody


class NormalizeRequest(BaseModel):
    path: PathBody


class VerifyRequest(BaseModel):
    path: PathBody
    factorization: FactorizationBody


class Verdict(BaseModel):
    """Uniform response envelope: ok plus a structured, deterministic report."""

    ok: bool
    details: dict[str, Any]
