"""
Workspace files: one group, its default measure and experiment defaults.

Loaders return (value | None, message) so the CLI can report problems
without a traceback; builders raise.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from algebra.grammar import parse_word
from boundary.ends import BoundaryPoint, Point, symbolic_end
from config.config import DEFAULT_EXPLORE_DEPTH, DEFAULT_SEED
from groups.group import Group
from groups.tree import Vertex
from utils.errors import ConfigurationError, MalformedWorkspaceError, ZnTreeError
from walks.measure import Measure, make_measure, uniform_symmetric

logger = logging.getLogger(__name__)

_SYMBOL = re.compile(r"^[A-Za-z][0-9_]*$")


class EndSpec(BaseModel):
    """A symbolic end base ∘ tail ∘ tail ∘ ..."""

    base: str = Field(default="ε", description="Word before the periodic part")
    tail: str = Field(description="Repeated word; nonempty and cyclically reduced")


class WorkspaceConfig(BaseModel):
    """Validated contents of a workspace JSON file."""

    name: str = Field(description="Short workspace identifier")
    n: int = Field(ge=1, description="Dimension of the length group Z^n")
    alphabet: list[str] = Field(min_length=1, description="Letter symbols")
    generators: dict[str, str] = Field(min_length=1, description="Generator name -> word text")
    measure: dict[str, float] | None = Field(
        default=None,
        description="Expression -> positive weight; uniform on generators and inverses when absent",
    )
    explore_depth: int = Field(default=DEFAULT_EXPLORE_DEPTH, ge=0)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    ends: dict[str, EndSpec] = Field(default_factory=dict, description="Named symbolic ends")

    @field_validator("alphabet")
    @classmethod
    def _symbols(cls, value: list[str]) -> list[str]:
        for s in value:
            if not _SYMBOL.match(s):
                raise ValueError(f"bad letter symbol {s!r}")
        if len(set(value)) != len(value):
            raise ValueError("alphabet has repeated symbols")
        return value

    @field_validator("generators")
    @classmethod
    def _names(cls, value: dict[str, str]) -> dict[str, str]:
        for name in value:
            if not _SYMBOL.match(name):
                raise ValueError(f"bad generator name {name!r}")
        return value

    @model_validator(mode="after")
    def _weights(self) -> WorkspaceConfig:
        if self.measure is not None:
            if not self.measure:
                raise ValueError("measure must have a nonempty support")
            for expr, w in self.measure.items():
                if not w > 0:
                    raise ValueError(f"weight of {expr!r} must be positive")
        return self


@dataclass(frozen=True)
class Workspace:
    config: WorkspaceConfig
    group: Group
    measure: Measure
    ends: dict[str, BoundaryPoint]
    path: Path | None = None

    @property
    def n(self) -> int:
        return self.config.n


def parse_end(text: str, group: Group) -> BoundaryPoint:
    """Read "tail" or "base | tail" as a symbolic end."""
    base, _, tail = text.rpartition("|")
    return symbolic_end(
        parse_word(base.strip(), group.n, group.alphabet),
        parse_word(tail.strip(), group.n, group.alphabet),
    )


def build_workspace(config: WorkspaceConfig, path: Path | None = None) -> Workspace:
    """Group, measure and ends of a validated config.

    Raises:
        MalformedWorkspaceError: a generator, measure entry or end does not evaluate.
    """
    group = Group.from_texts(config.n, config.alphabet, config.generators)
    try:
        if config.measure is None:
            measure = uniform_symmetric(group)
        else:
            measure = make_measure(
                (group.evaluate(expr), w) for expr, w in config.measure.items()
            )
        ends = {
            name: symbolic_end(
                parse_word(spec.base, config.n, config.alphabet),
                parse_word(spec.tail, config.n, config.alphabet),
            )
            for name, spec in config.ends.items()
        }
    except MalformedWorkspaceError:
        raise
    except ZnTreeError as e:
        raise MalformedWorkspaceError(f"workspace {config.name}: {e}") from e
    return Workspace(config, group, measure, ends, path)


def load_workspace(path: str | Path) -> tuple[Workspace | None, str]:
    """Load and build a workspace file.

    Returns:
        (workspace, message) on success, (None, reason) otherwise.
    """
    p = Path(path)
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        return None, f"Workspace file not found: {p}"
    except json.JSONDecodeError as e:
        return None, f"Workspace {p} is not valid JSON: {e}"
    try:
        config = WorkspaceConfig.model_validate(raw)
    except ValidationError as e:
        return None, f"Workspace {p} failed validation: {e.error_count()} error(s): {e.errors()[0]['msg']}"
    try:
        ws = build_workspace(config, p)
    except ZnTreeError as e:
        return None, f"Workspace {p} is invalid: {e}"
    logger.info("loaded workspace %s (n=%d, %d generators)", config.name, config.n, len(config.generators))
    return ws, f"Loaded workspace '{config.name}' from {p}"


def load_measure(path: str | Path, group: Group) -> tuple[Measure | None, str]:
    """Read a JSON object {expression: weight} as a measure on group."""
    p = Path(path)
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        return None, f"Measure file not found: {p}"
    except json.JSONDecodeError as e:
        return None, f"Measure {p} is not valid JSON: {e}"
    if not isinstance(raw, dict) or not all(isinstance(w, (int, float)) for w in raw.values()):
        return None, f"Measure {p} must map expressions to numeric weights"
    try:
        mu = make_measure((group.evaluate(expr), float(w)) for expr, w in raw.items())
    except ZnTreeError as e:
        return None, f"Measure {p} is invalid: {e}"
    return mu, f"Loaded measure with {len(mu)} support elements from {p}"


def parse_point(text: str, ws: Workspace) -> Point:
    """A vertex word, a named end "@name", or an end "base | tail".

    Raises:
        ConfigurationError: an unknown end name.
    """
    text = text.strip()
    if text.startswith("@"):
        try:
            return ws.ends[text[1:]]
        except KeyError:
            raise ConfigurationError(f"workspace {ws.config.name} has no end named {text[1:]!r}") from None
    if "|" in text:
        return parse_end(text, ws.group)
    return Vertex(parse_word(text, ws.n, ws.config.alphabet))
