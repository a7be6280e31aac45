"""Base models and edge helpers shared by all crosscrit types."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Tuple

from pydantic import BaseModel as PydanticBaseModel
from pydantic import BeforeValidator, ConfigDict
from typing_extensions import Annotated


def canonical_edge(a: int, b: int) -> Tuple[int, int]:
    """Return the pair ordered as (min, max)."""
    return (a, b) if a <= b else (b, a)


def edge_key(edge: Tuple[int, int]) -> str:
    """Document key for an edge, e.g. ``"3-7"``."""
    return f"{edge[0]}-{edge[1]}"


def parse_edge_key(key: str) -> Tuple[int, int]:
    """Inverse of :func:`edge_key`; raises ValueError on malformed keys."""
    left, sep, right = key.partition("-")
    if not sep:
        raise ValueError(f"edge key {key!r} is not of the form 'a-b'")
    return canonical_edge(int(left), int(right))


def _coerce_edge(value: Any) -> Any:
    if isinstance(value, str):
        return parse_edge_key(value)
    return value


def _coerce_fraction(value: Any) -> Any:
    if isinstance(value, (str, int)) and not isinstance(value, bool):
        return Fraction(value)
    return value


# Document keys arrive as "a-b" strings, rationals as "p/q"
Edge = Annotated[Tuple[int, int], BeforeValidator(_coerce_edge)]
Rational = Annotated[Fraction, BeforeValidator(_coerce_fraction)]


def format_fraction(value: Fraction) -> str:
    """``p/q`` text form, ``p`` when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class BaseModel(PydanticBaseModel):
    """Immutable base model with friendly printing."""

    model_config = ConfigDict(
        # Reject unknown fields; documents are versioned
        extra="forbid",
        # Shared read-only between stages
        frozen=True,
        # Fraction fields
        arbitrary_types_allowed=True,
    )

    def __repr__(self) -> str:
        """Friendly representation showing key fields and collection sizes."""
        return self._friendly_repr()

    def __str__(self) -> str:
        """Same as repr for consistent friendly printing."""
        return self._friendly_repr()

    def _friendly_repr(self) -> str:
        """Build friendly representation showing scalar fields and collection sizes."""
        scalar_fields = []
        sizes = {}

        for field_name in type(self).model_fields:
            field_val = getattr(self, field_name)

            if isinstance(field_val, (list, dict, set, frozenset)):
                # Collections: only show size if non-empty
                if len(field_val) > 0:
                    sizes[field_name] = len(field_val)
            elif isinstance(field_val, BaseModel):
                # Nested models: show just class name, not full repr
                scalar_fields.append(f"{field_name}={field_val.__class__.__name__}(...)")
            elif field_val is not None:
                if isinstance(field_val, int) and not isinstance(field_val, bool):
                    text = str(field_val)
                    # Certificate integers grow very large
                    value = text if len(text) <= 24 else f"<{len(text)}-digit int>"
                elif isinstance(field_val, Fraction):
                    value = format_fraction(field_val)
                else:
                    value = repr(field_val)
                scalar_fields.append(f"{field_name}={value}")

        parts = scalar_fields.copy()
        if sizes:
            size_str = ", ".join(f"{k}: {v}" for k, v in sizes.items())
            parts.append(f"sizes={{{size_str}}}")

        return f"{self.__class__.__name__}({', '.join(parts)})"
