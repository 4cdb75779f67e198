"""Small shared value types."""

from __future__ import annotations

import enum


class Status(enum.Enum):
    """Certification status of a fixed-point component."""

    NONEMPTY_VERIFIED = "NonemptyVerified"
    EMPTY_VERIFIED = "EmptyVerified"
    CANDIDATE_ONLY = "CandidateOnly"

    def __str__(self) -> str:
        return self.value
