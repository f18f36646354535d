"""Check records shared by the verification drivers and the command line."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["CheckRecord", "record", "all_passed"]


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one machine-verified identity.

    ``check_id`` is a stable, human-neutral slug; ``witness`` holds a short
    printable description of the failing object when ``passed`` is False.
    """

    check_id: str
    description: str
    passed: bool
    witness: str | None = None

    def as_dict(self) -> dict:
        return {
            "id": self.check_id,
            "description": self.description,
            "passed": self.passed,
            "witness": self.witness,
        }


def record(check_id: str, description: str, ok: bool, witness: object = None) -> CheckRecord:
    return CheckRecord(check_id, description, bool(ok), None if ok else repr(witness))


def all_passed(records) -> bool:
    return all(r.passed for r in records)
