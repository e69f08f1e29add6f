from abc import (
    ABC,
    abstractmethod,
)
from typing import (
    Any,
    Dict,
    List,
)

from mcg_certs.utils.serialization import (
    dump_json,
    stringify_numbers,
)


class BaseCertificate(ABC):
    """Base interface for machine-checkable certificate records."""

    kind: str = "certificate"

    @abstractmethod
    def to_record(self) -> Dict[str, Any]:
        """Plain dict with exact values (ints, Fractions, strings, bools)."""
        pass

    @abstractmethod
    def summary_lines(self) -> List[str]:
        """Human-readable lines for text output."""
        pass

    def to_json_record(self) -> Dict[str, Any]:
        """Record with integers as decimal strings and rationals as 'p/q'."""
        record = stringify_numbers(self.to_record())
        record["kind"] = self.kind
        return record

    def to_json(self) -> bytes:
        return dump_json(self.to_json_record())
