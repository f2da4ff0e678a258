"""Defines a comparable enum class.

Classes:
    ComparableEnum: Enum subclass whose members compare and sort by value
        and can be looked up by name, case-insensitively.
"""

from enum import Enum

from typing import Any, Type, TypeVar

T = TypeVar("T", bound="ComparableEnum")


class ComparableEnum(Enum):
    """Enum with ordering on the member values."""

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, ComparableEnum):
            return self.value == other.value
        return False

    def __ne__(self, other: Any) -> bool:
        if isinstance(other, ComparableEnum):
            return self.value != other.value
        return True

    def __lt__(self, other: Any) -> bool:
        if isinstance(other, ComparableEnum):
            return self.value < other.value
        return NotImplemented

    def __repr__(self) -> str:
        return f"{self.value}"

    def __str__(self) -> str:
        return self.name

    def __hash__(self) -> int:
        return hash(self.value)

    @classmethod
    def from_name(cls: Type[T], name: str) -> T:
        """Member whose name matches ``name`` ignoring case.

        Raises:
            KeyError: if no member has that name.
        """
        key = name.strip().lower()
        for member in cls:
            if member.name.lower() == key:
                return member
        raise KeyError(name)
