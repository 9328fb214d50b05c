"""Kodaira fiber types and the residue-characteristic-zero classifier."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from utils.errors import ClassificationError


class KodairaFamily(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    I_STAR = "I*"
    II_STAR = "II*"
    III_STAR = "III*"
    IV_STAR = "IV*"


# family: (ord_delta_min, components, component group order)
_ADDITIVE_DATA = {
    KodairaFamily.II: (2, 1, 1),
    KodairaFamily.III: (3, 2, 2),
    KodairaFamily.IV: (4, 3, 3),
    KodairaFamily.IV_STAR: (8, 7, 3),
    KodairaFamily.III_STAR: (9, 8, 2),
    KodairaFamily.II_STAR: (10, 9, 1),
}

#: Local height correction for a section meeting a non-identity component
#: whose value does not depend on which component is met.
NON_IDENTITY_CONTRIBUTION = {
    KodairaFamily.III: Fraction(1, 2),
    KodairaFamily.IV: Fraction(2, 3),
    KodairaFamily.IV_STAR: Fraction(4, 3),
    KodairaFamily.III_STAR: Fraction(3, 2),
}


@dataclass(frozen=True)
class KodairaType:
    """A Kodaira symbol; ``n`` is only meaningful for ``I_n`` and ``I_n*``."""

    family: KodairaFamily
    n: int = 0

    @classmethod
    def parse(cls, label: str) -> "KodairaType":
        label = label.strip().replace("star", "*")
        for family in (KodairaFamily.II_STAR, KodairaFamily.III_STAR, KodairaFamily.IV_STAR,
                       KodairaFamily.II, KodairaFamily.III, KodairaFamily.IV):
            if label == family.value:
                return cls(family)
        if label.startswith("I") and label.endswith("*") and label[1:-1].isdigit():
            return cls(KodairaFamily.I_STAR, int(label[1:-1]))
        if label.startswith("I") and label[1:].isdigit():
            return cls(KodairaFamily.I, int(label[1:]))
        raise ValueError(f"unknown Kodaira symbol {label!r}")

    @property
    def label(self) -> str:
        if self.family is KodairaFamily.I:
            return f"I{self.n}"
        if self.family is KodairaFamily.I_STAR:
            return f"I{self.n}*"
        return self.family.value

    def __str__(self) -> str:
        return self.label

    @property
    def is_good(self) -> bool:
        return self.family is KodairaFamily.I and self.n == 0

    @property
    def is_multiplicative(self) -> bool:
        return self.family is KodairaFamily.I and self.n > 0

    @property
    def is_additive(self) -> bool:
        return self.family is not KodairaFamily.I

    @property
    def ord_delta(self) -> int:
        """Order of the minimal discriminant (the Euler number of the fiber)."""
        if self.family is KodairaFamily.I:
            return self.n
        if self.family is KodairaFamily.I_STAR:
            return 6 + self.n
        return _ADDITIVE_DATA[self.family][0]

    @property
    def component_count(self) -> int:
        if self.family is KodairaFamily.I:
            return max(self.n, 1)
        if self.family is KodairaFamily.I_STAR:
            return self.n + 5
        return _ADDITIVE_DATA[self.family][1]

    @property
    def component_group_order(self) -> int:
        if self.family is KodairaFamily.I:
            return max(self.n, 1)
        if self.family is KodairaFamily.I_STAR:
            return 4
        return _ADDITIVE_DATA[self.family][2]

    @property
    def monodromy_trace(self) -> int:
        """Trace of the local monodromy matrix in SL2(Z)."""
        return {
            KodairaFamily.I: 2,
            KodairaFamily.I_STAR: -2,
            KodairaFamily.II: 1,
            KodairaFamily.II_STAR: 1,
            KodairaFamily.III: 0,
            KodairaFamily.III_STAR: 0,
            KodairaFamily.IV: -1,
            KodairaFamily.IV_STAR: -1,
        }[self.family]


def _at_least(value: Optional[int], bound: int) -> bool:
    """``value >= bound`` with ``None`` standing for an infinite order."""
    return value is None or value >= bound


def classify_fiber(ord_c4: Optional[int], ord_c6: Optional[int], ord_delta: int) -> KodairaType:
    """Kodaira type from the valuations of a locally minimal model.

    ``None`` for ``ord_c4`` or ``ord_c6`` means the invariant vanishes
    identically. Triples that no minimal model can produce raise
    :class:`ClassificationError`.
    """
    if ord_delta < 0:
        raise ClassificationError(ord_c4, ord_c6, ord_delta)
    if ord_delta == 0:
        return KodairaType(KodairaFamily.I, 0)
    if ord_c4 == 0:
        if ord_c6 != 0:
            raise ClassificationError(ord_c4, ord_c6, ord_delta)
        return KodairaType(KodairaFamily.I, ord_delta)

    if ord_delta == 2 and _at_least(ord_c4, 1) and ord_c6 == 1:
        return KodairaType(KodairaFamily.II)
    if ord_delta == 3 and ord_c4 == 1 and _at_least(ord_c6, 2):
        return KodairaType(KodairaFamily.III)
    if ord_delta == 4 and _at_least(ord_c4, 2) and ord_c6 == 2:
        return KodairaType(KodairaFamily.IV)
    if ord_delta == 6 and _at_least(ord_c4, 2) and _at_least(ord_c6, 3):
        return KodairaType(KodairaFamily.I_STAR, 0)
    if ord_delta > 6 and ord_c4 == 2 and ord_c6 == 3:
        return KodairaType(KodairaFamily.I_STAR, ord_delta - 6)
    if ord_delta == 8 and _at_least(ord_c4, 3) and ord_c6 == 4:
        return KodairaType(KodairaFamily.IV_STAR)
    if ord_delta == 9 and ord_c4 == 3 and _at_least(ord_c6, 5):
        return KodairaType(KodairaFamily.III_STAR)
    if ord_delta == 10 and _at_least(ord_c4, 4) and ord_c6 == 5:
        return KodairaType(KodairaFamily.II_STAR)
    raise ClassificationError(ord_c4, ord_c6, ord_delta)
